/**
 * plots <kind> --in <csv/json> --out <svg>
 *
 * kinds: threshold | bifurcation | spectrum
 * exit codes: 0 written, 1 bad input data, 2 usage error
 */

import { readFileSync, writeFileSync, mkdirSync } from "node:fs";
import { dirname } from "node:path";
import { pathToFileURL } from "node:url";
import process from "node:process";

import { bifurcationChart, spectrumChart, thresholdChart } from "./charts.js";
import { SchemaError } from "./csv.js";

const USAGE = "usage: plots <threshold|bifurcation|spectrum> --in <file> --out <file.svg>";

const RENDERERS: Record<string, (text: string) => string> = {
  threshold: thresholdChart,
  bifurcation: bifurcationChart,
  spectrum: spectrumChart,
};

export function run(argv: string[]): number {
  if (argv.length === 0) {
    console.error(USAGE);
    return 2;
  }
  const [kind, ...rest] = argv;
  const renderer = RENDERERS[kind];
  if (!renderer) {
    console.error(`unknown figure kind "${kind}"\n${USAGE}`);
    return 2;
  }
  let input: string | undefined;
  let output: string | undefined;
  for (let i = 0; i < rest.length; i += 2) {
    const flag = rest[i];
    const value = rest[i + 1];
    if (value === undefined) {
      console.error(`missing value for ${flag}\n${USAGE}`);
      return 2;
    }
    if (flag === "--in") input = value;
    else if (flag === "--out") output = value;
    else {
      console.error(`unknown flag "${flag}"\n${USAGE}`);
      return 2;
    }
  }
  if (!input || !output) {
    console.error(USAGE);
    return 2;
  }

  let text: string;
  try {
    text = readFileSync(input, "utf8");
  } catch (err) {
    console.error(`cannot read ${input}: ${(err as Error).message}`);
    return 1;
  }
  let svg: string;
  try {
    svg = renderer(text);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`${input}: ${err.message}`);
      return 1;
    }
    console.error(`${input}: ${(err as Error).message}`);
    return 1;
  }
  mkdirSync(dirname(output) || ".", { recursive: true });
  writeFileSync(output, svg);
  console.log(`wrote ${output}`);
  return 0;
}

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(run(process.argv.slice(2)));
}
