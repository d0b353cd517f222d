import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, it } from "node:test";

import { bifurcationChart, spectrumChart, thresholdChart } from "../src/charts.js";
import { SchemaError } from "../src/csv.js";
import { niceTicks } from "../src/svg.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "..", "..", "fixtures");

function fixture(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf8");
}

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

describe("threshold figure", () => {
  const svg = thresholdChart(fixture("threshold.csv"));

  it("renders one labeled series per lattice size", () => {
    assert.equal(count(svg, 'class="series"'), 2);
    assert.ok(svg.includes('data-label="n = 3"'));
    assert.ok(svg.includes('data-label="n = 5"'));
  });

  it("draws every data point with a confidence bar", () => {
    assert.equal(count(svg, "<circle"), 10); // 2 sizes x 5 probabilities
    assert.equal(count(svg, 'class="errorbar"'), 10);
  });

  it("is deterministic", () => {
    assert.equal(svg, thresholdChart(fixture("threshold.csv")));
  });

  it("rejects a truncated header", () => {
    const lines = fixture("threshold.csv").split("\n");
    const broken = ["dimension,n,p_x", ...lines.slice(1)].join("\n");
    assert.throws(() => thresholdChart(broken), SchemaError);
  });
});

describe("bifurcation figure", () => {
  const svg = bifurcationChart(fixture("bifurcation.csv"));

  it("renders one series per encoding sign", () => {
    assert.equal(count(svg, 'class="series"'), 2);
    assert.ok(svg.includes('data-label="encoded +1"'));
    assert.ok(svg.includes('data-label="encoded -1"'));
  });

  it("covers all six temperatures per encoding", () => {
    assert.equal(count(svg, "<circle"), 12);
  });

  it("fixture data is mirror symmetric", () => {
    const lines = fixture("bifurcation.csv").trim().split("\n").slice(1);
    const byKey = new Map<string, number>();
    for (const line of lines) {
      const f = line.split(",");
      byKey.set(`${f[4]}|${f[5]}`, Number(f[7]));
    }
    for (const [key, value] of byKey) {
      const [t, encoded] = key.split("|");
      const mirrored = byKey.get(`${t}|${-Number(encoded)}`);
      assert.equal(mirrored, -value);
    }
  });
});

describe("spectrum figure", () => {
  const svg = spectrumChart(fixture("spectrum.json"));
  const report = JSON.parse(fixture("spectrum.json"));

  it("draws one stem per distinct eigenvalue", () => {
    assert.equal(count(svg, 'class="stem"'), report.eigenvalues.length);
  });

  it("fixture multiplicities are all even", () => {
    for (const entry of report.eigenvalues) {
      assert.equal(entry.multiplicity % 2, 0);
    }
  });

  it("rejects JSON with missing fields", () => {
    assert.throws(() => spectrumChart('{"n": 2}'), /missing field/);
    assert.throws(() => spectrumChart("not json"), SchemaError);
    assert.throws(() => spectrumChart('{"n":2,"dimension":2,"eigenvalues":[]}'), SchemaError);
  });
});

describe("niceTicks", () => {
  it("produces round values spanning the range", () => {
    const ticks = niceTicks(0, 0.2);
    assert.ok(ticks.length >= 4);
    assert.ok(ticks[0] >= 0 && ticks[ticks.length - 1] <= 0.2 + 1e-12);
  });

  it("handles degenerate ranges", () => {
    assert.ok(niceTicks(1, 1).length > 0);
  });
});
