/**
 * Strict CSV reading for the simulation outputs.
 *
 * The producing tools document their headers exactly; anything that does not
 * match (missing, extra, or reordered columns) is a hard error, never a
 * silent guess.
 */

export type Row = Record<string, number>;

export class SchemaError extends Error {}

export function parseCsv(text: string, expectedHeader: string[]): Row[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty input: no header line");
  }
  const header = lines[0].split(",");
  const missing = expectedHeader.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(`missing columns: ${missing.join(", ")}`);
  }
  if (header.length !== expectedHeader.length || header.some((c, i) => c !== expectedHeader[i])) {
    throw new SchemaError(
      `header mismatch: expected "${expectedHeader.join(",")}", got "${header.join(",")}"`,
    );
  }
  if (lines.length === 1) {
    throw new SchemaError("no data rows");
  }
  const rows: Row[] = [];
  for (const [index, line] of lines.slice(1).entries()) {
    const fields = line.split(",");
    if (fields.length !== header.length) {
      throw new SchemaError(`row ${index + 1} has ${fields.length} fields, expected ${header.length}`);
    }
    const row: Row = {};
    for (let i = 0; i < header.length; i++) {
      const value = Number(fields[i]);
      if (Number.isNaN(value)) {
        throw new SchemaError(`row ${index + 1}, column "${header[i]}": not a number: "${fields[i]}"`);
      }
      row[header[i]] = value;
    }
    rows.push(row);
  }
  return rows;
}
