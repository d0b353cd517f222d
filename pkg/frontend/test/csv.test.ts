import assert from "node:assert/strict";
import { describe, it } from "node:test";

import { parseCsv, SchemaError } from "../src/csv.js";

const HEADER = ["a", "b", "c"];

describe("parseCsv", () => {
  it("parses numeric rows keyed by column", () => {
    const rows = parseCsv("a,b,c\n1,2.5,-3\n4,0,6\n", HEADER);
    assert.equal(rows.length, 2);
    assert.deepEqual(rows[0], { a: 1, b: 2.5, c: -3 });
  });

  it("rejects a missing column by name", () => {
    assert.throws(() => parseCsv("a,c\n1,2\n", HEADER), (err: Error) => {
      assert.ok(err instanceof SchemaError);
      assert.match(err.message, /missing columns: b/);
      return true;
    });
  });

  it("rejects reordered headers", () => {
    assert.throws(() => parseCsv("b,a,c\n1,2,3\n", HEADER), SchemaError);
  });

  it("rejects extra columns", () => {
    assert.throws(() => parseCsv("a,b,c,d\n1,2,3,4\n", HEADER), SchemaError);
  });

  it("rejects empty input and header-only input", () => {
    assert.throws(() => parseCsv("", HEADER), SchemaError);
    assert.throws(() => parseCsv("a,b,c\n", HEADER), SchemaError);
  });

  it("rejects non-numeric fields", () => {
    assert.throws(() => parseCsv("a,b,c\n1,two,3\n", HEADER), /not a number/);
  });

  it("rejects ragged rows", () => {
    assert.throws(() => parseCsv("a,b,c\n1,2\n", HEADER), SchemaError);
  });
});
