// End-to-end check against a live backend: upload the clothing example,
// generalize the antecedents, and walk the query and drill-down endpoints
// exactly as the console does.
import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Client } from "../src/api.js";
import { leafDescendants, parseGeneralizedDoc } from "../src/taxdoc.js";
import { renderRuleTable } from "../src/render.js";

const PORT = 8765 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

const DB_TEXT = `t-shirt slipper cap
short slipper cap
sandal short cap
sandal t-shirt cap
slipper t-shirt cap
cap jacket
t-shirt sandal
`;

const TAX_TEXT = `= clothes
t-shirt\tlight_clothes
short\tlight_clothes
= shoes
slipper\tlight_shoes
sandal\tlight_shoes
`;

const RULESET_TEXT = JSON.stringify(
  {
    format_version: "1",
    kind: "ruleset",
    mining_params: { min_support: 0.5, min_confidence: 0.5, max_items: 5 },
    rules: [
      { lhs: ["sandal", "short"], rhs: ["cap"], support: null, confidence: null },
      { lhs: ["sandal", "t-shirt"], rhs: ["cap"], support: null, confidence: null },
      { lhs: ["short", "slipper"], rhs: ["cap"], support: null, confidence: null },
      { lhs: ["slipper", "t-shirt"], rhs: ["cap"], support: null, confidence: null },
    ],
  },
  null,
  2,
);

let server: ChildProcess;
let storeRoot: string;
const client = new Client(BASE);

beforeAll(async () => {
  storeRoot = mkdtempSync(join(tmpdir(), "taxrules-store-"));
  server = spawn(
    "python3",
    ["-m", "taxrules.cli", "serve", "--listen", `127.0.0.1:${PORT}`, "--store-root", storeRoot],
    { stdio: "ignore", env: { ...process.env, TAXRULES_BACKEND: "numpy" } },
  );
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      await client.health();
      return;
    } catch {
      if (Date.now() > deadline) throw new Error("backend did not come up");
      await new Promise((resolve) => setTimeout(resolve, 250));
    }
  }
}, 40_000);

afterAll(() => {
  server?.kill();
  if (storeRoot) rmSync(storeRoot, { recursive: true, force: true });
});

describe("analyst workflow against the live service", () => {
  let datasetId: string;
  let taxonomyId: string;
  let rulesetId: string;
  let resultId: string;
  let ruleKey: string;

  it("uploads the three input artifacts", async () => {
    datasetId = (await client.uploadArtifact("transactions", "clothing.txt", DB_TEXT)).id;
    taxonomyId = (await client.uploadArtifact("taxonomy", "clothing.tax", TAX_TEXT)).id;
    rulesetId = (await client.uploadArtifact("ruleset", "clothing.rules", RULESET_TEXT)).id;
    expect(datasetId).toMatch(/^[0-9a-f]{32}$/);
  });

  it("rejects a malformed upload with 422", async () => {
    await expect(
      client.uploadArtifact("transactions", "bad.txt", "ok line\nbad\u0001item\n"),
    ).rejects.toMatchObject({ status: 422 });
  });

  it("runs a generalization and reports 4 -> 1", async () => {
    const run = await client.generalize({
      ruleset_id: rulesetId,
      taxonomyset_id: taxonomyId,
      dataset_id: datasetId,
      side: "lhs",
    });
    const finished = await client.pollRun(run.id);
    expect(finished.status).toBe("done");
    expect(finished.input_count).toBe(4);
    expect(finished.output_count).toBe(1);
    resultId = finished.result_id!;
    expect(finished.downloads).toEqual({
      dataset: datasetId,
      ruleset: rulesetId,
      generalized_ruleset: resultId,
      taxonomy_set: taxonomyId,
    });
  });

  it("queries the single generalized rule with E and S links but no M link", async () => {
    const body = await client.queryRules(resultId, {});
    expect(body.total).toBe(1);
    expect(body.matched).toBe(1);
    const rule = body.rules[0];
    ruleKey = rule.key;
    expect(rule.rendered).toBe("(light_clothes) & (light_shoes) ⇒ cap");
    expect(rule.measures.support).toBeCloseTo(5 / 7, 10);
    expect(rule.measures.confidence).toBeCloseTo(5 / 6, 10);
    expect(rule.links).toEqual({ expanded: true, sources: true, measures_drilldown: false });
  });

  it("matches descendant items in queries", async () => {
    const hit = await client.queryRules(resultId, { item: ["short"] });
    expect(hit.matched).toBe(1);
    const miss = await client.queryRules(resultId, { item: ["jacket"] });
    expect(miss.matched).toBe(0);
  });

  it("lists four expansions and four sources for the rule", async () => {
    const expanded = await client.expanded(resultId, ruleKey);
    expect(expanded.expansions).toHaveLength(4);
    const rendered = expanded.expansions.map((r) => `${r.lhs.join(" & ")} => ${r.rhs.join(" & ")}`);
    expect(rendered).toContain("short & slipper => cap");
    const sources = await client.sources(resultId, ruleKey);
    expect(sources.sources).toHaveLength(4);
  });

  it("exports a TSV view", async () => {
    const text = await client.exportText(resultId, { measure: ["support"] });
    const lines = text.trim().split("\n");
    expect(lines[0]).toBe("rule\tsupport");
    expect(lines[1]).toContain("0.7143");
  });

  it("downloads the generalized document and renders the table from it", async () => {
    const raw = await client.artifactRaw(resultId);
    const doc = parseGeneralizedDoc(raw);
    expect(doc.side).toBe("lhs");
    expect(leafDescendants(doc.taxonomies, "light_shoes")).toEqual(["sandal", "slipper"]);
    const body = await client.queryRules(resultId, {});
    const html = renderRuleTable(body.rules, ["support", "confidence"], doc.taxonomies);
    expect(html).toContain('title="sandal, slipper"');
    expect(html).toContain("0.7143");
    expect(html).not.toContain('data-action="measures"');
  });

  it("serves every download byte-identically from the raw endpoint", async () => {
    expect(await client.artifactRaw(datasetId)).toBe(DB_TEXT);
    expect(await client.artifactRaw(taxonomyId)).toBe(TAX_TEXT);
  });
});
