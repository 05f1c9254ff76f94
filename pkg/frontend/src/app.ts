// DOM glue for the analyst console: upload artifacts, mine rules, launch a
// generalization run, then query, drill into, and download the results.

import { Client, queryString } from "./api.js";
import {
  renderDownloads,
  renderMeasureDetail,
  renderRuleTable,
  renderRunSummary,
  renderSourceRules,
} from "./render.js";
import { parseGeneralizedDoc, type TaxonomyDoc } from "./taxdoc.js";
import { MEASURE_NAMES, type RuleQueryParams, type RunRecord } from "./types.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

function splitWords(text: string): string[] {
  return text.split(/\s+/).filter((w) => w.length > 0);
}

class Console {
  client: Client;
  datasetId: string | null = null;
  taxonomysetId: string | null = null;
  rulesetId: string | null = null;
  run: RunRecord | null = null;
  taxonomies: TaxonomyDoc[] = [];

  constructor(base: string) {
    this.client = new Client(base);
  }

  status(text: string, isError = false): void {
    const el = $("status");
    el.textContent = text;
    el.className = isError ? "flag" : "";
  }

  async upload(kind: "transactions" | "taxonomy", inputId: string): Promise<string> {
    const input = $<HTMLInputElement>(inputId);
    const file = input.files?.[0];
    if (!file) throw new Error("choose a file first");
    const meta = await this.client.uploadArtifact(kind, file.name, await file.text());
    return meta.id;
  }

  async mine(): Promise<void> {
    try {
      this.datasetId = await this.upload("transactions", "dataset-file");
      const result = await this.client.mine({
        dataset_id: this.datasetId,
        min_support: Number($<HTMLInputElement>("min-support").value),
        min_confidence: Number($<HTMLInputElement>("min-confidence").value),
        max_items: Number($<HTMLInputElement>("max-items").value),
      });
      this.rulesetId = result.ruleset_id;
      this.status(`mined ${result.rule_count} rule(s); ruleset ${result.ruleset_id}`);
    } catch (e) {
      this.status(String(e), true);
    }
  }

  async generalize(): Promise<void> {
    try {
      if (!this.rulesetId) throw new Error("mine a rule set first");
      this.taxonomysetId = await this.upload("taxonomy", "taxonomy-file");
      const maxLevelText = $<HTMLInputElement>("max-level").value.trim();
      const launched = await this.client.generalize({
        ruleset_id: this.rulesetId,
        taxonomyset_id: this.taxonomysetId,
        side: $<HTMLSelectElement>("side").value as "lhs" | "rhs",
        dataset_id: this.datasetId,
        options: {
          max_level: maxLevelText ? Number(maxLevelText) : null,
          merge_only: $<HTMLInputElement>("merge-only").checked,
        },
      });
      this.run = await this.client.pollRun(launched.id);
      $("run-summary").innerHTML = renderRunSummary(this.run);
      $("downloads").innerHTML = renderDownloads(this.run, this.client.base);
      if (this.run.status === "done" && this.run.result_id) {
        const doc = parseGeneralizedDoc(await this.client.artifactRaw(this.run.result_id));
        this.taxonomies = doc.taxonomies;
        await this.query();
      }
    } catch (e) {
      this.status(String(e), true);
    }
  }

  readQuery(): RuleQueryParams {
    const params: RuleQueryParams = {
      item: splitWords($<HTMLInputElement>("q-item").value),
      lhs_item: splitWords($<HTMLInputElement>("q-lhs").value),
      rhs_item: splitWords($<HTMLInputElement>("q-rhs").value),
      where: splitWords($<HTMLInputElement>("q-where").value),
      measure: MEASURE_NAMES.filter(
        (name) => $<HTMLInputElement>(`q-measure-${name}`).checked,
      ),
      exact: $<HTMLInputElement>("q-exact").checked,
    };
    const sort = $<HTMLSelectElement>("q-sort").value;
    if (sort) {
      params.sort = sort;
      params.order = $<HTMLSelectElement>("q-order").value as "asc" | "desc";
    }
    const limit = $<HTMLInputElement>("q-limit").value.trim();
    if (limit) params.limit = Number(limit);
    return params;
  }

  async query(): Promise<void> {
    try {
      if (!this.run?.result_id) throw new Error("run a generalization first");
      const params = this.readQuery();
      const selected = params.measure?.length ? params.measure : [...MEASURE_NAMES];
      const response = await this.client.queryRules(this.run.result_id, params);
      this.status(`${response.matched} of ${response.total} rule(s) match`);
      $("results").innerHTML = renderRuleTable(response.rules, selected, this.taxonomies);
      $("export-link").setAttribute(
        "href",
        `${this.client.base}/results/${this.run.result_id}/export${queryString(params)}`,
      );
    } catch (e) {
      this.status(String(e), true);
    }
  }

  async drill(action: string, key: string): Promise<void> {
    try {
      const resultId = this.run?.result_id;
      if (!resultId) return;
      const panel = $("drilldown");
      if (action === "expanded") {
        const body = await this.client.expanded(resultId, key);
        panel.innerHTML = renderSourceRules("Expanded rules", body.expansions);
      } else if (action === "sources") {
        const body = await this.client.sources(resultId, key);
        panel.innerHTML = renderSourceRules("Source rules", body.sources);
      } else if (action === "measures") {
        const body = await this.client.measures(resultId, key);
        panel.innerHTML = renderMeasureDetail(body.measures, body.flags);
      }
    } catch (e) {
      this.status(String(e), true);
    }
  }
}

export function start(): void {
  const base = $<HTMLInputElement>("api-base").value.replace(/\/$/, "");
  const console_ = new Console(base);
  $("mine-button").addEventListener("click", () => void console_.mine());
  $("generalize-button").addEventListener("click", () => void console_.generalize());
  $("query-button").addEventListener("click", () => void console_.query());
  $("results").addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const action = target.getAttribute("data-action");
    const key = target.getAttribute("data-key");
    if (action && key) {
      event.preventDefault();
      void console_.drill(action, key);
    }
  });
  $("downloads").innerHTML = renderDownloads(null, base);
}

if (typeof document !== "undefined" && document.getElementById("api-base")) {
  start();
}
