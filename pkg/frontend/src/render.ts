// Pure HTML-string renderers. Each function takes plain data and returns
// markup; no DOM access here so the functions are trivially testable.

import type { Downloads, RuleViewWire, RunRecord, SourceRule } from "./types.js";
import { MEASURE_LABELS, MEASURE_NAMES } from "./types.js";
import { leafDescendants, type TaxonomyDoc } from "./taxdoc.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function formatMeasure(value: number | null | undefined): string {
  if (value === null || value === undefined) return "-";
  return value.toFixed(4);
}

export function measureLabel(name: string): string {
  return MEASURE_LABELS[name] ?? name;
}

function renderItem(item: string, generalized: Set<string>, taxonomies: TaxonomyDoc[]): string {
  const safe = escapeHtml(item);
  if (!generalized.has(item)) return safe;
  const leaves = leafDescendants(taxonomies, item).map(escapeHtml).join(", ");
  return `(<span class="generalized" title="${leaves}">${safe}</span>)`;
}

function renderSide(items: string[], generalized: Set<string>, taxonomies: TaxonomyDoc[]): string {
  return items.map((it) => renderItem(it, generalized, taxonomies)).join(" &amp; ");
}

/** One result row: rule text, selected measures, flags, and drill-down links. */
export function renderRuleRow(
  view: RuleViewWire,
  selectedMeasures: readonly string[],
  taxonomies: TaxonomyDoc[],
): string {
  const generalized = new Set(view.generalized_items);
  const ruleHtml =
    renderSide(view.lhs, generalized, taxonomies) +
    " &rArr; " +
    renderSide(view.rhs, generalized, taxonomies);
  const cells = selectedMeasures
    .map((name) => `<td class="num">${formatMeasure(view.measures[name])}</td>`)
    .join("");
  const links: string[] = [];
  if (view.links.expanded) {
    links.push(`<a href="#" data-action="expanded" data-key="${view.key}">E</a>`);
  }
  if (view.links.sources) {
    links.push(`<a href="#" data-action="sources" data-key="${view.key}">S</a>`);
  }
  if (view.links.measures_drilldown) {
    links.push(`<a href="#" data-action="measures" data-key="${view.key}">M</a>`);
  }
  const flags: string[] = [];
  if (view.flags.below_min_support) flags.push("below min support");
  if (view.flags.below_min_confidence) flags.push("below min confidence");
  const flagHtml = flags.length
    ? `<span class="flag" title="${escapeHtml(flags.join("; "))}">&#9888;</span>`
    : "";
  return (
    `<tr data-key="${view.key}">` +
    `<td class="rule">${ruleHtml} ${flagHtml}</td>` +
    cells +
    `<td class="num">${view.sources_count}</td>` +
    `<td class="links">${links.join(" ")}</td>` +
    `</tr>`
  );
}

export function renderRuleTable(
  views: RuleViewWire[],
  selectedMeasures: readonly string[],
  taxonomies: TaxonomyDoc[],
): string {
  const head =
    "<tr><th>Rule</th>" +
    selectedMeasures.map((m) => `<th>${escapeHtml(measureLabel(m))}</th>`).join("") +
    "<th>Sources</th><th></th></tr>";
  const rows = views.map((v) => renderRuleRow(v, selectedMeasures, taxonomies)).join("\n");
  return `<table class="rules"><thead>${head}</thead><tbody>${rows}</tbody></table>`;
}

export function renderSourceRules(title: string, rules: SourceRule[]): string {
  const rows = rules
    .map((r) => {
      const text = escapeHtml(`${r.lhs.join(" & ")} ⇒ ${r.rhs.join(" & ")}`);
      const sup = r.support !== undefined ? `<td class="num">${formatMeasure(r.support)}</td>` : "";
      const conf =
        r.confidence !== undefined ? `<td class="num">${formatMeasure(r.confidence)}</td>` : "";
      return `<tr><td>${text}</td>${sup}${conf}</tr>`;
    })
    .join("\n");
  return `<h3>${escapeHtml(title)}</h3><table class="drill"><tbody>${rows}</tbody></table>`;
}

export function renderMeasureDetail(
  measures: Record<string, number | null>,
  flags: { below_min_support: boolean; below_min_confidence: boolean },
): string {
  const rows = MEASURE_NAMES.map(
    (name) =>
      `<tr><td>${escapeHtml(measureLabel(name))}</td>` +
      `<td class="num">${formatMeasure(measures[name])}</td></tr>`,
  ).join("");
  const notes: string[] = [];
  if (flags.below_min_support) notes.push("below the mining support threshold");
  if (flags.below_min_confidence) notes.push("below the mining confidence threshold");
  const note = notes.length ? `<p class="flag">${escapeHtml(notes.join("; "))}</p>` : "";
  return `<h3>All measures</h3><table class="drill"><tbody>${rows}</tbody></table>${note}`;
}

/** The four download links for a finished run; disabled placeholders otherwise. */
export function renderDownloads(run: RunRecord | null, base: string): string {
  const entries: [string, keyof Downloads][] = [
    ["Dataset", "dataset"],
    ["Rule set", "ruleset"],
    ["Generalized rule set", "generalized_ruleset"],
    ["Taxonomy set", "taxonomy_set"],
  ];
  const items = entries
    .map(([label, key]) => {
      const id = run && run.status === "done" && run.downloads ? run.downloads[key] : null;
      if (!id) return `<li><span class="disabled">${label}</span></li>`;
      const href = `${base}/artifacts/${id}/raw`;
      return `<li><a href="${escapeHtml(href)}" download>${label}</a></li>`;
    })
    .join("");
  return `<ul class="downloads">${items}</ul>`;
}

export function renderRunSummary(run: RunRecord): string {
  if (run.status !== "done") return `<p>Run ${escapeHtml(run.id)}: ${run.status}</p>`;
  const nIn = run.input_count ?? 0;
  const nOut = run.output_count ?? 0;
  const rate = nIn > 0 ? ((1 - nOut / nIn) * 100).toFixed(2) : "0.00";
  const warnings = run.warnings
    .map((w) => `<li class="flag">${escapeHtml(w)}</li>`)
    .join("");
  return (
    `<p>${nIn} rule(s) &rarr; ${nOut} generalized rule(s), ${rate}% reduction.</p>` +
    (warnings ? `<ul>${warnings}</ul>` : "")
  );
}
