export type ArtifactKind =
  | "transactions"
  | "taxonomy"
  | "ruleset"
  | "generalized-ruleset";

export interface ArtifactMeta {
  id: string;
  kind: ArtifactKind;
  name: string;
  created_at: string;
}

export interface RuleFlags {
  below_min_support: boolean;
  below_min_confidence: boolean;
}

export interface RuleLinks {
  expanded: boolean;
  sources: boolean;
  measures_drilldown: boolean;
}

export interface RuleViewWire {
  key: string;
  lhs: string[];
  rhs: string[];
  side: "lhs" | "rhs";
  generalized_items: string[];
  rendered: string;
  sources_count: number;
  measures: Record<string, number | null>;
  flags: RuleFlags;
  links: RuleLinks;
}

export interface QueryResponse {
  total: number;
  matched: number;
  rules: RuleViewWire[];
}

export interface RunRecord {
  id: string;
  status: "pending" | "done" | "failed";
  ruleset_id: string;
  taxonomyset_id: string;
  dataset_id: string | null;
  side: "lhs" | "rhs";
  options: { max_level: number | null; merge_only: boolean };
  result_id: string | null;
  warnings: string[];
  input_count?: number;
  output_count?: number;
  downloads?: Downloads;
}

export interface Downloads {
  dataset: string | null;
  ruleset: string;
  generalized_ruleset: string;
  taxonomy_set: string;
}

export interface RuleQueryParams {
  item?: string[];
  lhs_item?: string[];
  rhs_item?: string[];
  measure?: string[];
  where?: string[];
  sort?: string;
  order?: "asc" | "desc";
  limit?: number;
  offset?: number;
  exact?: boolean;
}

export interface SourceRule {
  lhs: string[];
  rhs: string[];
  support?: number | null;
  confidence?: number | null;
}

export const MEASURE_NAMES = [
  "support",
  "confidence",
  "coverage",
  "lift",
  "leverage",
  "conviction",
] as const;

// the analysis screens label support "Sup" and confidence "Cov"
export const MEASURE_LABELS: Record<string, string> = {
  support: "Sup",
  confidence: "Cov",
};
