import type {
  ArtifactKind,
  ArtifactMeta,
  QueryResponse,
  RuleQueryParams,
  RunRecord,
  SourceRule,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, detail);
}

export function queryString(params: RuleQueryParams): string {
  const qs = new URLSearchParams();
  for (const key of ["item", "lhs_item", "rhs_item", "measure", "where"] as const) {
    for (const value of params[key] ?? []) qs.append(key, value);
  }
  if (params.sort) qs.set("sort", params.sort);
  if (params.order) qs.set("order", params.order);
  if (params.limit !== undefined) qs.set("limit", String(params.limit));
  if (params.offset !== undefined) qs.set("offset", String(params.offset));
  if (params.exact) qs.set("exact", "true");
  const text = qs.toString();
  return text ? `?${text}` : "";
}

export class Client {
  constructor(public base: string) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    await raiseForStatus(response);
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.json("/health");
  }

  uploadArtifact(kind: ArtifactKind, name: string, body: string): Promise<ArtifactMeta> {
    const encoded = encodeURIComponent(name);
    return this.json(`/artifacts/${kind}?name=${encoded}`, {
      method: "POST",
      body,
      headers: { "Content-Type": "text/plain; charset=utf-8" },
    });
  }

  artifactRawUrl(id: string): string {
    return `${this.base}/artifacts/${id}/raw`;
  }

  async artifactRaw(id: string): Promise<string> {
    const response = await fetch(this.artifactRawUrl(id));
    await raiseForStatus(response);
    return response.text();
  }

  mine(req: {
    dataset_id: string;
    min_support?: number;
    min_confidence?: number;
    max_items?: number;
  }): Promise<{ ruleset_id: string; rule_count: number }> {
    return this.json("/mine", {
      method: "POST",
      body: JSON.stringify(req),
      headers: { "Content-Type": "application/json" },
    });
  }

  generalize(req: {
    ruleset_id: string;
    taxonomyset_id: string;
    side?: "lhs" | "rhs";
    dataset_id?: string | null;
    options?: { max_level?: number | null; merge_only?: boolean };
  }): Promise<RunRecord> {
    return this.json("/generalize", {
      method: "POST",
      body: JSON.stringify(req),
      headers: { "Content-Type": "application/json" },
    });
  }

  run(runId: string): Promise<RunRecord> {
    return this.json(`/runs/${runId}`);
  }

  async pollRun(runId: string, timeoutMs = 10_000): Promise<RunRecord> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const record = await this.run(runId);
      if (record.status !== "pending") return record;
      if (Date.now() > deadline) throw new Error(`run ${runId} still pending`);
      await new Promise((resolve) => setTimeout(resolve, 200));
    }
  }

  queryRules(resultId: string, params: RuleQueryParams = {}): Promise<QueryResponse> {
    return this.json(`/results/${resultId}/rules${queryString(params)}`);
  }

  expanded(resultId: string, key: string): Promise<{ expansions: SourceRule[] }> {
    return this.json(`/results/${resultId}/rules/${key}/expanded`);
  }

  sources(resultId: string, key: string): Promise<{ sources: SourceRule[] }> {
    return this.json(`/results/${resultId}/rules/${key}/sources`);
  }

  measures(resultId: string, key: string): Promise<{
    measures: Record<string, number | null>;
    flags: { below_min_support: boolean; below_min_confidence: boolean };
  }> {
    return this.json(`/results/${resultId}/rules/${key}/measures`);
  }

  async exportText(resultId: string, params: RuleQueryParams = {}): Promise<string> {
    const response = await fetch(`${this.base}/results/${resultId}/export${queryString(params)}`);
    await raiseForStatus(response);
    return response.text();
  }
}
