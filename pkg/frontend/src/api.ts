/** Typed client for the local inference service. All probability math
 * happens server-side; this module only moves JSON. */

export interface VariableInfo {
  name: string;
  states: string[];
}

export interface ModelInfo {
  name: string;
  variables: VariableInfo[];
  edges: [string, string][];
}

export interface ScenarioInfo {
  name: string;
  evidence: Record<string, string>;
}

export interface QueryResponse {
  posteriors: Record<string, Record<string, number>>;
  probEvidence: number;
}

export interface ApiError {
  error: string;
  kind: string;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiClient {
  constructor(
    private readonly fetchImpl: FetchLike,
    private readonly base: string = "",
  ) {}

  async model(): Promise<ModelInfo> {
    const r = await this.fetchImpl(`${this.base}/api/model`);
    if (!r.ok) throw new Error(`model fetch failed: ${r.status}`);
    return (await r.json()) as ModelInfo;
  }

  async scenarios(): Promise<ScenarioInfo[]> {
    const r = await this.fetchImpl(`${this.base}/api/scenarios`);
    if (!r.ok) throw new Error(`scenarios fetch failed: ${r.status}`);
    return (await r.json()) as ScenarioInfo[];
  }

  /** Query all unassigned variables; targets are always left empty so the
   * response covers exactly what the model says is unobserved. */
  async query(evidence: Record<string, string>): Promise<QueryResponse> {
    const r = await this.fetchImpl(`${this.base}/api/query`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ evidence, targets: [] }),
    });
    const body = await r.json();
    if (!r.ok) {
      const err = body as ApiError;
      throw new Error(err.error ?? `query failed: ${r.status}`);
    }
    return body as QueryResponse;
  }
}
