/** Two-panel what-if state: evidence per panel, shared pins mirrored into
 * both, posteriors as last fetched from the service. Stale responses are
 * dropped (latest wins, one in-flight query per panel). */

import type { ApiClient, ModelInfo, QueryResponse, ScenarioInfo } from "./api.js";

export type PanelId = "A" | "B";

export interface PanelState {
  evidence: Record<string, string>;
  posteriors: Record<string, Record<string, number>> | null;
  probEvidence: number | null;
  /** true when the displayed numbers may not match the evidence (fetch
   * failed); the UI shows a banner instead of silently lying */
  stale: boolean;
}

export interface ViewState {
  model: ModelInfo;
  panels: Record<PanelId, PanelState>;
  /** variables pinned in both panels at once */
  shared: Set<string>;
}

function emptyPanel(): PanelState {
  return { evidence: {}, posteriors: null, probEvidence: null, stale: false };
}

export class Explorer {
  readonly state: ViewState;
  private seq: Record<PanelId, number> = { A: 0, B: 0 };
  onChange: (() => void) | null = null;

  constructor(
    private readonly api: ApiClient,
    model: ModelInfo,
  ) {
    this.state = {
      model,
      panels: { A: emptyPanel(), B: emptyPanel() },
      shared: new Set(),
    };
  }

  private assertKnown(variable: string, stateLabel: string): void {
    const v = this.state.model.variables.find((x) => x.name === variable);
    if (!v) throw new Error(`unknown variable ${variable}`);
    if (!v.states.includes(stateLabel))
      throw new Error(`variable ${variable} has no state ${stateLabel}`);
  }

  /** Set evidence, or clear it when re-toggling the already-set state. */
  async toggleEvidence(
    panel: PanelId,
    variable: string,
    stateLabel: string,
  ): Promise<void> {
    this.assertKnown(variable, stateLabel);
    const targets: PanelId[] = this.state.shared.has(variable)
      ? ["A", "B"]
      : [panel];
    const clearing =
      this.state.panels[panel].evidence[variable] === stateLabel;
    for (const p of targets) {
      if (clearing) delete this.state.panels[p].evidence[variable];
      else this.state.panels[p].evidence[variable] = stateLabel;
    }
    if (clearing && this.state.shared.has(variable))
      this.state.shared.delete(variable);
    await Promise.all(targets.map((p) => this.refresh(p)));
  }

  /** Pin a variable to the same state in both panels at once. */
  async pinShared(variable: string, stateLabel: string): Promise<void> {
    this.assertKnown(variable, stateLabel);
    this.state.shared.add(variable);
    this.state.panels.A.evidence[variable] = stateLabel;
    this.state.panels.B.evidence[variable] = stateLabel;
    await Promise.all([this.refresh("A"), this.refresh("B")]);
  }

  async unpinShared(variable: string): Promise<void> {
    this.state.shared.delete(variable);
    delete this.state.panels.A.evidence[variable];
    delete this.state.panels.B.evidence[variable];
    await Promise.all([this.refresh("A"), this.refresh("B")]);
  }

  async clearAll(): Promise<void> {
    this.state.shared.clear();
    this.state.panels.A.evidence = {};
    this.state.panels.B.evidence = {};
    await Promise.all([this.refresh("A"), this.refresh("B")]);
  }

  /** Populate the panels to reproduce a named scenario's evidence.
   * Figure scenarios come in per-group pairs (fig3_white/fig3_black,
   * fig5_white/fig5_black); loading either member of a pair puts the
   * white run in panel A and the black run in panel B. Unknown names are
   * a no-op. Idempotent. */
  async loadScenario(name: string, scenarios: ScenarioInfo[]): Promise<boolean> {
    const byName = new Map(scenarios.map((s) => [s.name, s]));
    const paired = name.replace(/_(white|black)$/, "");
    const a = byName.get(`${paired}_white`);
    const b = byName.get(`${paired}_black`);
    let evA: Record<string, string>;
    let evB: Record<string, string>;
    if (a && b) {
      evA = { ...a.evidence };
      evB = { ...b.evidence };
    } else {
      const s = byName.get(name);
      if (!s) return false;
      evA = { ...s.evidence };
      evB = { ...s.evidence };
    }
    this.state.shared = new Set(
      Object.keys(evA).filter((v) => evB[v] === evA[v]),
    );
    this.state.panels.A.evidence = evA;
    this.state.panels.B.evidence = evB;
    await Promise.all([this.refresh("A"), this.refresh("B")]);
    return true;
  }

  async refresh(panel: PanelId): Promise<void> {
    const ticket = ++this.seq[panel];
    const p = this.state.panels[panel];
    try {
      const resp: QueryResponse = await this.api.query({ ...p.evidence });
      if (ticket !== this.seq[panel]) return; // a newer query superseded us
      p.posteriors = resp.posteriors;
      p.probEvidence = resp.probEvidence;
      p.stale = false;
    } catch {
      if (ticket !== this.seq[panel]) return;
      p.stale = true;
    }
    this.onChange?.();
  }

  /** Displayed probability of variable=state in a panel: the service's
   * posterior for unobserved variables, 1/0 for pinned evidence. */
  displayed(panel: PanelId, variable: string, stateLabel: string): number | null {
    const p = this.state.panels[panel];
    const pinned = p.evidence[variable];
    if (pinned !== undefined) return pinned === stateLabel ? 1 : 0;
    const dist = p.posteriors?.[variable];
    if (!dist) return null;
    return dist[stateLabel] ?? null;
  }

  /** Absolute gap between the panels' displayed outcome probabilities. */
  riskDifference(variable: string, stateLabel: string): number | null {
    const a = this.displayed("A", variable, stateLabel);
    const b = this.displayed("B", variable, stateLabel);
    if (a === null || b === null) return null;
    return Math.abs(a - b);
  }
}

/** Layer index of every node: roots at 0, children one past their
 * deepest parent. Drives the fixed layered DAG layout. */
export function topoDepths(model: ModelInfo): Map<string, number> {
  const depths = new Map<string, number>();
  const parents = new Map<string, string[]>(
    model.variables.map((v) => [v.name, []]),
  );
  for (const [p, c] of model.edges) parents.get(c)?.push(p);
  const visit = (name: string): number => {
    const known = depths.get(name);
    if (known !== undefined) return known;
    const ps = parents.get(name) ?? [];
    const d = ps.length === 0 ? 0 : 1 + Math.max(...ps.map(visit));
    depths.set(name, d);
    return d;
  };
  for (const v of model.variables) visit(v.name);
  return depths;
}
