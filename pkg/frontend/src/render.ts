/** DOM rendering: per-variable state bars for both panels, the layered
 * DAG, and the risk-difference readout. Pure functions of Explorer state. */

import type { ModelInfo } from "./api.js";
import { Explorer, PanelId, topoDepths } from "./state.js";

const PANEL_TITLES: Record<PanelId, string> = {
  A: "Panel A",
  B: "Panel B",
};

function pct(p: number): string {
  return `${(100 * p).toFixed(1)}%`;
}

export function renderPanel(
  root: HTMLElement,
  explorer: Explorer,
  panel: PanelId,
  onToggle: (panel: PanelId, variable: string, state: string) => void,
): void {
  const st = explorer.state.panels[panel];
  root.innerHTML = "";

  const title = document.createElement("h2");
  title.textContent = PANEL_TITLES[panel];
  root.appendChild(title);

  if (st.stale) {
    const banner = document.createElement("div");
    banner.className = "stale-banner";
    banner.textContent =
      "service unreachable: showing stale values, retry a toggle";
    root.appendChild(banner);
  }

  for (const variable of explorer.state.model.variables) {
    const box = document.createElement("div");
    box.className = "monitor";
    const head = document.createElement("div");
    head.className = "monitor-title";
    head.textContent = variable.name;
    if (st.evidence[variable.name] !== undefined) {
      head.textContent += explorer.state.shared.has(variable.name)
        ? " (pinned, shared)"
        : " (pinned)";
      box.classList.add("pinned");
    }
    box.appendChild(head);

    for (const state of variable.states) {
      const value = explorer.displayed(panel, variable.name, state);
      const row = document.createElement("div");
      row.className = "bar-row";
      row.dataset.variable = variable.name;
      row.dataset.state = state;
      row.addEventListener("click", () => onToggle(panel, variable.name, state));

      const label = document.createElement("span");
      label.className = "bar-label";
      label.textContent = state;
      const track = document.createElement("span");
      track.className = "bar-track";
      const fill = document.createElement("span");
      fill.className = "bar-fill";
      fill.style.width = value === null ? "0" : pct(value);
      track.appendChild(fill);
      const num = document.createElement("span");
      num.className = "bar-value";
      num.textContent = value === null ? "–" : pct(value);
      row.append(label, track, num);
      box.appendChild(row);
    }
    root.appendChild(box);
  }

  const pe = document.createElement("div");
  pe.className = "prob-evidence";
  pe.textContent =
    st.probEvidence === null
      ? ""
      : `P(evidence) = ${st.probEvidence.toFixed(4)}`;
  root.appendChild(pe);
}

export function renderRiskReadout(
  root: HTMLElement,
  explorer: Explorer,
  variable: string,
  state: string,
): void {
  const diff = explorer.riskDifference(variable, state);
  root.textContent =
    diff === null
      ? `${variable}=${state}: waiting for both panels`
      : `${variable}=${state} difference between panels: ${(100 * diff).toFixed(1)} points`;
}

export function renderDag(svg: SVGSVGElement, model: ModelInfo): void {
  const depths = topoDepths(model);
  const layers = new Map<number, string[]>();
  for (const v of model.variables) {
    const d = depths.get(v.name) ?? 0;
    if (!layers.has(d)) layers.set(d, []);
    layers.get(d)!.push(v.name);
  }
  const width = 560;
  const layerH = 80;
  const maxDepth = Math.max(...depths.values());
  svg.setAttribute("viewBox", `0 0 ${width} ${(maxDepth + 1) * layerH + 20}`);
  svg.innerHTML = "";

  const pos = new Map<string, { x: number; y: number }>();
  for (const [d, names] of layers) {
    names.forEach((name, i) => {
      pos.set(name, {
        x: ((i + 1) * width) / (names.length + 1),
        y: 40 + d * layerH,
      });
    });
  }

  const ns = "http://www.w3.org/2000/svg";
  for (const [p, c] of model.edges) {
    const a = pos.get(p);
    const b = pos.get(c);
    if (!a || !b) continue;
    const line = document.createElementNS(ns, "line");
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y + 14));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y - 16));
    line.setAttribute("class", "dag-edge");
    line.setAttribute("marker-end", "url(#arrow)");
    svg.appendChild(line);
  }
  const defs = document.createElementNS(ns, "defs");
  defs.innerHTML =
    '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" ' +
    'markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
    '<path d="M 0 0 L 10 5 L 0 10 z" /></marker>';
  svg.appendChild(defs);
  for (const v of model.variables) {
    const at = pos.get(v.name)!;
    const g = document.createElementNS(ns, "g");
    const circle = document.createElementNS(ns, "ellipse");
    circle.setAttribute("cx", String(at.x));
    circle.setAttribute("cy", String(at.y));
    circle.setAttribute("rx", "52");
    circle.setAttribute("ry", "16");
    circle.setAttribute("class", "dag-node");
    const text = document.createElementNS(ns, "text");
    text.setAttribute("x", String(at.x));
    text.setAttribute("y", String(at.y + 4));
    text.setAttribute("text-anchor", "middle");
    text.setAttribute("class", "dag-label");
    text.textContent = v.name;
    g.append(circle, text);
    svg.appendChild(g);
  }
}
