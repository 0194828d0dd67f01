import { ApiClient } from "./api.js";
import { Explorer, PanelId } from "./state.js";
import { renderDag, renderPanel, renderRiskReadout } from "./render.js";

async function boot(): Promise<void> {
  const api = new ApiClient(
    (url, init) => fetch(url, init),
  );
  const model = await api.model();
  const scenarios = await api.scenarios();
  const explorer = new Explorer(api, model);

  const panelA = document.getElementById("panel-a")!;
  const panelB = document.getElementById("panel-b")!;
  const risk = document.getElementById("risk-readout")!;
  const dag = document.getElementById("dag") as unknown as SVGSVGElement;
  const scenarioSelect = document.getElementById(
    "scenario-select",
  ) as HTMLSelectElement;
  const sharedToggle = document.getElementById(
    "shared-toggle",
  ) as HTMLInputElement;

  // outcome readout follows the last (deepest) variable's first state
  const outcome = model.variables[model.variables.length - 1];
  const outcomeState = outcome.states[0];

  const redraw = () => {
    renderPanel(panelA, explorer, "A", onToggle);
    renderPanel(panelB, explorer, "B", onToggle);
    renderRiskReadout(risk, explorer, outcome.name, outcomeState);
  };
  explorer.onChange = redraw;

  function onToggle(panel: PanelId, variable: string, state: string): void {
    if (sharedToggle.checked) {
      const current = explorer.state.panels[panel].evidence[variable];
      if (current === state) void explorer.unpinShared(variable);
      else void explorer.pinShared(variable, state);
    } else {
      void explorer.toggleEvidence(panel, variable, state);
    }
  }

  const paired = new Set(
    scenarios.map((s) => s.name.replace(/_(white|black)$/, "")),
  );
  for (const name of ["fig2", ...paired]) {
    const opt = document.createElement("option");
    opt.value = name;
    opt.textContent = name;
    scenarioSelect.appendChild(opt);
  }
  scenarioSelect.addEventListener("change", () => {
    const name = scenarioSelect.value;
    if (name === "fig2") void explorer.clearAll();
    else void explorer.loadScenario(name, scenarios);
  });

  document.getElementById("clear-all")!.addEventListener("click", () => {
    scenarioSelect.value = "fig2";
    void explorer.clearAll();
  });

  renderDag(dag, model);
  await explorer.clearAll(); // initial fetch: priors in both panels
}

void boot();
