"""The built-in stop-and-search scenario pack: the canonical model, its
figure scenarios, group-bias metrics, a collider audit, and structural
templates for alternative causal mechanisms."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .dsep import ActivePath, active_paths
from .errors import (
    ImpossibleEvidenceError,
    TemplateMismatchError,
    UnknownVariableError,
)
from .inference import Posterior, marginals, posterior
from .network import Cpt, Network, NetworkSpec, VariableSpec, compile_network
from .textfmt import compile_text, ModelDocument

FIGURE_NAMES = ("fig2", "fig3", "fig4", "fig5")

_EQUAL_TOL = 1e-9


def _load_bundled(name: str) -> tuple[Network, ModelDocument]:
    text = (resources.files("causalbn") / "models" / name).read_text("utf-8")
    return compile_text(text)


def paper_network() -> Network:
    """The canonical 4-node model (identical to parsing policing.bnm)."""
    return _load_bundled("policing.bnm")[0]


def text_literal_network() -> Network:
    """Variant with force-given-contraband = 1/5."""
    return _load_bundled("policing_text_literal.bnm")[0]


def bundled_model_text(name: str = "policing.bnm") -> str:
    return (resources.files("causalbn") / "models" / name).read_text("utf-8")


def scenario_evidence() -> dict[str, dict[str, str]]:
    """Evidence sets of the bundled scenario blocks, by scenario name."""
    doc = _load_bundled("policing.bnm")[1]
    return {s.name: dict(s.assignments) for s in doc.scenarios}


@dataclass(frozen=True)
class ScenarioRun:
    label: str
    evidence: dict[str, str]
    posteriors: tuple[Posterior, ...]
    prob_evidence: float


@dataclass(frozen=True)
class PosteriorReport:
    name: str
    runs: tuple[ScenarioRun, ...]


def _run(network: Network, label: str, evidence: dict[str, str]) -> ScenarioRun:
    posts = tuple(marginals(network, evidence))
    p_e = posts[0].prob_evidence if posts else 1.0
    return ScenarioRun(label, dict(evidence), posts, p_e)


def run_figure_scenarios(network: Network | None = None) -> dict[str, PosteriorReport]:
    """The four figure scenarios: priors, per-race runs, the stop-only
    restriction, and the per-race runs under that restriction."""
    net = network or paper_network()
    ev = scenario_evidence()
    return {
        "fig2": PosteriorReport("fig2", (_run(net, "prior", {}),)),
        "fig3": PosteriorReport(
            "fig3",
            (
                _run(net, "fig3_white", ev["fig3_white"]),
                _run(net, "fig3_black", ev["fig3_black"]),
            ),
        ),
        "fig4": PosteriorReport("fig4", (_run(net, "fig4", ev["fig4"]),)),
        "fig5": PosteriorReport(
            "fig5",
            (
                _run(net, "fig5_white", ev["fig5_white"]),
                _run(net, "fig5_black", ev["fig5_black"]),
            ),
        ),
    }


@dataclass(frozen=True)
class BiasReport:
    outcome_variable: str
    outcome_state: str
    group_variable: str
    evidence: dict[str, str]
    per_group: dict[str, float | None]  # None = group state impossible under evidence
    risk_difference: float
    risk_ratio: float


def bias_report(
    network: Network,
    outcome_variable: str,
    outcome_state: str,
    group_variable: str,
    evidence: dict[str, str],
) -> BiasReport:
    """Outcome probability per group state, with max-min difference and
    max/min ratio. Group states with zero mass under the evidence are
    reported as inapplicable, not fatal."""
    if group_variable in evidence:
        raise ValueError(f"group {group_variable!r} is assigned in evidence")
    if outcome_variable == group_variable:
        raise ValueError("outcome and group must differ")
    spec = network.variable(outcome_variable)
    if outcome_state not in spec.states:
        raise UnknownVariableError(
            f"{outcome_variable!r} has no state {outcome_state!r}"
        )

    per_group: dict[str, float | None] = {}
    for g in network.states(group_variable):
        try:
            post = posterior(
                network, outcome_variable, {**evidence, group_variable: g}
            )
            per_group[g] = post.distribution[outcome_state]
        except ImpossibleEvidenceError:
            per_group[g] = None

    applicable = [p for p in per_group.values() if p is not None]
    if not applicable:
        raise ImpossibleEvidenceError(
            f"no state of {group_variable!r} is possible under {evidence!r}"
        )
    hi, lo = max(applicable), min(applicable)
    if hi - lo <= _EQUAL_TOL:
        # group probabilities equal up to numeric tolerance
        hi = lo
    ratio = hi / lo if lo > 0 else (1.0 if hi == 0 else float("inf"))
    return BiasReport(
        outcome_variable=outcome_variable,
        outcome_state=outcome_state,
        group_variable=group_variable,
        evidence=dict(evidence),
        per_group=per_group,
        risk_difference=hi - lo,
        risk_ratio=ratio,
    )


@dataclass(frozen=True)
class AuditFinding:
    conditioned_variable: str
    path: tuple[str, ...]
    note: str


def collider_audit(
    network: Network,
    outcome: str,
    group: str,
    conditioning: set[str],
) -> list[AuditFinding]:
    """Flag conditioned variables that open collider paths between the
    group variable and the outcome or any of its ancestors.

    A finding is emitted only when removing the named variable from the
    conditioning set actually blocks the reported path."""
    network.variable(outcome)
    network.variable(group)
    for v in conditioning:
        network.variable(v)
    if outcome in conditioning or group in conditioning:
        raise ValueError("outcome and group must not be in the conditioning set")

    targets = [outcome] + sorted(
        network.ancestors(outcome) - {group} - set(conditioning),
        key=network.variable_names.index,
    )
    findings: list[AuditFinding] = []
    seen: set[tuple[str, tuple[str, ...]]] = set()
    for t in targets:
        if t == group:
            continue
        for path in active_paths(network, group, t, conditioning):
            for var in sorted(conditioning, key=network.variable_names.index):
                if not _unblocks(network, path, var):
                    continue
                if _still_active(network, path, conditioning - {var}):
                    continue
                key = (var, path.nodes)
                if key in seen:
                    continue
                seen.add(key)
                findings.append(
                    AuditFinding(
                        conditioned_variable=var,
                        path=path.nodes,
                        note=(
                            f"conditioning on {var!r} opens the path "
                            f"{' - '.join(path.nodes)} between {group!r} and {t!r}; "
                            f"dropping it from the conditioning set blocks the path"
                        ),
                    )
                )
    return findings


def _unblocks(network: Network, path: ActivePath, var: str) -> bool:
    """var is one of the path's colliders, or a descendant of one."""
    for c in path.unblocking_colliders:
        if var == c or var in network.descendants(c):
            return True
    return False


def _still_active(network: Network, path: ActivePath, zs: set[str]) -> bool:
    from .dsep import _path_status

    active, _ = _path_status(network, list(path.nodes), zs)
    return active


_BASE_VARIABLES = (
    VariableSpec("Race", ("white", "black")),
    VariableSpec("Contraband", ("True", "False")),
    VariableSpec("Stopped", ("True", "False")),
    VariableSpec("Force", ("True", "False")),
)

# child -> parents for each template; added nodes are binary True/False
_TEMPLATES: dict[str, dict[str, tuple[str, ...]]] = {
    "misbehaviour": {
        "Race": (),
        "Misbehaviour": (),
        "Contraband": ("Race", "Misbehaviour"),
        "Stopped": ("Race", "Contraband", "Misbehaviour"),
        "Force": ("Race", "Contraband", "Stopped", "Misbehaviour"),
    },
    "explicit-racism": {
        "Race": (),
        "RacistPolicing": (),
        "Contraband": ("Race",),
        "Stopped": ("Race", "Contraband", "RacistPolicing"),
        "Force": ("Race", "Contraband", "Stopped", "RacistPolicing"),
    },
}

_EXTRA_VARIABLE = {
    "misbehaviour": VariableSpec("Misbehaviour", ("True", "False")),
    "explicit-racism": VariableSpec("RacistPolicing", ("True", "False")),
}


def alternative_model(kind: str, cpts: dict[str, Cpt] | None = None) -> Network:
    """A compiled network for one of the alternative-mechanism templates.

    Structure is fixed per template; parameters are caller-supplied per
    variable, defaulting to uniform rows. Supplied CPTs must match the
    template's parent sets exactly."""
    if kind not in _TEMPLATES:
        raise TemplateMismatchError(
            f"unknown template {kind!r}; choose from {sorted(_TEMPLATES)}"
        )
    template = _TEMPLATES[kind]
    variables = list(_BASE_VARIABLES)
    extra = _EXTRA_VARIABLE[kind]
    variables.insert(1, extra)
    by_name = {v.name: v for v in variables}

    cpts = dict(cpts or {})
    for child in cpts:
        if child not in template:
            raise TemplateMismatchError(f"template has no variable {child!r}")
    built: list[Cpt] = []
    for v in variables:
        parents = template[v.name]
        if v.name in cpts:
            supplied = cpts[v.name]
            if tuple(supplied.parents) != parents:
                raise TemplateMismatchError(
                    f"cpt for {v.name!r} must have parents {list(parents)}, "
                    f"got {list(supplied.parents)}"
                )
            built.append(Cpt(v.name, parents, supplied.rows))
        else:
            n_rows = 1
            for p in parents:
                n_rows *= len(by_name[p].states)
            k = len(v.states)
            built.append(
                Cpt(v.name, parents, tuple(tuple(1.0 / k for _ in range(k)) for _ in range(n_rows)))
            )
    return compile_network(
        NetworkSpec(f"policing_{kind.replace('-', '_')}", tuple(variables), tuple(built))
    )
