"""Exact inference for discrete causal Bayesian networks, with a text
model format, collider-bias auditing, and a built-in stop-and-search
demonstration model."""

from .errors import (
    CausalBnError,
    ImpossibleEvidenceError,
    InvalidNetworkError,
    OverlappingSetsError,
    TargetInEvidenceError,
    TemplateMismatchError,
    TooLargeError,
    UnknownStateError,
    UnknownVariableError,
    ValidationIssue,
    VarNotInScopeError,
)
from .factor import Factor, cpt_factor
from .network import (
    Cpt,
    Network,
    NetworkSpec,
    VariableSpec,
    compile_network,
)
from .inference import (
    Posterior,
    elimination_order,
    joint_enumerate,
    marginals,
    oracle_posterior,
    posterior,
)
from .dsep import ActivePath, active_paths, d_separated
from .textfmt import (
    Diagnostic,
    ModelDocument,
    ParseResult,
    compile_text,
    load_model,
    parse,
    serialize,
    to_network_spec,
)
from .policing import (
    AuditFinding,
    BiasReport,
    PosteriorReport,
    ScenarioRun,
    alternative_model,
    bias_report,
    collider_audit,
    paper_network,
    run_figure_scenarios,
    scenario_evidence,
    text_literal_network,
)

__version__ = "0.1.0"

__all__ = [
    "ActivePath",
    "AuditFinding",
    "BiasReport",
    "CausalBnError",
    "Cpt",
    "Diagnostic",
    "Factor",
    "ImpossibleEvidenceError",
    "InvalidNetworkError",
    "ModelDocument",
    "Network",
    "NetworkSpec",
    "OverlappingSetsError",
    "ParseResult",
    "Posterior",
    "PosteriorReport",
    "ScenarioRun",
    "TargetInEvidenceError",
    "TemplateMismatchError",
    "TooLargeError",
    "UnknownStateError",
    "UnknownVariableError",
    "ValidationIssue",
    "VarNotInScopeError",
    "VariableSpec",
    "active_paths",
    "alternative_model",
    "bias_report",
    "collider_audit",
    "compile_network",
    "compile_text",
    "cpt_factor",
    "d_separated",
    "elimination_order",
    "joint_enumerate",
    "load_model",
    "marginals",
    "oracle_posterior",
    "paper_network",
    "parse",
    "posterior",
    "run_figure_scenarios",
    "scenario_evidence",
    "serialize",
    "text_literal_network",
    "to_network_spec",
]
