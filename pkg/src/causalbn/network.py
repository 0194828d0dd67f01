"""Discrete Bayesian network definition, validation and compilation.

Row ordering convention (used everywhere: parser, factors, docs): CPT rows
enumerate parent state combinations row-major with the LAST parent varying
fastest.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .errors import (
    InvalidNetworkError,
    UnknownVariableError,
    UnknownStateError,
    ValidationIssue,
)

NORMALIZATION_TOL = 1e-9

_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class VariableSpec:
    name: str
    states: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))


@dataclass(frozen=True)
class Cpt:
    """One probability vector over the child's states per parent combination."""

    child: str
    parents: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))


@dataclass(frozen=True)
class NetworkSpec:
    name: str
    variables: tuple[VariableSpec, ...]
    cpts: tuple[Cpt, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "cpts", tuple(self.cpts))


@dataclass(frozen=True)
class Network:
    """A validated network. Immutable after compile; safe to share."""

    name: str
    variables: tuple[VariableSpec, ...]
    cpts: dict[str, Cpt]
    topo_order: tuple[str, ...]

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def variable(self, name: str) -> VariableSpec:
        for v in self.variables:
            if v.name == name:
                return v
        raise UnknownVariableError(f"unknown variable {name!r}")

    def states(self, name: str) -> tuple[str, ...]:
        return self.variable(name).states

    def parents(self, name: str) -> tuple[str, ...]:
        self.variable(name)
        return self.cpts[name].parents

    def children(self, name: str) -> tuple[str, ...]:
        self.variable(name)
        return tuple(
            v.name for v in self.variables if name in self.cpts[v.name].parents
        )

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        out = []
        for v in self.variables:
            for p in self.cpts[v.name].parents:
                out.append((p, v.name))
        return tuple(out)

    def ancestors(self, name: str) -> set[str]:
        """All variables reachable from `name` against edge direction."""
        self.variable(name)
        seen: set[str] = set()
        stack = list(self.parents(name))
        while stack:
            n = stack.pop()
            if n not in seen:
                seen.add(n)
                stack.extend(self.parents(n))
        return seen

    def descendants(self, name: str) -> set[str]:
        self.variable(name)
        seen: set[str] = set()
        stack = list(self.children(name))
        while stack:
            n = stack.pop()
            if n not in seen:
                seen.add(n)
                stack.extend(self.children(n))
        return seen


def check_evidence(network: Network, evidence: dict[str, str]) -> None:
    """Validate an evidence assignment against the network."""
    for var, state in evidence.items():
        try:
            spec = network.variable(var)
        except UnknownVariableError:
            raise UnknownVariableError(f"evidence variable {var!r} not in network")
        if state not in spec.states:
            raise UnknownStateError(
                f"variable {var!r} has no state {state!r} (states: {list(spec.states)})"
            )


def parent_combinations(
    parent_states: list[tuple[str, ...]],
) -> list[tuple[str, ...]]:
    """All parent state combinations in row order (last parent fastest)."""
    return [tuple(c) for c in itertools.product(*parent_states)]


def compile_network(spec: NetworkSpec) -> Network:
    """Validate a NetworkSpec and build an immutable Network.

    All validation failures are collected and reported together in an
    InvalidNetworkError. Rows whose sums are within 1e-9 of 1 are
    renormalized exactly.
    """
    issues: list[ValidationIssue] = []

    seen_names: set[str] = set()
    for v in spec.variables:
        if not _IDENT_RE.match(v.name):
            issues.append(
                ValidationIssue(
                    "DuplicateName", f"invalid variable name {v.name!r}", v.name
                )
            )
        if v.name in seen_names:
            issues.append(
                ValidationIssue(
                    "DuplicateName", f"variable {v.name!r} declared twice", v.name
                )
            )
        seen_names.add(v.name)
        if len(v.states) < 2:
            issues.append(
                ValidationIssue(
                    "BadStateCount",
                    f"variable {v.name!r} has {len(v.states)} state(s); need >= 2",
                    v.name,
                )
            )
        if len(set(v.states)) != len(v.states):
            issues.append(
                ValidationIssue(
                    "DuplicateName",
                    f"variable {v.name!r} has duplicate state labels",
                    v.name,
                )
            )

    by_name = {v.name: v for v in spec.variables}
    cpt_by_child: dict[str, Cpt] = {}
    for cpt in spec.cpts:
        if cpt.child not in by_name:
            issues.append(
                ValidationIssue(
                    "UnknownVariable",
                    f"cpt for undeclared variable {cpt.child!r}",
                    cpt.child,
                )
            )
            continue
        if cpt.child in cpt_by_child:
            issues.append(
                ValidationIssue(
                    "DuplicateName", f"two cpts for variable {cpt.child!r}", cpt.child
                )
            )
            continue
        cpt_by_child[cpt.child] = cpt

    for v in spec.variables:
        if v.name not in cpt_by_child:
            issues.append(
                ValidationIssue("MissingCpt", f"no cpt for variable {v.name!r}", v.name)
            )

    normalized: dict[str, Cpt] = {}
    for child, cpt in cpt_by_child.items():
        ok = True
        if len(set(cpt.parents)) != len(cpt.parents):
            issues.append(
                ValidationIssue(
                    "UnknownParent", f"cpt {child!r} lists a parent twice", child
                )
            )
            ok = False
        for p in cpt.parents:
            if p not in by_name:
                issues.append(
                    ValidationIssue(
                        "UnknownParent",
                        f"cpt {child!r} has undeclared parent {p!r}",
                        child,
                    )
                )
                ok = False
        if child in cpt.parents:
            issues.append(
                ValidationIssue(
                    "UnknownParent", f"cpt {child!r} lists itself as a parent", child
                )
            )
            ok = False
        if not ok:
            continue

        expected_rows = 1
        for p in cpt.parents:
            expected_rows *= len(by_name[p].states)
        if len(cpt.rows) != expected_rows:
            issues.append(
                ValidationIssue(
                    "BadRowCount",
                    f"cpt {child!r} has {len(cpt.rows)} rows; expected {expected_rows}",
                    child,
                )
            )
            continue

        n_states = len(by_name[child].states)
        new_rows = []
        for i, row in enumerate(cpt.rows):
            if len(row) != n_states:
                issues.append(
                    ValidationIssue(
                        "BadRowCount",
                        f"cpt {child!r} row {i} has {len(row)} entries; expected {n_states}",
                        child,
                        details={"row": i},
                    )
                )
                continue
            if any(p < 0 or p > 1 for p in row):
                issues.append(
                    ValidationIssue(
                        "BadProbability",
                        f"cpt {child!r} row {i} has entries outside [0, 1]",
                        child,
                        details={"row": i},
                    )
                )
                continue
            s = sum(row)
            if abs(s - 1.0) > NORMALIZATION_TOL:
                issues.append(
                    ValidationIssue(
                        "RowNotNormalized",
                        f"cpt {child!r} row {i} sums to {s!r}, not 1",
                        child,
                        details={"row": i, "sum": s},
                    )
                )
                continue
            new_rows.append(tuple(p / s for p in row))
        if len(new_rows) == len(cpt.rows):
            normalized[child] = Cpt(child, cpt.parents, tuple(new_rows))

    topo = _topological_order(spec, normalized, issues)

    if issues:
        raise InvalidNetworkError(issues)

    return Network(
        name=spec.name,
        variables=spec.variables,
        cpts=normalized,
        topo_order=tuple(topo),
    )


def _topological_order(
    spec: NetworkSpec,
    cpts: dict[str, Cpt],
    issues: list[ValidationIssue],
) -> list[str]:
    """Kahn's algorithm with declaration-order tie-break; reports one cycle."""
    names = [v.name for v in spec.variables]
    parents = {n: [p for p in cpts[n].parents if p in cpts] if n in cpts else [] for n in names}
    indeg = {n: len(parents[n]) for n in names}
    children: dict[str, list[str]] = {n: [] for n in names}
    for n in names:
        for p in parents[n]:
            children[p].append(n)

    order: list[str] = []
    remaining = set(names)
    while remaining:
        pick = next((n for n in names if n in remaining and indeg[n] == 0), None)
        if pick is None:
            issues.append(
                ValidationIssue(
                    "Cycle",
                    "cycle detected: " + " -> ".join(_find_cycle(parents, remaining)),
                )
            )
            break
        order.append(pick)
        remaining.discard(pick)
        for c in children[pick]:
            indeg[c] -= 1
    return order


def _find_cycle(parents: dict[str, list[str]], remaining: set[str]) -> list[str]:
    """Walk parent links inside `remaining` until a node repeats."""
    start = next(iter(sorted(remaining)))
    path = [start]
    seen = {start}
    cur = start
    while True:
        nxt = next((p for p in parents[cur] if p in remaining), None)
        if nxt is None:
            return path
        if nxt in seen:
            i = path.index(nxt)
            return path[i:] + [nxt]
        path.append(nxt)
        seen.add(nxt)
        cur = nxt
