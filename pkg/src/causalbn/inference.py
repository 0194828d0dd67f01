"""Exact posterior computation: variable elimination plus a brute-force
enumeration oracle used as an independent check."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ImpossibleEvidenceError,
    TargetInEvidenceError,
    TooLargeError,
)
from .factor import Factor, cpt_factor
from .network import Network, check_evidence

JOINT_CELL_CAP = 2**20


@dataclass(frozen=True)
class Posterior:
    variable: str
    distribution: dict[str, float]
    prob_evidence: float


def elimination_order(network: Network, retained: set[str]) -> list[str]:
    """Greedy min-degree order over the moralized graph, restricted to
    variables outside `retained`. Ties break by declaration order."""
    for v in retained:
        network.variable(v)
    names = list(network.variable_names)
    adj: dict[str, set[str]] = {n: set() for n in names}
    for child in names:
        ps = network.cpts[child].parents
        for p in ps:
            adj[p].add(child)
            adj[child].add(p)
        for a in ps:
            for b in ps:
                if a != b:
                    adj[a].add(b)

    order: list[str] = []
    remaining = [n for n in names if n not in retained]
    while remaining:
        pick = min(remaining, key=lambda n: (len(adj[n]), names.index(n)))
        nbrs = adj[pick]
        for a in nbrs:
            for b in nbrs:
                if a != b:
                    adj[a].add(b)
        for n in nbrs:
            adj[n].discard(pick)
        del adj[pick]
        order.append(pick)
        remaining.remove(pick)
    return order


def _eliminate(factors: list[Factor], order: list[str]) -> list[Factor]:
    for var in order:
        involved = [f for f in factors if var in f.scope]
        if not involved:
            continue
        prod = involved[0]
        for f in involved[1:]:
            prod = prod.product(f)
        factors = [f for f in factors if var not in f.scope]
        factors.append(prod.sum_out(var))
    return factors


def posterior(network: Network, target: str, evidence: dict[str, str]) -> Posterior:
    """Exact P(target | evidence) by variable elimination.

    Raises ImpossibleEvidenceError when P(evidence) = 0."""
    network.variable(target)
    check_evidence(network, evidence)
    if target in evidence:
        raise TargetInEvidenceError(f"target {target!r} is assigned in evidence")

    factors = [
        cpt_factor(network, v).reduce(evidence) for v in network.variable_names
    ]
    retained = {target} | set(evidence)
    factors = _eliminate(factors, elimination_order(network, retained))

    result = Factor.unit()
    for f in factors:
        result = result.product(f)
    if result.scope != (target,):
        result = result.transpose((target,))

    p_evidence = result.total()
    if p_evidence <= 0.0:
        raise ImpossibleEvidenceError(
            f"evidence {evidence!r} has probability zero"
        )
    dist = result.flat() / p_evidence
    return Posterior(
        variable=target,
        distribution=dict(zip(network.states(target), (float(p) for p in dist))),
        prob_evidence=p_evidence,
    )


def marginals(network: Network, evidence: dict[str, str]) -> list[Posterior]:
    """Posterior of every variable not assigned in evidence."""
    check_evidence(network, evidence)
    return [
        posterior(network, v, evidence)
        for v in network.variable_names
        if v not in evidence
    ]


def joint_enumerate(network: Network, cell_cap: int = JOINT_CELL_CAP) -> Factor:
    """Full joint distribution by the chain rule; the verification oracle.

    Scope is the network's topological order."""
    n_cells = 1
    for v in network.variables:
        n_cells *= len(v.states)
        if n_cells > cell_cap:
            raise TooLargeError(
                f"joint would exceed {cell_cap} cells"
            )
    joint = Factor.unit()
    for v in network.topo_order:
        joint = joint.product(cpt_factor(network, v))
    return joint.transpose(network.topo_order)


def oracle_posterior(
    network: Network, target: str, evidence: dict[str, str]
) -> Posterior:
    """Posterior via the full joint; independent of the elimination path."""
    network.variable(target)
    check_evidence(network, evidence)
    if target in evidence:
        raise TargetInEvidenceError(f"target {target!r} is assigned in evidence")
    joint = joint_enumerate(network).reduce(evidence)
    for v in list(joint.scope):
        if v != target:
            joint = joint.sum_out(v)
    p_evidence = joint.total()
    if p_evidence <= 0.0:
        raise ImpossibleEvidenceError(f"evidence {evidence!r} has probability zero")
    dist = joint.flat() / p_evidence
    return Posterior(
        variable=target,
        distribution=dict(zip(network.states(target), (float(p) for p in dist))),
        prob_evidence=p_evidence,
    )
