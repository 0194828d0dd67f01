"""Shared helpers: random network generation and forward sampling."""

from __future__ import annotations

import numpy as np
import pytest

from causalbn import Cpt, Network, NetworkSpec, VariableSpec, compile_network


def random_network(
    rng: np.random.Generator,
    max_vars: int = 8,
    max_states: int = 4,
    edge_prob: float = 0.4,
    min_vars: int = 2,
) -> Network:
    """A random DAG with random strictly-positive normalized CPTs.

    Edges only go from lower to higher index, so the graph is acyclic by
    construction."""
    n = int(rng.integers(min_vars, max_vars + 1))
    names = [f"V{i}" for i in range(n)]
    cards = [int(rng.integers(2, max_states + 1)) for _ in range(n)]
    variables = [
        VariableSpec(names[i], tuple(f"s{k}" for k in range(cards[i])))
        for i in range(n)
    ]
    cpts = []
    for j in range(n):
        parents = [names[i] for i in range(j) if rng.random() < edge_prob]
        n_rows = int(np.prod([cards[names.index(p)] for p in parents], initial=1))
        raw = rng.random((n_rows, cards[j])) + 0.05
        rows = raw / raw.sum(axis=1, keepdims=True)
        cpts.append(Cpt(names[j], tuple(parents), tuple(tuple(r) for r in rows)))
    return compile_network(NetworkSpec("random", tuple(variables), tuple(cpts)))


def forward_sample(network: Network, rng: np.random.Generator) -> dict[str, str]:
    """One full assignment drawn from the network's joint distribution."""
    assignment: dict[str, str] = {}
    for var in network.topo_order:
        cpt = network.cpts[var]
        states = network.states(var)
        row_idx = 0
        for p in cpt.parents:
            p_states = network.states(p)
            row_idx = row_idx * len(p_states) + p_states.index(assignment[p])
        probs = np.array(cpt.rows[row_idx])
        assignment[var] = states[rng.choice(len(states), p=probs / probs.sum())]
    return assignment


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240816)
