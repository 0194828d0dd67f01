import itertools

import pytest

from causalbn import (
    Cpt,
    NetworkSpec,
    OverlappingSetsError,
    UnknownVariableError,
    VariableSpec,
    active_paths,
    compile_network,
    d_separated,
    joint_enumerate,
    paper_network,
)

from conftest import random_network

UNIFORM = ((0.5, 0.5),)


def net_from_edges(names, edges):
    variables = tuple(VariableSpec(n, ("t", "f")) for n in names)
    cpts = []
    for n in names:
        parents = tuple(p for p, c in edges if c == n)
        rows = tuple((0.5, 0.5) for _ in range(2 ** len(parents)))
        cpts.append(Cpt(n, parents, rows))
    return compile_network(NetworkSpec("g", variables, tuple(cpts)))


def collider_triple():
    return net_from_edges("ABC", [("A", "C"), ("B", "C")])


def test_collider_triple():
    net = collider_triple()
    assert d_separated(net, {"A"}, {"B"}, set())
    assert not d_separated(net, {"A"}, {"B"}, {"C"})


def test_blocked_chain():
    net = net_from_edges("ABC", [("A", "B"), ("B", "C")])
    assert d_separated(net, {"A"}, {"C"}, {"B"})
    assert not d_separated(net, {"A"}, {"C"}, set())


def test_fork():
    net = net_from_edges("ABC", [("B", "A"), ("B", "C")])
    assert not d_separated(net, {"A"}, {"C"}, set())
    assert d_separated(net, {"A"}, {"C"}, {"B"})


def test_descendant_of_collider_opens_path():
    net = net_from_edges("ABCD", [("A", "C"), ("B", "C"), ("C", "D")])
    assert d_separated(net, {"A"}, {"B"}, set())
    assert not d_separated(net, {"A"}, {"B"}, {"D"})


def test_paper_network_race_contraband_dependent():
    net = paper_network()
    assert not d_separated(net, {"Race"}, {"Contraband"}, set())


def test_overlapping_sets_raise():
    net = collider_triple()
    with pytest.raises(OverlappingSetsError):
        d_separated(net, {"A"}, {"A"}, set())
    with pytest.raises(OverlappingSetsError):
        d_separated(net, {"A"}, {"B"}, {"A"})


def test_unknown_variable_raises():
    net = collider_triple()
    with pytest.raises(UnknownVariableError):
        d_separated(net, {"A"}, {"Z"}, set())


def test_active_paths_collider_given_collider():
    net = collider_triple()
    paths = active_paths(net, "A", "B", {"C"})
    assert len(paths) == 1
    assert paths[0].nodes == ("A", "C", "B")
    assert paths[0].unblocking_colliders == {"C"}


def test_active_paths_collider_unconditioned_is_empty():
    net = collider_triple()
    assert active_paths(net, "A", "B", set()) == []


def test_active_paths_descendant_of_collider():
    net = net_from_edges("ABCD", [("A", "C"), ("B", "C"), ("C", "D")])
    paths = active_paths(net, "A", "B", {"D"})
    assert len(paths) == 1
    assert paths[0].nodes == ("A", "C", "B")
    assert paths[0].unblocking_colliders == {"C"}


def test_active_paths_same_endpoint_raises():
    net = collider_triple()
    with pytest.raises(OverlappingSetsError):
        active_paths(net, "A", "A", set())


def test_dsep_agrees_with_path_enumeration(rng):
    # two independent structural routes must always agree
    for _ in range(40):
        net = random_network(rng, max_vars=6, max_states=2)
        names = list(net.variable_names)
        for x, y in itertools.combinations(names, 2):
            others = [n for n in names if n not in (x, y)]
            for r in range(len(others) + 1):
                for zs in itertools.combinations(others, r):
                    sep = d_separated(net, {x}, {y}, set(zs))
                    has_active = bool(active_paths(net, x, y, set(zs)))
                    assert sep == (not has_active)


def _conditionally_independent(joint, net, x, y, zs, tol=1e-9):
    for z_combo in itertools.product(*(net.states(z) for z in zs)):
        z_ev = dict(zip(zs, z_combo))
        reduced = joint.reduce(z_ev)
        pz = reduced.total()
        if pz <= 0:
            continue
        for xs in net.states(x):
            for ys in net.states(y):
                pxy = reduced.reduce({x: xs, y: ys})
                for v in list(pxy.scope):
                    pxy = pxy.sum_out(v)
                px = reduced.reduce({x: xs})
                for v in list(px.scope):
                    px = px.sum_out(v)
                py = reduced.reduce({y: ys})
                for v in list(py.scope):
                    py = py.sum_out(v)
                if abs(pxy.total() / pz - (px.total() / pz) * (py.total() / pz)) > tol:
                    return False
    return True


def test_dsep_soundness_on_random_parameterizations(rng):
    for _ in range(10):
        net = random_network(rng, max_vars=5, max_states=2)
        joint = joint_enumerate(net)
        names = list(net.variable_names)
        for x, y in itertools.combinations(names, 2):
            others = [n for n in names if n not in (x, y)]
            for r in range(len(others) + 1):
                for zs in itertools.combinations(others, r):
                    if d_separated(net, {x}, {y}, set(zs)):
                        assert _conditionally_independent(joint, net, x, y, zs)
