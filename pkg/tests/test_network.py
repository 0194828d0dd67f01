import itertools

import numpy as np
import pytest

from causalbn import (
    Cpt,
    InvalidNetworkError,
    NetworkSpec,
    UnknownVariableError,
    VariableSpec,
    compile_network,
    paper_network,
)

from conftest import random_network


def binary(name, *parents_and_rows):
    parents, rows = parents_and_rows
    return Cpt(name, parents, rows)


def test_single_binary_variable_compiles():
    spec = NetworkSpec(
        "tiny",
        (VariableSpec("A", ("a", "b")),),
        (Cpt("A", (), ((0.5, 0.5),)),),
    )
    net = compile_network(spec)
    assert net.topo_order == ("A",)
    assert net.cpts["A"].rows == ((0.5, 0.5),)


def test_paper_network_topo_order():
    net = paper_network()
    assert net.topo_order == ("Race", "Contraband", "Stopped", "Force")


def test_smallest_cycle_reported():
    spec = NetworkSpec(
        "cyc",
        (VariableSpec("A", ("x", "y")), VariableSpec("B", ("x", "y"))),
        (
            Cpt("A", ("B",), ((0.5, 0.5), (0.5, 0.5))),
            Cpt("B", ("A",), ((0.5, 0.5), (0.5, 0.5))),
        ),
    )
    with pytest.raises(InvalidNetworkError) as exc:
        compile_network(spec)
    cycles = [i for i in exc.value.issues if i.kind == "Cycle"]
    assert len(cycles) == 1
    assert "A" in cycles[0].message and "B" in cycles[0].message


def test_all_errors_reported_together():
    spec = NetworkSpec(
        "broken",
        (
            VariableSpec("A", ("only",)),  # BadStateCount
            VariableSpec("B", ("x", "y")),  # MissingCpt
            VariableSpec("C", ("x", "y")),
        ),
        (
            Cpt("A", (), ((1.0,),)),
            Cpt("C", ("Nope",), ((0.5, 0.5),)),  # UnknownParent
        ),
    )
    with pytest.raises(InvalidNetworkError) as exc:
        compile_network(spec)
    kinds = {i.kind for i in exc.value.issues}
    assert {"BadStateCount", "MissingCpt", "UnknownParent"} <= kinds


def test_row_not_normalized_reports_index_and_sum():
    spec = NetworkSpec(
        "bad",
        (VariableSpec("A", ("x", "y")),),
        (Cpt("A", (), ((0.5, 0.6),)),),
    )
    with pytest.raises(InvalidNetworkError) as exc:
        compile_network(spec)
    (issue,) = [i for i in exc.value.issues if i.kind == "RowNotNormalized"]
    assert issue.details["row"] == 0
    assert issue.details["sum"] == pytest.approx(1.1)


def test_rows_within_tolerance_are_renormalized_exactly():
    third = 0.3333333333  # sums to 0.9999999999, inside 1e-9
    spec = NetworkSpec(
        "renorm",
        (VariableSpec("A", ("x", "y", "z")),),
        (Cpt("A", (), ((third, third, third),)),),
    )
    net = compile_network(spec)
    assert sum(net.cpts["A"].rows[0]) == 1.0


def test_duplicate_names_rejected():
    spec = NetworkSpec(
        "dup",
        (VariableSpec("A", ("x", "y")), VariableSpec("A", ("x", "y"))),
        (Cpt("A", (), ((0.5, 0.5),)),),
    )
    with pytest.raises(InvalidNetworkError) as exc:
        compile_network(spec)
    assert any(i.kind == "DuplicateName" for i in exc.value.issues)


def test_ancestors_and_descendants_on_paper_network():
    net = paper_network()
    assert net.ancestors("Force") == {"Race", "Contraband", "Stopped"}
    assert net.ancestors("Race") == set()
    assert net.descendants("Race") == {"Contraband", "Stopped", "Force"}
    with pytest.raises(UnknownVariableError):
        net.ancestors("Nope")


def test_chain_descendants():
    spec = NetworkSpec(
        "chain",
        tuple(VariableSpec(n, ("x", "y")) for n in "ABC"),
        (
            Cpt("A", (), ((0.5, 0.5),)),
            Cpt("B", ("A",), ((0.3, 0.7), (0.6, 0.4))),
            Cpt("C", ("B",), ((0.2, 0.8), (0.9, 0.1))),
        ),
    )
    net = compile_network(spec)
    assert net.descendants("A") == {"B", "C"}


def test_chain_rule_mass_sums_to_one_on_random_networks(rng):
    for _ in range(25):
        net = random_network(rng, max_vars=5, max_states=3)
        total = 0.0
        state_lists = [net.states(v) for v in net.variable_names]
        for combo in itertools.product(*state_lists):
            assignment = dict(zip(net.variable_names, combo))
            p = 1.0
            for var in net.topo_order:
                cpt = net.cpts[var]
                row = 0
                for parent in cpt.parents:
                    ps = net.states(parent)
                    row = row * len(ps) + ps.index(assignment[parent])
                p *= cpt.rows[row][net.states(var).index(assignment[var])]
            assert 0.0 <= p <= 1.0
            total += p
        assert abs(total - 1.0) <= 1e-9


def test_topological_order_deterministic(rng):
    net = random_network(rng, max_vars=8)
    spec = NetworkSpec(net.name, net.variables, tuple(net.cpts[v] for v in net.variable_names))
    for _ in range(5):
        assert compile_network(spec).topo_order == net.topo_order
