import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causalbn import (
    InvalidNetworkError,
    compile_network,
    compile_text,
    parse,
    posterior,
    serialize,
    to_network_spec,
)
from causalbn.policing import bundled_model_text

FIXTURES = ("policing.bnm", "policing_text_literal.bnm")


def test_bundled_model_reproduces_figure_numbers():
    net, _ = compile_text(bundled_model_text())
    assert posterior(net, "Force", {"Race": "white"}).distribution["True"] == pytest.approx(0.16, abs=1e-9)
    assert posterior(net, "Force", {"Race": "black"}).distribution["True"] == pytest.approx(0.24, abs=1e-9)


def test_fraction_literals():
    text = """
network f
variable X { states: a, b }
cpt X { row : 8/25, 17/25; }
"""
    result = parse(text)
    assert result.ok
    row = result.document.cpts[0].rows[0]
    assert row.values[0].value == pytest.approx(0.32)
    assert row.values[1].value == pytest.approx(0.68)
    assert row.values[0].text == "8/25"


def test_one_state_variable_fails_at_compile_not_parse():
    text = """
network f
variable X { states: a }
cpt X { row : 1; }
"""
    result = parse(text)
    assert result.ok
    with pytest.raises(InvalidNetworkError) as exc:
        compile_network(to_network_spec(result.document))
    assert any(i.kind == "BadStateCount" for i in exc.value.issues)


def test_truncated_cpt_reports_position():
    text = "network f\nvariable X { states: a, b }\ncpt X |"
    result = parse(text)
    assert not result.ok
    errors = [d for d in result.diagnostics if d.severity == "error"]
    assert errors
    assert errors[0].line == 3
    assert errors[0].column == 8


def test_comments_ignored():
    text = "network f # hello\nvariable X { states: a, b } # more\ncpt X { row : 0.5, 0.5; }\n"
    assert parse(text).ok


def test_row_label_mismatch_is_diagnosed():
    text = """
network f
variable P { states: u, v }
variable X { states: a, b }
cpt P { row : 0.5, 0.5; }
cpt X | P {
  row v: 0.5, 0.5;
  row u: 0.5, 0.5;
}
"""
    result = parse(text)
    assert not result.ok
    assert any("do not match" in d.message for d in result.diagnostics)


def test_scenarios_parsed():
    result = parse(bundled_model_text())
    assert result.ok
    names = [s.name for s in result.document.scenarios]
    assert names == ["fig3_white", "fig3_black", "fig4", "fig5_white", "fig5_black"]
    assert dict(result.document.scenarios[2].assignments) == {"Stopped": "True"}


def test_empty_scenario_round_trips():
    text = "network f\nvariable X { states: a, b }\ncpt X { row : 0.5, 0.5; }\nscenario empty { }\n"
    r1 = parse(text)
    assert r1.ok
    r2 = parse(serialize(r1.document))
    assert r2.ok and r2.document == r1.document


@pytest.mark.parametrize("fixture", FIXTURES)
def test_round_trip_fixpoint(fixture):
    text = bundled_model_text(fixture)
    r1 = parse(text)
    assert r1.ok
    canonical = serialize(r1.document)
    r2 = parse(canonical)
    assert r2.ok
    assert r2.document == r1.document
    assert serialize(r2.document) == canonical


def test_fractions_survive_round_trip():
    text = bundled_model_text()
    out = serialize(parse(text).document)
    for frac in ("4/15", "8/25", "15/40", "25/40", "1/2", "1/5"):
        assert frac in out


def test_decimals_serialized_to_six_significant_digits():
    text = "network f\nvariable X { states: a, b }\ncpt X { row : 0.1234567891, 0.8765432109; }\n"
    out = serialize(parse(text).document)
    assert "0.123457" in out and "0.876543" in out


def test_compile_of_serialized_equals_original():
    net1, doc = compile_text(bundled_model_text())
    net2, _ = compile_text(serialize(doc))
    assert net1 == net2


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=400))
def test_parser_never_crashes_on_arbitrary_text(text):
    result = parse(text)
    lines = text.split("\n")
    for d in result.diagnostics:
        assert 1 <= d.line <= len(lines)
        assert d.column >= 1
        assert d.column <= len(lines[d.line - 1]) + 2


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=400))
def test_parser_never_crashes_on_arbitrary_bytes(data):
    parse(data.decode("utf-8", errors="replace"))
