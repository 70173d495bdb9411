import pytest

from tybraid import tables as tb
from tybraid.scalars import CycScalar


def test_table1_matches_golden():
    t = tb.table1([1, 2])
    assert tb.diff_against_golden(t) == []


def test_split_complex_and_small_match_golden():
    assert tb.diff_against_golden(tb.split_complex_table([1, 2])) == []
    assert tb.diff_against_golden(tb.small_cases_table()) == []


def test_gauss_matches_golden():
    t = tb.gauss_table(1)
    assert tb.diff_against_golden(t) == []
    assert t.detail["swap"]["(+--)"] == "(-++)"
    assert t.detail["swap"]["(---)"] == "(+++)"


def test_gauss_values_scale_with_n():
    assert tb.gauss_table(2).rows == tb.gauss_table(1).rows
    assert tb.gauss_table(2).detail["swap"] == tb.gauss_table(1).detail["swap"]


def test_render_gauss_fallback():
    assert tb.render_gauss(CycScalar.from_int(3, 16), 1) == repr(CycScalar.from_int(3, 16))


@pytest.mark.parametrize("obs,want", [
    ([], "No braidings"),
    ([({"rel": 1}, True), ({"rel": -1}, True)], "Always"),
    ([({"rel": 1}, False)], "Never"),
    ([({"rel": 1, "a0_trivial": False, "a_trivial": False}, True),
      ({"rel": -1, "a0_trivial": False, "a_trivial": False}, False)], "Only when sgn(σ) = sgn(τ)"),
])
def test_verdict(obs, want):
    assert tb.verdict(obs) == want


def test_verdict_mixed():
    obs = [({"rel": 1, "a0_trivial": False, "a_trivial": False}, True),
           ({"rel": 1, "a0_trivial": False, "a_trivial": False}, False)]
    assert tb.verdict(obs) == "Mixed"


def test_table2_rows_computed():
    t = tb.table2([0, 1])
    rows = {r[0]: r[1:] for r in t.rows}
    assert rows["Split Real"] == ["Always", "Never"]
    assert rows["Real/Complex, g = id, sgn(σ) = -sgn(τ)"] == ["Never", "Only when A_0 = *"]
    assert rows["Split Complex, |ℓ| = 0"] == ["Only when sgn(σ) = sgn(τ)",
                                               "Only when A = * and sgn(σ) = -sgn(τ)"]


def test_renderers():
    t = tb.Table("x", "T", ["a", "b|c"], [["1", "2"]], ["note"])
    md = t.to_markdown()
    assert "b\\|c" in md and "note" in md
    assert t.to_csv().splitlines()[0] == "a,b|c"
    assert t.to_json()["rows"] == [["1", "2"]]
    with pytest.raises(ValueError):
        tb.render([t], "xml")
