import itertools
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tybraid import f2
from tybraid.errors import CapacityError, DomainError
from tybraid.f2 import Bicharacter, GradedGroup


def brute_pair(chi: Bicharacter, x: int, y: int) -> int:
    m = chi.matrix()
    return sum(((x >> i) & 1) * m[i][j] * ((y >> j) & 1)
               for i in range(chi.dim) for j in range(chi.dim)) % 2


def test_pair_matches_matrix_product():
    rng = random.Random(3)
    for _ in range(20):
        chi = f2.random_symmetric(rng, rng.randint(1, 5))
        for x in range(chi.order):
            for y in range(chi.order):
                assert chi.pair(x, y) == brute_pair(chi, x, y)


def test_standard_forms():
    h = f2.standard_hyperbolic(1)
    assert h.matrix() == [[0, 1], [1, 0]]
    assert h.is_alternating and h.is_nondegenerate
    assert f2.ell(1).matrix() == [[1]]
    assert not f2.zero_form(2).is_nondegenerate


def test_aut_order_formula_against_enumeration():
    for n in (1, 2):
        chi = f2.standard_hyperbolic(n)
        assert f2.aut_order_formula(n) == len(f2.enumerate_aut(chi)) == f2.count_aut(chi)
    assert [f2.aut_order_formula(n) for n in range(4)] == [1, 6, 720, 1451520]


def test_scan_and_backtrack_agree():
    for chi in (f2.standard_hyperbolic(2), f2.normal_form(1, 1), f2.ell(3)):
        assert set(f2.iter_aut(chi, "scan")) == set(f2.iter_aut(chi, "backtrack"))


def test_every_automorphism_preserves_chi():
    chi = f2.normal_form(1, 2)
    for f in f2.iter_aut(chi):
        assert f2.rank(f) == chi.dim
        for x, y in itertools.product(range(chi.order), repeat=2):
            assert chi.pair(f2.apply(f, x), f2.apply(f, y)) == chi.pair(x, y)


def test_aut_search_bound():
    with pytest.raises(CapacityError):
        next(f2.iter_aut(f2.standard_hyperbolic(5)))


def test_inverse_and_compose():
    for f in f2.iter_aut(f2.standard_hyperbolic(1)):
        assert f2.compose(f, f2.inverse(f)) == f2.identity_aut(2)


def test_solve_coords_rejects_dependent_basis():
    with pytest.raises(DomainError):
        f2.solve_coords([1, 2, 3], 1)


def test_canonical_w_is_orthogonal_to_a0():
    chi = f2.standard_hyperbolic(1).direct_sum(Bicharacter(1, (0,)))
    # a deliberately skewed grading: both a and w are odd
    g = GradedGroup(3, 0b101, None)
    w = f2.canonical_w(g, chi)
    assert g.degree(w) == 1
    assert all(chi.pair(w, a) == 0 for a in g.kernel_basis())


def test_json_round_trip():
    chi = f2.normal_form(2, 1)
    assert Bicharacter.from_json(chi.to_json()) == chi
    with pytest.raises(DomainError):
        Bicharacter.from_json({"dim": 2, "gram_rows": ["1"]})


def test_wall_normalize_rejects_degenerate():
    with pytest.raises(DomainError):
        f2.wall_normalize(f2.zero_form(2))


def test_wall_examples():
    # l^3 is congruent to h + l
    p, h, l = f2.wall_normalize(f2.ell(3))
    assert (h, l) == (1, 1)
    assert f2.ell(3).congruent(p) == f2.normal_form(1, 1)


@st.composite
def symmetric_forms(draw, dims=st.integers(1, 6), alternating=False):
    dim = draw(dims)
    rows = [0] * dim
    for i in range(dim):
        if not alternating and draw(st.booleans()):
            rows[i] |= 1 << i
        for j in range(i + 1, dim):
            if draw(st.booleans()):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    chi = Bicharacter(dim, tuple(rows))
    assume(chi.is_nondegenerate)
    return chi


@settings(max_examples=300, deadline=None)
@given(symmetric_forms())
def test_wall_normalization_property(chi):
    assert f2.wall_violations(chi) == []
    _, h, l = f2.wall_normalize(chi)
    assert 2 * h + l == chi.dim and l <= 2


@settings(max_examples=100, deadline=None)
@given(symmetric_forms(dims=st.sampled_from([2, 4, 6]), alternating=True))
def test_alternating_inputs_give_hyperbolic_powers(chi):
    _, h, l = f2.wall_normalize(chi)
    assert (2 * h, l) == (chi.dim, 0)
