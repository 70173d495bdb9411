import pytest

from tybraid import f2, qforms
from tybraid import classifier as cl
from tybraid import tydata as td
from tybraid.braiding import solve_braidings
from tybraid.errors import DomainError
from tybraid.tydata import Case

from .conftest import REAL_CASES

EXPECTED_CLASSES = {
    # (n = 0, tau > 0), (n = 0, tau < 0), n >= 1
    Case.SPLIT_REAL: (2, 0, 2),
    Case.REAL_QUATERNIONIC: (0, 2, 2),
    Case.RC_ID: (2, 1, 3),
    Case.RC_CONJ: (2, 2, 4),
}


@pytest.mark.parametrize("case", REAL_CASES)
@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("tau", [1, -1])
def test_class_counts(case, n, tau):
    d = td.make(case, n, tau)
    got = len(cl.classify(d))
    pos, neg, general = EXPECTED_CLASSES[case]
    assert got == (general if n else (pos if tau > 0 else neg))


@pytest.mark.parametrize("case", REAL_CASES)
@pytest.mark.parametrize("tau", [1, -1])
def test_exhaustive_partition_agrees(case, tau):
    d = td.make(case, 1, tau)
    fast = sorted(sorted(b.key for b in c.members) for c in cl.classify(d))
    slow = sorted(sorted(b.key for b in g) for g in cl.classify_exhaustive(d))
    assert fast == slow


@pytest.mark.parametrize("h,l,want", [(0, 0, 2), (1, 0, 4), (2, 0, 4), (0, 1, 4), (1, 1, 8),
                                      (0, 2, 6), (1, 2, 8)])
def test_split_complex_class_counts(h, l, want):
    assert len(cl.classify(td.split_complex_normal(h, l, 1))) == want


def test_witnesses_are_braided_equivalences():
    d = td.make(Case.RC_ID, 1, -1)
    for c in cl.classify(d):
        for b, F in zip(c.members[1:], c.witnesses[1:]):
            assert cl.functor_violations(F, d) == []
            assert cl.is_braided_equivalence(F, c.representative, b)


def test_identity_functor():
    d = td.split_real(1, 1)
    b = solve_braidings(d)[0]
    F = cl.EquivFunctor(d.case, f2.identity_aut(d.dim))
    assert cl.is_braided_equivalence(F, b, b)


def test_epsilon_separates_split_real():
    d = td.split_real(1, 1)
    bs = solve_braidings(d)
    b = bs[0]
    other = next(x for x in bs if x.sigma == b.sigma and x.epsilon != b.epsilon)
    assert all(not cl.is_braided_equivalence(F, b, other) for F in cl.all_functors(d))


def test_conjugation_swaps_rc_id_roots():
    # sigma_3(1) = i and -i are related by xi = conjugation
    d = td.make(Case.RC_ID, 1, -1)
    bs = solve_braidings(d)
    b = next(x for x in bs if int(x.s3[0]) == d.n // 4)
    b2 = next(x for x in bs if int(x.s3[0]) == 3 * d.n // 4 and x.sigma == b.sigma)
    F = cl.EquivFunctor(d.case, f2.identity_aut(d.dim), xi=1)
    assert cl.is_braided_equivalence(F, b, b2)


def test_invariants_and_epsilon_constancy():
    for case in (Case.SPLIT_REAL, Case.REAL_QUATERNIONIC, Case.RC_CONJ):
        for c in cl.classify(td.make(case, 1, 1)):
            assert c.invariants["epsilon"] is not None
    merged = [c for c in cl.classify(td.make(Case.RC_ID, 1, 1)) if c.invariants["epsilon"] is None]
    assert len(merged) == 1


@pytest.mark.parametrize("case", REAL_CASES)
@pytest.mark.parametrize("n", [0, 1])
def test_pi0_formula_matches_count(case, n):
    for tau in (1, -1):
        for c in cl.classify(td.make(case, n, tau)):
            r = cl.pi0_aut_br(c.representative)
            assert r["formula"] == r["count"]


def test_pi0_examples():
    b = next(b for b in solve_braidings(td.split_real(1, 1)) if b.sigma and qforms.sign(b.sigma) == 1)
    assert cl.pi0_aut_br(b)["order"] == 2
    b = solve_braidings(td.real_quaternionic(1, 1))[0]
    assert qforms.sign(b.sigma) == -1 and cl.pi0_aut_br(b)["order"] == 12
    d = td.make(Case.RC_CONJ, 1, 1)
    b = next(b for b in solve_braidings(d) if cl.sign_of(b) == 1)
    assert cl.pi0_aut_br(b)["order"] == 8


def test_orbit_stabilizer_consistency():
    # class size x |functors fixing a member| = |functors| for split real
    d = td.split_real(1, 1)
    total = sum(1 for _ in cl.all_functors(d))
    for c in cl.classify(d):
        assert c.size * cl.pi0_order_by_count(c.representative) == total


def test_functor_composition():
    assert cl.functor_closure_check(td.make(Case.RC_CONJ, 1, 1))
    assert cl.functor_closure_check(td.make(Case.RC_ID, 1, -1))


def test_invalid_functors():
    d = td.make(Case.RC_CONJ, 1, 1)
    F = cl.EquivFunctor(d.case, f2.identity_aut(d.dim), lam=d.n // 4)
    assert "lambda is not fixed by conjugation" in cl.functor_violations(F, d)
    b = solve_braidings(d)[0]
    with pytest.raises(DomainError):
        cl.transport(F, b)
    G = cl.EquivFunctor(Case.SPLIT_REAL, f2.identity_aut(2))
    with pytest.raises(DomainError):
        cl.is_braided_equivalence(G, b, b)
