import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tybraid import f2, qforms
from tybraid.errors import DomainError
from tybraid.qforms import Field, QForm
from tybraid.scalars import CycScalar

N = 16


def brute_forms(chi, allowed):
    """Every function A -> mu_N with values in ``allowed`` and coboundary chi."""
    out = []
    for rest in itertools.product(allowed, repeat=chi.order - 1):
        q = QForm(chi, (0,) + rest, N)
        if q.is_admissible():
            out.append(q)
    return sorted(out, key=QForm.sort_key)


def test_enumeration_matches_brute_force():
    real = (0, N // 2)
    mu4 = (0, N // 4, N // 2, 3 * N // 4)
    assert qforms.enumerate_qforms(f2.standard_hyperbolic(1), Field.REAL, N) == \
        brute_forms(f2.standard_hyperbolic(1), real)
    assert qforms.enumerate_qforms(f2.ell(2), Field.COMPLEX, N) == brute_forms(f2.ell(2), mu4)
    assert qforms.enumerate_qforms(f2.ell(1), Field.REAL, N) == []


def test_counting_formulas_against_enumeration():
    for n in (1, 2):
        forms = qforms.enumerate_qforms(f2.standard_hyperbolic(n), Field.REAL, N)
        signs = [qforms.sign(q) for q in forms]
        assert signs.count(1) == qforms.qf_count_formula(n, 1)
        assert signs.count(-1) == qforms.qf_count_formula(n, -1)
    assert (qforms.qf_count_formula(1, 1), qforms.qf_count_formula(1, -1)) == (3, 1)


def test_stabilizer_formulas_against_enumeration():
    for n in (1, 2):
        chi = f2.standard_hyperbolic(n)
        for q in qforms.enumerate_qforms(chi, Field.REAL, N):
            stab = sum(1 for f in f2.iter_aut(chi) if qforms.act(f, q) == q)
            assert stab == qforms.stabilizer_formula(n, qforms.sign(q))
    assert [qforms.stabilizer_formula(1, s) for s in (1, -1)] == [2, 6]


def test_orbits_are_the_sign_classes():
    for n in (1, 2, 3):
        chi = f2.standard_hyperbolic(n)
        orbits = qforms.orbits_and_stabilizers(chi, qforms.enumerate_qforms(chi, Field.REAL, N))
        assert len(orbits) == 2
        for o in orbits:
            assert len({qforms.sign(q) for q in o.members}) == 1
            assert o.size * o.stabilizer_order == f2.aut_order_formula(n)
            for q in o.members:
                assert qforms.act(o.transporters[q.exps], o.representative) == q


def test_complex_form_classes_on_ell_squared():
    chi = f2.normal_form(1, 2)
    forms = qforms.enumerate_qforms(chi, Field.COMPLEX, N)
    assert len(qforms.orbits_and_stabilizers(chi, forms)) == 4
    chi0 = f2.ell(2)
    assert len(qforms.orbits_and_stabilizers(chi0, qforms.enumerate_qforms(chi0, Field.COMPLEX, N))) == 3


def test_ell2_table_and_swap():
    for k in (1, 2):
        for kappa, e1, e2 in itertools.product((1, -1), repeat=3):
            q = qforms.ell2_form(k, kappa, e1, e2, N)
            want = CycScalar.from_int(kappa << k, N) * (1 + CycScalar.unit(4, N) * e1) \
                * (1 + CycScalar.unit(4, N) * e2)
            assert qforms.gauss_sum(q) == want
        f = qforms.ell2_swap(k)
        assert f2.normal_form(k, 2).preserved_by(f)
    with pytest.raises(DomainError):
        qforms.ell2_form(0, -1, 1, 1, N)


def test_non_closed_sets_are_rejected():
    chi = f2.standard_hyperbolic(1)
    one = qforms.enumerate_qforms(chi, Field.REAL, N)[:1]
    with pytest.raises(DomainError):
        qforms.orbits_and_stabilizers(chi, one)


def test_sign_of_complex_sum_raises():
    q = qforms.extend_from_basis(f2.ell(1), [N // 4], Field.COMPLEX, N)
    with pytest.raises(DomainError):
        qforms.sign(q)


def test_extend_rejects_disallowed_values():
    with pytest.raises(DomainError):
        qforms.extend_from_basis(f2.standard_hyperbolic(1), [N // 4, 0], Field.REAL, N)


forms_h2 = qforms.enumerate_qforms(f2.standard_hyperbolic(2), Field.REAL, N)
auts_h2 = f2.enumerate_aut(f2.standard_hyperbolic(2))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(forms_h2), st.sampled_from(auts_h2))
def test_action_preserves_admissibility_and_gauss_sum(q, f):
    g = qforms.act(f, q)
    assert g.is_admissible()
    assert qforms.gauss_sum(g) == qforms.gauss_sum(q)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(forms_h2), st.sampled_from(qforms.enumerate_qforms(f2.ell(1), Field.COMPLEX, N)))
def test_gauss_sum_is_multiplicative(q1, q2):
    assert qforms.gauss_sum(qforms.direct_sum(q1, q2)) == qforms.gauss_sum(q1) * qforms.gauss_sum(q2)


@given(st.sampled_from(forms_h2))
def test_gauss_sum_magnitude(q):
    s = qforms.gauss_sum(q)
    assert s * s.conjugate() == 16
