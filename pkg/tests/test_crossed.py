import pytest

from tybraid import f2, qforms
from tybraid import crossed as cr
from tybraid import tydata as td
from tybraid.crossed import CrossedBraiding
from tybraid.errors import DomainError
from tybraid.tydata import Case


def cc(n, tau=1):
    return td.make(Case.COMPLEX_COMPLEX, n, tau)


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("tau", [1, -1])
def test_solver_outputs_satisfy_heptagons(n, tau):
    bs, reason = cr.solve_crossed(cc(n, tau))
    assert reason is None
    assert len(bs) == 2 * 4**n
    for b in bs:
        assert cr.check_heptagons(b) == []
        assert b.kappa_sign == qforms.sign(b.sigma) * tau
        assert b.gamma_m == b.kappa
        assert int(b.s3[0]) in (0, b.data.n // 2)


def test_construction_is_injective():
    bs, _ = cr.solve_crossed(cc(1))
    assert len({(b.sigma, b.epsilon) for b in bs}) == len(set(bs)) == len(bs)


@pytest.mark.parametrize("n,stage", [(0, "full"), (0, "staged"), (1, "staged")])
def test_oracle_agrees(n, stage):
    d = cc(n, -1)
    assert cr.brute_force_crossed(d, stage) == cr.solve_crossed(d)[0]


def test_obstructions():
    bs, reason = cr.solve_crossed(td.complex_complex(0, 1, chi=f2.ell(1)))
    assert bs == [] and "alternating" in reason
    bs, reason = cr.solve_crossed(td.split_real(1, 1))
    assert bs == [] and reason


def _flip(b, **kw):
    args = dict(kappa=b.kappa, gamma_a=b.gamma_a, gamma_m=b.gamma_m)
    args.update(kw)
    return CrossedBraiding(b.data, b.s0, b.s1, b.s2, b.s3, **args)


def test_broken_structures_are_detected():
    b = cr.solve_crossed(cc(1))[0][0]
    half = b.data.n // 2
    assert "CB-F8" in cr.check_heptagons(_flip(b, kappa=b.kappa + half))
    assert "CB-GR" in cr.check_heptagons(_flip(b, gamma_m=b.data.n // 4))
    ga = b.gamma_a.copy()
    ga[1] = half
    assert "CB-G1" in cr.check_heptagons(_flip(b, gamma_a=ga))


def test_classes_and_strong_equivalences():
    d = cc(1)
    classes = cr.classify_crossed(d)
    assert sorted(len(c["members"]) for c in classes) == [2, 6]
    for c in classes:
        for b, (f, eta) in zip(c["members"], c["witnesses"]):
            assert cr.transport_crossed(f, c["representative"], eta) == b
    comps = cr.strong_equivalence_components(d)
    assert all(len(comp) == 2 and comp[0].sigma == comp[1].sigma for comp in comps)
    assert len(cr.classify_crossed(cc(0))) == 1


def test_eta_is_unique():
    d = cc(1)
    bs, _ = cr.solve_crossed(d)
    for b in bs:
        for b2 in bs:
            for f in f2.iter_aut(d.chi):
                etas = [e for e in (0, d.n // 2) if cr.transport_crossed(f, b, e) == b2]
                assert len(etas) <= 1


def test_pi0_orders():
    for c in cr.classify_crossed(cc(1)):
        b = c["representative"]
        assert cr.crossed_pi0_by_formula(b) == cr.crossed_pi0_by_count(b)
    plus = next(c["representative"] for c in cr.classify_crossed(cc(1)) if c["sgn_sigma"] == 1)
    assert cr.crossed_pi0_by_formula(plus) == 8


def test_classify_rejects_unsupported_data():
    with pytest.raises(DomainError):
        cr.classify_crossed(td.split_real(1, 1))
