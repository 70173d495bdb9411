"""Z/2-crossed braidings on complex/complex data."""

from __future__ import annotations

import numpy as np

from . import f2, qforms
from . import hexagons as hx
from . import oracle
from .braiding import Braiding, roots_with_signs
from .errors import DomainError
from .f2 import Automorphism
from .oracle import Stage, Var, mu
from .qforms import Field, QForm
from .scalars import CycScalar
from .tydata import Case, TYData, validate


class CrossedBraiding(Braiding):
    """Braiding tables plus kappa, gamma_a and gamma_m (exponents of zeta_N)."""

    __slots__ = ("kappa", "gamma_a", "gamma_m")

    def __init__(self, data: TYData, s0, s1, s2, s3, kappa: int, gamma_a, gamma_m: int,
                 sigma: QForm | None = None, epsilon: int | None = None):
        super().__init__(data, s0, s1, s2, s3, sigma, epsilon)
        n = data.n
        self.kappa = int(kappa) % n
        ga = np.asarray(gamma_a, dtype=np.int64) % n
        ga.setflags(write=False)
        self.gamma_a = ga
        self.gamma_m = int(gamma_m) % n

    @property
    def key(self) -> bytes:
        extra = np.array([self.kappa, self.gamma_m], dtype=np.int64)
        return super().key + self.gamma_a.tobytes() + extra.tobytes()

    def sort_key(self):
        return (self.kappa, tuple(self.s1), tuple(self.s3), self.gamma_m)

    @property
    def kappa_sign(self) -> int:
        return 1 if self.kappa == 0 else -1

    def view(self) -> hx.View:
        return hx.View(self.data, self.s0, self.s1, self.s2, self.s3,
                       self.gamma_a, self.gamma_m, self.kappa)

    def __repr__(self) -> str:
        return (f"CrossedBraiding(dim={self.data.dim}, s1={list(self.s1)}, "
                f"s3(1)=zeta^{int(self.s3[0])}, kappa={self.kappa_sign}, eps={self.epsilon})")

    def to_json(self) -> dict:
        return {
            "data": self.data.to_json(),
            "sigma1_exponents": [int(e) for e in self.s1],
            "epsilon": self.epsilon,
            "sigma3_1": self.sigma3_1.to_json(),
            "kappa": self.kappa_sign,
            "gamma_m": CycScalar.unit(self.gamma_m, self.data.n).to_json(),
            "sgn_sigma": qforms.sign(self.sigma) if self.sigma is not None else None,
        }


def check_heptagons(b: CrossedBraiding) -> list[str]:
    """IDs of violated crossed equation families, in family order."""
    v = b.view()
    bad = []
    for fam in hx.crossed_families():
        if fam.id in bad:
            continue
        if not hx.evaluate_family(v, fam).all():
            bad.append(fam.id)
    return bad


def crossed_obstruction(data: TYData) -> str | None:
    """Why no crossed braiding exists, or None."""
    if data.case is not Case.COMPLEX_COMPLEX:
        return "crossed braidings are only modelled on complex/complex data"
    bad = validate(data)
    if bad:
        return "invalid data: " + "; ".join(bad)
    if not data.chi.is_alternating:
        return "chi is not alternating, so it is not a sum of hyperbolic planes"
    return None


def build_crossed(data: TYData, sigma: QForm, s_exp: int, epsilon: int | None = None) -> CrossedBraiding:
    """Reduced solution: s0 = chi, s1 = s2 = sigma, s3(a) = s sigma(a) chi(a, a),
    kappa = gamma_m = sgn(tau sum sigma), gamma_a = 1."""
    n = data.n
    x = hx.chi_table(data)
    s = np.asarray(sigma.exps, dtype=np.int64)
    total = data.tau * qforms.gauss_sum(sigma)
    k = total.unit_exponent()
    if k is None or k % (n // 2):
        raise DomainError("tau times the Gauss sum is not +-1")
    return CrossedBraiding(data, x, s, s, s_exp + s + np.diagonal(x), k,
                           np.zeros(data.order, dtype=np.int64), k, sigma, epsilon)


def solve_crossed(data: TYData) -> tuple[list[CrossedBraiding], str | None]:
    """All crossed braidings from the reduced system, and a reason when empty."""
    reason = crossed_obstruction(data)
    if reason:
        return [], reason
    n = data.n
    out = []
    for sigma in qforms.enumerate_qforms(data.chi, Field.REAL, n):
        # sigma_3(1)^2 = kappa tau sum sigma = 1
        for eps, k in roots_with_signs(CycScalar.one(n)):
            if k % (n // 2):
                continue
            out.append(build_crossed(data, sigma, k, eps))
    return sorted(out, key=CrossedBraiding.sort_key), None


# oracle

def _crossed_extra(n: int) -> list[Var]:
    return [Var(("kappa",), mu(2, n)), Var(("gm",), mu(4, n))]


def _crossed_deps(base):
    def deps(entry: tuple) -> set:
        if entry[0] in ("gm", "kappa"):
            return {entry}
        if entry[0] == "ga":
            return {("s1", entry[1])}
        return base(entry)

    return deps


def brute_force_crossed(data: TYData, stage: Stage | str = Stage.STAGED) -> list[CrossedBraiding]:
    """Search over coefficients, kappa and gamma_m against every crossed family.

    staged: s0 = chi^T from CB-F3, s3 = s s1 chi(a,a) from CB-B4 at b = a,
    s2 = s3 chi(a,a) / s from CB-F6 at b = a, gamma_a from CB-B7 at b = 1.
    """
    stage = Stage(stage)
    oracle.check_capacity(data, stage)
    if data.case is not Case.COMPLEX_COMPLEX:
        raise DomainError("crossed search needs complex/complex data")
    fams = hx.crossed_families()
    n = data.n
    x = hx.chi_table(data)
    diag = np.diagonal(x)
    extra = _crossed_extra(n)
    if stage is Stage.FULL:
        variables = oracle.full_variables(data, extra)
        variables += [Var(("ga", a), mu(2, n)) for a in range(data.order)]
        derive = oracle.full_derive(data)
        deps = _crossed_deps(lambda e: {e})
    else:
        variables = oracle.staged_variables(data, extra)
        base = oracle.staged_derive(data)

        def derive(values: dict) -> dict:
            t = base(values)
            t["ga"] = t["s0"][0] - 2 * t["s2"] - diag
            t["gm"] = values.get(("gm",), 0)
            t["kappa"] = values.get(("kappa",), 0)
            return t

        deps = _crossed_deps(oracle.staged_deps(data))
    found = oracle.search(data, fams, variables, derive, deps)
    out = []
    for t in found:
        b = CrossedBraiding(data, t["s0"], t["s1"], t["s2"], t["s3"], t["kappa"], t["ga"], t["gm"])
        if not check_heptagons(b):
            out.append(b)
    return sorted(set(out), key=CrossedBraiding.sort_key)


# equivalence

def transport_crossed(f: Automorphism, b: CrossedBraiding, eta: int = 0) -> CrossedBraiding:
    """Image of b under F(f, xi, kappa) with eta_m = zeta^eta.

    The coefficients are real and kappa, gamma are signs, so xi and the
    functor's kappa act trivially; eta_m rescales sigma_3.
    """
    data = b.data
    if len(f) != data.dim or f2.rank(f) != data.dim or not data.chi.preserved_by(f):
        raise DomainError("f does not preserve chi")
    img = np.asarray(f2.image_table(f))
    s0 = np.empty_like(b.s0)
    s0[img[:, None], img[None, :]] = b.s0
    tabs = []
    for t in (b.s1, b.s2, b.s3, b.gamma_a):
        new = np.empty_like(t)
        new[img] = t
        tabs.append(new)
    s1, s2, s3, ga = tabs
    sigma = qforms.act(f, b.sigma) if b.sigma is not None else None
    eps = b.epsilon if eta % data.n == 0 or b.epsilon is None else -b.epsilon
    return CrossedBraiding(data, s0, s1, s2, s3 + eta, b.kappa, ga, b.gamma_m, sigma, eps)


def crossed_witness(b: CrossedBraiding, b2: CrossedBraiding, strong: bool = False):
    """(f, eta) with transport_crossed(f, b, eta) == b2, or None.

    A strong equivalence is one with f = id.
    """
    data = b.data
    auts = [f2.identity_aut(data.dim)] if strong else f2.iter_aut(data.chi)
    for f in auts:
        for eta in (0, data.n // 2):
            if transport_crossed(f, b, eta) == b2:
                return f, eta
    return None


def classify_crossed(data: TYData) -> list[dict]:
    """Classes of crossed braidings with one witness per member."""
    bs, reason = solve_crossed(data)
    if reason:
        raise DomainError(reason)
    forms = {b.sigma for b in bs}
    orbits = qforms.orbits_and_stabilizers(data.chi, forms) if forms else []
    orbit_of = {q.exps: o for o in orbits for q in o.members}
    remaining = list(bs)
    out = []
    while remaining:
        rep = remaining[0]
        o = orbit_of[rep.sigma.exps]
        t_rep_inv = f2.inverse(o.transporters[rep.sigma.exps])
        members, wits, rest = [rep], [(f2.identity_aut(data.dim), 0)], []
        for b2 in remaining[1:]:
            wit = None
            if b2.sigma.exps in o.transporters:
                f = f2.compose(o.transporters[b2.sigma.exps], t_rep_inv)
                for eta in (0, data.n // 2):
                    if transport_crossed(f, rep, eta) == b2:
                        wit = (f, eta)
                        break
            if wit is None:
                rest.append(b2)
            else:
                members.append(b2)
                wits.append(wit)
        out.append({"representative": rep, "members": members, "witnesses": wits,
                    "sgn_sigma": qforms.sign(rep.sigma)})
        remaining = rest
    return out


def strong_equivalence_components(data: TYData) -> list[list[CrossedBraiding]]:
    """Connected components of the strong-equivalence graph."""
    bs, reason = solve_crossed(data)
    if reason:
        raise DomainError(reason)
    comps: list[list[CrossedBraiding]] = []
    for b in bs:
        for comp in comps:
            if crossed_witness(comp[0], b, strong=True) is not None:
                comp.append(b)
                break
        else:
            comps.append([b])
    return comps


def crossed_pi0_by_count(b: CrossedBraiding) -> int:
    """Functors F(f, xi, kappa) fixing b for some eta_m."""
    data = b.data
    fixing = sum(1 for f in f2.iter_aut(data.chi)
                 if any(transport_crossed(f, b, eta) == b for eta in (0, data.n // 2)))
    return 4 * fixing


def crossed_pi0_by_formula(b: CrossedBraiding) -> int:
    """|H_{sgn sigma}| times |K_4|."""
    return 4 * qforms.stabilizer_formula(b.data.dim // 2, qforms.sign(b.sigma))
