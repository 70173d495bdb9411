"""Braided equivalences between braidings, equivalence classes and pi_0 Aut_br."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import f2, qforms
from .braiding import Braiding, build, sign_of, solve_braidings
from .errors import DomainError
from .f2 import Automorphism
from .qforms import QForm
from .tydata import Case, TYData


@dataclass(frozen=True)
class EquivFunctor:
    """F(f), F(f, kappa), F(f, xi, lambda) or F(f, xi, kappa), by case.

    ``f`` is an automorphism of A, ``xi`` is 1 for complex conjugation,
    ``lam`` is the exponent of lambda in mu_N and ``kappa`` the sign of J_{m,m}.
    """

    case: Case
    f: Automorphism
    xi: int = 0
    lam: int = 0
    kappa: int = 1

    def compose(self, other: EquivFunctor) -> EquivFunctor:
        """self o other."""
        if self.case is not other.case:
            raise DomainError("functors belong to different cases")
        return EquivFunctor(self.case, f2.compose(self.f, other.f), self.xi ^ other.xi,
                            self.lam + other.lam, self.kappa * other.kappa)


def functor_violations(F: EquivFunctor, data: TYData) -> list[str]:
    out = []
    if F.case is not data.case:
        out.append("case mismatch")
    if len(F.f) != data.dim or f2.rank(F.f) != data.dim or not data.chi.preserved_by(F.f):
        out.append("f does not preserve chi")
    n = data.n
    if data.case.is_real_complex:
        w = data.group.w
        if f2.apply(F.f, w) != w:
            out.append("f does not fix w")
        if any(data.degree(f2.apply(F.f, 1 << i)) != data.degree(1 << i) for i in range(data.dim)):
            out.append("f does not preserve the grading")
        if (4 * F.lam) % n:
            out.append("lambda^4 != 1")
        if data.case is Case.RC_CONJ and (2 * F.lam) % n:
            out.append("lambda is not fixed by conjugation")
    else:
        if F.lam % n:
            out.append("lambda only exists for real/complex data")
        if F.xi and data.case in (Case.SPLIT_REAL, Case.REAL_QUATERNIONIC, Case.SPLIT_COMPLEX):
            out.append("xi must be trivial for linear functors")
    if F.kappa not in (1, -1):
        out.append("kappa must be +-1")
    if F.kappa == -1 and data.case not in (Case.REAL_QUATERNIONIC, Case.COMPLEX_COMPLEX):
        out.append("kappa only exists for quaternionic and complex/complex data")
    return out


def _permute(b: Braiding, f: Automorphism) -> Braiding:
    """Tables of the image braiding: sigma_i'(f a) = sigma_i(a)."""
    img = np.asarray(f2.image_table(f))
    s0 = np.empty_like(b.s0)
    s0[img[:, None], img[None, :]] = b.s0
    out = []
    for t in (b.s1, b.s2, b.s3):
        new = np.empty_like(t)
        new[img] = t
        out.append(new)
    sigma = qforms.act(f, b.sigma) if b.sigma is not None else None
    return Braiding(b.data, s0, *out, sigma=sigma, epsilon=b.epsilon)


def transport(F: EquivFunctor, b: Braiding) -> Braiding:
    """The braiding F carries b to."""
    bad = functor_violations(F, b.data)
    if bad:
        raise DomainError("invalid functor: " + "; ".join(bad))
    data = b.data
    if not data.case.is_real_complex:
        return _permute(b, F.f)
    n = data.n
    moved = qforms.act(F.f, b.sigma)
    twist = (2 * F.lam) % n
    exps = tuple((e + twist * data.degree(x)) % n for x, e in enumerate(moved.exps))
    sigma = QForm(moved.chi, exps, n)
    s = int(b.s3[0])
    s_new = -s if F.xi else s
    eps = _epsilon_of(data, sigma, s_new)
    return build(data, sigma, s_new, eps)


def _epsilon_of(data: TYData, sigma: QForm, s_exp: int) -> int:
    from .braiding import roots_with_signs, sigma3_square

    for eps, k in roots_with_signs(sigma3_square(data, sigma)):
        if k == s_exp % data.n:
            return eps
    raise DomainError("sigma_3(1) is not a root of the forced square")


def is_braided_equivalence(F: EquivFunctor, b: Braiding, b2: Braiding) -> bool:
    if b.data != b2.data:
        raise DomainError("braidings live on different data")
    if F.case is not b.data.case:
        raise DomainError("functor case does not match the data")
    if functor_violations(F, b.data):
        return False
    return transport(F, b) == b2


# functor families

def extra_factors(data: TYData) -> list[dict]:
    """The (xi, lambda, kappa) part of the representative functors."""
    n = data.n
    case = data.case
    if case is Case.REAL_QUATERNIONIC:
        return [{"kappa": k} for k in (1, -1)]
    if case is Case.RC_ID:
        return [{"xi": x, "lam": lam} for x in (0, 1) for lam in (0, n // 4)]
    if case is Case.RC_CONJ:
        return [{"xi": x, "lam": lam} for x in (0, 1) for lam in (0, n // 2)]
    if case is Case.COMPLEX_COMPLEX:
        return [{"xi": x, "kappa": k} for x in (0, 1) for k in (1, -1)]
    return [{}]


def extend_aut(data: TYData, f0: Automorphism) -> Automorphism:
    """Extend an automorphism of A_0 (in A_0 coordinates) to A, fixing w."""
    if not data.case.is_real_complex:
        return f0
    a0 = data.a0_basis
    w = data.group.w
    basis = a0 + [w]
    img = [f2.sum_vectors(a0, v) for v in f0] + [w]
    coords = [f2.solve_coords(basis, 1 << i) for i in range(data.dim)]
    return tuple(f2.sum_vectors(img, c) for c in coords)


def restricted_form(b: Braiding) -> QForm:
    if b.data.case.is_real_complex:
        return b.sigma.restrict(b.data.a0_basis)
    return b.sigma


@dataclass
class EquivalenceClass:
    representative: Braiding
    members: list[Braiding]
    invariants: dict
    witnesses: list = field(default_factory=list, repr=False)

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {"size": self.size, "invariants": self.invariants,
                "representative": self.representative.to_json()}


def _constant(values):
    vals = set(values)
    return vals.pop() if len(vals) == 1 else None


def class_invariants(data: TYData, members: list[Braiding]) -> dict:
    s31 = _constant(int(b.s3[0]) for b in members)
    out = {
        "sgn_sigma": _constant(sign_of(b) for b in members),
        "epsilon": _constant(b.epsilon for b in members),
        "sigma_w": None,
        "sigma3_1": None if s31 is None else f"zeta{data.n}^{s31}",
    }
    if data.case.is_real_complex:
        w = data.group.w
        sw = _constant(int(b.s1[w]) for b in members)
        out["sigma_w"] = None if sw is None else (1 if sw == 0 else -1)
    return out


class Classifier:
    """Orbit data of sigma|A_0 plus the small functor factors, for one instance."""

    def __init__(self, data: TYData, braidings: list[Braiding] | None = None):
        self.data = data
        self.braidings = solve_braidings(data) if braidings is None else braidings
        forms = {restricted_form(b) for b in self.braidings}
        self.orbits = qforms.orbits_and_stabilizers(data.a0_chi, forms) if forms else []
        self._orbit_of = {}
        for o in self.orbits:
            for q in o.members:
                self._orbit_of[q.exps] = o

    def transporter(self, q1: QForm, q2: QForm) -> Automorphism | None:
        """An automorphism of A carrying q1 to q2 on A_0, or None."""
        o1 = self._orbit_of.get(q1.exps)
        o2 = self._orbit_of.get(q2.exps)
        if o1 is None or o1 is not o2:
            return None
        t1 = o1.transporters[q1.exps]
        t2 = o1.transporters[q2.exps]
        return extend_aut(self.data, f2.compose(t2, f2.inverse(t1)))

    def witness(self, b: Braiding, b2: Braiding) -> EquivFunctor | None:
        f = self.transporter(restricted_form(b), restricted_form(b2))
        if f is None:
            return None
        for extra in extra_factors(self.data):
            F = EquivFunctor(self.data.case, f, **extra)
            if is_braided_equivalence(F, b, b2):
                return F
        return None

    def classes(self) -> list[EquivalenceClass]:
        remaining = list(self.braidings)
        out = []
        while remaining:
            rep = remaining[0]
            members, wits, rest = [rep], [None], []
            for b2 in remaining[1:]:
                F = self.witness(rep, b2)
                if F is None:
                    rest.append(b2)
                else:
                    members.append(b2)
                    wits.append(F)
            out.append(EquivalenceClass(rep, members, class_invariants(self.data, members), wits))
            remaining = rest
        return out

    def per_orbit(self) -> list[dict]:
        """For each orbit of sigma|A_0: braidings and classes lying over it."""
        classes = self.classes()
        rows = []
        for o in self.orbits:
            keys = {q.exps for q in o.members}
            over = [b for b in self.braidings if restricted_form(b).exps in keys]
            cls = [c for c in classes if restricted_form(c.representative).exps in keys]
            rows.append({"orbit_size": o.size, "stabilizer": o.stabilizer_order,
                         "braidings": len(over), "classes": len(cls)})
        return rows


def classify(data: TYData) -> list[EquivalenceClass]:
    return Classifier(data).classes()


def all_functors(data: TYData):
    """Every representative functor (Aut(A_0) x extra factors); small instances only."""
    for f0 in f2.iter_aut(data.a0_chi):
        f = extend_aut(data, f0)
        for extra in extra_factors(data):
            yield EquivFunctor(data.case, f, **extra)


def classify_exhaustive(data: TYData) -> list[list[Braiding]]:
    """Partition by trying every representative functor (union-find)."""
    bs = solve_braidings(data)
    index = {b: i for i, b in enumerate(bs)}
    parent = list(range(len(bs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for F in all_functors(data):
        for b in bs:
            j = index.get(transport(F, b))
            if j is None:
                raise DomainError("a functor carried a braiding outside the solution set")
            parent[find(index[b])] = find(j)
    groups: dict[int, list[Braiding]] = {}
    for b in bs:
        groups.setdefault(find(index[b]), []).append(b)
    return list(groups.values())


def pi0_order_by_count(b: Braiding) -> int:
    """Representative functors F with F(b) = b."""
    data = b.data
    q = restricted_form(b)
    count = 0
    extras = extra_factors(data)
    for f0 in f2.iter_aut(data.a0_chi):
        if qforms.act(f0, q) != q:
            continue
        f = extend_aut(data, f0)
        for extra in extras:
            if transport(EquivFunctor(data.case, f, **extra), b) == b:
                count += 1
    return count


def pi0_order_by_formula(b: Braiding) -> int:
    """|H_{sgn sigma}| times the functor factor fixing b."""
    data = b.data
    case = data.case
    if case is Case.SPLIT_COMPLEX:
        h_blocks, l_blocks = _sc_type(data)
        if l_blocks == 0:
            return qforms.stabilizer_formula(h_blocks, sign_of(b))
        if l_blocks == 1:
            sub = b.sigma.restrict([1 << i for i in range(2 * h_blocks)])
            return qforms.stabilizer_formula(h_blocks, qforms.sign(sub))
        # l^2 type: the stabilizer of the form itself, by orbit-stabilizer
        q = b.sigma
        orbit = next(o for o in qforms.orbits_and_stabilizers(
            data.chi, qforms.enumerate_qforms(data.chi, qforms.Field.COMPLEX, data.n)) if q in o.members)
        return orbit.stabilizer_order
    h_blocks = data.a0_chi.dim // 2
    base = qforms.stabilizer_formula(h_blocks, sign_of(b))
    if case is Case.SPLIT_REAL:
        return base
    if case is Case.REAL_QUATERNIONIC:
        return 2 * base
    if case is Case.RC_ID:
        return 2 * base if int(b.s3[0]) % (data.n // 2) == 0 else base
    return 4 * base


def _sc_type(data: TYData) -> tuple[int, int]:
    _, h, l = f2.wall_normalize(data.chi)
    if l >= 3:
        raise DomainError("wall_normalize returned an unreduced form")
    if data.chi != f2.normal_form(h, l):
        raise DomainError("split complex pi_0 formulas need chi in normal form")
    return h, l


def pi0_aut_br(b: Braiding, count: bool = True) -> dict:
    formula = pi0_order_by_formula(b)
    out = {"formula": formula}
    if count:
        counted = pi0_order_by_count(b)
        out["count"] = counted
        if counted != formula:
            raise AssertionError(f"pi_0 order mismatch: formula {formula}, count {counted}")
    out["order"] = formula
    return out


def functor_closure_check(data: TYData, sample: int = 50) -> bool:
    """Composite functors act as the composite: (F G)(b) = F(G(b)) on a sample."""
    fs = list(itertools.islice(all_functors(data), sample))
    bs = solve_braidings(data)
    for F, G in itertools.product(fs[:8], fs[:8]):
        for b in bs[:4]:
            if transport(F.compose(G), b) != transport(F, transport(G, b)):
                return False
    return True
