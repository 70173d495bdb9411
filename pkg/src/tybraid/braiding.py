"""Braidings on TY data: construction, hexagon checks, twists, Mueger center."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import hexagons as hx
from . import qforms
from .errors import DomainError, ModulusTooSmall
from .qforms import Field, QForm
from .scalars import CycScalar
from .tydata import Case, TYData, validate


def _frozen(arr) -> np.ndarray:
    a = np.asarray(arr, dtype=np.int64)
    a.setflags(write=False)
    return a


class Braiding:
    """Coefficient tables sigma_0..sigma_3 as exponents of zeta_N."""

    __slots__ = ("data", "s0", "s1", "s2", "s3", "sigma", "epsilon", "__dict__")

    def __init__(self, data: TYData, s0, s1, s2, s3, sigma: QForm | None = None,
                 epsilon: int | None = None):
        n = data.n
        self.data = data
        self.s0 = _frozen(np.asarray(s0) % n)
        self.s1 = _frozen(np.asarray(s1) % n)
        self.s2 = _frozen(np.asarray(s2) % n)
        self.s3 = _frozen(np.asarray(s3) % n)
        self.sigma = sigma
        self.epsilon = epsilon

    @cached_property
    def key(self) -> bytes:
        return b"".join(a.tobytes() for a in (self.s0, self.s1, self.s2, self.s3))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Braiding):
            return NotImplemented
        return self.data == other.data and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def sort_key(self):
        return (tuple(self.s1), tuple(self.s3))

    @property
    def sigma3_1(self) -> CycScalar:
        return CycScalar.unit(int(self.s3[0]), self.data.n)

    def view(self) -> hx.View:
        return hx.View(self.data, self.s0, self.s1, self.s2, self.s3)

    def __repr__(self) -> str:
        return (f"Braiding({self.data.case.value}, dim={self.data.dim}, "
                f"s1={list(self.s1)}, s3(1)=zeta^{int(self.s3[0])}, eps={self.epsilon})")

    def to_json(self) -> dict:
        inv = double_braiding_invariants(self)
        return {
            "data": self.data.to_json(),
            "sigma1_exponents": [int(e) for e in self.s1],
            "epsilon": self.epsilon,
            "sigma3_1": self.sigma3_1.to_json(),
            "invariants": {
                "sgn_sigma": sign_of(self),
                "symmetric": inv.is_symmetric,
                "nondegenerate": inv.is_nondegenerate,
                "transparent": inv.transparent_simples,
            },
        }


def sign_of(b: Braiding) -> int | None:
    """sgn of sigma (of its restriction to A_0 for real/complex data), or None if complex."""
    if b.sigma is None:
        return None
    q = b.sigma
    if b.data.case.is_real_complex:
        q = q.restrict(b.data.a0_basis)
    s = qforms.gauss_sum(q)
    if not s.is_real() or s.is_zero():
        return None
    return qforms.sign(q)


# reduced system

def sigma3_square(data: TYData, sigma: QForm) -> CycScalar:
    """The value sigma_3(1)^2 is forced to take."""
    n = data.n
    if data.case.is_real_complex:
        exps = [e for x, e in enumerate(sigma.exps) if data.degree(x) == data.g]
        return data.sum_scale * CycScalar.unit_sum(exps, n)
    return data.sum_scale * qforms.gauss_sum(sigma)


def roots_with_signs(u: CycScalar) -> list[tuple[int, int]]:
    """(epsilon, exponent) for both square roots of the unit u.

    epsilon = +1 marks the root zeta^k with the smaller k in [0, N).
    """
    k = u.unit_exponent()
    if k is None:
        raise DomainError(f"sigma_3(1)^2 = {u!r} is not a root of unity")
    roots = u.sqrt_candidates()
    if not roots:
        raise ModulusTooSmall(f"square roots of zeta^{k} need a larger modulus than N={u.n}")
    exps = sorted(r.unit_exponent() for r in roots)
    return [(1, exps[0]), (-1, exps[1])]


def build(data: TYData, sigma: QForm, s_exp: int, epsilon: int | None = None) -> Braiding:
    """The braiding of the reduced system with sigma_1 = sigma and sigma_3(1) = zeta^s_exp."""
    n = data.n
    x = hx.chi_table(data)
    s = np.asarray(sigma.exps, dtype=np.int64)
    if data.case.is_real_complex:
        d = hx.degree_table(data)
        s2 = s + 2 * s_exp * d
        s3 = s_exp + s
    else:
        s2 = s
        s3 = s_exp + s + np.diagonal(x)
    return Braiding(data, x, s, s2, s3, sigma, epsilon)


def _candidate_forms(data: TYData) -> list[QForm]:
    fld = Field.COMPLEX if data.case in (Case.SPLIT_COMPLEX, Case.COMPLEX_COMPLEX) else Field.REAL
    return qforms.enumerate_qforms(data.chi, fld, data.n)


def _real_exp(e: int, n: int) -> bool:
    return e % (n // 2) == 0


def solve_braidings(data: TYData) -> list[Braiding]:
    """All braidings, from the reduced system; sorted deterministically."""
    bad = validate(data)
    if bad:
        raise DomainError("invalid data: " + "; ".join(bad))
    n = data.n
    out = []
    for sigma in _candidate_forms(data):
        for eps, k in roots_with_signs(sigma3_square(data, sigma)):
            real_needed = data.case in (Case.SPLIT_REAL, Case.REAL_QUATERNIONIC, Case.RC_CONJ)
            if real_needed and not _real_exp(k, n):
                continue
            out.append(build(data, sigma, k, eps))
    if data.case is Case.COMPLEX_COMPLEX:
        # the split candidates cannot satisfy naturality in End(m)
        out = [b for b in out if not check_hexagons(b)]
    return sorted(out, key=Braiding.sort_key)


def check_hexagons(b: Braiding) -> list[str]:
    """IDs of violated equation families, in family order."""
    v = b.view()
    bad = []
    for fam in hx.families_for(b.data):
        if fam.id in bad:
            continue
        if not hx.evaluate_family(v, fam).all():
            bad.append(fam.id)
    return bad


def hexagon_violations(b: Braiding, limit: int = 5) -> list[dict]:
    """Up to ``limit`` failing instances per family with exact sides."""
    v = b.view()
    out = []
    for fam in hx.families_for(b.data):
        ok = hx.evaluate_family(v, fam)
        for idx in np.argwhere(~ok)[:limit]:
            idx = tuple(int(i) for i in idx)
            lhs, rhs = hx.instance_sides(v, fam, idx)
            out.append({"eq": fam.id, "at": list(idx), "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return out


# twists

@dataclass(frozen=True)
class Twist:
    theta: tuple[int, ...]  # exponents of theta_a
    theta_m: int
    rho: int
    n: int

    def value(self, a) -> CycScalar:
        if a == "m":
            return CycScalar.unit(self.theta_m, self.n)
        return CycScalar.unit(self.theta[a], self.n)


def twist_relations(b: Braiding, t: Twist) -> dict[str, bool]:
    """The defining relations of a twist, each evaluated exactly."""
    n = b.data.n
    m = b.data.order
    ar = np.arange(m)
    th = np.asarray(t.theta)
    mult = bool(((th[ar[:, None] ^ ar[None, :]] - th[:, None] - th[None, :]) % n == 0).all())
    square = bool(((th - 2 * b.s1) % n == 0).all())
    ribbon = bool(((th - 2 * t.theta_m - 2 * b.s3) % n == 0).all())
    return {"multiplicative": mult, "theta_a=sigma(a)^2": square,
            "theta_a=theta_m^2 sigma3(a)^2": ribbon}


def twists(b: Braiding) -> list[Twist]:
    """theta_a = sigma_1(a)^2 and theta_m = rho sigma_3(1)^{-1}, rho = +-1."""
    n = b.data.n
    theta = tuple(int(e) for e in (2 * b.s1) % n)
    out = []
    for rho in (1, -1):
        tm = (-int(b.s3[0]) + (0 if rho == 1 else n // 2)) % n
        t = Twist(theta, tm, rho, n)
        if all(twist_relations(b, t).values()):
            out.append(t)
    return out


def all_twists_search(b: Braiding) -> list[Twist]:
    """Every (theta_a, theta_m) over roots of unity meeting the relations, by search.

    theta_a is forced to sigma_1(a)^2 by the relations, so only theta_m is searched.
    """
    n = b.data.n
    theta = tuple(int(e) for e in (2 * b.s1) % n)
    out = []
    for tm in range(n):
        rho = 1 if (tm + int(b.s3[0])) % n == 0 else -1
        t = Twist(theta, tm, rho, n)
        if all(twist_relations(b, t).values()):
            out.append(t)
    return out


# double braiding

@dataclass(frozen=True)
class DoubleBraiding:
    transparent_simples: list
    is_symmetric: bool
    is_nondegenerate: bool


def double_braiding_invariants(b: Braiding) -> DoubleBraiding:
    """Transparency from the full-twist scalars of each pair of simples.

    (a, b): s0(a,b) s0(b,a); (a, m): s1(a) s2(a); (m, m): s3(x)^2 on every summand x.
    """
    n = b.data.n
    ab = (b.s0 + b.s0.T) % n
    am = (b.s1 + b.s2) % n
    mm = (2 * b.s3) % n
    transparent = []
    for a in range(b.data.order):
        if not ab[a].any() and am[a] == 0:
            transparent.append(a)
    m_ok = not am.any() and not mm.any()
    if m_ok:
        transparent.append("m")
    symmetric = m_ok and len(transparent) == b.data.order + 1
    nondegenerate = transparent == [0]
    return DoubleBraiding(transparent, symmetric, nondegenerate)
