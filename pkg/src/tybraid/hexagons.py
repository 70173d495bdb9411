"""Unreduced hexagon and heptagon equation families.

Every coefficient is a root of unity, so a family is written once as a
function of exponent-valued accessors.  The same function runs on numpy
index grids (to check every instance at once) and on plain ints (the
oracle evaluates single instances while searching).

A product family returns ``(lhs, rhs)`` exponents.  A summed family takes
an extra summation index and returns ``(lhs, terms, mask)``: the equation
is ``zeta^lhs = scale * sum_z zeta^terms`` over the z with ``mask`` set.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .scalars import CycScalar
from .tydata import Case, TYData


@dataclass(frozen=True)
class Family:
    id: str
    arity: int
    fn: Callable
    text: str
    summed: bool = False


class View:
    """Exponent tables of a (possibly partial) coefficient assignment."""

    def __init__(self, data: TYData, s0, s1, s2, s3, gamma_a=None, gamma_m: int = 0,
                 kappa: int = 0):
        self.data = data
        self.N = data.n
        self.half = data.n // 2
        self.g = data.g
        self.S0, self.S1, self.S2, self.S3 = s0, s1, s2, s3
        self.GA = gamma_a
        self.GM = gamma_m
        self.K = kappa
        self.X = chi_table(data)
        self.D = degree_table(data)

    def s0(self, a, b):
        return self.S0[a, b]

    def s1(self, a):
        return self.S1[a]

    def s2(self, a):
        return self.S2[a]

    def s3(self, a):
        return self.S3[a]

    def ga(self, a):
        return self.GA[a]

    def gm(self):
        return self.GM

    def kappa(self):
        return self.K

    def chi(self, a, b):
        return self.X[a, b]

    def deg(self, a):
        return self.D[a]

    @staticmethod
    def conj(e, flag):
        """Complex conjugate of zeta^e when flag is 1."""
        return e * (1 - 2 * flag)


@lru_cache(maxsize=64)
def _chi_table(data: TYData) -> np.ndarray:
    m = data.order
    half = data.n // 2
    ar = np.arange(m)
    cols = np.array(data.chi._images if data.dim <= 12 else
                    [_image(data.chi, y) for y in range(m)], dtype=np.int64)
    # pair(x, y) = parity(x & M y)
    v = ar[:, None] & cols[None, :]
    par = np.zeros_like(v)
    while v.any():
        par ^= v & 1
        v >>= 1
    return par * half


def _image(chi, y):
    v = 0
    for j in range(chi.dim):
        if (y >> j) & 1:
            v ^= chi._columns[j]
    return v


def chi_table(data: TYData) -> np.ndarray:
    return _chi_table(data)


@lru_cache(maxsize=64)
def _degree_table(data: TYData) -> np.ndarray:
    ar = np.arange(data.order)
    v = ar & data.group.grading
    par = np.zeros_like(v)
    while v.any():
        par ^= v & 1
        v >>= 1
    return par


def degree_table(data: TYData) -> np.ndarray:
    return _degree_table(data)


# split hexagons, indices in the order they are written

def _h1(v, c, a, b):
    return v.s0(c, a ^ b), v.s0(c, a) + v.s0(c, b)


def _h2(v, a, b):
    return v.s2(a ^ b), v.s2(a) + v.chi(a, b) + v.s2(b)


def _h3(v, a, b):
    return v.s0(b, a) + v.s1(b), v.s1(b) + v.chi(a, b)


def _h4(v, a, b):
    return v.s1(b) + v.s0(b, a), v.chi(b, a) + v.s1(b)


def _h5(v, a, b):
    return v.chi(a, b) + v.s3(b), v.s2(a) + v.s3(a ^ b)


def _h6(v, a, b):
    return v.s3(b) + v.chi(a, b), v.s3(b ^ a) + v.s2(a)


def _h7(v, a, b):
    return v.s0(a, b ^ a), v.s1(a) + v.chi(a, b) + v.s1(a)


def _h8(v, a, b, c):
    return (v.s3(a) + v.chi(a, b) + v.s3(b),
            v.chi(a, c) + v.s2(c) + v.chi(c, b), None)


def _h9(v, a, b, c):
    return v.s0(c, a) + v.s0(b, a), v.s0(b ^ c, a)


def _h10(v, a, b):
    return v.chi(b, a) + v.s2(a), v.s2(a) + v.s0(b, a)


def _h11(v, a, b):
    return v.s0(b, a) + v.s2(a), v.s2(a) + v.chi(a, b)


def _h12(v, a, b):
    return v.s1(b) + v.chi(a, b) + v.s1(a), v.s1(a ^ b)


def _h13(v, a, b):
    return v.s0(a ^ b, a), v.s2(a) + v.chi(a, b) + v.s2(a)


def _h14(v, a, b):
    return v.s3(a ^ b) + v.s1(a), v.s3(b) + v.chi(a, b)


def _h15(v, a, b):
    return v.s1(a) + v.s3(b ^ a), v.chi(a, b) + v.s3(b)


def _h16(v, a, b, c):
    return (v.s3(a) + v.chi(a, b) + v.s3(b),
            v.chi(a, c) + v.s1(c) + v.chi(c, b), None)


def _real(name):
    def fn(v, a):
        val = getattr(v, name)(a)
        return val, v.conj(val, 1)
    return fn


def _real0(v, a, b):
    val = v.s0(a, b)
    return val, v.conj(val, 1)


def split_families(quaternionic: bool = False, real: bool = True) -> list[Family]:
    s8, s16 = ("Q8P", "Q16P") if quaternionic else ("H8", "H16")
    fams = [
        Family("H1", 3, _h1, "s0(c,ab) = s0(c,a) s0(c,b)"),
        Family("H2", 2, _h2, "s2(ab) = s2(a) chi(a,b) s2(b)"),
        Family("H3", 2, _h3, "s0(b,a) s1(b) = s1(b) chi(a,b)"),
        Family("H4", 2, _h4, "s1(b) s0(b,a) = chi(b,a) s1(b)"),
        Family("H5", 2, _h5, "chi(a,b) s3(b) = s2(a) s3(ab)"),
        Family("H6", 2, _h6, "s3(b) chi(a,b) = s3(ba) s2(a)"),
        Family("H7", 2, _h7, "s0(a,ba) = s1(a) chi(a,b) s1(a)"),
        Family(s8, 2, _h8, "s3(a) chi(a,b) s3(b) = c tau sum_c chi(a,c) s2(c) chi(c,b)", True),
        Family("H9", 3, _h9, "s0(c,a) s0(b,a) = s0(bc,a)"),
        Family("H10", 2, _h10, "chi(b,a) s2(a) = s2(a) s0(b,a)"),
        Family("H11", 2, _h11, "s0(b,a) s2(a) = s2(a) chi(a,b)"),
        Family("H12", 2, _h12, "s1(b) chi(a,b) s1(a) = s1(ab)"),
        Family("H13", 2, _h13, "s0(ab,a) = s2(a) chi(a,b) s2(a)"),
        Family("H14", 2, _h14, "s3(ab) s1(a) = s3(b) chi(a,b)"),
        Family("H15", 2, _h15, "s1(a) s3(ba) = chi(a,b) s3(b)"),
        Family(s16, 2, _h16, "s3(a) chi(a,b) s3(b) = c tau sum_c chi(a,c) s1(c) chi(c,b)", True),
    ]
    if real:
        fams += [
            Family("REAL-S0", 2, _real0, "s0 real"),
            Family("REAL-S1", 1, _real("s1"), "s1 real"),
            Family("REAL-S2", 1, _real("s2"), "s2 real"),
            Family("REAL-S3", 1, _real("s3"), "s3 real"),
        ]
    return fams


# real/complex hexagons: ^x conjugates when |x| = 1, ^gxy when g+|x|+|y| is odd;
# chi is +-1-valued so its decorations are trivial

def _gxy(v, x, y):
    return (v.g + v.deg(x) + v.deg(y)) % 2


def _rc1(v, x, y, z):
    return v.s0(x, y) + v.s0(x, z), v.s0(x, y ^ z)


def _rc2(v, x, y):
    return v.s1(x) + v.s0(x, y), v.chi(y, x) + v.conj(v.s1(x), v.deg(y))


def _rc3(v, x, y):
    return v.s0(x, y) + v.s1(x), v.conj(v.s1(x), v.deg(y)) + v.chi(x, y)


def _rc4(v, x, y):
    return v.s2(y) + v.chi(x, y) + v.s2(x), v.s2(x ^ y)


def _rc5(v, x, y):
    return v.chi(x, y) + v.conj(v.s1(x), _gxy(v, x, y)) + v.s1(x), v.s0(x, x ^ y)


def _rc6(v, x, y):
    return (v.conj(v.s2(x), _gxy(v, x, y)) + v.s3(x ^ y),
            v.conj(v.s3(y), v.deg(x)) + v.chi(x, y))


def _rc7(v, x, y):
    return (v.s3(x ^ y) + v.conj(v.s2(x), _gxy(v, x, y)),
            v.conj(v.s3(y), v.deg(x)) + v.chi(x, y))


def _rc8(v, x, y, z):
    lhs = v.chi(x, y) + v.conj(v.s3(x), v.deg(y)) + v.conj(v.s3(y), v.deg(x))
    terms = v.chi(x, z) + v.chi(z, y) + v.conj(v.s2(z), v.deg(z))
    return lhs, terms, v.deg(z) == _gxy(v, x, y)


def _rc9(v, x, y, z):
    return v.s0(x ^ y, z), v.s0(x, z) + v.s0(y, z)


def _rc10(v, x, y):
    return v.s1(x ^ y), v.s1(x) + v.s1(y) + v.chi(x, y)


def _rc11(v, x, y):
    return v.conj(v.s2(y), v.deg(x)) + v.chi(x, y), v.s0(x, y) + v.s2(y)


def _rc12(v, x, y):
    return v.conj(v.s2(y), v.deg(x)) + v.chi(y, x), v.s2(y) + v.s0(x, y)


def _rc13(v, x, y):
    return v.s3(y) + v.chi(x, y), v.s1(x) + v.s3(x ^ y)


def _rc14(v, x, y):
    return v.s3(y) + v.chi(x, y), v.s1(x) + v.s3(x ^ y)


def _rc15(v, x, y):
    return v.s0(x ^ y, x), v.conj(v.s2(x), _gxy(v, x, y)) + v.chi(x, y) + v.s2(x)


def _rc16(v, x, y, z):
    lhs = v.s3(x) + v.s3(y) + v.chi(x, y)
    terms = v.chi(x, z) + v.chi(z, y) + v.s1(z)
    return lhs, terms, v.deg(z) == _gxy(v, x, y)


def rc_families() -> list[Family]:
    return [
        Family("RC-H1", 3, _rc1, "s0(x,y) s0(x,z) = s0(x,yz)"),
        Family("RC-H2", 2, _rc2, "s1(x) s0(x,y) = chi(y,x) s1(x)^y"),
        Family("RC-H3", 2, _rc3, "s0(x,y) s1(x) = s1(x)^y chi(x,y)"),
        Family("RC-H4", 2, _rc4, "s2(y) chi(x,y) s2(x) = s2(xy)"),
        Family("RC-H5", 2, _rc5, "chi(x,y)^y s1(x)^gxy s1(x) = s0(x,xy)"),
        Family("RC-H6", 2, _rc6, "s2(x)^gxy s3(xy) = s3(y)^x chi(x,y)^y"),
        Family("RC-H7", 2, _rc7, "s3(xy) s2(x)^gxy = s3(y)^x chi(x,y)^gx"),
        Family("RC-H8", 2, _rc8,
               "chi(x,y)^-g s3(x)^y s3(y)^x = 2 tau sum_{|z|=|gxy|} chi(x,z)^-g chi(z,y)^-g s2(z)^z",
               True),
        Family("RC-H9", 3, _rc9, "s0(xy,z) = s0(x,z) s0(y,z)"),
        Family("RC-H10", 2, _rc10, "s1(xy) = s1(x) s1(y) chi(x,y)^-1"),
        Family("RC-H11", 2, _rc11, "s2(y)^x chi(x,y)^-1 = s0(x,y) s2(y)"),
        Family("RC-H12", 2, _rc12, "s2(y)^x chi(y,x)^-1 = s2(y) s0(x,y)"),
        Family("RC-H13", 2, _rc13, "s3(y) chi(x,y)^-gx = s1(x) s3(xy)"),
        Family("RC-H14", 2, _rc14, "s3(y) chi(x,y)^-y = s1(x) s3(xy)"),
        Family("RC-H15", 2, _rc15, "s0(xy,x) = s2(x)^gxy chi(x,y)^-y s2(x)"),
        Family("RC-H16", 2, _rc16,
               "s3(x) s3(y) chi(x,y)^xy = 2 tau sum_{|z|=|gxy|} chi(x,z)^gz chi(z,y)^gz s1(z)", True),
    ]


# Z/2-crossed heptagons on complex/complex data

def _f1(v, a, b, c):
    return v.s0(a, b ^ c), v.s0(a, b) + v.s0(a, c)


def _f2(v, a, b):
    return v.s0(a, b) + v.s1(a), v.chi(b, a) + v.s1(a)


def _f3(v, a, b):
    return v.chi(a, b) + v.s1(a), v.s1(a) + v.s0(a, b)


def _f4(v, a, b):
    return v.s0(a, a ^ b), -v.chi(b, a) + 2 * v.s1(a)


def _f5(v, a, b):
    return v.s2(a ^ b), v.chi(a, b) + v.s2(a) + v.s2(b)


def _f6(v, a, b):
    return -v.chi(b, a) + v.s3(b), v.s2(a) + v.s3(a ^ b)


def _f7(v, a, b):
    return -v.chi(b ^ a, a) + v.s3(a ^ b), v.s3(b) + v.s2(a)


def _f8(v, a, b, c):
    # chi(a,b) s3(a) s3(b) = tau kappa sum_c ..., kappa moved to the left
    lhs = v.chi(a, b) + v.s3(a) + v.s3(b) - v.kappa()
    return lhs, v.chi(c, b) + v.chi(a, c) + v.s2(c), None


def _b1(v, a, b, c):
    return -v.s0(b ^ c, a) + v.s0(c, a) + v.s0(b, a), 0


def _b2(v, a, b):
    return -v.chi(a, b) - v.s1(a ^ b) + v.s1(b) + v.s1(a), 0


def _b3(v, a, b):
    return -v.chi(b, a) - v.s2(a) + v.s2(a) + v.s0(b, a), 0


def _b4(v, a, b):
    return -v.s3(b) + v.s3(a ^ b) + v.s1(a), v.chi(b, a)


def _b5(v, a, b):
    return v.s2(a) + v.s0(b, a) - v.s2(a), -v.chi(a, b)


def _b6(v, a, b):
    return -v.chi(a, b) - v.s3(a) + v.s1(b) + v.s3(a ^ b), 0


def _b7(v, a, b):
    return v.ga(a) - v.s0(b, a) + v.s2(a) + v.chi(b ^ a, a) + v.s2(a), 0


def _b8(v, a, b, c):
    # tau gamma_m s3(b) sum_c chi(a,c) chi(c,b) s3(c) s1(a)^-1 = chi(a,b)
    lhs = v.chi(a, b) - v.gm() - v.s3(b) + v.s1(a)
    return lhs, v.chi(a, c) + v.chi(c, b) + v.s3(c), None


def _g1(v, a):
    return v.ga(a), 0


def _g2(v):
    # |gamma_m|^2 = 1; holds for every root of unity
    return v.gm() + v.conj(v.gm(), 1), 0


def _gr(v):
    return v.gm(), v.conj(v.gm(), 1)


def crossed_families() -> list[Family]:
    return [
        Family("CB-F1", 3, _f1, "s0(a,bc) = s0(a,b) s0(a,c)"),
        Family("CB-F2", 2, _f2, "s0(a,b) s1(a) = chi(b,a) s1(a)"),
        Family("CB-F3", 2, _f3, "chi(a,b) s1(a) = s1(a) s0(a,b)"),
        Family("CB-F4", 2, _f4, "s0(a,a^-1 b) = chi(b,a)^-1 s1(a) s1(a)"),
        Family("CB-F5", 2, _f5, "s2(ab) = chi(a,b) s2(a) s2(b)"),
        Family("CB-F6", 2, _f6, "chi(b,a)^-1 s3(b) = s2(a) s3(a^-1 b)"),
        Family("CB-F7", 2, _f7, "chi(ba,a)^-1 s3(ab) = s3(b) s2(a)"),
        Family("CB-F8", 2, _f8, "chi(a,b) s3(a) s3(b) = tau kappa sum_c chi(c,b) chi(a,c) s2(c)", True),
        Family("CB-B1", 3, _b1, "s0(bc,a)^-1 s0(c,a) s0(b,a) = 1"),
        Family("CB-B2", 2, _b2, "chi(a,b)^-1 s1(ab)^-1 s1(b) s1(a) = 1"),
        Family("CB-B3", 2, _b3, "chi(b,a)^-1 s2(a)^-1 s2(a) s0(b,a) = 1"),
        Family("CB-B4", 2, _b4, "s3(b)^-1 s3(a^-1 b) s1(a) = chi(b,a)"),
        Family("CB-B5", 2, _b5, "s2(a) s0(b,a) s2(a)^-1 = chi(a,b)^-1"),
        Family("CB-B6", 2, _b6, "chi(a,b)^-1 s3(a)^-1 s1(b) s3(ab^-1) = 1"),
        Family("CB-B7", 2, _b7, "gamma_a s0(b,a)^-1 s2(a) chi(ba,a) s2(a) = 1"),
        Family("CB-B8", 2, _b8,
               "tau gamma_m s3(b) sum_c chi(a,c) chi(c,b) s3(c) s1(a)^-1 = chi(a,b)", True),
        Family("CB-G1", 1, _g1, "gamma_a = 1"),
        Family("CB-G2", 0, _g2, "|gamma_m|^2 = 1"),
        Family("CB-GR", 0, _gr, "gamma_m real"),
        Family("CB-SR", 2, _real0, "s0 real"),
        Family("CB-SR", 1, _real("s1"), "s1 real"),
        Family("CB-SR", 1, _real("s2"), "s2 real"),
        Family("CB-SR", 1, _real("s3"), "s3 real"),
    ]


def families_for(data: TYData) -> list[Family]:
    case = data.case
    if case is Case.SPLIT_REAL:
        return split_families()
    if case is Case.REAL_QUATERNIONIC:
        return split_families(quaternionic=True)
    if case is Case.SPLIT_COMPLEX:
        return split_families(real=False)
    if case.is_real_complex:
        return rc_families()
    # plain braidings on complex/complex data: the split equations plus
    # naturality of c_{a,m} in End(m) = C, where m is Galois-nontrivial
    return split_families(real=False) + [
        Family("CC-NAT", 1, _cc_nat, "s1(a) i = s1(a) conj(i)")]


def _cc_nat(v, a):
    i = v.N // 4
    return v.s1(a) + i, v.s1(a) + v.conj(i, 1)


# evaluation

@lru_cache(maxsize=256)
def _sum_targets(scale: CycScalar) -> tuple[np.ndarray, np.ndarray]:
    """For each e: coefficient vector of zeta^e / scale, and whether it is integral."""
    n = scale.n
    inv = scale.inverse()
    vecs = np.zeros((n, n // 2), dtype=np.int64)
    ok = np.zeros(n, dtype=bool)
    for e in range(n):
        t = inv.times_unit(e)
        if t._e == 0:
            vecs[e] = t._c
            ok[e] = True
    return vecs, ok


def _grid(m: int, arity: int) -> list[np.ndarray]:
    ar = np.arange(m)
    out = []
    for k in range(arity):
        shape = [1] * arity
        shape[k] = m
        out.append(ar.reshape(shape))
    return out


def _sum_holds(v: View, lhs, terms, mask, scale: CycScalar) -> np.ndarray:
    n = v.N
    m = v.data.order
    terms = np.asarray(terms)
    lhs = np.asarray(lhs)
    mask = np.ones(1, dtype=bool) if mask is None else np.asarray(mask)
    full = np.broadcast_shapes(terms.shape, mask.shape, (m,) if terms.ndim == 0 else (1,))
    lead = full[:-1]
    if lhs.ndim == len(full):
        lhs = np.broadcast_to(lhs, lead + (1,))[..., 0]
    else:
        lhs = np.broadcast_to(lhs, lead)
    rows = int(np.prod(lead)) if lead else 1
    t = np.broadcast_to(terms, full).reshape(rows, m) % n
    w = np.broadcast_to(mask, full).reshape(rows, m).astype(np.int64)
    key = (np.arange(rows)[:, None] * n + t).ravel()
    hist = np.bincount(key, weights=w.ravel(), minlength=rows * n).astype(np.int64).reshape(rows, n)
    vec = hist[:, : n // 2] - hist[:, n // 2:]
    vecs, ok = _sum_targets(scale)
    e = lhs.reshape(rows) % n
    good = ok[e] & (vec == vecs[e]).all(axis=1)
    return good.reshape(lead)


def family_scale(data: TYData, fam: Family) -> CycScalar:
    if fam.id.startswith("CB-"):
        return data.tau
    return data.sum_scale


def evaluate_family(v: View, fam: Family) -> np.ndarray:
    """Boolean array over all index tuples: True where the equation holds."""
    m = v.data.order
    n = v.N
    if fam.summed:
        idx = _grid(m, fam.arity + 1)
        lhs, terms, mask = fam.fn(v, *idx)
        return _sum_holds(v, lhs, terms, mask, family_scale(v.data, fam))
    idx = _grid(m, fam.arity)
    lhs, rhs = fam.fn(v, *idx)
    ok = (np.asarray(lhs) - np.asarray(rhs)) % n == 0
    return np.broadcast_to(ok, (m,) * fam.arity)


def instance_holds(v: View, fam: Family, idx: tuple[int, ...]) -> bool:
    if fam.summed:
        z = np.arange(v.data.order)
        lhs, terms, mask = fam.fn(v, *idx, z)
        return bool(_sum_holds(v, lhs, terms, mask, family_scale(v.data, fam)))
    lhs, rhs = fam.fn(v, *idx)
    return (int(lhs) - int(rhs)) % v.N == 0


def instance_sides(v: View, fam: Family, idx: tuple[int, ...]) -> tuple[CycScalar, CycScalar]:
    """Both sides of one instance as exact scalars."""
    n = v.N
    if fam.summed:
        z = np.arange(v.data.order)
        lhs, terms, mask = fam.fn(v, *idx, z)
        mask = np.ones(len(z), dtype=bool) if mask is None else np.broadcast_to(mask, z.shape)
        terms = np.broadcast_to(terms, z.shape)
        total = CycScalar.unit_sum([int(t) for t, k in zip(terms, mask) if k], n)
        return CycScalar.unit(int(lhs), n), family_scale(v.data, fam) * total
    lhs, rhs = fam.fn(v, *idx)
    return CycScalar.unit(int(lhs), n), CycScalar.unit(int(rhs), n)


class RecordingView(View):
    """Records which unknowns an instance reads; returns zeros."""

    def __init__(self, data: TYData):
        m = data.order
        z1 = np.zeros(m, dtype=np.int64)
        super().__init__(data, np.zeros((m, m), dtype=np.int64), z1, z1, z1, z1)
        self.seen: set = set()

    def _rec(self, name, *args):
        arrs = np.broadcast_arrays(*[np.asarray(a) for a in args])
        for combo in zip(*[a.ravel() for a in arrs]):
            self.seen.add((name,) + tuple(int(c) for c in combo))
        return np.zeros(arrs[0].shape, dtype=np.int64) if arrs[0].ndim else 0

    def s0(self, a, b):
        return self._rec("s0", a, b)

    def s1(self, a):
        return self._rec("s1", a)

    def s2(self, a):
        return self._rec("s2", a)

    def s3(self, a):
        return self._rec("s3", a)

    def ga(self, a):
        return self._rec("ga", a)

    def gm(self):
        self.seen.add(("gm",))
        return 0

    def kappa(self):
        self.seen.add(("kappa",))
        return 0


def dependencies(data: TYData, fam: Family, idx: tuple[int, ...]) -> frozenset:
    rv = RecordingView(data)
    if fam.summed:
        fam.fn(rv, *idx, np.arange(data.order))
    else:
        fam.fn(rv, *idx)
    return frozenset(rv.seen)


def all_instances(data: TYData, fam: Family):
    m = data.order
    if fam.arity == 0:
        yield ()
        return
    yield from np.ndindex(*(m,) * fam.arity)
