"""Quadratic forms with prescribed coboundary, Gauss sums and Aut-orbits."""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from . import f2
from .errors import DomainError
from .f2 import Automorphism, Bicharacter
from .scalars import CycScalar, default_modulus


class Field(str, Enum):
    REAL = "real"
    COMPLEX = "complex"


@dataclass(frozen=True)
class QForm:
    """sigma: A -> mu_N stored as exponents, indexed by element bit-pattern."""

    chi: Bicharacter
    exps: tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(self.exps) != self.chi.order:
            raise DomainError("value table has the wrong length")

    def __call__(self, x: int) -> int:
        return self.exps[x]

    def value(self, x: int) -> CycScalar:
        return CycScalar.unit(self.exps[x], self.n)

    @property
    def basis_values(self) -> tuple[int, ...]:
        return tuple(self.exps[1 << i] for i in range(self.chi.dim))

    def is_real(self) -> bool:
        half = self.n // 2
        return all(e in (0, half) for e in self.exps)

    def is_admissible(self) -> bool:
        half = self.n // 2
        order = self.chi.order
        if self.exps[0] != 0:
            return False
        return all(
            (self.exps[a ^ b] - self.exps[a] - self.exps[b] - half * self.chi.pair(a, b)) % self.n == 0
            for a in range(order)
            for b in range(order)
        )

    def restrict(self, basis: Sequence[int]) -> QForm:
        """The form pulled back along the inclusion spanned by basis."""
        sub = self.chi.restrict(basis)
        table = f2.image_table(tuple(basis))
        return QForm(sub, tuple(self.exps[table[x]] for x in range(sub.order)), self.n)

    def sort_key(self):
        return self.exps

    def to_json(self) -> dict:
        return {"chi": self.chi.to_json(), "exponents": list(self.exps)}

    @classmethod
    def from_json(cls, obj: dict, n: int | None = None) -> QForm:
        return cls(Bicharacter.from_json(obj["chi"]), tuple(int(e) for e in obj["exponents"]),
                   n or default_modulus())


def allowed_basis_values(chi: Bicharacter, i: int, fld: Field, n: int) -> tuple[int, ...]:
    """Exponents v with zeta^{2v} = chi(e_i, e_i), restricted to the field."""
    if (chi.diagonal >> i) & 1:
        if fld is Field.REAL or n % 4:
            return ()
        return (n // 4, 3 * n // 4)
    return (0, n // 2)


def extend_from_basis(chi: Bicharacter, basis_values: Sequence[int],
                      fld: Field = Field.COMPLEX, n: int | None = None) -> QForm:
    """The unique admissible form with the given basis values."""
    n = n or default_modulus()
    fld = Field(fld)
    if len(basis_values) != chi.dim:
        raise DomainError(f"need {chi.dim} basis values, got {len(basis_values)}")
    vals = [v % n for v in basis_values]
    for i, v in enumerate(vals):
        if v not in allowed_basis_values(chi, i, fld, n):
            raise DomainError(f"value zeta^{v} at basis vector {i} is not allowed over {fld.value}")
    half = n // 2
    exps = [0] * chi.order
    for x in range(1, chi.order):
        low = x & -x
        rest = x ^ low
        exps[x] = (vals[low.bit_length() - 1] + exps[rest] + half * chi.pair(low, rest)) % n
    return QForm(chi, tuple(exps), n)


def enumerate_qforms(chi: Bicharacter, fld: Field = Field.REAL,
                     n: int | None = None) -> list[QForm]:
    """All admissible forms over the field, sorted by value table."""
    n = n or default_modulus()
    fld = Field(fld)
    choices = [allowed_basis_values(chi, i, fld, n) for i in range(chi.dim)]
    forms = [extend_from_basis(chi, vals, fld, n) for vals in itertools.product(*choices)]
    return sorted(forms, key=QForm.sort_key)


def gauss_sum(q: QForm) -> CycScalar:
    return CycScalar.unit_sum(q.exps, q.n)


def sign(q: QForm) -> int:
    """Sign of a nonzero real Gauss sum."""
    s = gauss_sum(q)
    mono = s.monomial()
    if mono is None or s.is_zero() or mono[0] not in (0, q.n // 2):
        raise DomainError(f"Gauss sum {s!r} is not a nonzero real power of two")
    return 1 if mono[0] == 0 else -1


def direct_sum(q1: QForm, q2: QForm) -> QForm:
    """Orthogonal sum on A1 x A2; elements of A2 occupy the high bits."""
    if q1.n != q2.n:
        raise DomainError("modulus mismatch")
    chi = q1.chi.direct_sum(q2.chi)
    shift = q1.chi.dim
    mask = (1 << shift) - 1
    exps = tuple((q1.exps[x & mask] + q2.exps[x >> shift]) % q1.n for x in range(chi.order))
    return QForm(chi, exps, q1.n)


def act(f: Automorphism, q: QForm) -> QForm:
    """(f.q)(x) = q(f^{-1} x)."""
    if len(f) != q.chi.dim or not q.chi.preserved_by(f) or f2.rank(f) != q.chi.dim:
        raise DomainError("automorphism does not preserve chi")
    table = f2.image_table(f)
    exps = [0] * len(q.exps)
    for x, e in enumerate(q.exps):
        exps[table[x]] = e
    return QForm(q.chi, tuple(exps), q.n)


def pullback_key(q: QForm, f: Automorphism) -> tuple[int, ...]:
    """Basis values of q o f = f^{-1}.q."""
    return tuple(q.exps[y] for y in f)


def transvections(chi: Bicharacter) -> list[Automorphism]:
    """x -> x + chi(x, v) v for every v with chi(v, v) = 1; these preserve chi."""
    gens = []
    for v in range(1, chi.order):
        if chi.pair(v, v):
            continue
        gens.append(tuple((1 << i) ^ (v if chi.pair(1 << i, v) else 0) for i in range(chi.dim)))
    return gens


@lru_cache(maxsize=None)
def aut_order(chi: Bicharacter) -> int:
    if chi.is_alternating and chi.is_nondegenerate:
        # the symplectic group order; count_aut agrees (checked in tests)
        return f2.aut_order_formula(chi.dim // 2)
    if chi.dim <= 4:
        return len(f2.enumerate_aut(chi))
    return f2.count_aut(chi)


@dataclass
class Orbit:
    representative: QForm
    members: tuple[QForm, ...]
    stabilizer_order: int
    # member value table -> automorphism g with act(g, representative) = member
    transporters: dict[tuple[int, ...], Automorphism] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.members)


def _orbit_by_scan(q0: QForm, fld: Field) -> tuple[dict, int]:
    chi = q0.chi
    base = q0.basis_values
    found: dict[tuple[int, ...], Automorphism] = {}
    stab = 0
    for f in f2.iter_aut(chi):
        key = pullback_key(q0, f)
        if key == base:
            stab += 1
        if key not in found:
            found[key] = f2.inverse(f)
    transporters = {}
    for key, g in found.items():
        transporters[extend_from_basis(chi, key, fld, q0.n).exps] = g
    return transporters, stab


def _orbit_by_generators(q0: QForm, gens: list[Automorphism]) -> dict:
    dim = q0.chi.dim
    transporters = {q0.exps: f2.identity_aut(dim)}
    queue = deque([(q0, transporters[q0.exps])])
    while queue:
        q, g = queue.popleft()
        for t in gens:
            nxt = act(t, q)
            if nxt.exps not in transporters:
                h = f2.compose(t, g)
                transporters[nxt.exps] = h
                queue.append((nxt, h))
    return transporters


def orbits_and_stabilizers(chi: Bicharacter, forms: Iterable[QForm]) -> list[Orbit]:
    """Partition an Aut(A, chi)-stable set of forms into orbits.

    Alternating forms of dim >= 5 use symplectic transvections (which
    generate the isometry group) plus |Aut| by counting; smaller or
    non-alternating forms scan the whole group.
    """
    forms = sorted(set(forms), key=QForm.sort_key)
    if not forms:
        return []
    if any(q.chi != chi for q in forms):
        raise DomainError("forms have a different coboundary")
    fld = Field.REAL if all(q.is_real() for q in forms) else Field.COMPLEX
    pool = {q.exps: q for q in forms}
    use_gens = chi.dim >= 5 and chi.is_alternating
    gens = transvections(chi) if use_gens else None
    out = []
    while pool:
        q0 = pool[min(pool)]
        if use_gens:
            transporters = _orbit_by_generators(q0, gens)
            stab = aut_order(chi) // len(transporters)
        else:
            transporters, stab = _orbit_by_scan(q0, fld)
        missing = [k for k in transporters if k not in pool]
        if missing:
            raise DomainError("form set is not closed under Aut(A, chi)")
        members = tuple(sorted((pool.pop(k) for k in transporters), key=QForm.sort_key))
        out.append(Orbit(q0, members, stab, transporters))
    return out


def qf_count_formula(n: int, sgn: int) -> int:
    """|QF_+^n| = 2^{n-1}(2^n + 1), |QF_-^n| = 2^{n-1}(2^n - 1)."""
    if n == 0:
        return 1 if sgn > 0 else 0
    return (1 << (n - 1)) * ((1 << n) + sgn)


def stabilizer_formula(n: int, sgn: int) -> int:
    """|H_+^n| and |H_-^n|; the group is trivial at n = 0."""
    if n == 0:
        return 1 if sgn > 0 else 0
    out = (1 << (n * n - n + 1)) * ((1 << n) - sgn)
    for i in range(1, n):
        out *= (1 << (2 * i)) - 1
    return out


def ell2_form(n: int, kappa: int, eps1: int, eps2: int, modulus: int | None = None) -> QForm:
    """sigma(kappa, eps1, eps2) on K_4^n x K_4 with coboundary h^n + l^2.

    The K_4^n part is the sum of n copies of q_+ (or q_- once, for kappa = -1)
    and the l-lines take values i*eps1, i*eps2.
    """
    modulus = modulus or default_modulus()
    half, quarter = modulus // 2, modulus // 4
    vals: list[int] = []
    for k in range(n):
        vals += [half, half] if (kappa < 0 and k == 0) else [0, 0]
    if n == 0 and kappa < 0:
        raise DomainError("no form of sign -1 on the trivial group")
    vals += [quarter if eps1 > 0 else 3 * quarter, quarter if eps2 > 0 else 3 * quarter]
    chi = f2.normal_form(n, 2)
    return extend_from_basis(chi, vals, Field.COMPLEX, modulus)


def ell2_swap(n: int) -> Automorphism:
    """a1 -> a1 g1 g2, b1 -> b1 g1 g2, g1 -> a1 b1 g1, g2 -> a1 b1 g2, rest fixed."""
    if n < 1:
        raise DomainError("needs n >= 1")
    a1, b1 = 1, 2
    g1, g2 = 1 << (2 * n), 1 << (2 * n + 1)
    images = list(f2.identity_aut(2 * n + 2))
    images[0] = a1 | g1 | g2
    images[1] = b1 | g1 | g2
    images[2 * n] = a1 | b1 | g1
    images[2 * n + 1] = a1 | b1 | g2
    return tuple(images)
