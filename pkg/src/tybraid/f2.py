"""Elementary abelian 2-groups, symmetric bicharacters and their automorphisms.

Group elements are ints read as bit-vectors: bit i is the coefficient of the
i-th basis vector.  A bicharacter is a symmetric matrix M over F2 stored as
row bitmasks, with chi(x, y) = (-1)^(x^T M y).  Automorphisms are tuples of
basis images.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import CapacityError, DomainError

MAX_DIM = 16
AUT_SEARCH_BOUND = 8

Automorphism = tuple[int, ...]


def bits(x: int) -> Iterator[int]:
    """Indices of set bits of x, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def parity(x: int) -> int:
    return x.bit_count() & 1


def rank(rows: Sequence[int]) -> int:
    """Rank over F2 of vectors given as ints."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def span(vectors: Sequence[int]) -> list[int]:
    out = [0]
    for v in vectors:
        if v not in out:
            out += [x ^ v for x in out]
    return out


def solve_coords(basis: Sequence[int], x: int) -> int:
    """Coordinates (as a bitmask over basis positions) of x in an independent basis."""
    pivots: list[tuple[int, int]] = []  # (reduced vector, coordinate mask)
    for i, b in enumerate(basis):
        v, c = b, 1 << i
        for pv, pc in pivots:
            if v ^ pv < v:
                v, c = v ^ pv, c ^ pc
        if not v:
            raise DomainError("basis vectors are dependent")
        pivots.append((v, c))
        pivots.sort(reverse=True)
    v, c = x, 0
    for pv, pc in pivots:
        if v ^ pv < v:
            v, c = v ^ pv, c ^ pc
    if v:
        raise DomainError(f"{x:b} is not in the span")
    return c


def apply(f: Automorphism, x: int) -> int:
    y = 0
    for i in bits(x):
        y ^= f[i]
    return y


def image_table(f: Automorphism) -> list[int]:
    """f(x) for every x, built by linearity."""
    table = [0] * (1 << len(f))
    for x in range(1, len(table)):
        low = x & -x
        table[x] = table[x ^ low] ^ f[low.bit_length() - 1]
    return table


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """f after g."""
    return tuple(apply(f, gi) for gi in g)


def identity_aut(dim: int) -> Automorphism:
    return tuple(1 << i for i in range(dim))


def inverse(f: Automorphism) -> Automorphism:
    return tuple(solve_coords(f, 1 << i) for i in range(len(f)))


def format_bits(x: int, dim: int) -> str:
    """Bit-string with character j equal to bit j."""
    return "".join("1" if (x >> j) & 1 else "0" for j in range(dim))


def parse_bits(s: str) -> int:
    if any(ch not in "01" for ch in s):
        raise DomainError(f"not a bit string: {s!r}")
    return sum(1 << j for j, ch in enumerate(s) if ch == "1")


@dataclass(frozen=True)
class Bicharacter:
    """An F2-valued bilinear form on F2^dim, read multiplicatively as +-1."""

    dim: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.dim <= MAX_DIM:
            raise CapacityError(f"dim {self.dim} outside 0..{MAX_DIM}")
        if len(self.rows) != self.dim or any(r >> self.dim for r in self.rows):
            raise DomainError("gram rows do not match dimension")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> Bicharacter:
        rows = tuple(sum((int(v) & 1) << j for j, v in enumerate(row)) for row in matrix)
        return cls(len(rows), rows)

    def matrix(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.dim)] for r in self.rows]

    @property
    def order(self) -> int:
        return 1 << self.dim

    @cached_property
    def _columns(self) -> tuple[int, ...]:
        return tuple(sum(((r >> j) & 1) << i for i, r in enumerate(self.rows))
                     for j in range(self.dim))

    @cached_property
    def _images(self) -> list[int]:
        # M y for every y
        return image_table(self._columns)

    def pair(self, x: int, y: int) -> int:
        """Exponent bit of chi(x, y)."""
        if self.dim <= 12:
            return parity(x & self._images[y])
        v = 0
        for j in bits(y):
            v ^= self._columns[j]
        return parity(x & v)

    def chi(self, x: int, y: int) -> int:
        """chi(x, y) as an integer +-1."""
        return -1 if self.pair(x, y) else 1

    @cached_property
    def is_symmetric(self) -> bool:
        m = self.matrix()
        return all(m[i][j] == m[j][i] for i in range(self.dim) for j in range(i))

    @cached_property
    def is_nondegenerate(self) -> bool:
        return rank(self.rows) == self.dim

    @cached_property
    def diagonal(self) -> int:
        """Bitmask of basis vectors e with chi(e, e) = -1."""
        return sum(((r >> i) & 1) << i for i, r in enumerate(self.rows))

    @property
    def is_alternating(self) -> bool:
        return self.diagonal == 0

    def restrict(self, basis: Sequence[int]) -> Bicharacter:
        """Gram matrix of the form on the given vectors."""
        return Bicharacter.from_matrix([[self.pair(x, y) for y in basis] for x in basis])

    def congruent(self, p: Sequence[int]) -> Bicharacter:
        """The form P M P^T, where the rows of P are given as elements."""
        return self.restrict(p)

    def direct_sum(self, other: Bicharacter) -> Bicharacter:
        rows = self.rows + tuple(r << self.dim for r in other.rows)
        return Bicharacter(self.dim + other.dim, rows)

    def preserved_by(self, f: Automorphism) -> bool:
        return all(
            self.pair(f[i], f[j]) == (self.rows[i] >> j) & 1
            for i in range(self.dim)
            for j in range(i, self.dim)
        )

    def to_json(self) -> dict:
        return {"dim": self.dim, "gram_rows": [format_bits(r, self.dim) for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> Bicharacter:
        dim = int(obj["dim"])
        rows = obj["gram_rows"]
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise DomainError("gram_rows shape does not match dim")
        return cls(dim, tuple(parse_bits(r) for r in rows))


def standard_hyperbolic(n: int) -> Bicharacter:
    """h^n: n diagonal blocks [[0,1],[1,0]]."""
    if n < 0:
        raise DomainError("n must be >= 0")
    rows = []
    for k in range(n):
        rows += [1 << (2 * k + 1), 1 << (2 * k)]
    return Bicharacter(2 * n, tuple(rows))


def ell(k: int = 1) -> Bicharacter:
    """l^k: the identity Gram matrix, chi(e, e) = -1 on each basis vector."""
    return Bicharacter(k, tuple(1 << i for i in range(k)))


def normal_form(h_blocks: int, l_blocks: int) -> Bicharacter:
    return standard_hyperbolic(h_blocks).direct_sum(ell(l_blocks))


def zero_form(dim: int) -> Bicharacter:
    return Bicharacter(dim, (0,) * dim)


def _reduce_basis(vectors: Sequence[int]) -> list[int]:
    out: list[int] = []
    seen = [0]
    for v in vectors:
        if v and v not in seen:
            out.append(v)
            seen += [x ^ v for x in seen]
    return out


def wall_normalize(chi: Bicharacter) -> tuple[tuple[int, ...], int, int]:
    """Split chi into hyperbolic planes and at most two l-lines.

    Returns (P, h, l) where the rows of P are new basis vectors and
    P M P^T is the Gram matrix of h^h + l^l with l in {0, 1, 2}.
    """
    if not chi.is_symmetric:
        raise DomainError("bicharacter is not symmetric")
    if not chi.is_nondegenerate:
        raise DomainError("bicharacter is degenerate")
    pair = chi.pair
    space = [1 << i for i in range(chi.dim)]
    planes: list[tuple[int, int]] = []
    lines: list[int] = []
    while space:
        x = next((v for v in space if pair(v, v)), None)
        if x is None:
            x = space[0]
            y = next(v for v in space if pair(x, v))
            planes.append((x, y))
            proj = [v ^ (x if pair(v, y) else 0) ^ (y if pair(v, x) else 0) for v in space]
        else:
            lines.append(x)
            proj = [v ^ (x if pair(v, x) else 0) for v in space]
        space = _reduce_basis(proj)
    # l^3 = h + l:  (e1+e2, e2+e3) is hyperbolic and e1+e2+e3 is orthogonal to it
    while len(lines) >= 3:
        e1, e2, e3 = lines.pop(), lines.pop(), lines.pop()
        planes.append((e1 ^ e2, e2 ^ e3))
        lines.append(e1 ^ e2 ^ e3)
    p = tuple(v for plane in planes for v in plane) + tuple(lines)
    return p, len(planes), len(lines)


def _pairing_masks(chi: Bicharacter) -> list[int]:
    """For each x, the bitmask over y of pair(x, y) = 1."""
    order = chi.order
    masks = []
    for x in range(order):
        m = 0
        for y in range(order):
            if chi.pair(x, y):
                m |= 1 << y
        masks.append(m)
    return masks


def _iter_isometries(chi: Bicharacter) -> Iterator[Automorphism]:
    """Backtracking over basis images constrained by pairing values."""
    d = chi.dim
    if d == 0:
        yield ()
        return
    order = chi.order
    full = (1 << order) - 1
    masks = _pairing_masks(chi)
    self_pair = sum(1 << y for y in range(order) if chi.pair(y, y))
    gram = chi.matrix()
    images = [0] * d

    def rec(i: int, span_mask: int, span_list: list[int]):
        cand = full & ~span_mask
        cand &= self_pair if gram[i][i] else full ^ self_pair
        for j in range(i):
            m = masks[images[j]]
            cand &= m if gram[i][j] else full ^ m
        while cand:
            low = cand & -cand
            y = low.bit_length() - 1
            cand ^= low
            images[i] = y
            if i + 1 == d:
                yield tuple(images)
            else:
                new = [s ^ y for s in span_list]
                new_mask = span_mask
                for s in new:
                    new_mask |= 1 << s
                yield from rec(i + 1, new_mask, span_list + new)

    yield from rec(0, 1, [0])


def _iter_gl_scan(chi: Bicharacter) -> Iterator[Automorphism]:
    d = chi.dim
    for f in itertools.product(range(1, chi.order), repeat=d):
        if chi.preserved_by(f) and rank(f) == d:
            yield f


def iter_aut(chi: Bicharacter, method: str = "auto") -> Iterator[Automorphism]:
    """Stream Aut(A, chi) without materializing it."""
    if chi.dim > AUT_SEARCH_BOUND:
        raise CapacityError(f"automorphism search limited to dim <= {AUT_SEARCH_BOUND}")
    if method == "auto":
        method = "scan" if chi.dim <= 4 else "backtrack"
    if method == "scan":
        if chi.dim == 0:
            return iter([()])
        return _iter_gl_scan(chi)
    if method == "backtrack":
        return _iter_isometries(chi)
    raise DomainError(f"unknown method {method!r}")


def count_aut(chi: Bicharacter) -> int:
    return sum(1 for _ in iter_aut(chi, "backtrack"))


@dataclass(frozen=True)
class GradedGroup:
    """F2^dim with a linear grading x -> |x| and a distinguished element w."""

    dim: int
    grading: int = 0
    w: int | None = None

    def degree(self, x: int) -> int:
        return parity(x & self.grading)

    @property
    def order(self) -> int:
        return 1 << self.dim

    def kernel_basis(self) -> list[int]:
        """A basis of A_0 = ker |.|."""
        if not self.grading:
            return [1 << i for i in range(self.dim)]
        pivot = (self.grading & -self.grading).bit_length() - 1
        return [(1 << i) | ((1 << pivot) if self.degree(1 << i) else 0)
                for i in range(self.dim) if i != pivot]

    def to_json(self) -> dict:
        out = {"dim": self.dim, "grading": format_bits(self.grading, self.dim)}
        if self.w is not None:
            out["w"] = format_bits(self.w, self.dim)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> GradedGroup:
        dim = int(obj["dim"])
        grading = parse_bits(obj.get("grading", "0" * dim))
        w = parse_bits(obj["w"]) if obj.get("w") is not None else None
        return cls(dim, grading, w)


def canonical_w(graded: GradedGroup, chi: Bicharacter) -> int:
    """The unique element of A minus A_0 orthogonal to A_0."""
    if not graded.grading:
        raise DomainError("grading is trivial")
    a0 = graded.kernel_basis()
    restricted = chi.restrict(a0)
    if not restricted.is_nondegenerate:
        raise DomainError("chi restricted to A_0 is degenerate")
    w0 = 1 << ((graded.grading & -graded.grading).bit_length() - 1)
    # find c in A_0 with chi(c, b) = chi(w0, b) for all basis vectors b of A_0
    target = sum(chi.pair(w0, b) << i for i, b in enumerate(a0))
    cols = [sum(restricted.pair(1 << k, 1 << i) << i for i in range(len(a0)))
            for k in range(len(a0))]
    coords = solve_coords(cols, target) if a0 else 0
    c = 0
    for k in bits(coords):
        c ^= a0[k]
    return w0 ^ c


def enumerate_aut(chi: Bicharacter, graded: GradedGroup | None = None,
                  method: str = "auto") -> list[Automorphism]:
    """All automorphisms of (A, chi); for graded input, those fixing w."""
    if graded is None or not graded.grading:
        return list(iter_aut(chi, method))
    a0 = graded.kernel_basis()
    w = graded.w if graded.w is not None else canonical_w(graded, chi)
    basis = a0 + [w]
    coords = [solve_coords(basis, 1 << i) for i in range(graded.dim)]
    out = []
    for f0 in iter_aut(chi.restrict(a0), method):
        img = [apply(f0, 1 << k) for k in range(len(a0))]
        # img holds A_0-coordinates; map back to A
        img = [sum_vectors(a0, v) for v in img] + [w]
        out.append(tuple(sum_vectors(img, c) for c in coords))
    return out


def sum_vectors(vectors: Sequence[int], mask: int) -> int:
    x = 0
    for k in bits(mask):
        x ^= vectors[k]
    return x


def aut_order_formula(n: int) -> int:
    """|Aut(K_4^n, h^n)| = 2^{n^2} prod_{i=1}^n (2^{2i} - 1)."""
    out = 1 << (n * n)
    for i in range(1, n + 1):
        out *= (1 << (2 * i)) - 1
    return out


def random_symmetric(rng: random.Random, dim: int, alternating: bool = False) -> Bicharacter:
    """A uniformly random symmetric nondegenerate form, by rejection."""
    if alternating and dim % 2:
        raise DomainError("alternating nondegenerate forms need even dimension")
    while True:
        rows = [0] * dim
        for i in range(dim):
            if not alternating and rng.getrandbits(1):
                rows[i] |= 1 << i
            for j in range(i + 1, dim):
                if rng.getrandbits(1):
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        chi = Bicharacter(dim, tuple(rows))
        if chi.is_nondegenerate:
            return chi


def wall_violations(chi: Bicharacter) -> list[str]:
    """Check wall_normalize on chi: basis, exact congruence, alternating case."""
    p, h, l = wall_normalize(chi)
    out = []
    if len(p) != chi.dim or rank(p) != chi.dim:
        out.append("basis change is not invertible")
    elif chi.congruent(p) != normal_form(h, l):
        out.append("P M P^T differs from the normal form")
    if l > 2:
        out.append("more than two l-lines")
    if chi.is_alternating and (l or chi.dim % 2):
        out.append("alternating input produced l-lines")
    return out
