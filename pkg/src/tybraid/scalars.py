"""Exact arithmetic in Z[zeta_N, 1/2] for N a power of two.

An element is stored as integer coefficients c_0..c_{N/2-1} over a shared
power-of-two denominator, in the basis 1, z, ..., z^{N/2-1} with z^{N/2} = -1.
The shared-denominator form is reduced until some coefficient is odd, which
makes equality a tuple comparison.  ``coeffs`` exposes the equivalent
per-coefficient dyadic view used for serialization.
"""

from __future__ import annotations

import cmath
import os
from collections.abc import Iterable

from .errors import DomainError, StructuralError

DEFAULT_MODULUS = 16


def default_modulus() -> int:
    """Modulus used when none is given; ``TYBRAID_MODULUS`` overrides it."""
    raw = os.environ.get("TYBRAID_MODULUS")
    if raw is None:
        return DEFAULT_MODULUS
    try:
        n = int(raw)
    except ValueError as exc:
        raise DomainError(f"TYBRAID_MODULUS={raw!r} is not an integer") from exc
    check_modulus(n)
    return n


def check_modulus(n: int) -> None:
    if n < 2 or n & (n - 1):
        raise DomainError(f"modulus must be a power of two >= 2, got {n}")


def _trailing_zeros(x: int) -> int:
    return (x & -x).bit_length() - 1


class CycScalar:
    """An exact element of Z[zeta_N, 1/2]."""

    __slots__ = ("n", "_c", "_e")

    def __init__(self, coeffs: Iterable[int], den_exp: int = 0, n: int | None = None):
        c = tuple(int(v) for v in coeffs)
        if n is None:
            n = 2 * len(c)
        check_modulus(n)
        if len(c) != n // 2:
            raise StructuralError(f"expected {n // 2} coefficients for N={n}, got {len(c)}")
        if den_exp < 0:
            c = tuple(v << -den_exp for v in c)
            den_exp = 0
        g = 0
        for v in c:
            g |= v
        if g == 0:
            den_exp = 0
        elif den_exp:
            shift = min(den_exp, _trailing_zeros(g))
            if shift:
                c = tuple(v >> shift for v in c)
                den_exp -= shift
        self.n = n
        self._c = c
        self._e = den_exp

    # constructors

    @classmethod
    def zero(cls, n: int | None = None) -> CycScalar:
        n = n or default_modulus()
        return cls((0,) * (n // 2), 0, n)

    @classmethod
    def from_int(cls, value: int, n: int | None = None) -> CycScalar:
        n = n or default_modulus()
        return cls((value,) + (0,) * (n // 2 - 1), 0, n)

    @classmethod
    def one(cls, n: int | None = None) -> CycScalar:
        return cls.from_int(1, n)

    @classmethod
    def dyadic(cls, num: int, den_exp: int, n: int | None = None) -> CycScalar:
        """The rational num / 2^den_exp."""
        n = n or default_modulus()
        return cls((num,) + (0,) * (n // 2 - 1), den_exp, n)

    @classmethod
    def unit(cls, k: int, n: int | None = None) -> CycScalar:
        """zeta_N^k."""
        n = n or default_modulus()
        return cls.unit_sum([k], n)

    @classmethod
    def unit_sum(cls, exponents: Iterable[int], n: int | None = None) -> CycScalar:
        """Sum of zeta_N^k over the given exponents (with multiplicity)."""
        n = n or default_modulus()
        h = n // 2
        c = [0] * h
        for k in exponents:
            k %= n
            if k < h:
                c[k] += 1
            else:
                c[k - h] -= 1
        return cls(c, 0, n)

    @classmethod
    def sqrt2(cls, n: int | None = None) -> CycScalar:
        n = n or default_modulus()
        if n < 8:
            raise DomainError(f"sqrt(2) is not in Z[zeta_{n}]")
        # sqrt2 = zeta_8 + zeta_8^-1
        return cls.unit_sum([n // 8, -(n // 8)], n)

    @classmethod
    def inv_sqrt_pow2(cls, m: int, n: int | None = None) -> CycScalar:
        """1 / sqrt(2^m) for m >= 0."""
        n = n or default_modulus()
        if m % 2 == 0:
            return cls.dyadic(1, m // 2, n)
        return cls.sqrt2(n) * cls.dyadic(1, (m + 1) // 2, n)

    # views

    @property
    def coeffs(self) -> list[tuple[int, int]]:
        """Per-coefficient reduced dyadics (num, den_exp)."""
        out = []
        for v in self._c:
            if v == 0:
                out.append((0, 0))
                continue
            shift = min(self._e, _trailing_zeros(v))
            out.append((v >> shift, self._e - shift))
        return out

    def is_zero(self) -> bool:
        return not any(self._c)

    def is_real(self) -> bool:
        return self == self.conjugate()

    def monomial(self) -> tuple[int, int, int] | None:
        """If self = s * 2^m * zeta^k with s = +-1, return (k mod N, m, s) normalized to s = 1."""
        nz = [(j, v) for j, v in enumerate(self._c) if v]
        if len(nz) != 1:
            return None
        j, v = nz[0]
        a = abs(v)
        if a & (a - 1):
            return None
        k = j if v > 0 else j + self.n // 2
        return k % self.n, a.bit_length() - 1 - self._e, 1

    def unit_exponent(self) -> int | None:
        """k with self = zeta^k, or None."""
        mono = self.monomial()
        if mono is None or mono[1] != 0:
            return None
        return mono[0]

    # arithmetic

    def _check(self, other: CycScalar) -> None:
        if self.n != other.n:
            raise StructuralError(f"modulus mismatch: {self.n} vs {other.n}")

    def _coerce(self, other) -> CycScalar:
        if isinstance(other, CycScalar):
            self._check(other)
            return other
        if isinstance(other, int):
            return CycScalar.from_int(other, self.n)
        return NotImplemented

    def __add__(self, other) -> CycScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        e = max(self._e, other._e)
        a, b = e - self._e, e - other._e
        return CycScalar([(x << a) + (y << b) for x, y in zip(self._c, other._c)], e, self.n)

    __radd__ = __add__

    def __neg__(self) -> CycScalar:
        return CycScalar([-x for x in self._c], self._e, self.n)

    def __sub__(self, other) -> CycScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> CycScalar:
        return (-self) + other

    def __mul__(self, other) -> CycScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        h = self.n // 2
        out = [0] * h
        for i, x in enumerate(self._c):
            if not x:
                continue
            for j, y in enumerate(other._c):
                if not y:
                    continue
                k = i + j
                if k < h:
                    out[k] += x * y
                else:
                    out[k - h] -= x * y
        return CycScalar(out, self._e + other._e, self.n)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CycScalar:
        if k < 0:
            return self.inverse() ** (-k)
        result = CycScalar.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> CycScalar:
        h = self.n // 2
        out = [0] * h
        out[0] = self._c[0]
        # zeta^-j = -zeta^{h-j}
        for j in range(1, h):
            out[h - j] = -self._c[j]
        return CycScalar(out, self._e, self.n)

    def times_unit(self, k: int) -> CycScalar:
        """self * zeta^k, computed by rotating coefficients."""
        h = self.n // 2
        k %= self.n
        out = [0] * h
        for j, v in enumerate(self._c):
            if not v:
                continue
            t = (j + k) % self.n
            if t < h:
                out[t] += v
            else:
                out[t - h] -= v
        return CycScalar(out, self._e, self.n)

    def inverse(self) -> CycScalar:
        """Inverse of s * 2^m * zeta^k or of such a value times sqrt(2)."""
        mono = self.monomial()
        if mono is not None:
            k, m, _ = mono
            return CycScalar.unit(-k, self.n) * _pow2(-m, self.n)
        if self.n >= 8:
            mono = (self * CycScalar.sqrt2(self.n)).monomial()
            if mono is not None:
                k, m, _ = mono
                # x = z^k 2^m / sqrt2, so 1/x = z^-k sqrt2 / 2^m
                return CycScalar.unit(-k, self.n) * CycScalar.sqrt2(self.n) * _pow2(-m, self.n)
        raise DomainError(f"inverse only implemented for unit * sqrt(2)-powers, got {self!r}")

    def sqrt_candidates(self) -> set[CycScalar]:
        """Both square roots at this modulus, or an empty set if they need a larger one.

        Inputs must be a unit times a power of sqrt(2).  A unit times an odd
        power of sqrt(2) has roots involving 2^(1/4), which lie in no
        2-power cyclotomic field, so the result is empty there too.
        """
        mono = self.monomial()
        if mono is None:
            if self.n >= 8 and (self * CycScalar.sqrt2(self.n)).monomial() is not None:
                return set()
            raise DomainError(f"sqrt_candidates needs unit * sqrt(2)-power input, got {self!r}")
        k, m, _ = mono
        if k % 2:
            return set()
        root = CycScalar.unit(k // 2, self.n)
        if m % 2 == 0:
            root = root * _pow2(m // 2, self.n)
        else:
            if self.n < 8:
                return set()
            root = root * CycScalar.sqrt2(self.n) * _pow2((m - 1) // 2, self.n)
        return {root, -root}

    # comparison, hashing, display

    def _key(self):
        return (self.n, self._c, self._e)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycScalar.from_int(other, self.n)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def sort_key(self):
        return (self._e, self._c)

    def __repr__(self) -> str:
        terms = []
        for j, (num, de) in enumerate(self.coeffs):
            if not num:
                continue
            coef = str(num) if de == 0 else f"{num}/{1 << de}"
            terms.append(coef if j == 0 else f"{coef}*z^{j}")
        body = " + ".join(terms) if terms else "0"
        return f"CycScalar({body}; N={self.n})"

    def to_complex(self) -> complex:
        """Floating-point value, for display only."""
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(v * z**j for j, v in enumerate(self._c)) / (1 << self._e)

    # serialization

    def to_json(self) -> dict:
        return {"N": self.n, "coeffs": [[num, de] for num, de in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> CycScalar:
        n = int(obj["N"])
        pairs = obj["coeffs"]
        if len(pairs) != n // 2:
            raise StructuralError(f"expected {n // 2} coefficients for N={n}")
        e = max((int(de) for _, de in pairs), default=0)
        if any(int(de) < 0 for _, de in pairs):
            raise DomainError("negative denominator exponent")
        return cls([int(num) << (e - int(de)) for num, de in pairs], e, n)


def _pow2(m: int, n: int) -> CycScalar:
    if m >= 0:
        return CycScalar.from_int(1 << m, n)
    return CycScalar.dyadic(1, -m, n)
