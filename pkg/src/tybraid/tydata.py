"""Tambara-Yamagami instance data: case, group, bicharacter and tau."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from . import f2
from .errors import DomainError, ModulusTooSmall, StructuralError
from .f2 import Bicharacter, GradedGroup
from .qforms import Field
from .scalars import CycScalar, default_modulus

M = "m"


class Case(str, Enum):
    SPLIT_REAL = "SplitReal"
    REAL_QUATERNIONIC = "RealQuaternionic"
    RC_ID = "RealComplexId"
    RC_CONJ = "RealComplexConj"
    SPLIT_COMPLEX = "SplitComplex"
    COMPLEX_COMPLEX = "ComplexComplex"

    @property
    def is_real_complex(self) -> bool:
        return self in (Case.RC_ID, Case.RC_CONJ)


CASE_ALIASES = {
    "split-real": Case.SPLIT_REAL, "sr": Case.SPLIT_REAL,
    "real-quaternionic": Case.REAL_QUATERNIONIC, "rq": Case.REAL_QUATERNIONIC,
    "rc-id": Case.RC_ID, "real-complex-id": Case.RC_ID,
    "rc-conj": Case.RC_CONJ, "real-complex-conj": Case.RC_CONJ,
    "split-complex": Case.SPLIT_COMPLEX, "sc": Case.SPLIT_COMPLEX,
    "complex-complex": Case.COMPLEX_COMPLEX, "cc": Case.COMPLEX_COMPLEX,
}


def parse_case(name: str) -> Case:
    key = name.strip()
    if key in CASE_ALIASES:
        return CASE_ALIASES[key]
    try:
        return Case(key)
    except ValueError:
        raise DomainError(f"unknown case {name!r}") from None


# tau^2 = 1 / (factor * |A|) with factor = 2^extra
_TAU_EXTRA = {
    Case.SPLIT_REAL: 0,
    Case.SPLIT_COMPLEX: 0,
    Case.COMPLEX_COMPLEX: 0,
    Case.REAL_QUATERNIONIC: 2,
    Case.RC_ID: 1,
    Case.RC_CONJ: 1,
}


@dataclass(frozen=True)
class TYData:
    case: Case
    group: GradedGroup
    chi: Bicharacter
    tau_sign: int
    n: int = field(default_factory=default_modulus)
    # exponent of the lambda used to normalize chi(w, w) to 1, for audit
    lambda_exp: int = 0

    def __post_init__(self):
        if self.group.dim != self.chi.dim:
            raise StructuralError("group and bicharacter dimensions differ")
        if self.tau_sign not in (1, -1):
            raise DomainError("tau_sign must be +1 or -1")
        if self.n < 16:
            # sigma_3(1) can need 16th roots of unity in the split complex case
            if self.case is Case.SPLIT_COMPLEX:
                raise ModulusTooSmall("split complex data needs N >= 16")
            if self.n < 8:
                raise ModulusTooSmall("N >= 8 is required for sqrt(2)")

    @property
    def dim(self) -> int:
        return self.chi.dim

    @property
    def order(self) -> int:
        return self.chi.order

    @property
    def g(self) -> int:
        """0 when the Galois action of w on End(m) is trivial, 1 for conjugation."""
        return 1 if self.case is Case.RC_CONJ else 0

    @property
    def field(self) -> Field:
        return Field.COMPLEX if self.case is Case.SPLIT_COMPLEX else Field.REAL

    @cached_property
    def tau(self) -> CycScalar:
        return CycScalar.inv_sqrt_pow2(self.dim + _TAU_EXTRA[self.case], self.n) * self.tau_sign

    @cached_property
    def sum_scale(self) -> CycScalar:
        """Coefficient in front of the m-m-m sums: tau, -2 tau or 2 tau."""
        if self.case is Case.REAL_QUATERNIONIC:
            return self.tau * -2
        if self.case.is_real_complex:
            return self.tau * 2
        return self.tau

    def degree(self, x: int) -> int:
        return self.group.degree(x)

    @cached_property
    def a0_basis(self) -> list[int]:
        return self.group.kernel_basis()

    @cached_property
    def a0_chi(self) -> Bicharacter:
        return self.chi.restrict(self.a0_basis)

    def to_json(self) -> dict:
        out = {"case": self.case.value, "group": self.group.to_json(),
               "chi": self.chi.to_json(), "tau_sign": self.tau_sign}
        if self.lambda_exp:
            out["lambda_exponent"] = self.lambda_exp
        return out

    @classmethod
    def from_json(cls, obj: dict, n: int | None = None) -> TYData:
        try:
            case = parse_case(obj["case"])
            chi = Bicharacter.from_json(obj["chi"])
            group = GradedGroup.from_json(obj["group"]) if "group" in obj else GradedGroup(chi.dim)
            tau = int(obj["tau_sign"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed TYData JSON: {exc}") from exc
        return cls(case, group, chi, tau, n or default_modulus(), int(obj.get("lambda_exponent", 0)))

    def checksum(self) -> str:
        blob = json.dumps({"data": self.to_json(), "N": self.n}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()


def _split(case: Case, chi: Bicharacter, tau_sign: int, n: int | None) -> TYData:
    return TYData(case, GradedGroup(chi.dim), chi, tau_sign, n or default_modulus())


def split_real(h_blocks: int, tau_sign: int, n: int | None = None) -> TYData:
    return _split(Case.SPLIT_REAL, f2.standard_hyperbolic(h_blocks), tau_sign, n)


def real_quaternionic(h_blocks: int, tau_sign: int, n: int | None = None) -> TYData:
    return _split(Case.REAL_QUATERNIONIC, f2.standard_hyperbolic(h_blocks), tau_sign, n)


def complex_complex(h_blocks: int, tau_sign: int, n: int | None = None,
                    chi: Bicharacter | None = None) -> TYData:
    chi = chi if chi is not None else f2.standard_hyperbolic(h_blocks)
    return _split(Case.COMPLEX_COMPLEX, chi, tau_sign, n)


def split_complex(chi: Bicharacter, tau_sign: int, n: int | None = None) -> TYData:
    return _split(Case.SPLIT_COMPLEX, chi, tau_sign, n)


def split_complex_normal(h_blocks: int, l_blocks: int, tau_sign: int,
                         n: int | None = None) -> TYData:
    return split_complex(f2.normal_form(h_blocks, l_blocks), tau_sign, n)


def real_complex(h_blocks: int, conj: bool, tau_sign: int, n: int | None = None,
                 chi_ww: int = 1) -> TYData:
    """A = K_4^n x <w> with grading bit on w and chi = h^n + [chi(w, w)].

    For g = id a raw chi(w, w) = -1 is normalized to 1 by the rescaling
    lambda^4 = chi(w, w)^{-1}; the lambda used (zeta_8) is recorded.  For
    g = conj the raw value is kept so that validate can report it.
    """
    n = n or default_modulus()
    dim = 2 * h_blocks + 1
    w = 1 << (2 * h_blocks)
    lam = 0
    if chi_ww == -1 and not conj:
        chi_ww, lam = 1, n // 8
    base = f2.standard_hyperbolic(h_blocks)
    chi = base.direct_sum(Bicharacter(1, (1 if chi_ww == -1 else 0,)))
    case = Case.RC_CONJ if conj else Case.RC_ID
    return TYData(case, GradedGroup(dim, w, w), chi, tau_sign, n, lam)


def make(case: Case, h_blocks: int, tau_sign: int, n: int | None = None,
         l_blocks: int = 0) -> TYData:
    """Standard instance of a case with h_blocks hyperbolic planes."""
    case = Case(case)
    if l_blocks and case is not Case.SPLIT_COMPLEX:
        raise DomainError("l-blocks only occur in the split complex case")
    if case is Case.SPLIT_REAL:
        return split_real(h_blocks, tau_sign, n)
    if case is Case.REAL_QUATERNIONIC:
        return real_quaternionic(h_blocks, tau_sign, n)
    if case is Case.RC_ID:
        return real_complex(h_blocks, False, tau_sign, n)
    if case is Case.RC_CONJ:
        return real_complex(h_blocks, True, tau_sign, n)
    if case is Case.SPLIT_COMPLEX:
        return split_complex_normal(h_blocks, l_blocks, tau_sign, n)
    return complex_complex(h_blocks, tau_sign, n)


def validate(data: TYData) -> list[str]:
    """Violated hypotheses, as short tagged messages; empty when valid."""
    out: list[str] = []
    chi = data.chi
    if not chi.is_symmetric:
        out.append("symmetry: chi is not symmetric")
    if data.case.is_real_complex:
        grading = data.group.grading
        if not grading:
            out.append("grading: real/complex data needs a nontrivial grading")
            return out
        if not data.a0_chi.is_nondegenerate:
            out.append("nondegeneracy: chi restricted to A_0 is degenerate")
            return out
        w = data.group.w
        canon = f2.canonical_w(data.group, chi)
        if w is None or w != canon:
            out.append(f"canonical-w: w must be {f2.format_bits(canon, data.dim)}")
        if any(chi.pair(a, a) for a in data.a0_basis):
            out.append("self-pairing: chi(a, a) = -1 for some a in A_0")
        if chi.pair(canon, canon):
            out.append("self-pairing: chi(w, w) = -1")
    else:
        if data.group.grading:
            out.append("grading: only real/complex data is graded")
        if not chi.is_nondegenerate:
            out.append("nondegeneracy: chi is degenerate")
    if data.case in (Case.SPLIT_REAL, Case.REAL_QUATERNIONIC) and data.lambda_exp:
        out.append("normalization: lambda is only used for real/complex data")
    # tau^2 * factor * |A| == 1
    factor = 1 << (data.dim + _TAU_EXTRA[data.case])
    if data.tau * data.tau * factor != CycScalar.one(data.n):
        out.append("tau: magnitude does not match the case")
    return out


def associator_scalar(data: TYData, triple: tuple, component=None) -> CycScalar:
    """Coefficient of one component of the associator on a triple of simples.

    Simples are group elements (ints) or ``"m"``.  Components: none for
    triples with at most one m other than (m, a, m); the summand b for
    (m, a, m); the pair (a, b) for (m, m, m).
    """
    if len(triple) != 3:
        raise DomainError("need a triple of simples")
    x, y, z = triple
    for s in triple:
        if s != M and not (isinstance(s, int) and 0 <= s < data.order):
            raise DomainError(f"{s!r} is not a simple object")
    unit = CycScalar.one(data.n)
    sign = lambda e: unit if e == 0 else -unit  # noqa: E731
    if (x, y, z) == (M, M, M):
        if not (isinstance(component, tuple) and len(component) == 2):
            raise DomainError("(m, m, m) needs a component (a, b)")
        a, b = component
        _check_elem(data, a)
        _check_elem(data, b)
        return data.tau * sign(data.chi.pair(a, b))
    if x == M and z == M and y != M:
        if not isinstance(component, int):
            raise DomainError("(m, a, m) needs a summand index b")
        _check_elem(data, component)
        return sign(data.chi.pair(y, component))
    if component is not None:
        raise DomainError("this triple has a single component")
    if y == M and x != M and z != M:
        return sign(data.chi.pair(x, z))
    return unit


def _check_elem(data: TYData, a) -> None:
    if not (isinstance(a, int) and 0 <= a < data.order):
        raise DomainError(f"component index {a!r} is not a group element")
