"""Exception hierarchy shared by every module."""


class TybraidError(Exception):
    """Base class for library errors."""


class StructuralError(TybraidError):
    """Operands are not compatible (e.g. different cyclotomic moduli)."""


class DomainError(TybraidError, ValueError):
    """Input lies outside the domain an operation is defined on."""


class CapacityError(TybraidError):
    """The requested size exceeds a search or enumeration bound."""


class ModulusTooSmall(DomainError):
    """A required root of unity does not exist at the current modulus."""
