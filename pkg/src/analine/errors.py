"""Exception types shared across the library."""

from __future__ import annotations


class AnalineError(Exception):
    """Base class for library errors."""


class ParseError(AnalineError):
    """Literal text could not be parsed; carries a position when known."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class BackendMismatchError(AnalineError):
    """Two operands live in different numeric backends."""


class RadiusMismatchError(AnalineError):
    """Operands carry incompatible weight radii and cannot be coerced."""


class CapExceededError(AnalineError):
    """A truncation cap was exhausted without tail tracking enabled."""


class EvalDomainError(AnalineError):
    """Evaluation point outside the certified domain of a series."""


class DivisionPreconditionError(AnalineError):
    """Kernel precondition of the auxiliary-variable division failed.

    Carries the norm of the residual obtained by collapsing the element
    at the diagonal.
    """

    def __init__(self, residual_norm):
        self.residual_norm = residual_norm
        super().__init__(
            f"element is not in the kernel of the collapse map; "
            f"residual norm ~ {residual_norm.value:.6g}")


class SupportError(AnalineError):
    """Series support violates a ring-tag invariant."""


class UnitIdealError(AnalineError):
    """A family of polynomials fails to generate the unit ideal."""

    def __init__(self, message: str, gcd_witness=None):
        self.gcd_witness = gcd_witness
        super().__init__(message)


class NotInAdicSpectrumError(AnalineError):
    """A valuation exceeds 1 on a distinguished subring generator.

    Distinct from plain subset non-membership: the valuation is not a
    point of the adic spectrum at all.
    """

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"valuation exceeds 1 on generator {witness}")


class BoundaryUndecidedError(AnalineError):
    """A fast-path comparison fell inside the certified-width guard band."""


class ConfigError(AnalineError):
    """Invalid run configuration (bad flags, branch preconditions, ...)."""
