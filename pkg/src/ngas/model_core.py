"""Shared domain types and exact spectral-index arithmetic.

Every oscillator model is described by an :class:`OscillatorSpec`; the
self-consistent leading-order solution is carried around as an
:class:`LOResult`.  Quantities derived from the level index are kept as
exact rationals so that downstream recursions can run in exact arithmetic
whenever the model inputs are rational.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

import mpmath

NumericValue = Union[Fraction, mpmath.mpf]

#: significant decimal digits used by the high-precision fallback
DEFAULT_PRECISION = 50


class NgasError(Exception):
    """Base class for errors raised by this package."""


class DomainError(NgasError):
    """Input outside the physical/mathematical domain of an operation."""


class PhaseError(NgasError):
    """Requested double-well phase branch does not exist at this coupling."""


class ConvergenceError(NgasError):
    """An iterative computation failed to reach its accuracy target."""


class EstimationError(NgasError):
    """Large-order singularity estimation broke down."""


class OscKind(enum.Enum):
    QAHO = "QAHO"  # quartic anharmonic: p^2/2 + x^2/2 + g x^4
    QDWO = "QDWO"  # quartic double well: p^2/2 - x^2/2 + g x^4
    SAHO = "SAHO"  # sextic anharmonic: p^2/2 + x^2/2 + g x^6
    OAHO = "OAHO"  # octic anharmonic: p^2/2 + x^2/2 + g x^8
    SHO = "SHO"    # plain harmonic oscillator


class Phase(enum.Enum):
    SYMMETRIC = "symmetric"
    SR = "symmetry-restored"
    SSB = "symmetry-broken"


#: power of x in the anharmonic term, per model (2K)
ANHARMONICITY_K = {OscKind.QAHO: 2, OscKind.QDWO: 2, OscKind.SAHO: 3, OscKind.OAHO: 4}


@dataclass(frozen=True)
class OscillatorSpec:
    """Which oscillator, at which coupling, for which level index."""

    kind: OscKind
    g: float
    n: int = 0

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise DomainError(f"level index must be a non-negative integer, got {self.n}")
        if self.kind is OscKind.QDWO:
            if not self.g > 0:
                raise DomainError("double-well oscillator requires g > 0 (no g -> 0 limit)")
        elif self.kind is OscKind.SHO:
            object.__setattr__(self, "g", 0.0)
        else:
            if self.g < 0:
                raise DomainError(f"coupling must be non-negative, got {self.g}")

    @property
    def xi(self) -> Fraction:
        return xi_of(self.n)


@dataclass(frozen=True)
class SpectralIndex:
    """Exact half-integer level parameter n + 1/2."""

    xi: Fraction

    def __post_init__(self):
        if self.xi < Fraction(1, 2):
            raise DomainError(f"spectral index must be >= 1/2, got {self.xi}")


def xi_of(n: int) -> Fraction:
    """Level parameter n + 1/2 as an exact rational."""
    if n < 0:
        raise DomainError(f"level index must be non-negative, got {n}")
    return Fraction(2 * n + 1, 2)


def f_xi(xi: Fraction) -> Fraction:
    """Combination xi + 1/(4 xi) driving the quartic gap equations.

    By AM-GM this is >= 1 for xi >= 1/2, with equality only at the ground
    state.
    """
    xi = Fraction(xi)
    if xi < Fraction(1, 2):
        raise DomainError(f"spectral index must be >= 1/2, got {xi}")
    return xi + Fraction(1, 4) / xi


def h_xi(xi: Fraction) -> Fraction:
    """Combination xi^3 + (7/2) xi + 9/(16 xi) driving the octic gap equation."""
    xi = Fraction(xi)
    return xi**3 + Fraction(7, 2) * xi + Fraction(9, 16) / xi


def ssb_xi_coeff(xi: Fraction) -> Fraction:
    """Combination 5 xi - 1/(4 xi) appearing in the broken-phase gap equation."""
    xi = Fraction(xi)
    return 5 * xi - Fraction(1, 4) / xi


@dataclass(frozen=True)
class LOResult:
    """Self-consistent leading-order solution of one oscillator level.

    ``gap_residual`` is the governing gap polynomial evaluated at ``omega``
    (scaled checks live with the solvers); ``sigma`` is nonzero only in the
    broken phase of the double well.
    """

    omega: float
    h0: float
    sigma: float
    phase: Phase
    E0: float
    gap_residual: float

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"frequency must be positive, got {self.omega}")


def well_depth_shift(spec: OscillatorSpec) -> float:
    """Energy offset from the classical potential minimum.

    Zero for single-well models; 1/(16 g) for the double well, whose
    minima sit at depth -1/(16 g).  Adding this converts a raw eigenvalue
    into the "measured from the bottom of the well" convention used by the
    benchmark tables.
    """
    if spec.kind is OscKind.QDWO:
        return 1.0 / (16.0 * spec.g)
    return 0.0


def is_rational(x) -> bool:
    """True when x carries an exact rational value (int/Fraction)."""
    return isinstance(x, Rational)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    f = Fraction(x)
    if f != x:
        raise DomainError(f"{x!r} has no exact rational representation")
    return f


def to_float(x) -> float:
    """Collapse any NumericValue to a double."""
    return float(x)


def mp_workdps(digits: int = DEFAULT_PRECISION):
    """Context manager pinning mpmath precision for a computation."""
    return mpmath.workdps(digits)
