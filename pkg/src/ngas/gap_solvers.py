"""Positive-root solvers for the self-consistent gap polynomials.

Each oscillator model turns the variational frequency condition into a low
order polynomial in omega.  The quartic models admit closed forms (with a
complex-intermediate branch when the square root turns negative); the octic
quintic is bracketed and polished numerically.  Every solver finishes with
Newton polish so the returned root satisfies its polynomial to ~1e-15
relative.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .model_core import (
    DomainError,
    PhaseError,
    f_xi,
    h_xi,
    ssb_xi_coeff,
)

#: relative residual ceiling guaranteed by every solver
RESIDUAL_TOL = 1e-12

#: |g - g_c| / g_c below which the broken phase is flagged as boundary
BOUNDARY_TOL = 1e-10


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def solve_cubic_paper(P: float, Q: float) -> float:
    """Real root of x^3 - 3 P x - 2 Q = 0 for P, Q > 0.

    Uses the radical form Q^(1/3) [ (1 + sqrt(1 - P^3/Q^2))^(1/3)
    + (1 - sqrt(1 - P^3/Q^2))^(1/3) ].  When P^3 > Q^2 the two cube roots
    are complex conjugates and the sum is taken through complex arithmetic
    (it is real by conjugacy).
    """
    if not (math.isfinite(P) and math.isfinite(Q)):
        raise DomainError("cubic coefficients must be finite")
    if Q == 0.0:
        return math.sqrt(3.0 * P) if P > 0 else 0.0
    disc = 1.0 - P**3 / Q**2
    if disc >= 0.0:
        s = math.sqrt(disc)
        x = _cbrt(Q) * (_cbrt(1.0 + s) + _cbrt(1.0 - s))
    else:
        w = complex(1.0, math.sqrt(-disc))
        x = (_cbrt(Q) * (w ** (1.0 / 3.0) + w.conjugate() ** (1.0 / 3.0))).real
    for _ in range(3):
        f = x**3 - 3.0 * P * x - 2.0 * Q
        df = 3.0 * x**2 - 3.0 * P
        if df != 0.0:
            x -= f / df
    _check_residual(x**3 - 3.0 * P * x - 2.0 * Q, Q)
    return x


def solve_cubic_plus(P: float, Q: float) -> float:
    """Real root of x^3 + 3 P x - 2 Q = 0 for P > 0, Q > 0.

    Companion branch with a single real root:
    Q^(1/3) [ (sqrt(1 + P^3/Q^2) + 1)^(1/3) - (sqrt(1 + P^3/Q^2) - 1)^(1/3) ].
    """
    if not (math.isfinite(P) and math.isfinite(Q)):
        raise DomainError("cubic coefficients must be finite")
    if Q <= 0:
        raise DomainError("positive-root branch requires Q > 0")
    s = math.sqrt(1.0 + P**3 / Q**2)
    x = _cbrt(Q) * (_cbrt(s + 1.0) - _cbrt(s - 1.0))
    for _ in range(3):
        f = x**3 + 3.0 * P * x - 2.0 * Q
        x -= f / (3.0 * x**2 + 3.0 * P)
    _check_residual(x**3 + 3.0 * P * x - 2.0 * Q, Q)
    return x


def _check_residual(res: float, scale: float):
    if abs(res) > RESIDUAL_TOL * max(1.0, abs(2.0 * scale)):
        raise ConvergenceWarning(res)


class ConvergenceWarning(DomainError):
    """Closed form failed to reach the residual target (never expected)."""


def qaho_omega(g: float, xi: Fraction) -> float:
    """Positive root of omega^3 - omega - 6 g f(xi) = 0.

    Non-analytic in g at the origin (third-order branch point) but tends to
    the free frequency 1 as g -> 0.
    """
    if g < 0:
        raise DomainError(f"coupling must be non-negative, got {g}")
    if g == 0:
        return 1.0
    return solve_cubic_paper(1.0 / 3.0, 3.0 * g * float(f_xi(xi)))


def qdwo_sr_omega(g: float, xi: Fraction) -> float:
    """Positive root of omega^3 + omega - 6 g f(xi) = 0 (restored phase)."""
    if g <= 0:
        raise DomainError(f"double-well coupling must be positive, got {g}")
    return solve_cubic_plus(1.0 / 3.0, 3.0 * g * float(f_xi(xi)))


def qdwo_critical_coupling(xi: Fraction) -> float:
    """Coupling separating the broken (g below) and restored phases.

    Closed form (2/3)^(3/2) / (3 (5 xi - 1/(4 xi))); this is exactly the
    largest coupling at which the broken-phase cubic still has positive
    roots.  Evaluates to ~0.090722 for the ground state.
    """
    denom = 3.0 * float(ssb_xi_coeff(xi))
    if denom <= 0:
        return 0.0
    return (2.0 / 3.0) ** 1.5 / denom


def qdwo_is_boundary(g: float, xi: Fraction) -> bool:
    """True when g sits on the phase boundary within tolerance."""
    gc = qdwo_critical_coupling(xi)
    return gc > 0 and abs(g - gc) <= BOUNDARY_TOL * max(gc, 1.0)


def qdwo_ssb_omega(g: float, xi: Fraction) -> float:
    """Largest positive root of omega^3 - 2 omega + 6 g (5 xi - 1/(4 xi)) = 0.

    Valid for 0 < g <= g_c(xi); this is the root connected to the
    double-well bottom frequency sqrt(2) as g -> 0.  The admissibility of
    the broken phase (sigma^2 > 0) is verified before returning.

    Raises PhaseError when no admissible root exists (caller must use the
    restored branch).
    """
    if g <= 0:
        raise DomainError(f"double-well coupling must be positive, got {g}")
    B = float(ssb_xi_coeff(xi))
    gc = qdwo_critical_coupling(xi)
    if gc <= 0 or g > gc * (1.0 + BOUNDARY_TOL):
        raise PhaseError(f"no broken-phase solution at g={g} (g_c={gc:.6g})")
    P = 2.0 / 3.0
    Q = -3.0 * g * B
    # three real roots; the largest is 2 sqrt(P) cos(theta/3)
    arg = min(1.0, max(-1.0, Q / P**1.5))
    omega = 2.0 * math.sqrt(P) * math.cos(math.acos(arg) / 3.0)
    for _ in range(3):
        f = omega**3 - 2.0 * omega + 6.0 * g * B
        df = 3.0 * omega**2 - 2.0
        if df != 0.0:
            omega -= f / df
    xif = float(Fraction(xi))
    sigma2 = (1.0 - 12.0 * g * xif / omega) / (4.0 * g)
    if sigma2 <= 0:
        raise PhaseError(f"broken-phase root at g={g} has sigma^2={sigma2} <= 0")
    return omega


def saho_omega(g: float, xi: Fraction) -> float:
    """Positive root of omega^4 - omega^2 - (15 g / 4)(5 + 4 xi^2) = 0."""
    if g < 0:
        raise DomainError(f"coupling must be non-negative, got {g}")
    xif = float(Fraction(xi))
    w2 = 0.5 * (1.0 + math.sqrt(1.0 + 15.0 * g * (5.0 + 4.0 * xif * xif)))
    return math.sqrt(w2)


def oaho_omega(g: float, xi: Fraction) -> float:
    """Positive root of omega^5 - omega^3 - 35 g h(xi) = 0, solved numerically.

    No closed form; bracketed bisection narrows the root before Newton
    polish to ~1e-14 relative.
    """
    if g < 0:
        raise DomainError(f"coupling must be non-negative, got {g}")
    if g == 0:
        return 1.0
    c = 35.0 * g * float(h_xi(xi))

    def poly(w):
        return w**5 - w**3 - c

    lo, hi = 1.0, 1.0 + c ** (1.0 / 5.0) + 1.0
    while poly(hi) < 0:
        hi *= 2.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if poly(mid) < 0:
            lo = mid
        else:
            hi = mid
    w = 0.5 * (lo + hi)
    for _ in range(4):
        f = poly(w)
        w -= f / (5.0 * w**4 - 3.0 * w**2)
    return w


def gap_polynomial(kind: str, omega: float, g: float, xi: Fraction, phase_ssb: bool = False) -> float:
    """Evaluate the model's gap polynomial at omega (raw residual)."""
    if kind == "QAHO":
        return omega**3 - omega - 6.0 * g * float(f_xi(xi))
    if kind == "QDWO":
        if phase_ssb:
            return omega**3 - 2.0 * omega + 6.0 * g * float(ssb_xi_coeff(xi))
        return omega**3 + omega - 6.0 * g * float(f_xi(xi))
    if kind == "SAHO":
        xif = float(Fraction(xi))
        return omega**4 - omega**2 - (15.0 * g / 4.0) * (5.0 + 4.0 * xif * xif)
    if kind == "OAHO":
        return omega**5 - omega**3 - 35.0 * g * float(h_xi(xi))
    if kind == "SHO":
        return omega - 1.0
    raise DomainError(f"unknown model {kind!r}")


def rationalize_omega(omega: float, residual, max_den: int = 10**6):
    """Try to promote a floating gap-equation root to an exact rational.

    ``residual`` maps a Fraction candidate to the exact polynomial value.
    Returns the verified Fraction, or None when the root is irrational
    (within the searched denominator range).
    """
    cand = Fraction(omega).limit_denominator(max_den)
    if cand > 0 and residual(cand) == 0:
        return cand
    return None
