"""Renormalized leading-order vacuum sector of the quartic scalar field.

Everything here is expressed through the two finite observables: the
renormalized mass m_R and coupling g_R (equivalently eta = -4 pi^2 / g_R;
the stable branch has an infinitesimally negative bare coupling, so g_R < 0
and eta > 0).  The scaled curvature t = M^2(sigma)/m_R^2 solves a
transcendental gap equation; the effective potential is reported relative
to its (divergent, constant) minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from scipy.optimize import brentq

from .model_core import DomainError

FOUR_PI2 = 4.0 * math.pi**2
SIXTEEN_PI2 = 16.0 * math.pi**2

#: residual target for the gap equation
GAP_TOL = 1e-12


@dataclass(frozen=True)
class Phi4Params:
    m_R: float
    eta: float
    sigma: float = 0.0

    def __post_init__(self):
        if not self.m_R > 0:
            raise DomainError("renormalized mass must be positive")

    @property
    def g_R(self) -> float:
        if self.eta == 0.0:
            raise DomainError("eta = 0 corresponds to |g_R| -> infinity")
        return -FOUR_PI2 / self.eta

    @classmethod
    def from_g_R(cls, m_R: float, g_R: float, sigma: float = 0.0) -> "Phi4Params":
        if g_R == 0.0:
            raise DomainError("g_R = 0 has no finite eta")
        return cls(m_R=m_R, eta=-FOUR_PI2 / g_R, sigma=sigma)

    def at_sigma(self, sigma: float) -> "Phi4Params":
        return replace(self, sigma=sigma)


@dataclass(frozen=True)
class GapSolution:
    t: float
    converged: bool
    branch_note: str
    residual: float = 0.0


def sigma_domain(params: Phi4Params) -> float:
    """Largest admissible sigma^2: (m_R^2/16 pi^2)(e^-eta + eta - 1); >= 0."""
    eta = params.eta
    return (params.m_R**2 / SIXTEEN_PI2) * (math.exp(-eta) + eta - 1.0)


def _gap_residual(t: float, eta: float, rhs: float) -> float:
    return (1.0 - eta) * (t - 1.0) - rhs - t * math.log(t)


def solve_gap_t(params: Phi4Params) -> GapSolution:
    """Scaled curvature t(sigma) on the branch continuous from t(0) = 1.

    Solves (1 - eta)(t - 1) - (16 pi^2/m_R^2) sigma^2 = t ln t.  The branch
    connected to the symmetric point runs from t = 1 down (eta > 0) or up
    (eta < 0) to the turning point t* = e^-eta, which is reached exactly at
    the domain boundary sigma^2 = sigma^2_min (a double root).
    """
    eta = params.eta
    sigma2 = params.sigma**2
    if params.sigma != 0.0 and sigma2 > sigma_domain(params) * (1.0 + 1e-13):
        raise DomainError(
            f"sigma^2={sigma2:.6g} beyond the solvable domain "
            f"{sigma_domain(params):.6g} at eta={eta}")
    if sigma2 == 0.0:
        return GapSolution(t=1.0, converged=True, branch_note="symmetric point")

    rhs = SIXTEEN_PI2 * sigma2 / params.m_R**2
    t_star = math.exp(-eta)
    lo, hi = (t_star, 1.0) if eta > 0 else (1.0, t_star)
    f_lo = _gap_residual(lo, eta, rhs)
    f_hi = _gap_residual(hi, eta, rhs)
    note = "continuous-from-symmetric branch"
    if f_lo == 0.0 or f_hi == 0.0:
        t = lo if f_lo == 0.0 else hi
    elif f_lo * f_hi > 0:
        # numerically at the tangency: the extremum barely misses the axis
        if abs(f_lo) < 1e-10 * max(1.0, rhs):
            t, note = lo, "tangency (double root) at the domain boundary"
        else:
            raise DomainError("gap equation has no root on the physical branch")
    else:
        t = brentq(_gap_residual, lo, hi, args=(eta, rhs), xtol=1e-15, rtol=8.9e-16)
    res = _gap_residual(t, eta, rhs)
    if abs(res) > GAP_TOL * max(1.0, abs(rhs)):
        raise DomainError(f"gap residual {res:.3e} above tolerance")
    if abs(t - t_star) < 1e-8 * max(1.0, t_star):
        note = "tangency (double root) at the domain boundary"
    return GapSolution(t=t, converged=True, branch_note=note, residual=res)


def effective_potential(params: Phi4Params) -> float:
    """Vacuum energy density relative to its minimum, U0(sigma) - U_min.

    (1/4) t m_R^2 sigma^2 - (m_R^4/128 pi^2)(t-1)^2 - (m_R^4/64 pi^2)(t-1) eta
    with t from the gap equation.  Vanishes at sigma = 0 and curves upward
    with d^2U/dsigma^2 = m_R^2 there.
    """
    t = solve_gap_t(params).t
    m2 = params.m_R**2
    m4 = m2 * m2
    return (0.25 * t * m2 * params.sigma**2
            - (m4 / (32.0 * FOUR_PI2)) * (t - 1.0) ** 2
            - (m4 / (16.0 * FOUR_PI2)) * (t - 1.0) * params.eta)


def condensate_ratio(k: float, m_R: float) -> float:
    """Normalized momentum profile of the vacuum pair condensate.

    rho(k) = (1 + k^2/m_R^2)^(-1/2): unity at k = 0, ~ m_R/k at large k.
    """
    if m_R <= 0:
        raise DomainError("renormalized mass must be positive")
    if k < 0:
        raise DomainError("momentum magnitude must be non-negative")
    return 1.0 / math.sqrt(1.0 + (k / m_R) ** 2)


def scan_sigma(params: Phi4Params, grid: int = 100,
               sigma_max: Optional[float] = None) -> List[Tuple[float, float, float]]:
    """Rows (sigma, t, U0_rel) over [0, sigma_max], truncated to the domain."""
    if grid < 2:
        raise DomainError("grid must have at least 2 points")
    bound = math.sqrt(sigma_domain(params)) if sigma_domain(params) > 0 else 0.0
    top = bound if sigma_max is None else min(sigma_max, bound)
    rows = []
    for i in range(grid):
        s = top * i / (grid - 1)
        p = params.at_sigma(s)
        t = solve_gap_t(p).t
        rows.append((s, t, effective_potential(p)))
    return rows
