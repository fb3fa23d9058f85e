"""Summing the divergent mean-field series.

Two routes to the total correction:

* :func:`optimal_truncation` - cut the asymptotic series at its smallest
  term (the classical stopping rule, with a small slack so that a term a
  few percent larger than its predecessor is still kept - this matches the
  published benchmark truncations);
* :func:`borel_sum` - divide out the factorial growth, continue the
  transformed series past its radius of convergence with the square-root
  conformal map of the cut plane, and integrate the Laplace representation
  term by term.

The leading singularity of the transformed series (its distance r_c and
exponent p) is estimated from consecutive-coefficient ratios; for a pure
algebraic branch point the estimators are exact at every order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import mpmath
from scipy.integrate import quad

from .model_core import ConvergenceError, DomainError, EstimationError
from .recursion import PerturbationSeries

#: default integration cutoff 1 - epsilon at the image of u = +infinity
DEFAULT_EPSILON = 1e-3

#: |E_{k+1}| may exceed |E_k| by this relative slack without ending the
#: descent scan (benchmark truncations keep near-flat neighbours)
MOT_SLACK = 0.05


@dataclass(frozen=True)
class MotResult:
    N0: int
    E_mot: float
    #: no initial descent at all (series grows from the first kept term)
    grew_immediately: bool = False


def optimal_truncation(series: PerturbationSeries, slack: float = MOT_SLACK) -> MotResult:
    """Partial sum of the series up to its term of least magnitude.

    Scans from the first nonvanishing correction (k = 2; the first-order
    term is identically zero) and keeps extending while the magnitudes keep
    descending, allowing an uptick of at most ``slack`` relative.  Returns
    the truncation index and the partial sum of all terms through it.
    """
    coeffs = series.coefficient_floats()
    if len(coeffs) < 5:
        raise DomainError("series too short for optimal truncation (need order >= 4)")
    mags = [abs(c) for c in coeffs]
    k = 2
    while k + 1 < len(coeffs) and mags[k + 1] <= (1.0 + slack) * mags[k]:
        k += 1
    grew = mags[3] > mags[2] and k == 2
    return MotResult(N0=k, E_mot=math.fsum(coeffs[: k + 1]), grew_immediately=grew)


def borel_coefficients(series: PerturbationSeries, alpha: float,
                       n_terms: Optional[int] = None) -> List[float]:
    """Transformed coefficients b_j = E_j / Gamma(alpha j + 1), j >= 0.

    With alpha matched to the large-order growth the b_j decay
    geometrically; b_0 slot is kept as 0.0 so indices align with j.
    """
    if alpha <= 0:
        raise DomainError("growth index alpha must be positive")
    n = series.order if n_terms is None else min(n_terms, series.order)
    out = [0.0]
    with mpmath.workdps(40):
        for j in range(1, n + 1):
            Ej = series.coefficients[j]
            if isinstance(Ej, mpmath.mpf):
                num = Ej
            else:
                num = mpmath.mpf(Ej.numerator) / Ej.denominator
            out.append(float(num / mpmath.gamma(alpha * j + 1)))
    return out


@dataclass(frozen=True)
class SingularityEstimate:
    r_c: float
    p_exp: float
    r_c_spread: float
    p_spread: float


def estimate_singularity(b: Sequence[float], window: int = 8) -> SingularityEstimate:
    """Leading-singularity location and exponent from late-term ratios.

    For b_j drawn from (1 + u/r_c)^p the identities

        r_c = b_j b_{j-1} / (j b_j^2 - (j+1) b_{j+1} b_{j-1})
        p   = (j^2 b_j^2 - (j^2-1) b_{j-1} b_{j+1}) / (j b_j^2 - (j+1) b_{j+1} b_{j-1})

    hold exactly at every j; for real series they converge as j grows.  The
    returned values average the last ``window`` usable orders, with the
    spread across the window reported for diagnostics.
    """
    if window < 5:
        raise DomainError("window must be >= 5")
    if len(b) < window + 3:
        raise DomainError(f"need at least {window + 3} transformed coefficients")
    j_top = len(b) - 2
    rcs, ps = [], []
    for j in range(j_top - window + 1, j_top + 1):
        den = j * b[j] ** 2 - (j + 1) * b[j + 1] * b[j - 1]
        scale = abs(j * b[j] ** 2) + abs((j + 1) * b[j + 1] * b[j - 1])
        if not math.isfinite(den) or abs(den) <= 1e-12 * scale:
            continue
        rcs.append(b[j] * b[j - 1] / den)
        ps.append((j * j * b[j] ** 2 - (j * j - 1) * b[j - 1] * b[j + 1]) / den)
    if not rcs:
        raise EstimationError("ratio denominators vanished across the window")
    r_c = math.fsum(rcs) / len(rcs)
    p = math.fsum(ps) / len(ps)
    return SingularityEstimate(r_c, p, max(rcs) - min(rcs), max(ps) - min(ps))


def conformal_map(u: float, s: float) -> float:
    """Map the cut u-plane into the unit disk: z = (sqrt(1+su)-1)/(sqrt(1+su)+1).

    ``s`` is the inverse singularity distance 1/r_c; the branch point
    u = -r_c goes to z = -1 and u = +infinity to z = 1.
    """
    if s <= 0:
        raise DomainError("map parameter s = 1/r_c must be positive")
    if 1.0 + s * u <= 0.0:
        raise DomainError(f"u={u} lies on or across the branch cut")
    root = math.sqrt(1.0 + s * u)
    return (root - 1.0) / (root + 1.0)


def inverse_map(z: float, s: float) -> float:
    """Inverse of :func:`conformal_map`: u = (4/s) z / (1-z)^2 for |z| < 1."""
    if s <= 0:
        raise DomainError("map parameter s = 1/r_c must be positive")
    if abs(z) >= 1.0:
        raise DomainError(f"|z|={abs(z)} outside the open unit disk")
    return (4.0 / s) * z / (1.0 - z) ** 2


def reexpand_borel(b: Sequence[float], N: int) -> List[float]:
    """Re-expansion coefficients B_k = sum_n b_n (n+k-1)! / ((k-n)! (2n-1)!).

    This is the pure combinatorial kernel of substituting the inverse map
    into a power series: z^n/(1-z)^(2n) = sum_k C(n+k-1, k-n) z^k.  The
    caller is responsible for any radius scaling of the b_n (u carries a
    factor 4 r_c per power once mapped).  Returns [B_1..B_N].
    """
    if N > len(b) - 1:
        raise DomainError(f"need {N} coefficients, got {len(b) - 1}")
    out = []
    for k in range(1, N + 1):
        acc = mpmath.mpf(0)
        for n in range(1, k + 1):
            if b[n] == 0.0:
                continue
            acc += mpmath.mpf(b[n]) * (mpmath.factorial(n + k - 1)
                                       / (mpmath.factorial(k - n) * mpmath.factorial(2 * n - 1)))
        out.append(float(acc))
    return out


@dataclass(frozen=True)
class BorelAnalysis:
    alpha: float
    r_c: float
    p_exp: Optional[float]
    b: List[float]
    B: List[float]
    N_c: int
    epsilon: float
    delta_E: float
    E_tot: float


def borel_sum(series: PerturbationSeries, alpha: float, r_c: float,
              N_c: int, epsilon: float = DEFAULT_EPSILON,
              p_exp: Optional[float] = None) -> BorelAnalysis:
    """Laplace-integral sum of the transformed series, conformally continued.

    The correction is

        dE = int_0^(1-eps) dz (gamma rho) (1+z)/(1-z)^3 (rho z/(1-z)^2)^(gamma-1)
             exp[-(rho z/(1-z)^2)^gamma] B_N(z)

    with gamma = 1/alpha, rho = 4 r_c, and B_N the order-N re-expansion of
    the transformed series in the mapped variable (the per-power factor
    rho^n is folded into the b_n before re-expanding).  E_tot adds the
    leading-order term of the series.
    """
    if N_c < 2:
        raise DomainError("need at least two transformed coefficients")
    if not 0 < epsilon < 0.5:
        raise DomainError("epsilon must lie in (0, 1/2)")
    if r_c <= 0:
        raise DomainError("singularity distance r_c must be positive")
    gamma = 1.0 / alpha
    rho = 4.0 * r_c
    # the mapped coefficients alternate and can be individually huge while
    # summing to something small; the cancellation depth grows like
    # N_c log10(4 rho), so the transformed coefficients are taken from the
    # series at extended precision and everything downstream stays there
    work_dps = 40 + int(1.3 * N_c * math.log10(max(rho, 2.0) + 2.0))
    with mpmath.workdps(work_dps):
        rho_mp = mpmath.mpf(rho)
        b_scaled = [mpmath.mpf(0)]
        b = [0.0]
        for nn in range(1, N_c + 1):
            En = series.coefficients[nn]
            if isinstance(En, mpmath.mpf):
                bn = En / mpmath.gamma(alpha * nn + 1)
            else:
                bn = (mpmath.mpf(En.numerator) / En.denominator) / mpmath.gamma(alpha * nn + 1)
            b.append(float(bn))
            b_scaled.append(bn * rho_mp**nn)
        B_mp = []
        for k in range(1, N_c + 1):
            acc = mpmath.mpf(0)
            for nn in range(1, k + 1):
                acc += b_scaled[nn] * (mpmath.factorial(nn + k - 1)
                                       / (mpmath.factorial(k - nn) * mpmath.factorial(2 * nn - 1)))
            B_mp.append(acc)
    B = [float(v) for v in B_mp]

    def bbar(z: float) -> float:
        with mpmath.workdps(work_dps):
            acc = mpmath.mpf(0)
            for k in range(N_c, 0, -1):
                acc = (acc + B_mp[k - 1]) * z
            return float(acc)

    def integrand(z: float) -> float:
        u = rho * z / (1.0 - z) ** 2
        try:
            damp = math.exp(-(u**gamma))
        except OverflowError:
            return 0.0
        pref = gamma * rho * (1.0 + z) / (1.0 - z) ** 3
        if gamma != 1.0:
            if u == 0.0:
                return 0.0
            pref *= u ** (gamma - 1.0)
        return pref * damp * bbar(z)

    upper = 1.0 - epsilon
    breaks = [zz for zz in (0.5, 0.9, 0.99, 0.999) if zz < upper]
    delta, err = quad(integrand, 0.0, upper, epsabs=1e-11, epsrel=1e-11,
                      limit=500, points=breaks or None)
    if not math.isfinite(delta) or err > 1e-6 * max(1.0, abs(delta)):
        raise ConvergenceError(f"quadrature failed: value={delta}, err={err}")

    E0 = float(series.coefficients[0])
    return BorelAnalysis(alpha=alpha, r_c=r_c, p_exp=p_exp, b=b, B=B, N_c=N_c,
                         epsilon=epsilon, delta_E=delta, E_tot=E0 + delta)


def borel_sum_auto(series: PerturbationSeries, alpha: float, N_c: int,
                   epsilon: float = DEFAULT_EPSILON, window: int = 8) -> BorelAnalysis:
    """borel_sum with r_c (and p) self-estimated from the series tail."""
    b = borel_coefficients(series, alpha)
    est = estimate_singularity(b, window=window)
    out = borel_sum(series, alpha, est.r_c, N_c, epsilon, p_exp=est.p_exp)
    return out
