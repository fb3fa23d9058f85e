"""Exact perturbation-coefficient engines.

Two families of recursions over position moments deliver the energy series
without any wavefunction algebra, by combining the hypervirial identity
(which couples neighbouring moments) with the energy-derivative theorem
(which closes the system order by order):

* ``sfpt_coefficients`` - the standard power series in the anharmonic
  coupling around the bare oscillator (Swenson-Danforth style);
* ``mfpt_coefficients_even`` / ``mfpt_coefficients_ssb`` - the mean-field
  series around the self-consistent oscillator, whose first-order term
  vanishes identically and whose bookkeeping parameter is the dummy
  strength multiplying the residual interaction.

Whenever the coupling and the self-consistent frequency are rational the
whole recursion runs in exact big-rational arithmetic and the coefficients
come out as exact fractions; otherwise a high-precision floating fallback
(mpmath, 50 digits by default) is used and flagged on the result.

The broken-phase recursion tracks all moments <x^j>, odd powers included.
Odd moments carry a single factor of the condensate shift sigma, so the
implementation stores <x^j> / sigma^(j mod 2); with sigma^2 rational this
keeps the broken-phase series exact as well.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import mpmath

from . import gap_solvers as gs
from .model_core import (
    ANHARMONICITY_K,
    DEFAULT_PRECISION,
    DomainError,
    NumericValue,
    OscKind,
    OscillatorSpec,
    Phase,
    PhaseError,
    f_xi,
    is_rational,
    ssb_xi_coeff,
    xi_of,
)

try:  # big-rational backend: ~5x faster than Fraction on deep recursions
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is an optional accelerator
    _mpq = Fraction

DEFAULT_MAX_ORDER = 200


class Scheme(enum.Enum):
    SFPT = "sfpt"
    MFPT = "mfpt"


@dataclass(frozen=True)
class PerturbationSeries:
    """Ordered energy-series coefficients E_0..E_P plus scheme metadata."""

    scheme: Scheme
    spec: Optional[OscillatorSpec]
    omega: NumericValue
    h0: NumericValue
    sigma: NumericValue
    K: int
    coefficients: List[NumericValue]
    exact: bool
    phase: Phase = Phase.SYMMETRIC

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def coefficient_floats(self) -> List[float]:
        return [float(c) for c in self.coefficients]

    def to_json(self) -> dict:
        """JSON-ready dict; exact fractions as numerator/denominator pairs."""
        coeffs = []
        for p, c in enumerate(self.coefficients):
            if self.exact:
                fr = Fraction(c)
                coeffs.append({"p": p, "numerator": str(fr.numerator),
                               "denominator": str(fr.denominator)})
            else:
                coeffs.append({"p": p, "value": mpmath.nstr(mpmath.mpf(c), 30)})
        return {
            "scheme": self.scheme.value,
            "model": self.spec.kind.value if self.spec else None,
            "g": float(self.spec.g) if self.spec else None,
            "n": self.spec.n if self.spec else None,
            "K": self.K,
            "phase": self.phase.value,
            "omega": float(self.omega),
            "exact": self.exact,
            "coefficients": coeffs,
        }


def sho_moments(j_max: int, xi: Fraction) -> List[Fraction]:
    """Even moments <x^(2j)> of a unit-frequency oscillator level, exact.

    Three-term recursion seeded by Y(0) = 1:
    Y(j+1) = ((2j+1)/(j+1)) xi Y(j) + (j (4j^2 - 1) / (4 (j+1))) Y(j-1).
    """
    if j_max < 0:
        raise DomainError("j_max must be non-negative")
    xi = Fraction(xi)
    Y = [Fraction(1)]
    for j in range(j_max):
        nxt = Fraction(2 * j + 1, j + 1) * xi * Y[j]
        if j >= 1:
            nxt += Fraction(j * (4 * j * j - 1), 4 * (j + 1)) * Y[j - 1]
        Y.append(nxt)
    return Y


# --------------------------------------------------------------------------
# standard small-coupling series
# --------------------------------------------------------------------------

def sfpt_coefficients(K: int, n: int, order: int) -> PerturbationSeries:
    """Exact coefficients of the coupling power series for x^(2K) anharmonicity.

    Moment expansion X(j, i) obeys

        X(j,i) = ((2j-1)/j) sum_m E_m X(j-1, i-m)
                 + ((j-1)(4(j-1)^2 - 1)/(4j)) X(j-2, i)
                 - ((2j+K-1)/j) X(j+K-1, i-1)

    closed by E_i = X(K, i-1)/i, with X(0,i) = delta(0,i).
    """
    if K not in (2, 3, 4):
        raise DomainError(f"anharmonicity index K={K} unsupported")
    if order < 1:
        raise DomainError("order must be >= 1")
    xi = _mpq(2 * n + 1, 2)
    E = [xi]
    rows: List[dict] = []
    for i in range(order):
        if i >= 1:
            E.append(rows[i - 1].get(K, _mpq(0)) / i)
        jmax = (K - 1) * (order - i) + 1
        row = {0: _mpq(1) if i == 0 else _mpq(0)}
        for j in range(1, jmax + 1):
            acc = _mpq(0)
            for m in range(0, i + 1):
                src = row if m == 0 else rows[i - m]
                xv = src.get(j - 1, _mpq(0))
                if xv:
                    acc += E[m] * xv
            val = _mpq(2 * j - 1, j) * acc
            if j >= 2:
                prev = row.get(j - 2, _mpq(0))
                if prev:
                    val += _mpq((j - 1) * (4 * (j - 1) ** 2 - 1), 4 * j) * prev
            if i >= 1:
                hi = rows[i - 1].get(j + K - 1, _mpq(0))
                if hi:
                    val -= _mpq(2 * j + K - 1, j) * hi
            row[j] = val
        rows.append(row)
    E.append(rows[order - 1].get(K, _mpq(0)) / order)
    coeffs = [Fraction(e) for e in E]
    return PerturbationSeries(
        scheme=Scheme.SFPT, spec=None, omega=Fraction(1), h0=Fraction(0),
        sigma=Fraction(0), K=K, coefficients=coeffs, exact=True)


# --------------------------------------------------------------------------
# mean-field series, parity-even models (quartic/sextic AHO, restored DW)
# --------------------------------------------------------------------------

class EvenModel(enum.Enum):
    AHO = "AHO"       # + x^2/2 well: residual subtracts (omega^2 - 1) x^2 / 2
    DWO_SR = "DWO_SR"  # - x^2/2 well: residual subtracts (omega^2 + 1) x^2 / 2


def exact_coupling(g) -> Optional[Fraction]:
    """Exact rational reading of a coupling, or None.

    Rational/int inputs pass through; floats qualify only when they are
    bit-exact simple rationals (so 1.0 or 0.5 do, 0.1 does not - pass
    Fraction("0.1") or a Fraction to force exactness).
    """
    if is_rational(g):
        return Fraction(g)
    if isinstance(g, float):
        fr = Fraction(g)
        if fr.limit_denominator(10**6) == fr:
            return fr
    return None


def _to_mpf(x) -> mpmath.mpf:
    """Full-precision mpf of a possibly-rational value."""
    if is_rational(x):
        fr = Fraction(x)
        return mpmath.mpf(fr.numerator) / fr.denominator
    if isinstance(x, float):
        ex = exact_coupling(x)
        if ex is not None:
            return mpmath.mpf(ex.numerator) / ex.denominator
    return mpmath.mpf(x)


def _newton_polish(x, resid, deriv, max_iter: int = 80):
    """Drive a root to working precision; tolerates the linear convergence
    that sets in when the derivative nearly vanishes (double-root regions)."""
    target = mpmath.mpf(10) ** (-(mpmath.mp.dps - 3))
    for _ in range(max_iter):
        d = deriv(x)
        if d == 0:
            break
        step = resid(x) / d
        x = x - step
        if abs(step) <= target * max(abs(x), mpmath.mpf(1)):
            break
    return x


def _lo_inputs_even(model: EvenModel, K: int, g, n: int, omega_hint=None):
    """(omega, h0, E0, exact) for the even-model mean-field recursion."""
    xi = xi_of(n)
    g_exact = exact_coupling(g)

    if model is EvenModel.AHO and K == 2:
        omega_f = gs.qaho_omega(float(g), xi)
        poly = lambda w, gr: w**3 - w - 6 * gr * f_xi(xi)
        dpoly = lambda w: 3 * w**2 - 1
    elif model is EvenModel.AHO and K == 3:
        omega_f = gs.saho_omega(float(g), xi)
        poly = lambda w, gr: w**4 - w**2 - Fraction(15, 4) * gr * (5 + 4 * xi**2)
        dpoly = lambda w: 4 * w**3 - 2 * w
    elif model is EvenModel.DWO_SR:
        omega_f = gs.qdwo_sr_omega(float(g), xi)
        poly = lambda w, gr: w**3 + w - 6 * gr * f_xi(xi)
        dpoly = lambda w: 3 * w**2 + 1
    else:
        raise DomainError(f"unsupported even model {model} with K={K}")

    exact = False
    omega = omega_f
    if g_exact is not None:
        if omega_hint is not None and is_rational(omega_hint):
            if poly(Fraction(omega_hint), g_exact) != 0:
                raise DomainError("supplied omega does not satisfy the gap equation")
            omega, exact = Fraction(omega_hint), True
        else:
            cand = gs.rationalize_omega(omega_f, lambda w: poly(w, g_exact))
            if cand is not None:
                omega, exact = cand, True

    if exact:
        omega = Fraction(omega)
        if model is EvenModel.AHO and K == 2:
            E0 = (xi / 4) * (3 * omega + 1 / omega)
        elif model is EvenModel.AHO:
            E0 = (xi / 3) * (2 * omega + 1 / omega)
        else:
            E0 = (xi / 4) * (3 * omega - 1 / omega)
        h0 = E0 - omega * xi
        return omega, h0, E0, True

    # polish the double-precision root to working precision
    omega = mpmath.mpf(omega_f)
    g_mp = (mpmath.mpf(float(g)) if g_exact is None
            else mpmath.mpf(g_exact.numerator) / g_exact.denominator)
    fxi = mpmath.mpf(f_xi(xi).numerator) / f_xi(xi).denominator
    xi2 = mpmath.mpf((5 + 4 * xi**2).numerator) / (5 + 4 * xi**2).denominator
    if model is EvenModel.AHO and K == 2:
        resid = lambda w: w**3 - w - 6 * g_mp * fxi
    elif model is EvenModel.AHO:
        resid = lambda w: w**4 - w**2 - mpmath.mpf(15) / 4 * g_mp * xi2
    else:
        resid = lambda w: w**3 + w - 6 * g_mp * fxi
    omega = _newton_polish(omega, resid, dpoly)
    xif = mpmath.mpf(xi.numerator) / xi.denominator
    if model is EvenModel.AHO and K == 2:
        E0 = (xif / 4) * (3 * omega + 1 / omega)
    elif model is EvenModel.AHO:
        E0 = (xif / 3) * (2 * omega + 1 / omega)
    else:
        E0 = (xif / 4) * (3 * omega - 1 / omega)
    h0 = E0 - omega * xif
    return omega, h0, E0, False


def mfpt_coefficients_even(K: int, model: EvenModel, g, n: int, order: int,
                           omega=None, dps: int = DEFAULT_PRECISION) -> PerturbationSeries:
    """Mean-field coefficients for the parity-even models.

    The moment table couples as

        X(j,i) = a(j) X(j-1,i) + b(j) sum_m E_m X(j-1,i-m) + c(j) X(j-2,i)
                 + d(j) X(j-1,i-1) + e X(j,i-1) - f(j) X(j+K-1,i-1)

    with a(j) = -(h0/w^2)(2j-1)/j, b(j) = (2j-1)/(w^2 j),
    c(j) = (j-1)(4(j-1)^2-1)/(4 j w^2), d(j) = -a(j),
    e = (w^2 -/+ 1)/w^2 (upright/inverted x^2 well) and
    f(j) = (g/w^2)(2j-1+K)/j.  The closure is

        p E_p = g X(K, p-1) - (alpha/2) X(1, p-1)   (E_1 also subtracts h0)

    with alpha = w^2 - 1 (AHO) or w^2 + 1 (restored double well).  E_1
    vanishes identically; it is computed and verified, not assumed.
    """
    if order < 1:
        raise DomainError("order must be >= 1")
    if model is EvenModel.DWO_SR and K != 2:
        raise DomainError("restored double well is quartic (K=2)")
    if K not in (2, 3):
        raise DomainError(f"anharmonicity index K={K} unsupported here")

    with mpmath.workdps(dps):
        omega_v, h0, E0, exact = _lo_inputs_even(model, K, g, n, omega_hint=omega)
        num = (lambda a, b=1: _mpq(a, b)) if exact else (lambda a, b=1: mpmath.mpf(a) / b)
        gv = _mpq(Fraction(g)) if exact else _to_mpf(g)
        w2 = (_mpq(Fraction(omega_v)) if exact else omega_v) ** 2
        h0v = _mpq(Fraction(h0)) if exact else h0
        E0v = _mpq(Fraction(E0)) if exact else E0
        alpha = w2 + (1 if model is EvenModel.DWO_SR else -1)
        e_w = alpha / w2

        E = [E0v]
        rows: List[dict] = []
        for i in range(order):
            if i >= 1:
                Ei = (gv * rows[i - 1].get(K, num(0)) - alpha * rows[i - 1].get(1, num(0)) / 2) / i
                if i == 1:
                    Ei -= h0v
                E.append(Ei)
            jmax = (K - 1) * (order - i) + 1
            row = {0: num(1) if i == 0 else num(0)}
            for j in range(1, jmax + 1):
                aj = num(2 * j - 1, j)
                acc = num(0)
                for m in range(0, i + 1):
                    src = row if m == 0 else rows[i - m]
                    xv = src.get(j - 1, None)
                    if xv:
                        acc += E[m] * xv
                val = (-h0v * aj * row.get(j - 1, num(0)) + aj * acc) / w2
                if j >= 2:
                    prev = row.get(j - 2, None)
                    if prev:
                        val += num((j - 1) * (4 * (j - 1) ** 2 - 1), 4 * j) * prev / w2
                if i >= 1:
                    below = rows[i - 1]
                    bv = below.get(j - 1, None)
                    if bv:
                        val += (h0v / w2) * aj * bv
                    sv = below.get(j, None)
                    if sv:
                        val += e_w * sv
                    hv = below.get(j + K - 1, None)
                    if hv:
                        val -= (gv / w2) * num(2 * j - 1 + K, j) * hv
                row[j] = val
            rows.append(row)
        EP = (gv * rows[order - 1].get(K, num(0)) - alpha * rows[order - 1].get(1, num(0)) / 2) / order
        if order == 1:
            EP -= h0v
        E.append(EP)

        _verify_first_order_zero(E[1], exact)
        coeffs = [Fraction(e) for e in E] if exact else [mpmath.mpf(e) for e in E]

    kind = {(EvenModel.AHO, 2): OscKind.QAHO, (EvenModel.AHO, 3): OscKind.SAHO,
            (EvenModel.DWO_SR, 2): OscKind.QDWO}[(model, K)]
    spec = OscillatorSpec(kind, float(g), n)
    return PerturbationSeries(
        scheme=Scheme.MFPT, spec=spec,
        omega=Fraction(omega_v) if exact else omega_v,
        h0=Fraction(h0) if exact else h0,
        sigma=Fraction(0) if exact else mpmath.mpf(0),
        K=K, coefficients=coeffs, exact=exact,
        phase=Phase.SR if model is EvenModel.DWO_SR else Phase.SYMMETRIC)


def _verify_first_order_zero(E1, exact: bool):
    if exact:
        if E1 != 0:
            raise AssertionError(f"first-order mean-field correction must vanish, got {E1}")
    elif abs(E1) > mpmath.mpf(10) ** (-(mpmath.mp.dps - 10)):
        raise AssertionError(f"first-order mean-field correction not numerically zero: {E1}")


# --------------------------------------------------------------------------
# mean-field series, broken phase of the double well
# --------------------------------------------------------------------------

def mfpt_coefficients_ssb(g, n: int, order: int, omega=None,
                          dps: int = DEFAULT_PRECISION) -> PerturbationSeries:
    """Mean-field coefficients in the broken phase (all moments <x^j>).

    With the condensate shift sigma the moment table couples as

        X(j,i) = a(j) X(j-1,i) + b(j) sum_m E_m X(j-2,i-m) - bt(j) X(j-2,i)
                 + c(j) X(j-4,i) - a(j) X(j-1,i-1) + bt(j) X(j-2,i-1)
                 + e X(j,i-1) - f(j) X(j+2,i-1)

    where a(j) = sigma (2j-1)/j, b(j) = 2(j-1)/(w^2 j),
    bt(j) = (h0 + w^2 sigma^2/2) b(j), c(j) = (j-1)(j-2)(j-3)/(4 j w^2),
    e = (w^2+1)/w^2 and f(j) = (2g/w^2)(j+1)/j.  The closure is

        p E_p = g X(4,p-1) - ((w^2+1)/2) X(2,p-1) + w^2 sigma X(1,p-1)

    (E_1 also subtracts h0 + w^2 sigma^2 / 2 and vanishes identically).

    Odd moments are stored divided by sigma, so only sigma^2 enters the
    arithmetic and rational inputs stay exact.
    """
    if order < 1:
        raise DomainError("order must be >= 1")
    xi = xi_of(n)
    gc = gs.qdwo_critical_coupling(xi)
    if float(g) >= gc and not gs.qdwo_is_boundary(float(g), xi):
        raise PhaseError(f"g={float(g)} is not inside the broken phase (g_c={gc:.6g})")

    omega_f = gs.qdwo_ssb_omega(float(g), xi)
    g_exact = exact_coupling(g)
    exact = False
    if g_exact is not None:
        poly = lambda w: w**3 - 2 * w + 6 * g_exact * ssb_xi_coeff(xi)
        if omega is not None and is_rational(omega):
            if poly(Fraction(omega)) != 0:
                raise DomainError("supplied omega does not satisfy the gap equation")
            omega_v, exact = Fraction(omega), True
        else:
            cand = gs.rationalize_omega(omega_f, poly)
            if cand is not None:
                omega_v, exact = cand, True
    if not exact:
        omega_v = mpmath.mpf(omega_f)
        with mpmath.workdps(dps):
            g_mp = (mpmath.mpf(float(g)) if g_exact is None
                    else mpmath.mpf(g_exact.numerator) / g_exact.denominator)
            bxi = ssb_xi_coeff(xi)
            b_mp = mpmath.mpf(bxi.numerator) / bxi.denominator
            omega_v = _newton_polish(
                omega_v,
                lambda w: w**3 - 2 * w + 6 * g_mp * b_mp,
                lambda w: 3 * w**2 - 2)

    with mpmath.workdps(dps):
        if exact:
            num = lambda a, b=1: _mpq(a, b)
            gv = _mpq(Fraction(g))
            ov = _mpq(Fraction(omega_v))
            xiv = _mpq(xi)
        else:
            num = lambda a, b=1: mpmath.mpf(a) / b
            gv = _to_mpf(g)
            ov = omega_v
            xiv = mpmath.mpf(xi.numerator) / xi.denominator
        w2 = ov * ov
        sigma2 = (1 - 12 * gv * xiv / ov) / (4 * gv)
        E0 = -1 / (16 * gv) + (xiv / 4) * (3 * ov + 2 / ov)
        h0 = E0 - ov * xiv
        htil = h0 + w2 * sigma2 / 2
        e_w = (w2 + 1) / w2

        # rows store X(j,i) / sigma^(j mod 2); odd->even couplings pick up
        # one sigma^2 per step down in j
        E = [E0]
        rows: List[dict] = []
        for i in range(order):
            if i >= 1:
                below = rows[i - 1]
                Ei = (gv * below.get(4, num(0)) - (w2 + 1) * below.get(2, num(0)) / 2
                      + w2 * sigma2 * below.get(1, num(0))) / i
                if i == 1:
                    Ei -= htil
                E.append(Ei)
            jmax = 2 * (order + 1 - i)
            row = {0: num(1) if i == 0 else num(0)}
            for j in range(1, jmax + 1):
                sfac = sigma2 if j % 2 == 0 else 1
                aj = num(2 * j - 1, j)
                bj = num(2 * (j - 1), j) / w2
                val = sfac * aj * row.get(j - 1, num(0))
                if j >= 2:
                    acc = num(0)
                    for m in range(0, i + 1):
                        src = row if m == 0 else rows[i - m]
                        xv = src.get(j - 2, None)
                        if xv:
                            acc += E[m] * xv
                    val += bj * (acc - htil * row.get(j - 2, num(0)))
                if j >= 4:
                    prev = row.get(j - 4, None)
                    if prev:
                        val += num((j - 1) * (j - 2) * (j - 3), 4 * j) * prev / w2
                if i >= 1:
                    below = rows[i - 1]
                    bv = below.get(j - 1, None)
                    if bv:
                        val -= sfac * aj * bv
                    b2 = below.get(j - 2, None)
                    if b2:
                        val += htil * bj * b2
                    sv = below.get(j, None)
                    if sv:
                        val += e_w * sv
                    hv = below.get(j + 2, None)
                    if hv:
                        val -= (2 * gv / w2) * num(j + 1, j) * hv
                row[j] = val
            rows.append(row)
        last = rows[order - 1]
        EP = (gv * last.get(4, num(0)) - (w2 + 1) * last.get(2, num(0)) / 2
              + w2 * sigma2 * last.get(1, num(0))) / order
        if order == 1:
            EP -= htil
        E.append(EP)

        _verify_first_order_zero(E[1], exact)
        coeffs = [Fraction(e) for e in E] if exact else [mpmath.mpf(e) for e in E]
        # sigma itself is a square root; only sigma^2 stays rational
        if exact:
            s2 = Fraction(sigma2)
            sigma_val = mpmath.sqrt(mpmath.mpf(s2.numerator) / s2.denominator)
        else:
            sigma_val = mpmath.sqrt(sigma2)

    spec = OscillatorSpec(OscKind.QDWO, float(g), n)
    return PerturbationSeries(
        scheme=Scheme.MFPT, spec=spec,
        omega=Fraction(omega_v) if exact else omega_v,
        h0=Fraction(h0) if exact else h0,
        sigma=sigma_val,
        K=2, coefficients=coeffs, exact=exact, phase=Phase.SSB)


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------

def mfpt_series(spec: OscillatorSpec, order: int, omega=None,
                dps: int = DEFAULT_PRECISION, g=None) -> PerturbationSeries:
    """Mean-field series for any supported model, phase selected by g_c.

    ``g`` may override the spec's float coupling with an exact Fraction so
    the recursion runs in exact arithmetic where the frequency allows.
    """
    g = spec.g if g is None else g
    if spec.kind is OscKind.QAHO:
        return mfpt_coefficients_even(2, EvenModel.AHO, g, spec.n, order, omega, dps)
    if spec.kind is OscKind.SAHO:
        return mfpt_coefficients_even(3, EvenModel.AHO, g, spec.n, order, omega, dps)
    if spec.kind is OscKind.QDWO:
        gf = float(g)
        if gf >= gs.qdwo_critical_coupling(spec.xi) or gs.qdwo_is_boundary(gf, spec.xi):
            return mfpt_coefficients_even(2, EvenModel.DWO_SR, g, spec.n, order, omega, dps)
        return mfpt_coefficients_ssb(g, spec.n, order, omega, dps)
    raise DomainError(f"mean-field series not defined for {spec.kind}")
