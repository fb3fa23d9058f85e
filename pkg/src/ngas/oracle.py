"""Independent reference energies by dense diagonalization.

The arbiter for every accuracy claim in this package: the Hamiltonian is
assembled in a frequency-scaled oscillator basis from exact ladder-operator
matrix elements (powers of the tridiagonal position matrix, padded so the
retained block is exact) and diagonalized with a symmetric eigensolver.
Convergence is certified by doubling the basis until the requested levels
stop moving.

Energies are measured from the classical potential minimum, so double-well
values carry the +1/(16 g) offset used throughout the benchmark tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional

import numpy as np
from scipy.linalg import eigh

from .lo_harmonic import lo_spectrum
from .model_core import (
    ANHARMONICITY_K,
    ConvergenceError,
    DomainError,
    OscKind,
    OscillatorSpec,
    well_depth_shift,
)


@dataclass(frozen=True)
class OracleConfig:
    basis_size: int = 400
    basis_frequency: Optional[float] = None  # default: the model's LO frequency
    convergence_tol: float = 1e-10
    max_doublings: int = 2

    def __post_init__(self):
        if self.basis_size < 50:
            raise DomainError("basis must have at least 50 states")


def _hamiltonian_matrix(spec: OscillatorSpec, size: int, omega_basis: float) -> np.ndarray:
    """Dense H in the oscillator basis of frequency omega_basis.

    The position matrix is tridiagonal with X[n, n+1] = sqrt((n+1)/(2 w));
    powers up to x^(2K) are formed by multiplying in a padded block so all
    retained elements are exact.
    """
    K = ANHARMONICITY_K.get(spec.kind, 1)
    pad = 2 * K + 2
    M = size + pad
    n = np.arange(M)
    off = np.sqrt((n[:-1] + 1) / (2.0 * omega_basis))
    X = np.zeros((M, M))
    X[n[:-1], n[:-1] + 1] = off
    X[n[:-1] + 1, n[:-1]] = off
    X2 = X @ X

    P2 = np.diag(omega_basis * (n + 0.5))
    upper = 0.5 * omega_basis * np.sqrt((n[:-2] + 1) * (n[:-2] + 2))
    P2[n[:-2], n[:-2] + 2] = -upper
    P2[n[:-2] + 2, n[:-2]] = -upper

    x2_coeff = -0.5 if spec.kind is OscKind.QDWO else 0.5
    H = 0.5 * P2 + x2_coeff * X2
    if spec.kind is not OscKind.SHO and spec.g != 0.0:
        XK = X2
        for _ in range(K - 1):
            XK = XK @ X2
        H = H + spec.g * XK
    return H[:size, :size]


def _basis_frequency(spec: OscillatorSpec, cfg: OracleConfig) -> float:
    if cfg.basis_frequency is not None:
        if cfg.basis_frequency <= 0:
            raise DomainError("basis frequency must be positive")
        return cfg.basis_frequency
    try:
        return lo_spectrum(spec).lo.omega
    except Exception:
        return 1.0


def diagonalize(spec: OscillatorSpec, cfg: Optional[OracleConfig] = None,
                levels: int = 1) -> List[float]:
    """Lowest eigenvalues, certified stable under basis doubling.

    Returns energies relative to the classical potential minimum.  Raises
    ConvergenceError when two successive doublings still move any requested
    level by more than the configured tolerance.
    """
    cfg = cfg or OracleConfig()
    if levels < 1:
        raise DomainError("need at least one level")
    if levels > cfg.basis_size // 4:
        raise DomainError("levels must not exceed basis_size / 4")
    wb = _basis_frequency(spec, cfg)
    shift = well_depth_shift(spec)

    size = cfg.basis_size
    vals, norm = _lowest(spec, size, wb, levels)
    for _ in range(cfg.max_doublings):
        size *= 2
        vals_next, norm = _lowest(spec, size, wb, levels)
        drift = max(abs(a - b) for a, b in zip(vals, vals_next))
        # the dense eigensolver carries absolute noise ~ eps * |H|, which
        # dominates the doubling drift for stiff models; certification uses
        # whichever floor is larger
        noise_floor = 64.0 * np.finfo(float).eps * norm
        if drift < max(cfg.convergence_tol, noise_floor):
            return [v + shift for v in vals_next]
        vals = vals_next
    raise ConvergenceError(
        f"eigenvalues still moving by {drift:.2e} after {cfg.max_doublings} doublings")


def _lowest(spec: OscillatorSpec, size: int, wb: float, levels: int):
    H = _hamiltonian_matrix(spec, size, wb)
    vals = eigh(H, eigvals_only=True, subset_by_index=(0, levels - 1))
    norm = float(np.max(np.sum(np.abs(H), axis=1)))
    return [float(v) for v in vals], norm


def second_order_sum_oracle(K: int, n: int) -> Fraction:
    """Exact second-order coefficient by explicit sum over oscillator states.

    E_2 = sum_{m != n} |<m| x^(2K) |n>|^2 / (n - m) for the unit-frequency
    oscillator; only finitely many m couple, and the squared elements are
    rational, so the sum is exact.

    Cross-validates the standard-series recursion without sharing any code
    with it.
    """
    if K not in (2, 3):
        raise DomainError(f"anharmonicity index K={K} unsupported")
    if n < 0:
        raise DomainError("level index must be non-negative")
    # amplitudes in the scaled representation c_m = d_m sqrt(m!/n!):
    # (a + a^dag) acts on d as d'_m = (m+1) d_{m+1} + d_{m-1}
    d = {n: Fraction(1)}
    for _ in range(2 * K):
        nxt: dict = {}
        for m, val in d.items():
            if m >= 1:
                nxt[m - 1] = nxt.get(m - 1, Fraction(0)) + val * m
            nxt[m + 1] = nxt.get(m + 1, Fraction(0)) + val
        d = {m: v for m, v in nxt.items() if v != 0}
    total = Fraction(0)
    for m, val in d.items():
        if m == n:
            continue
        amp2 = Fraction(val * val) * Fraction(factorial(m), factorial(n))
        total += amp2 / (4**K) / (n - m)
    return total
