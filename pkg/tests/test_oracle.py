from fractions import Fraction

import numpy as np
import pytest

from ngas.model_core import ConvergenceError, DomainError, OscKind, OscillatorSpec
from ngas.oracle import (
    OracleConfig,
    _hamiltonian_matrix,
    diagonalize,
    second_order_sum_oracle,
)
from ngas.recursion import sfpt_coefficients

F = Fraction


class TestDiagonalize:
    def test_sho_exact_levels(self):
        vals = diagonalize(OscillatorSpec(OscKind.SHO, 0.0), levels=8)
        for n, v in enumerate(vals):
            assert v == pytest.approx(n + 0.5, abs=1e-10)

    def test_qaho_reference_value(self):
        v = diagonalize(OscillatorSpec(OscKind.QAHO, 1.0))[0]
        assert v == pytest.approx(0.8038, abs=1.01e-4)

    def test_qdwo_reference_value_includes_well_offset(self):
        v = diagonalize(OscillatorSpec(OscKind.QDWO, 1.0))[0]
        assert v == pytest.approx(0.5773, abs=1.01e-4)

    def test_basis_frequency_independence(self):
        spec = OscillatorSpec(OscKind.QAHO, 1.0)
        a = diagonalize(spec)[0]
        b = diagonalize(spec, OracleConfig(basis_frequency=3.0))[0]
        assert abs(a - b) < 1e-8

    def test_doubling_stability(self):
        spec = OscillatorSpec(OscKind.QAHO, 10.0)
        a = diagonalize(spec, OracleConfig(basis_size=400))[0]
        b = diagonalize(spec, OracleConfig(basis_size=800))[0]
        assert abs(a - b) < 1e-10

    def test_levels_guard(self):
        with pytest.raises(DomainError):
            diagonalize(OscillatorSpec(OscKind.QAHO, 1.0), OracleConfig(basis_size=100), levels=30)

    def test_small_basis_rejected(self):
        with pytest.raises(DomainError):
            OracleConfig(basis_size=20)

    def test_nonconvergence_detected(self):
        cfg = OracleConfig(basis_size=52, convergence_tol=1e-14, max_doublings=1)
        with pytest.raises(ConvergenceError):
            diagonalize(OscillatorSpec(OscKind.OAHO, 100.0), cfg, levels=12)


def test_parity_blocks_decouple():
    H = _hamiltonian_matrix(OscillatorSpec(OscKind.QAHO, 2.0), 60, 1.7)
    parity = np.arange(60) % 2
    cross = H[parity == 0][:, parity == 1]
    assert np.max(np.abs(cross)) == 0.0
    H = _hamiltonian_matrix(OscillatorSpec(OscKind.SAHO, 1.0), 60, 2.0)
    cross = H[parity == 0][:, parity == 1]
    assert np.max(np.abs(cross)) == 0.0


class TestSecondOrderSumOracle:
    def test_quartic_ground(self):
        assert second_order_sum_oracle(2, 0) == F(-21, 8)

    @pytest.mark.parametrize("K,n", [(2, 1), (2, 4), (3, 0), (3, 2)])
    def test_matches_recursion(self, K, n):
        assert second_order_sum_oracle(K, n) == sfpt_coefficients(K, n, 2).coefficients[2]

    def test_invalid_k(self):
        with pytest.raises(DomainError):
            second_order_sum_oracle(4, 0)
