from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ngas.model_core import (
    DomainError,
    OscKind,
    OscillatorSpec,
    f_xi,
    h_xi,
    well_depth_shift,
    xi_of,
)


def test_xi_of_definition():
    assert xi_of(0) == Fraction(1, 2)
    assert xi_of(1) == Fraction(3, 2)
    assert xi_of(10) == Fraction(21, 2)


def test_xi_of_rejects_negative():
    with pytest.raises(DomainError):
        xi_of(-1)


def test_f_xi_values():
    assert f_xi(Fraction(1, 2)) == 1
    assert f_xi(Fraction(3, 2)) == Fraction(5, 3)
    assert f_xi(Fraction(21, 2)) == Fraction(221, 21)


def test_h_xi_ground_state():
    assert h_xi(Fraction(1, 2)) == 3


@given(st.integers(min_value=0, max_value=500))
def test_f_xi_lower_bound(n):
    val = f_xi(xi_of(n))
    assert val >= 1
    if n > 0:
        assert val > 1


rationals = st.fractions(min_value=-1000, max_value=1000)


@given(rationals, rationals)
def test_exact_rational_round_trip(a, b):
    assert (a + b) - b == a


def test_spec_validation():
    with pytest.raises(DomainError):
        OscillatorSpec(OscKind.QDWO, 0.0)
    with pytest.raises(DomainError):
        OscillatorSpec(OscKind.QAHO, -0.5)
    with pytest.raises(DomainError):
        OscillatorSpec(OscKind.QAHO, 1.0, -2)
    # SHO ignores the coupling entirely
    assert OscillatorSpec(OscKind.SHO, 7.0).g == 0.0


def test_well_depth_shift():
    assert well_depth_shift(OscillatorSpec(OscKind.QAHO, 2.0)) == 0.0
    assert well_depth_shift(OscillatorSpec(OscKind.QDWO, 0.5)) == pytest.approx(1.0 / 8.0)
