import numpy as np
import pytest
from hypothesis import given, strategies as st

from cglmp import (
    GeneralState,
    MeasurementSettings,
    SchmidtState,
    mod_d,
    optimal_settings,
    outcome_weight,
    sign_nonneg,
)


def test_mod_d_values():
    assert mod_d(5, 3) == 2
    assert mod_d(-1, 4) == 3
    assert mod_d(0, 7) == 0


def test_mod_d_rejects_bad_modulus():
    with pytest.raises(ValueError):
        mod_d(3, 0)
    with pytest.raises(ValueError):
        mod_d(3, -2)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**4))
def test_mod_d_periodic_and_in_range(x, d):
    m = mod_d(x, d)
    assert 0 <= m < d
    assert m == mod_d(x + d, d)
    assert (x - m) % d == 0


def test_sign_nonneg():
    assert sign_nonneg(0) == 1  # zero counts as nonnegative
    assert sign_nonneg(3) == 1
    assert sign_nonneg(-2) == -1


def test_outcome_weight_values():
    assert outcome_weight(1, 1, 0, 0, 3) == 1.0
    assert outcome_weight(2, 1, 1, 1, 3) == -1.0
    assert outcome_weight(1, 2, 1, 1, 3) == 0.0


def test_outcome_weight_rejects_out_of_range():
    with pytest.raises(ValueError):
        outcome_weight(3, 1, 0, 0, 3)
    with pytest.raises(ValueError):
        outcome_weight(1, 1, 3, 0, 3)
    with pytest.raises(ValueError):
        outcome_weight(1, 1, 0, -1, 3)


@given(
    st.sampled_from([1, 2]),
    st.sampled_from([1, 2]),
    st.integers(2, 50),
    st.data(),
)
def test_outcome_weight_bounded(i, j, d, data):
    m = data.draw(st.integers(0, d - 1))
    n = data.draw(st.integers(0, d - 1))
    assert abs(outcome_weight(i, j, m, n, d)) <= (d - 1) / 2


def test_optimal_settings_d2():
    s = optimal_settings(2)
    np.testing.assert_allclose(s.phi2, [0.0, np.pi / 2])
    np.testing.assert_allclose(s.psi1, [0.0, np.pi / 4])


def test_optimal_settings_structure():
    s = optimal_settings(4)
    assert s.phi2[3] == pytest.approx(3 * np.pi / 4)
    assert np.all(s.phi1 == 0.0)
    np.testing.assert_array_equal(s.psi1, -s.psi2)
    with pytest.raises(ValueError):
        optimal_settings(1)


def test_schmidt_state_validation():
    SchmidtState(2, [1 / np.sqrt(2), 1 / np.sqrt(2)])
    with pytest.raises(ValueError):
        SchmidtState(2, [1.0, 1.0])  # unnormalized
    with pytest.raises(ValueError):
        SchmidtState(2, [np.nan, 1.0])
    with pytest.raises(ValueError):
        SchmidtState(1, [1.0])
    with pytest.raises(ValueError):
        SchmidtState(3, [1.0, 0.0])  # wrong length


def test_schmidt_state_immutable():
    s = SchmidtState(2, [1.0, 0.0])
    with pytest.raises(ValueError):
        s.coeffs[0] = 0.5


def test_schmidt_unchecked_skips_validation():
    s = SchmidtState.unchecked([2.0, 0.0, 0.0])  # deliberately unnormalized
    assert s.d == 3


def test_general_state_validation():
    GeneralState(2, np.eye(2) / np.sqrt(2))
    with pytest.raises(ValueError):
        GeneralState(2, np.eye(2))
    with pytest.raises(ValueError):
        GeneralState(2, np.ones((3, 3)))


def test_general_state_from_schmidt():
    s = SchmidtState(3, np.full(3, 1 / np.sqrt(3)))
    g = GeneralState.from_schmidt(s)
    assert g.coeffs[1, 1] == pytest.approx(1 / np.sqrt(3))
    assert g.coeffs[0, 1] == 0


def test_measurement_settings_validation():
    with pytest.raises(ValueError):
        MeasurementSettings(3, np.zeros(3), np.zeros(2), np.zeros(3), np.zeros(3))
    with pytest.raises(ValueError):
        MeasurementSettings(2, np.zeros(2), np.zeros(2), np.zeros(2), [np.inf, 0.0])
