"""Domain types and elementary functions for two-qudit CGLMP Bell tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Constructors reject states whose squared coefficients do not sum to 1
# within this tolerance.
NORM_TOL = 1e-12


def _readonly(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SchmidtState:
    """Two-qudit pure state sum_j a_j |jj> with real coefficients a_j.

    Coefficients must be finite and normalized (sum of squares 1 within
    ``NORM_TOL``). Instances are immutable.
    """

    d: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")
        coeffs = _readonly(self.coeffs, float)
        if coeffs.shape != (self.d,):
            raise ValueError(f"expected {self.d} coefficients, got shape {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        norm2 = float(coeffs @ coeffs)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"coefficients not normalized: sum of squares = {norm2!r}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def unchecked(cls, coeffs) -> "SchmidtState":
        """Bypass validation for internal hot paths feeding already-normalized data."""
        arr = np.asarray(coeffs, dtype=float)
        obj = object.__new__(cls)
        object.__setattr__(obj, "d", arr.shape[0])
        object.__setattr__(obj, "coeffs", arr)
        return obj


@dataclass(frozen=True, eq=False)
class GeneralState:
    """Two-qudit pure state sum_{j,j'} c_{jj'} |jj'> with complex coefficient matrix."""

    d: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")
        coeffs = _readonly(self.coeffs, complex)
        if coeffs.shape != (self.d, self.d):
            raise ValueError(f"expected {self.d}x{self.d} coefficients, got shape {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        norm2 = float(np.sum(np.abs(coeffs) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"coefficients not normalized: sum of |c|^2 = {norm2!r}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_schmidt(cls, state: SchmidtState) -> "GeneralState":
        """Embed a Schmidt-form state as the diagonal of a general coefficient matrix."""
        return cls(state.d, np.diag(state.coeffs.astype(complex)))


@dataclass(frozen=True, eq=False)
class MeasurementSettings:
    """Per-party multiport phase-shift vectors: two settings each for Alice and Bob."""

    d: int
    phi1: np.ndarray
    phi2: np.ndarray
    psi1: np.ndarray
    psi2: np.ndarray

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        for name in ("phi1", "phi2", "psi1", "psi2"):
            vec = _readonly(getattr(self, name), float)
            if vec.shape != (self.d,):
                raise ValueError(f"{name} must have length {self.d}, got shape {vec.shape}")
            if not np.all(np.isfinite(vec)):
                raise ValueError(f"{name} entries must be finite")
            object.__setattr__(self, name, vec)


def mod_d(x: int, d: int) -> int:
    """Mathematical modulus into [0, d-1], correct for negative x."""
    if d <= 0:
        raise ValueError(f"modulus must be positive, got {d}")
    return x % d


def sign_nonneg(x: int) -> int:
    """+1 for x >= 0, -1 for x < 0."""
    return 1 if x >= 0 else -1


def outcome_weight(i: int, j: int, m: int, n: int, d: int) -> float:
    """Weight given to outcome pair (m, n) under setting pair (i, j).

    Equals S - mod_d(sign(i-j)*(m+n), d) with S = (d-1)/2, so it is
    bounded by |S| and averages the outcome correlation onto [-1, 1].
    """
    if i not in (1, 2) or j not in (1, 2):
        raise ValueError(f"setting indices must be 1 or 2, got ({i}, {j})")
    if not (0 <= m < d and 0 <= n < d):
        raise ValueError(f"outcomes must lie in [0, {d - 1}], got ({m}, {n})")
    s = (d - 1) / 2
    return s - mod_d(sign_nonneg(i - j) * (m + n), d)


def optimal_settings(d: int) -> MeasurementSettings:
    """Phase settings that maximize the violation for the multiport measurement.

    Alice: phi1(j) = 0, phi2(j) = j*pi/d.  Bob: psi1(j) = j*pi/(2d),
    psi2(j) = -j*pi/(2d).
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    j = np.arange(d, dtype=float)
    return MeasurementSettings(
        d,
        phi1=np.zeros(d),
        phi2=j * np.pi / d,
        psi1=j * np.pi / (2 * d),
        psi2=-j * np.pi / (2 * d),
    )


def term_cutoff(d: int) -> int:
    """Index of the last weighted term in the CGLMP sums: floor(d/2 - 1)."""
    return (d - 2) // 2


def term_weights(d: int) -> np.ndarray:
    """Weights 1 - 2k/(d-1) for k = 0..term_cutoff(d)."""
    k = np.arange(term_cutoff(d) + 1, dtype=float)
    return 1.0 - 2.0 * k / (d - 1)
