"""Named state families, closed-form Bell values, and the power-law fit."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import SchmidtState, term_weights
from .operator import ReducedBellOperator, reduced_bell_coefficients
from .spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, autocorrelation, max_eigenpair

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FitModel:
    """Power-law model I(d) ~ A - B * d**(-p) with the fit's rms residual."""

    A: float
    B: float
    p: float
    rms_residual: float


def mes_state(d: int) -> SchmidtState:
    """Maximally entangled state: all coefficients 1/sqrt(d)."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return SchmidtState(d, np.full(d, 1.0 / np.sqrt(d)))


def app_state(d: int) -> SchmidtState:
    """Approximate-extremal family: coefficients proportional to 1/sqrt((j+1)(d-j)).

    Symmetric under j -> d-1-j, largest at the edges, and close to the
    true maximal-violation eigenvector at every dimension.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    j = np.arange(d, dtype=float)
    profile = 1.0 / np.sqrt((j + 1.0) * (d - j))
    return SchmidtState(d, profile / np.linalg.norm(profile))


def bell_value_schmidt(state: SchmidtState, op: ReducedBellOperator) -> float:
    """Bell expression of a Schmidt-form state from the reduced operator.

    Contracts the Toeplitz coefficients against the state's overlap sums:
    sum_{r>=1} b[r] * c[r] = <state|B|state>.
    """
    if state.d != op.d:
        raise ValueError(f"state dimension {state.d} != operator dimension {op.d}")
    c = autocorrelation(state.coeffs)
    return float(op.coeffs[1:] @ c[1:])


def mes_bell_value(d: int) -> float:
    """Closed-form Bell expression of the maximally entangled state.

    Finite weighted sum of inverse squared sines, evaluated verbatim with
    both the positive and the negative sine arguments.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    w = term_weights(d)
    k = np.arange(len(w), dtype=float)
    plus = 1.0 / (2 * d**3 * np.sin(np.pi * (k + 0.25) / d) ** 2)
    minus = 1.0 / (2 * d**3 * np.sin(np.pi * (-k - 1 + 0.25) / d) ** 2)
    return float(4 * d * np.sum(w * (plus - minus)))


def _limit_series_term(k):
    return 1.0 / (k + 0.25) ** 2 - 1.0 / (k + 0.75) ** 2


def _limit_partial_sum(terms: int) -> float:
    k = np.arange(terms, dtype=float)
    return float(2.0 / np.pi**2 * np.sum(_limit_series_term(k)))


def mes_bell_limit(terms: int = 1_000_000) -> float:
    """Large-d limit of the maximally-entangled Bell value, ~2.96981.

    Truncated series (2/pi^2) * sum_k [1/(k+1/4)^2 - 1/(k+3/4)^2] plus an
    Euler-Maclaurin tail correction, accurate to ~1e-8 already for a few
    hundred terms.
    """
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    n = float(terms)
    integral = 1.0 / (n + 0.25) - 1.0 / (n + 0.75)
    derivative = -2.0 / (n + 0.25) ** 3 + 2.0 / (n + 0.75) ** 3
    tail = integral + _limit_series_term(n) / 2.0 - derivative / 12.0
    return _limit_partial_sum(terms) + float(2.0 / np.pi**2 * tail)


def _linear_subfit(dvals: np.ndarray, ivals: np.ndarray, p: float):
    """Least-squares (A, B) for I ~ A - B * d**(-p) at fixed p, with rms residual."""
    design = np.column_stack([np.ones_like(dvals), -(dvals**-p)])
    coef, *_ = np.linalg.lstsq(design, ivals, rcond=None)
    rms = float(np.sqrt(np.mean((design @ coef - ivals) ** 2)))
    return coef, rms


def fit_power_law(
    points: Iterable[Sequence[float]], p_bounds: tuple[float, float] = (1e-3, 2.0)
) -> FitModel:
    """Fit I ~ A - B * d**(-p) to (d, I) pairs.

    Golden-section search over the decay exponent with a closed-form linear
    solve for (A, B) at each candidate; fully deterministic. Needs at least
    four points with distinct d and data that actually decays (B > 0).
    """
    pts = [(float(d), float(i)) for d, i in points]
    if len(pts) < 4:
        raise ValueError(f"need at least 4 points, got {len(pts)}")
    dvals = np.array([d for d, _ in pts])
    ivals = np.array([i for _, i in pts])
    if len(np.unique(dvals)) != len(dvals):
        raise ValueError("points must have distinct d")
    if np.any(dvals < 1):
        raise ValueError("d values must be >= 1")

    lo, hi = p_bounds
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    _, f1 = _linear_subfit(dvals, ivals, x1)
    _, f2 = _linear_subfit(dvals, ivals, x2)
    while hi - lo > 1e-12:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            _, f1 = _linear_subfit(dvals, ivals, x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            _, f2 = _linear_subfit(dvals, ivals, x2)
    p = (lo + hi) / 2.0
    (a, b), rms = _linear_subfit(dvals, ivals, p)
    # constant or non-decaying data leaves no resolvable amplitude
    if not np.isfinite(b) or b <= 1e-9 * max(1.0, abs(a)):
        raise ValueError(f"degenerate fit: amplitude {b!r} is not positive")
    return FitModel(float(a), float(b), float(p), rms)


def approx_error_rate(
    d: int, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> float:
    """Relative shortfall (I_eig - I_app) / I_eig of the approximate family at d."""
    op = reduced_bell_coefficients(d)
    eig = max_eigenpair(op, tol=tol, max_iter=max_iter).eigenvalue
    app = bell_value_schmidt(app_state(d), op)
    return (eig - app) / eig
