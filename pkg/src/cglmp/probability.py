"""Joint outcome probabilities, correlations, and the Bell expression from a state.

This route evaluates the inequality straight from its probability
definition and serves as the independent oracle for the operator route.
Cost is O(d^3) per probability table, so it is meant for small to
moderate d (<= ~128).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GeneralState, MeasurementSettings

# Entries this far below zero indicate a bug rather than rounding noise.
PROB_FLOOR = -1e-12
SUM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class JointProbabilityTable:
    """Outcome probabilities entries[k, l] = P(A=k, B=l) for one setting pair."""

    d: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.shape != (self.d, self.d):
            raise ValueError(f"expected {self.d}x{self.d} table, got shape {entries.shape}")
        if entries.min() < PROB_FLOOR:
            raise ValueError(f"negative probability {entries.min()!r}")
        np.clip(entries, 0.0, None, out=entries)
        total = float(entries.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)


def _setting_phases(settings: MeasurementSettings, party: str, index: int) -> np.ndarray:
    if index not in (1, 2):
        raise ValueError(f"setting index must be 1 or 2, got {index}")
    if party == "alice":
        return settings.phi1 if index == 1 else settings.phi2
    return settings.psi1 if index == 1 else settings.psi2


def joint_probabilities(
    state: GeneralState, settings: MeasurementSettings, a: int, b: int
) -> JointProbabilityTable:
    """All joint outcome probabilities for Alice's setting a and Bob's setting b.

    Each entry is the squared modulus of the transition amplitude

        (1/d) * sum_{j,j'} c_{jj'} exp(i [phi_a(j) + psi_b(j') + (2*pi/d)(j*k + j'*l)])

    computed as a single matrix product over (j, j'). Both parties apply the
    same multiport Fourier kernel, so a state sum_j a_j |jj> correlates the
    outcomes through k + l; that orientation is what makes the (m + n)
    outcome weight in :func:`correlation` reproduce the operator route.
    """
    if state.d != settings.d:
        raise ValueError(f"state dimension {state.d} != settings dimension {settings.d}")
    d = state.d
    phi = _setting_phases(settings, "alice", a)
    psi = _setting_phases(settings, "bob", b)
    jk = np.outer(np.arange(d), np.arange(d)) * (2 * np.pi / d)
    left = np.exp(1j * (phi[:, None] + jk))  # (j, k)
    right = np.exp(1j * (psi[:, None] + jk))  # (j', l)
    amp = left.T @ state.coeffs @ right
    return JointProbabilityTable(d, np.abs(amp) ** 2 / d**2)


def correlation(state: GeneralState, settings: MeasurementSettings, i: int, j: int) -> float:
    """Correlation of settings (i, j): the weighted average of the joint probabilities.

    Lies in [-1, 1] up to rounding for any state and settings.
    """
    table = joint_probabilities(state, settings, i, j)
    d = state.d
    s = (d - 1) / 2
    outcomes = np.arange(d)
    shifted = (1 if i >= j else -1) * (outcomes[:, None] + outcomes[None, :])
    weights = s - shifted % d
    return float(np.sum(weights * table.entries) / s)


def bell_value_probabilistic(state: GeneralState, settings: MeasurementSettings) -> float:
    """Bell expression Q11 + Q12 - Q21 + Q22 evaluated from joint probabilities."""
    return (
        correlation(state, settings, 1, 1)
        + correlation(state, settings, 1, 2)
        - correlation(state, settings, 2, 1)
        + correlation(state, settings, 2, 2)
    )
