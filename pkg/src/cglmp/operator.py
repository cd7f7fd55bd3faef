"""Bell operator under the optimal settings: full matrix and reduced Toeplitz form.

The full d^2 x d^2 matrix is a validation artifact for small d. All
large-d work goes through the length-d Toeplitz coefficient vector of
the first-subspace block; the d x d matrix itself is never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import term_cutoff, term_weights

# Dense oracle cap: the full matrix holds d^4 complex entries.
FULL_MATRIX_MAX_D = 64

BLOCK_TOL = 1e-10


class BlockStructureError(ValueError):
    """First-subspace block is not real symmetric Toeplitz within tolerance."""


@dataclass(frozen=True, eq=False)
class FullBellMatrix:
    """Full Bell operator; row (m, m') and column (j, j') flattened as m*d + m'."""

    d: int
    entries: np.ndarray


@dataclass(frozen=True, eq=False)
class ReducedBellOperator:
    """Symmetric Toeplitz block on span{|00>, ..., |(d-1)(d-1)>}.

    coeffs[r] is the matrix entry at offset |row - col| = r; coeffs[0] = 0
    and all other coefficients are strictly positive.
    """

    d: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=float)
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")
        if coeffs.shape != (self.d,):
            raise ValueError(f"expected {self.d} coefficients, got shape {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        if coeffs[0] != 0.0:
            raise ValueError(f"zero-offset coefficient must vanish, got {coeffs[0]!r}")
        if np.any(coeffs[1:] <= 0.0):
            raise ValueError("off-diagonal coefficients must be positive")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)


def reduced_bell_coefficients(d: int) -> ReducedBellOperator:
    """Closed-form Toeplitz coefficients: b[r] = (2/(d-1)) / cos(pi*r/(2d)), b[0] = 0."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    r = np.arange(d, dtype=float)
    b = 2.0 / ((d - 1) * np.cos(np.pi * r / (2 * d)))
    b[0] = 0.0
    return ReducedBellOperator(d, b)


def reduced_bell_coefficients_sine_sum(d: int) -> ReducedBellOperator:
    """Same coefficients from the explicit weighted sine sum.

    b[r] = (8/d) sin(pi*r/(2d)) * sum_k w_k sin((2*pi/d)(k + 1/2) r) over the
    weighted terms; agrees with the closed form to ~1e-15 and exists purely
    as a cross-check of it.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    w = term_weights(d)
    k = np.arange(term_cutoff(d) + 1, dtype=float)
    r = np.arange(d, dtype=float)
    # (r, k) grid; row r contracts against the weights
    sines = np.sin((2 * np.pi / d) * np.outer(r, k + 0.5))
    b = (8.0 / d) * np.sin(np.pi * r / (2 * d)) * (sines @ w)
    b[0] = 0.0
    return ReducedBellOperator(d, b)


def full_bell_matrix(d: int) -> FullBellMatrix:
    """Assemble the full Bell operator entry by entry under the optimal settings.

    Entries depend on the index offsets p = j - m and q = j' - m' only, via
    four phase-weighted sums over the weighted terms and a root-of-unity sum
    that annihilates everything with p != q (mod d). The root-of-unity sum is
    evaluated literally so that assembly errors surface as nonzero off-block
    entries rather than being masked analytically.
    """
    if not 2 <= d <= FULL_MATRIX_MAX_D:
        raise ValueError(f"full-matrix oracle supports 2 <= d <= {FULL_MATRIX_MAX_D}, got {d}")
    w = term_weights(d)
    k = np.arange(term_cutoff(d) + 1, dtype=float)
    p = np.arange(-(d - 1), d, dtype=float)  # all offsets, length 2d-1

    fwd = np.exp(2j * np.pi / d * np.outer(p, k)) @ w  # sum_k w_k e^{+i 2pi k p / d}
    fwd1 = np.exp(2j * np.pi / d * np.outer(p, k + 1)) @ w  # same with k+1
    e1 = fwd[:, None]  # function of p
    e4 = fwd1[:, None]
    e3 = np.conj(fwd)[None, :]  # function of q
    e2 = np.conj(fwd1)[None, :]

    half_q = np.exp(1j * np.pi / (2 * d) * p)[None, :]
    full_p = np.exp(1j * np.pi / d * p)[:, None]
    terms = (
        half_q * (e1 - e2)
        + np.conj(half_q) * (e3 - e4)
        + full_p * half_q * (e2 - e1)
        + full_p * np.conj(half_q) * (e1 - e2)
    )

    # literal sum over l of e^{i 2pi (p - q) l / d}; u = p - q in [-(2d-2), 2d-2]
    u = np.arange(-(2 * d - 2), 2 * d - 1, dtype=float)
    root_sum = np.exp(2j * np.pi / d * np.outer(u, np.arange(d))).sum(axis=1)
    diff_idx = (p[:, None] - p[None, :]).astype(int) + (2 * d - 2)
    lookup = root_sum[diff_idx] * terms / d**2  # (p, q) grid

    offsets = np.arange(d)[None, :] - np.arange(d)[:, None] + (d - 1)  # [m, j] -> p index
    entries = lookup[offsets[:, None, :, None], offsets[None, :, None, :]]
    return FullBellMatrix(d, entries.reshape(d**2, d**2))


def extract_first_block(full: FullBellMatrix) -> ReducedBellOperator:
    """Read the {|00>, ..., |(d-1)(d-1)>} block and return its Toeplitz coefficients.

    Raises BlockStructureError if the block is not real symmetric Toeplitz
    within BLOCK_TOL, which signals an assembly bug in the full matrix.
    """
    d = full.d
    diag = np.arange(d) * d + np.arange(d)
    block = full.entries[np.ix_(diag, diag)]
    if np.abs(block.imag).max() > BLOCK_TOL:
        raise BlockStructureError(f"block has imaginary parts up to {np.abs(block.imag).max():g}")
    block = block.real
    if np.abs(block - block.T).max() > BLOCK_TOL:
        raise BlockStructureError("block is not symmetric")
    for r in range(d):
        diag_r = np.diagonal(block, offset=r)
        if np.abs(diag_r - diag_r[0]).max() > BLOCK_TOL:
            raise BlockStructureError(f"block diagonal {r} is not constant")
    return ReducedBellOperator(d, block[0].copy())
