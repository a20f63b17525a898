"""Traceless Hermitian generator basis (generalized Gell-Mann matrices) and
the coefficient-vector maps between states and real vectors.

This module is the single place the index convention is defined; reports and
coefficient vectors elsewhere refer back to it.

For dimension d the basis has d**2 - 1 members, indexed 1-based:

- ``i`` in ``1..d-1``: diagonal generators ``D_l`` with ``l = i - 1``,
  ``D_l = sqrt(2 / ((l+1)(l+2))) * (sum_{a<=l} |a><a| - (l+1) |l+1><l+1|)``.
- ``i`` in ``d..(d-1)(d+2)/2``: symmetric off-diagonal
  ``U_jk = |j><k| + |k><j|``, pairs ``0 <= j < k <= d-1`` enumerated
  lexicographically ((0,1), (0,2), ..., (1,2), ...).
- ``i`` in ``d(d+1)/2..d**2-1``: antisymmetric off-diagonal
  ``V_jk = -i (|j><k| - |k><j|)``, same pair order.

Basis kets are 0-indexed ``|0>..|d-1>``.  Every generator is Hermitian,
traceless, and normalized to ``Tr(g_i g_j) = 2 delta_ij``.  For d = 2 the
indices (1, 2, 3) give (sigma_z, sigma_x, sigma_y).

A density matrix expands as ``rho = (I + sum_i r_i g_i) / d`` with real
coefficients ``r_i = (d/2) Tr(rho g_i)``; off-diagonal entries of rho load
only the indices >= d, which is what ``offdiag_support`` reads off.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations
from typing import TYPE_CHECKING

import numpy as np

from .errors import DimensionMismatchError, IndexOutOfRangeError, LengthMismatchError
from .linalg import ComplexMatrix

if TYPE_CHECKING:
    from .states import DensityMatrix

# |r_i| above this counts as off-diagonal support.
OFFDIAG_TOL = 1e-9


def _build_matrices(d: int) -> list[np.ndarray]:
    mats = []
    for l in range(d - 1):
        m = np.zeros((d, d), dtype=np.complex128)
        coeff = math.sqrt(2.0 / ((l + 1) * (l + 2)))
        for a in range(l + 1):
            m[a, a] = coeff
        m[l + 1, l + 1] = -(l + 1) * coeff
        mats.append(m)
    pairs = list(combinations(range(d), 2))
    for j, k in pairs:
        m = np.zeros((d, d), dtype=np.complex128)
        m[j, k] = 1.0
        m[k, j] = 1.0
        mats.append(m)
    for j, k in pairs:
        m = np.zeros((d, d), dtype=np.complex128)
        m[j, k] = -1.0j
        m[k, j] = 1.0j
        mats.append(m)
    return mats


class GeneratorBasis:
    """The full generator basis for one dimension.

    Immutable after construction; ``generator_basis(d)`` memoizes one instance
    per dimension, safe to share across threads.
    """

    def __init__(self, dim: int):
        if dim < 2:
            raise DimensionMismatchError(f"generator basis needs dim >= 2, got {dim}")
        self.dim = int(dim)
        mats = _build_matrices(self.dim)
        stack = np.stack(mats)
        stack.setflags(write=False)
        for m in mats:
            m.setflags(write=False)
        self.matrices: tuple[np.ndarray, ...] = tuple(mats)
        self.stack = stack  # shape (d**2 - 1, d, d), read-only

    @property
    def size(self) -> int:
        return self.dim * self.dim - 1

    @property
    def n_diagonal(self) -> int:
        return self.dim - 1

    @property
    def offdiag_indices(self) -> range:
        """1-based indices of the off-diagonal (U and V) generators."""
        return range(self.dim, self.dim * self.dim)

    def __repr__(self):
        return f"GeneratorBasis(dim={self.dim})"


@lru_cache(maxsize=None)
def generator_basis(d: int) -> GeneratorBasis:
    """Memoized basis for dimension d."""
    return GeneratorBasis(d)


def generator(d: int, i: int) -> ComplexMatrix:
    """The i-th basis generator (1-based, ordering per module docstring)."""
    if not 1 <= i <= d * d - 1:
        raise IndexOutOfRangeError(f"generator index {i} outside 1..{d * d - 1} for dim {d}")
    return generator_basis(d).matrices[i - 1]


def bloch_vector(state: "DensityMatrix") -> np.ndarray:
    """Real coefficient vector r with r_i = (d/2) Tr(rho g_i), length d**2 - 1.

    For a valid state ``norm(r) <= sqrt(d(d-1)/2)`` up to roundoff, with
    equality only on pure states.
    """
    b = generator_basis(state.dim)
    # One trace product per generator, vectorized over the stacked basis.
    return 0.5 * state.dim * np.real(np.einsum("kij,ji->k", b.stack, state.matrix))


def state_from_bloch(d: int, r) -> ComplexMatrix:
    """(1/d)(I + sum_i r_i g_i): Hermitian with unit trace by construction.

    The result is NOT guaranteed positive semidefinite for d >= 3 even at
    small norm; wrap it in ``DensityMatrix`` to validate.
    """
    v = np.asarray(r, dtype=np.float64)
    if v.shape != (d * d - 1,):
        raise LengthMismatchError(
            f"coefficient vector must have length {d * d - 1} for dim {d}, got {v.shape}"
        )
    b = generator_basis(d)
    return (np.eye(d, dtype=np.complex128) + np.einsum("k,kij->ij", v, b.stack)) / d


def offdiag_support(state: "DensityMatrix") -> set[int]:
    """1-based generator indices i >= d where |r_i| exceeds OFFDIAG_TOL.

    Empty exactly when the state is diagonal within tolerance, because the
    off-diagonal entries of the state load only these indices.
    """
    r = bloch_vector(state)
    d = state.dim
    return {i for i in range(d, d * d) if abs(r[i - 1]) > OFFDIAG_TOL}
