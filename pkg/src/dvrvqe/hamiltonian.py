"""DVR Hamiltonian assembly, band truncation and classical benchmarks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .grids import BandProfile, GridSpec, band_profile, tail_sums
from .potentials import potential_on_grid


@dataclass(frozen=True)
class DvrHamiltonian:
    grid: GridSpec
    kinetic: np.ndarray
    potential_diag: np.ndarray
    full: np.ndarray
    profile: BandProfile  # kinetic part only; the potential folds into d

    @property
    def n_qubits(self) -> int:
        return self.grid.n_qubits

    @property
    def n_points(self) -> int:
        return self.grid.n_points


def assemble(grid: GridSpec, potential=None) -> DvrHamiltonian:
    """Build H = T + diag(V) on the grid. ``potential=None`` means V = 0."""
    profile = band_profile(grid)
    kinetic = profile.to_matrix()
    if potential is None:
        v = np.zeros(grid.n_points)
    else:
        v = potential_on_grid(potential, grid)
    full = kinetic + np.diag(v)
    for arr in (kinetic, v, full):
        arr.setflags(write=False)
    return DvrHamiltonian(grid, kinetic, v, full, profile)


def retained_antidiagonals(n_qubits: int, r: int, streamlined: bool = False) -> np.ndarray:
    """Indices k = i+j of the anti-diagonals kept by a width-r truncation.

    Keeps the first r anti-diagonals (k = 0..r-1) and, unless streamlined,
    the mirrored last r (k = 2^(n+1)-1-r .. 2^(n+1)-2).
    """
    n_pts = 2 ** n_qubits
    kept = np.zeros(2 * n_pts - 1, dtype=bool)
    r = min(r, 2 * n_pts - 1)
    kept[:r] = True
    if not streamlined and r > 0:
        kept[2 * n_pts - 1 - r :] = True
    return kept


def truncate(h: DvrHamiltonian, s: int, r: int, streamlined: bool = False) -> np.ndarray:
    """Kinetic truncation T^(s,r) + diag(V).

    The band part f(|i-j|) is kept for |i-j| < s and the anti-diagonal
    part g(i+j) where i+j falls in the retained window of width r; the
    two conditions act on their own terms, matching the band/anti-diagonal
    operator decomposition a measurement plan assembles. The diagonal
    (including the potential) is always kept; s=1, r=0 degenerates to a
    diagonal-only kinetic part.
    """
    if s < 0 or r < 0:
        raise ValueError(f"s and r must be non-negative, got s={s}, r={r}")
    n_pts = h.n_points
    idx = np.arange(n_pts)
    diff = np.abs(idx[:, None] - idx[None, :])
    summ = idx[:, None] + idx[None, :]
    kept_anti = retained_antidiagonals(h.n_qubits, r, streamlined)
    profile = h.profile
    out = np.where(diff < s, profile.f[diff], 0.0) + np.where(kept_anti[summ], profile.g[summ], 0.0)
    np.fill_diagonal(out, np.diag(h.full))
    return out


def truncation_error_bound(profile: BandProfile, s: int, r: int) -> float:
    """Upper bound 2*F_s + G_r on |<psi|(T - T^(s,r))|psi>| for unit psi."""
    f_tail, g_tail = tail_sums(profile, s, r)
    return 2.0 * f_tail + g_tail


def classical_spectrum(matrix: np.ndarray, count: int | None = None) -> np.ndarray:
    """Lowest ``count`` eigenvalues of a symmetric matrix, ascending."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    scale = max(np.max(np.abs(matrix)), 1.0)
    if np.max(np.abs(matrix - matrix.T)) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    vals = scipy.linalg.eigvalsh(matrix)
    if count is not None:
        vals = vals[:count]
    return vals


def save_matrix_csv(path, matrix: np.ndarray) -> None:
    """Full dense CSV export, one row per line, 17 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        for row in np.asarray(matrix):
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
