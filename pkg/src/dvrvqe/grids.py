"""Uniform-grid DVR construction: grids, kinetic matrices, band profiles.

Three grid variants are supported, each with an analytic kinetic-energy
matrix on equally spaced points:

* ``infinite``       x on (-inf, inf), points x_min + j*dx, j = 0..2^n-1
* ``half-infinite``  x on (0, inf), points j*dx, j = 1..2^n (x=0 excluded)
* ``finite``         x on (a, b), N = 2^n+1 divisions, interior points only

The point count is always 2^n so that grid indices map directly onto
n-qubit computational basis states (number encoding).

Off-diagonal kinetic elements take the form f(|i-j|) + g(i+j) with
0-based matrix indices; ``BandProfile`` stores d, f, g with the kinetic
scale E_T = hbar^2/(2 m dx^2) already folded in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolationError, ResourceLimitError

VARIANTS = ("infinite", "half-infinite", "finite")

MAX_QUBITS = 14


@dataclass(frozen=True)
class GridSpec:
    """An equally spaced DVR grid with 2^n points."""

    variant: str
    n_qubits: int
    mass: float
    points: np.ndarray
    dx: float
    kinetic_scale: float  # E_T = hbar^2 / (2 m dx^2), hartree
    a: float | None = None
    b: float | None = None

    @property
    def n_points(self) -> int:
        return 2 ** self.n_qubits


@dataclass(frozen=True)
class BandProfile:
    """Diagonal, band and anti-diagonal values of a kinetic matrix.

    f is indexed by k = |i-j| (entry 0 unused, kept zero); g is indexed by
    k = i+j over the full realized range [0, 2^(n+1)-2]. For variants whose
    raw anti-diagonal term carries a (-1)^(i-j) sign, that sign is folded
    into g(i+j), which is well defined because i-j and i+j share parity.
    """

    n_qubits: int
    d: np.ndarray
    f: np.ndarray
    g: np.ndarray
    kinetic_scale: float

    def to_matrix(self) -> np.ndarray:
        n_pts = 2 ** self.n_qubits
        idx = np.arange(n_pts)
        diff = np.abs(idx[:, None] - idx[None, :])
        summ = idx[:, None] + idx[None, :]
        mat = self.f[diff] + self.g[summ]
        np.fill_diagonal(mat, self.d)
        return mat


def build_grid(variant, params, n_qubits, mass) -> GridSpec:
    """Build a GridSpec.

    ``params`` holds the variant-specific geometry: {'a','b'} for finite,
    {'x_min','dx'} for infinite, {'dx'} for half-infinite. Mass is in
    electron masses.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown grid variant {variant!r}; expected one of {VARIANTS}")
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    if n_qubits > MAX_QUBITS:
        raise ResourceLimitError(
            f"n_qubits={n_qubits} would need a dense {2**n_qubits}x{2**n_qubits} matrix"
            f" (limit {MAX_QUBITS})"
        )
    if mass <= 0:
        raise ValueError(f"mass must be positive, got {mass}")

    n_pts = 2 ** n_qubits
    a = b = None
    if variant == "finite":
        a, b = float(params["a"]), float(params["b"])
        if b <= a:
            raise ValueError(f"finite grid needs b > a, got a={a}, b={b}")
        dx = (b - a) / (n_pts + 1)
        points = a + dx * np.arange(1, n_pts + 1)
    elif variant == "half-infinite":
        dx = float(params["dx"])
        if dx <= 0:
            raise ValueError(f"grid spacing must be positive, got dx={dx}")
        points = dx * np.arange(1, n_pts + 1)
    else:
        dx = float(params["dx"])
        if dx <= 0:
            raise ValueError(f"grid spacing must be positive, got dx={dx}")
        x_min = float(params["x_min"])
        points = x_min + dx * np.arange(n_pts)

    e_t = 1.0 / (2.0 * mass * dx * dx)
    points.setflags(write=False)
    return GridSpec(variant, n_qubits, float(mass), points, dx, e_t, a, b)


def band_profile(grid: GridSpec) -> BandProfile:
    """Compute (d, f, g) for the grid's kinetic matrix.

    Raises InvariantViolationError if the profile fails to reconstruct the
    directly assembled kinetic matrix.
    """
    n = grid.n_qubits
    n_pts = 2 ** n
    e_t = grid.kinetic_scale
    i1 = np.arange(1, n_pts + 1)        # 1-based physical index
    k_band = np.arange(n_pts, dtype=float)      # |i-j|, entry 0 unused
    k_anti = np.arange(2 * n_pts - 1, dtype=float)  # i+j

    sign_band = (-1.0) ** k_band
    sign_anti = (-1.0) ** k_anti

    if grid.variant == "infinite":
        d = np.full(n_pts, e_t * np.pi**2 / 3.0)
        f = np.zeros(n_pts)
        f[1:] = e_t * sign_band[1:] * 2.0 / k_band[1:] ** 2
        g = np.zeros(2 * n_pts - 1)
    elif grid.variant == "half-infinite":
        d = e_t * (np.pi**2 / 3.0 - 1.0 / (2.0 * i1**2))
        f = np.zeros(n_pts)
        f[1:] = e_t * sign_band[1:] * 2.0 / k_band[1:] ** 2
        # raw term -2/(iota+iota')^2 with iota+iota' = (i+j)+2
        g = -e_t * sign_anti * 2.0 / (k_anti + 2.0) ** 2
    else:
        big_n = n_pts + 1
        scale = e_t * np.pi**2 / (2.0 * big_n**2)
        d = scale * ((2.0 * big_n**2 + 1.0) / 3.0 - 1.0 / np.sin(np.pi * i1 / big_n) ** 2)
        f = np.zeros(n_pts)
        f[1:] = scale * sign_band[1:] / np.sin(np.pi * k_band[1:] / (2.0 * big_n)) ** 2
        g = -scale * sign_anti / np.sin(np.pi * (k_anti + 2.0) / (2.0 * big_n)) ** 2

    for arr in (d, f, g):
        arr.setflags(write=False)
    profile = BandProfile(n, d, f, g, e_t)

    check = profile.to_matrix()
    direct = _kinetic_direct(grid)
    scale_ref = max(np.max(np.abs(direct)), 1.0)
    if np.max(np.abs(check - direct)) > 1e-14 * scale_ref:
        raise InvariantViolationError(
            f"band profile does not reconstruct the kinetic matrix for {grid.variant}"
        )
    return profile


def kinetic_matrix(grid: GridSpec) -> np.ndarray:
    """Dense kinetic-energy matrix for the grid (hartree)."""
    return band_profile(grid).to_matrix()


def _kinetic_direct(grid: GridSpec) -> np.ndarray:
    # Element-wise evaluation of the closed-form matrix elements, kept
    # independent of the band-profile assembly as a consistency check.
    n_pts = 2 ** grid.n_qubits
    e_t = grid.kinetic_scale
    i = np.arange(n_pts)[:, None]
    j = np.arange(n_pts)[None, :]
    sign = (-1.0) ** (i - j)
    if grid.variant == "infinite":
        with np.errstate(divide="ignore"):
            t = e_t * sign * 2.0 / np.where(i == j, 1.0, (i - j).astype(float)) ** 2
        np.fill_diagonal(t, e_t * np.pi**2 / 3.0)
    elif grid.variant == "half-infinite":
        ii, jj = i + 1, j + 1  # 1-based physical indices
        with np.errstate(divide="ignore"):
            off = 2.0 / np.where(ii == jj, 1.0, (ii - jj).astype(float)) ** 2 - 2.0 / (ii + jj) ** 2
        t = e_t * sign * off
        diag = e_t * (np.pi**2 / 3.0 - 1.0 / (2.0 * np.arange(1, n_pts + 1) ** 2))
        np.fill_diagonal(t, diag)
    else:
        big_n = n_pts + 1
        scale = e_t * np.pi**2 / (2.0 * big_n**2)
        ii, jj = i + 1, j + 1
        with np.errstate(divide="ignore"):
            off = (
                1.0 / np.sin(np.pi * np.where(ii == jj, 1, ii - jj) / (2.0 * big_n)) ** 2
                - 1.0 / np.sin(np.pi * (ii + jj) / (2.0 * big_n)) ** 2
            )
        t = scale * sign * off
        diag = scale * (
            (2.0 * big_n**2 + 1.0) / 3.0
            - 1.0 / np.sin(np.pi * np.arange(1, n_pts + 1) / big_n) ** 2
        )
        np.fill_diagonal(t, diag)
    return t


def tail_sums(profile: BandProfile, s: int, r: int) -> tuple[float, float]:
    """Exact tail sums (F_s, G_r) of the band profile.

    F_s sums |f(k)| over k = s..2^n-1. G_r sums |g(k)| over the dropped
    anti-diagonals k = r..2^(n+1)-2-r, i.e. everything outside retention
    windows of width r at the two corners.
    """
    n_pts = 2 ** profile.n_qubits
    if not 1 <= s <= n_pts:
        raise ValueError(f"s must be in [1, {n_pts}], got {s}")
    if not 0 <= r <= n_pts:
        raise ValueError(f"r must be in [0, {n_pts}], got {r}")
    f_tail = float(np.sum(np.abs(profile.f[s:])))
    lo, hi = r, 2 * n_pts - 2 - r
    g_tail = float(np.sum(np.abs(profile.g[lo : hi + 1]))) if lo <= hi else 0.0
    return f_tail, g_tail
