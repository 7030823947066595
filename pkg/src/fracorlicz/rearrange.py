"""Schwarz symmetrization and two-point polarization on the grid.

Polarization across a half-space H swaps each cell value with its mirror so
that the larger of the two ends up on the H side.  The energy inequality
phi_MNG(u_H) <= phi_MNG(u) is exact whenever the reflection permutes the
finite grid (boundary through the origin, or a 2D diagonal): every
four-point orbit of the comparison argument then stays inside the pair sum.
For other lattice-compatible boundaries the truncated sum can genuinely
increase, because couplings of moved values to cells whose mirror falls
outside the grid are unbalanced; see the docstring of
``iterate_polarizations``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fields import Field, Grid, HalfSpace
from .kernels import KernelPair
from .modular import PairTable, lg_distance, phi_MNG
from .young import YoungFunction

__all__ = [
    "schwarz", "schwarz_cell_order", "polarize", "box_symmetric_halfspaces",
    "lattice_halfspaces", "iterate_polarizations", "PolarizationTrace",
    "TraceStep",
]


def schwarz_cell_order(grid: Grid) -> np.ndarray:
    """Flat cell indices sorted by (distance to origin, lexicographic center)."""
    centers = grid.centers()
    norms = grid.center_norms()
    keys = [norms] + [centers[:, ax] for ax in range(grid.n)]
    return np.lexsort(tuple(reversed(keys)))


def schwarz(u: Field) -> Field:
    """Symmetric decreasing rearrangement of a nonnegative field.

    Values are sorted descending (stable, so equal values keep their
    row-major order) and placed on cells ordered by distance to the origin,
    ties broken toward the lexicographically smaller center.  The result is
    equimeasurable with the input: the value multiset is untouched.
    """
    flat = u.flat
    neg = np.flatnonzero(flat < 0)
    if neg.size:
        idx = tuple(int(i) for i in u.grid.signed_indices()[neg[0]])
        raise ValueError(f"negative value at cell {idx}; rearrangement needs u >= 0")
    order = schwarz_cell_order(u.grid)
    sorted_vals = flat[np.argsort(-flat, kind="stable")]
    out = np.empty_like(flat)
    out[order] = sorted_vals
    return Field(u.grid, out.reshape(u.grid.shape))


def polarize(u: Field, H: HalfSpace) -> Field:
    """Two-point rearrangement of u across H.

    Cells in H receive max(u(x), u(x~)), the others min; mirrors that fall
    off the grid count as 0.  If a nonzero value would land outside the grid
    the half-space is incompatible with the field and a ValueError is
    raised.  When no value escapes, the value multiset is preserved.
    """
    H.check_grid(u.grid)
    grid = u.grid
    idx = grid.signed_indices()
    refl = H.reflect_signed(idx)
    K = grid.half_extent
    inside = np.all((refl >= -K) & (refl <= K - 1), axis=1)
    arr = refl + K
    flat_mirror = arr[:, 0] if grid.n == 1 else arr[:, 0] * grid.cells_per_axis + arr[:, 1]
    flat = u.flat
    partner = np.where(inside, flat[np.where(inside, flat_mirror, 0)], 0.0)
    in_h = H.contains(grid)
    out = np.where(in_h, np.maximum(flat, partner), np.minimum(flat, partner))
    # a mirror outside the grid belongs to the opposite side of H; it would
    # receive max(0, u) there (or min if on the complement side)
    escapes = ~inside & ((~in_h & (flat > 0)) | (in_h & (flat < 0)))
    if np.any(escapes):
        k = int(np.flatnonzero(escapes)[0])
        cell = tuple(int(i) for i in idx[k])
        raise ValueError(
            f"half-space {H.describe()} moves the value at cell {cell} off the "
            "grid; incompatible with this field")
    return Field(grid, out.reshape(grid.shape))


def box_symmetric_halfspaces(grid: Grid) -> list:
    """All half-spaces whose reflection permutes this grid's center set.

    Axis walls through the origin with both orientations, plus the two
    diagonals (both orientations) in 2D.
    """
    out = []
    for ax in range(grid.n):
        for side in (1, -1):
            out.append(HalfSpace("axis", ax, 0, side))
    if grid.n == 2:
        for kind in ("diag", "anti"):
            for side in (1, -1):
                out.append(HalfSpace(kind, 0, 0, side))
    return out


def lattice_halfspaces(grid: Grid, axis: int = 0) -> list:
    """1D iteration family: every boundary at j h/2 strictly inside the grid,
    oriented so that H contains the origin (non-positive side when the
    boundary passes through it)."""
    out = []
    top = 2 * grid.half_extent - 1
    for two_offset in range(-top, top + 1):
        side = -1 if two_offset >= 0 else 1
        out.append(HalfSpace("axis", axis, two_offset, side))
    return out


@dataclass
class TraceStep:
    halfspace: str
    phi: float
    distance: float


@dataclass
class PolarizationTrace:
    steps: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False

    def phi_values(self) -> np.ndarray:
        return np.array([s.phi for s in self.steps])

    def summary(self) -> dict:
        return {"iterations": self.iterations, "converged": self.converged,
                "final_distance": self.steps[-1].distance if self.steps else 0.0,
                "final_phi": self.steps[-1].phi if self.steps else None}


def iterate_polarizations(u: Field, G: YoungFunction, kernel: KernelPair,
                          *, seed: int = 0, tol: float = 1e-6,
                          max_iter: int = 10000) -> tuple:
    """Drive a nonnegative 1D field to its symmetric rearrangement.

    Boundaries at every multiple of h/2 inside the grid (including the
    origin wall) are drawn uniformly from a seeded stream, so each admissible
    reflection recurs; the side containing the origin is kept.  Every cell
    pair is connected through some such reflection and each applied step
    strictly increases the rank-weighted overlap with the target ordering,
    so the exact rearrangement is reached in finitely many steps.

    The trace records the half-space, the nonlocal modular and the Luxemburg
    distance to the target after every step.  The recorded modular is the
    truncated pair sum, which off-origin reflections may genuinely increase
    (couplings to cells whose mirror leaves the grid are one-sided); it is
    reported as observed.
    """
    if u.grid.n != 1:
        raise ValueError("iterated polarization is defined on 1D grids")
    target = schwarz(u)
    table = PairTable.for_pair(u.grid, kernel)
    pool = lattice_halfspaces(u.grid)
    rng = np.random.default_rng(seed)
    trace = PolarizationTrace()
    cur = u
    dist = lg_distance(cur, target, G)
    if dist <= tol:
        trace.converged = True
        return cur, trace
    for step in range(1, max_iter + 1):
        H = pool[int(rng.integers(len(pool)))]
        cur = polarize(cur, H)
        dist = lg_distance(cur, target, G)
        trace.steps.append(TraceStep(H.describe(),
                                     phi_MNG(cur, G, kernel, table), dist))
        trace.iterations = step
        if dist <= tol:
            trace.converged = True
            break
    return cur, trace
