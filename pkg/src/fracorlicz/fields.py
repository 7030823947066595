"""Discrete compactly supported functions on symmetric grids (n = 1 or 2).

Cells are axis-aligned cubes of side h centered at ((i + 1/2) h, ...) for
signed indices i = -K .. K-1, so the center set is closed under x -> -x and
no cell sits at the origin.  A Field stores one value per cell and is zero
outside the grid.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Grid", "Field", "DomainMask", "HalfSpace", "Mollifier",
    "sample_field", "translate", "mollify", "truncate", "superlevel_measure",
    "write_field_csv", "read_field_csv",
]


@dataclass(frozen=True)
class Grid:
    n: int
    h: float
    half_extent: int    # K; 2K cells per axis

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError("dimension must be 1 or 2")
        if not self.h > 0:
            raise ValueError("spacing h must be positive")
        if self.half_extent < 1:
            raise ValueError("half extent must be >= 1")

    @property
    def cells_per_axis(self) -> int:
        return 2 * self.half_extent

    @property
    def shape(self) -> tuple:
        return (self.cells_per_axis,) * self.n

    @property
    def ncells(self) -> int:
        return self.cells_per_axis ** self.n

    @property
    def cell_measure(self) -> float:
        return self.h ** self.n

    def axis_coords(self) -> np.ndarray:
        idx = np.arange(-self.half_extent, self.half_extent)
        return (idx + 0.5) * self.h

    def centers(self) -> np.ndarray:
        """(ncells, n) cell centers in row-major flat order."""
        ax = self.axis_coords()
        if self.n == 1:
            return ax[:, None]
        X, Y = np.meshgrid(ax, ax, indexing="ij")
        return np.column_stack([X.ravel(), Y.ravel()])

    def center_norms(self) -> np.ndarray:
        c = self.centers()
        return np.sqrt(np.sum(c * c, axis=1))

    def signed_indices(self) -> np.ndarray:
        """(ncells, n) signed cell indices in row-major flat order."""
        idx = np.arange(-self.half_extent, self.half_extent)
        if self.n == 1:
            return idx[:, None]
        I, J = np.meshgrid(idx, idx, indexing="ij")
        return np.column_stack([I.ravel(), J.ravel()])


class Field:
    """Immutable cell values on a grid; implicit 0 outside."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid, values):
        arr = np.array(values, dtype=np.float64).reshape(grid.shape)
        if not np.all(np.isfinite(arr)):
            bad = tuple(int(k) for k in np.argwhere(~np.isfinite(arr))[0])
            raise ValueError(f"non-finite value at cell index {bad}")
        arr.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", arr)

    def __setattr__(self, *a):
        raise AttributeError("Field is immutable")

    @property
    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def with_values(self, values) -> "Field":
        return Field(self.grid, values)

    @classmethod
    def zeros(cls, grid: Grid) -> "Field":
        return cls(grid, np.zeros(grid.shape))

    def __eq__(self, other):
        return (isinstance(other, Field) and self.grid == other.grid
                and np.array_equal(self.values, other.values))

    def __repr__(self):
        return f"Field(grid={self.grid!r}, max={self.flat.max():g})"


@dataclass(frozen=True)
class DomainMask:
    """Boolean cell selection marking the domain of an eigenproblem."""
    grid: Grid
    cells: np.ndarray   # bool, grid shape

    def __post_init__(self):
        arr = np.array(self.cells, dtype=bool).reshape(self.grid.shape)
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)

    @property
    def flat(self) -> np.ndarray:
        return self.cells.reshape(-1)

    @property
    def count(self) -> int:
        return int(np.sum(self.cells))

    def measure(self) -> float:
        return self.count * self.grid.cell_measure


class HalfSpace:
    """Closed half-space whose reflection maps the cell-center lattice to itself.

    ``kind`` is "axis" (boundary orthogonal to one axis at two_offset * h/2),
    "diag" (x1 = x2, 2D) or "anti" (x1 = -x2, 2D); diagonals pass through the
    origin.  ``side`` +1 keeps the upper side (x_axis >= c, x1 >= x2,
    x1 + x2 >= 0), -1 the lower one.  Wall boundaries (even two_offset) miss
    every cell center; center boundaries (odd two_offset) and diagonals pass
    through cells which the reflection fixes.
    """

    __slots__ = ("kind", "axis", "two_offset", "side")

    def __init__(self, kind: str = "axis", axis: int = 0, two_offset: int = 0,
                 side: int = 1):
        if kind not in ("axis", "diag", "anti"):
            raise ValueError("kind must be axis, diag or anti")
        if side not in (1, -1):
            raise ValueError("side must be +1 or -1")
        if kind != "axis" and two_offset != 0:
            raise ValueError("diagonal boundaries pass through the origin")
        self.kind = kind
        self.axis = int(axis)
        self.two_offset = int(two_offset)
        self.side = int(side)

    @classmethod
    def axis_aligned(cls, axis: int, boundary_in_h: float, side: int) -> "HalfSpace":
        """Boundary at boundary_in_h * h; must be a multiple of 1/2."""
        two = 2.0 * boundary_in_h
        if abs(two - round(two)) > 1e-12:
            raise ValueError("boundary must be an integer multiple of h/2")
        return cls("axis", axis, int(round(two)), side)

    def check_grid(self, grid: Grid) -> None:
        if self.kind == "axis":
            if not (0 <= self.axis < grid.n):
                raise ValueError(f"axis {self.axis} out of range for n={grid.n}")
        elif grid.n != 2:
            raise ValueError("diagonal half-spaces need a 2-d grid")

    def contains(self, grid: Grid) -> np.ndarray:
        """Closed membership of the grid's cell centers, flat bool array."""
        self.check_grid(grid)
        idx = grid.signed_indices()
        if self.kind == "axis":
            # center coord (2 i + 1) h/2 vs boundary two_offset h/2
            lhs = 2 * idx[:, self.axis] + 1 - self.two_offset
        elif self.kind == "diag":
            lhs = idx[:, 0] - idx[:, 1]
        else:
            lhs = idx[:, 0] + idx[:, 1] + 1
        return lhs >= 0 if self.side > 0 else lhs <= 0

    def reflect_signed(self, idx: np.ndarray) -> np.ndarray:
        """Mirror signed indices across the boundary (lattice map)."""
        out = idx.copy()
        if self.kind == "axis":
            out[:, self.axis] = self.two_offset - 1 - idx[:, self.axis]
        elif self.kind == "diag":
            out[:, 0], out[:, 1] = idx[:, 1].copy(), idx[:, 0].copy()
        else:
            out[:, 0], out[:, 1] = -idx[:, 1] - 1, -idx[:, 0] - 1
        return out

    def maps_grid_onto_itself(self, grid: Grid) -> bool:
        """True when the reflection permutes this finite grid's centers.

        Exactly the through-origin walls and the 2D diagonals; every other
        boundary sends part of the box outside it.
        """
        self.check_grid(grid)
        return self.two_offset == 0

    def contains_origin(self) -> bool:
        """Closed membership of x = 0 (interior for axis walls with offset)."""
        if self.kind != "axis":
            return True
        lhs = -self.two_offset
        return lhs >= 0 if self.side > 0 else lhs <= 0

    def describe(self) -> str:
        if self.kind == "axis":
            return (f"axis{self.axis}@{self.two_offset / 2:g}h:"
                    f"{'+' if self.side > 0 else '-'}")
        return f"{self.kind}:{'+' if self.side > 0 else '-'}"

    def __repr__(self):
        return f"HalfSpace({self.describe()})"

    def __eq__(self, other):
        return (isinstance(other, HalfSpace)
                and (self.kind, self.axis, self.two_offset, self.side)
                == (other.kind, other.axis, other.two_offset, other.side))

    def __hash__(self):
        return hash((self.kind, self.axis, self.two_offset, self.side))


class Mollifier:
    """Nonnegative symmetric convolution kernel with exact unit mass.

    The center weight absorbs the rounding residue of the normalization so
    that both Sum(rho) == 1 and rho(-z) == rho(z) hold exactly.
    """

    __slots__ = ("weights", "radius")

    def __init__(self, weights):
        w = np.array(weights, dtype=np.float64)
        if w.ndim not in (1, 2):
            raise ValueError("kernel must be 1-d or 2-d")
        if any(s % 2 == 0 for s in w.shape):
            raise ValueError("kernel sides must be odd (2 radius + 1)")
        if np.any(w < 0):
            raise ValueError("kernel weights must be nonnegative")
        # symmetrize exactly, normalize, close the sum at the center
        w = 0.5 * (w + np.flip(w))
        total = w.sum()
        if total <= 0:
            raise ValueError("kernel must have positive mass")
        w = w / total
        center = tuple(s // 2 for s in w.shape)
        others = w.sum() - w[center]
        w[center] = 1.0 - others
        if not np.array_equal(w, np.flip(w)):
            raise ValueError("kernel symmetrization failed")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "radius", w.shape[0] // 2)

    def __setattr__(self, *a):
        raise AttributeError("Mollifier is immutable")

    @classmethod
    def uniform(cls, radius: int, n: int) -> "Mollifier":
        side = 2 * radius + 1
        return cls(np.ones((side,) * n))

    @classmethod
    def triangular(cls, radius: int, n: int) -> "Mollifier":
        prof = (radius + 1.0) - np.abs(np.arange(-radius, radius + 1, dtype=float))
        return cls(prof if n == 1 else np.outer(prof, prof))


# -- operators --------------------------------------------------------------

def sample_field(grid: Grid, fn) -> Field:
    """Evaluate fn at every cell center; fn takes n scalar coordinates."""
    centers = grid.centers()
    vals = np.empty(grid.ncells)
    for k, c in enumerate(centers):
        v = fn(*c)
        if not np.isfinite(v):
            idx = tuple(int(i) for i in grid.signed_indices()[k])
            raise ValueError(f"non-finite sample at cell {idx} (center {tuple(c)})")
        vals[k] = v
    return Field(grid, vals.reshape(grid.shape))


def translate(u: Field, shift) -> Field:
    """tau_h u(x) = u(x + h) with h = shift * grid spacing; zero fill."""
    shift = np.atleast_1d(np.asarray(shift, dtype=int))
    if shift.size != u.grid.n:
        raise ValueError("one integer shift per axis required")
    out = u.values
    for ax, s in enumerate(shift):
        out = _shift_axis(out, ax, int(s))
    return Field(u.grid, out)


def _shift_axis(arr: np.ndarray, axis: int, s: int) -> np.ndarray:
    if s == 0:
        return arr
    out = np.zeros_like(arr)
    n = arr.shape[axis]
    if abs(s) >= n:
        return out
    src = [slice(None)] * arr.ndim
    dst = [slice(None)] * arr.ndim
    if s > 0:
        src[axis], dst[axis] = slice(s, n), slice(0, n - s)
    else:
        src[axis], dst[axis] = slice(0, n + s), slice(-s, n)
    out[tuple(dst)] = arr[tuple(src)]
    return out


def _support_box(u: Field):
    nz = np.argwhere(u.values != 0.0)
    if nz.size == 0:
        return None
    return nz.min(axis=0), nz.max(axis=0)


def mollify(u: Field, rho: Mollifier) -> Field:
    """Discrete convolution u * rho.

    Requires the support of u plus the kernel radius to fit inside the grid,
    so the convolution equals the free-space one and total mass is kept.
    """
    if rho.weights.ndim != u.grid.n:
        raise ValueError("kernel dimension must match the grid")
    box = _support_box(u)
    if box is not None:
        lo, hi = box
        m = u.grid.cells_per_axis
        if np.any(lo - rho.radius < 0) or np.any(hi + rho.radius >= m):
            raise ValueError(
                "support plus kernel radius leaves the grid; enlarge the grid "
                f"(support box {lo.tolist()}..{hi.tolist()}, radius {rho.radius})")
    out = np.zeros(u.grid.shape)
    w = rho.weights
    r = rho.radius
    it = np.ndindex(w.shape) if u.grid.n == 2 else ((k,) for k in range(w.shape[0]))
    for offs in it:
        wt = w[tuple(offs)]
        if wt == 0.0:
            continue
        shift = tuple(int(o) - r for o in offs)
        shifted = u.values
        for ax, s in enumerate(shift):
            shifted = _shift_axis(shifted, ax, s)
        out += wt * shifted
    return Field(u.grid, out)


def truncate(u: Field, k: float) -> Field:
    """Multiply by the radial cutoff: 1 on |x| <= k, 0 on |x| >= 2k, linear
    in between (slope 1/k)."""
    if not k > 0:
        raise ValueError("truncation radius must be positive")
    r = u.grid.center_norms().reshape(u.grid.shape)
    profile = np.clip((2.0 * k - r) / k, 0.0, 1.0)
    return Field(u.grid, u.values * profile)


def superlevel_measure(u: Field, lam: float) -> float:
    """Measure of the strict superlevel set {u > lam}."""
    return float(np.count_nonzero(u.values > lam)) * u.grid.cell_measure


# -- CSV round trip ----------------------------------------------------------

def write_field_csv(u: Field, path_or_buf) -> None:
    """Header line ``n,h,K``, its values, then one ``index...,value`` row per
    cell (signed indices, 17 significant digits)."""
    lines = ["n,h,K", f"{u.grid.n},{u.grid.h:.17g},{u.grid.half_extent}"]
    idx = u.grid.signed_indices()
    for k, v in enumerate(u.flat):
        ix = ",".join(str(int(i)) for i in idx[k])
        lines.append(f"{ix},{v:.17g}")
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_buf, "write"):
        path_or_buf.write(text)
    else:
        with open(path_or_buf, "w") as fh:
            fh.write(text)


def read_field_csv(path_or_buf) -> Field:
    if hasattr(path_or_buf, "read"):
        text = path_or_buf.read()
    else:
        with open(path_or_buf) as fh:
            text = fh.read()
    lines = [ln.strip() for ln in io.StringIO(text) if ln.strip()]
    if not lines or lines[0] != "n,h,K":
        raise ValueError("field CSV must start with the header 'n,h,K'")
    n_s, h_s, K_s = lines[1].split(",")
    grid = Grid(int(n_s), float(h_s), int(K_s))
    vals = np.full(grid.shape, np.nan)
    if len(lines) - 2 != grid.ncells:
        raise ValueError(f"expected {grid.ncells} cell rows, got {len(lines) - 2}")
    K = grid.half_extent
    for ln in lines[2:]:
        parts = ln.split(",")
        if len(parts) != grid.n + 1:
            raise ValueError(f"bad cell row {ln!r}")
        idx = tuple(int(p) + K for p in parts[:-1])
        if any(not (0 <= i < grid.cells_per_axis) for i in idx):
            raise ValueError(f"cell index out of range in row {ln!r}")
        if not np.isnan(vals[idx]):
            raise ValueError(f"duplicate cell in row {ln!r}")
        vals[idx] = float(parts[-1])
    return Field(grid, vals)
