"""Modulars, Luxemburg norms, the nonlocal pairing and its gradient.

The local modular is Sum_i G(u_i) h^n.  The nonlocal one runs over ordered
pairs of distinct cells,

    Sum_{i != j} G((u_i - u_j) / M(d_ij)) h^{2n} / N(d_ij),

evaluated as twice the unordered row-major sum (G is even).  Coincident
cells never enter, so the d -> 0 singularity of 1/N is never touched.
All reductions go through comp_sum with a fixed pair order, so results are
reproducible run to run regardless of any parallel evaluation of classes.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .fields import Field, Grid, translate
from .kernels import KernelPair
from .util import OutOfRangeError, comp_sum
from .young import YoungFunction

__all__ = [
    "PairTable", "LuxemburgNorms", "phi_G", "phi_MNG", "luxemburg",
    "lg_distance", "pairing", "modular_gradient", "translation_ratio",
    "embedding_bound", "EmbeddingReport", "PoincareCheck", "poincare_check",
    "poincare_smallest_constant", "unit_ball_volume",
]


def unit_ball_volume(n: int) -> float:
    if n == 1:
        return 2.0
    if n == 2:
        return float(np.pi)
    raise ValueError("n must be 1 or 2")


class PairTable:
    """Unordered distinct cell pairs grouped by exact distance class.

    Distance classes are keyed by the integer squared index offset, so pairs
    at the same geometric distance share bitwise-identical weights and each
    kernel is evaluated once per class.  Flat pair arrays keep row-major
    (i < j) order for deterministic summation.
    """

    def __init__(self, grid: Grid, kernel: KernelPair):
        if kernel.n != grid.n:
            raise ValueError("kernel dimension must match the grid")
        self.grid = grid
        self.kernel = kernel
        m = grid.ncells
        i_idx, j_idx = np.triu_indices(m, k=1)
        idx = grid.signed_indices()
        diff = idx[i_idx] - idx[j_idx]
        key = np.sum(diff * diff, axis=1)
        self.i_idx = i_idx
        self.j_idx = j_idx
        self.class_key, inverse, counts = np.unique(
            key, return_inverse=True, return_counts=True)
        self.class_dist = grid.h * np.sqrt(self.class_key.astype(float))
        M, N = kernel.eval(self.class_dist)
        self.class_M = np.asarray(M, float)
        self.class_wN = grid.cell_measure ** 2 / np.asarray(N, float)
        if not (np.all(np.isfinite(self.class_M)) and np.all(self.class_M > 0)
                and np.all(np.isfinite(self.class_wN)) and np.all(self.class_wN > 0)):
            raise ValueError("kernel weights must be positive and finite on the grid")
        self.class_counts = counts
        self.pair_M = self.class_M[inverse]
        self.pair_wN = self.class_wN[inverse]

    @classmethod
    def for_pair(cls, grid: Grid, kernel: KernelPair) -> "PairTable":
        cache = getattr(kernel, "_pair_tables", None)
        if cache is None:
            cache = {}
            setattr(kernel, "_pair_tables", cache)
        table = cache.get(grid)
        if table is None:
            table = cls(grid, kernel)
            cache[grid] = table
        return table

    def quotients(self, u: Field) -> np.ndarray:
        """Signed M-scaled differences (u_i - u_j)/M(d) per unordered pair."""
        flat = u.flat
        return (flat[self.i_idx] - flat[self.j_idx]) / self.pair_M


def _table(u: Field, kernel: KernelPair, table: PairTable | None) -> PairTable:
    if table is not None:
        if table.grid != u.grid:
            raise ValueError("pair table was built for a different grid")
        return table
    return PairTable.for_pair(u.grid, kernel)


def phi_G(u: Field, G: YoungFunction) -> float:
    """Local modular Sum G(u_i) h^n."""
    return comp_sum(G.G(u.flat)) * u.grid.cell_measure


def phi_MNG(u: Field, G: YoungFunction, kernel: KernelPair,
            table: PairTable | None = None) -> float:
    """Nonlocal modular over ordered distinct cell pairs."""
    tab = _table(u, kernel, table)
    terms = G.G(tab.quotients(u)) * tab.pair_wN
    return 2.0 * comp_sum(terms)


def pairing(u: Field, v: Field, G: YoungFunction, kernel: KernelPair,
            table: PairTable | None = None) -> float:
    """Weak form of the modular's gradient applied to v.

    Twice the unordered sum of g(D u) D v / N; pairs with D u = 0 vanish
    since g(0) = 0.
    """
    if u.grid != v.grid:
        raise ValueError("fields live on different grids")
    tab = _table(u, kernel, table)
    du = tab.quotients(u)
    dv = tab.quotients(v)
    return 2.0 * comp_sum(G.g(du) * dv * tab.pair_wN)


def modular_gradient(u: Field, G: YoungFunction, kernel: KernelPair,
                     table: PairTable | None = None) -> Field:
    """Euclidean gradient of phi_MNG in the cell values.

    Satisfies Sum_i grad_i v_i = pairing(u, v) for every v.
    """
    tab = _table(u, kernel, table)
    t = G.g(tab.quotients(u)) * tab.pair_wN / tab.pair_M
    m = u.grid.ncells
    grad = (np.bincount(tab.i_idx, weights=t, minlength=m)
            - np.bincount(tab.j_idx, weights=t, minlength=m))
    return Field(u.grid, 2.0 * grad.reshape(u.grid.shape))


class LuxemburgNorms(NamedTuple):
    lg_norm: float
    seminorm: float
    full_norm: float


def _unit_modular_scale(modular_of, start: float = 1.0) -> float:
    """Smallest lam with modular_of(lam) <= 1, by bracketing bisection.

    modular_of(lam) evaluates the modular of u/lam and is strictly
    decreasing; the doubling condition keeps the expansion safe from
    overflow once the initial evaluation is finite.
    """
    val = modular_of(start)      # non-finite initial bracket raises here
    if val == 1.0:
        return start
    lo = hi = start
    if val > 1.0:
        for _ in range(2000):
            hi *= 2.0
            if hi > 1e300:
                raise OutOfRangeError("norm bracket expansion failed")
            if modular_of(hi) <= 1.0:
                break
    else:
        for _ in range(2000):
            if lo < 1e-300:
                return 0.0       # modular stays below 1 at every scale
            lo *= 0.5
            if modular_of(lo) >= 1.0:
                break
        else:
            return 0.0
    # tighter than the contract width 1e-10 (1 + lam): pure relative, so
    # scaling a field scales the norm to the same relative accuracy
    while hi - lo > 1e-11 * hi:
        mid = 0.5 * (lo + hi)
        if modular_of(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return hi


def luxemburg(u: Field, G: YoungFunction, kernel: KernelPair,
              table: PairTable | None = None) -> LuxemburgNorms:
    """Luxemburg norm, seminorm and their sum.

    Each norm is the bisection solution of modular(u/lam) = 1; on exit the
    modular at u/norm lies within 1e-8 of 1.  The zero field maps to zeros.
    """
    if not np.any(u.values):
        return LuxemburgNorms(0.0, 0.0, 0.0)
    tab = _table(u, kernel, table)
    lg = _unit_modular_scale(lambda lam: phi_G(u.with_values(u.values / lam), G))
    semi = _unit_modular_scale(
        lambda lam: phi_MNG(u.with_values(u.values / lam), G, kernel, tab))
    return LuxemburgNorms(lg, semi, lg + semi)


def lg_distance(u: Field, v: Field, G: YoungFunction) -> float:
    """Luxemburg distance in the local Orlicz norm."""
    if u.grid != v.grid:
        raise ValueError("fields live on different grids")
    diff = u.values - v.values
    if not np.any(diff):
        return 0.0
    return _unit_modular_scale(
        lambda lam: phi_G(Field(u.grid, diff / lam), G))


def translation_ratio(u: Field, shift, G: YoungFunction, kernel: KernelPair,
                      p_minus: float | None = None,
                      table: PairTable | None = None):
    """Compare phi_G(tau_h u - u) against its nonlocal bound.

    Returns (lhs, bound_factor, ratio) with
    bound_factor = N(2|h|) M(2|h|)^{p-} / |h|^n * phi_MNG(u); the ratio is an
    empirical constant for the translation inequality.  The shift is in cells
    per axis and must satisfy 0 < |shift| * h < 1/2.
    """
    pm = G.p_minus if p_minus is None else p_minus
    shift = np.atleast_1d(np.asarray(shift, dtype=int))
    hlen = float(np.linalg.norm(shift * u.grid.h))
    if not (0.0 < hlen < 0.5):
        raise ValueError(f"|shift| h = {hlen:g} must lie in (0, 1/2)")
    mod = phi_MNG(u, G, kernel, table)
    diff = translate(u, shift).values - u.values
    lhs = phi_G(Field(u.grid, diff), G)
    M2, N2 = kernel.eval(2.0 * hlen)
    factor = N2 * M2 ** pm / hlen ** u.grid.n * mod
    if factor == 0.0:
        raise ValueError("zero nonlocal modular; ratio undefined")
    return lhs, factor, lhs / factor


class EmbeddingReport(NamedTuple):
    lhs: float
    rhs: float
    ratio: float
    bound: float


def embedding_bound(u: Field, grads, G: YoungFunction, kernel: KernelPair,
                    quad_tol: float = 1e-6,
                    table: PairTable | None = None) -> EmbeddingReport:
    """Check phi_MNG(u) <= C (phi_G(|grad u|) + phi_G(u)).

    ``grads`` holds one Field of analytic partial-derivative samples per
    axis.  The reported bound is n omega_n max(I_inner, 2 C_doubling
    I_outer) assembled from the two convergence integrals.
    """
    grads = list(grads)
    if len(grads) != u.grid.n:
        raise ValueError("one gradient component per axis required")
    sq = np.zeros(u.grid.shape)
    for comp in grads:
        if comp.grid != u.grid:
            raise ValueError("gradient samples live on a different grid")
        sq += comp.values ** 2
    grad_mag = Field(u.grid, np.sqrt(sq))
    lhs = phi_MNG(u, G, kernel, table)
    rhs = phi_G(grad_mag, G) + phi_G(u, G)
    p3 = kernel.check_P3(G.p_minus, quad_tol)
    bound = (u.grid.n * unit_ball_volume(u.grid.n)
             * max(p3.inner, 2.0 * G.delta2_constant * p3.outer))
    ratio = 0.0 if rhs == 0.0 else lhs / rhs
    return EmbeddingReport(lhs, rhs, ratio, bound)


class PoincareCheck(NamedTuple):
    modular_ok: bool
    norm_ok: bool


def poincare_check(u: Field, G: YoungFunction, kernel: KernelPair,
                   C_trial: float, mask=None,
                   table: PairTable | None = None) -> PoincareCheck:
    """Does phi_G(u) <= phi_MNG(C u) and lg_norm(u) <= C seminorm(u)?"""
    if mask is not None and np.any(u.values[~mask.cells]):
        raise ValueError("field does not vanish outside the domain mask")
    tab = _table(u, kernel, table)
    scaled = u.with_values(C_trial * u.values)
    modular_ok = phi_G(u, G) <= phi_MNG(scaled, G, kernel, tab)
    norms = luxemburg(u, G, kernel, tab)
    norm_ok = norms.lg_norm <= C_trial * norms.seminorm
    return PoincareCheck(modular_ok, norm_ok)


def poincare_smallest_constant(fields, G: YoungFunction, kernel: KernelPair,
                               *, start: float = 1e-3, factor: float = 1.1,
                               max_steps: int = 500) -> float:
    """Geometric search for the smallest C passing poincare_check everywhere.

    Norms are computed once per field (the norm half of the check is just
    lg_norm <= C seminorm); only the modular half is reevaluated per step.
    """
    fields = list(fields)
    tabs = [_table(u, kernel, None) for u in fields]
    local = [phi_G(u, G) for u in fields]
    norms = [luxemburg(u, G, kernel, t) for u, t in zip(fields, tabs)]
    C = start
    for _ in range(max_steps):
        ok = all(n.lg_norm <= C * n.seminorm for n in norms) and all(
            lc <= phi_MNG(u.with_values(C * u.values), G, kernel, t)
            for u, t, lc in zip(fields, tabs, local))
        if ok:
            return C
        C *= factor
    raise RuntimeError("no passing constant found; domain may span the grid")


