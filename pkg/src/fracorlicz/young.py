"""Young functions: evaluators, Legendre conjugate, growth diagnostics.

A Young function here is an even, convex, strictly increasing (on t > 0)
function with G(0) = 0, normalized so that G(1) = 1, whose logarithmic
derivative t g(t)/G(t) stays inside a band [p_minus, p_plus] with
1 < p_minus <= p_plus.  Three families are built in:

* ``power``      G(t) = |t|^p
* ``power-sum``  G(t) = (|t|^p + |t|^q)/2 with p < q (band endpoints p and q)
* ``power-log``  G(t) = |t|^p log(1 + |t|) / log 2 (band endpoints p and p+1)

plus a ``custom`` escape hatch taking raw callables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .util import OutOfRangeError

__all__ = ["YoungFunction", "YoungPropertyReport", "default_sample_grid"]


def default_sample_grid(num: int = 200) -> np.ndarray:
    """Log-spaced evaluation grid covering [1e-3, 1e3]."""
    return np.geomspace(1e-3, 1e3, num)


def _finite_or_raise(out, what: str):
    if not np.all(np.isfinite(out)):
        raise OutOfRangeError(f"{what} overflowed the floating range")
    return out


class YoungFunction:
    """Evaluator bundle for one Young function.

    ``G`` accepts any real (even extension), ``g`` is the odd extension of
    the derivative on t > 0.  ``p_minus``/``p_plus`` are analytic when the
    family admits a closed form, otherwise extremized over a sample grid;
    ``delta2_constant`` is always the sampled sup of G(2t)/G(t).
    """

    def __init__(self, family: str, params: dict, G_raw, g_raw, *,
                 p_minus: float | None = None, p_plus: float | None = None,
                 validate: bool = True):
        self.family = family
        self.params = dict(params)
        self._G_raw = G_raw
        self._g_raw = g_raw
        grid = default_sample_grid()
        emp_lo, emp_hi = self._extremize_exponents(grid)
        self.p_minus = float(p_minus) if p_minus is not None else emp_lo
        self.p_plus = float(p_plus) if p_plus is not None else emp_hi
        with np.errstate(over="ignore", invalid="ignore"):
            self.delta2_constant = float(np.max(self._G_raw(2 * grid) / self._G_raw(grid)))
        if validate:
            self._validate(grid)

    # -- constructors -----------------------------------------------------

    @classmethod
    def power(cls, p: float = 2.0) -> "YoungFunction":
        if p <= 1:
            raise ValueError("power family needs p > 1")
        return cls("power", {"p": p},
                   lambda t: t ** p,
                   lambda t: p * t ** (p - 1),
                   p_minus=p, p_plus=p)

    @classmethod
    def power_sum(cls, p: float = 2.0, q: float = 4.0) -> "YoungFunction":
        if not (1 < p <= q):
            raise ValueError("power-sum family needs 1 < p <= q")
        return cls("power-sum", {"p": p, "q": q},
                   lambda t: 0.5 * (t ** p + t ** q),
                   lambda t: 0.5 * (p * t ** (p - 1) + q * t ** (q - 1)),
                   p_minus=p, p_plus=q)

    @classmethod
    def power_log(cls, p: float = 2.0) -> "YoungFunction":
        # scale 1/log 2 normalizes G(1) = 1; the ratio t g/G spans (p, p+1)
        if p <= 1:
            raise ValueError("power-log family needs p > 1")
        c = 1.0 / np.log(2.0)

        def G_raw(t):
            t = np.asarray(t, dtype=float)
            return c * t ** p * np.log1p(t)

        def g_raw(t):
            t = np.asarray(t, dtype=float)
            return c * (p * t ** (p - 1) * np.log1p(t) + t ** p / (1.0 + t))

        return cls("power-log", {"p": p}, G_raw, g_raw, p_minus=p, p_plus=p + 1.0)

    @classmethod
    def custom(cls, G_raw, g_raw, *, p_minus=None, p_plus=None,
               validate: bool = True) -> "YoungFunction":
        return cls("custom", {}, G_raw, g_raw,
                   p_minus=p_minus, p_plus=p_plus, validate=validate)

    @classmethod
    def from_name(cls, name: str, **params) -> "YoungFunction":
        makers = {"power": cls.power, "power-sum": cls.power_sum,
                  "power-log": cls.power_log}
        if name not in makers:
            raise ValueError(f"unknown young family {name!r}; "
                             f"choose from {sorted(makers)}")
        return makers[name](**params)

    # -- evaluation --------------------------------------------------------

    def G(self, t):
        """G(|t|); scalar in, scalar out."""
        arr = np.abs(np.asarray(t, dtype=float))
        with np.errstate(over="ignore"):
            out = self._G_raw(arr)
        _finite_or_raise(out, "G")
        return float(out) if np.isscalar(t) or arr.ndim == 0 else out

    def g(self, t):
        """Odd extension of G' (g(0) = 0)."""
        arr = np.asarray(t, dtype=float)
        sign = np.sign(arr)
        with np.errstate(over="ignore", invalid="ignore"):
            out = np.where(arr == 0.0, 0.0, sign * self._g_raw(np.abs(arr)))
        _finite_or_raise(out, "g")
        return float(out) if np.isscalar(t) or arr.ndim == 0 else out

    def conjugate(self, a: float) -> float:
        """Legendre conjugate sup{a t - G(t) : t > 0} for a >= 0.

        g is strictly increasing, so the supremum sits at the root of
        g(t) = a, solved by bracketing + brentq.
        """
        if a < 0:
            raise ValueError("conjugate defined for a >= 0")
        if a == 0.0:
            return 0.0
        t = self._g_inverse(a)
        return a * t - self.G(t)

    def conjugate_derivative(self, a: float) -> float:
        """(G*)'(a), the inverse function of g."""
        if a < 0:
            raise ValueError("conjugate derivative defined for a >= 0")
        if a == 0.0:
            return 0.0
        return self._g_inverse(a)

    def inverse(self, y: float) -> float:
        """t >= 0 with |G(t) - y| <= 1e-12 (1 + y), by bisection on G.

        The bracket is driven to relative width 1e-13, which also makes the
        composition inverse(G(t)) land within 1e-10 of t.
        """
        if y < 0:
            raise ValueError("inverse defined for y >= 0")
        if y == 0.0:
            return 0.0
        lo, hi = 0.0, 1.0
        for _ in range(4000):
            if self.G(hi) >= y:
                break
            lo, hi = hi, hi * 2.0
        else:
            raise OutOfRangeError(f"G inverse: y={y} beyond range")
        for _ in range(250):
            if hi - lo <= 1e-13 * hi:
                break
            mid = 0.5 * (lo + hi)
            if self.G(mid) < y:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def _g_inverse(self, a: float) -> float:
        lo, hi = 0.0, 1.0
        for _ in range(4000):
            try:
                if self.g(hi) >= a:
                    break
            except OutOfRangeError:
                raise OutOfRangeError(f"g inverse: a={a} beyond range") from None
            lo, hi = hi, hi * 2.0
        else:
            raise OutOfRangeError(f"g inverse: a={a} beyond range")
        return brentq(lambda t: self.g(t) - a, lo, hi, xtol=1e-300, rtol=8 * np.finfo(float).eps)

    # -- diagnostics -------------------------------------------------------

    def _extremize_exponents(self, grid: np.ndarray):
        with np.errstate(over="ignore", invalid="ignore"):
            ratio = grid * self._g_raw(grid) / self._G_raw(grid)
        ratio = ratio[np.isfinite(ratio)]
        return float(np.min(ratio)), float(np.max(ratio))

    def empirical_exponents(self, grid: np.ndarray | None = None):
        """(inf, sup) of t g(t)/G(t) over the sample grid."""
        return self._extremize_exponents(default_sample_grid() if grid is None else grid)

    def _validate(self, grid: np.ndarray) -> None:
        if self.G(0.0) != 0.0:
            raise ValueError("G(0) must be 0")
        if abs(self.G(1.0) - 1.0) > 1e-12:
            raise ValueError(f"normalization G(1)=1 violated: G(1)={self.G(1.0)!r}")
        if not (1.0 < self.p_minus <= self.p_plus):
            raise ValueError("exponents must satisfy 1 < p_minus <= p_plus")
        emp_lo, emp_hi = self._extremize_exponents(grid)
        slack = 1e-9
        if emp_lo < self.p_minus - slack or emp_hi > self.p_plus + slack:
            raise ValueError(
                f"t g/G leaves [{self.p_minus}, {self.p_plus}]: sampled "
                f"[{emp_lo}, {emp_hi}]")
        gv = self.G(grid)
        if np.any(np.diff(gv) <= 0):
            raise ValueError("G must be strictly increasing on t > 0")
        # convexity via uniform-grid second differences
        t_uni = np.linspace(0.0, 8.0, 801)
        d2 = np.diff(self.G(t_uni), 2)
        if np.min(d2) < -1e-12 * max(1.0, float(np.max(np.abs(gv)))):
            raise ValueError("G must be convex (sampled second differences)")
        if not self.delta2_constant > 2.0:
            raise ValueError("doubling constant must exceed 2")

    def verify_properties(self, t_grid: np.ndarray | None = None,
                          n_pair: int = 50) -> "YoungPropertyReport":
        """Numerical audit of the growth, conjugate and scaling inequalities.

        Failures become report entries, never exceptions.  ``t_grid`` must
        cover at least [1e-3, 1e3].
        """
        t = default_sample_grid() if t_grid is None else np.asarray(t_grid, float)
        if t.min() > 1e-3 or t.max() < 1e3:
            raise ValueError("sample grid must cover [1e-3, 1e3]")
        pm, pp = self.p_minus, self.p_plus
        rtol = 1e-10

        Gv = self.G(t)
        gv = self.g(t)
        below = t < 1.0
        above = t > 1.0
        lo_G = np.where(above, t ** pm, t ** pp)
        hi_G = np.where(above, t ** pp, t ** pm)
        growth_G = (Gv >= lo_G * (1 - rtol)) & (Gv <= hi_G * (1 + rtol))
        growth_G |= ~(below | above)           # t == 1 trivially inside
        lo_g = np.where(above, pm * t ** (pm - 1), pm * t ** (pp - 1))
        hi_g = np.where(above, pp * t ** (pp - 1), pp * t ** (pm - 1))
        growth_g = (gv >= lo_g * (1 - rtol)) & (gv <= hi_g * (1 + rtol))
        growth_g |= ~(below | above)

        # conjugate identity G*(g(t)) = t g(t) - G(t)
        conj_resid = np.array(
            [abs(self.conjugate(self.g(ti)) - (ti * self.g(ti) - self.G(ti)))
             for ti in t])
        conj_ok = conj_resid <= 1e-8 * (1.0 + t * gv)

        # conjugate exponent band (p_plus)' <= t g*(t)/G*(t) <= (p_minus)'
        conj_lo = pp / (pp - 1.0)
        conj_hi = pm / (pm - 1.0)
        ratio_star = np.array(
            [ti * self.conjugate_derivative(ti) / self.conjugate(ti) for ti in t])
        sandwich_ok = ((ratio_star >= conj_lo * (1 - 1e-9)) &
                       (ratio_star <= conj_hi * (1 + 1e-9)))

        # two-variable checks on a coarser (a, t) product grid
        sub = np.geomspace(1e-3, 1e3, n_pair)
        A, T = np.meshgrid(sub, sub, indexing="ij")
        GT = self.G(T)
        Gstar = np.array([self.conjugate(ai) for ai in sub])[:, None]
        young_ok = (A * T <= GT + Gstar + 1e-9 * (1.0 + A * T))

        # scaling band for 0 < t < 1: (pm/pp) g(a) t^{pp-1} <= g(a t) <= (pp/pm) g(a) t^{pm-1}
        ts = sub[sub < 1.0]
        As, Ts = np.meshgrid(sub, ts, indexing="ij")
        ga = self.g(As)
        gat = self.g(As * Ts)
        scale_lo = (pm / pp) * ga * Ts ** (pp - 1.0)
        scale_hi = (pp / pm) * ga * Ts ** (pm - 1.0)
        scaling_ok = ((gat >= scale_lo * (1 - 1e-9)) &
                      (gat <= scale_hi * (1 + 1e-9)))

        emp_lo, emp_hi = self._extremize_exponents(t)
        return YoungPropertyReport(
            t=t, growth_G_ok=growth_G, growth_g_ok=growth_g,
            conjugate_residual=conj_resid, conjugate_identity_ok=conj_ok,
            conjugate_sandwich_ok=sandwich_ok, young_inequality_ok=young_ok,
            scaling_ok=scaling_ok, emp_p_minus=emp_lo, emp_p_plus=emp_hi)

    def __repr__(self) -> str:
        ps = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"YoungFunction({self.family}{', ' if ps else ''}{ps})"


@dataclass
class YoungPropertyReport:
    t: np.ndarray
    growth_G_ok: np.ndarray
    growth_g_ok: np.ndarray
    conjugate_residual: np.ndarray
    conjugate_identity_ok: np.ndarray
    conjugate_sandwich_ok: np.ndarray
    young_inequality_ok: np.ndarray
    scaling_ok: np.ndarray
    emp_p_minus: float
    emp_p_plus: float

    @property
    def passed(self) -> bool:
        return all(bool(np.all(x)) for x in (
            self.growth_G_ok, self.growth_g_ok, self.conjugate_identity_ok,
            self.conjugate_sandwich_ok, self.young_inequality_ok, self.scaling_ok))

    def summary(self) -> dict:
        return {
            "passed": self.passed,
            "growth_G_failures": int(np.sum(~self.growth_G_ok)),
            "growth_g_failures": int(np.sum(~self.growth_g_ok)),
            "conjugate_identity_failures": int(np.sum(~self.conjugate_identity_ok)),
            "conjugate_identity_worst_residual": float(np.max(self.conjugate_residual)),
            "conjugate_sandwich_failures": int(np.sum(~self.conjugate_sandwich_ok)),
            "young_inequality_failures": int(np.sum(~self.young_inequality_ok)),
            "scaling_failures": int(np.sum(~self.scaling_ok)),
            "empirical_exponents": [self.emp_p_minus, self.emp_p_plus],
        }
