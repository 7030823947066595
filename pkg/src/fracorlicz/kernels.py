"""Weight pairs (M, N) for the nonlocal modular, with admissibility checks.

Families (r > 0):

* ``fractional``    M = r^s, N = r^n
* ``slobodetskii``  M = r,   N = r^(n-1)
* ``besov-log``     M = r^s (1 + |log r|)^beta, N = r^n
* ``abs``           M = r^s G^{-1}(r^n), N = 1 (needs a Young function)
* ``tabulated``     user-supplied samples, log-log interpolated

Conditions:
  (P1) M, N nondecreasing, positive for r > 0
  (P2) M(r) >= min(1, r), N continuous
  (P3) the two weighted integrals below converge
  (P4) N(2r) M(2r)^{p-} / r^n -> 0 as r -> 0
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .util import comp_sum
from .young import YoungFunction

__all__ = ["KernelPair", "DivergenceError", "P3Result", "P4Report", "P12Report"]


class DivergenceError(RuntimeError):
    """A (P3) integral was detected as divergent."""


@dataclass
class P3Result:
    inner: float        # integral of r^{n-1+p-} / (N M^{p-}) over (0, 1]
    outer: float        # integral of r^{n-1} / (N M^{p-}) over [1, inf)


@dataclass
class P4Report:
    values: np.ndarray  # q(2^-k), k = 1..levels
    final: float
    decays: bool        # tail-monotone decrease and final below start

    def summary(self) -> dict:
        return {"final": self.final, "decays": self.decays}


@dataclass
class P12Report:
    r: np.ndarray
    positive_ok: np.ndarray
    M_monotone_ok: np.ndarray   # per gap, length len(r) - 1
    N_monotone_ok: np.ndarray
    M_lower_ok: np.ndarray      # M(r) >= min(1, r)

    @property
    def passed(self) -> bool:
        return all(bool(np.all(x)) for x in (
            self.positive_ok, self.M_monotone_ok, self.N_monotone_ok,
            self.M_lower_ok))

    def summary(self) -> dict:
        return {
            "passed": self.passed,
            "positivity_failures": int(np.sum(~self.positive_ok)),
            "M_monotonicity_failures": int(np.sum(~self.M_monotone_ok)),
            "N_monotonicity_failures": int(np.sum(~self.N_monotone_ok)),
            "M_lower_bound_failures": int(np.sum(~self.M_lower_ok)),
        }


class KernelPair:
    """One (M, N) weight pair; evaluators are pure and vectorized."""

    def __init__(self, family: str, M_fn, N_fn, *, n: int, s: float | None = None,
                 beta: float | None = None, young: YoungFunction | None = None,
                 p3_threshold: float | None = None, p4_threshold: float | None = None):
        if n < 1:
            raise ValueError("dimension n must be >= 1")
        self.family = family
        self.n = int(n)
        self.s = s
        self.beta = beta
        self.young = young
        self._M = M_fn
        self._N = N_fn
        self.p3_threshold = p3_threshold
        self.p4_threshold = p4_threshold

    # -- constructors -----------------------------------------------------

    @staticmethod
    def _check_s(s: float) -> float:
        if not (0.0 < s < 1.0):
            raise ValueError(f"s must lie in (0, 1), got {s}")
        return float(s)

    @classmethod
    def fractional(cls, s: float, n: int) -> "KernelPair":
        s = cls._check_s(s)
        return cls("fractional", lambda r: r ** s, lambda r: r ** n, n=n, s=s)

    @classmethod
    def slobodetskii(cls, n: int) -> "KernelPair":
        return cls("slobodetskii", lambda r: np.asarray(r, float) ** 1,
                   lambda r: np.asarray(r, float) ** (n - 1), n=n)

    @classmethod
    def besov_log(cls, s: float, beta: float, n: int) -> "KernelPair":
        s = cls._check_s(s)
        if beta < 0:
            raise ValueError("beta must be >= 0")

        def M(r):
            r = np.asarray(r, float)
            return r ** s * (1.0 + np.abs(np.log(r))) ** beta

        return cls("besov-log", M, lambda r: np.asarray(r, float) ** n,
                   n=n, s=s, beta=beta)

    @classmethod
    def abs_family(cls, s: float, n: int, young: YoungFunction, *,
                   allow_inadmissible: bool = False) -> "KernelPair":
        """M = r^s G^{-1}(r^n), N = 1.

        Two exponent conditions exist for this family; the constructor
        enforces the stricter one, n/s < p-/(p+ - p-), and records both.
        ``allow_inadmissible`` bypasses the check for negative-control use.
        """
        s = cls._check_s(s)
        pm, pp = young.p_minus, young.p_plus
        t_p3 = np.inf if pp == pm else pm * pm / (pp - pm)
        t_p4 = np.inf if pp == pm else pm / (pp - pm)
        if not allow_inadmissible and not (n / s < min(t_p3, t_p4)):
            raise ValueError(
                f"abs family inadmissible: n/s = {n / s:g} must be below "
                f"{min(t_p3, t_p4):g} (thresholds {t_p3:g} and {t_p4:g})")

        def M(r):
            r = np.asarray(r, float)
            inv = np.vectorize(young.inverse, otypes=[float])
            return r ** s * inv(r ** n)

        return cls("abs", M, lambda r: np.ones_like(np.asarray(r, float)),
                   n=n, s=s, young=young, p3_threshold=t_p3, p4_threshold=t_p4)

    @classmethod
    def tabulated(cls, r: np.ndarray, M: np.ndarray, N: np.ndarray, n: int) -> "KernelPair":
        """Log-log linear interpolation through positive samples.

        End slopes extrapolate as power laws, which keeps positivity and any
        monotonicity the table has.
        """
        r = np.asarray(r, float)
        M = np.asarray(M, float)
        N = np.asarray(N, float)
        if r.ndim != 1 or len(r) < 2 or np.any(np.diff(r) <= 0):
            raise ValueError("r samples must be strictly increasing, length >= 2")
        if np.any(r <= 0) or np.any(M <= 0) or np.any(N <= 0):
            raise ValueError("tabulated samples must be strictly positive")
        lr, lM, lN = np.log(r), np.log(M), np.log(N)

        def interp(logs):
            def f(x):
                x = np.asarray(x, float)
                lx = np.log(x)
                out = np.interp(lx, lr, logs)
                lo = lx < lr[0]
                hi = lx > lr[-1]
                if np.any(lo):
                    slope = (logs[1] - logs[0]) / (lr[1] - lr[0])
                    out = np.where(lo, logs[0] + slope * (lx - lr[0]), out)
                if np.any(hi):
                    slope = (logs[-1] - logs[-2]) / (lr[-1] - lr[-2])
                    out = np.where(hi, logs[-1] + slope * (lx - lr[-1]), out)
                return np.exp(out)
            return f

        return cls("tabulated", interp(lM), interp(lN), n=n)

    @classmethod
    def from_name(cls, name: str, *, s: float | None = None, beta: float | None = None,
                  n: int = 1, young: YoungFunction | None = None) -> "KernelPair":
        if name == "fractional":
            return cls.fractional(0.5 if s is None else s, n)
        if name == "slobodetskii":
            return cls.slobodetskii(n)
        if name == "besov-log":
            return cls.besov_log(0.5 if s is None else s,
                                 1.0 if beta is None else beta, n)
        if name == "abs":
            if young is None:
                raise ValueError("abs family requires a young function")
            return cls.abs_family(0.75 if s is None else s, n, young)
        raise ValueError(f"unknown kernel family {name!r}")

    # -- evaluation --------------------------------------------------------

    def eval(self, r):
        """(M(r), N(r)) for r > 0; arrays allowed."""
        arr = np.asarray(r, dtype=float)
        if np.any(arr <= 0):
            raise ValueError("kernel weights are defined for r > 0 only")
        M, N = self._M(arr), self._N(arr)
        if np.isscalar(r) or arr.ndim == 0:
            return float(M), float(N)
        return M, N

    def M(self, r):
        return self.eval(r)[0]

    def N(self, r):
        return self.eval(r)[1]

    # -- condition checks ---------------------------------------------------

    def check_P3(self, p_minus: float, quad_tol: float = 1e-4) -> P3Result:
        """Adaptive quadrature of both (P3) integrals, dyadic toward r = 0.

        The tail integral is mapped to (0, 1] by r -> 1/r first.  Divergence
        (partial sums past 1/quad_tol, or no decay across dyadic levels) is
        raised as DivergenceError rather than returned as a number.
        """
        def inner(r):
            M, N = self._M(r), self._N(r)
            return r ** (self.n - 1 + p_minus) / (N * M ** p_minus)

        def outer(t):
            r = 1.0 / t
            M, N = self._M(r), self._N(r)
            return r ** (self.n - 1) / (N * M ** p_minus) / t ** 2

        return P3Result(self._dyadic_integral(inner, quad_tol),
                        self._dyadic_integral(outer, quad_tol))

    @staticmethod
    def _dyadic_integral(f, quad_tol: float) -> float:
        pieces = []
        prev = None
        flat = 0
        for k in range(400):
            a, b = 2.0 ** -(k + 1), 2.0 ** -k
            val, _ = quad(f, a, b, epsabs=quad_tol * 1e-3, epsrel=1e-10, limit=100)
            pieces.append(val)
            total = comp_sum(pieces)
            if total > 1.0 / quad_tol:
                raise DivergenceError(
                    f"partial sums exceed 1/quad_tol = {1.0 / quad_tol:g}")
            if prev is not None:
                if val >= prev * 0.999:
                    flat += 1
                    if flat >= 8:
                        raise DivergenceError("dyadic contributions do not decay")
                else:
                    flat = 0
                    # geometric tail bound from the observed decay ratio
                    rho = val / prev if prev > 0 else 0.0
                    tail = val * rho / (1.0 - rho) if rho < 1.0 else np.inf
                    if k >= 3 and val < quad_tol / 8.0 and tail < quad_tol / 8.0:
                        return total
            prev = val
        raise DivergenceError("dyadic refinement did not converge")

    def check_P4(self, p_minus: float, levels: int = 40) -> P4Report:
        """q(r) = N(2r) M(2r)^{p-} / r^n along r = 2^-k, k = 1..levels."""
        ks = np.arange(1, levels + 1)
        r = 2.0 ** -ks.astype(float)
        M, N = self._M(2.0 * r), self._N(2.0 * r)
        q = N * M ** p_minus / r ** self.n
        tail = q[levels // 2:]
        decays = bool(np.all(np.diff(tail) <= 0) and q[-1] < q[0])
        return P4Report(values=q, final=float(q[-1]), decays=decays)

    def verify_P1_P2(self, r_grid: np.ndarray | None = None) -> P12Report:
        """Per-sample booleans for positivity, monotonicity, M >= min(1, r)."""
        r = np.geomspace(1e-6, 1e6, 241) if r_grid is None else np.asarray(r_grid, float)
        M, N = self._M(r), self._N(r)
        tol = 1e-12
        return P12Report(
            r=r,
            positive_ok=(M > 0) & (N > 0),
            M_monotone_ok=np.diff(M) >= -tol * np.maximum(M[:-1], 1.0),
            N_monotone_ok=np.diff(N) >= -tol * np.maximum(N[:-1], 1.0),
            M_lower_ok=M >= np.minimum(1.0, r) * (1.0 - 1e-12),
        )

    def __repr__(self) -> str:
        bits = [self.family, f"n={self.n}"]
        if self.s is not None:
            bits.append(f"s={self.s}")
        if self.beta is not None:
            bits.append(f"beta={self.beta}")
        return f"KernelPair({', '.join(bits)})"
