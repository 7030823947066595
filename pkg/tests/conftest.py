"""Shared fixtures and independent brute-force oracles.

The oracles recompute modulars, pairings and measures with plain double
loops and math.fsum, never touching the pair-table evaluation path they
check.
"""

import math

import numpy as np
import pytest

from fracorlicz import Field, Grid, KernelPair, YoungFunction


def naive_phi_G(u, G):
    return math.fsum(G.G(float(v)) for v in u.flat) * u.grid.cell_measure


def naive_phi_MNG(u, G, kernel):
    centers = u.grid.centers()
    vals = u.flat
    h2n = u.grid.cell_measure ** 2
    terms = []
    for i in range(len(vals)):
        for j in range(len(vals)):
            if i == j:
                continue
            d = float(np.linalg.norm(centers[i] - centers[j]))
            M, N = kernel.eval(d)
            terms.append(G.G((vals[i] - vals[j]) / M) * h2n / N)
    return math.fsum(terms)


def naive_pairing(u, v, G, kernel):
    centers = u.grid.centers()
    uf, vf = u.flat, v.flat
    h2n = u.grid.cell_measure ** 2
    terms = []
    for i in range(len(uf)):
        for j in range(len(uf)):
            if i == j:
                continue
            d = float(np.linalg.norm(centers[i] - centers[j]))
            M, N = kernel.eval(d)
            du = (uf[i] - uf[j]) / M
            dv = (vf[i] - vf[j]) / M
            if du != 0.0:
                terms.append(G.g(abs(du)) * math.copysign(1.0, du) * dv * h2n / N)
    return math.fsum(terms)


def naive_superlevel(u, lam):
    return sum(1 for v in u.flat if v > lam) * u.grid.cell_measure


def random_field(grid, rng, lo=0.0, hi=1.0):
    return Field(grid, rng.uniform(lo, hi, grid.shape))


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def g_power():
    return YoungFunction.power(2.0)


@pytest.fixture
def g_power_sum():
    return YoungFunction.power_sum(2.0, 4.0)


@pytest.fixture
def g_power_log():
    return YoungFunction.power_log(2.0)


@pytest.fixture
def all_youngs(g_power, g_power_sum, g_power_log):
    return [g_power, g_power_sum, g_power_log]


@pytest.fixture
def frac_kernel_1d():
    return KernelPair.fractional(0.5, 1)


@pytest.fixture
def frac_kernel_2d():
    return KernelPair.fractional(0.5, 2)


@pytest.fixture
def grid_1d():
    return Grid(1, 0.25, 8)


@pytest.fixture
def grid_2d():
    return Grid(2, 0.25, 4)
