"""Nonlocal Orlicz modulars, rearrangement inequalities and eigenvalue
bounds for compactly supported functions sampled on symmetric grids."""

from .eigen import (EigenProblem, EigenResult, OptimizerSettings,
                    centered_ball_mask, faber_krahn_compare,
                    h_convexity_check, lambda_from_minimizer,
                    minimize_alpha_mu, scan_mu)
from .fields import (DomainMask, Field, Grid, HalfSpace, Mollifier, mollify,
                     read_field_csv, sample_field, superlevel_measure,
                     translate, truncate, write_field_csv)
from .kernels import DivergenceError, KernelPair
from .modular import (EmbeddingReport, LuxemburgNorms, PairTable,
                      embedding_bound, lg_distance, luxemburg,
                      modular_gradient, pairing, phi_G, phi_MNG,
                      poincare_check, poincare_smallest_constant,
                      translation_ratio, unit_ball_volume)
from .rearrange import (PolarizationTrace, box_symmetric_halfspaces,
                        iterate_polarizations, lattice_halfspaces, polarize,
                        schwarz)
from .util import OutOfRangeError, comp_sum
from .young import YoungFunction

__version__ = "0.1.0"

__all__ = [
    "Grid", "Field", "DomainMask", "HalfSpace", "Mollifier",
    "YoungFunction", "KernelPair", "PairTable", "LuxemburgNorms",
    "EmbeddingReport", "EigenProblem", "EigenResult", "OptimizerSettings",
    "PolarizationTrace", "OutOfRangeError", "DivergenceError",
    "sample_field", "translate", "mollify", "truncate", "superlevel_measure",
    "read_field_csv", "write_field_csv",
    "phi_G", "phi_MNG", "luxemburg", "lg_distance", "pairing",
    "modular_gradient", "translation_ratio", "embedding_bound",
    "poincare_check", "poincare_smallest_constant", "unit_ball_volume",
    "schwarz", "polarize", "iterate_polarizations",
    "box_symmetric_halfspaces", "lattice_halfspaces",
    "minimize_alpha_mu", "lambda_from_minimizer", "scan_mu",
    "faber_krahn_compare", "centered_ball_mask", "h_convexity_check",
    "comp_sum",
]
