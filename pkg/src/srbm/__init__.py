"""Exact spectral moments of sparse random block matrix ensembles.

Moments of the adjacency and Laplacian block matrices are computed exactly,
as polynomials in the reduced connectivity t whose coefficients are rational
functions of the block dimension d, by enumerating closed tree walks and
averaging the resulting projector products over random unit vectors.  The
package also provides the d -> infinity limiting laws (effective-medium and
Marchenko-Pastur), their densities via Stieltjes inversion, and a Monte
Carlo validation harness.
"""

from .averager import diag_block_moment, moment, walk_contribution
from .cache import cached_moment
from .limits import (DensityCurve, density_from_resolvent, em_moment_series,
                     em_resolvent, mp_density, mp_moment_series, mp_resolvent,
                     narayana, pastur_block_density, poisson_moment,
                     semicircle_density, shifted_semicircle_density,
                     stieltjes_grid)
from .montecarlo import (EnsembleParams, SimReport, empirical_density,
                         empirical_moment, run_comparison, sample_adjacency,
                         sample_laplacian, sample_unit_vector)
from .polyalg import (DomainError, InvariantError, MomentPoly, ParseError,
                      PolyD, RatFunc, c_value, eval_moment, limit_d_infinity,
                      substitute_c_form, to_c_form)
from .walks import (EdgeWord, Step, canonical_word, catalan_number,
                    count_noncrossing, enumerate_tree_walks, has_abab,
                    narayana_number)

__version__ = "1.0.0"

__all__ = [
    "moment", "diag_block_moment", "walk_contribution", "cached_moment",
    "DensityCurve", "density_from_resolvent", "em_moment_series",
    "em_resolvent", "mp_density", "mp_moment_series", "mp_resolvent",
    "narayana", "pastur_block_density", "poisson_moment",
    "semicircle_density", "shifted_semicircle_density", "stieltjes_grid",
    "EnsembleParams", "SimReport", "empirical_density", "empirical_moment",
    "run_comparison", "sample_adjacency", "sample_laplacian",
    "sample_unit_vector", "DomainError", "InvariantError", "MomentPoly",
    "ParseError", "PolyD", "RatFunc", "c_value", "eval_moment",
    "limit_d_infinity", "substitute_c_form", "to_c_form", "EdgeWord", "Step",
    "canonical_word", "catalan_number", "count_noncrossing",
    "enumerate_tree_walks", "has_abab", "narayana_number",
    "__version__",
]
