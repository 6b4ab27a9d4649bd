"""Exact convex-body gradings, lattice maps, and LP-based Siciak extremal
function evaluation."""

from .body import ConvexBody, LatticePointSet, preimage_body
from .extremal import (ExtremalResult, LpProblem, NumericalError, compare,
                       lp_solve, oracle_V, pullback_identity, siciak_limsup,
                       siciak_m)
from .field import (ExactMatrix, QuadExt, Rational, exact_kernel, exact_rank,
                    qext_sign)
from .lattice import (SnfResult, construct_L, parallelepiped_lattice_points,
                      parallelepiped_reduce, saturate, smith_normal_form,
                      verify_map)
from .maps import LatticeMap
from .poly import SparsePolynomial, weighted_sup_norm
from .samples import (WeightedSampleSet, circle_samples, explicit_samples,
                      torus_samples)

__all__ = [
    "ConvexBody", "LatticePointSet", "preimage_body",
    "ExtremalResult", "LpProblem", "NumericalError", "compare", "lp_solve",
    "oracle_V", "pullback_identity", "siciak_limsup", "siciak_m",
    "ExactMatrix", "QuadExt", "Rational", "exact_kernel", "exact_rank",
    "qext_sign",
    "SnfResult", "construct_L", "parallelepiped_lattice_points",
    "parallelepiped_reduce", "saturate", "smith_normal_form", "verify_map",
    "LatticeMap", "SparsePolynomial", "weighted_sup_norm",
    "WeightedSampleSet", "circle_samples", "explicit_samples", "torus_samples",
]

__version__ = "0.1.0"
