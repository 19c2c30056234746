"""Positive interpolatory cubature on general domains.

Rules are exact on a prescribed K-dimensional function space that contains
the constants, use at most K nodes inside the domain and have strictly
positive weights.  They are obtained from a nonnegative least-squares rule
on an equidistributed point sequence, followed by Steinitz node reduction.

>>> from poscub import make_cube, constant_weight, algebraic_space, construct_positive_cf
>>> c = construct_positive_cf(make_cube([0, 0], 1), constant_weight(), algebraic_space(2, 2))
>>> c.rule.N <= 6
True
"""

from .cubature import Cubature, InvariantError, SchemaError, evaluate, exactness_residual
from .function_space import (
    FunctionSpace,
    algebraic_space,
    custom_space,
    trigonometric_space,
    vandermonde,
)
from .geometry import (
    Domain,
    WeightFunction,
    constant_weight,
    difference,
    intersection,
    make_ball,
    make_box,
    make_cube,
    radial_power_weight,
    union,
)
from .ls_cubature import LsConfig, construct_nonnegative_ls_cf, gram_schmidt_dob, ls_weights
from .moments import MomentVector, analytic_moments, compute_moments, qmc_moments
from .pipeline import Construction, construct_positive_cf
from .sequences import PointSequence, bisection_1d, bisection_grid, halton
from .steinitz import ReductionConfig, null_vector, reduce_rule, steinitz_step

__version__ = "0.1.0"
