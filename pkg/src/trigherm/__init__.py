"""Barycentric rational trigonometric Hermite interpolation on the circle."""
from .berrut import lagrange_basis_eval, lagrange_basis_matrix, lagrange_interp, lagrange_interp_eval
from .diffmat import DiffMatrix, diffmat, diffmat_family, diffmat_first, diffmat_power, diffmat_recursive
from .experiments import (
    ConvergenceReport,
    CurvePoints,
    TestFunction,
    conformal_comparison,
    convergence_study,
    max_error,
    reconstruct_curve,
    test_function,
)
from .hermite_basis import generic_hermite_basis, normalize_vanishing, trig_hermite_basis, trig_hermite_basis_eval
from .interpolant import (
    HermiteData,
    HermiteInterpolant,
    NumericalBreakdownError,
    build_hermite,
    derivatives_at_nodes,
    evaluate,
    generic_build,
)
from .nodes import ConformalParams, NodeSet, conformal_shift, equidistant_nodes, two_front_shift
from .trig_core import Parity, SingularArgumentError

__version__ = "0.1.0"
