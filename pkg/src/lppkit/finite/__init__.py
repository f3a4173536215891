"""Finite-size determinantal distribution functions."""
from .exponential import (exp_single_time_dist, exp_transition_density, exp_twotime_dist,
                          geometric_limit_transition)
from .orthogonal import (FiniteContours, Fb_inverse, Fb_inverse_contour, Fb_matrix, J_matrix,
                         default_contours, orthogonalizer_A, orthogonalizer_B,
                         spatial_fredholm_dist, spatial_fredholm_kernel,
                         twotime_fredholm_dist, twotime_fredholm_matrices)
from .results import DistResult, SingleTimeQuery, TwoTimeQuery, clamp_thresholds
from .transition import (single_time_dist, single_time_matrix, transition_matrix,
                         transition_prob)
from .twotime import twotime_dist, twotime_matrices

__all__ = [
    "DistResult", "FiniteContours", "Fb_inverse", "Fb_inverse_contour", "Fb_matrix",
    "J_matrix", "SingleTimeQuery", "TwoTimeQuery", "clamp_thresholds", "default_contours",
    "exp_single_time_dist", "exp_transition_density", "exp_twotime_dist",
    "geometric_limit_transition", "orthogonalizer_A", "orthogonalizer_B",
    "single_time_dist", "single_time_matrix", "spatial_fredholm_dist",
    "spatial_fredholm_kernel", "transition_matrix", "transition_prob", "twotime_dist",
    "twotime_fredholm_dist", "twotime_fredholm_matrices", "twotime_matrices",
]
