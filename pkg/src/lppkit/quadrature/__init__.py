"""Contour quadrature, exact residues, and determinant evaluation."""
from .contours import (Circle, Orientation, QuadratureResult, VerticalLine, Wedge,
                       circle_integral, composite_gl, graded_panels, line_integral,
                       theta_integral)
from .fredholm import (NystromScheme, balanced_det, balanced_logdet, det_exact,
                       fredholm_det, kernel_matrix)
from .series import (Factored, apply_linear_power, cauchy_inner, cauchy_outer,
                     double_contour, principal_part, residue_sum_rational)

__all__ = [
    "Circle", "Orientation", "QuadratureResult", "VerticalLine", "Wedge",
    "circle_integral", "composite_gl", "graded_panels", "line_integral", "theta_integral",
    "NystromScheme", "balanced_det", "balanced_logdet", "det_exact", "fredholm_det",
    "kernel_matrix", "Factored", "apply_linear_power", "cauchy_inner", "cauchy_outer",
    "double_contour", "principal_part", "residue_sum_rational",
]
