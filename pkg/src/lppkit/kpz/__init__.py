"""KPZ scaling limits of the two-time distribution."""
from .diagnostic import finite_to_limit_diagnostic, finite_twotime_descent
from .kernels import (G_limit, J_kernel, K_kernel, KernelConfig, LimitKernels, TwoTimeCoords,
                      decay_measure, rank_one_functions)
from .scaling import (KPZCoords, ScalingConstants, delta_coords, kpz_discrete_params,
                      perturbed_model, perturbed_rates, scaling_constants)
from .twotime import bbp_two_time, brownian_two_time

__all__ = [
    "G_limit", "J_kernel", "K_kernel", "KPZCoords", "KernelConfig", "LimitKernels",
    "ScalingConstants", "TwoTimeCoords", "bbp_two_time", "brownian_two_time",
    "decay_measure", "delta_coords", "finite_to_limit_diagnostic", "finite_twotime_descent",
    "kpz_discrete_params", "perturbed_model", "perturbed_rates", "rank_one_functions",
    "scaling_constants",
]
