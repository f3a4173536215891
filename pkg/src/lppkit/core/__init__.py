"""Growth model, sampling and exact oracles."""
from .growth import GrowthField, HeightInterface, grow, grow_batch, height_interface
from .oracle import (ExactLaw, exact_law_dp, exact_single_time_prob,
                     exact_twotime_prob)
from .params import Kind, ParamSet, as_state
from .rng import cell_stream, sample_weights, weights_block

__all__ = [
    "ExactLaw", "GrowthField", "HeightInterface", "Kind", "ParamSet", "as_state",
    "cell_stream", "exact_law_dp", "exact_single_time_prob", "exact_twotime_prob",
    "grow", "grow_batch", "height_interface", "sample_weights", "weights_block",
]
