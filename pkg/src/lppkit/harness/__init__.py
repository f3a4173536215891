"""Configuration, Monte Carlo validation campaigns and the command line."""
from .anchors import tracy_widom_goe, tracy_widom_gue
from .config import RunConfig, config_schema, load_config
from .montecarlo import Event, MCEstimate, binomial_half_width, mc_joint_cdf
from .report import CheckRow, ValidationReport
from .runner import execute, run
from .suites import SUITES, run_suite

__all__ = [
    "CheckRow", "Event", "MCEstimate", "RunConfig", "SUITES", "ValidationReport",
    "binomial_half_width", "config_schema", "execute", "load_config", "mc_joint_cdf", "run",
    "run_suite", "tracy_widom_goe", "tracy_widom_gue",
]
