"""Monte Carlo oracle on the unit sphere of C^n (and the matching simplex law)."""
from .backend import available_backends, get_backend
from .estimator import (
    MIN_SAMPLES,
    MCConfig,
    MCEstimate,
    mc_moment,
    mc_simplex_power,
    sample_sphere,
    simplex_expectation,
    simplex_samples,
    sphere_expectation,
    sphere_samples,
    thread_count,
)

__all__ = [
    "MCConfig",
    "MCEstimate",
    "MIN_SAMPLES",
    "available_backends",
    "get_backend",
    "mc_moment",
    "mc_simplex_power",
    "sample_sphere",
    "simplex_expectation",
    "simplex_samples",
    "sphere_expectation",
    "sphere_samples",
    "thread_count",
]
