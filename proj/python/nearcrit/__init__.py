"""Interfaces of near-critical site percolation on the triangular lattice."""

from ._core import (
    Estimate,
    arm_probabilities,
    enumerate_exact,
    estimate_L,
    estimate_pstar,
    estimate_R,
    experiments,
    explore,
    fit_exponent,
    render_svg,
    run_experiment,
    site_count,
)

__all__ = [
    "Estimate",
    "arm_probabilities",
    "enumerate_exact",
    "estimate_L",
    "estimate_pstar",
    "estimate_R",
    "experiments",
    "explore",
    "fit_exponent",
    "render_svg",
    "run_experiment",
    "site_count",
]
