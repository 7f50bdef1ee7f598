"""Simulation laboratory for preferential attachment graphs with edge-steps."""

from pae.growth import (
    GrowthGraph,
    ModelParams,
    StepLog,
    StepRecord,
    continue_graph,
    derive_seed,
    generate,
    init_graph,
    perform_step,
    replay,
    sample_preferential,
)

__all__ = [
    "GrowthGraph",
    "ModelParams",
    "StepLog",
    "StepRecord",
    "continue_graph",
    "derive_seed",
    "generate",
    "init_graph",
    "perform_step",
    "replay",
    "sample_preferential",
]
