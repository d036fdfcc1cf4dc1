"""Exact density-matrix semantics and the pure-branch ensemble evaluator."""
from qent.concrete.ensemble import evaluate_ensemble, merge_branches, mixture
from qent.concrete.interpreter import ensure_converged, evaluate, while_partial_sums
from qent.concrete.presets import (
    PRESET_VECTORS,
    PRESETS,
    ensemble_from_density,
    prepare_density,
    prepare_ensemble,
    preset_density,
)
from qent.concrete.types import DensityState, LoopConfig, PureBranch, PureEnsemble

__all__ = [
    "PRESETS",
    "PRESET_VECTORS",
    "DensityState",
    "LoopConfig",
    "PureBranch",
    "PureEnsemble",
    "ensemble_from_density",
    "ensure_converged",
    "evaluate",
    "evaluate_ensemble",
    "merge_branches",
    "mixture",
    "prepare_density",
    "prepare_ensemble",
    "preset_density",
    "while_partial_sums",
]
