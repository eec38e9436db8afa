"""Experiment orchestration: configs, manifests, runners, CLI."""

from .classify import ShadowClassifier, accuracy, train_shadow_classifier
from .config import DEFAULTS, EXPERIMENTS, ExperimentConfig
from .experiments import (
    StageFailure,
    replay,
    run_classify_spt,
    run_classify_topo,
    run_experiment,
    run_extract_classifier,
    run_predict_ground_state,
)
from .manifest import RunManifest, derive_seed, stage_rng

__all__ = [
    "ShadowClassifier", "accuracy", "train_shadow_classifier",
    "DEFAULTS", "EXPERIMENTS", "ExperimentConfig",
    "StageFailure", "replay", "run_classify_spt", "run_classify_topo",
    "run_experiment", "run_extract_classifier", "run_predict_ground_state",
    "RunManifest", "derive_seed", "stage_rng",
]
