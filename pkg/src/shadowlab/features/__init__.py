"""Entropy-feature pipeline: readout mitigation, tomography, classifiers."""

from .classifier import (
    TEE_BIAS,
    TEE_WEIGHTS,
    LinearClassifier,
    evaluate_classifiers,
    fit_linear_classifier,
    tee_classifier,
)
from .feature_map import (
    feature_map,
    feature_subsets,
    partial_trace_dm,
    reduced_density_matrix,
    renyi2,
)
from .mem import calibrate_response, exact_response, mitigate
from .tomography import (
    ALL_SETTINGS,
    collect_tomography,
    exact_tomography,
    linear_inversion,
    mle_qst,
    pauli_expectations,
    project_to_physical,
    sample_setting,
    setting_distribution,
)

__all__ = [
    "TEE_BIAS", "TEE_WEIGHTS", "LinearClassifier", "evaluate_classifiers",
    "fit_linear_classifier", "tee_classifier", "feature_map",
    "feature_subsets", "partial_trace_dm", "reduced_density_matrix", "renyi2",
    "calibrate_response", "exact_response", "mitigate", "ALL_SETTINGS",
    "collect_tomography", "exact_tomography", "linear_inversion", "mle_qst",
    "pauli_expectations", "project_to_physical", "sample_setting",
    "setting_distribution",
]
