"""Linear phase classifiers on the entropy feature space."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..ml.svm import svm_fit

# Kitaev-Preskill-style combination over the ordered 15 subsets; the
# constant offset is the published operating threshold.
TEE_WEIGHTS = np.array([1, 0, 0, 1, 0, 0, -1, 1, 0, 0, -1, 0, 0, -1, 1], dtype=float)
TEE_BIAS = 0.1


@dataclass
class LinearClassifier:
    w: np.ndarray
    w0: float

    def decision(self, features: np.ndarray) -> np.ndarray:
        features = np.atleast_2d(np.asarray(features, dtype=float))
        return features @ self.w + self.w0

    def predict(self, features: np.ndarray) -> np.ndarray:
        return np.where(self.decision(features) >= 0, 1.0, -1.0)

    def to_json(self) -> str:
        return json.dumps({"w": self.w.tolist(), "w0": self.w0})

    @classmethod
    def from_json(cls, payload: str) -> "LinearClassifier":
        d = json.loads(payload)
        return cls(np.array(d["w"], dtype=float), float(d["w0"]))


def tee_classifier() -> LinearClassifier:
    return LinearClassifier(TEE_WEIGHTS.copy(), TEE_BIAS)


def fit_linear_classifier(features: np.ndarray, labels: np.ndarray,
                          c: float = 1.0) -> LinearClassifier:
    """Linear SVM on feature vectors; labels in {-1, +1}."""
    features = np.atleast_2d(np.asarray(features, dtype=float))
    labels = np.asarray(labels, dtype=float).ravel()
    model = svm_fit(features, labels, c=c, kernel="linear")
    w = model.support_points.T @ model.support_coeffs
    return LinearClassifier(np.asarray(w, dtype=float), float(model.bias))


def evaluate_classifiers(classifiers: dict[str, LinearClassifier],
                         features: np.ndarray, labels: np.ndarray,
                         epsilon: float, n_instances: int,
                         rng: np.random.Generator) -> dict[str, dict]:
    """Misclassification rates over repeated noisy test instances.

    Each instance adds fresh uniform [-epsilon, epsilon] noise to every
    feature entry; returns mean and standard deviation per classifier.
    """
    features = np.atleast_2d(np.asarray(features, dtype=float))
    labels = np.asarray(labels, dtype=float).ravel()
    rates = {name: [] for name in classifiers}
    for _ in range(n_instances):
        noisy = features + rng.uniform(-epsilon, epsilon, size=features.shape)
        for name, clf in classifiers.items():
            pred = clf.predict(noisy)
            rates[name].append(float((pred != labels).mean()))
    return {name: {"mean_error": float(np.mean(v)), "std_error": float(np.std(v))}
            for name, v in rates.items()}
