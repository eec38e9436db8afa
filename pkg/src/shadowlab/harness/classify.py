"""Shared shadow-set classification pipeline: Gram -> kernel PCA -> SVM."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..ml import kernel_pca, kpca_transform, svm_fit, svm_gamma_scale, svm_predict
from ..shadows import ShadowSet, gram


@dataclass
class ShadowClassifier:
    train_sets: list
    pca: object
    svm: object
    tau: float
    gamma: float
    variant: str

    def project(self, sets: list[ShadowSet]) -> np.ndarray:
        k_cross, _ = gram(sets, tau=self.tau, gamma=self.gamma,
                          variant=self.variant, sets_b=self.train_sets)
        return kpca_transform(self.pca, k_cross)

    def predict(self, sets: list[ShadowSet]) -> np.ndarray:
        return svm_predict(self.svm, self.project(sets))


def label_signs(labels: list[str]) -> np.ndarray:
    return np.array([1.0 if label == "A" else -1.0 for label in labels])


def train_shadow_classifier(train_sets: list[ShadowSet], labels: list[str],
                            tau: float = 1.0, gamma: float = 1.0,
                            variant: str = "off-diagonal", svm_c: float = 10.0,
                            ) -> tuple[ShadowClassifier, dict]:
    k_train, info = gram(train_sets, tau=tau, gamma=gamma, variant=variant)
    pca = kernel_pca(k_train, n_components=2)
    y = label_signs(labels)
    alpha = svm_gamma_scale(pca.embedding)
    model = svm_fit(pca.embedding, y, alpha_rbf=alpha, c=svm_c)
    train_acc = float((svm_predict(model, pca.embedding) == y).mean())
    stats = {"gram": info, "svm_alpha": alpha, "train_accuracy": train_acc,
             "pca_flags": pca.flags, "embedding": pca.embedding}
    return ShadowClassifier(train_sets, pca, model, tau, gamma, variant), stats


def accuracy(classifier: ShadowClassifier, sets: list[ShadowSet], labels: list[str]) -> float:
    pred = classifier.predict(sets)
    return float((pred == label_signs(labels)).mean())
