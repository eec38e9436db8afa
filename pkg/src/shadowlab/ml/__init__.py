"""Kernel methods: ridge regression, PCA, SVM, metrics."""

from .kernels import (
    KernelSpec,
    gaussian_alpha_heuristic,
    kernel_eval,
    kernel_matrix,
)
from .kpca import PCAEmbedding, kernel_pca, kpca_transform
from .krr import KRRModel, krr_fit, krr_predict
from .metrics import LAMBDA_GRID, rmse, select_lambda
from .svm import SVMModel, svm_decision, svm_fit, svm_gamma_scale, svm_predict

__all__ = [
    "KernelSpec", "gaussian_alpha_heuristic", "kernel_eval", "kernel_matrix",
    "PCAEmbedding", "kernel_pca", "kpca_transform",
    "KRRModel", "krr_fit", "krr_predict",
    "LAMBDA_GRID", "rmse", "select_lambda",
    "SVMModel", "svm_decision", "svm_fit", "svm_gamma_scale", "svm_predict",
]
