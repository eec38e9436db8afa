"""Kernel principal component analysis on precomputed Gram matrices."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class PCAEmbedding:
    eigenvalues: np.ndarray       # all, non-increasing
    components: np.ndarray        # (N, n_components) eigenvectors
    embedding: np.ndarray         # (N, n_components) training projections
    centered: bool
    gram_row_means: np.ndarray
    gram_mean: float
    flags: dict = field(default_factory=dict)


def kernel_pca(gram: np.ndarray, n_components: int = 2, center: bool = True) -> PCAEmbedding:
    """Diagonalize the (optionally double-centered) kernel matrix.

    Embedding columns are eigvec * sqrt(eigval); the sign convention makes
    each component's largest-magnitude entry positive.  Requesting more
    components than there are positive eigenvalues sets a flag and zero
    embeddings for the deficient columns.
    """
    k = np.asarray(gram, dtype=float)
    if k.ndim != 2 or k.shape[0] != k.shape[1]:
        raise ValueError("gram matrix must be square")
    if np.max(np.abs(k - k.T)) > 1e-10:
        raise ValueError("gram matrix must be symmetric")
    n = k.shape[0]
    row_means = k.mean(axis=1)
    total_mean = float(k.mean())
    if center:
        kc = k - row_means[None, :] - row_means[:, None] + total_mean
    else:
        kc = k
    evals, evecs = np.linalg.eigh(kc)
    order = np.argsort(evals)[::-1]
    evals = evals[order]
    evecs = evecs[:, order]
    flags = {}
    n_positive = int((evals > 1e-12).sum())
    if n_positive < n_components:
        flags["insufficient_positive_eigenvalues"] = n_positive
    if evals.min() < -1e-10 * max(abs(evals.max()), 1.0):
        flags["negative_spectrum"] = float(evals.min())
    comps = evecs[:, :n_components].copy()
    for c in range(n_components):
        pivot = np.argmax(np.abs(comps[:, c]))
        if comps[pivot, c] < 0:
            comps[:, c] = -comps[:, c]
    scale = np.sqrt(np.clip(evals[:n_components], 0.0, None))
    embedding = comps * scale[None, :]
    return PCAEmbedding(evals, comps, embedding, center, row_means, total_mean, flags)


def kpca_transform(pca: PCAEmbedding, cross_gram: np.ndarray) -> np.ndarray:
    """Project new points given k(x_new, x_train) rows."""
    kx = np.atleast_2d(np.asarray(cross_gram, dtype=float))
    if kx.shape[1] != pca.components.shape[0]:
        raise ValueError("cross gram has wrong training dimension")
    if pca.centered:
        kx = (kx - kx.mean(axis=1, keepdims=True)
              - pca.gram_row_means[None, :] + pca.gram_mean)
    scale = np.sqrt(np.clip(pca.eigenvalues[: pca.components.shape[1]], 0.0, None))
    inv = np.where(scale > 1e-12, 1.0 / np.maximum(scale, 1e-12), 0.0)
    return (kx @ pca.components) * inv[None, :]


def kpca_project_train(pca: PCAEmbedding) -> np.ndarray:
    return pca.embedding
