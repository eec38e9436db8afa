import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlab.ml import (
    KernelSpec,
    KRRModel,
    gaussian_alpha_heuristic,
    kernel_eval,
    kernel_matrix,
    kernel_pca,
    kpca_transform,
    krr_fit,
    krr_predict,
    rmse,
    select_lambda,
    svm_decision,
    svm_fit,
    svm_gamma_scale,
    svm_predict,
)


class TestKernels:
    def test_gaussian_self_value(self):
        spec = KernelSpec("gaussian", alpha=0.7)
        x = np.array([0.3, -1.2, 4.0])
        assert kernel_eval(spec, x, x) == pytest.approx(1.0)

    def test_dirichlet_self_value_m11(self):
        # m(m-1) ordered pairs, 49 unit cosine terms each
        spec = KernelSpec("modified-dirichlet", normalize=False)
        x = np.linspace(0, 2, 11)
        assert kernel_eval(spec, x, x) == pytest.approx(110 * 49)

    def test_dirichlet_matches_bruteforce(self):
        rng = np.random.default_rng(0)
        x = rng.uniform(0, 2, 5)
        y = rng.uniform(0, 2, 5)
        total = 0.0
        for i in range(5):
            for j in range(5):
                if i == j:
                    continue
                for ki in range(-3, 4):
                    for kj in range(-3, 4):
                        total += np.cos(np.pi * (ki * (x[i] - y[i]) + kj * (x[j] - y[j])))
        spec = KernelSpec("modified-dirichlet", normalize=False)
        assert kernel_eval(spec, x, y) == pytest.approx(total, abs=1e-8)

    def test_alpha_heuristic_two_points(self):
        x = np.array([[0.0, 0.0], [1.0, 1.0]])  # ||x1-x2||^2 = 2
        assert gaussian_alpha_heuristic(x) == pytest.approx(4 / 4)

    def test_normalized_symmetry(self):
        rng = np.random.default_rng(1)
        x = rng.uniform(0, 2, (6, 4))
        for spec in (KernelSpec("gaussian", alpha=1.1),
                     KernelSpec("modified-dirichlet")):
            k = kernel_matrix(spec, x)
            assert np.allclose(k, k.T, atol=1e-12)
            assert np.allclose(np.diag(k), 1.0, atol=1e-12)


class TestKRR:
    def test_single_point_interpolation(self):
        spec = KernelSpec("gaussian", alpha=1.0)
        x = np.array([[0.5]])
        y = np.array([[2.0]])
        model = krr_fit(x, y, spec, 0.0)
        assert krr_predict(model, x)[0, 0] == pytest.approx(2.0)

    def test_single_point_ridge_shrinkage(self):
        spec = KernelSpec("gaussian", alpha=1.0)
        model = krr_fit(np.array([[0.5]]), np.array([[2.0]]), spec, 0.3)
        assert krr_predict(model, np.array([[0.5]]))[0, 0] == pytest.approx(2.0 / 1.3)

    def test_huge_lambda_kills_predictions(self):
        rng = np.random.default_rng(2)
        x = rng.uniform(0, 2, (10, 3))
        y = rng.standard_normal((10, 2))
        model = krr_fit(x, y, KernelSpec("gaussian", alpha=1.0), 1e6)
        assert np.abs(krr_predict(model, x)).max() < 1e-4

    def test_predictions_linear_in_targets(self):
        rng = np.random.default_rng(3)
        x = rng.uniform(0, 2, (8, 2))
        y = rng.standard_normal((8, 3))
        spec = KernelSpec("gaussian", alpha=0.5)
        p1 = krr_predict(krr_fit(x, y, spec, 0.1), x)
        p2 = krr_predict(krr_fit(x, 2 * y, spec, 0.1), x)
        assert np.allclose(p2, 2 * p1, atol=1e-10)

    def test_two_path_formula(self):
        rng = np.random.default_rng(4)
        x = rng.uniform(0, 2, (7, 2))
        y = rng.standard_normal((7, 1))
        x_new = rng.uniform(0, 2, (3, 2))
        spec = KernelSpec("gaussian", alpha=0.8)
        lam = 0.2
        model = krr_fit(x, y, spec, lam)
        pred = krr_predict(model, x_new)
        k = kernel_matrix(spec, x)
        kx = kernel_matrix(spec, x_new, x)
        direct = kx @ np.linalg.inv(k + lam * np.eye(7)) @ y
        assert np.abs(pred - direct).max() < 1e-10

    def test_permutation_invariance(self):
        rng = np.random.default_rng(5)
        x = rng.uniform(0, 2, (9, 2))
        y = rng.standard_normal((9, 2))
        x_new = rng.uniform(0, 2, (4, 2))
        spec = KernelSpec("gaussian", alpha=1.0)
        p1 = krr_predict(krr_fit(x, y, spec, 0.05), x_new)
        perm = rng.permutation(9)
        p2 = krr_predict(krr_fit(x[perm], y[perm], spec, 0.05), x_new)
        assert np.abs(p1 - p2).max() < 1e-9

    def test_interpolation_at_tiny_lambda(self):
        rng = np.random.default_rng(6)
        x = rng.uniform(0, 2, (12, 3))
        y = rng.standard_normal((12, 1))
        model = krr_fit(x, y, KernelSpec("gaussian", alpha=1.0), 1e-10)
        assert np.linalg.norm(krr_predict(model, x) - y) < 1e-6

    def test_json_round_trip(self):
        rng = np.random.default_rng(7)
        x = rng.uniform(0, 2, (5, 2))
        y = rng.standard_normal((5, 1))
        model = krr_fit(x, y, KernelSpec("gaussian", alpha=1.0), 0.1)
        model2 = KRRModel.from_json(model.to_json())
        x_new = rng.uniform(0, 2, (2, 2))
        assert np.allclose(krr_predict(model, x_new), krr_predict(model2, x_new))


class TestSelectLambda:
    def test_single_point_grid(self):
        rng = np.random.default_rng(8)
        x = rng.uniform(0, 2, (10, 2))
        y = np.sum(x, axis=1, keepdims=True)
        lam, _ = select_lambda((x, y), (x, y), KernelSpec("gaussian", alpha=1.0),
                               grid=[0.125])
        assert lam == 0.125

    def test_clean_data_prefers_small_lambda(self):
        rng = np.random.default_rng(9)
        x = rng.uniform(0, 2, (30, 2))
        y = np.sin(x.sum(axis=1, keepdims=True))
        xv = rng.uniform(0, 2, (20, 2))
        yv = np.sin(xv.sum(axis=1, keepdims=True))
        lam, scores = select_lambda((x, y), (xv, yv), KernelSpec("gaussian", alpha=1.0))
        assert lam <= 0.05  # smallest end of the grid

    def test_tie_selects_smaller(self):
        x = np.array([[0.0], [1.0]])
        y = np.zeros((2, 1))  # all-zero targets: every lambda ties at 0
        lam, _ = select_lambda((x, y), (x, y), KernelSpec("gaussian", alpha=1.0))
        assert lam == 0.0125


class TestKPCA:
    def test_identity_gram_centered_spectrum(self):
        n = 6
        pca = kernel_pca(np.eye(n), n_components=n - 1)
        # centered identity has n-1 equal eigenvalues of 1 and one 0
        assert np.allclose(pca.eigenvalues[: n - 1], 1.0, atol=1e-10)
        assert abs(pca.eigenvalues[-1]) < 1e-10
        # full embedding forms a regular simplex: all pair distances equal
        d = np.sum((pca.embedding[:, None, :] - pca.embedding[None, :, :]) ** 2, axis=-1)
        off = d[~np.eye(n, dtype=bool)]
        assert np.allclose(off, off[0], atol=1e-8)

    def test_duplicated_point_identical_rows(self):
        rng = np.random.default_rng(10)
        x = rng.standard_normal((5, 2))
        x = np.vstack([x, x[2]])
        k = np.exp(-np.sum((x[:, None] - x[None, :]) ** 2, axis=-1))
        pca = kernel_pca(k)
        assert np.allclose(pca.embedding[2], pca.embedding[-1], atol=1e-9)

    def test_two_clusters_separate(self):
        rng = np.random.default_rng(11)
        a = rng.normal(0, 0.1, (10, 2))
        b = rng.normal(5, 0.1, (10, 2))
        x = np.vstack([a, b])
        k = np.exp(-0.5 * np.sum((x[:, None] - x[None, :]) ** 2, axis=-1))
        pca = kernel_pca(k)
        first = pca.embedding[:, 0]
        assert first[:10].max() < first[10:].min() or first[10:].max() < first[:10].min()

    def test_permutation_invariance_up_to_sign(self):
        rng = np.random.default_rng(12)
        x = rng.standard_normal((8, 2))
        k = np.exp(-np.sum((x[:, None] - x[None, :]) ** 2, axis=-1))
        perm = rng.permutation(8)
        p1 = kernel_pca(k).embedding
        p2 = kernel_pca(k[np.ix_(perm, perm)]).embedding
        for c in range(2):
            assert (np.allclose(p2[:, c], p1[perm, c], atol=1e-8)
                    or np.allclose(p2[:, c], -p1[perm, c], atol=1e-8))

    def test_transform_reproduces_training_embedding(self):
        rng = np.random.default_rng(13)
        x = rng.standard_normal((7, 2))
        k = np.exp(-np.sum((x[:, None] - x[None, :]) ** 2, axis=-1))
        pca = kernel_pca(k)
        proj = kpca_transform(pca, k)
        assert np.abs(proj - pca.embedding).max() < 1e-8

    def test_insufficient_positive_flagged(self):
        k = np.ones((3, 3))  # centered rank 0
        pca = kernel_pca(k, n_components=2)
        assert "insufficient_positive_eigenvalues" in pca.flags


class TestSVM:
    def test_two_points_midpoint_boundary(self):
        pts = np.array([[-1.0, 0.0], [1.0, 0.0]])
        model = svm_fit(pts, [-1, 1], alpha_rbf=0.5)
        assert svm_predict(model, pts).tolist() == [-1, 1]
        assert abs(svm_decision(model, np.array([[0.0, 0.0]]))[0]) < 1e-6

    def test_xor_layout(self):
        pts = np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
        labels = np.array([1, 1, -1, -1])
        model = svm_fit(pts, labels, alpha_rbf=2.0, c=10.0)
        assert np.array_equal(svm_predict(model, pts), labels)

    def test_duplicate_consistent_point_invariance(self):
        rng = np.random.default_rng(14)
        pts = rng.standard_normal((10, 2))
        labels = np.where(pts[:, 0] > 0, 1.0, -1.0)
        m1 = svm_fit(pts, labels, alpha_rbf=1.0)
        pts2 = np.vstack([pts, pts[0]])
        labels2 = np.append(labels, labels[0])
        m2 = svm_fit(pts2, labels2, alpha_rbf=1.0)
        grid = rng.standard_normal((50, 2))
        agree = (svm_predict(m1, grid) == svm_predict(m2, grid)).mean()
        assert agree >= 0.95

    def test_label_flip_flips_decision(self):
        rng = np.random.default_rng(15)
        pts = rng.standard_normal((8, 2))
        labels = np.where(pts[:, 1] > 0, 1.0, -1.0)
        m1 = svm_fit(pts, labels, alpha_rbf=1.0)
        m2 = svm_fit(pts, -labels, alpha_rbf=1.0)
        grid = rng.standard_normal((20, 2))
        assert np.allclose(svm_decision(m1, grid), -svm_decision(m2, grid), atol=1e-4)

    def test_single_class_rejected(self):
        with pytest.raises(ValueError):
            svm_fit(np.zeros((3, 2)), [1, 1, 1])

    def test_gamma_scale_formula(self):
        rng = np.random.default_rng(16)
        x = rng.standard_normal((20, 2))
        assert svm_gamma_scale(x) == pytest.approx(1.0 / (2 * x.var()))

    def test_coefficients_within_box(self):
        rng = np.random.default_rng(17)
        pts = rng.standard_normal((12, 2))
        labels = np.where(pts.sum(axis=1) + 0.3 * rng.standard_normal(12) > 0, 1.0, -1.0)
        if len(set(labels)) < 2:
            labels[0] = -labels[0]
        c = 0.7
        model = svm_fit(pts, labels, alpha_rbf=1.0, c=c)
        assert np.all(np.abs(model.support_coeffs) <= c + 1e-9)


class TestRMSE:
    def test_identical_zero(self):
        x = np.random.default_rng(18).standard_normal((4, 6))
        assert rmse(x, x) == 0.0

    def test_constant_offset(self):
        x = np.zeros((3, 5))
        assert rmse(x + 0.25, x) == pytest.approx(0.25)

    def test_matches_two_pass_oracle(self):
        rng = np.random.default_rng(19)
        pred = rng.standard_normal((10, 7))
        exact = rng.standard_normal((10, 7))
        total = 0.0
        for s in range(10):
            acc = 0.0
            for e in range(7):
                acc += (pred[s, e] - exact[s, e]) ** 2
            total += np.sqrt(acc / 7)
        assert rmse(pred, exact) == pytest.approx(total / 10, abs=1e-12)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            rmse(np.zeros((2, 2)), np.zeros((3, 2)))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 100))
    def test_scale_equivariance(self, rows, cols, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((rows, cols))
        b = rng.standard_normal((rows, cols))
        assert rmse(2 * a, 2 * b) == pytest.approx(2 * rmse(a, b), rel=1e-9)
