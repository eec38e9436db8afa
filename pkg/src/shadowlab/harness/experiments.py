"""Config-driven, seeded, resumable runs of the four experiments.

Each experiment is a sequence of stages; every stage derives its RNG from
the master seed and its name, writes its artifacts atomically, and is
skipped on replay when its artifacts already exist with matching hashes.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..features import (
    calibrate_response,
    collect_tomography,
    evaluate_classifiers,
    feature_map,
    fit_linear_classifier,
    mitigate,
    mle_qst,
    reduced_density_matrix,
    tee_classifier,
)
from ..fermion import (
    build_hopping,
    estimate_correlation_matrices,
    ground_correlation,
    ssh_spec,
    uniform_spec,
)
from ..ml import (
    KernelSpec,
    gaussian_alpha_heuristic,
    kernel_pca,
    krr_fit,
    krr_predict,
    rmse,
    select_lambda,
)
from ..phases import (
    ClusterIsingSpec,
    cluster_ising_ground,
    prepare_cluster,
    prepare_logical_zero,
    prepare_product_x,
    sop,
    surface_layout,
    topo_dataset,
)
from ..phases.dataset import PhaseDataset
from ..phases.lu import local_random_circuit
from ..phases.symmetric import symmetric_random_circuit
from ..shadows import acquire, gram
from ..simcore import NoiseModel, run_circuit, zero_state
from .classify import accuracy, train_shadow_classifier
from .config import ExperimentConfig
from .manifest import RunManifest, StageTimer, atomic_write, stage_rng
from .tables import read_table, write_table


class StageFailure(RuntimeError):
    pass


def _load_or_create_manifest(config: ExperimentConfig, out: Path) -> RunManifest:
    """Resume from an existing manifest when the config matches."""
    path = out / "manifest.json"
    if path.exists():
        try:
            existing = RunManifest.load(path)
            if existing.config.content_hash() == config.content_hash():
                return existing
        except ValueError:
            pass
    return RunManifest(config, out)


def _run_stage(manifest: RunManifest, name: str, artifacts: list[str], fn) -> bool:
    """Execute fn unless the stage's artifacts already verify; returns ran?"""
    if manifest.stage_complete(name, artifacts):
        return False
    timer = StageTimer()
    try:
        fn()
    except Exception as exc:  # checkpointed failure propagates with context
        manifest.save()
        raise StageFailure(f"stage {name!r} failed: {exc}") from exc
    manifest.record_stage(name, artifacts, timer.elapsed())
    manifest.save()
    return True


def _noise_from(params: dict) -> NoiseModel:
    d = params.get("noise", {})
    p_m = d.get("p_m", 0.0)
    if isinstance(p_m, list):
        p_m = tuple(p_m)
    return NoiseModel(d.get("p_single", 0.0), d.get("p_two", 0.0), p_m,
                      d.get("p_global", 0.0))


def _upper_indices(n: int):
    return np.triu_indices(n)


# --------------------------------------------------------------------------
# Experiment 1: predicting ground-state correlation matrices
# --------------------------------------------------------------------------

def run_predict_ground_state(config: ExperimentConfig, out_dir) -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = _load_or_create_manifest(config, out)
    p = config.params
    n = int(p["n"])
    iu = _upper_indices(n)
    prov = {"seed": config.master_seed, "config_hash": config.content_hash()}
    noise = _noise_from(p)

    def stage_train():
        rows = []
        for i in range(int(p["n_train"])):
            rng = stage_rng(config.master_seed, "train", i)
            spec = uniform_spec(n, rng, seed=i)
            results = estimate_correlation_matrices(
                spec, int(p["shots"]), noise, rng,
                variants=[{"post_select": True, "purify": True},
                          {"post_select": False, "purify": False}],
                method=p["method"])
            c_exact, _, _ = ground_correlation(build_hopping(spec))
            rows.append([i] + list(spec.x)
                        + list(results[0][0][iu]) + list(results[1][0][iu])
                        + list(c_exact[iu]))
        header = (["idx"] + [f"x{k}" for k in range(n - 1)]
                  + [f"cmit{k}" for k in range(len(iu[0]))]
                  + [f"craw{k}" for k in range(len(iu[0]))]
                  + [f"cexact{k}" for k in range(len(iu[0]))])
        write_table(out / "train_data.csv", header, rows, prov)

    def stage_reference():
        for name, count in (("test", int(p["n_test"])), ("validation", int(p["n_validation"]))):
            rng = stage_rng(config.master_seed, f"reference-{name}")
            rows = []
            for i in range(count):
                spec = uniform_spec(n, rng)
                c_exact, _, _ = ground_correlation(build_hopping(spec))
                rows.append([i] + list(spec.x) + list(c_exact[iu]))
            header = (["idx"] + [f"x{k}" for k in range(n - 1)]
                      + [f"cexact{k}" for k in range(len(iu[0]))])
            write_table(out / f"{name}_data.csv", header, rows, prov)
        rows = []
        for w in p["ssh_w_values"]:
            spec = ssh_spec(n, 1.0, float(w))
            c_exact, _, _ = ground_correlation(build_hopping(spec))
            rows.append([w] + list(spec.x) + list(c_exact[iu]))
        header = (["w"] + [f"x{k}" for k in range(n - 1)]
                  + [f"cexact{k}" for k in range(len(iu[0]))])
        write_table(out / "ssh_reference.csv", header, rows, prov)

    def _load_xy(path, prefix):
        header, rows = read_table(out / path)
        x_cols = [k for k, h in enumerate(header) if h.startswith("x")]
        y_cols = [k for k, h in enumerate(header) if h.startswith(prefix)]
        x = np.array([[float(r[k]) for k in x_cols] for r in rows])
        y = np.array([[float(r[k]) for k in y_cols] for r in rows])
        return x, y

    def _kernel_spec(kind, x_train):
        if kind == "gaussian":
            return KernelSpec("gaussian", alpha=gaussian_alpha_heuristic(x_train))
        return KernelSpec(kind)

    def stage_model():
        x_train, y_mit = _load_xy("train_data.csv", "cmit")
        x_val, y_val = _load_xy("validation_data.csv", "cexact")
        rows = []
        for kind in p["kernels"]:
            spec = _kernel_spec(kind, x_train)
            lam, scores = select_lambda((x_train, y_mit), (x_val, y_val), spec,
                                        grid=p["lambda_grid"])
            model = krr_fit(x_train, y_mit, spec, lam)
            atomic_write(out / f"model_{kind}.json", model.to_json())
            for grid_lam, score in scores.items():
                rows.append([kind, grid_lam, score, int(grid_lam == lam)])
        write_table(out / "lambda_table.csv",
                    ["kernel", "lambda", "validation_rmse", "selected"], rows, prov)

    def stage_report():
        from ..ml import KRRModel

        x_train, y_mit = _load_xy("train_data.csv", "cmit")
        _, y_raw = _load_xy("train_data.csv", "craw")
        _, y_train_exact = _load_xy("train_data.csv", "cexact")
        x_test, y_test = _load_xy("test_data.csv", "cexact")
        x_val, y_val = _load_xy("validation_data.csv", "cexact")

        rmse_rows = [
            ["training-data-mitigated", "", rmse(y_mit, y_train_exact)],
            ["training-data-raw", "", rmse(y_raw, y_train_exact)],
        ]
        models = {}
        for kind in p["kernels"]:
            model = KRRModel.from_json((out / f"model_{kind}.json").read_text())
            models[kind] = model
            pred = krr_predict(model, x_test)
            rmse_rows.append(["test", kind, rmse(pred, y_test)])
            rmse_rows.append(["train-fit", kind, rmse(krr_predict(model, x_train), y_train_exact)])
        write_table(out / "rmse_table.csv", ["quantity", "kernel", "rmse"], rmse_rows, prov)

        sweep_rows = []
        metrics_rows = []
        run_id = config.content_hash()
        for n_data in p["n_data_sweep"]:
            xs, ys = x_train[:n_data], y_mit[:n_data]
            spec = _kernel_spec("gaussian", xs)
            lam, _ = select_lambda((xs, ys), (x_val, y_val), spec, grid=p["lambda_grid"])
            model = krr_fit(xs, ys, spec, lam)
            err = rmse(krr_predict(model, x_test), y_test)
            err_train = rmse(krr_predict(model, xs), y_train_exact[:n_data])
            sweep_rows.append([n_data, lam, err, 1.0 / err])
            metrics_rows.append([run_id, n_data, "gaussian", lam, err_train, err])
        write_table(out / "ndata_sweep.csv",
                    ["n_data", "lambda", "test_rmse", "inv_rmse"], sweep_rows, prov)
        write_table(out / "metrics.csv",
                    ["run_id", "N_data", "kernel", "lambda", "rmse_train", "rmse_test"],
                    metrics_rows, prov)
        slope = np.polyfit(np.log([r[0] for r in sweep_rows]),
                           [r[3] for r in sweep_rows], 1)[0]

        header, rows = read_table(out / "ssh_reference.csv")
        x_cols = [k for k, h in enumerate(header) if h.startswith("x")]
        y_cols = [k for k, h in enumerate(header) if h.startswith("cexact")]
        edge_col = y_cols[n - 1]  # C[0, n-1] is entry n-1 of the upper triangle
        ssh_rows = []
        edge_rows = []
        for r in rows:
            w = float(r[0])
            x_ssh = np.array([[float(r[k]) for k in x_cols]])
            y_ssh = np.array([[float(r[k]) for k in y_cols]])
            row = [w]
            edge_row = [w, float(r[edge_col])]
            for kind in p["kernels"]:
                pred = krr_predict(models[kind], x_ssh)
                row.append(rmse(pred, y_ssh))
                edge_row.append(float(pred[0, n - 1]))
            ssh_rows.append(row)
            edge_rows.append(edge_row)
        write_table(out / "ssh_transfer.csv",
                    ["w"] + [f"rmse_{k}" for k in p["kernels"]], ssh_rows, prov)
        write_table(out / "edge_correlation.csv",
                    ["w", "exact"] + [f"pred_{k}" for k in p["kernels"]],
                    edge_rows, prov)

        report = {
            "rmse_train_mitigated": rmse_rows[0][2],
            "rmse_train_raw": rmse_rows[1][2],
            "rmse_test": {kind: r[2] for r in rmse_rows[2:] for kind in [r[1]]
                          if r[0] == "test"},
            "inv_rmse_log_slope": float(slope),
            "edge_correlation": edge_rows,
        }
        atomic_write(out / "report.json", json.dumps(report, sort_keys=True, indent=1))

    _run_stage(manifest, "train", ["train_data.csv"], stage_train)
    _run_stage(manifest, "reference",
               ["test_data.csv", "validation_data.csv", "ssh_reference.csv"],
               stage_reference)
    model_files = [f"model_{k}.json" for k in p["kernels"]] + ["lambda_table.csv"]
    _run_stage(manifest, "model", model_files, stage_model)
    _run_stage(manifest, "report",
               ["rmse_table.csv", "ndata_sweep.csv", "metrics.csv",
                "ssh_transfer.csv", "edge_correlation.csv", "report.json"],
               stage_report)
    manifest.save()
    return json.loads((out / "report.json").read_text())


# --------------------------------------------------------------------------
# Experiment 2: SPT vs trivial classification
# --------------------------------------------------------------------------

def _marching_squares(grid_x, grid_y, values, level):
    """Contour segments of values == level on a rectilinear grid."""
    segments = []
    nx, ny = values.shape
    for i in range(nx - 1):
        for j in range(ny - 1):
            corners = [
                (grid_x[i], grid_y[j], values[i, j]),
                (grid_x[i + 1], grid_y[j], values[i + 1, j]),
                (grid_x[i + 1], grid_y[j + 1], values[i + 1, j + 1]),
                (grid_x[i], grid_y[j + 1], values[i, j + 1]),
            ]
            pts = []
            for k in range(4):
                x1, y1, v1 = corners[k]
                x2, y2, v2 = corners[(k + 1) % 4]
                if (v1 - level) * (v2 - level) < 0:
                    t = (level - v1) / (v2 - v1)
                    pts.append((x1 + t * (x2 - x1), y1 + t * (y2 - y1)))
            if len(pts) >= 2:
                segments.append((pts[0], pts[1]))
    return segments


def _point_segment_distance(pt, seg):
    p = np.array(pt)
    a = np.array(seg[0])
    b = np.array(seg[1])
    ab = b - a
    t = np.clip(np.dot(p - a, ab) / max(np.dot(ab, ab), 1e-30), 0.0, 1.0)
    return float(np.linalg.norm(p - (a + t * ab)))


def run_classify_spt(config: ExperimentConfig, out_dir) -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = _load_or_create_manifest(config, out)
    p = config.params
    n = int(p["n"])
    t_records = int(p["T"])
    prov = {"seed": config.master_seed, "config_hash": config.content_hash()}

    def _dataset(symmetry, rng):
        layers = int(p["control_layers"] if symmetry == "none" else p["layers"])
        ds = PhaseDataset(n)
        fixed = {"A": prepare_cluster(n), "B": prepare_product_x(n)}
        for label in ("A", "B"):
            for k in range(int(p["n_per_phase"])):
                circ = symmetric_random_circuit(n, symmetry, rng, layers=layers)
                state, _ = run_circuit(fixed[label], circ)
                ds.add(label, acquire(state, t_records, rng), {"symmetry": symmetry})
        return ds

    def stage_classify():
        rows = []
        emb_rows = []
        for symmetry in p["symmetries"]:
            for seed_idx in range(int(p["n_seeds"])):
                rng = stage_rng(config.master_seed, f"spt-{symmetry}", seed_idx)
                train = _dataset(symmetry, rng)
                test = _dataset(symmetry, rng)
                clf, stats = train_shadow_classifier(
                    train.shadows(), train.labels(), tau=p["tau"], gamma=p["gamma"],
                    svm_c=p["svm_c"])
                acc = accuracy(clf, test.shadows(), test.labels())
                rows.append([symmetry, seed_idx, acc, stats["svm_alpha"],
                             stats["train_accuracy"]])
                if seed_idx == 0:
                    emb_test = clf.project(test.shadows())
                    for (label, _, _), e_row in zip(test.entries, emb_test):
                        emb_rows.append([symmetry, label, e_row[0], e_row[1]])
        write_table(out / "spt_accuracy.csv",
                    ["symmetry", "seed_idx", "test_accuracy", "svm_alpha",
                     "train_accuracy"], rows, prov)
        write_table(out / "spt_embeddings.csv",
                    ["symmetry", "label", "pc1", "pc2"], emb_rows, prov)

    def stage_sop():
        rng = stage_rng(config.master_seed, "sop")
        rows = []
        lengths = [(1, 1 + d) for d in range(2, n - 1, 2)]
        for a, b in lengths:
            vals_spt, vals_triv = [], []
            for _ in range(300):
                circ = symmetric_random_circuit(n, "TRS", rng, layers=int(p["layers"]))
                spt_state, _ = run_circuit(prepare_cluster(n), circ)
                triv_state, _ = run_circuit(prepare_product_x(n), circ)
                vals_spt.append(sop(spt_state, a, b))
                vals_triv.append(sop(triv_state, a, b))
            rows.append([b - a, np.mean(vals_spt), np.std(vals_spt),
                         np.mean(vals_triv), np.std(vals_triv)])
        write_table(out / "sop_table.csv",
                    ["length", "spt_mean", "spt_std", "trivial_mean", "trivial_std"],
                    rows, prov)

    def stage_hci():
        hp = p["hci"]
        a_site, b_site = hp["sop_pair"]
        rng = stage_rng(config.master_seed, "hci")
        h1_grid = np.arange(hp["h1_range"][0], hp["h1_range"][1] + 1e-9, hp["grid_step"])
        h2_grid = np.arange(hp["h2_range"][0], hp["h2_range"][1] + 1e-9, hp["grid_step"])
        sop_grid = np.zeros((len(h1_grid), len(h2_grid)))
        for i, h1 in enumerate(h1_grid):
            for j, h2 in enumerate(h2_grid):
                state, _ = cluster_ising_ground(ClusterIsingSpec(n, float(h1), float(h2)))
                sop_grid[i, j] = abs(sop(state, a_site, b_site))
        segments = _marching_squares(h1_grid, h2_grid, sop_grid, 0.5)

        train_rng = stage_rng(config.master_seed, "hci-train")
        train = _dataset("Z2xZ2", train_rng)
        clf, _ = train_shadow_classifier(train.shadows(), train.labels(),
                                         tau=p["tau"], gamma=p["gamma"],
                                         svm_c=p["svm_c"])
        rows = []
        hits = 0
        kept = 0
        while kept < int(hp["n_points"]):
            h1 = rng.uniform(*hp["h1_range"])
            h2 = rng.uniform(*hp["h2_range"])
            if segments and min(_point_segment_distance((h1, h2), s) for s in segments) < hp["margin"]:
                continue
            state, _ = cluster_ising_ground(ClusterIsingSpec(n, h1, h2))
            truth = "A" if abs(sop(state, a_site, b_site)) >= 0.5 else "B"
            shadow = acquire(state, t_records, rng)
            pred = "A" if clf.predict([shadow])[0] > 0 else "B"
            hits += int(pred == truth)
            kept += 1
            rows.append([h1, h2, truth, pred, int(pred == truth)])
        write_table(out / "hci_map.csv",
                    ["h1", "h2", "truth", "prediction", "correct"], rows, prov)
        atomic_write(out / "hci_summary.json", json.dumps(
            {"accuracy": hits / kept, "n_points": kept}, sort_keys=True, indent=1))

    def stage_report():
        _, rows = read_table(out / "spt_accuracy.csv")
        acc = {}
        for sym in p["symmetries"]:
            vals = [float(r[2]) for r in rows if r[0] == sym]
            acc[sym] = {"mean": float(np.mean(vals)), "std": float(np.std(vals))}
        hci = json.loads((out / "hci_summary.json").read_text())
        atomic_write(out / "report.json", json.dumps(
            {"accuracy": acc, "hci": hci}, sort_keys=True, indent=1))

    _run_stage(manifest, "classify", ["spt_accuracy.csv", "spt_embeddings.csv"],
               stage_classify)
    _run_stage(manifest, "sop", ["sop_table.csv"], stage_sop)
    _run_stage(manifest, "hci", ["hci_map.csv", "hci_summary.json"], stage_hci)
    _run_stage(manifest, "report", ["report.json"], stage_report)
    manifest.save()
    return json.loads((out / "report.json").read_text())


# --------------------------------------------------------------------------
# Experiment 3: topological vs trivial classification
# --------------------------------------------------------------------------

def _first_axis_margin(embedding_first, labels):
    a = embedding_first[labels == "A"]
    b = embedding_first[labels == "B"]
    lo, hi = (a, b) if a.mean() < b.mean() else (b, a)
    return float(hi.min() - lo.max())


def run_classify_topo(config: ExperimentConfig, out_dir) -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = _load_or_create_manifest(config, out)
    p = config.params
    prov = {"seed": config.master_seed, "config_hash": config.content_hash()}

    def stage_sweep():
        layout = surface_layout(int(p["d_code"]))
        atomic_write(out / "layout.json",
                     json.dumps(layout.to_dict(), sort_keys=True, indent=1))
        rows = []
        margin_rows = []
        for control in (False, True):
            for d_lu in p["d_lu_values"]:
                rng = stage_rng(config.master_seed,
                                f"topo-{'control' if control else 'main'}", d_lu)
                ds = topo_dataset(int(p["d_code"]), int(p["T"]),
                                  int(p["n_per_phase"]), int(d_lu), rng,
                                  control=control)
                k, _ = gram(ds.shadows(), tau=p["tau"], gamma=p["gamma"])
                pca = kernel_pca(k, n_components=2)
                labels = np.array(ds.labels())
                first = pca.embedding[:, 0]
                margin = _first_axis_margin(first, labels)
                tag = "control" if control else "main"
                margin_rows.append([tag, d_lu, margin])
                for label, val in zip(labels, first):
                    rows.append([tag, d_lu, label, float(val)])
        write_table(out / "topo_projections.csv",
                    ["variant", "d_lu", "label", "pc1"], rows, prov)
        write_table(out / "topo_margins.csv",
                    ["variant", "d_lu", "margin"], margin_rows, prov)

    def stage_report():
        _, margins = read_table(out / "topo_margins.csv")
        main = {int(r[1]): float(r[2]) for r in margins if r[0] == "main"}
        control = {int(r[1]): float(r[2]) for r in margins if r[0] == "control"}
        atomic_write(out / "report.json", json.dumps(
            {"margins": main, "control_margins": control}, sort_keys=True, indent=1))

    _run_stage(manifest, "sweep",
               ["layout.json", "topo_projections.csv", "topo_margins.csv"],
               stage_sweep)
    _run_stage(manifest, "report", ["report.json"], stage_report)
    manifest.save()
    return json.loads((out / "report.json").read_text())


# --------------------------------------------------------------------------
# Experiment 4: extracting a linear classifier from entropy features
# --------------------------------------------------------------------------

def _fig5_state(kind: str, layout, lu_layers: int, rng):
    if kind == "topo":
        base, _ = prepare_logical_zero(layout, "projector")
    else:
        base = zero_state(layout.n_data)
    circ = local_random_circuit(layout, lu_layers, rng)
    state, _ = run_circuit(base, circ)
    return state


def run_extract_classifier(config: ExperimentConfig, out_dir) -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = _load_or_create_manifest(config, out)
    p = config.params
    layout = surface_layout(int(p["d_code"]))
    subsystem = tuple(p["subsystem"])
    prov = {"seed": config.master_seed, "config_hash": config.content_hash()}

    def stage_train_features():
        rng = stage_rng(config.master_seed, "fig5-train")
        response = calibrate_response(float(p["p_m"]), int(p["calibration_shots"]), rng)
        rows = []
        for kind, label in (("topo", -1.0), ("trivial", 1.0)):
            for k in range(int(p["n_train_per_phase"])):
                state = _fig5_state(kind, layout, int(p["lu_layers"]), rng)
                rho = reduced_density_matrix(state, subsystem)
                raw = collect_tomography(rho, int(p["tomography_shots"]), rng,
                                         readout_rates=float(p["p_m"]))
                mem = {s: mitigate(response, dist) for s, dist in raw.items()}
                phi_raw = feature_map(mle_qst(raw), subsystem)
                phi_mem = feature_map(mle_qst(mem), subsystem)
                phi_exact = feature_map(state, subsystem)
                rows.append([kind, label, k] + list(phi_raw) + list(phi_mem)
                            + list(phi_exact))
        header = (["kind", "label", "idx"]
                  + [f"raw{k}" for k in range(15)]
                  + [f"mem{k}" for k in range(15)]
                  + [f"exact{k}" for k in range(15)])
        write_table(out / "train_features.csv", header, rows, prov)

    def stage_test_features():
        rng = stage_rng(config.master_seed, "fig5-test")
        rows = []
        for kind, label in (("topo", -1.0), ("trivial", 1.0)):
            for k in range(int(p["n_test_per_phase"])):
                state = _fig5_state(kind, layout, int(p["lu_layers"]), rng)
                rows.append([kind, label, k] + list(feature_map(state, subsystem)))
        header = ["kind", "label", "idx"] + [f"phi{k}" for k in range(15)]
        write_table(out / "test_features.csv", header, rows, prov)

    def stage_evaluate():
        header, rows = read_table(out / "train_features.csv")
        labels = np.array([float(r[1]) for r in rows])
        raw_cols = [k for k, h in enumerate(header) if h.startswith("raw")]
        mem_cols = [k for k, h in enumerate(header) if h.startswith("mem")]
        phi_raw = np.array([[float(r[k]) for k in raw_cols] for r in rows])
        phi_mem = np.array([[float(r[k]) for k in mem_cols] for r in rows])
        clf_raw = fit_linear_classifier(phi_raw, labels, c=float(p["svm_c"]))
        clf_mem = fit_linear_classifier(phi_mem, labels, c=float(p["svm_c"]))
        atomic_write(out / "classifier_raw.json", clf_raw.to_json())
        atomic_write(out / "classifier_mem.json", clf_mem.to_json())

        header_t, rows_t = read_table(out / "test_features.csv")
        test_labels = np.array([float(r[1]) for r in rows_t])
        phi_cols = [k for k, h in enumerate(header_t) if h.startswith("phi")]
        test_phi = np.array([[float(r[k]) for k in phi_cols] for r in rows_t])
        rng = stage_rng(config.master_seed, "fig5-eval")
        rates = evaluate_classifiers(
            {"ml_mem": clf_mem, "ml_raw": clf_raw, "tee": tee_classifier()},
            test_phi, test_labels, float(p["epsilon"]), int(p["n_instances"]), rng)
        table_rows = [[name, r["mean_error"], r["std_error"]] for name, r in rates.items()]
        write_table(out / "error_rates.csv",
                    ["classifier", "mean_error", "std_error"], table_rows, prov)
        atomic_write(out / "report.json", json.dumps(
            {"error_rates": rates,
             "w_ml_mem": clf_mem.w.tolist(), "w0_ml_mem": clf_mem.w0,
             "w_ml_raw": clf_raw.w.tolist(), "w0_ml_raw": clf_raw.w0},
            sort_keys=True, indent=1))

    _run_stage(manifest, "train-features", ["train_features.csv"], stage_train_features)
    _run_stage(manifest, "test-features", ["test_features.csv"], stage_test_features)
    _run_stage(manifest, "evaluate",
               ["classifier_raw.json", "classifier_mem.json", "error_rates.csv",
                "report.json"], stage_evaluate)
    manifest.save()
    return json.loads((out / "report.json").read_text())


RUNNERS = {
    "predict-ground-state": run_predict_ground_state,
    "classify-spt": run_classify_spt,
    "classify-topo": run_classify_topo,
    "extract-classifier": run_extract_classifier,
}


def run_experiment(config: ExperimentConfig, out_dir) -> dict:
    return RUNNERS[config.experiment](config, out_dir)


def replay(manifest_path) -> dict:
    """Re-run from a manifest: verified stages are skipped, missing
    artifacts are regenerated byte-identically from the recorded seeds."""
    manifest = RunManifest.load(manifest_path)
    return run_experiment(manifest.config, Path(manifest_path).parent)
