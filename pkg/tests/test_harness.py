import json

import numpy as np
import pytest

from shadowlab.harness import (
    ExperimentConfig,
    RunManifest,
    derive_seed,
    replay,
    run_classify_topo,
    run_predict_ground_state,
    stage_rng,
)
from shadowlab.harness.cli import EXIT_CONFIG, EXIT_OK, main
from shadowlab.harness.tables import read_table


def small_topo_config(seed=9):
    return ExperimentConfig("classify-topo",
                            {"d_code": 2, "T": 30, "n_per_phase": 3,
                             "d_lu_values": [0, 1]}, master_seed=seed)


def small_predict_config(seed=4):
    return ExperimentConfig("predict-ground-state",
                            {"n": 4, "n_train": 6, "n_validation": 10, "n_test": 12,
                             "shots": 500, "n_data_sweep": [3, 6],
                             "ssh_w_values": [0.5, 1.5]}, master_seed=seed)


class TestConfig:
    def test_defaults_applied(self):
        config = ExperimentConfig("classify-spt")
        assert config.params["T"] == 100
        assert config.params["symmetries"] == ["Z2xZ2", "TRS", "none"]

    def test_unknown_experiment(self):
        with pytest.raises(ValueError):
            ExperimentConfig("frobnicate")

    def test_unknown_key_rejected(self):
        with pytest.raises(ValueError):
            ExperimentConfig("classify-topo", {"bogus": 1})

    def test_hash_changes_with_params(self):
        a = ExperimentConfig("classify-topo", {"T": 10})
        b = ExperimentConfig("classify-topo", {"T": 20})
        assert a.content_hash() != b.content_hash()

    def test_json_round_trip(self):
        a = ExperimentConfig("classify-topo", {"T": 10}, master_seed=3)
        b = ExperimentConfig.from_json(a.to_json())
        assert b.content_hash() == a.content_hash()


class TestSeeds:
    def test_deterministic_and_distinct(self):
        assert derive_seed(1, "stage") == derive_seed(1, "stage")
        assert derive_seed(1, "stage") != derive_seed(2, "stage")
        assert derive_seed(1, "a") != derive_seed(1, "b")
        assert derive_seed(1, "a", 0) != derive_seed(1, "a", 1)

    def test_stage_rng_reproducible(self):
        assert stage_rng(5, "x").random() == stage_rng(5, "x").random()


class TestRunners:
    def test_predict_ground_state_small(self, tmp_path):
        report = run_predict_ground_state(small_predict_config(), tmp_path)
        assert "rmse_train_mitigated" in report
        assert (tmp_path / "manifest.json").exists()
        header, rows = read_table(tmp_path / "train_data.csv")
        assert header[-2:] == ["seed", "config_hash"]  # provenance columns
        assert len(rows) == 6

    def test_identical_runs_byte_identical(self, tmp_path):
        run_predict_ground_state(small_predict_config(), tmp_path / "a")
        run_predict_ground_state(small_predict_config(), tmp_path / "b")
        for name in ("train_data.csv", "test_data.csv", "rmse_table.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_replay_regenerates_deleted_artifacts(self, tmp_path):
        out = tmp_path / "run"
        run_classify_topo(small_topo_config(), out)
        original = (out / "topo_projections.csv").read_bytes()
        (out / "topo_projections.csv").unlink()
        (out / "report.json").unlink()
        replay(out / "manifest.json")
        assert (out / "topo_projections.csv").read_bytes() == original

    def test_replay_skips_complete_stages(self, tmp_path):
        out = tmp_path / "run"
        run_classify_topo(small_topo_config(), out)
        mtime = (out / "topo_projections.csv").stat().st_mtime_ns
        replay(out / "manifest.json")
        assert (out / "topo_projections.csv").stat().st_mtime_ns == mtime

    def test_tampered_manifest_rejected(self, tmp_path):
        out = tmp_path / "run"
        run_classify_topo(small_topo_config(), out)
        payload = json.loads((out / "manifest.json").read_text())
        payload["config_hash"] = "0" * 16
        (out / "manifest.json").write_text(json.dumps(payload))
        with pytest.raises(ValueError):
            RunManifest.load(out / "manifest.json")


class TestCLI:
    def test_validate_config_ok(self, tmp_path, capsys):
        path = tmp_path / "cfg.json"
        path.write_text(small_topo_config().to_json())
        assert main(["validate-config", str(path)]) == EXIT_OK

    def test_validate_config_bad(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text('{"experiment": "nope"}')
        assert main(["validate-config", str(path)]) == EXIT_CONFIG

    def test_run_via_cli(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(small_topo_config().to_json())
        code = main(["classify-topo", "--config", str(cfg),
                     "--out", str(tmp_path / "out")])
        assert code == EXIT_OK
        assert (tmp_path / "out" / "report.json").exists()

    def test_config_experiment_mismatch(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(small_topo_config().to_json())
        assert main(["classify-spt", "--config", str(cfg),
                     "--out", str(tmp_path / "x")]) == EXIT_CONFIG

    def test_missing_replay_manifest(self, tmp_path):
        assert main(["replay", str(tmp_path / "none.json")]) == EXIT_CONFIG
