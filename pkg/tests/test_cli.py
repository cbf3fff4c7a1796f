import json
import subprocess
import sys

import numpy as np
import pytest

from qid.channels import matrix_to_pairs
from qid.cli import (
    EXIT_CAPACITY,
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_VIOLATION,
    load_config,
    main,
)
from qid.errors import ConfigError


def write_config(path, **overrides):
    data = {
        "n": 1,
        "attacks": [{"kind": "cnot_probe"}],
        "c_offset": 0,
        "dense_limit": 2,
        "seed": 11,
    }
    data.update(overrides)
    path.write_text(json.dumps(data))
    return path


class TestConfig:
    def test_load_round_trip(self, tmp_path):
        cfg = load_config(
            write_config(
                tmp_path / "cfg.json",
                n=2,
                attacks=[{"kind": "depolarize", "params": {"p": 0.25}}],
                tolerances={"decision": 1e-6},
                sweep={"n_values": [1, 2]},
            )
        )
        assert cfg.n == 2
        assert cfg.attacks[0].params["p"] == 0.25
        assert cfg.tolerances.decision == 1e-6
        assert cfg.sweep_n == (1, 2)

    def test_bad_json_raises_config_error(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_unknown_attack_raises_config_error(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(write_config(tmp_path / "cfg.json", attacks=[{"kind": "nope"}]))


class TestSimulate:
    def test_all_seven_attacks_exit_zero(self, tmp_path):
        all_attacks = [
            {"kind": "identity"},
            {"kind": "measure_z"},
            {"kind": "measure_x"},
            {"kind": "cnot_probe"},
            {"kind": "universal_cloner"},
            {"kind": "depolarize", "params": {"p": 0.5}},
            {"kind": "intercept_resend_angle", "params": {"theta": 0.7853981633974483}},
        ]
        cfg = write_config(tmp_path / "cfg.json", attacks=all_attacks)
        out = tmp_path / "out"
        assert main(["simulate", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
        reports = sorted(out.glob("report_*.json"))
        assert len(reports) == 7
        for path in reports:
            data = json.loads(path.read_text())
            assert data["all_hold"] is True
            assert data["equivalence"]["passed"] is True

    def test_dense_request_beyond_cap_exits_capacity(self, tmp_path):
        cfg = write_config(tmp_path / "cfg.json", n=9, dense_limit=9)
        assert (
            main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "o")])
            == EXIT_CAPACITY
        )

    def test_missing_config_exits_config(self, tmp_path):
        assert main(["simulate", "--config", str(tmp_path / "none.json")]) == EXIT_CONFIG

    def test_outputs_are_deterministic(self, tmp_path):
        cfg = write_config(
            tmp_path / "cfg.json",
            n=2,
            attacks=[{"kind": "universal_cloner"}, {"kind": "measure_z"}],
        )
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        assert main(["simulate", "--config", str(cfg), "--out", str(out_a)]) == EXIT_OK
        assert main(["simulate", "--config", str(cfg), "--out", str(out_b)]) == EXIT_OK
        files_a = sorted(p.name for p in out_a.iterdir())
        files_b = sorted(p.name for p in out_b.iterdir())
        assert files_a == files_b
        for name in files_a:
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()

    def test_grid_csv_has_expected_header(self, tmp_path):
        cfg = write_config(tmp_path / "cfg.json")
        out = tmp_path / "out"
        main(["simulate", "--config", str(cfg), "--out", str(out)])
        grid = (out / "grid_cnot_probe_n1.csv").read_text().splitlines()
        assert grid[0] == "n,attack,l,m,count_B,count_E,bound,holds"
        assert len(grid) == 1 + 9


class TestSweep:
    def test_sweep_over_n_values(self, tmp_path):
        cfg = write_config(
            tmp_path / "cfg.json",
            attacks=[{"kind": "measure_z"}],
            sweep={"n_values": [1, 2]},
        )
        out = tmp_path / "out"
        code = main(
            ["sweep", "--config", str(cfg), "--out", str(out), "--workers", "2"]
        )
        assert code == EXIT_OK
        assert (out / "report_measure_z_n1.json").exists()
        assert (out / "report_measure_z_n2.json").exists()


class TestCheckLP:
    def test_valid_family_holds(self, tmp_path):
        fam = tmp_path / "family.json"
        state = tmp_path / "state.json"
        p0 = np.diag([1.0, 0.0]).astype(complex)
        p1 = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
        fam.write_text(json.dumps({"projectors": [matrix_to_pairs(p) for p in (p0, p1)]}))
        state.write_text(json.dumps({"matrix": matrix_to_pairs(np.eye(2, dtype=complex) / 2)}))
        assert main(["check-lp", "--family", str(fam), "--state", str(state)]) == EXIT_OK

    def test_bad_file_exits_config(self, tmp_path):
        fam = tmp_path / "family.json"
        fam.write_text("[]")
        state = tmp_path / "state.json"
        state.write_text("not json")
        assert (
            main(["check-lp", "--family", str(fam), "--state", str(state)])
            == EXIT_CONFIG
        )


class TestOverlap:
    def test_overlap_table_exit_zero(self, capsys):
        assert main(["overlap", "--n", "2"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "x,z,norm,expected,abs_error"
        assert len(lines) == 1 + 16

    def test_overlap_capacity(self):
        assert main(["overlap", "--n", "9"]) == EXIT_CAPACITY


def test_exit_status_reflects_violations(tmp_path, monkeypatch):
    # force a failing verdict to confirm the violation exit path
    import qid.cli as cli

    cfg = write_config(tmp_path / "cfg.json")
    monkeypatch.setattr(cli, "run_single", lambda *a, **k: False)
    assert main(["simulate", "--config", str(cfg)]) == EXIT_VIOLATION


def test_console_entry_runs_as_module():
    proc = subprocess.run(
        [sys.executable, "-m", "qid.cli", "overlap", "--n", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("x,z,norm")
