"""CLI: exit codes, flags, manifests, reproducibility of emitted files."""

import pytest

from boostbound.cli import dispatch
from boostbound.data import load_csv
from boostbound.experiments import load_records_csv

TINY_SWEEP = [
    "exp", "m-sweep",
    "--d", "5", "--m-min", "10", "--m-max", "30", "--m-step", "10",
    "--repeats", "1", "--t-max", "3", "--epochs", "3",
    "--delta", "0.05", "--seed", "7", "--workers", "1",
]


def run(args):
    return dispatch([str(a) for a in args])


class TestExitCodes:
    def test_no_arguments_is_usage_error(self, capsys):
        assert run([]) == 1

    def test_unknown_flag(self, capsys):
        assert run(["exp", "m-sweep", "--bogus", "1"]) == 1
        assert "usage" in capsys.readouterr().err

    def test_unknown_subcommand(self, capsys):
        assert run(["frobnicate"]) == 1

    def test_help_exits_zero(self, capsys):
        assert run(["--help"]) == 0

    def test_exp_without_mode(self, capsys):
        assert run(["exp", "--out", "x"]) == 1
        assert "mode" in capsys.readouterr().err

    def test_missing_required_flag(self, capsys, tmp_path):
        assert run(["bound", "--d", "5", "--m", "100"]) == 1
        assert "--rho" in capsys.readouterr().err

    def test_runtime_failure_is_two(self, capsys, tmp_path):
        code = run(["plot", "--data", tmp_path / "missing.csv", "--out", tmp_path])
        assert code == 2
        assert "error" in capsys.readouterr().err


class TestBoundCommand:
    def test_prints_bound_value(self, capsys):
        assert run(["bound", "--rho", "0.5", "--d", "25", "--m", "1000", "--delta", "0.05"]) == 0
        value = float(capsys.readouterr().out.strip())
        assert value == pytest.approx(1.9755, abs=1e-3)

    def test_infinite_bound(self, capsys):
        assert run(["bound", "--rho", "0", "--d", "25", "--m", "1000"]) == 0
        assert capsys.readouterr().out.strip() == "+inf"

    def test_inapplicable_regime_fails(self, capsys):
        assert run(["bound", "--rho", "0.5", "--d", "100", "--m", "3"]) == 2
        assert "does not apply" in capsys.readouterr().err

    def test_writes_manifest_when_out_given(self, tmp_path, capsys):
        out = tmp_path / "b"
        assert run(["bound", "--rho", "0.5", "--d", "25", "--m", "1000", "--out", out]) == 0
        assert (out / "manifest").exists()
        assert (out / "bound.txt").read_text().startswith("1.97547")


class TestGenCommand:
    def test_generates_loadable_csv(self, tmp_path, capsys):
        out = tmp_path / "gen"
        assert run(["gen", "--d", "4", "--m", "30", "--seed", "3", "--out", out]) == 0
        ds = load_csv(out / "dataset.csv", target_column="label", positive_value="1")
        assert ds.n_rows == 30
        assert ds.n_features == 3
        assert (out / "manifest").exists()

    def test_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        run(["gen", "--d", "4", "--m", "30", "--seed", "3", "--out", a])
        run(["gen", "--d", "4", "--m", "30", "--seed", "3", "--out", b])
        assert (a / "dataset.csv").read_bytes() == (b / "dataset.csv").read_bytes()


class TestTrainCommand:
    def test_synthetic_run(self, tmp_path, capsys):
        out = tmp_path / "t"
        code = run([
            "train", "--d", "4", "--m", "40", "--t-max", "3", "--epochs", "3",
            "--seed", "5", "--out", out,
        ])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "train_error" in stdout and "epsilon_boost" in stdout
        records = load_records_csv(out / "report.csv").records
        assert len(records) == 1
        assert records[0].params.m == 40

    def test_real_data_run(self, tmp_path, capsys):
        gen_out = tmp_path / "gen"
        run(["gen", "--d", "4", "--m", "60", "--seed", "3", "--out", gen_out])
        out = tmp_path / "t"
        code = run([
            "train", "--data", gen_out / "dataset.csv", "--t-max", "3",
            "--epochs", "3", "--seed", "5", "--out", out,
        ])
        assert code == 0
        records = load_records_csv(out / "report.csv").records
        assert records[0].params.source == "real"
        assert records[0].params.m == 30  # half of 60


class TestExpCommand:
    def test_m_sweep_writes_artifacts(self, tmp_path, capsys):
        out = tmp_path / "m"
        assert run(TINY_SWEEP + ["--out", out]) == 0
        assert (out / "m-sweep.csv").exists()
        assert (out / "m-sweep.svg").exists()
        assert (out / "manifest").exists()
        stdout = capsys.readouterr().out
        assert "confidence" in stdout

    def test_byte_identical_reruns(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run(TINY_SWEEP + ["--out", a]) == 0
        assert run(TINY_SWEEP + ["--out", b]) == 0
        assert (a / "m-sweep.csv").read_bytes() == (b / "m-sweep.csv").read_bytes()
        assert (a / "m-sweep.svg").read_bytes() == (b / "m-sweep.svg").read_bytes()

    def test_worker_count_does_not_change_output(self, tmp_path, capsys):
        a, b = tmp_path / "w1", tmp_path / "w2"
        args = [x for x in TINY_SWEEP if x != "--workers"]
        assert run(TINY_SWEEP + ["--out", a]) == 0
        two = list(TINY_SWEEP)
        two[two.index("--workers") + 1] = "2"
        assert run(two + ["--out", b]) == 0
        assert (a / "m-sweep.csv").read_bytes() == (b / "m-sweep.csv").read_bytes()
        assert (a / "m-sweep.svg").read_bytes() == (b / "m-sweep.svg").read_bytes()

    def test_manifest_round_trip(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run(TINY_SWEEP + ["--out", a]) == 0
        assert run(["exp", "--config", a / "manifest", "--out", b]) == 0
        assert (a / "m-sweep.csv").read_bytes() == (b / "m-sweep.csv").read_bytes()
        assert (a / "m-sweep.svg").read_bytes() == (b / "m-sweep.svg").read_bytes()

    def test_config_keys_validated(self, tmp_path, capsys):
        bad = tmp_path / "bad.conf"
        bad.write_text("bogus = 1\n")
        assert run(["exp", "m-sweep", "--config", bad, "--out", tmp_path / "o"]) == 1
        assert "bogus" in capsys.readouterr().err

    def test_flags_override_config(self, tmp_path, capsys):
        a = tmp_path / "a"
        assert run(TINY_SWEEP + ["--out", a]) == 0
        b = tmp_path / "b"
        assert run(["exp", "--config", a / "manifest", "--m-max", "20", "--out", b]) == 0
        records = load_records_csv(b / "m-sweep.csv").records
        assert [r.params.m for r in records] == [10, 20]

    def test_t_sweep(self, tmp_path, capsys):
        out = tmp_path / "t"
        code = run([
            "exp", "t-sweep", "--d", "3", "--m", "6", "--t-max", "4",
            "--repeats", "2", "--epochs", "2", "--seed", "7",
            "--workers", "1", "--out", out,
        ])
        assert code == 0
        records = load_records_csv(out / "t-sweep.csv").records
        assert [r.params.T for r in records] == [1, 2, 3, 4]

    def test_d_sweep(self, tmp_path, capsys):
        out = tmp_path / "d"
        code = run([
            "exp", "d-sweep", "--m", "10", "--d-min", "3", "--d-max", "5",
            "--d-step", "2", "--repeats", "1", "--t-max", "3", "--epochs", "3",
            "--seed", "7", "--workers", "1", "--out", out,
        ])
        assert code == 0
        records = load_records_csv(out / "d-sweep.csv").records
        assert [r.params.d for r in records] == [3, 5]

    def test_real_m_sweep(self, tmp_path, capsys):
        gen_out = tmp_path / "gen"
        run(["gen", "--d", "5", "--m", "120", "--seed", "3", "--out", gen_out])
        out = tmp_path / "rm"
        code = run([
            "exp", "real-m", "--data", gen_out / "dataset.csv",
            "--m-min", "20", "--m-max", "40", "--m-step", "20",
            "--repeats", "1", "--t-max", "3", "--epochs", "3",
            "--seed", "7", "--workers", "1", "--out", out,
        ])
        assert code == 0
        records = load_records_csv(out / "real-m.csv").records
        assert [r.params.m for r in records] == [20, 40]
        assert all(r.params.source == "real" for r in records)

    def test_real_d_sweep_defaults_to_all_features(self, tmp_path, capsys):
        gen_out = tmp_path / "gen"
        run(["gen", "--d", "4", "--m", "80", "--seed", "3", "--out", gen_out])
        out = tmp_path / "rd"
        code = run([
            "exp", "real-d", "--data", gen_out / "dataset.csv",
            "--repeats", "1", "--t-max", "3", "--epochs", "3",
            "--seed", "7", "--workers", "1", "--out", out,
        ])
        assert code == 0
        records = load_records_csv(out / "real-d.csv").records
        assert [r.params.d for r in records] == [2, 3, 4]

    def test_confidence_mode(self, tmp_path, capsys):
        # m >= 40 keeps every d in {25..100} inside the bound's regime
        out = tmp_path / "conf"
        code = run([
            "exp", "confidence",
            "--m-min", "40", "--m-max", "80", "--m-step", "40",
            "--d-min", "3", "--d-max", "4", "--d-step", "1",
            "--repeats", "1", "--t-max", "2", "--epochs", "2",
            "--seed", "7", "--workers", "1", "--out", out,
        ])
        assert code == 0
        table = (out / "confidence.csv").read_text().splitlines()
        assert table[0] == "label,confidence"
        assert len(table) == 9  # 4 m-sweeps + 4 d-sweeps
        for line in table[1:]:
            assert line.endswith("%")

    def test_confidence_mode_rejects_fully_inapplicable_grid(self, tmp_path, capsys):
        code = run([
            "exp", "confidence",
            "--m-min", "10", "--m-max", "20", "--m-step", "10",
            "--d-min", "3", "--d-max", "4", "--d-step", "1",
            "--repeats", "1", "--t-max", "2", "--epochs", "2",
            "--seed", "7", "--workers", "1", "--out", tmp_path / "conf",
        ])
        assert code == 2  # d=75/100 sweeps have no applicable cell at m <= 20
        assert "confidence" in capsys.readouterr().err

    def test_grid_failure_is_runtime_error(self, tmp_path, capsys):
        gen_out = tmp_path / "gen"
        run(["gen", "--d", "4", "--m", "20", "--seed", "3", "--out", gen_out])
        code = run([
            "exp", "real-m", "--data", gen_out / "dataset.csv",
            "--m-min", "50", "--m-max", "50", "--m-step", "1",
            "--out", tmp_path / "x",
        ])
        assert code == 2
        assert "train half" in capsys.readouterr().err


class TestPlotCommand:
    def test_replots_identical_svg(self, tmp_path, capsys):
        a = tmp_path / "a"
        assert run(TINY_SWEEP + ["--out", a]) == 0
        out = tmp_path / "p"
        assert run(["plot", "--data", a / "m-sweep.csv", "--out", out]) == 0
        assert (out / "m-sweep.svg").read_bytes() == (a / "m-sweep.svg").read_bytes()
