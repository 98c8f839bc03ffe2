import json

import pytest

from wignerlab.cli import main

SHIFT_CONFIG = """
[experiment]
kind = shift
n = 12
trials = 150
seed = 42
output = shift.csv

[ensemble_a]
symmetry_class = real_symmetric
off_diagonal_kind = gaussian
off_diagonal_scale = 1.0
diagonal_kind = gaussian
diagonal_scale = 1.0

[ensemble_b]
symmetry_class = real_symmetric
off_diagonal_kind = laplace
off_diagonal_scale = 0.7071067811865476
diagonal_kind = laplace
diagonal_scale = 0.7071067811865476
"""

MOMENTS_CONFIG = """
[experiment]
kind = moments
n = 10
k = 4
trials = 150
seed = 7
output = moments.csv

[ensemble_a]
symmetry_class = complex_hermitian
off_diagonal_kind = gaussian
off_diagonal_scale = 0.7071067811865476
diagonal_kind = gaussian
diagonal_scale = 1.0

[ensemble_b]
symmetry_class = complex_hermitian
off_diagonal_kind = laplace
off_diagonal_scale = 0.5
diagonal_kind = gaussian
diagonal_scale = 1.0
"""


def write(tmp_path, text, name="exp.ini"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestSelftest:
    def test_passes_and_writes_csv(self, tmp_path, capsys):
        code = main(["selftest", "--out", str(tmp_path)])
        assert code == 0
        out = capsys.readouterr().out
        assert out.count("[pass]") == 4
        text = (tmp_path / "selftest.csv").read_text()
        assert text.splitlines()[0] == "check,status,detail"
        assert "FAIL" not in text


class TestWalks:
    def test_table_contents(self, tmp_path):
        cfg = write(tmp_path, "[experiment]\nkind = walks\nseed = 0\nmax_m = 4\n")
        assert main(["walks", "--config", str(cfg), "--out", str(tmp_path)]) == 0
        lines = (tmp_path / "walks.csv").read_text().splitlines()
        assert lines[0] == "m,catalan,modified_catalan,recurrence,walks_two,walks_four"
        assert lines[1] == "1,1,1,1,1,1"
        assert lines[4] == "4,14,120,120,14,120"


class TestShift:
    def test_runs_and_writes_metadata(self, tmp_path):
        cfg = write(tmp_path, SHIFT_CONFIG)
        assert main(["shift", "--config", str(cfg), "--out", str(tmp_path)]) == 0
        lines = (tmp_path / "shift.csv").read_text().splitlines()
        assert lines[0].startswith("index,gamma,f1,")
        assert len(lines) == 13
        meta = json.loads((tmp_path / "shift.csv.meta.json").read_text())
        assert meta["seed"] == 42
        assert "kind = shift" in meta["config"]
        assert meta["symmetry_classes"] == {
            "ensemble_a": "real_symmetric",
            "ensemble_b": "real_symmetric",
        }

    def test_thread_count_does_not_change_bytes(self, tmp_path):
        cfg = write(tmp_path, SHIFT_CONFIG)
        out1 = tmp_path / "t1"
        out4 = tmp_path / "t4"
        assert main(["shift", "--config", str(cfg), "--out", str(out1), "--threads", "1"]) == 0
        assert main(["shift", "--config", str(cfg), "--out", str(out4), "--threads", "4"]) == 0
        assert (out1 / "shift.csv").read_bytes() == (out4 / "shift.csv").read_bytes()

    def test_seed_override_changes_output(self, tmp_path):
        cfg = write(tmp_path, SHIFT_CONFIG)
        a = tmp_path / "a"
        b = tmp_path / "b"
        assert main(["shift", "--config", str(cfg), "--out", str(a)]) == 0
        assert main(["shift", "--config", str(cfg), "--out", str(b), "--seed", "43"]) == 0
        assert (a / "shift.csv").read_bytes() != (b / "shift.csv").read_bytes()
        meta = json.loads((b / "shift.csv.meta.json").read_text())
        assert meta["seed"] == 43


class TestMoments:
    def test_z_score_reported(self, tmp_path):
        cfg = write(tmp_path, MOMENTS_CONFIG)
        assert main(["moments", "--config", str(cfg), "--out", str(tmp_path)]) == 0
        lines = (tmp_path / "moments.csv").read_text().splitlines()
        header = lines[0].split(",")
        row = dict(zip(header, lines[1].split(",")))
        assert row["n"] == "10"
        assert row["k"] == "4"
        # Target is 2 kappa0 (n^2 - n) with kappa0 = -3/4 for this pair.
        assert float(row["target"]) == pytest.approx(-135.0, rel=1e-12)
        assert abs(float(row["z_score"])) < 5.0

    def test_json_format(self, tmp_path):
        cfg = write(tmp_path, MOMENTS_CONFIG.replace("output = moments.csv",
                                                     "output = moments.json\nformat = json"))
        assert main(["moments", "--config", str(cfg), "--out", str(tmp_path)]) == 0
        payload = json.loads((tmp_path / "moments.json").read_text())
        assert payload[0]["n"] == 10


class TestFailures:
    def test_bad_config_exits_1(self, tmp_path, capsys):
        cfg = write(tmp_path, "[experiment]\nkind = shift\n")
        assert main(["shift", "--config", str(cfg), "--out", str(tmp_path)]) == 1
        assert "config error" in capsys.readouterr().err

    def test_kind_mismatch_exits_1(self, tmp_path, capsys):
        cfg = write(tmp_path, SHIFT_CONFIG)
        assert main(["delta", "--config", str(cfg), "--out", str(tmp_path)]) == 1
        assert "does not match" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        assert main(["shift", "--config", str(tmp_path / "nope.ini")]) == 1
        assert "cannot read config" in capsys.readouterr().err

    def test_config_required_for_experiments(self, capsys):
        assert main(["delta"]) == 1
        assert "requires --config" in capsys.readouterr().err

    def test_zero_gap_pair_exits_1(self, tmp_path, capsys):
        text = SHIFT_CONFIG.replace("laplace", "gaussian").replace(
            "0.7071067811865476", "1.0"
        )
        cfg = write(tmp_path, text)
        assert main(["shift", "--config", str(cfg), "--out", str(tmp_path)]) == 1
        assert "gap" in capsys.readouterr().err
