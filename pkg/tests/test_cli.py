"""Command-line front end: plans, file transforms, campaigns, benchmarks."""

import csv
import io
import json

import numpy as np
import pytest

from fftshield.cli import main
from fftshield.signal_io import read_signals, write_signals

from conftest import random_batch, rel_l2


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPlan:
    def test_two_stage_json(self, capsys):
        code, out, _ = run_cli(capsys, "plan", "--n", "131072")
        assert code == 0
        doc = json.loads(out)
        assert [s["dim"] for s in doc["stages"]] == [256, 512]

    def test_single_stage_radix8(self, capsys):
        code, out, _ = run_cli(capsys, "plan", "--n", "1024")
        doc = json.loads(out)
        assert code == 0
        assert doc["stages"] == [{"dim": 1024, "radix": 8}]

    def test_non_power_of_two_rejected(self, capsys):
        code, _, err = run_cli(capsys, "plan", "--n", "1000")
        assert code == 1
        assert "size must be a power of two" in err

    def test_deterministic_bytes(self, capsys):
        _, a, _ = run_cli(capsys, "plan", "--n", "65536", "--ft-mode", "two_sided")
        _, b, _ = run_cli(capsys, "plan", "--n", "65536", "--ft-mode", "two_sided")
        assert a.encode() == b.encode()


class TestTransform:
    def test_delta_file(self, capsys, tmp_path):
        src = tmp_path / "in.bin"
        dst = tmp_path / "out.bin"
        data = np.zeros((3, 4), dtype=np.complex64)
        data[:, 0] = 1.0
        write_signals(src, data, "fp32")
        code, _, _ = run_cli(
            capsys, "transform", "--input", str(src), "--output", str(dst),
            "--n", "4", "--precision", "fp32",
        )
        assert code == 0
        out = read_signals(dst, 4, "fp32")
        np.testing.assert_allclose(out, np.ones((3, 4)), atol=1e-6)

    def test_file_round_trip(self, capsys, tmp_path, rng):
        src = tmp_path / "x.bin"
        mid = tmp_path / "y.bin"
        back = tmp_path / "z.bin"
        data = random_batch(rng, (2, 256), np.complex128)
        write_signals(src, data, "fp64")
        args = ["--n", "256", "--precision", "fp64", "--scheme", "two_sided_group"]
        assert main(["transform", "--input", str(src), "--output", str(mid)] + args) == 0
        assert main(["transform", "--input", str(mid), "--output", str(back),
                     "--inverse"] + args) == 0
        capsys.readouterr()
        assert rel_l2(read_signals(back, 256, "fp64"), data) <= 1e-10

    def test_truncated_file(self, capsys, tmp_path):
        src = tmp_path / "short.bin"
        src.write_bytes(b"\x00" * 12)
        code, _, err = run_cli(
            capsys, "transform", "--input", str(src), "--output",
            str(tmp_path / "o.bin"), "--n", "4",
        )
        assert code == 1
        assert "input length mismatch" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "transform", "--input", str(tmp_path / "nope.bin"),
            "--output", str(tmp_path / "o.bin"), "--n", "4",
        )
        assert code == 1
        assert err.startswith("error:")


class TestInject:
    ARGS = ("inject", "--runs", "30", "--inject-fraction", "0.5",
            "--n", "64", "--batch", "4", "--seed", "7")

    def test_outputs_and_injected_count(self, capsys, tmp_path):
        roc = tmp_path / "roc.csv"
        rec = tmp_path / "records.csv"
        code, out, _ = run_cli(
            capsys, *self.ARGS, "--roc-out", str(roc), "--records-out", str(rec),
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["injected"] == 15
        rows = list(csv.DictReader(io.StringIO(rec.read_text())))
        assert sum(int(r["injected"]) for r in rows) == 15

    def test_determinism(self, capsys, tmp_path):
        paths = []
        for tag in ("a", "b"):
            roc = tmp_path / f"roc-{tag}.csv"
            rec = tmp_path / f"rec-{tag}.csv"
            run_cli(capsys, *self.ARGS, "--roc-out", str(roc),
                    "--records-out", str(rec))
            paths.append((roc.read_bytes(), rec.read_bytes()))
        assert paths[0] == paths[1]

    def test_single_delta_grid(self, capsys, tmp_path):
        roc = tmp_path / "roc.csv"
        run_cli(capsys, *self.ARGS, "--delta-grid", "0.001",
                "--roc-out", str(roc), "--records-out", str(tmp_path / "r.csv"))
        rows = list(csv.DictReader(io.StringIO(roc.read_text())))
        assert len(rows) == 1


class TestBench:
    def test_fusion_and_recompute_columns(self, capsys, tmp_path):
        out_path = tmp_path / "bench.csv"
        code, _, _ = run_cli(
            capsys, "bench", "--n-list", "256", "--batch-list", "4",
            "--schemes", "none", "two_sided_group", "one_sided",
            "--trials", "3", "--inject", "--out", str(out_path),
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out_path.read_text())))
        by_scheme = {r["scheme"]: r for r in rows if r["backend"] == rows[0]["backend"]}
        assert by_scheme["none"]["pass_count"] == by_scheme["two_sided_group"]["pass_count"]
        assert int(by_scheme["one_sided"]["recompute_count"]) > 0
        assert all(r["trials"] == "3" for r in rows)

    def test_default_trials_is_ten(self, capsys):
        code, out, _ = run_cli(
            capsys, "bench", "--n-list", "64", "--batch-list", "2",
            "--schemes", "none",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows and all(r["trials"] == "10" for r in rows)


class TestPropagate:
    def test_footprint_json(self, capsys):
        code, out, _ = run_cli(capsys, "propagate", "--n", "8", "--stage", "0")
        assert code == 0
        doc = json.loads(out)
        assert doc["corrupted_outputs"] == 8

    def test_final_stage(self, capsys):
        _, out, _ = run_cli(capsys, "propagate", "--n", "8", "--stage", "3")
        assert json.loads(out)["corrupted_outputs"] == 1
