import csv
import json

import pytest

from blochdim.cli import main, serialize_record
from blochdim.experiments import ExperimentRecord, run_bloch_coverage


def read_csv(path):
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    return rows[0], rows[1:]


class TestSerializeRecord:
    def make_record(self, rows=()):
        return ExperimentRecord(
            experiment="demo",
            seed=1,
            parameters={"alpha": 2},
            columns=("name", "value"),
            rows=tuple(rows),
            metadata={"build": "test", "created_at": "2026-01-01T00:00:00+00:00"},
        )

    def test_empty_record_header_only(self):
        data = serialize_record(self.make_record(), "csv")
        assert data == b"name,value\r\n"

    def test_same_record_identical_bytes(self):
        record = self.make_record([("x", 1.5)])
        assert serialize_record(record, "csv") == serialize_record(record, "csv")
        assert serialize_record(record, "json") == serialize_record(record, "json")

    def test_float_round_trip(self):
        record = self.make_record([("norm", 1.0), ("third", 1.0 / 3.0)])
        header, rows = None, None
        text = serialize_record(record, "csv").decode()
        lines = text.strip().split("\r\n")
        assert float(lines[1].split(",")[1]) == 1.0
        assert float(lines[2].split(",")[1]) == 1.0 / 3.0

    def test_json_key_order_and_timestamp_excluded(self):
        payload = json.loads(serialize_record(self.make_record(), "json"))
        assert list(payload) == ["experiment", "seed", "parameters", "columns", "rows", "metadata"]
        assert "created_at" not in payload["metadata"]

    def test_rejects_unknown_format(self):
        with pytest.raises(ValueError):
            serialize_record(self.make_record(), "xml")


class TestBlochCoverageCommand:
    def test_writes_csv_and_meta(self, tmp_path):
        out = tmp_path / "out"
        code = main(
            ["bloch-coverage", "--n-states", "200", "--seed", "42", "--out-dir", str(out)]
        )
        assert code == 0
        header, rows = read_csv(out / "bloch_coverage.csv")
        assert header == ["kind", "n_x", "n_y", "n_z", "norm", "purity"]
        assert len(rows) == 200
        pure_norms = [float(r[4]) for r in rows if r[0] == "pure"]
        assert pure_norms and all(abs(x - 1.0) < 1e-12 for x in pure_norms)
        meta = json.loads((out / "meta.json").read_text())
        assert meta["command"] == "bloch-coverage"
        assert meta["seed"] == 42
        assert meta["parameters"]["n_states"] == 200

    def test_byte_identical_across_runs(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["bloch-coverage", "--n-states", "60", "--seed", "7", "--out-dir", str(out1)]) == 0
        assert main(["bloch-coverage", "--n-states", "60", "--seed", "7", "--out-dir", str(out2)]) == 0
        first = (out1 / "bloch_coverage.csv").read_bytes()
        second = (out2 / "bloch_coverage.csv").read_bytes()
        assert first == second

    def test_json_format(self, tmp_path):
        out = tmp_path / "json_out"
        assert main(
            ["bloch-coverage", "--n-states", "10", "--seed", "1", "--format", "json", "--out-dir", str(out)]
        ) == 0
        payload = json.loads((out / "bloch_coverage.json").read_text())
        assert len(payload["rows"]) == 10

    def test_matches_library_rows(self, tmp_path):
        out = tmp_path / "lib"
        main(["bloch-coverage", "--n-states", "25", "--seed", "3", "--out-dir", str(out)])
        _, rows = read_csv(out / "bloch_coverage.csv")
        record = run_bloch_coverage(n_states=25, seed=3)
        for parsed, expected in zip(rows, record.rows):
            assert parsed[0] == expected[0]
            assert float(parsed[4]) == expected[4]  # 17g round-trips exactly


class TestSaturationCommand:
    def test_rank_column_all_three(self, tmp_path):
        out = tmp_path / "sat"
        code = main(
            ["saturation", "--valences", "4,6", "--trials", "5", "--seed", "7", "--out-dir", str(out)]
        )
        assert code == 0
        header, rows = read_csv(out / "saturation.csv")
        assert header == ["k", "trial", "ambient_rank", "counterfactual_rank"]
        assert all(int(r[2]) == 3 for r in rows)
        assert all(int(r[3]) == 3 * int(r[0]) for r in rows)
        for k in (4, 6):
            _, vec_rows = read_csv(out / f"vectors_k{k}.csv")
            assert len(vec_rows) == k

    def test_graph_spec_flag(self, tmp_path):
        out = tmp_path / "graph"
        code = main(
            [
                "saturation",
                "--graph",
                "kind=star,k=5",
                "--trials",
                "3",
                "--seed",
                "1",
                "--out-dir",
                str(out),
            ]
        )
        assert code == 0
        _, rows = read_csv(out / "saturation.csv")
        assert all(int(r[0]) == 5 for r in rows)
        assert all(int(r[2]) == 3 for r in rows)
        _, vec_rows = read_csv(out / "vectors_k5.csv")
        assert len(vec_rows) == 5


class TestCheckCommands:
    def test_invariant_dim(self, tmp_path):
        out = tmp_path / "inv"
        code = main(["invariant-dim", "--k", "1,2,3,4", "--out-dir", str(out)])
        assert code == 0
        _, rows = read_csv(out / "invariant_dim.csv")
        got = {int(r[0]): int(r[2]) for r in rows}
        assert got == {1: 0, 2: 1, 3: 0, 4: 2}

    def test_sun_scan(self, tmp_path):
        out = tmp_path / "scan"
        code = main(["sun-scan", "--n", "2,3", "--seed", "5", "--out-dir", str(out)])
        assert code == 0
        _, rows = read_csv(out / "sun_scan.csv")
        parsed = {int(r[0]): r for r in rows}
        assert parsed[2][5] == "true"
        assert parsed[3][5] == "false"
        assert int(parsed[3][1]) == 8

    def test_covering_check(self, tmp_path):
        out = tmp_path / "cover"
        code = main(["covering-check", "--samples", "25", "--seed", "2", "--out-dir", str(out)])
        assert code == 0
        _, rows = read_csv(out / "covering_check.csv")
        assert len(rows) == 25
        assert all(float(r[3]) < 1e-12 for r in rows)

    def test_killing_form(self, tmp_path):
        out = tmp_path / "killing"
        code = main(["killing-form", "--n", "2", "--out-dir", str(out)])
        assert code == 0
        _, rows = read_csv(out / "killing_form.csv")
        diag = {(int(r[0]), int(r[1])): float(r[2]) for r in rows}
        for i in range(3):
            assert diag[(i, i)] == pytest.approx(-8.0, abs=1e-12)
        assert diag[(0, 1)] == pytest.approx(0.0, abs=1e-12)

    def test_verify_passes(self, tmp_path, capsys):
        out = tmp_path / "verify"
        code = main(["verify", "--seed", "1", "--out-dir", str(out)])
        assert code == 0
        printed = capsys.readouterr().out
        assert "FAIL" not in printed
        _, rows = read_csv(out / "verify.csv")
        assert all(r[3] == "true" for r in rows)


class TestCliContract:
    def test_version(self, capsys):
        assert main(["version"]) == 0
        assert "blochdim" in capsys.readouterr().out

    def test_unknown_command_exits_2(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_unknown_flag_exits_2(self, capsys):
        assert main(["bloch-coverage", "--bogus", "1"]) == 2

    def test_help_exits_0(self, capsys):
        assert main(["--help"]) == 0

    def test_unwritable_out_dir_exits_2(self, tmp_path, capsys):
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        code = main(
            ["bloch-coverage", "--n-states", "5", "--out-dir", str(blocker / "sub")]
        )
        assert code == 2
        assert "error" in capsys.readouterr().err
