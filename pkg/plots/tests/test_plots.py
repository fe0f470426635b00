import csv
from pathlib import Path

import pytest

from blochdim_plots.cli import main
from blochdim_plots.figures import (
    FigureSpec,
    MissingInputError,
    SchemaError,
    plot_coverage,
    plot_saturation,
)

DATA = Path(__file__).parent / "data"


def csv_row_count(path):
    with open(path, newline="") as handle:
        return len(list(csv.reader(handle))) - 1


class TestCoverage:
    def test_renders_golden_csv(self, tmp_path):
        out = tmp_path / "fig1.png"
        spec = FigureSpec("coverage", (str(DATA / "bloch_coverage.csv"),), str(out))
        result = plot_coverage(spec)
        assert out.exists() and out.stat().st_size > 0
        assert result.panels == 2
        assert result.points_per_panel[0] == csv_row_count(DATA / "bloch_coverage.csv")

    def test_missing_input_names_generator_command(self, tmp_path):
        spec = FigureSpec("coverage", (str(tmp_path / "nope.csv"),), str(tmp_path / "f.png"))
        with pytest.raises(MissingInputError, match="blochdim bloch-coverage"):
            plot_coverage(spec)

    def test_schema_mismatch_lists_missing_columns(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("kind,n_x,n_y\npure,0,0\n")
        out = tmp_path / "f.png"
        with pytest.raises(SchemaError, match="n_z"):
            plot_coverage(FigureSpec("coverage", (str(bad),), str(out)))
        assert not out.exists()

    def test_empty_csv_rejected_without_output(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("kind,n_x,n_y,n_z,norm,purity\n")
        out = tmp_path / "f.png"
        with pytest.raises(SchemaError, match="no data rows"):
            plot_coverage(FigureSpec("coverage", (str(empty),), str(out)))
        assert not out.exists()

    def test_deterministic_bytes(self, tmp_path):
        spec_a = FigureSpec("coverage", (str(DATA / "bloch_coverage.csv"),), str(tmp_path / "a.png"))
        spec_b = FigureSpec("coverage", (str(DATA / "bloch_coverage.csv"),), str(tmp_path / "b.png"))
        plot_coverage(spec_a)
        plot_coverage(spec_b)
        assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()


class TestSaturation:
    def test_panel_per_valence(self, tmp_path):
        inputs = tuple(str(DATA / f"vectors_k{k}.csv") for k in (4, 6, 8, 10))
        out = tmp_path / "fig2.png"
        result = plot_saturation(FigureSpec("saturation", inputs, str(out)))
        assert out.exists() and out.stat().st_size > 0
        assert result.panels == 4
        assert result.points_per_panel == (4, 6, 8, 10)

    def test_single_valence(self, tmp_path):
        out = tmp_path / "single.png"
        result = plot_saturation(
            FigureSpec("saturation", (str(DATA / "vectors_k4.csv"),), str(out))
        )
        assert result.panels == 1
        assert result.points_per_panel == (4,)

    def test_missing_valence_file(self, tmp_path):
        inputs = (str(DATA / "vectors_k4.csv"), str(tmp_path / "vectors_k8.csv"))
        with pytest.raises(MissingInputError, match="blochdim saturation"):
            plot_saturation(FigureSpec("saturation", inputs, str(tmp_path / "f.png")))


class TestCli:
    def test_coverage_command(self, tmp_path):
        out = tmp_path / "fig1.png"
        code = main(["coverage", "--csv", str(DATA / "bloch_coverage.csv"), "--out", str(out)])
        assert code == 0
        assert out.exists()

    def test_saturation_command(self, tmp_path):
        out = tmp_path / "fig2.png"
        code = main(
            ["saturation", "--vectors"]
            + [str(DATA / f"vectors_k{k}.csv") for k in (4, 6)]
            + ["--out", str(out)]
        )
        assert code == 0
        assert out.exists()

    def test_missing_input_exits_2(self, tmp_path, capsys):
        code = main(["coverage", "--csv", str(tmp_path / "no.csv"), "--out", str(tmp_path / "f.png")])
        assert code == 2
        assert "bloch-coverage" in capsys.readouterr().err

    def test_usage_error_exits_2(self):
        assert main(["coverage"]) == 2
