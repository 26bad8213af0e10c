"""Renderer tests driven end-to-end by real sweep output.

The sweeps run through the primary package's command line; the renderer only
ever sees the CSV files, which is its whole interface.
"""

import csv
import subprocess
import sys

import pytest

from skirental_plots import FigureSpec, SchemaError, render
from skirental_plots.render import RESULTS_HEADER, main, read_results


def run_sweep(*argv):
    result = subprocess.run(
        [sys.executable, "-m", "skirental.cli", *argv],
        capture_output=True, text=True,
    )
    assert result.returncode == 0, result.stderr
    return result


@pytest.fixture(scope="module")
def cc_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("cc") / "cc.csv"
    run_sweep("sweep-cc", "--cc", "15:24", "--count", "400", "--seed", "21",
              "--out", str(path))
    return path


@pytest.fixture(scope="module")
def theta_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("theta") / "theta.csv"
    run_sweep("sweep-theta", "--thetas", "0,1/4,1/2,3/4,1",
              "--biases=-20:20:10", "--count", "300", "--seed", "21",
              "--noise", "0", "--out", str(path))
    return path


class TestRenderKinds:
    def test_cr_vs_cc(self, cc_csv, tmp_path):
        out = tmp_path / "cr.svg"
        render(FigureSpec(str(cc_csv), "cr_vs_cc", str(out)))
        assert out.exists() and out.stat().st_size > 0
        assert b"<svg" in out.read_bytes()[:300]

    def test_ratio_vs_bias(self, theta_csv, tmp_path):
        out = tmp_path / "bias.pdf"
        render(FigureSpec(str(theta_csv), "ratio_vs_bias", str(out)))
        assert out.exists() and out.stat().st_size > 0

    def test_bound_line_never_below_robust_curve(self, cc_csv):
        # the bound is tight: the curve may touch it at axis points where
        # the extremal instance is integral, but never crosses it
        rows = read_results(cc_csv)
        robust = [row for row in rows if row["algo"] == "rdtsr"]
        assert robust
        for row in robust:
            assert row["bound"] >= row["empirical_cr"]
        assert any(row["bound"] > row["empirical_cr"] for row in robust)

    def test_full_trust_curve_touches_one_at_zero_bias(self, theta_csv):
        rows = read_results(theta_csv)
        ftp = [
            row for row in rows
            if row["algo"] == "ladtsr(theta=0)[ftp]" and row["axis"] == 0
        ]
        assert len(ftp) == 1
        assert ftp[0]["avg_ratio"] == 1.0

    def test_cli_entry(self, cc_csv, tmp_path):
        out = tmp_path / "fig.svg"
        code = main(["--in", str(cc_csv), "--kind", "cr_vs_cc",
                     "--out", str(out)])
        assert code == 0
        assert out.exists()


class TestSchema:
    def test_header_only_renders_empty_axes_with_warning(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text(",".join(RESULTS_HEADER) + "\n", encoding="utf-8")
        out = tmp_path / "empty.svg"
        with pytest.warns(UserWarning):
            render(FigureSpec(str(path), "cr_vs_cc", str(out)))
        assert out.exists() and out.stat().st_size > 0

    def test_missing_column_named(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("axis,algo,count,skipped,empirical_cr,avg_ratio,bound\n",
                        encoding="utf-8")
        with pytest.raises(SchemaError) as err:
            read_results(path)
        assert "cum_norm_cost" in str(err.value)

    def test_reordered_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(
            ",".join(reversed(RESULTS_HEADER)) + "\n", encoding="utf-8"
        )
        with pytest.raises(SchemaError):
            read_results(path)

    def test_unknown_kind_rejected(self):
        with pytest.raises(SchemaError):
            FigureSpec("x.csv", "pie", "out.svg")

    def test_legend_values_match_csv(self, cc_csv, tmp_path):
        # the renderer is a pure view: plotted series equal the CSV columns
        rows = read_results(cc_csv)
        with open(cc_csv, newline="", encoding="utf-8") as fh:
            raw = list(csv.DictReader(fh))
        assert len(rows) == len(raw)
        for parsed, original in zip(rows, raw):
            assert parsed["empirical_cr"] == float(original["empirical_cr"])
