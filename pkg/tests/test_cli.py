import numpy as np
import pytest
from click.testing import CliRunner

from divopt.battery import fixture_path
from divopt.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def _fixture(name):
    return str(fixture_path(name))


def test_indicators_eval_maxmin(runner):
    result = runner.invoke(
        main,
        ["indicators", "eval", "--matrix", _fixture("two_columns.csv"), "--subset", "1,4", "--indicator", "maxmin"],
    )
    assert result.exit_code == 0
    assert result.output.strip() == "4"


def test_indicators_eval_sp_12_digits(runner):
    result = runner.invoke(
        main,
        ["indicators", "eval", "--matrix", _fixture("unit_square.csv"), "--indicator", "sp", "--theta", "1"],
    )
    assert result.exit_code == 0
    assert result.output.strip() == "2.0213498848"


def test_indicators_eval_rejects_singleton(runner):
    result = runner.invoke(
        main,
        ["indicators", "eval", "--matrix", _fixture("two_columns.csv"), "--subset", "2", "--indicator", "maxmin"],
    )
    assert result.exit_code != 0


def test_indicators_contrib_two_columns_all_zero(runner):
    result = runner.invoke(
        main,
        ["indicators", "contrib", "--matrix", _fixture("two_columns.csv"), "--indicator", "maxmin"],
    )
    assert result.exit_code == 0
    assert result.output.strip() == "0,0,0,0,0,0"


def test_select_brute(runner):
    result = runner.invoke(
        main,
        ["select", "--matrix", _fixture("two_columns.csv"), "--indicator", "maxmin", "-k", "2", "--method", "brute"],
    )
    assert result.exit_code == 0
    # The best 2-subset is the farthest pair {a, f} at sqrt(20).
    assert "subset: 0,5" in result.output
    assert "value: 4.472135955" in result.output


def test_clique_k5(runner):
    result = runner.invoke(main, ["clique", "--graph", _fixture("k5.graph"), "-k", "4"])
    assert result.exit_code == 0
    assert result.output.startswith("HasClique: 0,1,2,3")
    assert "energy: 6" in result.output


def test_clique_c5(runner):
    result = runner.invoke(main, ["clique", "--graph", _fixture("c5.graph"), "-k", "3"])
    assert result.exit_code == 0
    assert "NoClique" in result.output


def test_properties_table(runner, tmp_path):
    csv_path = tmp_path / "table.csv"
    result = runner.invoke(main, ["properties", "--table", "--csv", str(csv_path)])
    assert result.exit_code == 0
    assert "maxmin" in result.output
    assert "discrepancies" not in result.output  # --table emits the grid only
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0].startswith("indicator,")
    assert len(lines) == 4


def test_properties_reports_discrepancies_by_default(runner):
    result = runner.invoke(main, ["properties"])
    assert result.exit_code == 0
    assert "discrepancies: none" in result.output


def test_bench_efficient_set(runner, tmp_path):
    out = tmp_path / "eff.csv"
    result = runner.invoke(
        main, ["bench", "efficient-set", "--resolution", "30", "--out", str(out)]
    )
    assert result.exit_code == 0
    assert "members:" in result.output
    assert "connected components:" in result.output
    members = np.loadtxt(out, delimiter=",", ndmin=2)
    assert members.shape[1] == 2


def test_bench_ttest(runner, tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    a.write_text("\n".join(str(v) for v in [1.0, 2.0, 3.0]))
    b.write_text("\n".join(str(v) for v in [3.0, 4.0, 5.0]))
    result = runner.invoke(main, ["bench", "ttest", "--a", str(a), "--b", str(b)])
    assert result.exit_code == 0
    assert "t: -2.44948974278" in result.output  # -sqrt(6) to 12 digits
    assert "df: 4" in result.output


def test_bench_reproduce_tiny(runner, tmp_path):
    cfg = tmp_path / "noah.cfg"
    cfg.write_text("pop_size = 6\niteration_budget = 1\nnsga_generations = 2\n")
    out = tmp_path / "out"
    result = runner.invoke(
        main,
        [
            "bench", "reproduce", "--indicator", "maxmin", "-R", "2",
            "--config", str(cfg), "--out", str(out),
        ],
    )
    assert result.exit_code == 0
    assert (out / "maxmin" / "trace_1000.csv").exists()
    assert (out / "maxmin" / "stats.csv").exists()


def test_bench_modified_maxmin_tiny(runner):
    result = runner.invoke(
        main, ["bench", "modified-maxmin", "-R", "2", "--target", "1.0", "--gen-cap", "200"]
    )
    assert result.exit_code == 0
    assert "modified (prob=0.9)" in result.output
