import csv
import io

import pytest

from minmaxfine.bench import COLUMNS, BenchConfig, run_bench, run_cell
from minmaxfine.cli import main, parse_size
from minmaxfine.errors import ConfigurationError
from minmaxfine.instrumentation import op_bound


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def usage_error(*argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv), io.StringIO())
    return exc.value.code


class TestModel:
    def test_h1(self):
        code, text = run("model", "--h", "1", "--parity", "min")
        assert code == 0
        assert "bound=8 " in text and "n=7 " in text and "ratio=1.1429" in text

    def test_h15_ratio(self):
        _, text = run("model", "--h", "15")
        ratio = float(text.split("ratio=")[1])
        assert 1.973 <= ratio <= 1.993

    def test_h0(self):
        assert "bound=0 " in run("model", "--h", "0")[1]

    @pytest.mark.parametrize("argv", [["--h", "31"], ["--h", "-1"], ["--h", "0", "--parity", "max"]])
    def test_out_of_range(self, argv):
        assert usage_error("model", *argv) == 2


class TestTrace:
    def test_single_insert(self, tmp_path):
        p = tmp_path / "t.txt"
        p.write_text("I 5\n")
        code, text = run("trace", str(p))
        assert code == 0
        assert text.count("digraph") == 1
        assert 'n1 [label="5|1"]' in text and "->" not in text

    def test_frontier_highlight(self, tmp_path):
        p = tmp_path / "t.txt"
        p.write_text("I 1\nI 10\nI 2\nI 3\nI 4\nDM\n")
        _, text = run("trace", str(p))
        last = text.split("digraph")[-1]
        highlighted = [line for line in last.splitlines() if "color=red" in line]
        assert highlighted == ["  n1 -> n3 [color=red, penwidth=2, constraint=false];"]
        assert 'n1 [label="2|' in last

    def test_empty(self, tmp_path):
        p = tmp_path / "t.txt"
        p.write_text("")
        assert run("trace", str(p)) == (0, "")

    def test_parse_error(self, tmp_path, capsys):
        p = tmp_path / "t.txt"
        p.write_text("I 1\nPUSH 2\n")
        assert usage_error("trace", str(p)) == 2
        assert "line 2" in capsys.readouterr().err

    def test_delete_on_empty(self, tmp_path):
        p = tmp_path / "t.txt"
        p.write_text("DX\n")
        code, text = run("trace", str(p))
        assert code == 0 and "empty" in text


class TestVerify:
    def test_clean(self):
        code, text = run("verify", "--nmax", "4", "--length", "3000", "--seeds", "3")
        assert code == 0
        assert text.count("clean") == 3

    def test_nmax_zero(self):
        assert run("verify", "--nmax", "0", "--length", "0")[0] == 0

    def test_injected_bug(self):
        code, text = run("verify", "--nmax", "0", "--length", "3000", "--structures", "fine", "--no-frontier")
        assert code == 1
        assert "step " in text

    def test_negative_args(self):
        assert usage_error("verify", "--nmax", "-1") == 2


class TestBench:
    def test_csv_shape_and_bounds(self, tmp_path):
        out = tmp_path / "b.csv"
        code, _ = run("bench", "--sizes", "63,100", "--trials", "3", "--output", str(out), "--ops", "insert,delete_min")
        assert code == 0
        rows = list(csv.reader(out.open()))
        assert tuple(rows[0]) == COLUMNS
        for r in rows[1:]:
            rec = dict(zip(COLUMNS, r))
            assert rec["comparisons_mean"].count(".") == 1 and len(rec["comparisons_mean"].split(".")[1]) == 3
            if rec["structure"] == "fine":
                assert int(rec["bound"]) == op_bound(rec["op"], int(rec["n"]))
                assert (rec["bound_exceeded"] == "true") == (int(rec["comparisons_max"]) > int(rec["bound"]))
            else:
                assert rec["bound"] == "" and rec["bound_exceeded"] == "false"

    def test_deterministic(self):
        argv = ["bench", "--sizes", "200", "--trials", "4", "--seed", "9"]
        assert run(*argv)[1] == run(*argv)[1]

    def test_exceeded_bound_sets_exit_code(self):
        # creation at small sizes runs above the model's count
        code, text = run("bench", "--sizes", "7", "--trials", "50", "--structures", "fine", "--ops", "create")
        assert "true" in text and code == 1

    def test_table_and_plot(self, tmp_path):
        dat = tmp_path / "p.dat"
        code, text = run("bench", "--sizes", "31,63", "--trials", "2", "--format", "table", "--ops", "insert",
                         "--plot-data", str(dat))
        assert code == 0 and text.splitlines()[0].split() == list(COLUMNS)
        blocks = [b for b in dat.read_text().split("\n\n\n") if b.strip()]
        assert len(blocks) == 3 and blocks[0].startswith("# fine insert")

    @pytest.mark.parametrize(
        "argv",
        [
            ["--sizes", "0"],
            ["--sizes", "abc"],
            ["--trials", "0"],
            ["--structures", "treap"],
            ["--ops", "merge"],
            ["--format", "xml"],
            ["--structures", "binheap", "--ops", "delete_max"],
        ],
    )
    def test_usage_errors(self, argv):
        assert usage_error("bench", *argv) == 2

    def test_binheap_delete_max_cell_skipped(self):
        rows = run_bench(BenchConfig([31], 2, 1, ["binheap"], ["delete_min", "delete_max"]))
        assert [r.op for r in rows] == ["delete_min"]

    def test_run_cell_unsupported(self):
        with pytest.raises(ConfigurationError):
            run_cell("binheap", "delete_max", 10, 1, 1)

    def test_trials_do_not_leak_between_cells(self):
        a = run_bench(BenchConfig([100], 20, 3, ["fine"], ["delete_min"]))
        b = run_bench(BenchConfig([100], 20, 3, ["fine"], ["insert", "delete_min"]))
        assert a[0] == b[1]


@pytest.mark.parametrize("text,n", [("100", 100), ("2^20", 2**20), ("2**15-1", 2**15 - 1), ("2^4+3", 19)])
def test_parse_size(text, n):
    assert parse_size(text) == n
