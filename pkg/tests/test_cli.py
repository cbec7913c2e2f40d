import csv
import io
import json
import subprocess
import sys

import pytest

from picod.cli import main
from picod.instance import complete_two_uniform, save


@pytest.fixture
def files(tmp_path):
    def write(name, inst):
        p = tmp_path / name
        save(inst, p)
        return str(p)

    return tmp_path, write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_example(tmp_path, capsys):
    out_path = tmp_path / "ex2.json"
    code, _, err = run(["gen", "--example", "ex2", "--out", str(out_path)], capsys)
    assert code == 0
    assert json.loads(err) == {"source": "example:ex2"}
    assert json.loads(out_path.read_text())["m"] == 8


def test_gen_random_deterministic(capsys):
    argv = ["gen", "--m", "6", "--n", "5", "--min-size", "2", "--max-size", "3", "--seed", "9"]
    a = run(argv, capsys)[1]
    b = run(argv, capsys)[1]
    assert a == b and json.loads(a)["m"] == 6


def test_gen_random_reports_seed(capsys):
    code, _, err = run(["gen", "--m", "4", "--n", "2", "--min-size", "1", "--max-size", "2"], capsys)
    assert code == 0 and isinstance(json.loads(err)["seed"], int)


def test_gen_missing_args(capsys):
    code, _, err = run(["gen", "--m", "4"], capsys)
    assert code == 2 and "--n" in err


def test_stats_complete(files, capsys):
    _, write = files
    code, out, _ = run(["stats", write("k5.json", complete_two_uniform(5))], capsys)
    data = json.loads(out)
    assert code == 0 and data["gamma"] == 6 and data["edge_size_histogram"] == {"2": 10}
    assert data["kappa"] is not None and data["buckets"]


def test_stats_small_gamma(files, capsys, pent):
    _, write = files
    data = json.loads(run(["stats", write("p.json", pent)], capsys)[1])
    assert data["gamma"] == 2 and data["buckets"] is None


@pytest.mark.parametrize("strategy", ["indicator", "mds", "log2-collection", "binary"])
def test_build_code_then_verify(files, capsys, strategy):
    tmp, write = files
    inst = write("k4.json", complete_two_uniform(4))
    mat = tmp / f"{strategy}.json"
    code, out, _ = run(["build-code", inst, "--strategy", strategy, "--seed", "1", "--out", str(mat)], capsys)
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run(["verify", str(mat), inst], capsys)
    assert code == 0 and json.loads(out)["satisfied"] == 6
    code, out, _ = run(["decode-demo", str(mat), inst, "--seed", "3", "--trials", "4"], capsys)
    data = json.loads(out)
    assert code == 0 and data["round_trips"] == data["expected"] == 24


def test_build_code_ex2_matrix(files, capsys, ex2):
    tmp, write = files
    code, out, _ = run(["build-code", write("ex2.json", ex2), "--strategy", "indicator"], capsys)
    assert code == 0
    assert json.loads(out)["entries"] == [[1, 1, 1, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1, 1, 1]]


def test_build_code_kfold(files, capsys, pent):
    _, write = files
    code, out, _ = run(["build-code", write("p.json", pent), "--k", "2"], capsys)
    data = json.loads(out)
    assert code == 0 and data["k"] == 2 and data["rows"] == 5


def test_build_code_coloring_file(files, capsys, pent):
    tmp, write = files
    inst = write("p.json", pent)
    col = tmp / "c.json"
    col.write_text(json.dumps({"k": 1, "L": 1, "assign": [[0]] * 5}))
    code, _, err = run(["build-code", inst, "--coloring-file", str(col)], capsys)
    assert code == 1 and json.loads(err)["failing"] == [0, 1, 2, 3, 4]


def test_build_code_binary_not_cf(files, capsys):
    from picod.instance import PicodInstance

    _, write = files
    inst = write("x.json", PicodInstance(4, [[0, 1, 2, 3]]))
    code, _, err = run(["build-code", inst, "--strategy", "binary"], capsys)
    assert code == 2 and "binary" in err


def test_verify_failing_matrix(files, capsys, pent):
    tmp, write = files
    mat = tmp / "zero.json"
    mat.write_text(json.dumps({"q": 2, "k": 1, "rows": 1, "entries": [[0, 0, 0, 0, 0]]}))
    code, out, _ = run(["verify", str(mat), write("p.json", pent)], capsys)
    assert code == 1 and json.loads(out)["failing"] == [0, 1, 2, 3, 4]


def test_bad_instance_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"m": 3, "edges": [[]]}')
    code, _, err = run(["stats", str(p)], capsys)
    assert code == 2 and "empty edge at index 0" in err


def test_missing_file_exit_2(capsys):
    assert run(["stats", "/nonexistent.json"], capsys)[0] == 2


def test_oracle_ok(files, capsys, k4):
    _, write = files
    code, out, _ = run(["oracle", write("k4.json", k4)], capsys)
    data = json.loads(out)
    assert code == 0 and data["l_star"] == 2 and data["chain_ok"]


def test_oracle_budget_exit_3(files, capsys):
    _, write = files
    code, out, _ = run(["oracle", write("k5.json", complete_two_uniform(5)), "--budget-chi", "3"], capsys)
    assert code == 3 and not json.loads(out)["complete"]


def test_bench_small(capsys):
    code, out, err = run(["bench", "--gammas", "8", "--seeds", "2", "--seed", "0", "--m", "24"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["gamma", "total_colors", "seed", "attempts", "strategy"]
    assert len(rows) == 3
    assert "8" in json.loads(err)["median_total_colors"]


def test_console_module_entry(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "picod.cli", "gen", "--example", "pentagon"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0 and json.loads(res.stdout)["m"] == 5
