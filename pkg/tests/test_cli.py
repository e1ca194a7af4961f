import json

import pytest

from opair.cli import main


def write_pair(tmp_path, A, B, name="pair.json", **extra):
    path = tmp_path / name
    path.write_text(json.dumps({"n": len(A), "A": A, "B": B, **extra}))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_okubo_fixture(tmp_path, capsys):
    pair = write_pair(tmp_path, [[1, 0], [0, 0]], [[0, 1], [0, 0]])
    code, out, _ = run(["analyze", "--pair", pair], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == "opair-1"
    assert (doc["a"], doc["a0"], doc["classification"]) == (2, 2, "okubo")
    assert doc["hybrid"]["trivial"] is True
    assert list(doc)[:7] == ["schema", "n", "A", "B", "a", "a0", "classification"]


def test_analyze_identity_pair(tmp_path, capsys):
    pair = write_pair(tmp_path, [[1, 0], [0, 1]], [[1, 0], [0, 1]])
    code, out, _ = run(["analyze", "--pair", pair], capsys)
    doc = json.loads(out)
    assert (doc["a"], doc["a0"], doc["classification"]) == (4, 0, "zero_quotient")
    # the doubled algebra of gl2 with the commutator twice fails Jacobi
    assert doc["checks"]["double_jacobi"] == "fail"
    assert code == 1


def test_analyze_p1(tmp_path, capsys):
    pair = write_pair(tmp_path, [[1, 2], [3, 4]], [[5, 6], [7, 8]])
    code, out, _ = run(["analyze", "--pair", pair], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["a"] == 2
    assert doc["decomposition"] == {"dims": [2, 2, 2], "direct": False, "equals_gl2": False}


def test_analyze_rationals_and_out_file(tmp_path, capsys):
    pair = write_pair(tmp_path, [["1/2", 0], [0, "-3/4"]], [[0, 1], [1, 0]])
    out_path = tmp_path / "report.json"
    code, out, _ = run(["analyze", "--pair", pair, "--out", str(out_path)], capsys)
    assert code == 0 and out == ""
    doc = json.loads(out_path.read_text())
    assert doc["A"] == [["1/2", "0"], ["0", "-3/4"]]


def test_analyze_byte_identical(tmp_path, capsys):
    pair = write_pair(tmp_path, [[1, 2], [3, 4]], [[0, 1], [2, 5]])
    outs = [run(["analyze", "--pair", pair, "--seed", "3"], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]


@pytest.mark.parametrize(
    "doc",
    [
        {"A": [[1, "2/4"], [0, 1]], "B": [[1, 0], [0, 1]]},
        {"A": [[1, 0.5], [0, 1]], "B": [[1, 0], [0, 1]]},
        {"A": [[1, "1/0"], [0, 1]], "B": [[1, 0], [0, 1]]},
        {"A": [[1, 0], [0, 1]], "B": [[1]]},
        {"A": [[1, 0]], "B": [[1, 0]]},
        {"A": [[1, 0], [0, 1]]},
        {"n": 3, "A": [[1, 0], [0, 1]], "B": [[1, 0], [0, 1]]},
        {"A": [[True, 0], [0, 1]], "B": [[1, 0], [0, 1]]},
    ],
)
def test_analyze_malformed_input(tmp_path, capsys, doc):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["analyze", "--pair", str(path)], capsys)
    assert code == 2
    assert err.startswith("opair: error")


def test_analyze_unparseable_and_missing(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(["analyze", "--pair", str(path)], capsys)[0] == 2
    assert run(["analyze", "--pair", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run(["analyze"], capsys)[0] == 2
    assert run([], capsys)[0] == 2


def test_verify_unknown_suite(capsys):
    assert run(["verify", "--suite", "nope"], capsys)[0] == 2
    assert run(["verify", "--suite", "kernel", "--n", "0"], capsys)[0] == 2


def test_verify_kernel_n1(capsys):
    code, out, _ = run(["verify", "--suite", "kernel", "--n", "1", "--samples", "5", "--seed", "1"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["summary"]["kernel"] == {"passed": True, "checked": 15, "failures": 0}


def test_verify_diffop_emits_sign_verdict(capsys):
    code, out, _ = run(["verify", "--suite", "diffop"], capsys)
    doc = json.loads(out)
    assert code == 0
    names = [r["name"] for r in doc["suites"]["diffop"]["reports"]]
    assert "example2_signs" in names
    verdict = next(r for r in doc["suites"]["diffop"]["reports"] if r["name"] == "example2_signs")
    assert verdict["kind"] == "verdict" and not verdict["passed"]


def test_verify_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("OPAIR_SEED", "17")
    doc = json.loads(run(["verify", "--suite", "pair_axioms", "--n", "2", "--samples", "2"], capsys)[1])
    assert doc["seed"] == 17
    doc = json.loads(run(["verify", "--suite", "pair_axioms", "--n", "2", "--samples", "2", "--seed", "4"], capsys)[1])
    assert doc["seed"] == 4
    monkeypatch.setenv("OPAIR_SEED", "abc")
    assert run(["verify", "--suite", "pair_axioms", "--n", "2", "--samples", "2"], capsys)[0] == 2


def test_sweep_records_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run(["sweep", "--n", "2", "--count", "100", "--seed", "7", "--out", str(a)], capsys)[0] == 0
    assert run(["sweep", "--n", "2", "--count", "100", "--seed", "7", "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    lines = [json.loads(x) for x in a.read_text().splitlines()]
    records, summary = lines[:-1], lines[-1]
    assert [r["index"] for r in records] == list(range(100))
    assert all(r["a"] in (2, 4) and r["a0"] in (0, 1, 2) for r in records)
    assert summary["summary"] is True
    assert sum(d["count"] for d in summary["distribution"]) == 100


def test_sweep_n3_even_codim(capsys):
    code, out, _ = run(["sweep", "--n", "3", "--count", "50", "--seed", "2"], capsys)
    records = [json.loads(x) for x in out.splitlines()][:-1]
    assert code == 0
    assert all((9 - r["a"]) % 2 == 0 and r["omega"]["codim"] == 9 - r["a"] for r in records)


def test_sweep_errors(tmp_path, capsys):
    assert run(["sweep", "--count", "0"], capsys)[0] == 2
    assert run(["sweep", "--count", "1", "--out", str(tmp_path / "no" / "x.jsonl")], capsys)[0] == 2


def test_difftable(capsys):
    code, out, _ = run(["difftable", "--max", "2", "--degree", "12"], capsys)
    doc = json.loads(out)
    assert code == 0
    cells = {(c["m"], c["n"]): c for c in doc["cells"]}
    assert cells[(1, 0)]["x"] == {"2": "-1"}
    assert all(cells[(m, m)]["x"] == {} and cells[(m, m)]["d"] == {} for m in range(3))
    assert all((not c["x"]) == ((m + n) % 2 == 0) for (m, n), c in cells.items())
    assert run(["difftable", "--max", "2", "--degree", "5"], capsys)[0] == 2


def test_internal_error_exit_code(monkeypatch, capsys):
    import opair.analysis

    def boom(*a, **k):
        raise RuntimeError("boom")

    monkeypatch.setattr(opair.analysis, "run_suite", boom)
    assert run(["verify", "--suite", "kernel"], capsys)[0] == 3
