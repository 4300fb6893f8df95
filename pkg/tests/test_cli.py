import json
import subprocess
import sys
from pathlib import Path

import pytest

from lexseg.cli import main

FIXTURES = Path(__file__).parent / "fixtures"

GOLDEN = {
    "small_segment.json": ["analyze", "--n", "3", "--d", "3", "--u", "x1*x2*x3", "--v", "x2*x3^2", "--resolution"],
    "non_complete.json": ["analyze", "--n", "6", "--d", "4", "--u", "x1*x3^2*x5", "--v", "x2*x6^3"],
    "irregular_decomposition.json": ["analyze", "--n", "4", "--d", "3", "--u", "x1*x3^2", "--v", "x2*x4^2"],
    "five_generators.json": [
        "resolve", "--n", "3", "--gens", "x2^3,x1*x2^2,x1*x2*x3,x1*x3^2,x1^2*x2", "--verify"
    ],
}


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_output(name, capsys):
    code, out, _ = run(GOLDEN[name], capsys)
    assert code == 0
    assert out == (FIXTURES / name).read_text()


def test_output_is_deterministic(capsys):
    args = GOLDEN["irregular_decomposition.json"]
    assert run(args, capsys)[1] == run(args, capsys)[1]


def test_small_example_report(capsys):
    code, out, _ = run(GOLDEN["small_segment.json"][:-1] + ["--check-oracle"], capsys)
    r = json.loads(out)
    assert code == 0
    assert r["completely"] and r["linear_resolution"]
    assert r["case"]["linear_resolution"] == "completely-c"
    assert (r["depth"], r["dim"], r["projdim"]) == (0, 1, 3)
    assert all(r["oracle_agreement"].values())


def test_non_complete_report(capsys):
    r = json.loads(run(GOLDEN["non_complete.json"], capsys)[1])
    assert not r["completely"] and r["linear_resolution"]
    assert r["order_kind"] == "j-then-k" and r["linear_quotients"]["holds"]


def test_regularity_report(capsys):
    r = json.loads(run(GOLDEN["irregular_decomposition.json"], capsys)[1])
    w = r["regular_decomposition"]["witness"]
    assert r["regular_decomposition"]["holds"] is False
    assert (w["u"], w["s"], w["set_g"], w["set_u"]) == ("x1*x4^2", 2, [2, 3], [2])


def test_lex_order_failure_reported(capsys):
    code, out, _ = run(
        ["analyze", "--n", "3", "--d", "2", "--u", "x1*x3", "--v", "x2^2", "--check-oracle"], capsys
    )
    r = json.loads(out)
    assert code == 0
    assert not r["linear_resolution"] and not r["linear_quotients"]["holds"]
    assert r["betti"]["source"] == "oracle"


def test_meta_only_on_request(capsys):
    args = GOLDEN["irregular_decomposition.json"]
    assert "meta" not in json.loads(run(args, capsys)[1])
    assert "meta" in json.loads(run(args + ["--meta"], capsys)[1])


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["analyze", "--n", "3", "--d", "3", "--u", "x1*x2*x3"],
        ["analyze", "--n", "3", "--d", "3", "--u", "x1*x9", "--v", "x3^3"],
        ["analyze", "--n", "3", "--d", "3", "--u", "x2*x3^2", "--v", "x1*x2*x3"],
        ["analyze", "--n", "3", "--d", "3", "--u", "x1*x2", "--v", "x3^3"],
        ["resolve", "--gens", "x1,x2"],
        ["resolve", "--n", "2", "--gens", "x1,x1"],
        ["sweep", "--max-n", "2", "--max-d", "1"],
    ],
)
def test_usage_errors(args, capsys):
    code, _, err = run(args, capsys)
    assert code == 2
    assert err


def test_unsupported_construction(capsys):
    code, out, err = run(
        ["resolve", "--n", "6", "--d", "4", "--u", "x1*x3^2*x5", "--v", "x2*x6^3"], capsys
    )
    assert code == 4 and out == "" and "not completely" in err
    code, _, err = run(["resolve", "--n", "4", "--gens", "x2^3,x2^2*x3,x2^2*x4,x2*x3^2,x2*x3*x4,"
                        "x2*x4^2,x1*x4^2,x1*x3*x4,x1*x3^2"], capsys)
    assert code == 4 and "not regular" in err


def test_resolve_from_ends(capsys):
    code, out, _ = run(
        ["resolve", "--n", "3", "--d", "3", "--u", "x1*x2*x3", "--v", "x2*x3^2", "--verify"], capsys
    )
    r = json.loads(out)
    assert code == 0 and r["ranks"] == [1, 5, 5, 1]
    assert r["verification"]["exact"] and r["verification"]["max_check_degree"] == 8


def test_resolve_principal(capsys):
    code, out, _ = run(["resolve", "--n", "2", "--d", "2", "--u", "x1*x2", "--v", "x1*x2"], capsys)
    r = json.loads(out)
    assert code == 0 and r["ranks"] == [1, 1] and r["hilbert_numerator"] == [1, 0, -1]


def test_enumerate(capsys):
    base = ["enumerate", "--n", "3", "--d", "3", "--u", "x1*x2*x3", "--v", "x2*x3^2"]
    r = json.loads(run(base, capsys)[1])
    assert r["gens"] == ["x1*x2*x3", "x1*x3^2", "x2^3", "x2^2*x3", "x2*x3^2"]
    r = json.loads(run(base + ["--order", "auto"], capsys)[1])
    assert r["gens"][0] == "x2^3" and r["order"] == "prec"


def test_small_sweeps(capsys):
    code, out, _ = run(["sweep", "--max-n", "2", "--max-d", "3"], capsys)
    r = json.loads(out)
    assert code == 0 and r["ok"] and r["mismatches"] == {}
    assert r["per_shape"][0] == [1, 2, 1]


def test_sweep_with_worker_pool(capsys, monkeypatch):
    monkeypatch.setenv("LEXSEG_WORKERS", "2")
    code, out, _ = run(["sweep", "--max-n", "3", "--max-d", "2", "--min-n", "3"], capsys)
    assert code == 0 and json.loads(out)["instances"] == 21


def test_sweep_reports_mismatch(capsys, monkeypatch):
    import lexseg.sweep as sweep

    real = sweep.depth_case
    monkeypatch.setattr(sweep, "depth_case", lambda *a: (real(*a)[0] + 1, "broken"))
    code, out, err = run(["sweep", "--max-n", "2", "--max-d", "2"], capsys)
    r = json.loads(out)
    assert code == 3 and not r["ok"]
    assert r["minimal_failure"]["flags"] == "--n 1 --d 2 --u x1^2 --v x1^2"
    assert "lexseg analyze --n 1" in err


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "lexseg.cli", "enumerate", "--n", "2", "--d", "2",
         "--u", "x1^2", "--v", "x2^2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 3
