import csv
import io
import json
import subprocess
import sys

import pytest

from padicfactor.cli import main, verify
from padicfactor.testpolys import FamilySpec, gen_family


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_factor_text(capsys):
    code, out, _ = run(capsys, "factor", "5,0,1", "-p", "5", "-n", "10")
    assert code == 0
    assert "factor 1: degree 2" in out and "  5,0,1\n" in out
    assert "product check: ok" in out


def test_factor_expression_input(capsys):
    code, out, _ = run(capsys, "factor", "x^2 + p", "-p", "5", "-n", "10", "--json")
    assert code == 0
    assert json.loads(out)["factors"][0]["factor"] == ["5", "0", "1"]


def test_factor_json_family(capsys):
    code, out, _ = run(capsys, "factor", "--family", "B", "--params", "p=7,k=5", "-n", "50", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["schema"] == "padicfactor/1" and d["command"] == "factor"
    assert [x["degree"] for x in d["factors"]] == [3, 3]
    assert d["product_ok"] is True
    f = gen_family(FamilySpec.make("B", p=7, k=5))
    assert verify(f, [[int(c) for c in x["factor"]] for x in d["factors"]], 7, 50)


def test_factor_is_deterministic(capsys):
    argv = ("factor", "--family", "E", "--params", "p=5,j=4", "-n", "30", "--json", "--seed", "3")
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]
    d = json.loads(first)
    assert d["factors"][0]["depth"] == 4


def test_trace_goes_to_stderr(capsys):
    code, out, err = run(capsys, "factor", "--family", "B", "--params", "p=7,k=2", "-n", "40", "--trace")
    assert code == 0 and "lift pass 1" in err and "lift pass" not in out


def test_invariants_with_expected_row(capsys):
    code, out, _ = run(capsys, "invariants", "--family", "A", "--params", "p=5,n=3,k=7,r=1", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["factors"][0]["index"] == d["expected"]["ind_p"] == 6
    code, out, _ = run(capsys, "invariants", "--family", "A", "--params", "p=5,n=3,k=7,r=1")
    assert "depth 1, width (3)" in out


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "--family", "A", "--params", "p=5,n=2,k=3,r=0")
    assert (code, out) == (0, "126,2,1\n")
    code, out, _ = run(capsys, "gen", "--family", "B", "--params", "p=7,k=2", "--json")
    assert json.loads(out)["expected"]["n_factors"] == 2
    with pytest.raises(SystemExit) as exc:
        main(["gen"])
    assert exc.value.code == 2


def test_verify(capsys):
    assert run(capsys, "verify", "5,0,1", "-p", "5", "--factor", "5,0,1")[0] == 0
    code, out, _ = run(capsys, "verify", "5,0,1", "-p", "5", "--factor", "6,0,1")
    assert (code, out) == (1, "mismatch\n")
    # x^2 - 3x + 2 = (x - 1)(x - 2), also modulo 7^5 after the lift
    assert run(capsys, "verify", "2,-3,1", "-p", "7", "-n", "5", "--factor=-1,1",
               "--factor=-2,1")[0] == 0


@pytest.mark.parametrize("argv,code", [
    (("factor", "5,0,1"), 2),                      # missing prime
    (("factor", "5,0,1", "-p", "4"), 2),           # not prime
    (("factor", "--family", "B", "--params", "p=5,k=2"), 2),
    (("factor", "--family", "B", "--params", "p=7,k=2", "-p", "13"), 2),
    (("factor", "x^y", "-p", "5"), 2),
    (("factor", "", "-p", "5"), 2),
    (("factor", "5,0,2", "-p", "5"), 3),           # not monic
    (("factor", "1,2,1", "-p", "5"), 3),           # not separable
    (("factor",), 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_bad_precision_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["factor", "5,0,1", "-p", "5", "-n", "0"])
    assert exc.value.code == 2


def test_bench_e_suite(capsys):
    code, out, _ = run(capsys, "bench", "--suite", "E", "-n", "10")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8
    assert [r["params"] for r in rows][0] == "j=1;p=5"
    assert all(r["direct_eq_hensel"] == "True" for r in rows)


def test_bench_b_and_d_suites(capsys):
    code, out, _ = run(capsys, "bench", "--suite", "B", "--json")
    rows = json.loads(out)["rows"]
    assert len(rows) == 3 and all(r["factors"] == 2 for r in rows)
    iters = [r["montes_iterations"] for r in rows]
    assert iters == sorted(iters)
    code, out, _ = run(capsys, "bench", "--suite", "D", "--json")
    assert len(json.loads(out)["rows"]) == 4


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "padicfactor", "--version"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.startswith("padicfactor ")
