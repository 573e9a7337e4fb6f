import json
import os
import subprocess
import sys
import tempfile

import pytest

from quildeg.cli import main

MODULES = '''ring R = ring { vars=[x, y]; weights=[1, 2]; p=2 }
ideal I = ["x*y"] over R
module M = I
ring A = ring { vars=[x, y]; weights=[1, 1]; p=2 }
ideal J = ["x^2", "x*y", "y^2"] over A
module N = J
'''


@pytest.fixture
def qdx(tmp_path):
    def write(text, name="f.qdx"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_degree_prints_bare_rational(capsys, qdx):
    code, out, _ = run(capsys, "degree", qdx(MODULES), "M")
    assert code == 0 and out.strip() == "3/2"


def test_length_and_minprimes(capsys, qdx):
    f = qdx(MODULES)
    code, out, _ = run(capsys, "length", f, "N", "--format", "machine")
    assert code == 0 and json.loads(out)["length"] == 3
    code, out, _ = run(capsys, "minprimes", f, "M")
    assert code == 0 and "(x)" in out and "(y)" in out


def test_hilbert_and_oracle_agree(capsys, qdx):
    f = qdx(MODULES)
    _, a, _ = run(capsys, "hilbert", f, "M", "--format", "machine", "--max-degree", "12")
    _, b, _ = run(capsys, "oracle", f, "M", "--format", "machine", "--max-degree", "12")
    rec = json.loads(b)
    assert json.loads(a)["coefficients"] == rec["brute"]
    assert rec["series_ok"] and rec["dim_ok"]


def test_additivity(capsys, qdx):
    code, out, _ = run(capsys, "additivity", qdx(MODULES), "M")
    assert code == 0 and "3/2" in out


def test_verify_main_s3(capsys):
    code, out, _ = run(capsys, "verify-main", "S3_pt")
    assert code == 0
    assert out.splitlines()[0].startswith("S3_pt: equal: true, lhs=1/2, rhs=1/2")


def test_verify_main_whole_catalog(capsys):
    code, out, _ = run(capsys, "verify-main", "--format", "machine")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(recs) == 10
    assert all(r["equal"] and r["dim_check"] and r["passed"] for r in recs)


def test_invariants_and_group_commands(capsys):
    from quildeg.corpus import catalog_text
    with tempfile.TemporaryDirectory() as d:
        p = os.path.join(d, "c.qdx")
        with open(p, "w", encoding="utf-8") as fh:
            fh.write(catalog_text())
        code, out, _ = run(capsys, "invariants", p, "S3coh", "--format", "machine",
                           "--max-degree", "8")
        assert code == 0 and json.loads(out)["invariants"][:9] == [1, 0, 0, 1, 1, 0, 0, 1, 1]
        code, out, _ = run(capsys, "group-info", p, "D4", "--p", "2")
        assert code == 0 and "order 8" in out
        code, out, _ = run(capsys, "quillen", p, "D4_pt", "--graph", "--format", "machine")
        rec = json.loads(out.splitlines()[0])
        assert code == 0 and rec["max_rank"] == 2


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--count", "40")
    assert code == 0 and "[seed 0]" in out


def test_selftest_list(capsys):
    code, out, _ = run(capsys, "selftest", "--list")
    lines = out.splitlines()
    assert code == 0 and len(lines) >= 10
    assert all(": " in line for line in lines)


def test_wmod_check(capsys):
    code, out, _ = run(capsys, "wmod-check", "--count", "10", "--tensor-count", "5")
    assert code == 0


def test_machine_output_is_byte_identical():
    cmd = [sys.executable, "-m", "quildeg", "selftest", "--format", "machine",
           "--seed", "3", "--count", "30"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_exit_code_parse(capsys, qdx):
    code, _, err = run(capsys, "degree", qdx("group G = <(0 1 2)"))
    assert code == 1 and "line 1" in err


def test_exit_code_missing_file(capsys):
    assert run(capsys, "degree", "/nonexistent/file.qdx")[0] == 1


def test_exit_code_capacity(capsys, qdx):
    code, _, _ = run(capsys, "group-info", qdx("group S3 = <(0 1 2), (0 1)>"), "--bound", "3")
    assert code == 2


def test_exit_code_verification_failure(capsys, qdx):
    text = '''group C2 = <(0 1)>
fixture Bad {
  group = C2; p = 2; X = pt
  global = elemab(rank=1, p=2)
  central <(0 1)> @ 0 = elemab(rank=1, p=2)
  expect lhs = 2
}
'''
    assert run(capsys, "verify-main", qdx(text))[0] == 3


def test_exit_code_missing_model(capsys, qdx):
    text = "group S3 = <(0 1 2), (0 1)>\nfixture F {\n  group = S3; p = 3; X = pt\n}\n"
    assert run(capsys, "verify-main", qdx(text))[0] == 4
