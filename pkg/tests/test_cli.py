import json
import subprocess
import sys

import pytest

from hiccup.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "--params", "1,1,3,2", "--count", "5")
    assert code == 0 and out.strip() == "1 4 6 8 11"
    path = tmp_path / "b.txt"
    code, out, _ = run(capsys, "generate", "--params", "0,2,4,2", "--count", "3", "--bfile", str(path), "--format", "json")
    assert json.loads(out)["terms"] == [2, 6, 8]
    assert path.read_text() == "1 2\n2 6\n3 8\n"


def test_generate_degenerate_warns(capsys):
    code, out, err = run(capsys, "generate", "--params", "0,1,5,1", "--count", "4")
    assert code == 0 and out.strip() == "1 2 3 4" and "degenerate" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "--params", "1,1,3", "--count", "5"],
        ["generate", "--params", "0,1,2,2", "--count", "5"],
        ["generate", "--params", "1,1,3,2", "--count", "0"],
        ["verify", "--entry", "A999999"],
        ["represent", "--n", "-1"],
        ["bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_derive(capsys):
    code, out, _ = run(capsys, "derive", "--params", "0,2,4,2", "--what", "morphism")
    assert code == 0 and out.strip() == "0->01, 1->0001"
    code, out, _ = run(capsys, "derive", "--params", "1,1,3,2", "--what", "beatty")
    assert code == 0 and out.strip() == "floor((1+sqrt(2))*n - sqrt(2)/2)"
    code, out, _ = run(capsys, "derive", "--params", "0,0,3,2", "--what", "beatty", "--format", "json")
    assert json.loads(out)["first_index"] == 2
    code, out, _ = run(capsys, "derive", "--params", "0,2,4,2", "--what", "numeration")
    assert code == 0 and "bases: 1, 2, 6, 16, 44" in out and "B(n+1) = 2*B(n) + 2*B(n-1)" in out


def test_derive_not_applicable(capsys):
    code, out, _ = run(capsys, "derive", "--params", "0,1,1,3", "--what", "beatty")
    assert code == 1 and out.startswith("NOT-APPLICABLE")


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--entry", "A086377", "--horizon", "2000")
    assert code == 0 and "A086377" in out and "beatty=PASS" in out
    code, out, _ = run(capsys, "verify", "--all", "--horizon", "500", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["passed"] and len(payload["reports"]) == 26


def test_infer(capsys, tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("# A086377\n1 1\n2 4\n3 6\n4 8\n5 11\n6 13\n7 16\n")
    code, out, _ = run(capsys, "infer", "--bfile", str(path), "--jmax", "1")
    assert code == 0 and "(1,1,3,2)" in out.split()
    path.write_text("1 1\n2 2\n3 4\n4 8\n")
    code, _, err = run(capsys, "infer", "--bfile", str(path))
    assert code == 1 and "NotHiccupError" in err
    code, _, err = run(capsys, "infer", "--bfile", str(tmp_path / "missing"))
    assert code == 2


def test_conjecture(capsys):
    code, out, _ = run(capsys, "conjecture", "bds", "--j", "2", "--horizon", "200", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["agreements"] == 200 and d["status"] == "PASS"
    code, out, _ = run(capsys, "conjecture", "wythoff-s1", "--precision", "20", "--horizon", "100")
    assert code == 0 and "1.910418439737904" in out and "CONJECTURE" in out


def test_represent(capsys):
    assert run(capsys, "represent", "--n", "39")[1].strip() == "1321"
    assert run(capsys, "represent", "--an", "10")[1].strip() == "a(10) = 28: 120 -> 1200"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hiccup", "generate", "--params", "0,1,4,2", "--count", "6"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "1 3 7 9 11 13"
