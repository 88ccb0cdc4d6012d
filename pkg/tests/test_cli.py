import json
import subprocess
import sys

import pytest

from macdonald.cli import main
from macdonald.presentation import format_presentation, sylow_presentation


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_predict_text(capsys):
    code, out, _ = run(capsys, "predict", "7")
    assert code == 0
    assert "order 944784" in out and "exponent 648" in out and "class 7" in out


def test_predict_json(capsys):
    code, out, _ = run(capsys, "predict", "13", "--json")
    d = json.loads(out)
    assert code == 0 and d["global"] == {"order": 4478976, "class": 5, "exponent": 864}


def test_predict_with_factorization(capsys):
    alpha = 2**40 * 3 + 1
    code, _, err = run(capsys, "predict", str(alpha))
    assert code == 2 and "factorization" in err
    code, out, _ = run(capsys, "predict", str(alpha), "--factorization", "2^40,3", "--json")
    assert code == 0 and json.loads(out)["factorization"] == [{"p": 2, "m": 40}, {"p": 3, "m": 1}]


@pytest.mark.parametrize("argv", [["predict", "2"], ["predict", "x"], ["verify"], ["frobnicate", "3"]])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "4")
    assert code == 0
    assert "class 5, exponent 27, |Z(J)| = 3" in out
    assert "Z_3 is abelian with invariants [3, 3, 9]" in out


def test_analyze_json_prime(capsys):
    code, out, _ = run(capsys, "analyze", "7", "--prime", "2", "--json")
    d = json.loads(out)["sylow"]
    assert code == 0 and len(d) == 1
    assert d[0]["order"] == 16 and d[0]["class"] == 3 and d[0]["exponent"] == 8
    assert [z["order"] for z in d[0]["upper"]] == [1, 2, 4, 16]


def test_analyze_bad_prime(capsys):
    code, _, err = run(capsys, "analyze", "7", "--prime", "5")
    assert code == 2 and "does not divide" in err


def test_analyze_refuses_over_cap(capsys):
    code, out, _ = run(capsys, "analyze", "7", "--cap", "1000")
    assert code == 1 and "refused" in out


def test_verify_fast_and_deep(capsys):
    code, out, _ = run(capsys, "verify", "3")
    assert code == 0 and "ALL CHECKS PASS" in out
    code, out, _ = run(capsys, "verify", "3", "--deep", "--json")
    d = json.loads(out)
    assert code == 0 and all(c["status"] == "pass" for c in d["sylow"][0]["checks"])


def test_enumerate(tmp_path, capsys):
    f = tmp_path / "j.txt"
    f.write_text(format_presentation(sylow_presentation(4, 3)))
    csv_path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "enumerate", str(f), "--csv", str(csv_path))
    assert code == 0 and out.startswith("complete: 2187 cosets")
    assert len(csv_path.read_text().splitlines()) == 2188
    code, out, _ = run(capsys, "enumerate", str(f), "--subgroup", "A", "--json")
    assert code == 0 and json.loads(out)["cosets"] == 81
    code, out, _ = run(capsys, "enumerate", str(f), "--via", "A")
    assert code == 0 and "2187 cosets" in out


def test_enumerate_overflow_and_missing_file(tmp_path, capsys):
    f = tmp_path / "j.txt"
    f.write_text(format_presentation(sylow_presentation(4, 3)))
    code, out, _ = run(capsys, "enumerate", str(f), "--max-cosets", "100")
    assert code == 1 and out.startswith("overflow")
    code, _, _ = run(capsys, "enumerate", str(tmp_path / "missing.txt"))
    assert code == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("A^2\n")
    code, _, _ = run(capsys, "enumerate", str(bad))
    assert code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "macdonald.cli", "predict", "3"], capture_output=True, text=True)
    assert r.returncode == 0 and "order 16" in r.stdout
