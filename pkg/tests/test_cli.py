import io
import json
import subprocess
import sys

import pytest

from pgquadric import make_space
from pgquadric.cli import FamilyFileError, format_family, load_family, main, parse_count, parse_family
from pgquadric.sigma import line_transversal_family


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run("--json", *argv)
    return code, [json.loads(line) for line in text.splitlines()]


def test_counts_enumerate_passes():
    code, (doc,) = run_json("counts", "-n", "1", "-q", "2", "--sign", "+", "--enumerate")
    assert code == 0
    assert doc["expected"]["quadric_size"] == 9 and doc["observed"]["quadric_size"] == 9
    assert doc["theorem_violations"] == []


def test_counts_without_enumeration():
    code, (doc,) = run_json("counts", "-n", "2", "-q", "3", "--sign", "-")
    assert code == 0 and doc["expected"]["quadric_size"] == 112
    assert set(doc) >= {"parameters", "expected", "observed", "theorem_violations", "verdict"}


def test_counts_rejects_non_prime_power(capsys):
    code, _ = run("counts", "-n", "1", "-q", "6", "--sign", "+")
    assert code == 2
    assert "NotAPrimePower" in capsys.readouterr().err


def test_usage_errors():
    assert run("counts", "-n", "1", "-q", "2", "--sign", "x")[0] == 2
    assert run("--seed-order", "other", "counts", "-n", "1", "-q", "2", "--sign", "+")[0] == 2
    assert run("counts", "-n", "1", "-q", "2", "--sign", "+", "--threads", "0")[0] == 2


@pytest.mark.parametrize("sign,lines", [("+", 6), ("-", 10)])
def test_canonical_file(tmp_path, sign, lines):
    path = tmp_path / "fam.pgfam"
    code, _ = run("canonical", "-n", "1", "-q", "2", "--sign", sign, "-o", str(path))
    assert code == 0
    text = path.read_text()
    assert text.splitlines()[0] == f"pgfam 3 2 {sign}"
    assert len(text.splitlines()) == lines + 1
    fam = load_family(path)
    assert parse_family(format_family(fam)).members == fam.members
    again = tmp_path / "again.pgfam"
    run("canonical", "-n", "1", "-q", "2", "--sign", sign, "-o", str(again))
    assert again.read_bytes() == path.read_bytes()


def test_canonical_to_stdout():
    code, text = run("canonical", "-n", "1", "-q", "2", "--sign", "+")
    assert code == 0 and text.startswith("pgfam 3 2 +\n")


def test_canonical_unwritable(tmp_path):
    code, _ = run("canonical", "-n", "1", "-q", "2", "--sign", "+", "-o", str(tmp_path / "no" / "f"))
    assert code == 1
    assert not (tmp_path / "no").exists()


def test_check_canonical_and_broken(tmp_path):
    path = tmp_path / "s.pgfam"
    run("canonical", "-n", "1", "-q", "3", "--sign", "+", "-o", str(path))
    code, (doc,) = run_json("check", str(path))
    assert code == 0 and doc["verdict"]["kind"] == "ParabolicOfHyperbolic"
    assert doc["observed"]["r"] == 8
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:1] + lines[2:]) + "\n")
    code, (doc,) = run_json("check", str(path))
    assert code == 1 and not doc["observed"]["p1_holds"]


def test_check_line_transversal(tmp_path):
    space = make_space(3, 3)
    path = tmp_path / "lt.pgfam"
    path.write_text("# complement of a pencil\n" + format_family(line_transversal_family(space, space.codim2[4])))
    code, (doc,) = run_json("check", str(path))
    assert code == 0 and doc["verdict"]["kind"] == "LineTransversal"


@pytest.mark.parametrize("text,line", [
    ("pgfam 3 2 +\n1 0 0 x\n", 2),
    ("pgfam 3 2 +\n0 2 0 0\n", 2),
    ("pgfam 3 2 +\n1 0 0 0\n# c\n1 0 0 0\n", 4),
    ("pgfam 2 2 +\n1 0 0\n", 1),
    ("pgfam 3 6 +\n1 0 0 0\n", 1),
    ("pgfam 3 3 +\n0 2 1 0\n", 2),
    ("hello\n", 1),
])
def test_parse_errors_carry_line_numbers(tmp_path, text, line):
    with pytest.raises(FamilyFileError) as info:
        parse_family(text)
    assert info.value.lineno == line
    path = tmp_path / "bad.pgfam"
    path.write_text(text)
    assert run("check", str(path))[0] == 2


def test_check_missing_file(tmp_path):
    assert run("check", str(tmp_path / "missing"))[0] == 2


@pytest.mark.parametrize("sign,allowed", [("+", {"ParabolicOfHyperbolic"}), ("-", {"OvoidSecant", "LineTransversal"})])
def test_search_pg32(sign, allowed):
    code, docs = run_json("search", "-n", "1", "-q", "2", "--sign", sign)
    assert code == 0
    *families, trailer = docs
    assert trailer["summary"]["exhaustive"] is True
    assert trailer["summary"]["families"] == len(families)
    assert {d["verdict"]["kind"] for d in families} == allowed


def test_search_budget_exit_code():
    code, docs = run_json("search", "-n", "2", "-q", "2", "--sign", "+", "--node-budget", "10^4",
                          "--report-every", "10^9")
    assert code == 3
    assert docs[-1]["summary"]["budget_exceeded"] is True
    assert docs[-1]["summary"]["exhaustive"] is False


def test_suite_small():
    code, (doc,) = run_json("suite", "--max-n", "1", "--max-q", "2")
    assert code == 0 and doc["passed"]
    assert all(v["run"] == v["passed"] for v in doc["checks"].values())


def test_parse_count():
    assert parse_count("10^6") == parse_count("1e6") == parse_count("1000000") == 10**6


def test_output_is_deterministic():
    a = run("counts", "-n", "2", "-q", "2", "--sign", "-", "--enumerate")
    b = run("counts", "-n", "2", "-q", "2", "--sign", "-", "--enumerate")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pgquadric", "--json", "counts", "-n", "1", "-q", "3", "--sign", "-"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["expected"]["quadric_size"] == 10
