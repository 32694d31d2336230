import io
import json
import os
import subprocess
import sys

import pytest

from compoly.cli import COMMANDS, run_command
from compoly.fields import FiniteField, QQ
from compoly.parser import parse_bivariate
from conftest import REF_F


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_expand_reference_branch():
    code, out, _ = run("expand", "--field", "cyclo:24", "--trunc", "2", REF_F)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4 and "x^(3/2) + x^(7/4)" in lines
    assert "-x^(3/2) - w^6*x^(7/4)" in lines  # conjugate by w^6 = i


def test_identity_composed_sum():
    assert run("csum", "--field", "rational", "y", "y")[:2] == (0, "y\n")


def test_homog_compose_output():
    code, out, _ = run("homog-compose", "--field", "finite:7", "y - 2*x", "y - 3*x")
    assert code == 0
    F7 = FiniteField(7)
    # -6 = 1 in F_7, so the canonical text is "y + x"
    assert out == "y + x\n"
    assert parse_bivariate(out, F7) == parse_bivariate("y - 6*x", F7)


def test_json_keys_for_exact_results():
    code, out, _ = run("cmul", "--format", "json", "y^2 - x", "y - x")
    assert code == 0
    obj = json.loads(out)
    assert {"exact", "expanded", "factored", "truncation", "field", "command"} <= set(obj)
    code, out, _ = run("cprod", "--format", "json", "--trunc", "3", "y^2 - x^3", "y - x")
    assert "exact" not in json.loads(out)


def test_factored_format():
    code, out, _ = run("cmul", "--format", "factored", "y^2 - x", "y - x")
    assert code == 0
    assert sorted(out.strip().splitlines()) == ["(y - (-x^(3/2)))", "(y - (x^(3/2)))"]


def test_univariate_commands():
    assert run("uni-cmul", "--field", "finite:2", "x^2 + x + 1", "x^3 + x + 1")[1] == "x^6 + x^4 + x^2 + x + 1\n"
    assert run("uni-csum", "--field", "finite:2", "x^2 + x + 1", "x^2 + x + 1")[1] == "x^4 + x^2\n"
    code, out, _ = run("uni-decompose", "--field", "finite:5", "--format", "json", "x^6 + x + 2")
    assert code == 0 and json.loads(out)["kind"] == "multiplication"


def test_homogeneous_commands():
    assert run("membership", "--field", "finite:7", "y^2 + x*y + 3*x^2")[1] == "in_Mhmin\n"
    assert run("membership", "--field", "finite:7", "y^2 - x")[1] == "not_member\n"
    f = "y^2 + x*y + 3*x^2"
    assert run("associate-check", "--field", "finite:7", f, f)[1] == "1\n"
    code, out, _ = run("homog-decompose", "--field", "finite:7", f)
    assert code == 0 and out == "(y^2 + x*y + 3*x^2)\n"


def test_membership_reports_coefficient_subfield():
    # y^2 + x*y + 3*x^2 has F_7 coefficients; over F_49 it splits, and the JSON says the data lives in F_7
    code, out, _ = run("membership", "--field", "finite:7:2", "--format", "json", "y^2 + x*y + 3*x^2")
    obj = json.loads(out)
    assert code == 0 and obj["membership"] == "in_Mh" and obj["coefficient_subfield_degree"] == 1
    code, out, _ = run("membership", "--field", "finite:7:2", "--format", "json", "y - t*x")
    assert json.loads(out)["coefficient_subfield_degree"] == 2


@pytest.mark.parametrize(
    "argv,code",
    [
        (["bogus"], 2),
        (["csum", "y"], 2),
        (["csum", "--field", "nope", "y", "y"], 2),
        (["csum", "--trunc", "-1", "y", "y"], 2),
        (["csum", "y^(1/2)", "y"], 1),
        (["expand", "y^2 + x"], 1),
        (["uni-csum", "x + 1", "x + 1"], 1),
        (["homog-compose", "--field", "finite:7", "y^2 - x", "y - x"], 1),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(*argv)[0] == code


def test_domain_error_message_names_the_error():
    code, _, err = run("expand", "y^2 + x")
    assert code == 1 and "RootOutsideField" in err


def test_out_flag(tmp_path):
    target = tmp_path / "r.txt"
    code, out, _ = run("csum", "--out", str(target), "y - x", "y - 1")
    assert code == 0 and out == ""
    assert target.read_text() == "y - 1 - x\n"


def test_seed_env_override(monkeypatch):
    monkeypatch.setenv("COMPOLY_SEED", "17")
    assert run("csum", "y", "y")[0] == 0
    monkeypatch.setenv("COMPOLY_SEED", "junk")
    assert run("csum", "y", "y")[0] == 2


def test_every_command_is_deterministic():
    samples = {
        "expand": ["--field", "cyclo:24", "--trunc", "2", REF_F],
        "csum": ["y^2 - x", "y^2 - x"],
        "cmul": ["y^2 - x", "y - x"],
        "cprod": ["--trunc", "3", "y^2 - x^3", "y - x - x^2"],
        "uni-csum": ["--field", "finite:3", "x^2 + 1", "x^3 + 2*x + 1"],
        "uni-cmul": ["--field", "finite:3", "x^2 + 1", "x^3 + 2*x + 1"],
        "uni-decompose": ["--field", "finite:5", "x^6 + x + 2"],
        "homog-compose": ["--field", "finite:37", "y^2 + x*y + 2*x^2", "y - 3*x"],
        "homog-decompose": ["--field", "finite:7", "y^2 + x*y + 3*x^2"],
        "associate-check": ["--field", "finite:7", "y^2 + x*y + 3*x^2", "y^2 + 2*x*y + 5*x^2"],
        "membership": ["--field", "finite:7", "y^2 + x*y + 3*x^2"],
    }
    assert set(samples) == set(COMMANDS)
    for name, args in samples.items():
        for fmt in ("text", "json", "factored"):
            a = run(name, "--format", fmt, "--seed", "3", *args)
            b = run(name, "--format", fmt, "--seed", "3", *args)
            assert a == b and a[0] in (0, 1), (name, fmt, a)


def test_console_script_entry_point():
    env = dict(os.environ, COMPOLY_SEED="1")
    p = subprocess.run([sys.executable, "-m", "compoly.cli", "csum", "y", "y"], capture_output=True, text=True, env=env)
    assert p.returncode == 0 and p.stdout == "y\n"
    p = subprocess.run([sys.executable, "-m", "compoly.cli", "nope"], capture_output=True, text=True)
    assert p.returncode == 2 and "invalid choice" in p.stderr
