import io
import json
import subprocess
import sys

import pytest

from besica.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_growth_rows():
    code, text = run("growth", "--group", "Z2:vn", "--nmax", "10")
    lines = text.splitlines()
    assert code == 0 and len(lines) == 12
    assert lines[-1].startswith("10,221,44,44,221,")
    _, text = run("growth", "--group", "F2", "--nmax", "8")
    assert text.splitlines()[-1].startswith("8,13121,")
    _, text = run("growth", "--nmax", "0")
    assert text.splitlines()[1].startswith("0,1,")


def test_dist_json_exact_rationals():
    code, text = run("dist", "--group", "F2", "--config-a", "const:0", "--config-b", "prefix:a",
                     "--nmax", "10", "--tail", "3", "--format", "json")
    d = json.loads(text)
    est = d["limsup_estimate"]
    assert code == 0 and abs(est["num"] / est["den"] - 0.25) < 1e-4
    assert set(est) == {"num", "den", "decimal"}


def test_dist_interval():
    _, text = run("dist", "--seq", "interval:pow2", "--nmax", "20")
    assert text.splitlines()[-1] == "20,20,1048597,20,1048597"


def test_weyl_and_lipschitz():
    code, text = run("weyl", "--window", "30", "--nmax", "10")
    assert code == 0 and text.splitlines()[-1].endswith(",1,1")
    code, text = run("lipschitz", "--ca", "eca:110", "--config-a", "random:1", "--config-b", "random:2",
                     "--nmax", "6")
    assert code == 0 and "false" not in text


def test_decide_and_sweep():
    _, text = run("decide", "--ca", "eca:110")
    assert text.splitlines()[1] == "eca:110,false,false,false,01010,6"
    _, text = run("eca-sweep")
    assert len(text.splitlines()) == 257


def test_verify_exit_codes():
    code, text = run("verify", "eca-sweep", "--format", "json")
    assert code == 0 and json.loads(text)["ok"]
    code, text = run("verify", "nets")
    assert code == 1
    assert "FAIL" in text and "proof sandwich as stated" in text


def test_verify_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        run("verify", "nonsense")
    assert exc.value.code == 2


def test_input_errors(capsys):
    code, _ = run("dist", "--group", "Z2", "--config-a", "prefix:a")
    assert code == 2
    assert "free group" in capsys.readouterr().err
    assert run("growth", "--group", "F2", "--nmax", "12", "--cap", "100")[0] == 0
    assert run("dist", "--group", "F2", "--config-a", "const:0", "--config-b", "prefix:a",
               "--nmax", "12", "--cap", "100")[0] == 2


def test_deterministic_output():
    args = ("verify", "pseudometric", "--seed", "3", "--count", "9", "--nmax", "6")
    assert run(*args) == run(*args)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "besica", "growth", "--nmax", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[-1].startswith("2,13,")
