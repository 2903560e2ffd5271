import json
import shutil
import subprocess
import sys

import pytest

from quiverbench.cli import main, run


def cert(argv):
    code, text = run(argv)
    return code, json.loads(text)


def test_list():
    code, c = cert(["list", "--kind", "instance"])
    assert code == 0
    assert set(c["result"]["entries"]) == {"inst_brauer", "inst_diamond", "inst_nz", "inst_sphere5"}


def test_certificate_fields():
    code, c = cert(["classify", "sphere5"])
    assert code == 0
    assert set(c) >= {"tool", "version", "command", "argv", "parameters", "input", "result",
                      "verdict"}
    assert c["result"]["classification"]["gentle"] is True
    assert len(c["input"]["digest"]) >= 32


def test_witness_exit_codes():
    code, c = cert(["witness", "sphere5", "--max-len", "8"])
    assert code == 0
    assert c["result"]["witness"]["U_text"] == "a2 a1^-1 a3^-1"
    code, c = cert(["witness", "a2", "--max-len", "10"])
    assert code == 1 and c["result"]["witness"] is None


def test_bands():
    code, c = cert(["bands", "a2", "--max-len", "8"])
    assert code == 0 and c["result"]["bands"] == ["beta gamma^-1"]


def test_jacobian():
    code, c = cert(["jacobian", "w_prime"])
    assert code == 0 and len(c["result"]["relations"]) == 9


def test_skew_emit():
    code, c = cert(["skew", "ndsg_triple", "--triple", "--emit", "g"])
    assert code == 0
    code, c = cert(["skew", "a1_swap", "--action", "--emit", "pushdown", "--module",
                    "alpha beta^-1"])
    assert code == 0


def test_brauer():
    code, c = cert(["brauer", "bge_graph"])
    assert code == 0


def test_verify_text_format():
    code, text = run(["verify", "inst_nz", "--format", "text"])
    assert code == 0
    assert text.startswith("verify: ")
    assert "FAIL" not in text


def test_verify_custom_chains_detects_symmetric_choice():
    # the twist inverts both bands here, so S = U, T = V on the second chain
    # yields palindromic band words such as U.V.V.U that are fixed by the twist
    code, c = cert(["verify", "inst_diamond", "--depth", "2", "--chain1", "V,U",
                    "--chain2", "U,V"])
    assert code == 1 and c["parameters"]["depth"] == 2
    summary = c["result"]["summary"]
    assert summary == {"dense_chain_1": True, "dense_chain_2": True, "independent_pair": True,
                       "nonsymmetric": False}
    failed = [x["id"] for x in c["result"]["reports"]["nonsymmetric"]["checks"] if not x["verdict"]]
    assert failed == ["chain2_twist_non_iso"]


def test_invalid_inputs(tmp_path, capsys):
    assert main(["classify", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["classify", str(bad)]) == 2
    assert main(["nonsense"]) == 2
    assert main(["verify", "inst_nz", "--chain1", "X"]) == 2
    assert "error" in capsys.readouterr().err


def test_replay(tmp_path):
    out = tmp_path / "c.json"
    code, text = run(["verify", "inst_nz", "--seed", "1", "--out", str(out)])
    assert out.read_text() == text
    code, _ = run(["replay", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    data["result"]["tampered"] = True
    out.write_text(json.dumps(data))
    code, c = cert(["replay", str(out)])
    assert code == 1 and c["verdict"] == "differs"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "quiverbench", "classify", "a1"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and json.loads(r.stdout)["verdict"]


@pytest.mark.skipif(shutil.which("quiverbench") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["quiverbench", "--version"], capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.strip()
