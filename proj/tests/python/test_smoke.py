import json
import os
import subprocess

import supalg


def test_version():
    assert supalg.__version__ == "0.1.0"


def test_algebra_build_and_check():
    code, rep = supalg.run_json("algebra", "build", params="gl(2|1)")
    assert code == 0
    assert rep["dims"] == [5, 4]
    code2, rep2 = supalg.run_json("algebra", "check", input_obj=rep["algebra"])
    assert code2 == 0
    assert rep2["status"] == "ok"


def test_jordan_roundtrip_through_kan():
    code, rep = supalg.run_json("jordan", "build", params="Mat(1|1)")
    assert code == 0
    code2, rep2 = supalg.run_json("roundtrip", input_obj=rep["jordan"])
    assert code2 == 0
    code3, rep3 = supalg.run_json("kan", input_obj=rep["jordan"])
    assert code3 == 0
    assert rep3["grading"]["depth"] == 1


def test_homological_check_fails_on_perturbation():
    code, rep = supalg.run_json("algebra", "build", params="gl(2|0)")
    assert code == 0
    alg = rep["algebra"]
    # corrupt one structure constant
    alg["brackets"][0]["coeffs"]["0"] = "7/2"
    code2, rep2 = supalg.run_json("homological-check", input_obj=alg)
    assert code2 == 1
    assert "witness" in rep2


def test_invariance_deterministic():
    kwargs = dict(variant="ber", params="sig=1|1;samples=8;gens=4", seed=11)
    a = supalg.run("invariance", "", kwargs["variant"], kwargs["params"], -1, kwargs["seed"], "")
    b = supalg.run("invariance", "", kwargs["variant"], kwargs["params"], -1, kwargs["seed"], "")
    assert a == b
    assert a[0] == 0


def test_malformed_input_is_exit_2():
    code, report = supalg.run("jordan", "check", "", "", -1, 2024, "{not json")
    assert code == 2
    assert "error" in json.loads(report)


def test_cli_binary_if_available():
    cli = os.environ.get("SUPALG_CLI")
    if not cli:
        return
    out = subprocess.run([cli, "algebra", "build", "--params", "q(2)"], capture_output=True)
    assert out.returncode == 0
    rep = json.loads(out.stdout)
    assert rep["dims"] == [4, 4]
