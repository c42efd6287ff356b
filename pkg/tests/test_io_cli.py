import json
import subprocess
import sys

import pytest

from nestcodes.cli import main
from nestcodes.constructions import construct_nested_2e, construct_rrt
from nestcodes.io import code_from_json, code_to_json, dumps, read_code, write_code
from nestcodes.orbits import code_min_distance, code_size


def test_roundtrip(tmp_path):
    C = construct_nested_2e(3, 2, 2)
    path = tmp_path / "c.json"
    write_code(C, path)
    D = read_code(path)
    assert code_size(D) == code_size(C)
    assert [r.rep for r in D.reps] == [r.rep for r in C.reps]
    assert dumps(code_to_json(D)) == path.read_text()


def test_tampered_artifact_rejected():
    obj = json.loads(dumps(code_to_json(construct_rrt(3, 2))))
    obj["reps"][0]["stab_degree"] = 2
    with pytest.raises(ValueError):
        code_from_json(obj)


def run(args, capsys):
    rc = main(args)
    return rc, capsys.readouterr().out


def test_cli_bound(capsys):
    rc, out = run(["bound", "--q", "3", "--n", "8", "--d", "2", "--k", "2"], capsys)
    assert rc == 0 and json.loads(out)["johnson"] == "896260"


def test_cli_guard_exit_code(capsys):
    rc, _ = run(["construct", "--family", "rrt", "--q", "2", "--k", "2"], capsys)
    assert rc == 2


def test_cli_usage_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--family", "nope", "--q", "3", "--k", "2"])
    assert exc.value.code == 2


def test_cli_verify_pass_and_fail(tmp_path, capsys):
    path = tmp_path / "c.json"
    assert main(["construct", "--family", "rrt", "--q", "3", "--k", "2", "--out", str(path)]) == 0
    rc, out = run(["verify", "--code", str(path)], capsys)
    assert rc == 0
    assert all(r["result"] == "pass" for r in json.loads(out)["checks"])
    obj = json.loads(path.read_text())
    obj["predicted_size"] = 41
    path.write_text(json.dumps(obj))
    rc, _ = run(["verify", "--code", str(path), "--checks", "size"], capsys)
    assert rc == 1


def test_cli_sampled_needs_seed(capsys):
    rc, _ = run(["verify", "--family", "rrt", "--q", "3", "--k", "2", "--mode", "sampled:1000"], capsys)
    assert rc == 2
    rc, out = run(["verify", "--family", "rrt", "--q", "3", "--k", "2", "--mode", "sampled:1000",
                   "--seed", "1", "--checks", "distance"], capsys)
    assert rc == 0 and "no violation found at 1000 samples" in out


def test_cli_compare_csv(capsys):
    rc, out = run(["compare", "--family", "2^2", "--q", "3", "--k", "2,3", "--format", "csv"], capsys)
    assert rc == 0 and len(out.strip().splitlines()) == 3


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nestcodes", "bound", "--q", "2", "--n", "6", "--d", "2", "--k", "2"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["johnson"] == "651"
