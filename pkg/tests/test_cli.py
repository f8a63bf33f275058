import json

import pytest

from reedykit import cli
from reedykit import instances as ins
from reedykit import io


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def emit(capsys, tmp_path, name):
    path = tmp_path / (name.replace("/", "_") + ".json")
    code, _, _ = run(capsys, "instances", "emit", name, "-o", str(path))
    assert code == 0
    return str(path)


def test_verify_delta2(capsys, tmp_path):
    code, out, err = run(capsys, "verify", emit(capsys, tmp_path, "delta2"))
    assert code == 0
    rep = json.loads(out)
    assert rep["valid"] and rep["kind"] == "reedy" and rep["violations"] == []
    assert "valid" in err


def test_verify_nonunique_factorization(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", emit(capsys, tmp_path, "nonunique-factorization"))
    assert code == 1
    (v,) = json.loads(out)["violations"]
    assert v["kind"] == "non-unique factorization"
    assert len(v["witness"]["factorizations"]) == 2


@pytest.mark.parametrize("text", ["{broken", "[]", '{"who": "knows"}'])
def test_verify_malformed(capsys, tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code, out, err = run(capsys, "verify", str(path))
    assert code == 2 and out == "" and err.startswith("error:")


def test_verify_missing_file(capsys, tmp_path):
    assert run(capsys, "verify", str(tmp_path / "nope.json"))[0] == 2


@pytest.mark.parametrize("name", ins.fixture_names(valid_only=True))
def test_every_emitted_fixture_verifies(capsys, tmp_path, name):
    path = emit(capsys, tmp_path, name)
    assert run(capsys, "verify", path)[0] == 0
    back = io.read(path, "reedy")
    assert back.base == ins.fixture(name).base and back.factorization == ins.fixture(name).factorization


def test_fibration_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "fibration", "--left", emit(capsys, tmp_path, "parallel-pair-to-terminal"))
    assert code == 1
    rep = json.loads(out)
    assert rep["verdict"] is False and len(rep["witness"]["components"]) == 2
    assert run(capsys, "fibration", emit(capsys, tmp_path, "delta2-diagonal"))[0] == 0
    path = emit(capsys, tmp_path, "delta2-identity")
    assert run(capsys, "fibration", "--left", path)[0] == 0
    assert run(capsys, "fibration", "--right", path)[0] == 0


def test_fibration_rejects_both_sides(capsys, tmp_path):
    path = emit(capsys, tmp_path, "delta2-identity")
    assert run(capsys, "fibration", "--left", "--right", path)[0] == 2


def test_fibration_on_wrong_kind(capsys, tmp_path):
    assert run(capsys, "fibration", emit(capsys, tmp_path, "delta1"))[0] == 2


@pytest.mark.parametrize("name,flag,value", [
    ("constant-quasi-iso-delta1", "weq", True),
    ("generating-map-delta1", "cof", True),
    ("zero-to-constant-delta1", "cof", False),
])
def test_classify(capsys, tmp_path, name, flag, value):
    code, out, _ = run(capsys, "classify", emit(capsys, tmp_path, name))
    assert code == 0
    rep = json.loads(out)
    assert rep["reedy"][flag] is value
    assert set(rep["reedy"]) == {"cof", "triv_cof", "fib", "triv_fib", "weq"}


def test_zero_to_constant_is_objectwise_cofibration(capsys, tmp_path):
    _, out, _ = run(capsys, "classify", emit(capsys, tmp_path, "zero-to-constant-delta1"))
    rep = json.loads(out)
    assert rep["objectwise"]["cof"] and not rep["reedy"]["cof"]


def test_suite_properness_deterministic(capsys):
    code, first, err = run(capsys, "suite", "properness", "--seed", "7", "--instances", "5")
    assert code == 0 and "PASS" in err
    _, second, _ = run(capsys, "suite", "properness", "--seed", "7", "--instances", "5")
    assert first == second
    rep = json.loads(first)
    keys = [c["key"] for c in rep["checks"]]
    assert keys == sorted(keys)
    assert rep["suite"] == "properness" and rep["seed"] == 7


def test_suite_text_format(capsys):
    code, out, _ = run(capsys, "suite", "delta-slice-example", "--instances", "1", "--max-objects", "5", "--format", "text")
    assert code == 0 and "PASS" in out


def test_unknown_suite(capsys):
    code, out, err = run(capsys, "suite", "no-such-suite")
    assert code == 2 and "unknown suite" in err


def test_negative_seed_rejected(capsys):
    assert run(capsys, "suite", "properness", "--seed", "-1")[0] == 2


def test_instances_list(capsys):
    code, out, _ = run(capsys, "instances", "list")
    assert code == 0
    names = {e["name"] for e in json.loads(out)["instances"]}
    for need in ["delta0", "delta1", "delta2", "delta3", "span", "cospan", "discrete2", "ordinal1",
                 "parallel-pair", "nonunique-factorization", "delta2/simplex1"]:
        assert need in names
    code, out, _ = run(capsys, "instances", "list", "--format", "text")
    assert code == 0 and "parallel-pair" in out


def test_instances_emit_to_stdout(capsys):
    code, out, _ = run(capsys, "instances", "emit", "span")
    assert code == 0 and io.detect_kind(json.loads(out)) == "reedy"


def test_instances_emit_unknown(capsys):
    assert run(capsys, "instances", "emit", "no-such-thing")[0] == 2
    assert run(capsys, "instances", "emit")[0] == 2


def test_no_command_is_usage_error(capsys):
    assert run(capsys)[0] == 2


def test_version(capsys):
    assert run(capsys, "--version")[0] == 0
