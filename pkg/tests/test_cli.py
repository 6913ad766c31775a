import json

import pytest

from chronokh.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kh_builtin_json(capsys):
    code, out, _ = run(capsys, "kh", "builtin:trefoil", "--ring", "odd")
    assert code == 0
    data = json.loads(out)
    assert data["ring"] == "odd"


def test_kh_is_deterministic(capsys):
    a = run(capsys, "kh", "builtin:figure8")[1]
    b = run(capsys, "kh", "builtin:figure8", "--threads", "4")[1]
    assert a == b


def test_kh_table(capsys):
    code, out, _ = run(capsys, "kh", "builtin:hopf", "--format", "table", "--window", "0:0")
    assert code == 0 and "[even]" in out


@pytest.mark.parametrize("argv, code", [
    (["kh", "/nonexistent/file.json"], 2),
    (["kh", "builtin:nope"], 2),
    (["kh", "builtin:trefoil", "--window", "3:1"], 2),
    (["projector", "--strands", "4", "--twists", "2"], 3),
    (["projector", "--strands", "2", "--twists", "4", "--window", "-9:0"], 4),
    (["projector", "--strands", "3", "--twists", "2", "--explicit"], 2),
    (["frobnicate"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_projector_trace(capsys):
    code, out, _ = run(capsys, "projector", "--strands", "2", "--twists", "8", "--trace", "2",
                       "--window", "-5:0", "--check-turnbacks")
    assert code == 0
    data = json.loads(out)
    assert data["turnbacks"] == {"e1": True}
    assert data["window"] == [-5, 0]


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "5", "6")
    assert code == 0
    assert out.count("[PASS]") == 2
