"""
Tests for the command line entry point
"""
import json
from pathlib import Path

import pytest

from classified.main import dispatch

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"


def run(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_laws_json_is_reproducible(capsys):
    """Two runs with the same seed print identical reports apart from timing"""
    args = ("laws", "levelled", "--seed", "42", "--trials", "2", "--format", "json")
    code, first, _ = run(capsys, *args)
    assert code == 0
    _, second, _ = run(capsys, *args)
    first_body, second_body = json.loads(first), json.loads(second)
    first_body.pop("elapsed_ms")
    second_body.pop("elapsed_ms")
    assert first_body == second_body
    assert first_body["suite"] == "levelled"
    assert first_body["seed"] == 42


def test_unknown_group_is_a_usage_error(capsys):
    code, _, _ = run(capsys, "laws", "bogus")
    assert code == 2


def test_invalid_flags(capsys):
    code, _, err = run(capsys, "laws", "bcc", "--trials", "0")
    assert code == 2
    assert "trials" in err
    code, _, _ = run(capsys, "laws", "bcc", "--format", "yaml")
    assert code == 2
    code, _, _ = run(capsys, "laws", "bcc", "--poset", "missing-poset.json")
    assert code == 2


def test_missing_program_file(capsys):
    code, _, err = run(capsys, "typecheck", "dp", "no-such-file.mml")
    assert code == 2
    assert "no-such-file.mml" in err


def test_parse_error_exit_code(capsys, tmp_path):
    source = tmp_path / "broken.mml"
    source.write_text("let x = in")
    code, _, _ = run(capsys, "normalize", str(source))
    assert code == 2


def test_typecheck_reports_modal_violation(capsys):
    code, out, _ = run(capsys, "typecheck", "dp", str(PROGRAMS / "boxfun.mml"))
    assert code == 1
    assert "ModalViolation" in out


def test_typecheck_sample_programs(capsys):
    for calculus, name in [
        ("moggi", "moggi_bind.mml"),
        ("dp", "dp_letbox.mml"),
        ("dcc", "dcc_protect.mml"),
        ("sealing", "sealing_observe.mml"),
    ]:
        code, out, _ = run(capsys, "typecheck", calculus, str(PROGRAMS / name))
        assert code == 0, out
        assert "status: pass" in out


def test_typecheck_with_poset_file(capsys):
    code, _, _ = run(
        capsys, "typecheck", "dcc", str(PROGRAMS / "dcc_protect.mml"), "--poset", str(PROGRAMS / "poset.json")
    )
    assert code == 0


def test_normalize(capsys, tmp_path):
    source = tmp_path / "redex.mml"
    source.write_text("-- a beta redex\n(\\x:Bool. if x then ff else tt) tt\n")
    code, out, _ = run(capsys, "normalize", str(source), "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["details"]["normal_form"] == "ff"
    assert data["details"]["size"] == 1


def test_denote(capsys):
    code, out, _ = run(capsys, "denote", "moggi", str(PROGRAMS / "moggi_bind.mml"), "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["details"]["inputs"] == 2
    assert len(data["details"]["table"]) == 2


def test_hom_builtins(capsys):
    code, out, _ = run(capsys, "hom", "delta-bool", "nabla-bool", "--format", "json")
    assert code == 0
    assert json.loads(out)["details"]["count"] == 4
    code, out, _ = run(capsys, "hom", "nabla-bool", "delta-bool", "--format", "json")
    assert json.loads(out)["details"]["count"] == 2


def test_hom_cap(capsys):
    code, out, _ = run(capsys, "hom", "delta-bool", "delta-bool", "--cap", "3")
    assert code == 1
    assert "EnumerationCapExceeded" in out


def test_hom_set_file(capsys, tmp_path):
    source = tmp_path / "chain.json"
    source.write_text(json.dumps({"universe": ["L"], "carrier": ["a", "b"], "relations": {"L": [["a", "b"]]}}))
    code, out, _ = run(capsys, "hom", str(source), str(source), "--format", "json")
    assert code == 0
    assert json.loads(out)["details"]["count"] == 3


def test_nonint_sample_passes(capsys):
    code, out, _ = run(capsys, "nonint", "sealing", str(PROGRAMS / "sealing_observe.mml"))
    assert code == 0, out


def test_nonint_rejects_upward_flow(capsys):
    code, out, _ = run(capsys, "nonint", "dcc", str(PROGRAMS / "dcc_leak.mml"))
    assert code == 1
    assert "SideConditionUnmet" in out


def test_nonint_needs_hole(capsys):
    code, _, _ = run(capsys, "nonint", "dp", str(PROGRAMS / "swap.mml"))
    assert code == 2


@pytest.mark.parametrize("kind", ["soundness", "nonint"])
def test_corpus(capsys, kind):
    code, out, _ = run(capsys, "corpus", kind, "--format", "json")
    assert code == 0, out
    data = json.loads(out)
    assert data["status"] == "pass"
    assert all(part["status"] == "pass" for part in data["details"]["parts"])
