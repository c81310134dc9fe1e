import pytest

from bpictl.cli import run
from bpictl.textio import render_model

from conftest import example_model


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "m.bpm"
    path.write_text(render_model(example_model()))
    return str(path)


def test_check_lists_states(model_file, capsys):
    assert run(["check", model_file, "EF p"]) == 0
    assert capsys.readouterr().out.strip() == "states: s0"


def test_check_negative_exit(model_file, capsys):
    assert run(["check", model_file, "p & !p"]) == 1
    assert "(none)" in capsys.readouterr().out


def test_check_valid_flag(model_file, capsys):
    assert run(["check", model_file, "--valid", "P{a} true"]) == 0
    assert run(["check", model_file, "--valid", "p"]) == 1
    out = capsys.readouterr().out
    assert "counterexample: s1" in out


def test_check_formula_from_file(model_file, tmp_path, capsys):
    f = tmp_path / "f.bpi"
    f.write_text("EF p\n")
    assert run(["check", model_file, str(f)]) == 0


def test_check_oracle_agrees(model_file, capsys):
    for formula in ["EF p", "B{a} p", "E[true U !p]", "EG true"]:
        assert run(["check", model_file, formula]) == \
            run(["check", model_file, "--oracle", formula])
        plain, oracle = capsys.readouterr().out.strip().splitlines()
        assert plain == oracle


def test_validate_ok(model_file, capsys):
    assert run(["validate", model_file]) == 0
    assert "satisfies all frame conditions" in capsys.readouterr().out


def test_validate_bad_model(tmp_path, capsys):
    bad = tmp_path / "bad.bpm"
    bad.write_text(
        "states s0 s1\natoms p\nagents a\n"
        "label s0 = [p]\nlabel s1 = []\n"
        "RB a s0 -> s1\nRB a s1 -> s0\n"
    )
    assert run(["validate", str(bad)]) == 1
    assert "B3" in capsys.readouterr().out


def test_axioms_on_valid_model(model_file, capsys):
    assert run(["axioms", model_file, "--pool", "3"]) == 0
    out = capsys.readouterr().out
    assert "failures=0" in out
    assert "EG1 m0 0 VALID" in out


def test_axioms_refuses_invalid_model(tmp_path, capsys):
    bad = tmp_path / "bad.bpm"
    bad.write_text(
        "states s0\natoms p\nagents a\nlabel s0 = [p]\n"
    )  # empty belief relation is not serial
    assert run(["axioms", str(bad)]) == 2
    assert "not frame-valid" in capsys.readouterr().err


def test_sat_positive(capsys):
    assert run(["sat", "B{a} p & !p", "--max-states", "2"]) == 0
    out = capsys.readouterr().out
    assert "satisfiable" in out
    assert "states s0 s1" in out


def test_sat_negative(capsys):
    assert run(["sat", "p & !p", "--max-states", "2"]) == 1
    assert "no model" in capsys.readouterr().out


def test_sat_abort(capsys):
    assert run(["sat", "p & !p", "--max-states", "3", "--budget", "5"]) == 3
    assert "aborted" in capsys.readouterr().out


def test_fmt_formula(tmp_path, capsys):
    f = tmp_path / "f.bpi"
    f.write_text("( p &   q )  # noise\n")
    assert run(["fmt", str(f)]) == 0
    assert capsys.readouterr().out == "p & q\n"


def test_fmt_model_idempotent(tmp_path, capsys):
    path = tmp_path / "m.bpm"
    path.write_text(
        "states s1 s0\natoms p\nagents a\n"
        "label s1 = []\nlabel s0 = [p]\n"
        "RX s1 -> s0\nRX s0 -> s0\n"
    )
    assert run(["fmt", str(path)]) == 0
    once = capsys.readouterr().out
    path.write_text(once)
    assert run(["fmt", str(path)]) == 0
    assert capsys.readouterr().out == once


def test_parse_error_exit(model_file, capsys):
    assert run(["check", model_file, "p &"]) == 2
    assert "parse error" in capsys.readouterr().err


def test_missing_file_exit(capsys):
    assert run(["check", "/nonexistent.bpm", "p"]) == 2


def test_usage_error_exit(capsys):
    assert run(["frobnicate"]) == 2


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
