import json

import pytest

from gorenstein_lab import cli
from gorenstein_lab import gorenstein as G
from gorenstein_lab.modrep import INCONCLUSIVE, simple

from conftest import algebra


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sgp_holds_over_kx3(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "sgp", "--algebra", "presets/kx3.json", "--module", "simple:1", "--bound", "10")
    assert code == 0 and "Ext^1..10 (S, A) = 0" in out


def test_sgp_fails_over_rad2_with_witness(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "sgp", "--algebra", "presets/rad2.json", "--module", "simple:1", "--bound", "4")
    assert code == 1 and "Ext^1 has dim 3" in out


def test_main_complex_rejects_projective(capsys):
    code, _, err = run(capsys, "main-complex", "--algebra", "preset:kx2", "--module", "projective:1")
    assert code == 2 and "not reduced" in err


def test_main_complex_rendering(capsys):
    code, out, _ = run(capsys, "main-complex", "--algebra", "preset:kx3", "--module", "simple:1", "--bound", "2")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("H_i(P)") and "Ker=0" in lines[0]
    assert "H(P*)" in out


@pytest.mark.parametrize(
    "argv,code",
    [
        (["check-algebra", "--algebra", "preset:rad2"], 0),
        (["module-info", "--algebra", "preset:kx3", "--module", "simple:1"], 0),
        (["resolve", "--algebra", "preset:rad2", "--module", "simple:1", "--bound", "3"], 0),
        (["dual", "--algebra", "preset:rad2", "--module", "simple:1"], 0),
        (["transpose", "--algebra", "preset:rad2", "--module", "simple:1"], 0),
        (["ext", "--algebra", "preset:rad2", "--module", "simple:1", "--bound", "3"], 0),
        (["ext", "--algebra", "preset:a2", "--module", "simple:1", "--target", "simple:2", "--bound", "2"], 0),
        (["gp", "--algebra", "preset:rad2", "--module", "simple:1", "--bound", "3"], 1),
        (["phi", "--algebra", "preset:rad2", "--module", "simple:1"], 0),
        (["lemma22", "--algebra", "preset:kx3", "--module", "simple:1", "--bound", "3"], 0),
        (["lemma22", "--algebra", "preset:kx3", "--module", "simple:1", "--bound", "3", "--break"], 0),
        (["tr-bijection", "--algebra", "preset:kx3", "--module", "simple:1", "--bound", "4"], 0),
        (["audit", "--algebra", "preset:kx2", "--bound", "4"], 0),
        (["one-point-ext", "--algebra", "preset:k", "--module", "simple:1", "--bound", "3"], 0),
        (["one-point-ext", "--algebra", "preset:kx2", "--module", "regular"], 2),
        (["short-local", "--samples", "1", "--modules", "2", "--bound", "3"], 0),
        (["search", "--algebra", "preset:kx3", "--trials", "3", "--bound", "3"], 0),
    ],
)
def test_subcommand_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_ext_values_printed(capsys):
    _, out, _ = run(capsys, "ext", "--algebra", "preset:rad2", "--module", "simple:1", "--bound", "3")
    assert out.splitlines() == ["Ext^1(S, A) = 3", "Ext^2(S, A) = 6", "Ext^3(S, A) = 12"]


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "sgp", "--algebra", "preset:kx3", "--module", "simple:2")[0] == 2
    assert run(capsys, "sgp", "--algebra", "preset:nope", "--module", "simple:1")[0] == 2
    assert run(capsys, "sgp", "--module", "simple:1")[0] == 2
    assert run(capsys, "sgp", "--algebra", "preset:kx3", "--field", "x", "--module", "simple:1")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": 2,\n "dim": }')
    code, _, err = run(capsys, "check-algebra", "--algebra", str(bad))
    assert code == 2 and "bad.json:2:" in err
    with pytest.raises(SystemExit) as exc:
        cli.main(["sgp", "--no-such-flag"])
    assert exc.value.code == 2


def test_field_mismatch_is_an_input_error(capsys, tmp_path):
    m = simple(algebra("kx2", "F3"), 0)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m.to_dict(inline=True)))
    code, _, err = run(capsys, "sgp", "--algebra", "preset:kx2", "--module", str(path))
    assert code == 2 and err


def test_module_file_round_trip(capsys, tmp_path):
    emit = tmp_path / "dual.json"
    run(capsys, "dual", "--algebra", "preset:kx3", "--module", "simple:1", "--emit", str(emit))
    assert emit.exists() and json.loads(emit.read_text())
    m = simple(algebra("rad2"), 0)
    path = tmp_path / "s.json"
    path.write_text(json.dumps(m.to_dict(inline=True)))
    code, out, _ = run(capsys, "sgp", "--algebra", "preset:rad2", "--module", str(path), "--bound", "2")
    assert code == 1 and "Ext^1 has dim 3" in out


@pytest.mark.parametrize("command", ["sgp", "gp", "phi", "dual", "transpose", "tr-bijection", "main-complex"])
def test_verify_flag_round_trips(capsys, command):
    code, out, _ = run(capsys, command, "--algebra", "preset:kx3", "--module", "simple:1", "--bound", "3", "--verify")
    assert code == 0 and "re-verified from the serialized module" in out


def test_json_output_is_byte_stable(capsys):
    argv = ["main-complex", "--algebra", "preset:comm2", "--module", "simple:1", "--bound", "2", "--json", "--quiet"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second and json.loads(first)


def test_quiet_suppresses_text(capsys):
    code, out, _ = run(capsys, "sgp", "--algebra", "preset:kx3", "--module", "simple:1", "--quiet")
    assert code == 0 and out == ""


def test_status_codes():
    assert cli._status_code(G.HOLDS) == 0
    assert cli._status_code(G.FAILS) == 1
    assert cli._status_code(INCONCLUSIVE) == 3
