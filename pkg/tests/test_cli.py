import json

import pytest

from cayleycr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def tables(tmp_path, capsys):
    paths = {}
    for name, args in {
        "o": ("--n", "8"),
        "h": ("--n", "4"),
        "dh": ("--n", "8", "--source", "doubled"),
        "fig": ("--n", "8", "--source", "figure"),
    }.items():
        code, out, _ = run(capsys, "table", *args, "--format", "json")
        assert code == 0
        paths[name] = tmp_path / f"{name}.json"
        paths[name].write_text(out)
    bad = json.loads(paths["o"].read_text())
    bad["c"][3][1][2] = -1
    paths["bad"] = tmp_path / "bad.json"
    paths["bad"].write_text(json.dumps(bad))
    return paths


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--n", "8")
    assert code == 0 and "e1*e2 = e3" in out.splitlines()
    assert out.strip().endswith("(1,2,3) (1,4,5) (1,7,6) (2,4,6) (2,5,7) (3,4,7) (3,6,5)")
    code, out, _ = run(capsys, "table", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["table"][1][1] == "-e0" and len(data["table"]) == 2
    code, out, err = run(capsys, "table", "--n", "3")
    assert code == 2 and out == "" and "1, 2, 4, 8" in err
    code, out, _ = run(capsys, "table", "--n", "4", "--format", "csv")
    assert out.splitlines()[0] == "*,e0,e1,e2,e3" and out.splitlines()[2] == "e1,e1,-e0,e3,-e2"


def test_verify(capsys, tables):
    assert run(capsys, "verify", "--n", "8", "--samples", "100")[0] == 0
    assert run(capsys, "verify", "--n", "4", "--samples", "100")[0] == 0
    code, out, _ = run(capsys, "verify", "--structure-file", str(tables["bad"]))
    assert code == 1 and "FAIL composition" in out
    assert run(capsys, "verify", "--n", "5")[0] == 2
    assert run(capsys, "verify", "--samples", "0")[0] == 2


def test_check(capsys, tmp_path):
    assert run(capsys, "check", "--n", "2", "--expr", "x^2")[0] == 0
    code, out, _ = run(capsys, "check", "--n", "8", "--expr", "x^2")
    assert code == 1 and "verdict: not-analytic" in out
    code, _, err = run(capsys, "check", "--n", "8", "--expr", "x*x*x")
    assert code == 2 and "ambiguous product" in err
    code, out, _ = run(capsys, "check", "--n", "8", "--expr", "x", "--form", "kappa", "--kappa", "8", "--format", "json")
    assert code == 0 and json.loads(out)["form"] == "kappa(8)"
    code, out, _ = run(capsys, "check", "--n", "4", "--expr", "x", "--format", "csv")
    assert code == 1 and out.splitlines()[-1].startswith("summary,not-analytic,2")


def test_check_usage_errors(capsys, tmp_path):
    assert run(capsys, "check", "--n", "4", "--expr", "x", "--form", "quat")[0] == 2
    assert run(capsys, "check", "--n", "2", "--expr", "x", "--form", "vector")[0] == 2
    assert run(capsys, "check", "--n", "8", "--expr", "x", "--form", "kappa")[0] == 2
    assert run(capsys, "check", "--n", "8", "--expr", "x", "--form", "kappa", "--kappa", "a/b")[0] == 2
    assert run(capsys, "check", "--n", "8")[0] == 2
    assert run(capsys, "check", "--n", "8", "--file", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "check", "--n", "4", "--expr", "e6")[0] == 2
    assert run(capsys, "check", "--n", "8", "--expr", "x", "--form", "spinor")[0] == 2


def test_check_json_file(capsys, tmp_path):
    from cayleycr.cr.kappa import generate_analytic_family

    u = generate_analytic_family(8, 1, seed=5).functions[0]
    f = tmp_path / "u.json"
    f.write_text(json.dumps(u.to_json()))
    for form in ("real", "quat", "complex", "vector"):
        assert run(capsys, "check", "--n", "8", "--file", str(f), "--form", form)[0] == 0


def test_emit_matrix(capsys):
    code, out, _ = run(capsys, "emit-matrix", "--n", "8", "--variant", "antianalytic", "--format", "json")
    assert code == 0 and json.loads(out)["matrix"][0] == [f"+d{i}" for i in range(8)]
    code, out, _ = run(capsys, "emit-matrix", "--n", "2", "--format", "json")
    assert json.loads(out)["matrix"] == [["+d0", "-d1"], ["+d1", "+d0"]]
    code, out, _ = run(capsys, "emit-matrix", "--n", "4")
    assert out.splitlines()[1].split() == ["+d1", "+d0", "-d3", "+d2"]
    assert run(capsys, "emit-matrix", "--n", "1")[0] == 2


def test_iso(capsys, tables):
    code, out, _ = run(capsys, "iso", str(tables["o"]), str(tables["o"]))
    assert code == 0 and out.strip() == ", ".join(f"e{i}->+e{i}" for i in range(8))
    assert run(capsys, "iso", str(tables["dh"]), str(tables["o"]))[0] == 0
    code, out, _ = run(capsys, "iso", str(tables["fig"]), str(tables["o"]), "--format", "json")
    assert code == 0 and json.loads(out)["mapping"]["signs"] == [1, 1, 1, -1, 1, 1, -1, -1]
    assert run(capsys, "iso", str(tables["h"]), str(tables["o"]))[0] == 2
    code, out, _ = run(capsys, "iso", str(tables["bad"]), str(tables["o"]))
    assert code == 1 and out == "none\n"
    assert run(capsys, "iso", "/nonexistent.json", str(tables["o"]))[0] == 2


def test_bad_structure_file(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text("{not json")
    assert run(capsys, "verify", "--structure-file", str(f))[0] == 2
    f.write_text('{"N": 2, "c": [[1]]}')
    assert run(capsys, "verify", "--structure-file", str(f))[0] == 2


def test_usage(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["--help"]) == 0
