import io
import json
import subprocess
import sys

import pytest

from equichain import cli, formats
from equichain.report import Report
from equichain.spaces import builtin


def run(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def emit(name, *params):
    code, out, _ = run(["spaces", "emit", name, *params])
    assert code == 0
    return out


@pytest.fixture
def doc_file(tmp_path):
    def write(doc, name="x.json"):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(p)
    return write


def test_invariant_homology_of_circle_reflection():
    code, out, _ = run(["homology", "builtin:circle_reflection", "--which", "invariant", "--coeff", "z"])
    assert code == 0
    assert "H_1 = 0, H_0 = Z + Z/2" in out.splitlines()


def test_collapse_check_exit_zero():
    code, out, _ = run(["check", "collapse", "builtin:sphere_reflection"])
    assert code == 0 and "[pass]" in out


def test_non_associative_table_is_an_input_error(doc_file):
    doc = json.loads(emit("point", "2"))
    doc["group"] = {"order": 5, "table": [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3],
                                          [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]}
    code, out, err = run(["validate", doc_file(doc)])
    assert code == 2
    assert "multiplication table not associative at (1,1,2)" in err


def test_malformed_document_names_the_field(doc_file):
    doc = json.loads(emit("sphere_reflection"))
    doc["boundaries"][1] = [[1]]
    code, _, err = run(["homology", doc_file(doc)])
    assert code == 2 and "boundaries[1][0]" in err
    code, out, _ = run(["homology", doc_file("{not json"), "--json"])
    assert code == 2 and json.loads(out)["status"] == "error"


def test_invalid_complex_lists_diagnostics(doc_file):
    doc = json.loads(emit("circle_reflection"))
    doc["action"][1][1] = [[0, -1], [1, 1]]
    code, _, err = run(["validate", doc_file(doc)])
    assert code == 2 and "error:" in err


@pytest.mark.parametrize("argv", [
    ["homology", "--which", "invariant", "--coeff", "zp:2"],
    ["les"],
    ["hyper", "--range", "-3..2"],
    ["pages", "--filtration", "II", "--page", "2"],
    ["check", "smith", "FILE"],
])
def test_emit_round_trip_is_byte_identical(argv, monkeypatch):
    def place(src):
        if "FILE" in argv:
            return [src if a == "FILE" else a for a in argv]
        return argv[:1] + [src] + argv[1:]
    doc = emit("sphere_reflection")
    direct = run(place("builtin:sphere_reflection"))
    piped = run(place("-"), stdin=doc, monkeypatch=monkeypatch)
    assert direct[0] == piped[0] == 0
    assert direct[1] == piped[1]


def test_emit_parses_back_to_the_builtin():
    for name, params in [("lens_sphere", ["3"]), ("cone_of", ["circle_rotation(2)"]),
                         ("torus_diagonal", ["2"])]:
        doc = json.loads(emit(name, *params))
        X = formats.parse_complex(doc)
        assert X == builtin(f"{name}({','.join(params)})")


def test_reports_are_deterministic():
    argv = ["--json", "check", "smith", "builtin:cross_polytope_sphere(2,antipodal)"]
    a, b = run(argv), run(argv)
    assert a == b
    d = json.loads(a[1])
    assert list(d)[:3] == ["title", "command", "input_sha256"]
    assert d["command"] == "equichain check smith"


def test_all_builtins_sorted():
    code, out, _ = run(["check", "smith", "--all-builtins"])
    assert code == 0
    names = [l.split("] ", 1)[1].split(":")[0] for l in out.splitlines() if l.startswith("  [")]
    assert names == sorted(names) and "torus_diagonal(3)" in names


def test_inapplicable_is_not_a_failure():
    code, out, _ = run(["check", "conner", "builtin:sphere_reflection"])
    assert code == 0 and "inapplicable" in out
    code, out, _ = run(["check", "free", "builtin:sphere_reflection"])
    assert code == 0 and "inapplicable" in out


def test_failed_check_exits_one(monkeypatch):
    def broken(kind, X):
        rep = Report("broken")
        rep.add("always fails", False, "constructed", witness=[0])
        return rep
    monkeypatch.setattr(cli, "run_check", broken)
    code, out, _ = run(["check", "smith", "builtin:point(2)"])
    assert code == 1 and "[fail] always fails" in out and "witness" in out


def test_parameter_errors_exit_two():
    assert run(["check", "coprime:4", "builtin:sphere_reflection"])[0] == 2
    assert run(["homology", "builtin:nowhere"])[0] == 2
    assert run(["homology", "builtin:circle_rotation(4)"])[0] == 2
    assert run(["pages", "builtin:circle_reflection", "--coeff", "zp:3"])[0] == 2
    assert run([])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_non_coprime_is_inapplicable():
    code, out, _ = run(["check", "coprime:2", "builtin:sphere_reflection"])
    assert code == 0 and "inapplicable" in out


def test_coprime_check_via_cli():
    code, out, _ = run(["check", "coprime:3", "builtin:sphere_reflection"])
    assert code == 0 and "Z/3" in out


def test_hyper_range():
    code, out, _ = run(["hyper", "builtin:cone_of(circle_rotation(3))", "--range", "-4..0"])
    assert code == 0 and "Z/3" in out


def test_pages_infinity_text():
    code, out, _ = run(["pages", "builtin:sphere_reflection", "--page", "inf"])
    assert code == 0 and "E^inf over Z/2" in out


def test_spaces_list():
    code, out, _ = run(["spaces", "list"])
    assert code == 0 and "lens_sphere(p)" in out and "cp1_conjugation" in out


def test_convert_subdivides(monkeypatch):
    simp = emit("cross_polytope_sphere", "1", "antipodal", "--simplicial")
    code, out, _ = run(["convert", "-", "--subdivide", "1"], stdin=simp, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["cells"] == [8, 8]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "equichain.cli", "homology",
                           "builtin:circle_rotation(3)", "--which", "invariant"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "H_1 = Z, H_0 = Z" in proc.stdout
