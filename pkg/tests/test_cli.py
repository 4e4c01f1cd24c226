import json
import subprocess
import sys
from fractions import Fraction

import pytest

from bisemikit import __version__
from bisemikit.bipoints import AlgebraicBipoint
from bisemikit.cli import main
from bisemikit.harness import ConformanceReport
from bisemikit.matrices import BilinearMatrixPair, GaussFactors


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_decompose_identity(tmp_path, capsys):
    path = write(tmp_path, "id.json", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    code, out, _ = run(["decompose", path], capsys)
    assert code == 0
    d = json.loads(out)
    ident = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
    for key in ("xi_R", "delta", "xi_L", "T_R", "T_L"):
        assert d[key] == ident
    assert d["residual"] == 0


def test_decompose_zero_minor(tmp_path, capsys):
    path = write(tmp_path, "swap.json", [[0, 1], [1, 0]])
    code, out, _ = run(["decompose", path], capsys)
    assert code == 1
    d = json.loads(out)
    assert d["error"] == "DecompositionUndefined"
    assert d["location"] == {"index": 1}
    assert d["detail"]


def test_decompose_round_trips_through_library(tmp_path, capsys):
    path = write(tmp_path, "a.json", [["2", "1"], ["4", "3"]])
    code, out, _ = run(["decompose", path, "--rule", "delta-left"], capsys)
    d = json.loads(out)
    f = GaussFactors.from_dict(d)
    p = BilinearMatrixPair.from_dict(d)
    assert f.xi_L == ((1, Fraction(1, 2)), (0, 1))
    assert p.product() == ((2, 1), (4, 3))


def test_decompose_csv_and_sqrt(tmp_path, capsys):
    path = write(tmp_path, "a.csv", "4,2\n8,5\n")
    code, out, _ = run(["decompose", path, "--rule", "delta-sqrt"], capsys)
    assert code == 0
    p = BilinearMatrixPair.from_dict(json.loads(out))
    assert p.T_R == ((2, 0), (4, 1))


def test_decompose_sqrt_unavailable(tmp_path, capsys):
    path = write(tmp_path, "a.json", [[2, 1], [4, 3]])
    code, out, _ = run(["decompose", path, "--rule", "delta-sqrt"], capsys)
    assert code == 1 and json.loads(out)["error"] == "SqrtUnavailable"


def test_decompose_complex_backend(tmp_path, capsys):
    path = write(tmp_path, "c.json", [[{"re": 2, "im": 1}, 1], [1, 3]])
    code, out, _ = run(["decompose", path, "--backend", "complex", "--rule", "delta-sqrt", "--order", "column"], capsys)
    assert code == 0
    assert json.loads(out)["residual"] <= 1e-12


def test_decompose_output_file(tmp_path, capsys):
    path = write(tmp_path, "a.json", [[2, 1], [4, 3]])
    dest = tmp_path / "out.json"
    code, out, _ = run(["decompose", path, "-o", str(dest)], capsys)
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["n"] == 2


def test_bipoint(tmp_path, capsys):
    r = write(tmp_path, "r.json", [-1, -2])
    l = write(tmp_path, "l.json", [1, 2])
    code, out, _ = run(["bipoint", r, l], capsys)
    d = json.loads(out)
    assert code == 0 and d["n"] == 2
    bp = AlgebraicBipoint.from_dict(d)
    assert bp.entries == ((-1, -2), (-2, -4))
    assert d["markers"] == [["D", "OD"], ["OD", "D"]]


def test_bipoint_length_mismatch(tmp_path, capsys):
    code, out, _ = run(["bipoint", write(tmp_path, "r.json", [1]), write(tmp_path, "l.json", [1, 2])], capsys)
    assert code == 1 and json.loads(out)["error"] == "DimensionMismatch"


@pytest.mark.parametrize(
    "mode, stage, value, trace",
    [
        ("diag", "mixed", "-5", []),
        ("ext", "mixed", "-9", []),
        ("offdiag", "mixed", "-4", []),
        ("diag", "external", "5", ["p_L"]),
        ("diag", "internal", "5", ["p_L", "B"]),
    ],
)
def test_inner_rational(tmp_path, capsys, mode, stage, value, trace):
    r = write(tmp_path, "r.json", [-1, -2])
    l = write(tmp_path, "l.json", [1, 2])
    code, out, _ = run(["inner", r, l, "--backend", "rational", "--mode", mode, "--stage", stage], capsys)
    d = json.loads(out)
    assert code == 0 and d["value"] == value and d["trace"] == trace


def test_inner_complex(tmp_path, capsys):
    # right vector conj(x) for x = (1, i): the internal pipeline reproduces <x, x> = 2
    r = write(tmp_path, "r.json", [1, {"re": 0, "im": -1}])
    l = write(tmp_path, "l.json", [1, {"re": 0, "im": 1}])
    code, out, _ = run(["inner", r, l], capsys)
    assert json.loads(out)["value"] == {"re": 2.0, "im": 0.0}


def test_inner_with_metric(tmp_path, capsys):
    r = write(tmp_path, "r.json", [-2, -4])
    l = write(tmp_path, "l.json", [1, 1])
    g = write(tmp_path, "g.json", [[2, 0], [0, 4]])
    code, out, _ = run(["inner", r, l, "--backend", "rational", "--metric", g], capsys)
    assert json.loads(out)["value"] == "2"


def test_inner_dimension_error(tmp_path, capsys):
    code, out, _ = run(["inner", write(tmp_path, "r.json", [1]), write(tmp_path, "l.json", [1, 2])], capsys)
    assert code == 1 and json.loads(out)["error"] == "DimensionMismatch"


@pytest.mark.parametrize("group", ["z2", "z3", "z4", "z2xz2", "s3"])
def test_hopf_groups(capsys, group):
    code, out, _ = run(["hopf", "--group", group], capsys)
    d = json.loads(out)
    assert code == 0 and d["passed"]


def test_hopf_table_file(tmp_path, capsys):
    path = write(tmp_path, "t.json", {"table": [[0, 1], [1, 0]]})
    code, out, _ = run(["hopf", "--group", f"table:{path}"], capsys)
    assert code == 0 and json.loads(out)["dim"] == 2


def test_hopf_invalid_table(tmp_path, capsys):
    path = write(tmp_path, "t.json", [[0, 1], [1, 1]])
    code, out, _ = run(["hopf", "--group", f"table:{path}"], capsys)
    assert code == 1 and json.loads(out)["error"] == "InvalidGroupTable"


def test_hopf_star_needs_complex(capsys):
    code, _, err = run(["hopf", "--group", "s3", "--star"], capsys)
    assert code == 2 and "complex" in err
    code, out, _ = run(["hopf", "--group", "s3", "--star", "--backend", "complex"], capsys)
    assert code == 0 and json.loads(out)["star"]["passed"]


def test_check_report_parses(capsys):
    code, out, _ = run(["check", "--structure", "bisemiring", "--samples", "50", "--seed", "7"], capsys)
    assert code == 0
    report = ConformanceReport.from_dict(json.loads(out))
    assert report.passed and report.seed == 7
    assert report.to_json() + "\n" == out


def test_check_is_deterministic(capsys):
    argv = ["check", "--structure", "bisemiring", "--samples", "100", "--seed", "7"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b


def test_check_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("BISEMIKIT_SEED", "13")
    _, out, _ = run(["check", "--structure", "semigroup", "--samples", "5"], capsys)
    assert json.loads(out)["seed"] == 13
    monkeypatch.setenv("BISEMIKIT_SEED", "nope")
    code, _, _ = run(["check", "--structure", "semigroup"], capsys)
    assert code == 2


def test_check_unknown_law(capsys):
    code, _, err = run(["check", "--structure", "semiring", "--laws", "bogus"], capsys)
    assert code == 2 and "bogus" in err


def test_transform(tmp_path, capsys):
    path = write(tmp_path, "f.json", {"samples_R": [5, 5], "samples_L": [{"re": 1, "im": 1}, 2], "weights": ["1/2", "1/2"]})
    code, out, _ = run(["transform", path], capsys)
    d = json.loads(out)
    assert code == 0
    assert d["l2"] == 3.0
    assert d["l11"] == pytest.approx(5 * (2**0.5 + 2) / 2)
    assert d["squared_samples"]["right"][0] == {"re": 1.0, "im": -1.0}


def test_transform_bad_weights(tmp_path, capsys):
    path = write(tmp_path, "f.json", {"samples_R": [1], "samples_L": [1], "weights": [0]})
    code, out, _ = run(["transform", path], capsys)
    assert code == 1 and json.loads(out)["error"] == "InvalidGrid"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["decompose"],
        ["decompose", "x.json", "--rule", "delta-right"],
        ["check", "--structure", "group"],
        ["check", "--structure", "semiring", "--samples", "0"],
        ["check", "--structure", "semiring", "--unknown-flag"],
        ["hopf", "--backend", "quaternion"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_missing_and_malformed_files(tmp_path, capsys):
    assert run(["decompose", str(tmp_path / "nope.json")], capsys)[0] == 2
    assert run(["decompose", write(tmp_path, "bad.json", "{not json")], capsys)[0] == 2
    assert run(["decompose", write(tmp_path, "rect.json", [[1, 2]])], capsys)[0] == 2


def test_version_and_help(capsys):
    code, out, _ = run(["--version"], capsys)
    assert code == 0 and __version__ in out
    code, out, _ = run(["--help"], capsys)
    assert code == 0 and "decompose" in out


def test_module_entry_point_subprocess(tmp_path):
    cmd = [sys.executable, "-m", "bisemikit", "check", "--structure", "bisemiring", "--samples", "100", "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["passed"]
