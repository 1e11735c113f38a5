import io
import json

import pytest

from royden.cli import main, parse_complex


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("text, value", [("2", 2), ("1+2i", 1 + 2j), ("-3.5i", -3.5j), ("i", 1j), ("1e-3-2j", 1e-3 - 2j)])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_norm_both_methods_agree():
    c1, o1 = run("norm", "--g", "1", "--h", "-1,0,0,0,1", "--method", "direct")
    c2, o2 = run("norm", "--g", "1", "--h", "-1,0,0,0,1")
    assert c1 == c2 == 0
    d, p = json.loads(o1), json.loads(o2)
    assert d["norm"] > 0 and d["certified"]
    assert abs(d["norm"] - p["norm"]) <= 1e-5 * p["norm"] + d["error"]
    assert set(p) == {"norm", "error", "genus", "orientation_flipped"}


def test_norm_from_json_and_dump(tmp_path):
    f = tmp_path / "q.json"
    f.write_text(json.dumps({"g": [[1, 0]], "h": [[-1, 0], [0, 0], [0, 0], [0, 0], [1, 0]]}))
    paths = tmp_path / "paths.json"
    code, out = run("norm", "--input", str(f), "--dump-paths", str(paths))
    assert code == 0
    assert len(json.loads(paths.read_text())["points"]) == 4


@pytest.mark.parametrize(
    "argv, code",
    [
        (("norm", "--g", "1", "--h", "1,1"), 2),
        (("norm", "--g", "1,x", "--h", "1,1"), 1),
        (("norm", "--g", "1"), 1),
        (("norm", "--g", "1", "--h", "-1,0,0,0,1", "--quad-tol", "3"), 2),
        (("sphere", "--h", "-1,0,0,0,1", "--samples", "8"), 2),
        (("sphere", "--h", "24,52,-8,-12,-2,1", "--samples", "4"), 2),
        (("bogus",), 1),
    ],
)
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_sphere_plot_pipeline(tmp_path):
    csv_path = tmp_path / "s.csv"
    code, _ = run("sphere", "--h", "24,52,-8,-12,-2,1", "--samples", "8", "-o", str(csv_path))
    assert code == 0
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "theta,r,d1,d2,d3,near_singular" and len(rows) == 9

    code, again = run("sphere", "--h", "24,52,-8,-12,-2,1", "--samples", "8")
    assert again == csv_path.read_text()  # deterministic

    code, deriv = run("derivatives", str(csv_path))
    assert code == 0 and deriv == csv_path.read_text()

    for kind in ("polar", "derivatives"):
        svg = tmp_path / f"{kind}.svg"
        assert run("plot", str(csv_path), "--kind", kind, "-o", str(svg))[0] == 0
        assert svg.read_text().startswith("<svg")
    assert (tmp_path / "polar.svg").read_text().count("stroke-dasharray") == 6


def test_plot_schema_mismatch(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    assert run("plot", str(bad), "-o", str(tmp_path / "x.svg"))[0] == 1


def test_roots_command():
    code, out = run("roots", "--p", "-8,12,-6,1")
    assert code == 0
    assert json.loads(out)["roots"] == [{"re": 2.0, "im": 0.0, "multiplicity": 3}]
