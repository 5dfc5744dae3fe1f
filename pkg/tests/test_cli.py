import json
import subprocess
import sys

import numpy as np
import pytest

from plismetric.bodies import Ball, LinearImage, MinkowskiSum, Polytope, Translate, support
from plismetric.cli import main
from plismetric.io import MalformedBody, body_from_dict, body_to_dict, load_points
from plismetric.strongconv import ArcBody2D, quadratic_profile, strong_hull_2d

SQUARE = {"type": "polytope", "vertices": [[1, 1], [-1, 1], [-1, -1], [1, -1]]}
ELLIPSE = {"type": "linimage", "matrix": [[1, 0], [0, 0.5]], "inner": {"type": "ball", "center": [0, 0], "radius": 1}}


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return [r.split("\t") for r in text.splitlines() if not r.startswith("#")]


def test_body_roundtrip():
    bodies = [
        Polytope([[0, 0], [1, 0], [0, 1]]),
        Ball([1, 2], 0.5),
        LinearImage([[1, 0], [0, 0.5]], Ball([0, 0], 1)),
        MinkowskiSum(Ball([0, 0], 1), Polytope([[0, 0], [1, 1]])),
        Translate(Ball([0, 0], 1), [2, 3]),
        strong_hull_2d([[0, 0], [1, 0], [0.5, 0.4]], 1.0),
    ]
    p = np.array([0.6, 0.8])
    for b in bodies:
        back = body_from_dict(json.loads(json.dumps(body_to_dict(b))))
        assert type(back) is type(b)
        assert support(back, p) == pytest.approx(support(b, p), abs=1e-12)


def test_malformed_records():
    for rec in ({}, {"type": "ball"}, {"type": "polytope", "vertices": "x"}, {"type": "cone"},
                {"type": "arcbody", "radius": 1, "arcs": [{"center": [0, 0], "from": 0, "to": 1}]}):
        with pytest.raises(MalformedBody):
            body_from_dict(rec)


def test_points_file_formats(files):
    pts, radii = load_points(files("a.json", [[0, 0], [1, 0]]))
    assert pts.shape == (2, 2) and radii is None
    pts, radii = load_points(files("b.json", {"points": [[0, 0], [1, 0]], "radii": [0.1, 0]}))
    assert list(radii) == [0.1, 0]
    with pytest.raises(MalformedBody):
        load_points(files("c.json", {"points": [[0, 0, 0]]}))


def test_dist_balls(files, capsys):
    a = files("a.json", {"type": "ball", "center": [0, 0], "radius": 1})
    b = files("b.json", {"type": "ball", "center": [3, 0], "radius": 2})
    code, out, _ = run(["dist", "--metric", "both", a, b], capsys)
    assert code == 0
    table = rows(out)
    assert table[1][:3] == ["hausdorff", "4", "exact"]
    assert table[2][:3] == ["plis", "4", "exact"]


def test_dist_translated_square(files, capsys):
    a = files("a.json", SQUARE)
    b = files("b.json", {"type": "translate", "inner": SQUARE, "offset": [0.3, -0.4]})
    code, out, _ = run(["dist", "--metric", "plis", "--exact", a, b], capsys)
    assert code == 0 and rows(out)[1][:3] == ["plis", "0.5", "exact"]


def test_dist_exit_codes(files, capsys):
    e = files("e.json", ELLIPSE)
    s = files("s.json", SQUARE)
    assert run(["dist", "--metric", "plis", "--exact", e, s], capsys)[0] == 4
    b3 = files("b3.json", {"type": "ball", "center": [0, 0, 0], "radius": 1})
    assert run(["dist", s, b3], capsys)[0] == 3
    bad = files("bad.json", "{not json")
    assert run(["dist", bad, s], capsys)[0] == 2
    assert run(["dist", files("u.json", {"type": "blob"}), s], capsys)[0] == 2


def test_steiner(files, capsys):
    s = files("s.json", SQUARE)
    code, out, _ = run(["steiner", s, "--method", "exact"], capsys)
    assert code == 0 and rows(out)[1] == ["exact", "0,0"]
    e = files("e.json", ELLIPSE)
    assert run(["steiner", e, "--method", "exact"], capsys)[0] == 4
    code, out, _ = run(["steiner", e, "--method", "quadrature", "--samples", "4000"], capsys)
    x, y = map(float, rows(out)[1][1].split(","))
    assert abs(x) < 1e-6 and abs(y) < 1e-6


def test_strhull(files, capsys, tmp_path):
    pts = files("p.json", [[0, 0], [1, 0]])
    code, out, _ = run(["strhull", "--radius", "1", pts], capsys)
    assert code == 0
    body = body_from_dict(json.loads(out))
    assert isinstance(body, ArcBody2D)
    np.testing.assert_allclose(body.face([0.0, 1.0], 1e-9).points[0], [0.5, 1 - np.sqrt(3) / 2], atol=1e-9)
    dest = tmp_path / "hull.json"
    code, out, _ = run(["strhull", "--radius", "1", pts, "-o", str(dest)], capsys)
    assert code == 0 and dest.exists()
    far = files("f.json", [[0, 0], [5, 0]])
    assert run(["strhull", "--radius", "1", far], capsys)[0] == 5


def test_modulus(files, capsys):
    s = files("s.json", SQUARE)
    code, out, _ = run(["modulus", s, "--eps-grid", "0.5,1.0"], capsys)
    assert code == 0
    assert out.splitlines() == ["eps,delta", "0.5,0", "1,0"]
    e = files("b3.json", {"type": "ball", "center": [0, 0, 0], "radius": 1})
    assert run(["modulus", e], capsys)[0] == 3


def test_bound(files, capsys):
    prof = files("q.csv", quadratic_profile(1.0, 2.0).to_csv())
    code, out, _ = run(["bound", "--h", "0.02", "--profile", prof, "--diam", "2"], capsys)
    assert code == 0 and rows(out)[1][-1] == "0.42"
    code, out, _ = run(["bound", "--h", "0.02", "--radius", "1", "--diam", "2"], capsys)
    assert rows(out)[1][-1] == "0.42"
    assert run(["bound", "--h", "0.02", "--diam", "2"], capsys)[0] == 2


def test_repro_and_exit_codes(capsys):
    code, out, _ = run(["repro", "ellipses"], capsys)
    assert code == 0 and rows(out)[-1][-1] == "PASS"
    assert run(["repro", "no-such-suite"], capsys)[0] == 2


def test_reports_are_byte_identical(files):
    a = files("a.json", SQUARE)
    b = files("b.json", ELLIPSE)
    cmd = [sys.executable, "-m", "plismetric", "dist", a, b, "--seed", "3"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and b"lower_bound" in first
