import json
from fractions import Fraction as F

import pytest

from pierce2d.cli import main
from pierce2d.config_space import chord_system
from pierce2d.generators import random_family, regular_gon_edges
from pierce2d.geometry import Point2, set_mode
from pierce2d.io import SchemaError, family_from_dict, family_to_dict, load_family, save_family
from pierce2d.line_solver import solve_lines
from pierce2d.render import svg_string


# -- file format -----------------------------------------------------------------


def test_minimal_file(tmp_path):
    p = tmp_path / "f.json"
    p.write_text('{"sets":[{"id":"a","vertices":[[0,0]]}]}')
    fam = load_family(p)
    assert len(fam) == 1 and fam.sets[0].kind == "point"


def test_colored_file(tmp_path):
    p = tmp_path / "f.json"
    p.write_text(json.dumps({
        "sets": [{"id": "a", "vertices": [[0, 0], [1, 0], [0, 1]]}, {"id": "b", "vertices": [["1/2", "1/3"]]}],
        "colors": {"a": 1, "b": 2},
    }))
    fam = load_family(p)
    assert [len(c) for c in fam.color_classes()] == [1, 1]
    assert fam.by_id("b").vertices[0] == Point2(F(1, 2), F(1, 3))


def test_decimals_are_exact(tmp_path):
    p = tmp_path / "f.json"
    p.write_text('{"sets":[{"id":"a","vertices":[[0.1,0.2]]}]}')
    assert load_family(p).sets[0].vertices[0] == Point2(F(1, 10), F(1, 5))
    set_mode("float")
    assert load_family(p).sets[0].vertices[0] == Point2(0.1, 0.2)


@pytest.mark.parametrize(
    "data, where",
    [
        ({"sets": [{"id": "a", "vertices": [[0, 0]]}, {"id": "a", "vertices": [[1, 1]]}]}, "sets[1].id"),
        ({"sets": [{"id": "a", "vertices": [[0, 0, 1]]}]}, "sets[0].vertices[0]"),
        ({"sets": [{"id": "a", "vertices": [["x", 0]]}]}, "sets[0].vertices[0]"),
        ({"sets": [{"id": "a", "vertices": []}]}, "sets[0].vertices"),
        ({"sets": [{"vertices": [[0, 0]]}]}, "sets[0].id"),
        ({"sets": [{"id": "a", "vertices": [[0, 0], [2, 0], [1, 1], [2, 2], [0, 2]]}]}, "sets[0]"),
        ({"sets": [], "extra": 1}, "unknown"),
        ({"sets": [{"id": "a", "vertices": [[0, 0]]}], "colors": {"b": 1}}, "colo"),
    ],
)
def test_schema_errors(data, where):
    with pytest.raises(SchemaError, match=__import__("re").escape(where)):
        family_from_dict(data)


def test_decode_error_has_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"sets": [\n  {"id": "a",, }]}')
    with pytest.raises(SchemaError, match="line 2"):
        load_family(p)


@pytest.mark.parametrize("seed", range(5))
def test_round_trip(tmp_path, seed):
    fam = random_family(seed, 5, rainbow=2 if seed % 2 else 0)
    p = tmp_path / "f.json"
    save_family(fam, p)
    back = load_family(p)
    assert back.sets == fam.sets and back.colors == fam.colors
    assert family_to_dict(back) == family_to_dict(fam)


# -- SVG -------------------------------------------------------------------------


def test_svg_gon_with_lines():
    gon = regular_gon_edges(2)
    res = solve_lines(gon)
    svg = svg_string(gon, lines=list(res.lines))
    assert svg.count('<line data-id="e') == 5
    assert svg.count("<line data-line=") == 2
    assert svg == svg_string(gon, lines=list(res.lines))


def test_svg_chords_through_origin():
    cs = chord_system([F(1, 4)] * 4)
    svg = svg_string(regular_gon_edges(1), chords=cs)
    assert '<line data-chord="0" x1="1" y1="0" x2="-1" y2="0"/>' in svg
    assert '<line data-chord="1" x1="0" y1="1" x2="0" y2="-1"/>' in svg
    assert svg.count("data-region=") == 4


def test_svg_family_only():
    svg = svg_string(random_family(3, 4))
    assert "data-region" not in svg and "data-line" not in svg and "data-point" not in svg
    assert svg.count("<polygon data-id=") == 4


# -- CLI ---------------------------------------------------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_workflow(tmp_path, capsys):
    f = tmp_path / "gon.json"
    assert run(capsys, "gen", "--regular-gon", "2", "-o", str(f))[0] == 0
    code, out, _ = run(capsys, "lines", str(f))
    rep = json.loads(out)
    assert code == 0 and rep["size"] == 2 and rep["nu"] == 2 and rep["bound"] == 2
    assert set(rep["certificate"]) == {f"e{i}" for i in range(5)} and "elapsed_s" in rep
    code, out, _ = run(capsys, "points", str(f), "--pipeline")
    rep = json.loads(out)
    assert code == 0 and rep["r"] == 5 and rep["bound"] == 12 and rep["bound_satisfied"]
    code, out, _ = run(capsys, "points", str(f))
    assert json.loads(out)["size"] == 3
    code, out, _ = run(capsys, "oracle", "lines", str(f))
    assert json.loads(out)["size"] == 2
    code, out, _ = run(capsys, "check", str(f))
    assert code == 0 and "FAIL" not in out
    r = tmp_path / "rep.json"
    run(capsys, "lines", str(f), "-o", str(r))
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for svg in (a, b):
        assert run(capsys, "render", str(f), "-o", str(svg), "--x", "1/4,1/4,1/8,3/8", "--report", str(r))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().count("data-line=") == 2


def test_cli_colorful(tmp_path, capsys):
    f = tmp_path / "rb.json"
    run(capsys, "gen", "--random", "3", "6", "--rainbow", "4", "-o", str(f))
    code, out, _ = run(capsys, "colorful", str(f))
    rep = json.loads(out)
    assert code == 0 and rep["size"] <= 2 and rep["rainbow_checked"]


def test_cli_exit_codes(tmp_path, capsys):
    dup = tmp_path / "dup.json"
    dup.write_text('{"sets":[{"id":"a","vertices":[[0,0]]},{"id":"a","vertices":[[1,0]]}]}')
    assert run(capsys, "lines", str(dup))[0] == 4
    assert run(capsys, "lines", str(tmp_path / "missing.json"))[0] == 4
    iso = tmp_path / "iso.json"
    iso.write_text('{"sets":[{"id":"a","vertices":[[0,0],[1,0],[0,1]]},{"id":"b","vertices":[[5,5],[6,5],[5,6]]}]}')
    code, _, err = run(capsys, "points", str(iso), "--pipeline")
    assert code == 2 and "isolated" in err
    gon = tmp_path / "gon.json"
    run(capsys, "gen", "--regular-gon", "2", "-o", str(gon))
    assert run(capsys, "lines", str(gon), "--k", "0")[0] == 2
    assert run(capsys, "lines", str(gon), "--k", "0", "--method", "kkm", "--nmax", "16")[0] == 3
    assert run(capsys, "colorful", str(gon))[0] == 2
    big = tmp_path / "big.json"
    run(capsys, "gen", "--random", "1", "17", "-o", str(big))
    assert run(capsys, "oracle", "points", str(big))[0] == 3
