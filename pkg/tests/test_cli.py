import json

import pytest

from conftest import shifted_triangles, two_equation_system
from mvone import jsonio
from mvone.cli import main
from mvone.mixed_volume import PolytopeTuple
from mvone.lattice import convex_hull


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)
    return _write


def test_certify_shifted_triangles(write, capsys):
    path = write("tri.json", jsonio.tuple_to_json(shifted_triangles((1, 2, 3))))
    assert main(["certify", "--input", path]) == 0
    cert = jsonio.certificate_from_json(json.loads(capsys.readouterr().out))
    assert cert.translations == ((0, 0, 0), (0, 0, 0), (-1, -2, -3))
    assert set(cert.simplex.vertices) == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_certify_failure_reports_stage(write, capsys):
    s = [(0, 0), (1, 0), (0, 1)]
    big = [(0, 0), (2, 0), (0, 2)]
    path = write("mv2.json", jsonio.tuple_to_json(PolytopeTuple.from_points([s, big])))
    assert main(["certify", "-i", path]) == 2
    out = json.loads(capsys.readouterr().out)
    assert out["certified"] is False and out["stage"]


def test_count_simplices(capsys):
    assert main(["count-simplices", "3"]) == 0
    assert capsys.readouterr().out.strip() == "enumerated 32, formula 32"


def test_count_simplices_needs_n(capsys):
    assert main(["count-simplices"]) == 1


def test_mv_of_repeated_segment(write, capsys):
    seg = convex_hull([(0, 0), (1, 0)])
    path = write("seg.json", jsonio.tuple_to_json(PolytopeTuple(2, (seg, seg))))
    assert main(["mv", "-i", path]) == 2
    assert capsys.readouterr().out.strip() == "0"


def test_mv_positive(write, capsys):
    path = write("tri.json", jsonio.tuple_to_json(shifted_triangles((0, 0, 0))))
    assert main(["mv", "-i", path]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_essential_output(write, capsys):
    seg = convex_hull([(0, 0), (1, 0)])
    path = write("seg.json", jsonio.tuple_to_json(PolytopeTuple(2, (seg, seg))))
    assert main(["essential", "-i", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"essential": False, "linearly_independent": False,
                   "minimal_deficient_subtuple": {"indices": [0, 1], "sum_dim": 1}}


def test_decompose_round_trips(write, capsys):
    a = PolytopeTuple.from_points([[(0, 0), (1, 1)], [(0, 0), (1, 1), (0, 1), (1, 2)]])
    path = write("two.json", jsonio.tuple_to_json(a))
    assert main(["decompose", "-i", path]) == 0
    d = jsonio.decomposition_from_json(json.loads(capsys.readouterr().out))
    assert d.sizes == (1, 1)


def test_solve_writes_output_file(write, tmp_path, capsys):
    path = write("sys.json", jsonio.system_to_json(two_equation_system(1, 2, [3, 1], [5, -1])))
    out = tmp_path / "out.json"
    assert main(["solve", "-i", path, "-o", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["point"] == ["11/10", "-5/11"]
    assert jsonio.plan_from_json(obj["plan"]).sizes == (1, 1)
    assert capsys.readouterr().out == ""


def test_solve_non_generic_exit_code(write, capsys):
    path = write("sys.json", jsonio.system_to_json(two_equation_system(1, 2, [3, 1], [1, 2])))
    assert main(["solve", "-i", path]) == 2
    assert "singular" in capsys.readouterr().err


def test_malformed_json_reports_position(write, capsys):
    path = write("bad.json", '{"dim": 2,\n "polytopes": [}')
    assert main(["mv", "-i", path]) == 1
    assert "line 2" in capsys.readouterr().err


def test_bad_field_reports_path(write, capsys):
    path = write("bad.json", {"dim": 2, "polytopes": [{"dim": 2, "vertices": [[0, "x"]]}]})
    assert main(["mv", "-i", path]) == 1
    assert "polytopes[0].vertices[0][1]" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["mv", "-i", "/nonexistent/file.json"]) == 1


def test_dimension_mismatch(write, capsys):
    path = write("bad.json", {"dim": 2, "polytopes": [{"dim": 2, "vertices": [[0, 0]]}]})
    assert main(["mv", "-i", path]) == 1
    assert "needs 2 polytopes" in capsys.readouterr().err


def test_unknown_command_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1


def test_selftest_deterministic(capsys):
    assert main(["selftest", "--seed", "3", "--rounds", "4"]) == 0
    first = capsys.readouterr().out
    assert main(["selftest", "--seed", "3", "--rounds", "4"]) == 0
    assert capsys.readouterr().out == first
    assert first.count("PASS") == 4
