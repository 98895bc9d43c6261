import json

import pytest

from conftest import DATA, GOLDEN
from make_golden import INPUTS, VARIANTS, argv_for, run
from posetdiff.cli import main


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_exit_codes(capsys, tmp_path):
    assert cli(capsys, "validate", DATA / "two_blocks.gdl")[0] == 0
    code, out, _ = cli(capsys, "validate", DATA / "bad.gdl", "--format", "json")
    assert code == 2
    payload = json.loads(out)
    assert payload["shared_atoms"] == ["a", "b"]
    assert payload["blocks"] == [0, 1]
    assert cli(capsys, "validate", tmp_path / "nofile.gdl")[0] == 3


def test_parse_error_reports_line(capsys):
    code, _, err = cli(capsys, "validate", DATA / "garbled.gdl")
    assert code == 3
    assert "garbled.gdl:2:" in err


def test_validate_reports_non_jordan_holder(capsys):
    code, out, _ = cli(capsys, "validate", DATA / "skewed.poset")
    assert code == 0
    assert "not Jordan-Holder at a < b" in out


def test_check_json(capsys):
    code, out, _ = cli(capsys, "check", DATA / "two_blocks.gdl", "--format", "json")
    assert code == 0
    report = json.loads(out)
    for key in ("grading_shift", "d_squared", "D_squared", "unit_annihilated", "leibniz"):
        assert report[key]["passed"]
    assert report["basis_size"] == 22


def test_check_triangle(capsys):
    code, out, _ = cli(capsys, "check", DATA / "triangle.cx")
    assert code == 0
    assert "RESULT: all checks pass" in out


def test_check_cap_overflow(capsys):
    code, _, err = cli(capsys, "check", "--cap", "10", DATA / "boolean5.gdl")
    assert code == 4
    assert "overflow" in err
    assert cli(capsys, "check", "--cap", "10", DATA / "simplex4.cx")[0] == 4
    assert cli(capsys, "check", "--cap", "10", DATA / "two_blocks.gdl")[0] == 0
    assert cli(capsys, "check", "--cap", "9", DATA / "two_blocks.gdl")[0] == 4


def test_check_poset_needs_border(capsys):
    code, _, err = cli(capsys, "check", DATA / "diamond.poset")
    assert code == 64
    assert "--border" in err
    assert cli(capsys, "check", DATA / "diamond.poset", "--border", DATA / "diamond.border")[0] == 0


def test_check_non_jordan_holder_poset(capsys, tmp_path):
    border = tmp_path / "empty.border"
    border.write_text("# no entries\n")
    assert cli(capsys, "check", DATA / "skewed.poset", "--border", border)[0] == 2


def test_check_failing_axioms_exit_1(capsys, tmp_path):
    border = tmp_path / "bad.border"
    # d|b> = |x> + |y> with d|x> = d|y> = |a> gives d^2|b> = 2|a>
    border.write_text("d b x 1\nd b y 1\nd x a 1\nd y a 1\n")
    code, out, _ = cli(capsys, "check", DATA / "diamond.poset", "--border", border, "--format", "json")
    assert code == 1
    report = json.loads(out)
    assert not report["d_squared"]["passed"]
    assert report["d_squared"]["counterexample"]["column"] == "b"


def test_export_targets(capsys):
    code, out, _ = cli(capsys, "export", DATA / "two_blocks.gdl", "--json", "poset")
    assert code == 0
    data = json.loads(out)
    assert data["size"] == 10 and len(data["elements"]) == 10
    assert ["a", "a∨c"] in data["covers"]
    code, out, _ = cli(capsys, "export", DATA / "triangle.cx", "--dot", "hasse")
    assert code == 0
    assert out.count(";") - 2 == 7 + 9  # nodes and cover edges
    assert cli(capsys, "export", DATA / "two_blocks.gdl", "--json", "nonsense")[0] == 64
    assert cli(capsys, "export", DATA / "two_blocks.gdl")[0] == 64


def test_usage_errors(capsys, tmp_path):
    assert cli(capsys, "frobnicate", DATA / "two_blocks.gdl")[0] == 64
    unknown = tmp_path / "input.txt"
    unknown.write_text("block a b c\n")
    assert cli(capsys, "validate", unknown)[0] == 64
    assert cli(capsys, "validate", unknown, "--kind", "greechie")[0] == 0


def test_vertex_order_file(capsys, tmp_path):
    order = tmp_path / "order.txt"
    order.write_text("e d c b a\n")
    code, out, _ = cli(
        capsys, "export", DATA / "two_blocks.gdl", "--json", "border", "--vertex-order", order
    )
    assert code == 0
    columns = {c["element"]: c["image"] for c in json.loads(out)["columns"]}
    assert columns["a∨c"] == [{"element": "a", "coeff": 1}, {"element": "c", "coeff": -1}]


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = cli(capsys, "check", DATA / "triangle.cx", "--format", "json", "-o", target)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["all_passed"]


@pytest.mark.parametrize("name", INPUTS)
@pytest.mark.parametrize("variant", sorted(VARIANTS))
def test_golden(name, variant):
    code, text = run(argv_for(name, variant))
    assert code == 0
    assert text == (GOLDEN / f"{name}.{variant}").read_text(encoding="utf-8")
