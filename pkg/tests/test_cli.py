"""End-to-end CLI tests: commands, exit codes, and output formats."""

import json

import numpy as np
import pytest

from smallpoly import b_family, measure, perimeter, polygon_to_json, q_family
from smallpoly.cli import (
    EXIT_CHECK,
    EXIT_OK,
    EXIT_USAGE,
    TableSpec,
    UsageError,
    main,
    render_svg,
    verify_checks,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_writes_polygon_json(tmp_path, capsys):
    out = tmp_path / "b16.json"
    code, _, _ = run(capsys, "build", "--family", "b", "--n", "16",
                     "--out", str(out))
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["n"] == 16
    assert doc["family"] == "b"
    assert doc["vertices"][0] == [0, 0]
    assert len(doc["vertices"]) == 16


def test_build_reuleaux_requires_m(capsys):
    code, _, err = run(capsys, "build", "--family", "reuleaux", "--n", "6")
    assert code == EXIT_USAGE
    assert "--m" in err
    code, out, _ = run(capsys, "build", "--family", "reuleaux", "--n", "6",
                       "--m", "3")
    assert code == EXIT_OK
    assert json.loads(out)["n"] == 6


def test_build_rejects_bad_parameters(capsys):
    code, _, err = run(capsys, "build", "--family", "b", "--n", "12")
    assert code == EXIT_USAGE
    assert "power" in err or "2^s" in err


def test_measure_round_trips_library_values(tmp_path, capsys):
    path = tmp_path / "b8.json"
    path.write_text(polygon_to_json(b_family(8)))
    code, out, _ = run(capsys, "measure", str(path))
    assert code == EXIT_OK
    doc = json.loads(out)
    ref = measure(b_family(8))
    # bit-exact round trip through the 17-significant-digit JSON
    assert doc["perimeter"] == ref.perimeter
    assert doc["width"] == ref.width
    assert doc["width"] == pytest.approx(0.9776087734, abs=5e-11)
    assert len(doc["diameter_edges"]) == 8


def test_measure_q8_diameter_edges(tmp_path, capsys):
    path = tmp_path / "q8.json"
    path.write_text(polygon_to_json(q_family(8)))
    code, out, _ = run(capsys, "measure", str(path))
    assert code == EXIT_OK
    assert len(json.loads(out)["diameter_edges"]) == 8


def test_measure_rejects_non_convex_and_malformed(tmp_path, capsys):
    bad = tmp_path / "chevron.json"
    bad.write_text('{"family": "raw", "params": {}, '
                   '"vertices": [[0,0],[1,0],[0.5,0.2],[0.5,1]]}')
    code, _, err = run(capsys, "measure", str(bad))
    assert code == EXIT_CHECK
    assert "convex" in err
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{]")
    code, _, _ = run(capsys, "measure", str(garbage))
    assert code == EXIT_CHECK
    code, _, _ = run(capsys, "measure", str(tmp_path / "missing.json"))
    assert code == EXIT_CHECK


def test_table_t1_golden_rows(capsys):
    code, out, _ = run(capsys, "table", "--id", "T1_perimeters")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].startswith("n,")
    row32 = lines[3].split(",")
    assert row32 == ["32", "3.1365484905", "3.1402809876", "3.1403234211",
                     "3.1403306141", "3.1403310687", "3.1403311570", "0.8374"]
    row128 = lines[5].split(",")
    assert row128[5] == "3.141513801123"
    assert row128[6] == "3.141513801144"
    assert row128[7] == "0.9606"


def test_table_t3_golden_row(capsys):
    code, out, _ = run(capsys, "table", "--id", "3")
    assert code == EXIT_OK
    row64 = out.strip().splitlines()[4].split(",")
    assert row64[-1] == "0.8870"
    row128 = out.strip().splitlines()[5].split(",")
    assert row128[-1] == "0.9428"


def test_table_digits_override(capsys):
    code, out, _ = run(capsys, "table", "--id", "2", "--digits", "4",
                       "--n", "8")
    assert code == EXIT_OK
    assert out.strip().splitlines()[1] == "8,0.9239,0.9749,0.9776,0.9808,0.4577"


def test_table_t4_row8(capsys):
    code, out, _ = run(capsys, "table", "--id", "4", "--n", "8")
    assert code == EXIT_OK
    row = out.strip().splitlines()[1].split(",")
    assert row == ["8", "3.1195976652", "3.1210621230", "3.1211471341",
                   "3.1214451523", "0.2219"]


def test_table_t5_t6_angle_rows(capsys):
    code, out, _ = run(capsys, "table", "--id", "5", "--n", "8")
    assert code == EXIT_OK
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert [r[3] for r in rows] == ["0.435281", "0.368535", "0.398447"]
    code, out, _ = run(capsys, "table", "--id", "6", "--n", "8")
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert [r[3] for r in rows] == ["0.301375", "0.480058", "0.355776",
                                    "0.433588"]


def test_table_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "table", "--id", "1")
    _, second, _ = run(capsys, "table", "--id", "1")
    assert first == second


def test_table_rejects_bad_n(capsys):
    code, _, _ = run(capsys, "table", "--id", "1", "--n", "12")
    assert code == EXIT_USAGE
    with pytest.raises(UsageError):
        TableSpec("T7_bogus")


def test_render_counts_segments(tmp_path, capsys):
    src = tmp_path / "b8.json"
    src.write_text(polygon_to_json(b_family(8)))
    out = tmp_path / "b8.svg"
    code, _, _ = run(capsys, "render", str(src), "--out", str(out))
    assert code == EXIT_OK
    svg = out.read_text()
    assert svg.count('class="boundary"') == 8
    assert svg.count('class="diameter"') == 8  # 5-cycle + 3 pendants
    assert svg.startswith("<svg")


def test_render_regular4_has_two_diagonals(tmp_path, capsys):
    from smallpoly import regular
    src = tmp_path / "r4.json"
    src.write_text(polygon_to_json(regular(4)))
    out = tmp_path / "r4.svg"
    code, _, _ = run(capsys, "render", str(src), "--out", str(out))
    assert code == EXIT_OK
    svg = out.read_text()
    assert svg.count('class="boundary"') == 4
    assert svg.count('class="diameter"') == 2


def test_render_q4_pendant_triangle(tmp_path, capsys):
    src = tmp_path / "q4.json"
    src.write_text(polygon_to_json(q_family(4)))
    out = tmp_path / "q4.svg"
    code, _, _ = run(capsys, "render", str(src), "--out", str(out))
    assert code == EXIT_OK
    svg = out.read_text()
    assert svg.count('class="boundary"') == 4
    assert svg.count('class="diameter"') == 4  # 3-cycle + 1 pendant


def test_render_requires_out(tmp_path, capsys):
    src = tmp_path / "q4.json"
    src.write_text(polygon_to_json(q_family(4)))
    code, _, _ = run(capsys, "render", str(src))
    assert code == EXIT_USAGE


def test_optimize_command_emits_report(capsys):
    code, out, _ = run(capsys, "optimize", "--problem", "q", "--n", "8")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["converged"] is True
    assert doc["objective"] == pytest.approx(3.1195976652, abs=1e-8)
    assert len(doc["angles"]) == 4


def test_optimize_with_config(capsys):
    code, out, _ = run(capsys, "optimize", "--problem", "b", "--n", "8",
                       "--config", '{"starts": 1}')
    assert code == EXIT_OK
    assert json.loads(out)["starts_used"] == 1
    code, _, _ = run(capsys, "optimize", "--problem", "b", "--n", "7")
    assert code == EXIT_USAGE


def test_verify_passes_and_is_quick(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "16")
    assert code == EXIT_OK
    assert "FAIL" not in out
    assert "checks passed" in out


def test_verify_flags_perturbed_polygon_file(tmp_path, capsys):
    coords = b_family(8).coords()
    coords[3] += np.array([0.01, -0.02])  # breaks convex/diameter invariants
    doc = {"n": 8, "family": "raw", "params": {},
           "vertices": [list(map(float, c)) for c in coords]}
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", "--n-max", "8",
                       "--polygon", str(path))
    assert code == EXIT_CHECK
    assert "FAIL" in out
    # and a pristine file keeps the suite green
    good = tmp_path / "good.json"
    good.write_text(polygon_to_json(b_family(8)))
    code, _, _ = run(capsys, "verify", "--n-max", "8", "--polygon", str(good))
    assert code == EXIT_OK


def test_verify_checks_cover_gap_laws():
    names = [name for name, _, _ in verify_checks(8)]
    assert any(name.startswith("gap-constant") for name in names)
    assert any(name.startswith("structure[b") for name in names)


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "bogus-command")[0] == EXIT_USAGE
    assert run(capsys, "build", "--family", "nope", "--n", "8")[0] == EXIT_USAGE
    assert run(capsys, "verify", "--n-max", "12")[0] == EXIT_USAGE


def test_build_measure_round_trip_bit_exact(tmp_path, capsys):
    out = tmp_path / "q16.json"
    code, _, _ = run(capsys, "build", "--family", "q", "--n", "16",
                     "--out", str(out))
    assert code == EXIT_OK
    code, text, _ = run(capsys, "measure", str(out))
    assert code == EXIT_OK
    assert json.loads(text)["perimeter"] == perimeter(q_family(16))


def test_render_svg_function_geometry():
    svg = render_svg(q_family(8))
    # 400 px per unit: the canvas spans (1 + 2*0.05) units vertically
    assert 'height="440"' in svg
