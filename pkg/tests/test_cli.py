import csv
import io
import json
import math

import pytest

from qscissors.cli import ROW_COLUMNS, WIGNER_COLUMNS, main, parse_grid, parse_values


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_simulate_known_point(capsys):
    code, out, _ = run(capsys, "simulate", "--nbar", "0.5", "--T", "0.9")
    assert code == 0
    (row,) = rows_of(out)
    assert list(row) == ROW_COLUMNS
    assert float(row["p0_num"]) == pytest.approx(0.25, abs=1e-12)
    assert float(row["p1_num"]) == pytest.approx(0.75, abs=1e-12)
    assert float(row["gain_num"]) == pytest.approx(1.5, abs=1e-12)
    assert float(row["parity_num"]) == pytest.approx(-0.5, abs=1e-12)
    assert row["degenerate"] == "0"


def test_simulate_vacuum_input_has_no_gain(capsys):
    code, out, _ = run(capsys, "simulate", "--nbar", "0", "--T", "0.3", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)["rows"]
    assert row["pd_num"] == pytest.approx(0.35, abs=1e-12)
    assert row["p0_num"] == pytest.approx(1, abs=1e-12)
    assert row["gain_num"] is None
    assert row["gain_cf"] is None


def test_simulate_fock_endpoint(capsys):
    code, out, _ = run(capsys, "simulate", "--nbar", "0.5", "--T", "1", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)["rows"]
    assert row["snr_num"] == "inf"
    assert row["snr_cf"] == "inf"
    assert row["mean_num"] == pytest.approx(1, abs=1e-12)
    (csv_row,) = rows_of(run(capsys, "simulate", "--nbar", "0.5", "--T", "1")[1])
    assert csv_row["snr_num"] == "inf"


def test_degenerate_point_exit_status(capsys):
    code, out, err = run(capsys, "simulate", "--nbar", "0", "--T", "1")
    assert code == 3
    assert out == ""
    assert "degenerate" in err
    assert run(capsys, "wigner", "--nbar", "0", "--T", "1")[0] == 3


def test_sweep_pd_column(capsys):
    code, out, _ = run(capsys, "sweep", "--nbar", "1", "--T", "0:1:0.5")
    assert code == 0
    pds = [float(r["pd_num"]) for r in rows_of(out)]
    assert pds == pytest.approx([0.25, 0.1875, 0.125], abs=1e-12)


def test_five_line_sweep_shape(capsys, tmp_path):
    path = tmp_path / "lines.csv"
    code, _, _ = run(capsys, "sweep", "--nbar", "0,0.2,0.5,1,1.2", "--T", "0:1:0.01", "--out", str(path))
    assert code == 0
    rows = rows_of(path.read_text())
    assert len(rows) == 5 * 101
    flagged = [(r["nbar"], r["T"]) for r in rows if r["degenerate"] == "1"]
    assert flagged == [("0", "1")]
    for r in rows:
        if r["degenerate"] == "0":
            n, T = float(r["nbar"]), float(r["T"])
            assert float(r["pd_num"]) == pytest.approx((n + 1 - T) / (2 * (n + 1) ** 2), abs=1e-12)


def test_single_point_sweep_equals_simulate(capsys):
    _, sim, _ = run(capsys, "simulate", "--nbar", "1.2", "--T", "0.7")
    _, swp, _ = run(capsys, "sweep", "--nbar", "1.2", "--T", "0.7")
    assert sim == swp


def test_csv_round_trip_is_exact(capsys):
    code, out, _ = run(capsys, "sweep", "--nbar", "0.2,1.2", "--T", "0:1:0.1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    text = run(capsys, "sweep", "--nbar", "0.2,1.2", "--T", "0:1:0.1")[1]
    for js, cs in zip(doc["rows"], rows_of(text)):
        for col in ROW_COLUMNS:
            v = js[col]
            if isinstance(v, float):
                assert float(cs[col]) == v, col


def test_sweep_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(capsys, "sweep", "--nbar", "0,0.5,1", "--T", "0:1:0.05", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_json_document_layout(capsys):
    _, out, _ = run(capsys, "sweep", "--nbar", "0.5", "--T", "0.2,0.4", "--format", "json")
    doc = json.loads(out)
    assert doc["config"]["command"] == "sweep"
    assert doc["config"]["tail_tol"] == 1e-12
    assert [r["T"] for r in doc["rows"]] == [0.2, 0.4]


@pytest.mark.parametrize("T, negative", [(0.9, True), (0.4, False)])
def test_wigner_sign(capsys, T, negative):
    code, out, err = run(capsys, "wigner", "--nbar", "0.5", "--T", str(T),
                         "--grid", "-3:3:61,-3:3:61", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    w_min = doc["summary"]["W_min"]
    assert (w_min < 0) if negative else (w_min >= -1e-12)
    assert "min W" in err
    assert max(r["W_err"] for r in doc["rows"]) <= 1e-10


def test_wigner_vacuum_peak(capsys):
    code, out, _ = run(capsys, "wigner", "--nbar", "0", "--T", "0.5", "--grid", "-1:1:3,-1:1:3")
    assert code == 0
    rows = rows_of(out)
    assert list(rows[0]) == WIGNER_COLUMNS
    (centre,) = [r for r in rows if float(r["q"]) == 0 and float(r["p"]) == 0]
    assert float(centre["W_num"]) == pytest.approx(2 / math.pi, abs=1e-12)


def test_wigner_grid_cap(capsys):
    code, _, err = run(capsys, "wigner", "--nbar", "0.5", "--T", "0.9",
                       "--grid", "-3:3:200,-3:3:200", "--max-points", "1000")
    assert code == 1
    assert "cap" in err


@pytest.mark.parametrize("tol", ["1e-12", "1e-6"])
def test_validate_passes(capsys, tol):
    code, out, _ = run(capsys, "validate", "--tail-tol", tol)
    assert code == 0
    assert out.strip().splitlines()[-1] == "PASS: all checks"


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate", "--nbar", "0.5"],
        ["simulate", "--nbar", "0.5", "--T", "1.5"],
        ["simulate", "--nbar", "-1", "--T", "0.5"],
        ["simulate", "--nbar", "0.5,1", "--T", "0.5"],
        ["simulate", "--nbar", "abc", "--T", "0.5"],
        ["sweep", "--nbar", "1", "--T", "0:1:0"],
        ["sweep", "--nbar", "1", "--T", "0:1"],
        ["wigner", "--nbar", "0.5", "--T", "0.9", "--grid", "-3:3"],
        ["validate", "--tail-tol", "2"],
        ["simulate", "--nbar", "0.5", "--T", "0.5", "--format", "xml"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_seedless_is_accepted(capsys):
    plain = run(capsys, "simulate", "--nbar", "0.5", "--T", "0.9")[1]
    seedless = run(capsys, "simulate", "--nbar", "0.5", "--T", "0.9", "--seedless")[1]
    assert plain == seedless


def test_parse_values():
    assert parse_values("0:1:0.5") == [0.0, 0.5, 1.0]
    assert parse_values("0:1:0.01")[37] == 0.37
    assert len(parse_values("0:1:0.01")) == 101
    assert parse_values("0.2, 1") == [0.2, 1.0]


def test_parse_grid():
    g = parse_grid("-2:2:5,-1:1:3")
    assert list(g.q_axis) == [-2, -1, 0, 1, 2]
    assert list(g.p_axis) == [-1, 0, 1]
