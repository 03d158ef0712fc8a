import json
import math

import numpy as np
import pytest

from triporo.curves import (CSV_HEADER, CurveError, CurvePoint,
                            bourdet_derivative, log_time_grid, pressure_curve,
                            read_curve, write_curve)
from triporo.inversion import StehfestScheme


def test_log_grid_decade_endpoints():
    assert log_time_grid(1.0, 100.0, 1) == pytest.approx([1.0, 10.0, 100.0], rel=1e-14)


def test_log_grid_ten_per_decade():
    g = log_time_grid(1.0, 10.0, 10)
    assert len(g) == 11
    ratio = 10.0 ** 0.1
    for a, b in zip(g, g[1:]):
        assert b / a == pytest.approx(ratio, rel=1e-12)
    assert g[0] == 1.0 and g[-1] == 10.0


def test_log_grid_long_span():
    g = log_time_grid(1e-2, 1e8, 10)
    assert len(g) == 101
    assert g[0] == 1e-2 and g[-1] == 1e8


def test_log_grid_validation():
    with pytest.raises(ValueError):
        log_time_grid(-1.0, 10.0, 5)
    with pytest.raises(ValueError):
        log_time_grid(10.0, 1.0, 5)
    with pytest.raises(ValueError):
        log_time_grid(1.0, 10.0, 0)


def test_bourdet_log_ramp_is_exact():
    g = log_time_grid(1.0, 1e4, 7)
    vals = [math.log(t) for t in g]
    d = bourdet_derivative(g, vals)
    assert d == pytest.approx([1.0] * len(g), rel=1e-12)


def test_bourdet_constant_is_zero():
    g = log_time_grid(1.0, 100.0, 8)
    d = bourdet_derivative(g, [4.2] * len(g))
    assert d == pytest.approx([0.0] * len(g), abs=1e-12)


def test_bourdet_linear_ramp():
    # d t / d ln t = t; central-difference truncation on a log grid is
    # (h^2/6) t with h = ln 10 / ppd, so 40 points per decade keeps the
    # interior error within 1e-3 (20 ppd would give 2.2e-3).
    g = log_time_grid(1.0, 1e3, 40)
    d = bourdet_derivative(g, list(g))
    for i in range(1, len(g) - 1):
        assert d[i] == pytest.approx(g[i], rel=1e-3)


def test_bourdet_smoothing_window():
    g = log_time_grid(1.0, 1e3, 20)
    vals = [math.log(t) for t in g]
    d = bourdet_derivative(g, vals, smoothing_l=0.4)
    assert d == pytest.approx([1.0] * len(g), rel=1e-12)


def test_bourdet_validation():
    with pytest.raises(ValueError):
        bourdet_derivative([1.0, 2.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        bourdet_derivative([1.0, 2.0, 3.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        bourdet_derivative([1.0, 3.0, 2.0], [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        bourdet_derivative([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], smoothing_l=-1.0)


def test_pressure_curve_classic_monotone(ref_params):
    scheme = StehfestScheme.of_order(12)
    grid = log_time_grid(1e-2, 1e8, 2)
    pts = pressure_curve(ref_params, grid, scheme)
    assert len(pts) == len(grid)
    assert all(b.p_w > a.p_w for a, b in zip(pts, pts[1:]))
    assert all(p.dp_w_dlnt is not None for p in pts)


def test_pressure_curve_refinement_stability(ref_params):
    # Inversion is per-point: doubling the density leaves shared times
    # bit-identical.
    scheme = StehfestScheme.of_order(12)
    coarse = pressure_curve(ref_params, log_time_grid(1.0, 1e4, 2), scheme)
    dense = pressure_curve(ref_params, log_time_grid(1.0, 1e4, 4), scheme)
    dense_by_t = {p.t_D: p.p_w for p in dense}
    shared = [p for p in coarse if p.t_D in dense_by_t]
    assert len(shared) == len(coarse)
    for p in shared:
        assert dense_by_t[p.t_D] == p.p_w


def test_pressure_curve_derivative_consistency(ref_params):
    # Bourdet on the working grid against plain central differences of a
    # 4x denser curve, interior points of the classic case.
    scheme = StehfestScheme.of_order(12)
    coarse_grid = log_time_grid(1.0, 1e6, 10)
    dense_grid = log_time_grid(1.0, 1e6, 40)
    coarse = pressure_curve(ref_params, coarse_grid, scheme)
    dense = pressure_curve(ref_params, dense_grid, scheme)
    lnt = [math.log(t) for t in dense_grid]
    dense_fd = {}
    for i in range(1, len(dense) - 1):
        dense_fd[dense_grid[i]] = ((dense[i + 1].p_w - dense[i - 1].p_w)
                                   / (lnt[i + 1] - lnt[i - 1]))
    for p in coarse[1:-1]:
        assert p.dp_w_dlnt == pytest.approx(dense_fd[p.t_D], rel=0.02)


def test_pressure_curve_decay_condition(ref_params):
    # u * pw_bar stays bounded along increasing u (zero initial pressure).
    from triporo.model import wellbore_pressure_laplace
    products = [u * wellbore_pressure_laplace(ref_params, u)
                for u in np.logspace(0, 8, 17)]
    assert all(math.isfinite(v) for v in products)
    assert all(b < a for a, b in zip(products, products[1:]))


def test_pressure_curve_error_context(ref_params, monkeypatch):
    import triporo.curves as curves_mod

    def broken(p, u):
        raise ArithmeticError("synthetic failure")

    monkeypatch.setattr(curves_mod, "wellbore_pressure_laplace", broken)
    with pytest.raises(CurveError, match="t_D=1.0"):
        pressure_curve(ref_params, [1.0, 10.0, 100.0], StehfestScheme.of_order(8))


def test_short_grid_has_no_derivative(ref_params):
    pts = pressure_curve(ref_params, [1.0, 10.0], StehfestScheme.of_order(8))
    assert [p.dp_w_dlnt for p in pts] == [None, None]


# ---------------------------------------------------------------- output

def test_csv_single_point(tmp_path):
    out = tmp_path / "one.csv"
    write_curve([CurvePoint(1.0, 2.0, 0.5)], "csv", out)
    assert out.read_text() == f"{CSV_HEADER}\n1.0,2.0,0.5\n"


def test_csv_absent_derivative(tmp_path):
    out = tmp_path / "nod.csv"
    write_curve([CurvePoint(1.0, 2.0, None)], "csv", out)
    assert out.read_text().splitlines()[1] == "1.0,2.0,"


def test_json_absent_derivative_is_null(tmp_path):
    out = tmp_path / "nod.json"
    write_curve([CurvePoint(1.0, 2.0, None)], "json", out)
    assert json.loads(out.read_text()) == [{"t_D": 1.0, "p_w": 2.0, "dp_w_dlnt": None}]


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_round_trip_bitwise(tmp_path, fmt):
    pts = [CurvePoint(0.1, 0.123456789012345678, 0.5),
           CurvePoint(1.0, 2.0 / 3.0, None),
           CurvePoint(10.0, math.pi, -1.25e-17)]
    out = tmp_path / f"curve.{fmt}"
    write_curve(pts, fmt, out)
    assert read_curve(out, fmt) == pts


def test_write_empty_curve_rejected(tmp_path):
    with pytest.raises(ValueError):
        write_curve([], "csv", tmp_path / "x.csv")


def test_write_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        write_curve([CurvePoint(1.0, 2.0)], "xml", tmp_path / "x.xml")


def test_write_io_error_names_path(tmp_path):
    dest = tmp_path / "no" / "such" / "dir" / "x.csv"
    with pytest.raises(OSError, match="x.csv"):
        write_curve([CurvePoint(1.0, 2.0)], "csv", dest)
