"""Time-domain pressure and log-derivative curves, plus CSV/JSON output."""

import json
import math
from dataclasses import dataclass

from .inversion import StehfestScheme, invert
from .model import TriplePorosityParams, wellbore_pressure_laplace

CSV_HEADER = "t_D,p_w,dp_w_dlnt"


class CurveError(Exception):
    """Curve evaluation failed at a specific grid point."""


@dataclass(frozen=True)
class CurvePoint:
    """One (t_D, p_w, dp_w/dln t_D) sample; derivative None when undefined."""

    t_D: float
    p_w: float
    dp_w_dlnt: float | None = None


def log_time_grid(t_min: float, t_max: float, points_per_decade: int) -> list[float]:
    """Log-uniform grid from t_min to t_max inclusive."""
    if not (t_min > 0.0 and math.isfinite(t_min)):
        raise ValueError(f"t_min must be positive, got {t_min!r}")
    if not (t_max > t_min and math.isfinite(t_max)):
        raise ValueError(f"t_max must exceed t_min, got {t_max!r}")
    if points_per_decade < 1 or points_per_decade != int(points_per_decade):
        raise ValueError(f"points_per_decade must be an integer >= 1, got {points_per_decade!r}")
    lo, hi = math.log10(t_min), math.log10(t_max)
    n = max(1, round((hi - lo) * points_per_decade)) + 1
    grid = [10.0 ** (lo + (hi - lo) * k / (n - 1)) for k in range(n)]
    grid[0], grid[-1] = t_min, t_max
    return grid


def bourdet_derivative(grid, values, smoothing_l: float = 0.0) -> list[float]:
    """Weighted central differences of ``values`` with respect to ln t.

    Interior points combine the slopes to the nearest neighbors at ln-
    distance >= smoothing_l on each side (adjacent points for the default
    smoothing_l = 0).  Endpoints are one-sided differences and carry lower
    quality.
    """
    if len(grid) != len(values):
        raise ValueError(f"grid and values differ in length: {len(grid)} vs {len(values)}")
    if len(grid) < 3:
        raise ValueError(f"need at least 3 points, got {len(grid)}")
    if smoothing_l < 0.0:
        raise ValueError(f"smoothing window must be >= 0, got {smoothing_l!r}")
    lnt = [math.log(t) for t in grid]
    for a, b in zip(lnt, lnt[1:]):
        if b <= a:
            raise ValueError("time grid must be strictly increasing")
    n = len(grid)
    out = []
    for i in range(n):
        if i == 0:
            out.append((values[1] - values[0]) / (lnt[1] - lnt[0]))
            continue
        if i == n - 1:
            out.append((values[-1] - values[-2]) / (lnt[-1] - lnt[-2]))
            continue
        left = i - 1
        while left > 0 and lnt[i] - lnt[left] < smoothing_l:
            left -= 1
        right = i + 1
        while right < n - 1 and lnt[right] - lnt[i] < smoothing_l:
            right += 1
        dl = lnt[i] - lnt[left]
        dr = lnt[right] - lnt[i]
        sl = (values[i] - values[left]) / dl
        sr = (values[right] - values[i]) / dr
        out.append((sl * dr + sr * dl) / (dl + dr))
    return out


def pressure_curve(p: TriplePorosityParams, grid, scheme: StehfestScheme,
                   smoothing_l: float = 0.0) -> list[CurvePoint]:
    """Invert the wellbore pressure on the grid and attach the derivative."""
    values = []
    for t in grid:
        try:
            values.append(invert(lambda u: wellbore_pressure_laplace(p, u), t, scheme))
        except Exception as exc:
            raise CurveError(f"curve evaluation failed at t_D={t!r}: {exc}") from exc
    if len(grid) >= 3:
        derivs = bourdet_derivative(list(grid), values, smoothing_l)
    else:
        derivs = [None] * len(values)
    return [CurvePoint(t_D=float(t), p_w=v, dp_w_dlnt=d)
            for t, v, d in zip(grid, values, derivs)]


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def curve_to_csv(points) -> str:
    lines = [CSV_HEADER]
    for pt in points:
        lines.append(f"{_fmt(pt.t_D)},{_fmt(pt.p_w)},{_fmt(pt.dp_w_dlnt)}")
    return "\n".join(lines) + "\n"


def curve_to_json(points) -> str:
    payload = [{"t_D": pt.t_D, "p_w": pt.p_w, "dp_w_dlnt": pt.dp_w_dlnt}
               for pt in points]
    return json.dumps(payload, indent=2) + "\n"


def write_curve(points, fmt: str, destination) -> None:
    """Write points as CSV or JSON; values render in round-trip precision."""
    points = list(points)
    if not points:
        raise ValueError("refusing to write an empty curve")
    if fmt == "csv":
        text = curve_to_csv(points)
    elif fmt == "json":
        text = curve_to_json(points)
    else:
        raise ValueError(f"unknown curve format {fmt!r}")
    try:
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write curve to {destination!r}: {exc}") from exc


def read_curve(source, fmt: str = "csv") -> list[CurvePoint]:
    """Parse a curve file written by write_curve."""
    with open(source, "r", encoding="utf-8") as fh:
        text = fh.read()
    points = []
    if fmt == "csv":
        lines = [ln for ln in text.split("\n") if ln]
        if not lines or lines[0] != CSV_HEADER:
            raise ValueError(f"bad curve header in {source!r}")
        for ln in lines[1:]:
            t, pw, d = ln.split(",")
            points.append(CurvePoint(t_D=float(t), p_w=float(pw),
                                     dp_w_dlnt=float(d) if d else None))
    elif fmt == "json":
        for row in json.loads(text):
            points.append(CurvePoint(t_D=row["t_D"], p_w=row["p_w"],
                                     dp_w_dlnt=row["dp_w_dlnt"]))
    else:
        raise ValueError(f"unknown curve format {fmt!r}")
    return points
