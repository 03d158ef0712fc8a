"""Cubic characteristic-equation solver with guaranteed root classification.

The degree-six equation in alpha has only even powers, so it is solved as a
cubic in x = alpha^2.  Closed forms (trigonometric for three real roots,
Cardano otherwise) seed the dominant root; the remaining pair comes from
synthetic deflation, and every real root is polished by safeguarded Newton
steps on the original coefficients.  Deflation uses q0 = -c0/x1 (Vieta),
which keeps the small roots accurate when the roots span many decades.
"""

import math
from dataclasses import dataclass

#: Imaginary parts at or below COMPLEX_TOL * (1 + |Re|) are rounding noise.
COMPLEX_TOL = 1e-9

#: Real roots closer than this relative gap are merged arithmetically.
DEDUP_TOL = 1e-9

#: Relative residual bound guaranteed for returned roots.
RESIDUAL_TOL = 1e-10


class RootClassificationError(Exception):
    """A characteristic root is complex or non-positive beyond tolerance.

    Signals a parameter set outside the regime where the model's three
    positive real roots exist.
    """


@dataclass(frozen=True)
class CubicCoefficients:
    """Coefficients of c3*x^3 + c2*x^2 + c1*x + c0 with x = alpha^2."""

    c3: float
    c2: float
    c1: float
    c0: float

    def __call__(self, x: float) -> float:
        return ((self.c3 * x + self.c2) * x + self.c1) * x + self.c0

    def scale_at(self, x: float) -> float:
        """Natural magnitude of the polynomial's terms at x."""
        return max(abs(self.c3 * x**3), abs(self.c2 * x**2),
                   abs(self.c1 * x), abs(self.c0))


@dataclass(frozen=True)
class AlphaRoots:
    """The three positive roots alpha_i (ascending) with residuals."""

    alpha: tuple[float, float, float]
    residuals: tuple[float, float, float]


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _polish(c: CubicCoefficients, x: float, iters: int = 12) -> float:
    """Safeguarded Newton on the original cubic; never worsens |f|."""
    fx = abs(c(x))
    for _ in range(iters):
        fp = (3.0 * c.c3 * x + 2.0 * c.c2) * x + c.c1
        if fp == 0.0:
            break
        xn = x - c(x) / fp
        if not math.isfinite(xn):
            break
        fn = abs(c(xn))
        if fn < fx:
            x, fx = xn, fn
        else:
            break
    return x


def solve_cubic_real(c: CubicCoefficients) -> tuple[list[float], list[complex]]:
    """All three roots, split into classified-real (sorted) and complex.

    Roots with imaginary magnitude <= COMPLEX_TOL * (1 + |Re|) are
    classified real and their imaginary part discarded.  Near-equal real
    roots (relative gap < DEDUP_TOL) are deduplicated arithmetically.
    """
    if not all(math.isfinite(v) for v in (c.c3, c.c2, c.c1, c.c0)):
        raise ValueError("cubic coefficients must be finite")
    if abs(c.c3) <= 1e-300:
        raise ValueError(f"degenerate leading coefficient c3={c.c3!r}")

    b = c.c2 / c.c3
    p = c.c1 / c.c3 - b * b / 3.0
    q = c.c0 / c.c3 - b * (c.c1 / c.c3) / 3.0 + 2.0 * b**3 / 27.0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    shift = -b / 3.0

    # Seed one root from the closed form: for three real roots the largest
    # trigonometric root is the best conditioned; otherwise the single
    # Cardano real root (with the stable v = -p/(3u) pairing).
    if disc <= 0.0:
        m = math.sqrt(max(-p / 3.0, 0.0))
        if m == 0.0:
            x1 = shift
        else:
            arg = min(1.0, max(-1.0, 3.0 * q / (2.0 * p * m)))
            theta = math.acos(arg) / 3.0
            x1 = max((2.0 * m * math.cos(theta - 2.0 * math.pi * k / 3.0) + shift
                      for k in range(3)), key=abs)
    else:
        w = math.sqrt(disc)
        s = -q / 2.0
        u = _cbrt(s + w) if s >= 0.0 else _cbrt(s - w)
        v = 0.0 if u == 0.0 else -p / (3.0 * u)
        x1 = u + v + shift
    x1 = _polish(c, x1)

    # Deflate to c3*x^2 + q1*x + q0; the Vieta form of q0 avoids the
    # catastrophic cancellation of the synthetic q0 = c1 + q1*x1.
    q1 = c.c2 + c.c3 * x1
    q0 = (-c.c0 / x1) if x1 != 0.0 else c.c1
    disc2 = q1 * q1 - 4.0 * c.c3 * q0

    real = [x1]
    cplx: list[complex] = []
    if disc2 >= 0.0:
        sq = math.sqrt(disc2)
        qq = -0.5 * (q1 + math.copysign(sq, q1)) if q1 != 0.0 else -0.5 * sq
        r1, r2 = (qq / c.c3, q0 / qq) if qq != 0.0 else (0.0, 0.0)
        real += [_polish(c, r1), _polish(c, r2)]
    else:
        re = -q1 / (2.0 * c.c3)
        im = math.sqrt(-disc2) / (2.0 * abs(c.c3))
        if im <= COMPLEX_TOL * (1.0 + abs(re)):
            real += [_polish(c, re)] * 2
        else:
            cplx = [complex(re, im), complex(re, -im)]

    real.sort()
    for i in range(len(real) - 1):
        if real[i + 1] - real[i] <= DEDUP_TOL * max(abs(real[i]), abs(real[i + 1])):
            mid = 0.5 * (real[i] + real[i + 1])
            real[i] = real[i + 1] = mid
    return real, cplx


def alpha_roots(c: CubicCoefficients, u: float | None = None) -> AlphaRoots:
    """The three alpha_i = sqrt(x_i) for strictly positive real roots x_i.

    Raises RootClassificationError when any root is complex beyond
    tolerance or has non-positive real part; the offending root and the
    Laplace variable u (when supplied) are reported.
    """
    where = "" if u is None else f" at u={u!r}"
    real, cplx = solve_cubic_real(c)
    if cplx:
        raise RootClassificationError(
            f"characteristic equation has complex roots {cplx}{where}")
    bad = [x for x in real if x <= 0.0]
    if bad:
        raise RootClassificationError(
            f"characteristic equation has non-positive roots {bad}{where}")
    residuals = []
    for x in real:
        res = c(x)
        if abs(res) > RESIDUAL_TOL * c.scale_at(x):
            raise RootClassificationError(
                f"root x={x!r} fails residual bound: |{res!r}| > "
                f"{RESIDUAL_TOL} * {c.scale_at(x)!r}{where}")
        residuals.append(res)
    alphas = tuple(math.sqrt(x) for x in real)
    return AlphaRoots(alpha=alphas, residuals=tuple(residuals))
