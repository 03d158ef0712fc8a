"""Gaver-Stehfest numerical inversion of Laplace transforms.

The method approximates the original f(t) of a transform F(u) sampled on
the real axis only:

    f(t) ~ (ln 2 / t) * sum_{k=1}^{n} V_k F(k ln 2 / t),   n even,

with weights

    V_k = (-1)^{n/2 + k} * sum_{j=floor((k+1)/2)}^{min(k, n/2)}
          j^{n/2} (2j)! / [ (n/2 - j)! j! (j-1)! (k-j)! (2j-k)! ].

The weights are integers divided by integers; they are generated here in
exact rational arithmetic and rounded once to floats, and the exact
identities sum V_k = 0 and sum V_k / k = 1 are verified symbolically at
construction.  The weights alternate in sign and grow roughly like 10^(n/2),
so double-precision results degrade beyond n ~ 16 and orders above 20 are
refused outright.

The method suits smooth originals that decay (or grow slowly) without
oscillation, which is the regime of the pressure-transient curves computed
by this package.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

MIN_ORDER = 2
MAX_ORDER = 20

_LN2 = math.log(2.0)


class TransformEvaluationError(RuntimeError):
    """The transform evaluator failed; carries the offending u."""

    def __init__(self, u: float, t: float, cause: BaseException):
        super().__init__(f"transform evaluation failed at u={u!r} (t={t!r}): {cause}")
        self.u = u
        self.t = t


def _check_order(n: int) -> int:
    if n != int(n) or n % 2 != 0 or not MIN_ORDER <= n <= MAX_ORDER:
        raise ValueError(
            f"Stehfest order must be an even integer in [{MIN_ORDER}, {MAX_ORDER}], "
            f"got {n!r}")
    return int(n)


def stehfest_weights_exact(n: int) -> list[Fraction]:
    """The n weights as exact rationals."""
    n = _check_order(n)
    half = n // 2
    weights = []
    for k in range(1, n + 1):
        acc = Fraction(0)
        for j in range((k + 1) // 2, min(k, half) + 1):
            acc += Fraction(
                j**half * math.factorial(2 * j),
                math.factorial(half - j) * math.factorial(j)
                * math.factorial(j - 1) * math.factorial(k - j)
                * math.factorial(2 * j - k))
        weights.append((-1) ** (half + k) * acc)
    # Exact identities; failure means the formula above is mistyped.
    if sum(weights) != 0:
        raise AssertionError(f"Stehfest weights for n={n} do not sum to 0")
    if sum(w / k for k, w in enumerate(weights, start=1)) != 1:
        raise AssertionError(f"Stehfest weights for n={n} fail sum V_k/k = 1")
    return weights


def stehfest_weights(n: int) -> tuple[float, ...]:
    """The n weights, correctly rounded to floats."""
    return tuple(float(w) for w in stehfest_weights_exact(n))


@dataclass(frozen=True)
class StehfestScheme:
    """An inversion scheme of even order n with precomputed weights."""

    n: int
    weights: tuple[float, ...]

    def __post_init__(self):
        _check_order(self.n)
        if len(self.weights) != self.n:
            raise ValueError(
                f"expected {self.n} weights, got {len(self.weights)}")

    @classmethod
    def of_order(cls, n: int) -> "StehfestScheme":
        return cls(n=n, weights=stehfest_weights(n))


def invert(transform, t: float, scheme: StehfestScheme) -> float:
    """Invert ``transform`` (a callable u -> F(u)) at time t > 0.

    Evaluator exceptions are re-raised as TransformEvaluationError with
    the offending u attached (the original exception is chained).
    """
    t = float(t)
    if not (math.isfinite(t) and t > 0.0):
        raise ValueError(f"time must be a positive finite real, got {t!r}")
    ratio = _LN2 / t
    terms = []
    for k in range(1, scheme.n + 1):
        u = k * ratio
        try:
            f = transform(u)
        except Exception as exc:
            raise TransformEvaluationError(u, t, exc) from exc
        terms.append(scheme.weights[k - 1] * f)
    # fsum: the weights alternate in sign with large magnitude; the exact
    # summation preserves what accuracy the rounded terms still carry.
    return ratio * math.fsum(terms)


def invert_curve(transform, t_grid, scheme: StehfestScheme) -> list[float]:
    """Pointwise inversion on a strictly increasing positive time grid."""
    grid = [float(t) for t in t_grid]
    if not grid:
        raise ValueError("time grid is empty")
    if grid[0] <= 0.0:
        raise ValueError(f"time grid must be positive, starts at {grid[0]!r}")
    for a, b in zip(grid, grid[1:]):
        if b <= a:
            raise ValueError(f"time grid must be strictly increasing ({a!r} -> {b!r})")
    return [invert(transform, t, scheme) for t in grid]
