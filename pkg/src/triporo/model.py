"""Laplace-space solution assembly for triple-porosity radial flow.

The three coupled diffusion equations (rock matrix m, fracture network f,
vug system v) with Caputo time-fractional orders beta reduce, after the
Laplace transform, to a modal expansion

    p_m(r) = sum_i A_i D_i K0(alpha_i r)
    p_f(r) = sum_i B_i D_i K0(alpha_i r)
    p_v(r) = sum_i     D_i K0(alpha_i r)

where alpha_i^2 are the three positive roots of a cubic characteristic
equation, (A_i, B_i, 1) spans the null space of the 3x3 modal matrix at
alpha_i^2, and the weights D_i solve the wellbore boundary system.

Everything is assembled in scaled-Bessel space: row i of the boundary
system carries an implicit factor e^{-alpha_i} which cancels against the
matching factor in D_i, so the wellbore pressure stays representable for
arbitrarily large alpha (small times in the Stehfest inversion).
"""

import math
from dataclasses import dataclass

from .roots import AlphaRoots, CubicCoefficients, alpha_roots
from .specfun import (bessel_k0, bessel_k0_scaled, bessel_k1,
                      bessel_k1_scaled)

#: det(boundary matrix) below SINGULAR_TOL times the magnitude of its own
#: six expansion terms means the boundary system cannot be solved.
SINGULAR_TOL = 1e-14

#: Null-space candidates (row cross products) below RANK_TOL times the row
#: norm product indicate a rank-deficient modal matrix (repeated root).
RANK_TOL = 1e-12

#: Relative tolerance of the wellbore pressure triple-equality check.
CONSISTENCY_TOL = 1e-9


class NullSpaceError(Exception):
    """The modal matrix has no unique (A, B, 1)-normalizable null direction."""


class SingularBoundaryError(Exception):
    """The wellbore boundary system is numerically singular."""


class ConsistencyError(Exception):
    """The three-media wellbore pressures disagree beyond tolerance."""


@dataclass(frozen=True)
class TriplePorosityParams:
    """Dimensionless parameters of the triple-porosity model.

    omega are storativity ratios (omega_m = 1 - omega_f - omega_v), kappa
    permeability ratios (kappa_m = 1 - kappa_f - kappa_v), lambda the
    interporosity transfer coefficients, and beta the fractional orders of
    the time derivative in each medium, all dimensionless.
    """

    omega_f: float
    omega_v: float
    kappa_f: float
    kappa_v: float
    lambda_mf: float
    lambda_mv: float
    lambda_fv: float
    beta_m: float = 1.0
    beta_f: float = 1.0
    beta_v: float = 1.0

    def __post_init__(self):
        for name in ("omega_f", "omega_v"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {getattr(self, name)!r}")
        if self.omega_m < 0.0:
            raise ValueError(
                f"omega_f + omega_v must be <= 1, got {self.omega_f + self.omega_v!r}")
        for name in ("kappa_f", "kappa_v"):
            if not getattr(self, name) > 0.0:
                raise ValueError(
                    f"{name} must be > 0 (required by the modal solve), "
                    f"got {getattr(self, name)!r}")
        if self.kappa_m <= 0.0:
            raise ValueError(
                f"kappa_f + kappa_v must be < 1, got {self.kappa_f + self.kappa_v!r}")
        for name in ("lambda_mf", "lambda_mv", "lambda_fv"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"{name} must be >= 0, got {v!r}")
        for name in ("beta_m", "beta_f", "beta_v"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must be in (0, 1], got {v!r}")

    @property
    def omega_m(self) -> float:
        return 1.0 - self.omega_f - self.omega_v

    @property
    def kappa_m(self) -> float:
        return 1.0 - self.kappa_f - self.kappa_v

    def with_betas(self, beta_m: float, beta_f: float, beta_v: float) -> "TriplePorosityParams":
        return TriplePorosityParams(
            self.omega_f, self.omega_v, self.kappa_f, self.kappa_v,
            self.lambda_mf, self.lambda_mv, self.lambda_fv,
            beta_m, beta_f, beta_v)


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional reservoir, fluid and well quantities (SI units).

    phi: porosity (m3/m3); c: compressibility (1/Pa); k: permeability (m2);
    mu: viscosity (Pa s); a: interface transfer coefficients (1/(Pa s));
    r_w: well radius (m); h: thickness (m); q0: flow rate (m3/s);
    b0: formation volume factor (-); p_i: initial pressure (Pa).
    """

    phi_m: float
    phi_f: float
    phi_v: float
    c_m: float
    c_f: float
    c_v: float
    k_m: float
    k_f: float
    k_v: float
    mu: float
    a_mf: float
    a_mv: float
    a_fv: float
    r_w: float
    h: float
    q0: float
    b0: float
    p_i: float

    def __post_init__(self):
        for name in ("phi_m", "phi_f", "phi_v", "c_m", "c_f", "c_v",
                     "k_m", "k_f", "k_v", "mu", "r_w", "h", "q0", "b0", "p_i"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be > 0, got {v!r}")
        for name in ("a_mf", "a_mv", "a_fv"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"{name} must be >= 0, got {v!r}")


@dataclass(frozen=True)
class MTerms:
    """The six auxiliary coefficients of the Laplace-space modal matrix."""

    m1: float
    m2: float
    m3: float
    m4: float
    m5: float
    m6: float


@dataclass(frozen=True)
class DimensionlessTransform:
    """Dimensionless groups plus the t_D and p_D scale factors.

    t_D = t * t_scale and p_D = p_scale * (p_i - p); fractional orders are
    not part of the map and are supplied when building model parameters.
    """

    omega_f: float
    omega_v: float
    kappa_f: float
    kappa_v: float
    lambda_mf: float
    lambda_mv: float
    lambda_fv: float
    t_scale: float
    p_scale: float

    def params(self, beta_m: float = 1.0, beta_f: float = 1.0,
               beta_v: float = 1.0) -> TriplePorosityParams:
        return TriplePorosityParams(
            self.omega_f, self.omega_v, self.kappa_f, self.kappa_v,
            self.lambda_mf, self.lambda_mv, self.lambda_fv,
            beta_m, beta_f, beta_v)


def _check_u(u: float) -> float:
    u = float(u)
    if not (math.isfinite(u) and u > 0.0):
        raise ValueError(f"Laplace variable u must be a positive finite real, got {u!r}")
    return u


def m_terms(p: TriplePorosityParams, u: float) -> MTerms:
    """Auxiliary coefficients at Laplace variable u > 0."""
    u = _check_u(u)
    return MTerms(
        m1=u**p.beta_m * p.omega_m + p.lambda_mf + p.lambda_mv,
        m2=p.lambda_mf,
        m3=p.lambda_mv,
        m4=u**p.beta_f * p.omega_f + p.lambda_mf + p.lambda_fv,
        m5=p.lambda_fv,
        m6=u**p.beta_v * p.omega_v + p.lambda_mv + p.lambda_fv)


def characteristic_coefficients(m: MTerms, kappa_m: float, kappa_f: float,
                                kappa_v: float) -> CubicCoefficients:
    """Cubic in x = alpha^2 whose roots are the squared modal decay rates."""
    return CubicCoefficients(
        c3=kappa_m * kappa_f * kappa_v,
        c2=-(kappa_m * (kappa_f * m.m6 + kappa_v * m.m4) + kappa_f * kappa_v * m.m1),
        c1=(kappa_m * m.m4 * m.m6 - kappa_m * m.m5 * m.m5
            + (kappa_f * m.m6 + kappa_v * m.m4) * m.m1
            - kappa_v * m.m2 * m.m2 - kappa_f * m.m3 * m.m3),
        c0=(-m.m1 * m.m4 * m.m6 + m.m1 * m.m5 * m.m5 + m.m2 * m.m2 * m.m6
            + 2.0 * m.m2 * m.m3 * m.m5 + m.m3 * m.m3 * m.m4))


def _matrix_at(x: float, m: MTerms, kappa_m: float, kappa_f: float, kappa_v: float):
    return ((kappa_m * x - m.m1, m.m2, m.m3),
            (m.m2, kappa_f * x - m.m4, m.m5),
            (m.m3, m.m5, kappa_v * x - m.m6))


def _refine_root(x: float, m: MTerms, kappa_m: float, kappa_f: float,
                 kappa_v: float) -> float:
    """Newton steps on det(M(x)) directly.

    The expanded cubic's coefficients carry rounding noise that shifts its
    roots off the true determinant zero; refining against the assembled
    matrix keeps the null-space extraction residual at machine level.
    """
    for _ in range(3):
        M = _matrix_at(x, m, kappa_m, kappa_f, kappa_v)
        c11 = M[1][1] * M[2][2] - M[1][2] * M[2][1]
        c22 = M[0][0] * M[2][2] - M[0][2] * M[2][0]
        c33 = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        f = M[0][0] * c11 - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) \
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
        fp = kappa_m * c11 + kappa_f * c22 + kappa_v * c33
        if fp == 0.0:
            break
        xn = x - f / fp
        if xn <= 0.0 or not math.isfinite(xn):
            break
        converged = abs(xn - x) <= 4e-16 * abs(x)
        x = xn
        if converged:
            break
    return x


def _null_direction(M) -> tuple[float, float, float]:
    """Null vector of the (rank-2) symmetric matrix M via row cross products.

    The cross products of the three row pairs are parallel copies of the
    null vector scaled by its own components; the largest one is the best
    conditioned.  Each entry is an explicit 2x2 minor, so no component is
    obtained by subtractive normalization.
    """
    best = None
    best_mag = -1.0
    scale = 0.0
    norms = [math.sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]) for r in M]
    for a, b in ((0, 1), (0, 2), (1, 2)):
        ra, rb = M[a], M[b]
        n = (ra[1] * rb[2] - ra[2] * rb[1],
             ra[2] * rb[0] - ra[0] * rb[2],
             ra[0] * rb[1] - ra[1] * rb[0])
        mag = max(abs(n[0]), abs(n[1]), abs(n[2]))
        scale = max(scale, norms[a] * norms[b])
        if mag > best_mag:
            best, best_mag = n, mag
    if best_mag <= RANK_TOL * scale:
        raise NullSpaceError(
            f"modal matrix has rank < 2 (cross products <= {RANK_TOL} * row scale "
            f"{scale!r}); no unique null direction")
    return best


def _modal_from_x(x: float, m: MTerms, kappa_m: float, kappa_f: float,
                  kappa_v: float) -> tuple[float, float]:
    n = _null_direction(_matrix_at(x, m, kappa_m, kappa_f, kappa_v))
    if n[2] == 0.0:
        raise NullSpaceError(
            f"null direction {n!r} at x={x!r} has zero third component; "
            "normalization to C=1 is impossible (decoupled medium)")
    a, b = n[0] / n[2], n[1] / n[2]
    if not (math.isfinite(a) and math.isfinite(b)):
        raise NullSpaceError(
            f"normalization to C=1 overflows for null direction {n!r} at x={x!r}")
    return a, b


def modal_coefficients(alpha_i: float, m: MTerms, kappa_m: float,
                       kappa_f: float, kappa_v: float) -> tuple[float, float]:
    """(A_i, B_i) with the vug component normalized to 1 at root alpha_i."""
    if not (math.isfinite(alpha_i) and alpha_i > 0.0):
        raise ValueError(f"alpha must be a positive finite real, got {alpha_i!r}")
    return _modal_from_x(alpha_i * alpha_i, m, kappa_m, kappa_f, kappa_v)


def modal_coefficients_closed_form(alpha_i: float, m: MTerms, kappa_m: float,
                                   kappa_f: float) -> tuple[float, float]:
    """(A_i, B_i) from the explicit two-equation elimination.

    Cross-check path only: divides by m2 and by a 2x2 minor, either of
    which can vanish for admissible parameters; the null-space route is
    the canonical computation.
    """
    x = alpha_i * alpha_i
    d11 = kappa_m * x - m.m1
    d22 = kappa_f * x - m.m4
    den = m.m2 * m.m2 - d11 * d22
    if den == 0.0:
        raise ZeroDivisionError("closed-form modal denominator vanishes")
    a = (m.m3 * d22 - m.m2 * m.m5) / den
    if m.m2 == 0.0:
        raise ZeroDivisionError("closed-form B is undefined for lambda_mf = 0")
    b = (-m.m3 - a * d11) / m.m2
    return a, b


def boundary_vectors(alpha, A, B, kappa_m: float, kappa_f: float,
                     kappa_v: float, scaled: bool = False):
    """Boundary-system rows (P, Q, R) and the modal totals E.

    P_i = alpha_i K1(alpha_i) E_i with E_i = kappa_m A_i + kappa_f B_i +
    kappa_v; Q_i = (A_i - 1) K0(alpha_i); R_i = (B_i - 1) K0(alpha_i).
    With ``scaled`` the Bessel factors are e^{alpha_i}-scaled, i.e. row
    entry i carries an implicit e^{-alpha_i}.
    """
    E = tuple(kappa_m * A[i] + kappa_f * B[i] + kappa_v for i in range(3))
    if scaled:
        k0v = [bessel_k0_scaled(a) for a in alpha]
        k1v = [bessel_k1_scaled(a) for a in alpha]
    else:
        k0v = [bessel_k0(a) for a in alpha]
        k1v = [bessel_k1(a) for a in alpha]
    P = tuple(alpha[i] * k1v[i] * E[i] for i in range(3))
    Q = tuple((A[i] - 1.0) * k0v[i] for i in range(3))
    R = tuple((B[i] - 1.0) * k0v[i] for i in range(3))
    return P, Q, R, E


def solve_boundary(P, Q, R, u: float) -> tuple[float, float, float]:
    """Solve [P; Q; R] D = (1/u, 0, 0) via the cross-product form.

    D = (Q x R) / (u * det) with det expanded in the six-term form; the
    cross product makes Q.D and R.D vanish to rounding level by
    construction.  Column scalings of (P, Q, R) carry through to D
    unchanged in the inner products.
    """
    u = _check_u(u)
    terms = (Q[0] * R[1] * P[2], -Q[0] * P[1] * R[2], -R[0] * Q[1] * P[2],
             -R[1] * P[0] * Q[2], P[1] * R[0] * Q[2], P[0] * Q[1] * R[2])
    det = math.fsum(terms)
    # Cancellation metric: the determinant against its own expansion terms.
    scale = max(abs(t) for t in terms)
    if abs(det) <= SINGULAR_TOL * scale:
        raise SingularBoundaryError(
            f"boundary system singular at u={u!r}: |det|={abs(det)!r} "
            f"<= {SINGULAR_TOL} * row scale {scale!r}")
    cross = (Q[1] * R[2] - Q[2] * R[1],
             Q[2] * R[0] - Q[0] * R[2],
             Q[0] * R[1] - Q[1] * R[0])
    return tuple(c / (u * det) for c in cross)


def _unscale_weight(d_scaled: float, alpha: float) -> float:
    # D_i = e^{alpha_i} * D_scaled_i; go through logs past the exp range.
    if d_scaled == 0.0:
        return 0.0
    if alpha <= 700.0:
        return d_scaled * math.exp(alpha)
    t = alpha + math.log(abs(d_scaled))
    if t >= 709.0:
        return math.copysign(math.inf, d_scaled)
    return math.copysign(math.exp(t), d_scaled)


@dataclass(frozen=True)
class LaplaceAssembly:
    """Per-u solution state of the triple-porosity Laplace solution.

    The stored boundary rows and weights are the scaled representation:
    row entry i carries an implicit factor e^{-alpha_i} and the weight
    D_scaled_i an implicit e^{+alpha_i}, so inner products such as
    P_scaled . D_scaled equal their unscaled counterparts exactly.  The
    unscaled P, Q, R, D properties are provided for moderate alpha;
    unscaled K0/K1 underflow (and D overflows) once alpha exceeds ~700.
    """

    u: float
    mterms: MTerms
    alpha: AlphaRoots
    A: tuple[float, float, float]
    B: tuple[float, float, float]
    E: tuple[float, float, float]
    P_scaled: tuple[float, float, float]
    Q_scaled: tuple[float, float, float]
    R_scaled: tuple[float, float, float]
    D_scaled: tuple[float, float, float]

    @property
    def P(self) -> tuple[float, float, float]:
        return tuple(p * math.exp(-a) for p, a in zip(self.P_scaled, self.alpha.alpha))

    @property
    def Q(self) -> tuple[float, float, float]:
        return tuple(q * math.exp(-a) for q, a in zip(self.Q_scaled, self.alpha.alpha))

    @property
    def R(self) -> tuple[float, float, float]:
        return tuple(r * math.exp(-a) for r, a in zip(self.R_scaled, self.alpha.alpha))

    @property
    def D(self) -> tuple[float, float, float]:
        return tuple(_unscale_weight(d, a) for d, a in zip(self.D_scaled, self.alpha.alpha))

    def wellbore_pressures(self) -> tuple[float, float, float]:
        """(matrix, fracture, vug) wellbore pressures; equal in exact arithmetic."""
        k0v = [bessel_k0_scaled(a) for a in self.alpha.alpha]
        pv = math.fsum(self.D_scaled[i] * k0v[i] for i in range(3))
        pm = math.fsum(self.A[i] * self.D_scaled[i] * k0v[i] for i in range(3))
        pf = math.fsum(self.B[i] * self.D_scaled[i] * k0v[i] for i in range(3))
        return pm, pf, pv


def laplace_assembly(p: TriplePorosityParams, u: float) -> LaplaceAssembly:
    """Assemble the full Laplace-space solution state at u > 0."""
    u = _check_u(u)
    m = m_terms(p, u)
    km, kf, kv = p.kappa_m, p.kappa_f, p.kappa_v
    coeffs = characteristic_coefficients(m, km, kf, kv)
    rough = alpha_roots(coeffs, u=u)
    xs = [_refine_root(a * a, m, km, kf, kv) for a in rough.alpha]
    residuals = tuple(coeffs(x) for x in xs)
    alphas = AlphaRoots(alpha=tuple(math.sqrt(x) for x in xs), residuals=residuals)
    ab = [_modal_from_x(x, m, km, kf, kv) for x in xs]
    A = tuple(v[0] for v in ab)
    B = tuple(v[1] for v in ab)
    P, Q, R, E = boundary_vectors(alphas.alpha, A, B, km, kf, kv, scaled=True)
    try:
        D = solve_boundary(P, Q, R, u)
    except SingularBoundaryError as exc:
        raise SingularBoundaryError(f"{exc} (params={p!r})") from exc
    return LaplaceAssembly(u=u, mterms=m, alpha=alphas, A=A, B=B, E=E,
                           P_scaled=P, Q_scaled=Q, R_scaled=R, D_scaled=D)


def wellbore_pressure_laplace(p: TriplePorosityParams, u: float) -> float:
    """Dimensionless wellbore pressure in Laplace space, sum_i D_i K0(alpha_i).

    The matrix/fracture/vug expressions for the wellbore pressure must
    agree; their disagreement beyond CONSISTENCY_TOL raises
    ConsistencyError.
    """
    asm = laplace_assembly(p, u)
    pm, pf, pv = asm.wellbore_pressures()
    tol = CONSISTENCY_TOL * abs(pv)
    if abs(pm - pv) > tol or abs(pf - pv) > tol:
        raise ConsistencyError(
            f"wellbore pressure triple equality violated at u={u!r}: "
            f"matrix={pm!r} fracture={pf!r} vug={pv!r}")
    return pv


def field_pressure_laplace(p: TriplePorosityParams, u: float,
                           r_d: float) -> tuple[float, float, float]:
    """Laplace-space pressures (matrix, fracture, vug) at radius r_d >= 1."""
    u = _check_u(u)
    r_d = float(r_d)
    if not (math.isfinite(r_d) and r_d >= 1.0):
        raise ValueError(f"r_d must be >= 1, got {r_d!r}")
    asm = laplace_assembly(p, u)
    # K0(alpha r) = k0e(alpha r) e^{-alpha r}; with D_scaled = D e^{-alpha}
    # the net factor is e^{-alpha (r-1)}, which underflows harmlessly.
    terms = []
    for i in range(3):
        a = asm.alpha.alpha[i]
        terms.append(asm.D_scaled[i] * bessel_k0_scaled(a * r_d)
                     * math.exp(-a * (r_d - 1.0)))
    pv = math.fsum(terms)
    pm = math.fsum(asm.A[i] * terms[i] for i in range(3))
    pf = math.fsum(asm.B[i] * terms[i] for i in range(3))
    return pm, pf, pv


def single_medium_pressure_laplace(alpha_order: float, u: float,
                                   r_d: float = 1.0) -> float:
    """Laplace-space pressure of the single-medium fractional model.

    p(u, r_d) = K0(r_d sqrt(u^a)) / (u sqrt(u^a) K1(sqrt(u^a))), the
    decaying branch of the modified Bessel equation.
    """
    if not 0.0 < alpha_order <= 1.0:
        raise ValueError(f"fractional order must be in (0, 1], got {alpha_order!r}")
    u = _check_u(u)
    r_d = float(r_d)
    if not (math.isfinite(r_d) and r_d >= 1.0):
        raise ValueError(f"r_d must be >= 1, got {r_d!r}")
    z = math.sqrt(u**alpha_order)
    val = bessel_k0_scaled(r_d * z) / (u * z * bessel_k1_scaled(z))
    if r_d != 1.0:
        val *= math.exp(-(r_d - 1.0) * z)
    return val


def to_dimensionless(phys: PhysicalParams) -> DimensionlessTransform:
    """Dimensionless groups and scale factors from dimensional quantities."""
    storage = phys.phi_m * phys.c_m + phys.phi_f * phys.c_f + phys.phi_v * phys.c_v
    ksum = phys.k_m + phys.k_f + phys.k_v
    lam = phys.mu * phys.r_w**2 / ksum
    return DimensionlessTransform(
        omega_f=phys.phi_f * phys.c_f / storage,
        omega_v=phys.phi_v * phys.c_v / storage,
        kappa_f=phys.k_f / ksum,
        kappa_v=phys.k_v / ksum,
        lambda_mf=phys.a_mf * lam,
        lambda_mv=phys.a_mv * lam,
        lambda_fv=phys.a_fv * lam,
        t_scale=ksum / (phys.mu * phys.r_w**2 * storage),
        p_scale=2.0 * math.pi * phys.h * ksum / (phys.q0 * phys.b0 * phys.mu))


def from_dimensionless(p_d: float, scales: DimensionlessTransform,
                       phys: PhysicalParams) -> float:
    """Pressure in Pa from a dimensionless pressure deficit value."""
    return phys.p_i - p_d / scales.p_scale
