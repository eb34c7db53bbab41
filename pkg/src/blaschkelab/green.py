"""Test fields, Laplacian decompositions, and the zero-sum identity.

The field is always g_s(z) = (1 - |z|^2)^{1+p} * phi(s z), where phi is a
rational boundary weight |R|^2 or the mixed weight |R|^2 h^q.  Its
distributional Laplacian against log|f(sz)| converts the weighted zero sum
of f into a disc integral, plus a circle term when p = 0 (the field then
has a nonvanishing normal derivative on the boundary).

The rational decomposition is exact in closed form.  The mixed one takes
the h-derivatives numerically; points where the one-sided differences of
h^q disagree (the distance function kinks along the medial set of E) raise
NonSmoothPointError so the caller can resample.  The identity integrator
resamples on its own by nudging offending nodes off the kink rays, and it
adds the singular line part of the mixed Laplacian, which lives on those
rays and is invisible to area quadrature, as explicit 1-D integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

from .errors import DomainError, NonSmoothPointError
from .funcs import (
    LOG_FLOOR,
    AnalyticFunctionSpec,
    eval_log_modulus,
    log_minus,
    log_plus,
)
from .quad import (
    QuadratureConfig,
    _integrate_complex_interval,
    integrate_circle,
    integrate_disc,
)
from .weights import (
    MixedWeightSpec,
    RationalWeightSpec,
    eval_R_modulus,
    eval_h,
)
from .zeros import Region, locate_zeros

__all__ = [
    "FieldSpec",
    "LaplacianSplit",
    "GreenReport",
    "eval_g",
    "laplacian_split_rational",
    "laplacian_split_mixed",
    "boundary_term",
    "green_identity_residual",
    "green_identity_report",
]

WeightLike = Union[RationalWeightSpec, MixedWeightSpec]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FieldSpec:
    """g_s(z) = (1 - |z|^2)^{1+p} * phi(s z)."""

    weight: WeightLike
    p: float
    s: float

    def __post_init__(self):
        if not (self.p >= 0.0):
            raise DomainError(f"p must be >= 0, got {self.p}")
        if not (0.0 < self.s < 1.0):
            raise DomainError(f"s must be in (0, 1), got {self.s}")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "s", float(self.s))

    @property
    def is_mixed(self) -> bool:
        return isinstance(self.weight, MixedWeightSpec)

    @property
    def rational(self) -> RationalWeightSpec:
        return self.weight.rational if self.is_mixed else self.weight


def _phi(field: FieldSpec, u):
    """phi evaluated at points u (callers pass u = s*z)."""
    r2 = eval_R_modulus(field.rational, u, power=2.0)
    if field.is_mixed:
        return r2 * eval_h(field.weight.closed_set, u) ** field.weight.q_dist
    return r2


def eval_g(field: FieldSpec, z):
    """(1 - |z|^2)^{1+p} * phi(s z); vanishes on |z| = 1."""
    zz = np.asarray(z, dtype=complex)
    one_minus = 1.0 - np.abs(zz) ** 2
    return one_minus ** (1.0 + field.p) * _phi(field, field.s * zz)


@dataclass(frozen=True)
class LaplacianSplit:
    """Closed-form pieces of the field Laplacian with rational weight:
    total = delta_plus - delta_minus + delta_mixed, where the first two are
    nonnegative pointwise and delta_mixed is the signed cross term."""

    delta_plus: float
    delta_minus: float
    delta_mixed: float

    @property
    def total(self) -> float:
        return self.delta_plus - self.delta_minus + self.delta_mixed


def _log_deriv_R(spec: RationalWeightSpec, u):
    """R'/R = sum_j q_j / (u - eta_j)."""
    uu = np.asarray(u, dtype=complex)
    out = np.zeros(uu.shape, dtype=complex)
    for eta, q in zip(spec.points, spec.exponents):
        out = out + q / (uu - eta)
    return out


def _rational_pieces(field: FieldSpec, zz, reduced: bool):
    """The three split components, vectorized.

    reduced=True drops the common factor (1 - |z|^2)^{p-1}, leaving only
    nonnegative powers of (1 - |z|^2); this is the stable form that disc
    quadrature consumes through its radial weight channel.
    """
    p, s = field.p, field.s
    u = s * zz
    w = np.abs(zz) ** 2
    om = 1.0 - w
    r2 = eval_R_modulus(field.rational, u, power=2.0)
    S = _log_deriv_R(field.rational, u)
    lead = np.ones_like(om) if reduced else om ** (p - 1.0)
    plus = 4.0 * lead * (p * (p + 1.0) * w + s * s * om * om * np.abs(S) ** 2) * r2
    minus = 4.0 * (p + 1.0) * lead * om * r2
    cross = -8.0 * s * (p + 1.0) * lead * om * np.real(np.conj(zz) * np.conj(S)) * r2
    return plus, minus, cross


def laplacian_split_rational(field: FieldSpec, z: complex) -> LaplacianSplit:
    """Exact Laplacian of g_s for a rational weight, split into the
    nonnegative terms and the cross term.

    delta_plus  = 4(1-|z|^2)^{p-1} [p(p+1)|z|^2
                    + s^2 (1-|z|^2)^2 |sum_j q_j/(sz - eta_j)|^2] |R(sz)|^2
    delta_minus = 4(p+1)(1-|z|^2)^p |R(sz)|^2
    delta_mixed = -8 s (p+1)(1-|z|^2)^p Re[conj(z) conj(R'/R)(sz)] |R(sz)|^2
    """
    if field.is_mixed:
        raise DomainError("rational split requires a rational weight")
    zz = np.asarray(complex(z), dtype=complex)
    if abs(complex(z)) >= 1.0:
        raise DomainError("the split is defined inside the open disc")
    plus, minus, cross = _rational_pieces(field, zz, reduced=False)
    return LaplacianSplit(float(plus), float(minus), float(cross))


def _medial_rays(E) -> tuple[tuple[float, float], ...]:
    """(bisector angle, half width) for each gap between the arcs of E.

    Inside the disc, d(., E) is smooth except on the radial ray bisecting
    each complementary arc: crossing it switches the nearest endpoint of E,
    so the gradient jumps there.  A one-arc set of zero length degenerates
    to half width pi, wiping out the jump, and a set covering the circle
    has no rays at all.
    """
    return tuple(
        (0.5 * (lo + hi), 0.5 * (hi - lo)) for lo, hi in E.complementary_arcs()
    )


def _wrap_pi(x: float) -> float:
    """x reduced modulo 2 pi into [-pi, pi]."""
    return math.remainder(x, _TWO_PI)


def _hq_stencil(field: FieldSpec, u, step_scale: float,
                resample_medial: bool = False):
    """h^q, its Wirtinger derivative, and its Laplacian at points u, by a
    five-point cross with per-point step.

    Raises NonSmoothPointError when the one-sided differences disagree
    beyond what smooth curvature can explain, which happens on the medial
    set of the distance function.  With resample_medial=True the offending
    points are nudged tangentially off the nearest kink ray instead; the
    smooth part of the Laplacian extends continuously across the ray, so a
    quadrature caller loses only O(nudge) accuracy at isolated nodes.
    """
    E = field.weight.closed_set
    q = field.weight.q_dist
    uu = np.asarray(u, dtype=complex)
    flat = uu.ravel().copy()
    rays = _medial_rays(E) if resample_medial else ()
    offs = np.array([0.0, 1.0, -1.0, 1j, -1j], dtype=complex)
    for attempt in range(7):
        step = step_scale * (1.0 - np.abs(flat))
        pts = flat[None, :] + offs[:, None] * step[None, :]
        hq = eval_h(E, pts) ** q
        f0, fxp, fxm, fyp, fym = hq

        # smooth h^q keeps one-sided slopes within O(step/h) of each other,
        # here below 1e-2 of the local derivative scale; a kink in d(., E)
        # jumps by order one of that scale
        scale = abs(q) * eval_h(E, flat) ** (q - 1.0) + 1e-300
        bad = np.zeros(flat.shape, dtype=bool)
        for a, b in ((fxp, fxm), (fyp, fym)):
            jump = np.abs((a - f0) - (f0 - b)) / step
            bad |= jump > 0.1 * scale
        if not np.any(bad):
            break
        if not rays or attempt == 6:
            raise NonSmoothPointError(
                f"one-sided differences of h^q disagree at "
                f"{complex(flat[np.flatnonzero(bad)[0]])}: the point is on "
                f"the medial set"
            )
        # push each offender perpendicular to its nearest bisector ray, on
        # the side it already leans toward; the nudge grows geometrically
        # so points near the origin, where rays converge, escape them all
        for i in np.flatnonzero(bad):
            ang = math.atan2(flat[i].imag, flat[i].real)
            psi = min(rays, key=lambda r: abs(_wrap_pi(ang - r[0])))[0]
            side = 1.0 if _wrap_pi(ang - psi) >= 0.0 else -1.0
            normal = complex(-math.sin(psi), math.cos(psi))
            flat[i] = flat[i] + side * 6.0 * 2.0**attempt * step[i] * normal

    lap = (fxp + fxm + fyp + fym - 4.0 * f0) / step**2
    dx = (fxp - fxm) / (2.0 * step)
    dy = (fyp - fym) / (2.0 * step)
    dbar = 0.5 * (dx + 1j * dy)
    return (f0.reshape(uu.shape), dbar.reshape(uu.shape), lap.reshape(uu.shape))


def _mixed_pieces(field: FieldSpec, zz, reduced: bool, step_scale: float,
                  resample_medial: bool = False):
    """The seven Laplacian components for the mixed weight, vectorized.

    reduced=True divides out (1 - |z|^2)^{p-1} as in the rational case.
    """
    p, s = field.p, field.s
    u = s * zz
    w = np.abs(zz) ** 2
    om = 1.0 - w
    rat = field.rational
    r2 = eval_R_modulus(rat, u, power=2.0)
    S = _log_deriv_R(rat, u)
    hq, dbar_hq, lap_hq = _hq_stencil(field, u, step_scale,
                                      resample_medial=resample_medial)
    d_hq = np.conj(dbar_hq)

    lead = np.ones_like(om) if reduced else om ** (p - 1.0)
    # Laplacian of (1-|z|^2)^{p+1}, with the common power factored out
    lap_u = 4.0 * (p + 1.0) * lead * (p * w - om)
    phi = r2 * hq
    a1 = 0.5 * lap_u * phi
    a2 = a1.copy()
    a3 = lead * om * om * 4.0 * s * s * np.abs(S) ** 2 * r2 * hq
    a4 = s * s * lead * om * om * r2 * lap_hq
    a5 = 8.0 * s * s * lead * om * om * np.real(np.conj(S) * r2 * d_hq)
    cross_u = -8.0 * s * (p + 1.0) * lead * om * np.real(np.conj(zz) * np.conj(S))
    a6 = cross_u * r2 * hq
    a7 = 8.0 * r2 * np.real(-(p + 1.0) * lead * om * np.conj(zz) * s * dbar_hq)
    return a1, a2, a3, a4, a5, a6, a7


def laplacian_split_mixed(
    field: FieldSpec, z: complex, step_scale: float = 1e-3
) -> list[float]:
    """The seven components of the Laplacian of the mixed field at z.

    Derivatives of |R|^2 and of the radial factor are closed-form; the two
    h^q derivatives come from a five-point cross of width
    step_scale * (1 - |sz|).  Their sum matches a finite-difference
    Laplacian of eval_g to O(h^2) away from the medial set of d(., E).
    """
    if not field.is_mixed:
        raise DomainError("mixed split requires a mixed weight")
    if abs(complex(z)) >= 1.0:
        raise DomainError("the split is defined inside the open disc")
    zz = np.asarray(complex(z), dtype=complex)
    terms = _mixed_pieces(field, zz, reduced=False, step_scale=step_scale)
    return [float(t) for t in terms]


def _reduced_laplacian(field: FieldSpec, zz, step_scale: float = 1e-3):
    """Laplacian of g_s divided by (1 - |z|^2)^{p-1}, vectorized and free
    of boundary blow-up."""
    if field.is_mixed:
        terms = _mixed_pieces(field, zz, reduced=True, step_scale=step_scale,
                              resample_medial=True)
        return sum(terms)
    plus, minus, cross = _rational_pieces(field, zz, reduced=True)
    return plus - minus + cross


def _merged_cfg(field: FieldSpec, f: AnalyticFunctionSpec,
                cfg: Optional[QuadratureConfig]) -> QuadratureConfig:
    """Seed the quadrature mesh with the weight singularities and the
    directions of the known zeros of f."""
    base = cfg if cfg is not None else QuadratureConfig()
    hints = list(base.grading_points) + list(field.rational.points)
    if field.is_mixed:
        hints += list(field.weight.closed_set.endpoints)
    if f.known_zeros:
        hints += [a / abs(a) for a, _ in f.known_zeros if abs(a) > 1e-9]
    return replace(base, grading_points=tuple(hints))


def boundary_term(
    f: AnalyticFunctionSpec,
    field: FieldSpec,
    cfg: Optional[QuadratureConfig] = None,
) -> tuple[float, float]:
    """(B_plus, B_minus) with B_pm = 2 * integral over the circle of
    phi(s e^{i theta}) log_pm |f(s e^{i theta})| d theta.

    Only the p = 0 field carries this term: its normal derivative on the
    unit circle is -2 phi(sz) instead of zero.
    """
    if field.p != 0.0:
        raise DomainError("the boundary term belongs to the p = 0 field")
    use = _merged_cfg(field, f, cfg)
    s = field.s

    def _part(sign_part):
        def integrand(theta):
            zz = s * np.exp(1j * np.asarray(theta))
            lm = np.maximum(eval_log_modulus(f, zz), LOG_FLOOR)
            return _phi(field, zz) * sign_part(lm)

        return integrate_circle(integrand, s, use)

    res_p = _part(log_plus)
    res_m = _part(log_minus)
    return 2.0 * res_p.value, 2.0 * res_m.value


def _medial_line_term(
    f: AnalyticFunctionSpec, field: FieldSpec, use: QuadratureConfig
) -> tuple[float, float]:
    """The singular line part of the integral of log|f(sz)| Laplacian(g_s).

    Along the bisector ray of a gap of half width gamma, the normal
    derivative of d(sz, E) jumps by -2 sin(gamma) / h, so the Laplacian of
    h(sz)^q carries the line density

        sigma(t) = -2 s q sin(gamma) (1-t^2)^{1+p} |R(st e^{i psi})|^2
                   h(st e^{i psi})^{q-2},      t in [0, 1),

    on the ray through angle psi (the factor h^{q-1} from the chain rule
    meets one inverse h from the jump).  Area quadrature cannot see a line
    measure; this evaluates the matching 1-D integrals, one per gap, and
    returns (value, error estimate).  Zero for rational weights and when
    q_dist = 0.
    """
    if not field.is_mixed:
        return 0.0, 0.0
    q = field.weight.q_dist
    if q == 0.0:
        return 0.0, 0.0
    E = field.weight.closed_set
    p, s = field.p, field.s
    rat = field.rational
    total = 0.0
    total_err = 0.0
    for psi, gamma in _medial_rays(E):
        coeff = -2.0 * s * q * math.sin(gamma)
        if coeff == 0.0:
            continue
        direction = complex(math.cos(psi), math.sin(psi))

        def density(t, direction=direction, coeff=coeff):
            tt = np.asarray(t, dtype=float)
            uu = s * tt * direction
            lm = np.maximum(eval_log_modulus(f, uu), LOG_FLOOR)
            r2 = eval_R_modulus(rat, uu, power=2.0)
            hval = eval_h(E, uu)
            return coeff * lm * (1.0 - tt**2) ** (1.0 + p) * r2 * hval ** (q - 2.0)

        val, err, _, _ = _integrate_complex_interval(
            density, 0.0, 1.0,
            rel_tol=use.rel_tol, abs_tol=use.abs_tol, max_cells=use.max_cells,
        )
        total += val.real
        total_err += err
    return total, total_err


@dataclass(frozen=True)
class GreenReport:
    """The identity's three sides and their mismatch.  residual should be
    zero in exact arithmetic; quadrature_error bounds the numerics."""

    zero_side: float
    integral_side: float
    boundary_plus: float
    boundary_minus: float
    residual: float
    quadrature_error: float
    zero_count: int


def green_identity_report(
    f: AnalyticFunctionSpec,
    field: FieldSpec,
    cfg: Optional[QuadratureConfig] = None,
    use_known_zeros: bool = True,
) -> GreenReport:
    """Checks sum_{a in Z(f_s)} g_s(a) against the smoothed side.

    With u = log|f(sz)| and Delta u = 2 pi sum of point masses at the
    zeros of f_s, Green's formula on the disc gives

        sum m_a g_s(a)  =  (1/2pi) integral of u * Laplacian(g_s) dA
                           + [p = 0 only] (B_plus - B_minus) / 2pi,

    since g_s vanishes on the circle and, for p > 0, so does its normal
    derivative.  For a mixed weight the Laplacian splits into an absolutely
    continuous part, handled by disc quadrature with kink-avoiding nodes,
    and a line part along the gap bisectors of E, handled by
    _medial_line_term.  The residual is lhs minus rhs.
    """
    p, s = field.p, field.s
    zset = locate_zeros(f, Region.disc(0.0j, s), use_known=use_known_zeros)
    pulled = [(a / s, m) for a, m in zset.zeros]
    zero_side = math.fsum(
        m * float(eval_g(field, np.asarray(a, dtype=complex))) for a, m in pulled
    )

    use = _merged_cfg(field, f, cfg)

    def integrand(zz):
        lm = np.maximum(eval_log_modulus(f, s * zz), LOG_FLOOR)
        red = _reduced_laplacian(field, zz)
        if p == 0.0:
            red = red / (1.0 - np.abs(zz) ** 2)
        return lm * red

    rp = (p - 1.0) if p > 0.0 else 0.0
    res = integrate_disc(integrand, use, radial_power=rp)
    line_value, line_err = _medial_line_term(f, field, use)
    integral_side = (res.value + line_value) / _TWO_PI
    err = (res.error_estimate + line_err) / _TWO_PI

    b_plus = b_minus = 0.0
    if p == 0.0:
        b_plus, b_minus = boundary_term(f, field, cfg)
    residual = zero_side - integral_side - (b_plus - b_minus) / _TWO_PI
    return GreenReport(
        zero_side=zero_side,
        integral_side=integral_side,
        boundary_plus=b_plus,
        boundary_minus=b_minus,
        residual=residual,
        quadrature_error=err,
        zero_count=zset.certified_count,
    )


def green_identity_residual(
    f: AnalyticFunctionSpec,
    field: FieldSpec,
    cfg: Optional[QuadratureConfig] = None,
) -> float:
    """The identity mismatch alone; see green_identity_report."""
    return green_identity_report(f, field, cfg).residual
