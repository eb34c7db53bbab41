"""Numerical checks for the supporting lemmas: the substitution bound with
its exact constant, the half-disc sign equivalence, continuity of weighted
log-minus boundary integrals, integrability of corner-weighted area
integrals, the dilation limit mechanism behind every zero-sum statement, and
the change-of-variables remark for p >= 1.

Each check computes both sides of its inequality by quadrature and passes
when lhs <= rhs + budget, where the budget collects the quadrature error
estimates of every integral involved (inequalities between computed numbers
can only be asserted up to the accuracy of the numbers)."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError
from .funcs import LOG_FLOOR, AnalyticFunctionSpec, eval_log_modulus
from .nevan import VerificationReport, _sum_below_radius, norm_p_positive
from .quad import (
    QuadratureConfig,
    QuadratureResult,
    geometric_s_grid,
    integrate_circle,
    integrate_disc,
)
from .weights import RationalWeightSpec, eval_R_modulus
from .zeros import Region, locate_zeros

__all__ = [
    "SubstitutionParams",
    "ContinuityTable",
    "substitution_constants",
    "substitution_check",
    "substitution_check_torus",
    "halfdisc_sign",
    "continuity_probe",
    "zf17_bound",
    "limit_sum_check",
    "remark_change_of_variables",
]


@dataclass(frozen=True)
class SubstitutionParams:
    """Constants of the substitution bound.

    delta_exp is the bound's exponent bump (distinct from the dilation-band
    delta of the norm definitions).  alpha and beta are the envelope
    exponents of min/max_theta |R(rho e^{i theta})|^2 and c_delta_u the
    closed-form constant combining them."""

    delta_exp: float
    u: float
    alpha: float
    beta: float
    c_delta_u: float


@dataclass(frozen=True)
class ContinuityTable:
    """Max adjacent jump of s -> integral_T phi(s e^{i t}) log-|f(s e^{i t})| dt
    on nested sample grids.  levels holds (sample count, max jump); ratios
    holds jump ratios between consecutive levels (0 when both jumps vanish,
    inf when a jump appears out of nothing)."""

    levels: tuple[tuple[int, float], ...]
    ratios: tuple[float, ...]


def substitution_constants(
    weight: RationalWeightSpec, delta_exp: float, u: float
) -> SubstitutionParams:
    """c(delta, u) = 2 * 4^{|q|} * (1-u)^{delta - alpha - beta} with
    alpha = -2 max_j max(0, -q_j) and beta = 2 max_j q_j (both 0 for the
    empty weight, giving c = 2 (1-u)^delta)."""
    if not delta_exp > 0:
        raise DomainError(f"delta_exp must be > 0, got {delta_exp}")
    if not (0.0 < u < 1.0):
        raise DomainError(f"u must be in (0, 1), got {u}")
    alpha = -2.0 * max((max(0.0, -q) for q in weight.exponents), default=0.0)
    beta = 2.0 * max(weight.exponents, default=0.0)
    c = 2.0 * 4.0**weight.q_total_abs * (1.0 - u) ** (delta_exp - alpha - beta)
    return SubstitutionParams(
        delta_exp=float(delta_exp), u=float(u), alpha=alpha, beta=beta, c_delta_u=c
    )


def _log_minus_of(f: AnalyticFunctionSpec, u):
    """log-|f(u)| clamped at -LOG_FLOOR so a quadrature node landing exactly
    on a zero stays finite; the clamp changes the integral by nothing
    measurable (the affected set has radius ~ exp(LOG_FLOOR))."""
    return np.minimum(np.maximum(-eval_log_modulus(f, u), 0.0), -LOG_FLOOR)


def substitution_check(
    f: AnalyticFunctionSpec,
    weight: RationalWeightSpec,
    p: float,
    delta_exp: float,
    u: float,
    s: float,
    cfg: Optional[QuadratureConfig] = None,
) -> VerificationReport:
    """Disc form of the substitution bound at one dilation s:

        int_D (1-|z|^2)^{p-1+delta} |R(sz)|^2 log-|f(sz)|
            <= (1-u^2)^delta u^{-2} P_minus(s) + c(delta, u) P_plus(s)

    with P_minus(s) = int_D (1-|z|^2)^{p-1} |z|^2 |R(sz)|^2 log-|f(sz)| and
    P_plus(s) the log+ integral without the |z|^2 factor.  Needs p > 0 so the
    right-hand integrals carry an integrable radial weight; the p = 0
    analogue is the torus form below.
    """
    if not p > 0:
        raise DomainError(f"the disc form needs p > 0, got {p}")
    if not (0.0 <= s < 1.0):
        raise DomainError(f"s must lie in [0, 1), got {s}")
    params = substitution_constants(weight, delta_exp, u)
    use = cfg if cfg is not None else QuadratureConfig()
    if weight.points:
        use = replace(use, grading_points=tuple(set(use.grading_points) | set(weight.points)))

    def lhs_integrand(zz):
        w = s * zz
        return eval_R_modulus(weight, w, power=2.0) * _log_minus_of(f, w)

    def minus_integrand(zz):
        w = s * zz
        return np.abs(zz) ** 2 * eval_R_modulus(weight, w, power=2.0) * _log_minus_of(f, w)

    def plus_integrand(zz):
        w = s * zz
        return eval_R_modulus(weight, w, power=2.0) * np.maximum(eval_log_modulus(f, w), 0.0)

    r_lhs = integrate_disc(lhs_integrand, use, radial_power=p - 1.0 + delta_exp)
    r_minus = integrate_disc(minus_integrand, use, radial_power=p - 1.0)
    r_plus = integrate_disc(plus_integrand, use, radial_power=p - 1.0)

    coeff_minus = (1.0 - u * u) ** delta_exp / (u * u)
    rhs = coeff_minus * r_minus.value + params.c_delta_u * r_plus.value
    budget = (
        r_lhs.error_estimate
        + coeff_minus * r_minus.error_estimate
        + params.c_delta_u * r_plus.error_estimate
        + 1e-12 * (1.0 + abs(rhs))
    )
    converged = r_lhs.converged and r_minus.converged and r_plus.converged
    lhs = r_lhs.value
    ratio = lhs / rhs if rhs > 0.0 else (0.0 if lhs <= 0.0 else math.inf)
    return VerificationReport(
        theorem_id="substitution_disc",
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        constant_used=params.c_delta_u,
        passed=bool(converged and lhs <= rhs + budget),
        diagnostics={
            "s": s,
            "p_minus": r_minus.value,
            "p_plus": r_plus.value,
            "params": params,
            "budget": budget,
        },
    )


def substitution_check_torus(
    f: AnalyticFunctionSpec,
    weight: RationalWeightSpec,
    delta_exp: float,
    u: float,
    t0: float,
    cfg: Optional[QuadratureConfig] = None,
    s_grid_size: int = 9,
) -> VerificationReport:
    """Torus form of the substitution bound, the p = 0 variant:

        for all s <= t0,
        int_D (1-|z|^2)^{delta-1} |R(sz)|^2 log-|f(sz)|
            <= c(delta, u) P_T_plus(t0) + (1/(2 delta)) (1-u^2)^delta P_T_minus(t0)

    with P_T_+-(t0) the suprema over s in [0, t0] of the torus integrals of
    |R(s e^{i t})|^2 log+-|f(s e^{i t})| dt.  Both the for-all and the
    suprema run over a shared linspace grid of s values.
    """
    if not (0.0 < t0 < 1.0):
        raise DomainError(f"t0 must lie in (0, 1), got {t0}")
    if s_grid_size < 2:
        raise DomainError(f"s_grid_size must be >= 2, got {s_grid_size}")
    params = substitution_constants(weight, delta_exp, u)
    use = cfg if cfg is not None else QuadratureConfig()
    if weight.points:
        use = replace(use, grading_points=tuple(set(use.grading_points) | set(weight.points)))

    grid = np.linspace(0.0, t0, s_grid_size)
    worst_lhs = -math.inf
    worst_s = 0.0
    p_plus = 0.0
    p_minus = 0.0
    err_lhs = 0.0
    err_plus = 0.0
    err_minus = 0.0
    converged = True
    for s in grid:
        s = float(s)

        def disc_integrand(zz, s=s):
            w = s * zz
            return eval_R_modulus(weight, w, power=2.0) * _log_minus_of(f, w)

        def circ_plus(theta, s=s):
            w = s * np.exp(1j * np.asarray(theta, dtype=float))
            return eval_R_modulus(weight, w, power=2.0) * np.maximum(eval_log_modulus(f, w), 0.0)

        def circ_minus(theta, s=s):
            w = s * np.exp(1j * np.asarray(theta, dtype=float))
            return eval_R_modulus(weight, w, power=2.0) * _log_minus_of(f, w)

        rd = integrate_disc(disc_integrand, use, radial_power=delta_exp - 1.0)
        rp = integrate_circle(circ_plus, s, use)
        rm = integrate_circle(circ_minus, s, use)
        converged = converged and rd.converged and rp.converged and rm.converged
        if rd.value > worst_lhs:
            worst_lhs, worst_s, err_lhs = rd.value, s, rd.error_estimate
        p_plus = max(p_plus, rp.value)
        p_minus = max(p_minus, rm.value)
        err_plus = max(err_plus, rp.error_estimate)
        err_minus = max(err_minus, rm.error_estimate)

    coeff_minus = (1.0 - u * u) ** delta_exp / (2.0 * delta_exp)
    rhs = params.c_delta_u * p_plus + coeff_minus * p_minus
    budget = (
        err_lhs + params.c_delta_u * err_plus + coeff_minus * err_minus + 1e-12 * (1.0 + abs(rhs))
    )
    lhs = max(worst_lhs, 0.0)
    ratio = lhs / rhs if rhs > 0.0 else (0.0 if lhs <= 0.0 else math.inf)
    return VerificationReport(
        theorem_id="substitution_torus",
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        constant_used=params.c_delta_u,
        passed=bool(converged and lhs <= rhs + budget),
        diagnostics={
            "worst_s": worst_s,
            "p_torus_plus": p_plus,
            "p_torus_minus": p_minus,
            "params": params,
            "budget": budget,
        },
    )


def halfdisc_sign(z: complex, eta: complex) -> tuple[bool, bool]:
    """(Re(conj(z)(z - eta)) <= 0, |z - eta/2| <= 1/2): the sign flag and the
    half-disc membership flag the lemma asserts are equivalent.  Both
    boundaries are the same circle, so ties disagree only within floating
    noise of it."""
    z = complex(z)
    eta = complex(eta)
    if abs(z) >= 1.0:
        raise DomainError(f"z must lie strictly inside the unit disc, got {z}")
    if abs(abs(eta) - 1.0) > 1e-12:
        raise DomainError(f"eta must be unimodular, got {eta}")
    sign_le_zero = (z.conjugate() * (z - eta)).real <= 0.0
    in_halfdisc = abs(z - eta / 2.0) <= 0.5
    return sign_le_zero, in_halfdisc


def continuity_probe(
    f: AnalyticFunctionSpec,
    phi: Callable,
    t: float,
    resolution: int = 32,
    levels: int = 3,
    cfg: Optional[QuadratureConfig] = None,
) -> ContinuityTable:
    """Sample gamma(s) = int_T phi(s e^{i theta}) log-|f(s e^{i theta})| dtheta
    on nested grids over [0, t] and report how the max adjacent jump shrinks
    as the grid halves; continuous gamma means the jumps decay toward 0.

    phi receives the dilated complex points.  Jumps across a dilation that
    crosses a zero radius of f shrink slower than the grid spacing (the
    local modulus of continuity is log-shaped) but still shrink."""
    if not (0.0 < t < 1.0):
        raise DomainError(f"t must lie in (0, 1), got {t}")
    if resolution < 2 or levels < 1:
        raise DomainError("need resolution >= 2 and levels >= 1")
    use = cfg if cfg is not None else QuadratureConfig()

    def gamma(s: float) -> float:
        def integrand(theta):
            w = s * np.exp(1j * np.asarray(theta, dtype=float))
            return phi(w) * _log_minus_of(f, w)

        return integrate_circle(integrand, s, use).value

    cache: dict[float, float] = {}
    out_levels = []
    for level in range(levels):
        n = resolution * 2**level + 1
        grid = np.linspace(0.0, t, n)
        vals = []
        for s in grid:
            key = round(float(s), 15)
            if key not in cache:
                cache[key] = gamma(float(s))
            vals.append(cache[key])
        jumps = [abs(b - a) for a, b in zip(vals[:-1], vals[1:])]
        out_levels.append((n, max(jumps)))

    ratios = []
    for (_, a), (_, b) in zip(out_levels[:-1], out_levels[1:]):
        if a > 0.0:
            ratios.append(b / a)
        else:
            ratios.append(0.0 if b == 0.0 else math.inf)
    return ContinuityTable(levels=tuple(out_levels), ratios=tuple(ratios))


def zf17_bound(
    points: Sequence[complex],
    p: float,
    cfg: Optional[QuadratureConfig] = None,
) -> QuadratureResult:
    """int_D (1-|z|^2)^{p-1} prod_j |z - eta_j|^{-1} dm for distinct
    unimodular eta_j and p > 0.  Finiteness of the converged value is the
    assertion; both singular factors ride on the disc rule's exact weights,
    so the evaluated integrand is the constant 1."""
    if not p > 0:
        raise DomainError(f"p must be > 0, got {p}")
    spec = RationalWeightSpec(points=tuple(points), exponents=(-1.0,) * len(tuple(points)))
    use = cfg if cfg is not None else QuadratureConfig()
    if spec.points:
        use = replace(use, grading_points=tuple(set(use.grading_points) | set(spec.points)))
    corner = tuple((a, -1.0) for a in spec.angles)

    def one(zz):
        return np.ones(zz.shape, dtype=float)

    return integrate_disc(one, use, radial_power=p - 1.0, corner_powers=corner)


def _dilated(f: AnalyticFunctionSpec, s: float) -> AnalyticFunctionSpec:
    """f_s(z) = f(sz) with the zero set deliberately forgotten, so locating
    its zeros exercises the full contour machinery."""
    fe, fd = f.evaluator, f.derivative
    flm = f.log_modulus

    def ev(z):
        return fe(s * np.asarray(z, dtype=complex))

    dv = None
    if fd is not None:

        def dv(z):
            return s * fd(s * np.asarray(z, dtype=complex))

    lm = None
    if flm is not None:

        def lm(z):
            return flm(s * np.asarray(z, dtype=complex))

    return AnalyticFunctionSpec(
        evaluator=ev,
        derivative=dv,
        log_modulus=lm,
        known_zeros=None,
        family=f.family,
        normalization=f.normalization,
        modulus_bound=f.modulus_bound,
    )


def limit_sum_check(
    f: AnalyticFunctionSpec,
    weight: Callable,
    p: float,
    delta: float = 0.5,
    cfg: Optional[QuadratureConfig] = None,
    region_radius: float = 0.85,
    s_check: float = 0.75,
) -> VerificationReport:
    """Mechanism check for the dilation limit argument.

    Three ingredients are verified: the partial sums S(r) over |a| <= r are
    nondecreasing; the zeros of f_s found from scratch coincide with
    (1/s)(Z(f) through D(0, s)); and the full sum S(r_max) stays below
    max(1, worst observed hypothesis ratio) times the sup of the norm-side
    integrals, with 5 percent slack covering the gap between the largest
    grid dilation and the s -> 1 limit.  The hypothesis ratio at s compares
    the dilated sum against the norm integral at that s; the statement's
    own hypothesis asserts it is <= 1, but test families need not satisfy
    that verbatim, so the observed ratio is measured rather than assumed.
    The norm side is the disc integral for p > 0 and the boundary integral
    for p = 0, the two shapes the zero-sum statements use.

    Assumes all zeros of f lie inside region_radius and f is analytic on the
    slightly larger squares the zero search walks (true for every bundled
    family).
    """
    if p < 0:
        raise DomainError(f"p must be >= 0, got {p}")
    if not (0.0 < s_check < 1.0):
        raise DomainError(f"s_check must be in (0, 1), got {s_check}")
    use = cfg if cfg is not None else QuadratureConfig()
    region = Region.disc(0.0 + 0.0j, region_radius)
    zset = locate_zeros(f, region, use_known=True)
    zeros = zset.zeros

    r_grid = np.linspace(0.05, region_radius, 17)
    s_of_r = [(float(r), _sum_below_radius(zeros, weight, p, float(r))) for r in r_grid]
    monotone = all(b >= a for (_, a), (_, b) in zip(s_of_r[:-1], s_of_r[1:]))

    # dilation identity: zeros of f_s, found numerically, must be the zeros
    # of f below radius s, pushed out by 1/s
    sub = Region.disc(0.0 + 0.0j, min(0.9, region_radius / s_check))
    found = locate_zeros(_dilated(f, s_check), sub, use_known=False)
    key = lambda t: (t[0].real, t[0].imag)
    expected = sorted(
        ((a / s_check, m) for a, m in zeros if sub.contains(a / s_check, pad=-1e-6)), key=key
    )
    got = sorted(found.zeros, key=key)
    dilation_ok = len(got) == len(expected) and all(
        abs(ga - ea) <= 1e-6 and gm == em for (ga, gm), (ea, em) in zip(got, expected)
    )

    # hypothesis ratio on the dilation grid, then the limit bound
    s_grid = geometric_s_grid(delta=delta, size=6)
    sup_rhs = 0.0
    err_rhs = 0.0
    worst_ratio = 0.0
    converged = True
    for s in s_grid:
        if p > 0:

            def integrand(zz, s=s):
                w = s * zz
                return weight(w) * np.maximum(eval_log_modulus(f, w), 0.0)

            res = integrate_disc(integrand, use, radial_power=p - 1.0)
        else:

            def integrand(theta, s=s):
                w = s * np.exp(1j * np.asarray(theta, dtype=float))
                return weight(w) * np.maximum(eval_log_modulus(f, w), 0.0)

            res = integrate_circle(integrand, s, use)
        converged = converged and res.converged
        sup_rhs = max(sup_rhs, res.value)
        err_rhs = max(err_rhs, res.error_estimate)
        dil = math.fsum(
            m * (1.0 - abs(a / s) ** 2) ** (p + 1.0) * float(weight(np.asarray(a, dtype=complex)))
            for a, m in zeros
            if abs(a) < s
        )
        if res.value > 0.0:
            worst_ratio = max(worst_ratio, dil / res.value)

    lhs = s_of_r[-1][1]
    constant = max(1.0, worst_ratio)
    rhs = constant * sup_rhs
    budget = 0.05 * rhs + constant * err_rhs + 1e-12 * (1.0 + rhs)
    ratio = lhs / sup_rhs if sup_rhs > 0.0 else (0.0 if lhs <= 0.0 else math.inf)
    passed = bool(converged and monotone and dilation_ok and lhs <= rhs + budget)
    return VerificationReport(
        theorem_id="limit_sum",
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        constant_used=constant,
        passed=passed,
        diagnostics={
            "partial_sums": tuple(s_of_r),
            "monotone": monotone,
            "dilation_identity": dilation_ok,
            "dilation_s": s_check,
            "sup_rhs": sup_rhs,
            "worst_hypothesis_ratio": worst_ratio,
            "budget": budget,
        },
    )


def remark_change_of_variables(
    f: AnalyticFunctionSpec,
    weight: Callable,
    p: float,
    cfg: Optional[QuadratureConfig] = None,
    delta: float = 0.5,
    s_grid: Optional[Sequence[float]] = None,
) -> VerificationReport:
    """For p >= 1 the dilated norm integrals are controlled by the undilated
    one:

        sup_s int_D (1-|z|^2)^{p-1} w(sz) log+|f(sz)|
            <= C int_D (1-|z|^2)^{p-1} w(z) log+|f(z)|

    with C = (1-delta)^{-2}: substituting u = sz costs the Jacobian s^{-2}
    <= (1-delta)^{-2} on the dilation band, and p >= 1 makes the radial
    factor move the right way.  The undilated integral must itself be
    finite, which for growth functions confines the check to envelopes with
    integrable boundary profiles.
    """
    if not p >= 1:
        raise DomainError(f"the remark needs p >= 1, got {p}")
    if not (0.0 < delta < 1.0):
        raise DomainError(f"delta must be in (0, 1), got {delta}")
    use = cfg if cfg is not None else QuadratureConfig()
    est = norm_p_positive(f, weight, p, delta=delta, s_grid=s_grid, cfg=use)

    def undilated(zz):
        return weight(zz) * np.maximum(eval_log_modulus(f, zz), 0.0)

    base = integrate_disc(undilated, use, radial_power=p - 1.0)
    constant = (1.0 - delta) ** -2.0
    lhs = est.value
    rhs = constant * base.value
    budget = constant * base.error_estimate + 1e-12 * (1.0 + abs(rhs))
    converged = est.converged and base.converged
    ratio = lhs / base.value if base.value > 0.0 else (0.0 if lhs <= 0.0 else math.inf)
    return VerificationReport(
        theorem_id="remark_change_of_variables",
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        constant_used=constant,
        passed=bool(converged and lhs <= rhs + budget),
        diagnostics={"undilated": base.value, "per_s": est.per_s, "budget": budget},
    )
