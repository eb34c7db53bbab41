"""Field Laplacians and the weighted zero-sum identity."""

import math

import numpy as np
import pytest

from blaschkelab.errors import DomainError, NonSmoothPointError
from blaschkelab.funcs import make_blaschke_product, make_constant, multiply
from blaschkelab.green import (
    FieldSpec,
    LaplacianSplit,
    boundary_term,
    eval_g,
    green_identity_report,
    laplacian_split_mixed,
    laplacian_split_rational,
)
from blaschkelab.quad import QuadratureConfig
from blaschkelab.weights import ClosedArcSet, MixedWeightSpec, RationalWeightSpec

from conftest import richardson_slopes

EMPTY = RationalWeightSpec(points=(), exponents=())
ONE_POINT = RationalWeightSpec(points=(1.0 + 0.0j,), exponents=(1.0,))

FAST = QuadratureConfig(rel_tol=1e-6, abs_tol=1e-9)


def _fd_laplacian(field, z, h):
    g = lambda w: float(eval_g(field, np.asarray(w, dtype=complex)))
    return (g(z + h) + g(z - h) + g(z + 1j * h) + g(z - 1j * h) - 4.0 * g(z)) / h**2


def test_field_spec_validation():
    with pytest.raises(DomainError):
        FieldSpec(weight=EMPTY, p=-0.5, s=0.5)
    with pytest.raises(DomainError):
        FieldSpec(weight=EMPTY, p=1.0, s=1.0)
    f = FieldSpec(weight=ONE_POINT, p=1.0, s=0.5)
    assert not f.is_mixed
    assert f.rational is f.weight


def test_eval_g_worked_value():
    field = FieldSpec(weight=ONE_POINT, p=1.0, s=0.5)
    # (1 - 0.25)^2 * |0.25 - 1|^2
    assert float(eval_g(field, 0.5 + 0.0j)) == pytest.approx(0.31640625, rel=1e-15)
    assert float(eval_g(field, 0.0 + 0.999999j)) < 1e-11


def test_rational_split_worked_values_at_origin():
    field = FieldSpec(weight=ONE_POINT, p=1.0, s=0.5)
    sp = laplacian_split_rational(field, 0.0 + 0.0j)
    assert sp.delta_plus == pytest.approx(1.0, rel=1e-14)
    assert sp.delta_minus == pytest.approx(8.0, rel=1e-14)
    assert sp.delta_mixed == pytest.approx(0.0, abs=1e-14)
    assert sp.total == pytest.approx(-7.0, rel=1e-14)


def test_rational_split_nonnegative_parts():
    rng = np.random.default_rng(3)
    field = FieldSpec(
        weight=RationalWeightSpec(points=(1.0 + 0.0j, 1j), exponents=(1.5, -0.5)),
        p=0.7, s=0.8,
    )
    for _ in range(200):
        z = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))
        if abs(z) >= 0.95:
            continue
        sp = laplacian_split_rational(field, z)
        assert sp.delta_plus >= 0.0
        assert sp.delta_minus >= 0.0


@pytest.mark.parametrize("p", [0.5, 2.0])
def test_unweighted_field_matches_closed_form(p):
    # Laplacian of (1-|z|^2)^{1+p} is
    # 4(1+p) (1-|z|^2)^{p-1} (p |z|^2 - (1-|z|^2))
    field = FieldSpec(weight=EMPTY, p=p, s=0.5)
    for z in (0.2 + 0.1j, -0.4 + 0.3j, 0.6j):
        w = abs(z) ** 2
        want = 4.0 * (1.0 + p) * (1.0 - w) ** (p - 1.0) * (p * w - (1.0 - w))
        assert laplacian_split_rational(field, z).total == pytest.approx(want, rel=1e-12)


def test_rational_split_matches_finite_differences():
    field = FieldSpec(weight=ONE_POINT, p=1.0, s=0.6)
    for z in (0.25 + 0.15j, -0.3 - 0.4j):
        exact = laplacian_split_rational(field, z).total
        errs = [abs(_fd_laplacian(field, z, h) - exact) for h in (1e-2, 5e-3, 2.5e-3)]
        for slope in richardson_slopes(errs):
            assert 1.6 <= slope <= 2.4


def _mixed_field(q_dist=1.0, p=1.0, s=0.9):
    E = ClosedArcSet(arcs=((-0.5, 0.5),))
    R = RationalWeightSpec(points=(1j,), exponents=(1.0,))
    return FieldSpec(
        weight=MixedWeightSpec(rational=R, closed_set=E, q_dist=q_dist),
        p=p, s=s,
    )


def test_mixed_split_matches_finite_differences_off_the_kinks():
    field = _mixed_field()
    for z in (0.2 + 0.3j, 0.4 - 0.2j):
        exact = sum(laplacian_split_mixed(field, z))
        errs = [abs(_fd_laplacian(field, z, h) - exact) for h in (1e-2, 5e-3, 2.5e-3)]
        for slope in richardson_slopes(errs):
            assert 1.5 <= slope <= 2.5


def test_mixed_split_raises_on_the_medial_ray():
    # the gap of E = arc(-0.5, 0.5) has its bisector on the negative real
    # axis, where d(., E) kinks
    field = _mixed_field()
    with pytest.raises(NonSmoothPointError):
        laplacian_split_mixed(field, -0.5 + 0.0j)


def test_mixed_split_with_zero_distance_power_matches_rational():
    E = ClosedArcSet(arcs=((-0.5, 0.5),))
    R = RationalWeightSpec(points=(1j,), exponents=(1.0,))
    mixed = FieldSpec(
        weight=MixedWeightSpec(rational=R, closed_set=E, q_dist=0.0),
        p=1.0, s=0.7,
    )
    plain = FieldSpec(weight=R, p=1.0, s=0.7)
    for z in (0.3 + 0.1j, -0.2 + 0.4j):
        total = sum(laplacian_split_mixed(mixed, z))
        assert total == pytest.approx(laplacian_split_rational(plain, z).total, rel=1e-7)


def test_boundary_term_constants():
    field = FieldSpec(weight=EMPTY, p=0.0, s=0.5)
    bp, bm = boundary_term(make_constant(math.e), field, FAST)
    assert bp == pytest.approx(4.0 * math.pi, rel=1e-9)
    assert bm == pytest.approx(0.0, abs=1e-12)
    bp1, bm1 = boundary_term(make_constant(1.0), field, FAST)
    assert bp1 == pytest.approx(0.0, abs=1e-12)
    assert bm1 == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DomainError):
        boundary_term(make_constant(1.0), FieldSpec(weight=EMPTY, p=1.0, s=0.5))


def test_boundary_term_difference_matches_jensen():
    # (1/2pi) int log|f(s e^{i t})| dt = log(s/|a|) for a normalized
    # Blaschke factor with |a| < s
    field = FieldSpec(weight=EMPTY, p=0.0, s=0.9)
    f = make_blaschke_product([(0.5 + 0.0j, 1)])
    bp, bm = boundary_term(f, field, FAST)
    assert bp - bm == pytest.approx(4.0 * math.pi * math.log(0.9 / 0.5), rel=1e-6)


def test_identity_trivial_for_unimodular_constant():
    field = FieldSpec(weight=ONE_POINT, p=1.0, s=0.5)
    rep = green_identity_report(make_constant(1.0), field, FAST)
    assert rep.zero_count == 0
    assert rep.zero_side == 0.0
    assert abs(rep.residual) < 1e-14


def test_identity_for_single_zero_at_origin():
    field = FieldSpec(weight=EMPTY, p=1.0, s=0.9)
    f = make_blaschke_product([(0.0 + 0.0j, 1)], normalize=False)
    cfg = QuadratureConfig(rel_tol=1e-9, abs_tol=1e-12)
    rep = green_identity_report(f, field, cfg)
    assert rep.zero_count == 1
    assert rep.zero_side == pytest.approx(1.0, rel=1e-12)  # g at the origin
    assert abs(rep.residual) < 1e-6


def test_identity_scales_linearly_in_multiplicity():
    field = FieldSpec(weight=ONE_POINT, p=1.0, s=0.8)
    f = make_blaschke_product([(0.3 + 0.2j, 1)], normalize=False)
    f2 = multiply(f, f)
    r1 = green_identity_report(f, field, FAST)
    r2 = green_identity_report(f2, field, FAST)
    assert r2.zero_side == pytest.approx(2.0 * r1.zero_side, rel=1e-12)
    assert r2.integral_side == pytest.approx(2.0 * r1.integral_side, rel=1e-4)
    assert abs(r2.residual) < 1e-4


def test_identity_with_boundary_terms_for_p_zero():
    # u = 1: the disc integral balances the boundary pair exactly
    field = FieldSpec(weight=EMPTY, p=0.0, s=0.6)
    rep = green_identity_report(make_constant(math.e), field, FAST)
    assert rep.zero_count == 0
    assert rep.boundary_plus == pytest.approx(4.0 * math.pi, rel=1e-8)
    assert rep.integral_side == pytest.approx(-2.0, rel=1e-6)
    assert abs(rep.residual) < 1e-5


def test_identity_search_agrees_with_known_zeros():
    field = FieldSpec(weight=EMPTY, p=1.0, s=0.8)
    f = make_blaschke_product([(0.4 - 0.1j, 1)])
    known = green_identity_report(f, field, FAST, use_known_zeros=True)
    searched = green_identity_report(f, field, FAST, use_known_zeros=False)
    assert searched.zero_count == known.zero_count == 1
    assert searched.zero_side == pytest.approx(known.zero_side, rel=1e-9)


def test_identity_mixed_weight():
    field = _mixed_field(q_dist=1.0, p=1.0, s=0.9)
    f = make_blaschke_product([(0.35 + 0.1j, 1)])
    cfg = QuadratureConfig(rel_tol=1e-5, abs_tol=1e-8)
    rep = green_identity_report(f, field, cfg)
    assert rep.zero_count == 1
    assert abs(rep.residual) <= 2e-3 * (1.0 + abs(rep.integral_side))


def test_laplacian_split_total_property():
    sp = LaplacianSplit(delta_plus=3.0, delta_minus=1.0, delta_mixed=-0.5)
    assert sp.total == 1.5
