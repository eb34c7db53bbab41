"""Disc and circle quadrature against closed-form integrals."""

import math

import numpy as np
import pytest

from blaschkelab.errors import DomainError, QuadratureEvaluationError
from blaschkelab.quad import (
    QuadratureConfig,
    geometric_s_grid,
    integrate_circle,
    integrate_disc,
    sup_over_s,
)


def _one(z):
    return np.ones(np.shape(z))


def test_disc_area():
    res = integrate_disc(_one)
    assert res.converged
    assert res.value == pytest.approx(math.pi, abs=1e-9)


@pytest.mark.parametrize("p", [-0.5, 0.5, 1.0, 2.0])
def test_radial_weight_closed_form(p):
    # int (1-|z|^2)^p dA = pi / (p+1)
    res = integrate_disc(_one, QuadratureConfig(rel_tol=1e-11), radial_power=p)
    assert res.converged
    assert res.value == pytest.approx(math.pi / (p + 1.0), rel=1e-9)


@pytest.mark.parametrize("p", [0.25, 0.5, 1.0, 2.0])
def test_radial_weight_pi_over_p(p):
    res = integrate_disc(_one, radial_power=p - 1.0)
    assert res.converged
    assert res.value == pytest.approx(math.pi / p, rel=1e-6)


def test_corner_weight_exact_value():
    # int over the disc of |z - 1|^{-1} equals 4: in polar coordinates
    # around 1 the disc is {s < 2 cos a}, so the integral is
    # int_{-pi/2}^{pi/2} 2 cos a da
    res = integrate_disc(_one, QuadratureConfig(rel_tol=1e-11),
                         corner_powers=((0.0, -1.0),))
    assert res.converged
    assert res.value == pytest.approx(4.0, rel=1e-9)


def test_combined_radial_and_corner_weight():
    # int (1-|z|^2)^{-1/2} |z-1|^{-1} dA = pi^2
    res = integrate_disc(_one, QuadratureConfig(rel_tol=1e-10),
                         radial_power=-0.5, corner_powers=((0.0, -1.0),))
    assert res.converged
    assert res.value == pytest.approx(math.pi**2, rel=1e-8)


def test_disc_scalar_integrand_adapted():
    vec = integrate_disc(lambda z: np.abs(z) ** 2)
    scal = integrate_disc(lambda z: abs(z) ** 2)
    assert scal.value == pytest.approx(vec.value, rel=1e-14)
    assert vec.value == pytest.approx(math.pi / 2.0, rel=1e-9)


def test_disc_rejects_non_finite_nodes():
    def bad(z):
        out = np.ones(np.shape(z))
        out[np.abs(z) < 0.5] = np.nan
        return out

    with pytest.raises(QuadratureEvaluationError):
        integrate_disc(bad)


def test_non_convergence_is_reported_not_raised():
    cfg = QuadratureConfig(rel_tol=1e-14, abs_tol=1e-300, max_cells=16)
    res = integrate_disc(lambda z: np.exp(np.real(z) * 10.0), cfg)
    assert not res.converged
    assert math.isfinite(res.value)


def test_disc_determinism():
    def fn(z):
        return np.exp(np.real(z)) * np.cos(3.0 * np.imag(z))

    a = integrate_disc(fn, radial_power=0.3, corner_powers=((1.0, -0.4),))
    b = integrate_disc(fn, radial_power=0.3, corner_powers=((1.0, -0.4),))
    assert a.value == b.value
    assert a.error_estimate == b.error_estimate
    assert a.cells_used == b.cells_used


def test_circle_constant_and_oscillation():
    res = integrate_circle(lambda t: np.ones(np.shape(t)), radius=0.5)
    assert res.value == pytest.approx(2.0 * math.pi, rel=1e-12)
    osc = integrate_circle(np.cos, radius=0.5)
    assert osc.value == pytest.approx(0.0, abs=1e-10)


def test_circle_near_boundary_peak_against_dense_trapezoid():
    s = 0.99

    def fn(t):
        tt = np.asarray(t, dtype=float)
        return np.abs(s * np.exp(1j * tt) - 1.0) ** -0.5

    theta = np.linspace(0.0, 2.0 * math.pi, 1_000_001)
    want = np.trapezoid(fn(theta), theta)
    cfg = QuadratureConfig(rel_tol=1e-9, grading_points=(1.0 + 0.0j,))
    res = integrate_circle(fn, radius=s, cfg=cfg)
    assert res.converged
    assert res.value == pytest.approx(want, rel=1e-6)


def test_circle_hints_do_not_change_the_value():
    def fn(t):
        tt = np.asarray(t, dtype=float)
        return 1.0 / (1.0001 - np.cos(tt - 1.0))

    plain = integrate_circle(fn, radius=0.95)
    hinted = integrate_circle(
        fn, radius=0.95,
        cfg=QuadratureConfig(grading_points=(np.exp(1j),)),
    )
    assert plain.converged and hinted.converged
    assert hinted.value == pytest.approx(plain.value, rel=1e-6)


def test_circle_rejects_bad_radius():
    for r in (-0.1, 1.0, 1.5):
        with pytest.raises(DomainError):
            integrate_circle(lambda t: np.ones(np.shape(t)), radius=r)


def test_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(rel_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureConfig(abs_tol=-1.0)
    with pytest.raises(DomainError):
        QuadratureConfig(max_cells=8)
    with pytest.raises(DomainError):
        QuadratureConfig(boundary_grading_exponent=1.0)


def test_geometric_s_grid():
    assert geometric_s_grid(0.5, 3) == (0.5, 0.75, 0.875)
    grid = geometric_s_grid()
    assert len(grid) == 16
    assert all(b > a for a, b in zip(grid, grid[1:]))
    with pytest.raises(DomainError):
        geometric_s_grid(delta=1.0)
    with pytest.raises(DomainError):
        geometric_s_grid(size=0)


def test_sup_over_s_tie_break_and_peaks():
    # constant: smallest s wins the tie
    v, s = sup_over_s(lambda s: 1.0, (0.9, 0.5, 0.7))
    assert (v, s) == (1.0, 0.5)
    v, s = sup_over_s(lambda s: s, (0.5, 0.9, 0.95))
    assert (v, s) == (0.95, 0.95)
    v, s = sup_over_s(lambda s: -((s - 0.6) ** 2), (0.0, 0.3, 0.59, 0.9))
    assert s == 0.59
    with pytest.raises(DomainError):
        sup_over_s(lambda s: s, ())
    with pytest.raises(DomainError):
        sup_over_s(lambda s: s, (0.5, 1.0))


def test_tighter_tolerance_does_not_worsen_accuracy():
    exact = math.pi / 0.25

    def run(rt):
        return integrate_disc(_one, QuadratureConfig(rel_tol=rt), radial_power=-0.75)

    loose = run(1e-5)
    tight = run(1e-10)
    assert loose.converged and tight.converged
    assert abs(tight.value - exact) <= abs(loose.value - exact) + 1e-12
    assert abs(tight.value - exact) <= 1e-9 * exact
