"""Construction and evaluation of the analytic test families."""

import math

import numpy as np
import pytest

from blaschkelab.errors import DomainError, UnsatisfiableNormalizationError
from blaschkelab.funcs import (
    GrowthBound,
    eval_log_modulus,
    make_blaschke_product,
    make_constant,
    make_growth_function,
    multiply,
)

from conftest import richardson_slopes


def test_empty_product_is_one():
    f = make_blaschke_product([])
    z = np.array([0.0, 0.3 + 0.2j, -0.7j])
    assert np.allclose(f(z), 1.0)
    assert f.known_zeros == ()


def test_single_zero_at_origin_unnormalized():
    f = make_blaschke_product([(0.0, 1)], normalize=False)
    assert abs(f(0.0)) == 0.0
    # b_0(z) = -z without any phase factor
    assert complex(f(0.3 + 0.1j)) == pytest.approx(-(0.3 + 0.1j))


def test_normalized_half_zero():
    f = make_blaschke_product([(0.5, 1)], normalize=True)
    assert abs(abs(complex(f(0.0))) - 1.0) <= 1e-12
    assert abs(complex(f(0.5))) <= 1e-12


def test_multiplicity_respected():
    f = make_blaschke_product([(0.4, 3)], normalize=False)
    b = make_blaschke_product([(0.4, 1)], normalize=False)
    z = np.array([0.1 + 0.2j, -0.3, 0.6j])
    assert np.allclose(f(z), b(z) ** 3, rtol=1e-13)
    assert f.known_zeros == ((0.4 + 0j, 3),)


def test_zero_on_circle_rejected():
    with pytest.raises(DomainError):
        make_blaschke_product([(1.0, 1)])


def test_normalize_with_origin_zero_rejected():
    with pytest.raises(UnsatisfiableNormalizationError):
        make_blaschke_product([(0.0, 1)], normalize=True)


def test_evaluation_outside_disc_rejected():
    f = make_blaschke_product([(0.5, 1)])
    with pytest.raises(DomainError):
        f(1.2)


def test_normalized_modulus_bound_sampled():
    zeros = [(0.5, 1), (-0.3 + 0.4j, 2)]
    f = make_blaschke_product(zeros, normalize=True)
    bound = 1.0 / (0.5 * 0.5**2)
    assert f.modulus_bound == pytest.approx(bound)
    rng = np.random.default_rng(7)
    z = np.sqrt(rng.random(500)) * 0.999 * np.exp(2j * np.pi * rng.random(500))
    assert np.all(np.abs(f(z)) < bound)


def test_growth_value_at_origin():
    g = make_growth_function(GrowthBound(D=1.0, p=0.0, singular_points=((1.0 + 0j, 1.0),)))
    assert complex(g(0.0)) == pytest.approx(math.e)
    assert g.known_zeros == ()


def test_growth_envelope_grid_sweep():
    # log|f(z)| <= 1 / |z - 1| for the D=1, p=0, q=1 profile
    g = make_growth_function(GrowthBound(D=1.0, p=0.0, singular_points=((1.0 + 0j, 1.0),)))
    rng = np.random.default_rng(11)
    z = np.sqrt(rng.random(1000)) * 0.999 * np.exp(2j * np.pi * rng.random(1000))
    lm = eval_log_modulus(g, z)
    assert np.all(lm <= 1.0 / np.abs(z - 1.0) + 1e-12)


def test_growth_effective_constant():
    b = GrowthBound(D=2.0, p=1.0, singular_points=((1j, 0.5),))
    assert b.effective_constant == pytest.approx(8.0)
    g = make_growth_function(b)
    assert g.growth_constant == pytest.approx(8.0)


def test_growth_nonpositive_exponent_rejected():
    # negative exponents would make the principal power multivalued
    with pytest.raises(DomainError):
        GrowthBound(D=1.0, p=0.0, singular_points=((1.0 + 0j, -1.0),))


def test_multiply_identity():
    one = make_constant(1.0)
    g = make_blaschke_product([(0.3, 1)], normalize=True)
    prod = multiply(one, g)
    z = np.array([0.1, -0.2 + 0.4j, 0.5j])
    assert np.allclose(prod(z), g(z), rtol=1e-14)


def test_multiply_blaschke_growth_renormalized():
    b = make_blaschke_product([(0.5, 1)], normalize=True)
    g = make_growth_function(GrowthBound(D=1.0, p=0.0, singular_points=((1.0 + 0j, 1.0),)))
    prod = multiply(b, g, renormalize=True)
    assert abs(abs(complex(prod(0.0))) - 1.0) <= 1e-12
    assert prod.known_zeros == ((0.5 + 0j, 1),)


def test_multiply_moduli():
    b = make_blaschke_product([(0.5, 1), (-0.2 + 0.3j, 1)], normalize=True)
    g = make_growth_function(GrowthBound(D=0.5, p=1.0, singular_points=((1j, 1.0),)))
    prod = multiply(b, g)
    rng = np.random.default_rng(3)
    z = np.sqrt(rng.random(100)) * 0.99 * np.exp(2j * np.pi * rng.random(100))
    assert np.allclose(np.abs(prod(z)), np.abs(b(z)) * np.abs(g(z)), rtol=1e-12)


def test_multiply_growth_constant_lift():
    # bounded factor B = 2 lifts the envelope constant by log(B) * 2^{sum q};
    # value computed from the closed form and frozen
    b = make_blaschke_product([(0.5, 1)], normalize=True)
    g = make_growth_function(GrowthBound(D=1.0, p=1.0, singular_points=((1.0 + 0j, 1.0),)))
    prod = multiply(b, g, renormalize=True)
    assert prod.growth_constant == pytest.approx(5.386294361119891, rel=1e-12)


def test_multiply_renormalize_zero_at_origin_rejected():
    b = make_blaschke_product([(0.0, 1)], normalize=False)
    with pytest.raises(UnsatisfiableNormalizationError):
        multiply(b, make_constant(1.0), renormalize=True)


@pytest.mark.parametrize(
    "f",
    [
        make_blaschke_product([(0.5, 1), (-0.3 + 0.4j, 2)], normalize=True),
        make_growth_function(GrowthBound(D=1.0, p=1.0, singular_points=((1.0 + 0j, 1.0),))),
        multiply(
            make_blaschke_product([(0.4, 1)], normalize=True),
            make_growth_function(GrowthBound(D=1.0, p=0.0, singular_points=((1j, 1.0),))),
        ),
    ],
    ids=["blaschke", "growth", "product"],
)
def test_derivative_matches_finite_difference(f):
    pts = np.array([0.1 + 0.2j, -0.35, 0.25j, -0.1 - 0.4j])
    errors = []
    for h in (1e-3, 5e-4):
        fd = (f(pts + h) - f(pts - h)) / (2.0 * h)
        errors.append(np.max(np.abs(fd - f.derivative(pts))))
    (slope,) = richardson_slopes(errors)
    assert 1.7 <= slope <= 2.3


def test_log_modulus_matches_direct_evaluation():
    f = make_blaschke_product([(0.5, 1), (0.2 - 0.6j, 1)], normalize=True)
    rng = np.random.default_rng(5)
    z = np.sqrt(rng.random(200)) * 0.95 * np.exp(2j * np.pi * rng.random(200))
    assert np.allclose(eval_log_modulus(f, z), np.log(np.abs(f(z))), atol=1e-12)


def test_log_modulus_survives_overflowing_growth():
    # exp of the envelope overflows near the singular direction; the
    # log-modulus path must stay finite
    g = make_growth_function(GrowthBound(D=5.0, p=2.0, singular_points=((1.0 + 0j, 2.0),)))
    z = np.array([0.9999, 0.99999])
    lm = eval_log_modulus(g, z)
    assert np.all(np.isfinite(lm))
    assert np.all(lm > 700.0)
