"""Weighted zero sums, dilation norms, and the inequality verifier."""

import math

import numpy as np
import pytest

from blaschkelab.errors import DomainError, ScenarioRejectedError, SingularEvaluationError
from blaschkelab.funcs import make_blaschke_product, make_constant
from blaschkelab.nevan import (
    VERIFICATION_MODES,
    TheoremScenario,
    blaschke_sum,
    divergence_probe,
    geometric_zero_family,
    load_calibrated_constants,
    norm_p_positive,
    norm_p_zero,
    threshold_comparison,
    verify_theorem,
)
from blaschkelab.quad import QuadratureConfig
from blaschkelab.weights import ClosedArcSet, MixedWeightSpec, RationalWeightSpec
from blaschkelab.zeros import Region, ZeroSet

EMPTY = RationalWeightSpec(points=(), exponents=())
Q_MINUS_ONE = RationalWeightSpec(points=(1.0 + 0.0j,), exponents=(-1.0,))

UNIT_DISC = Region.disc(0.0 + 0.0j, 0.99)


def _ones(u):
    return np.ones(np.shape(u))


def _zset(*pairs):
    return ZeroSet(zeros=tuple(pairs), certified_count=sum(m for _, m in pairs),
                   region=UNIT_DISC)


def test_blaschke_sum_worked_values():
    assert blaschke_sum(_zset((0.5 + 0.0j, 1)), _ones, p=1.0) == pytest.approx(0.5625)
    assert blaschke_sum(_zset((0.0 + 0.0j, 1)), _ones, p=3.0) == pytest.approx(1.0)
    assert blaschke_sum(_zset(), _ones, p=1.0) == 0.0
    # multiplicity is a plain factor
    assert blaschke_sum(_zset((0.5 + 0.0j, 3)), _ones, p=1.0) == pytest.approx(3 * 0.5625)


def test_blaschke_sum_guards():
    with pytest.raises(DomainError):
        blaschke_sum(_zset(), _ones, p=-0.5)
    with pytest.raises(SingularEvaluationError):
        blaschke_sum(_zset((0.5 + 0.0j, 1)), lambda a: math.inf, p=1.0)


def test_norm_p_positive_constant_function():
    est = norm_p_positive(make_constant(math.e), _ones, p=1.0,
                          cfg=QuadratureConfig(rel_tol=1e-9))
    assert est.converged
    assert est.value == pytest.approx(math.pi, rel=1e-8)
    # log+ of a unimodular constant vanishes
    zero = norm_p_positive(make_constant(1.0), _ones, p=1.0)
    assert zero.value == 0.0


def test_norm_p_positive_frozen_blaschke_value():
    f = make_blaschke_product([(0.5 + 0.0j, 1)])
    est = norm_p_positive(f, _ones, p=1.0)
    assert est.converged
    assert est.value == pytest.approx(1.2350795303668611, rel=1e-5)
    assert [s for s, _ in est.per_s] == sorted(s for s, _ in est.per_s)


def test_norm_p_positive_sup_stable_under_grid_refinement():
    f = make_blaschke_product([(0.5 + 0.0j, 1)])
    coarse = norm_p_positive(f, _ones, p=1.0)
    # 4x the density of the default grid and a slightly higher ceiling
    dense_grid = tuple(1.0 - 0.5 * 2.0 ** (-k / 4.0) for k in range(64))
    dense = norm_p_positive(f, _ones, p=1.0, s_grid=dense_grid)
    assert dense.value >= coarse.value - 1e-12
    assert dense.value - coarse.value <= 2e-4 * coarse.value


def test_norm_p_positive_rotation_invariance():
    a = norm_p_positive(make_blaschke_product([(0.5 + 0.0j, 1)]), _ones, p=1.0)
    b = norm_p_positive(make_blaschke_product([(0.5j, 1)]), _ones, p=1.0)
    assert b.value == pytest.approx(a.value, rel=1e-6)


def test_norm_p_positive_guards_and_convergence_flag():
    with pytest.raises(DomainError):
        norm_p_positive(make_constant(1.0), _ones, p=0.0)
    with pytest.raises(DomainError):
        norm_p_positive(make_constant(1.0), _ones, p=1.0, delta=1.0)
    f = make_blaschke_product([(0.5 + 0.0j, 1)])
    starved = norm_p_positive(
        f, _ones, p=1.0, cfg=QuadratureConfig(rel_tol=1e-13, abs_tol=1e-300, max_cells=16)
    )
    assert not starved.converged


def test_norm_p_zero_constant_function_parts():
    est = norm_p_zero(make_constant(math.e), EMPTY, cfg=QuadratureConfig(rel_tol=1e-9))
    assert est.parts is not None
    torus, gamma = est.parts
    assert torus == pytest.approx(2.0 * math.pi, rel=1e-9)
    assert gamma == pytest.approx(0.0, abs=1e-12)
    assert est.value == pytest.approx(2.0 * math.pi, rel=1e-9)


def test_verify_theorem_trivial_function_passes_with_zero_ratio():
    sc = TheoremScenario(mode="thm_2CF6", f=make_constant(1.0), weight=EMPTY, p=1.0)
    rep = verify_theorem(sc)
    assert rep.passed
    assert rep.lhs == 0.0
    assert rep.ratio == 0.0


def test_verify_theorem_report_arithmetic():
    f = make_blaschke_product([(0.5 + 0.0j, 1)])
    sc = TheoremScenario(mode="thm_2CF6", f=f, weight=EMPTY, p=1.0, name="unit")
    rep = verify_theorem(sc, constant=1.0)
    assert rep.theorem_id == "thm_2CF6"
    assert rep.lhs == pytest.approx(0.5625, rel=1e-12)
    denom = rep.diagnostics["denominator"]
    assert denom == pytest.approx(1.2350795303668611, rel=1e-5)
    assert rep.ratio == pytest.approx(rep.lhs / denom, rel=1e-14)
    assert rep.rhs == pytest.approx(denom, rel=1e-14)
    assert rep.passed
    sums = rep.diagnostics["partial_sums"]
    assert all(b >= a for (_, a), (_, b) in zip(sums[:-1], sums[1:]))
    assert rep.diagnostics["zero_count"] == 1


def test_verify_theorem_fails_with_tiny_constant():
    f = make_blaschke_product([(0.5 + 0.0j, 1)])
    sc = TheoremScenario(mode="thm_2CF6", f=f, weight=EMPTY, p=1.0)
    rep = verify_theorem(sc, constant=1e-9)
    assert not rep.passed
    assert rep.lhs > rep.rhs


def test_verify_theorem_hypothesis_rejections():
    f = make_constant(1.0)
    with pytest.raises(ScenarioRejectedError, match="p > 0"):
        verify_theorem(TheoremScenario(mode="thm_2CF6", f=f, weight=EMPTY, p=0.0))
    with pytest.raises(ScenarioRejectedError, match="q_j > -p/4"):
        verify_theorem(
            TheoremScenario(mode="thm_2CF6", f=f, weight=Q_MINUS_ONE, p=1.0)
        )
    with pytest.raises(ScenarioRejectedError, match="mixed"):
        verify_theorem(TheoremScenario(mode="mixed_ppos", f=f, weight=EMPTY, p=1.0))
    mixed = MixedWeightSpec(
        rational=EMPTY,
        closed_set=ClosedArcSet(arcs=((math.pi, math.pi),)),
        q_dist=1.0,
    )
    with pytest.raises(ScenarioRejectedError, match="alpha_E"):
        verify_theorem(TheoremScenario(mode="mixed_linfty", f=f, weight=mixed, p=1.0))
    # |f(0)| = 1 is part of every statement's normalization
    unnorm = make_blaschke_product([(0.5 + 0.0j, 1)], normalize=False)
    with pytest.raises(ScenarioRejectedError, match=r"\|f\(0\)\|"):
        verify_theorem(TheoremScenario(mode="thm_2CF6", f=unnorm, weight=EMPTY, p=1.0))
    with pytest.raises(DomainError):
        TheoremScenario(mode="no_such_mode", f=f, weight=EMPTY, p=1.0)


def test_threshold_comparison():
    assert threshold_comparison(1.0, 0.0) == "ours_better"
    assert threshold_comparison(1.0, -0.49) == "ours_better"
    assert threshold_comparison(1.0, -0.5) == "bgk_better"
    assert threshold_comparison(1.0, -0.7) == "bgk_better"
    assert threshold_comparison(0.0, 3.0) == "identical"
    with pytest.raises(ValueError):
        threshold_comparison(-1.0, 0.0)


def test_geometric_zero_family():
    gen = geometric_zero_family(1.0 + 0.0j, ratio=0.5)
    f3 = gen(3)
    assert f3.known_zeros is not None
    assert [a for a, _ in f3.known_zeros] == pytest.approx([0.5, 0.75, 0.875])
    with pytest.raises(DomainError):
        geometric_zero_family(0.5 + 0.0j)
    with pytest.raises(DomainError):
        geometric_zero_family(1.0 + 0.0j, ratio=1.0)


def test_divergence_probe_untilded_frozen_values():
    gen = geometric_zero_family(1.0 + 0.0j, ratio=0.5)
    sums = divergence_probe(gen, Q_MINUS_ONE, p=1.0, mode="untilded", n_terms=40)
    assert len(sums) == 40
    assert sums[19] == pytest.approx(76.3333371480303, rel=1e-12)
    assert sums[39] == pytest.approx(156.333333392938, rel=1e-12)
    assert all(b >= a for a, b in zip(sums[:-1], sums[1:]))
    # the tail grows linearly at slope ~4: no sign of saturation
    assert sums[39] - sums[29] == pytest.approx(40.0, rel=1e-6)


def test_divergence_probe_tilded_frozen_values():
    gen = geometric_zero_family(1.0 + 0.0j, ratio=0.5)
    sums = divergence_probe(gen, Q_MINUS_ONE, p=1.0, mode="tilded", n_terms=40)
    assert sums[39] == pytest.approx(2.7230012372785826, rel=1e-12)
    assert (sums[39] - sums[38]) / sums[39] < 1e-11


def test_divergence_probe_guards():
    gen = geometric_zero_family(1.0 + 0.0j)
    with pytest.raises(DomainError):
        divergence_probe(gen, Q_MINUS_ONE, p=1.0, mode="sideways")
    with pytest.raises(DomainError):
        divergence_probe(gen, Q_MINUS_ONE, p=1.0, mode="tilded", n_terms=0)

    def opaque(k):
        f = make_constant(1.0)
        return type(f)(
            evaluator=f.evaluator, derivative=f.derivative, log_modulus=f.log_modulus,
            known_zeros=None, family=f.family,
        )

    with pytest.raises(DomainError):
        divergence_probe(opaque, Q_MINUS_ONE, p=1.0, mode="untilded", n_terms=2)


def test_calibrated_constants_cover_every_mode():
    table = load_calibrated_constants()
    assert set(table) == set(VERIFICATION_MODES)
    assert all(v > 0 for v in table.values())
