"""Argument-principle winding counts and the quadrisection zero search."""

import math

import numpy as np
import pytest

from blaschkelab.errors import DomainError
from blaschkelab.funcs import (
    GrowthBound,
    make_blaschke_product,
    make_constant,
    make_growth_function,
)
from blaschkelab.zeros import Region, ZeroSet, locate_zeros, winding_count

from conftest import sample_separated_zeros

RNG = np.random.default_rng(42)


def test_region_validation():
    with pytest.raises(DomainError):
        Region.disc(0.0 + 0.0j, 0.0)
    with pytest.raises(DomainError):
        Region.disc(0.5 + 0.0j, 0.6)
    with pytest.raises(DomainError):
        Region.annulus_sector(0.5, 0.5, 0.0, 1.0)
    with pytest.raises(DomainError):
        Region.annulus_sector(0.0, 0.5, 0.0, 7.0)
    r = Region.disc(0.1 + 0.1j, 0.3)
    assert r.contains(0.1 + 0.1j) and not r.contains(0.6 + 0.0j)
    assert r.diameter == pytest.approx(0.6)
    s = Region.annulus_sector(0.2, 0.6, -0.5, 0.5)
    assert s.contains(0.4 + 0.0j) and not s.contains(-0.4 + 0.0j)


def test_winding_of_double_zero_at_origin():
    f = make_blaschke_product([(0.0 + 0.0j, 2)], normalize=False)
    assert winding_count(f, Region.disc(0.0 + 0.0j, 0.5)) == 2


def test_winding_of_zero_free_function():
    g = make_growth_function(GrowthBound(D=1.0, p=1.0,
                                         singular_points=((1.0 + 0.0j, 1.0),)))
    assert winding_count(g, Region.disc(0.0 + 0.0j, 0.7)) == 0
    assert winding_count(make_constant(2.0 + 1.0j), Region.disc(0.0 + 0.0j, 0.9)) == 0


def test_winding_counts_zeros_inside_only():
    f = make_blaschke_product([(0.3 + 0.0j, 1), (0.5j, 1)])
    assert winding_count(f, Region.disc(0.0 + 0.0j, 0.7)) == 2
    assert winding_count(f, Region.disc(0.0 + 0.0j, 0.4)) == 1
    assert winding_count(f, Region.disc(0.5j, 0.1)) == 1
    sector = Region.annulus_sector(0.4, 0.8, 1.0, 2.0)  # holds 0.5j only
    assert winding_count(f, sector) == 1


def test_locate_constant_is_empty():
    zs = locate_zeros(make_constant(1.0), Region.disc(0.0 + 0.0j, 0.8), use_known=False)
    assert zs.zeros == ()
    assert zs.certified_count == 0
    assert zs.unresolved == ()


def test_locate_rejects_bad_tol():
    with pytest.raises(DomainError):
        locate_zeros(make_constant(1.0), Region.disc(0.0 + 0.0j, 0.5), tol=0.0)


def test_known_zero_bypass_filters_to_region():
    f = make_blaschke_product([(0.3 + 0.0j, 1), (0.5j, 1), (-0.6 + 0.0j, 1)])
    zs = locate_zeros(f, Region.disc(0.0 + 0.0j, 0.4))
    assert [a for a, _ in zs.zeros] == [0.3 + 0.0j]
    assert zs.certified_count == 1


def test_search_matches_known_zeros():
    region = Region.disc(0.0 + 0.0j, 0.85)
    rng = np.random.default_rng(7)
    for _ in range(6):
        zeros = sample_separated_zeros(rng, int(rng.integers(1, 6)))
        f = make_blaschke_product([(a, 1) for a in zeros])
        found = locate_zeros(f, region, use_known=False)
        assert found.unresolved == ()
        assert found.total_multiplicity == len(zeros)
        for a, m in found.zeros:
            assert m == 1
            assert min(abs(a - b) for b in zeros) < 1e-8


def test_search_finds_zero_at_region_center():
    # the first split line passes through the zero; the jitter schedule
    # must move it off
    f = make_blaschke_product([(0.0 + 0.0j, 1), (0.4 + 0.3j, 1)], normalize=False)
    found = locate_zeros(f, Region.disc(0.0 + 0.0j, 0.8), use_known=False)
    assert found.total_multiplicity == 2
    assert min(abs(a) for a, _ in found.zeros) < 1e-8


@pytest.mark.parametrize("mult", [2, 3])
def test_search_reports_multiplicity_as_cluster(mult):
    a = 0.25 - 0.35j
    f = make_blaschke_product([(a, mult)], normalize=False)
    found = locate_zeros(f, Region.disc(0.0 + 0.0j, 0.7), use_known=False, tol=1e-7)
    assert found.certified_count == mult
    assert len(found.zeros) == 1
    z, m = found.zeros[0]
    assert m == mult
    assert abs(z - a) < 1e-6


def test_winding_additive_over_sector_split():
    f = make_blaschke_product([(0.3 + 0.4j, 1), (-0.2 - 0.5j, 1), (0.6 + 0.1j, 1)])
    whole = winding_count(f, Region.disc(0.0 + 0.0j, 0.8))
    upper = winding_count(f, Region.annulus_sector(0.0, 0.8, 0.0, math.pi))
    lower = winding_count(f, Region.annulus_sector(0.0, 0.8, math.pi, 2.0 * math.pi))
    assert whole == 3
    assert upper + lower == whole


def test_search_on_annulus_sector_region():
    f = make_blaschke_product([(0.3 + 0.0j, 1), (0.6 + 0.0j, 1)])
    region = Region.annulus_sector(0.45, 0.85, -1.0, 1.0)
    found = locate_zeros(f, region, use_known=False)
    assert found.total_multiplicity == 1
    assert abs(found.zeros[0][0] - 0.6) < 1e-8


def test_zeroset_total_multiplicity():
    zs = ZeroSet(zeros=((0.1 + 0.0j, 2), (0.2j, 1)), certified_count=3,
                 region=Region.disc(0.0 + 0.0j, 0.5))
    assert zs.total_multiplicity == 3
