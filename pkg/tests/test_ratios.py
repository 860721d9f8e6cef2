from fractions import Fraction
from itertools import product

import pytest

from visidense import lattice
from visidense.freegrp import abelian_census_free
from visidense.numtheory import INFINITY, divides, gcd_vec, zeta
from visidense.ratios import (EquationInstance, Verdict, apply_homomorphism,
                              bezout_coefficients, beta_limits,
                              decide_homogeneous, equation_ratio_bounds,
                              mapping_ratio_bounds_lattice,
                              mapping_ratio_lattice,
                              solvability_witness,
                              spherical_mapping_bounds, verdict_fractions)
from visidense.words import abelianize, free_reduce


def test_beta_limits_r2():
    bl = beta_limits(2)
    assert bl.even == pytest.approx(0.405285, abs=1e-6)
    assert bl.odd == pytest.approx(0.810570, abs=1e-6)
    assert bl.annular == pytest.approx(0.607927, abs=1e-6)


def test_beta_limits_r4():
    bl = beta_limits(4)
    z4 = zeta(4, 1e-12)
    assert bl.even == pytest.approx(14 / (15 * z4), abs=1e-12)
    assert bl.odd == pytest.approx(16 / (15 * z4), abs=1e-12)


@pytest.mark.parametrize("r", range(2, 9))
def test_beta_limits_average_identity(r):
    bl = beta_limits(r)
    assert 0.5 * (bl.even + bl.odd) == pytest.approx(bl.annular, abs=1e-12)


def test_beta_limits_rejects_rank_one():
    with pytest.raises(ValueError):
        beta_limits(1)


def test_mapping_ratio_lattice_example():
    assert mapping_ratio_lattice(2, 2, lattice.LINF, 1, 1) \
        == Fraction(73, 81)


def test_mapping_ratio_lattice_zero_radius():
    assert mapping_ratio_lattice(2, 2, lattice.LINF, 0, 0) == 1


def test_mapping_ratio_lattice_matches_pair_loop_oracle():
    for s in range(0, 11):
        expected = 0
        points = list(product(range(-s, s + 1), repeat=2))
        gcds = [gcd_vec(p) for p in points]
        for g in gcds:
            for h in gcds:
                if divides(g, h):
                    expected += 1
        value = mapping_ratio_lattice(2, 2, lattice.LINF, s, s)
        assert value == Fraction(expected, len(points) ** 2)


def test_mapping_ratio_bounds_examples():
    lo, hi = mapping_ratio_bounds_lattice(2, 2)
    assert lo == pytest.approx(0.607927, abs=1e-6)
    assert hi == pytest.approx(0.761648, abs=1e-6)
    lo, hi = mapping_ratio_bounds_lattice(3, 2)
    z2, z3 = zeta(2, 1e-12), zeta(3, 1e-12)
    assert lo == pytest.approx(1 / z3, abs=1e-12)
    assert hi == pytest.approx(1 - (1 / z2) * (1 - 1 / z3), abs=1e-12)


@pytest.mark.parametrize("rn,rk", [(2, 2), (2, 3), (3, 2), (4, 4)])
def test_mapping_ratio_bounds_ordering(rn, rk):
    lo, hi = mapping_ratio_bounds_lattice(rn, rk)
    assert 0 < lo < hi < 1


def test_spherical_mapping_bounds_example():
    census = abelian_census_free(2, 2)[2]
    lo, hi = spherical_mapping_bounds(census, census)
    assert lo == pytest.approx(2 / 3)
    assert hi == pytest.approx(7 / 9)


def test_spherical_mapping_bounds_length_one():
    censuses = abelian_census_free(2, 1)
    lo, hi = spherical_mapping_bounds(censuses[1], censuses[1])
    assert (lo, hi) == (1.0, 1.0)


def test_bounds_stay_in_unit_interval():
    censuses = abelian_census_free(2, 20)
    for s in range(1, 21):
        for t in (1, 5, 20):
            lo, hi = spherical_mapping_bounds(censuses[s], censuses[t])
            assert 0 <= lo <= hi <= 1


def eq(z_text, num_vars, w_ab, identity=False):
    from visidense.words import variable_alphabet
    z = variable_alphabet(num_vars).parse(z_text)
    return EquationInstance(z, num_vars, w_ab, identity)


def test_decider_examples():
    assert decide_homogeneous(eq("x1", 2, (3, 1))) == Verdict.SOLVABLE
    assert decide_homogeneous(
        eq("x1 x1 x2 x2", 2, (1, 0))) == Verdict.UNSOLVABLE
    assert decide_homogeneous(
        eq("x1 x2 X1 X2", 2, (0, 0))) == Verdict.UNKNOWN
    assert decide_homogeneous(
        eq("x1 x1 x2 x2", 2, (0, 0), identity=True)) == Verdict.SOLVABLE


def test_decider_even_exponents_vs_zero_ab():
    # w != 1 with zero abelianization: necessary condition passes
    assert decide_homogeneous(
        eq("x1 x1", 1, (0, 0))) == Verdict.UNKNOWN
    assert decide_homogeneous(eq("x1 x1", 1, (1, 2))) == Verdict.UNSOLVABLE
    # gcd 2 divides gcd 2: necessary condition passes but is not sufficient
    assert decide_homogeneous(eq("x1 x1", 1, (2, 4))) == Verdict.UNKNOWN


def test_bezout_coefficients():
    for v in [(1,), (2, 3), (6, 10, 15), (-3, 5), (0, 4, 0, 7), (0, 0)]:
        g, coeffs = bezout_coefficients(v)
        assert sum(a * p for a, p in zip(v, coeffs)) == g
        expected = gcd_vec(v)
        assert g == (0 if expected == INFINITY else expected)


def test_solvability_witness_maps_z_to_w():
    w_word = free_reduce((0, 2, 1))  # a1 b1 a1^-1 in F_2
    instance = eq("x1 x2 x2", 2, abelianize(w_word, 2))
    images = solvability_witness(instance, w_word)
    assert images is not None
    assert apply_homomorphism(instance.z, images) == w_word


def test_equation_ratio_bounds_match_spherical():
    censuses = abelian_census_free(2, 2)
    assert equation_ratio_bounds(censuses[2], censuses[2]) \
        == spherical_mapping_bounds(censuses[2], censuses[2])


def test_verdict_fractions_sum_to_one():
    censuses = abelian_census_free(2, 6)
    fractions = verdict_fractions(censuses[4], censuses[6])
    assert sum(fractions.values()) == 1
    assert fractions[Verdict.SOLVABLE] == Fraction(
        censuses[4].visible_count(), censuses[4].total)


def test_verdict_fractions_identity_target():
    censuses = abelian_census_free(2, 3)
    fractions = verdict_fractions(censuses[3], censuses[0])
    assert fractions[Verdict.SOLVABLE] == 1
