"""Exact sphere censuses of free groups by abelianized image.

The census is a dynamic program over states (abelianization vector,
last letter); appending any letter except the inverse of the last one
walks the sphere of radius n+1.  Counts are exact Python ints, so
F_2 at n = 60 (total 4 * 3^59) is handled without overflow.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .errors import ResourceLimitError
from .numtheory import gcd_vec

STATE_BUDGET = 10 ** 8


@dataclass(frozen=True)
class SphereCensus:
    """One sphere of one group: total plus sparse abelianization counts."""

    group: str  # "F<k>" or "S<k>"
    n: int
    total: int
    ab_counts: dict  # ab vector tuple -> exact count

    def visible_count(self):
        return sum(c for a, c in self.ab_counts.items() if gcd_vec(a) == 1)

    def gcd_class_counts(self):
        """Aggregate ab_counts by gcd class."""
        agg = defaultdict(int)
        for a, c in self.ab_counts.items():
            agg[gcd_vec(a)] += c
        return dict(agg)


def visible_fraction(census):
    """Fraction of sphere elements with visible abelianization."""
    if census.total <= 0:
        raise ValueError("census has no elements")
    if census.n == 0:
        return 0.0  # the identity is not visible
    return float(Fraction(census.visible_count(), census.total))


def sphere_size_free(k, n):
    """Reduced words of length n in the free group of rank k."""
    if k < 2:
        raise ValueError("rank must be >= 2")
    if n < 0:
        raise ValueError("n must be >= 0")
    return 1 if n == 0 else 2 * k * (2 * k - 1) ** (n - 1)


def abelian_census_free(k, n_max):
    """SphereCensus for n = 0..n_max of the free group of rank k."""
    if k < 2:
        raise ValueError("rank must be >= 2")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if (2 * n_max + 1) ** k * 2 * k > STATE_BUDGET:
        raise ResourceLimitError(
            f"DP state space for rank {k}, n_max {n_max} exceeds "
            f"budget {STATE_BUDGET}"
        )
    group = f"F{k}"
    zero = (0,) * k
    censuses = [SphereCensus(group, 0, 1, {zero: 1})]
    # state: (ab vector, last letter); letter encoding from `words`
    states = {(zero, -1): 1}
    letters = range(2 * k)
    for n in range(1, n_max + 1):
        new_states = defaultdict(int)
        for (ab, last), cnt in states.items():
            for letter in letters:
                if letter == (last ^ 1):
                    continue
                gen, sign = letter >> 1, -1 if letter & 1 else 1
                nab = ab[:gen] + (ab[gen] + sign,) + ab[gen + 1:]
                new_states[(nab, letter)] += cnt
        states = dict(new_states)
        ab_counts = defaultdict(int)
        for (ab, _), cnt in states.items():
            ab_counts[ab] += cnt
        total = sum(ab_counts.values())
        censuses.append(SphereCensus(group, n, total, dict(ab_counts)))
    return censuses


def _check_consecutive(census_prev, census_n):
    if census_prev.group != census_n.group:
        raise ValueError("censuses come from different groups")
    if census_n.n != census_prev.n + 1:
        raise ValueError(
            f"censuses must be consecutive, got n={census_prev.n},{census_n.n}"
        )


def annular_estimate(census_prev, census_n):
    """Average visible fraction over two adjacent spheres."""
    _check_consecutive(census_prev, census_n)
    return 0.5 * (visible_fraction(census_prev) + visible_fraction(census_n))


@dataclass(frozen=True)
class EmpiricalPn:
    """Two-sphere empirical distribution over abelianization vectors."""

    group: str
    n: int
    weights: dict  # ab vector -> weight


def empirical_pn(census_prev, census_n):
    _check_consecutive(census_prev, census_n)
    if census_prev.total == 0 or census_n.total == 0:
        raise ValueError("cannot build p_n from an empty sphere")
    weights = defaultdict(Fraction)
    for ab, c in census_prev.ab_counts.items():
        weights[ab] += Fraction(c, 2 * census_prev.total)
    for ab, c in census_n.ab_counts.items():
        weights[ab] += Fraction(c, 2 * census_n.total)
    return EmpiricalPn(census_n.group, census_n.n,
                       {ab: float(w) for ab, w in weights.items()})
