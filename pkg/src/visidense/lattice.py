"""Exact counting of Z^r points by gcd class and parity in l_p balls.

Counts are exact Python integers; fractions only appear at the reporting
boundary.  Enumeration runs through numpy in chunks (first coordinate is
looped, the remaining (2n+1)^(r-1) grid is vectorised), with an explicit
cell budget so failure modes are resource errors rather than swap death.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ResourceLimitError
from .numtheory import INFINITY, gcd_vec, mobius_sieve

L1 = "l1"
L2 = "l2"
LINF = "linf"
NORMS = (L1, L2, LINF)

ENUM_CELL_BUDGET = 10 ** 9


def _check_norm(norm):
    if norm not in NORMS:
        raise ValueError(f"norm must be one of {NORMS}, got {norm!r}")


def ball_count(rank, norm, radius):
    """Number of lattice points x in Z^rank with ||x||_norm <= radius."""
    if rank < 1:
        raise ValueError("rank must be >= 1")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    _check_norm(norm)
    if norm == LINF:
        return (2 * radius + 1) ** rank
    if norm == L1:
        return sum(
            2 ** i * math.comb(rank, i) * math.comb(radius, i)
            for i in range(0, min(rank, radius) + 1)
        )
    # l2: no closed form over Z^r in general; exact brute enumeration
    if rank == 1:
        return 2 * radius + 1
    total = 0
    for _, l2sq, _ in _grid_slices(rank, radius):
        total += int(np.count_nonzero(l2sq <= radius * radius))
    return total


def sphere_count_l1(rank, radius):
    """Number of points with l1 norm exactly `radius`."""
    if radius == 0:
        return 1
    return sum(
        2 ** i * math.comb(rank, i) * math.comb(radius - 1, i - 1)
        for i in range(1, min(rank, radius) + 1)
    )


def _budget_check(rank, radius):
    cells = rank * (2 * radius + 1) ** rank
    if cells > ENUM_CELL_BUDGET:
        raise ResourceLimitError(
            f"enumeration of rank {rank} radius {radius} needs {cells} cells "
            f"(budget {ENUM_CELL_BUDGET}); use visible_count_mobius instead"
        )


def _grid_slices(rank, radius):
    """Yield (gcd, l2sq, l1) arrays per slice x0 = -radius..radius.

    The arrays cover {x0} x [-radius, radius]^(rank-1); gcd is 0 only at
    the origin.
    """
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    if rank == 1:
        yield np.abs(axis), axis * axis, np.abs(axis)
        return
    rest = np.meshgrid(*([axis] * (rank - 1)), indexing="ij")
    rest = np.stack([a.ravel() for a in rest])
    rest_abs = np.abs(rest)
    rest_gcd = rest_abs[0]
    for row in rest_abs[1:]:
        rest_gcd = np.gcd(rest_gcd, row)
    rest_l2sq = (rest * rest).sum(axis=0)
    rest_l1 = rest_abs.sum(axis=0)
    for x0 in range(-radius, radius + 1):
        a0 = abs(x0)
        yield np.gcd(rest_gcd, a0), rest_l2sq + a0 * a0, rest_l1 + a0


def _norm_mask(norm, radius, l2sq, l1):
    if norm == LINF:
        return None  # the whole slice is inside the ball
    if norm == L1:
        return l1 <= radius
    return l2sq <= radius * radius


@dataclass(frozen=True)
class GcdCensus:
    """Exact per-gcd-class counts of the ball of given radius."""

    rank: int
    norm: str
    radius: int
    counts: dict  # gcd class (int or INFINITY) -> exact count

    @property
    def total(self):
        return sum(self.counts.values())

    def count(self, gcd_class):
        return self.counts.get(gcd_class, 0)


def gcd_census(rank, norm, radius):
    """Classify every point of the ball by the gcd of its coordinates."""
    if rank < 2:
        raise ValueError("rank must be >= 2")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    _check_norm(norm)
    _budget_check(rank, radius)
    acc = np.zeros(radius + 1, dtype=np.int64)
    for gcds, l2sq, l1 in _grid_slices(rank, radius):
        mask = _norm_mask(norm, radius, l2sq, l1)
        vals = gcds if mask is None else gcds[mask]
        acc += np.bincount(vals, minlength=radius + 1)
    counts = {g: int(acc[g]) for g in range(1, radius + 1) if acc[g]}
    counts[INFINITY] = int(acc[0])  # the origin
    return GcdCensus(rank, norm, radius, counts)


def visible_count_mobius(rank, norm, radius, t=1):
    """Exact count of t-visible points in the ball, via Mobius inversion.

    Valid for l1/linf where ||d*x|| = d*||x|| holds over integer radii.
    """
    if rank < 2:
        raise ValueError("rank must be >= 2")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if t < 1:
        raise ValueError("t must be >= 1")
    if norm == L2:
        raise ValueError(
            "no integer-radius homogeneity shortcut for l2; use gcd_census"
        )
    _check_norm(norm)
    top = radius // t
    if top == 0:
        return 0
    mu = mobius_sieve(top)
    return sum(
        mu[d] * (ball_count(rank, norm, radius // (t * d)) - 1)
        for d in range(1, top + 1)
        if mu[d]
    )


def _even_l1_ball_count(rank, norm, radius):
    """Points in the ball whose l1 norm (== coordinate-sum parity) is even."""
    if norm == LINF:
        # per coordinate: (#even - #odd) in [-m, m] is +1 for even m, -1 odd
        sign = 1 if radius % 2 == 0 else -1
        return ((2 * radius + 1) ** rank + sign ** rank) // 2
    if norm == L1:
        return 1 + sum(
            sphere_count_l1(rank, j) for j in range(2, radius + 1, 2)
        )
    total = 0
    for _, l2sq, l1 in _grid_slices(rank, radius):
        inside = l2sq <= radius * radius
        total += int(np.count_nonzero(inside & (l1 % 2 == 0)))
    return total


def even_visible_count(rank, norm, radius):
    """Exact count of visible points of even l1 norm in the ball.

    l1/linf go through Mobius inversion with the parity closed forms;
    scaling by even d makes every l1 norm even, odd d preserves parity.
    """
    if rank < 2:
        raise ValueError("rank must be >= 2")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    _check_norm(norm)
    if radius == 0:
        return 0
    if norm == L2:
        _budget_check(rank, radius)
        total = 0
        for gcds, l2sq, l1 in _grid_slices(rank, radius):
            inside = l2sq <= radius * radius
            total += int(np.count_nonzero(inside & (gcds == 1) & (l1 % 2 == 0)))
        return total
    mu = mobius_sieve(radius)
    total = 0
    for d in range(1, radius + 1):
        if not mu[d]:
            continue
        m = radius // d
        if d % 2 == 1:
            inner = _even_l1_ball_count(rank, norm, m) - 1
        else:
            inner = ball_count(rank, norm, m) - 1
        total += mu[d] * inner
    return total


def even_visible_fraction(rank, norm, radius):
    """Fraction of ball points that are visible with even l1 norm."""
    return float(
        Fraction(even_visible_count(rank, norm, radius),
                 ball_count(rank, norm, radius))
    )


@dataclass(frozen=True)
class ParityCensus:
    """Visible points of [0,n]^k classified by number of odd coordinates."""

    n: int
    rank: int
    table: dict  # i -> count of visible points with exactly i odd coords
    u1ev: int    # visible points of even coordinate sum

    @property
    def visible_total(self):
        return sum(self.table.values())


def parity_census(rank, n):
    """Exact orthant census behind the even-density computation."""
    if rank < 2:
        raise ValueError("rank must be >= 2")
    if n < 0:
        raise ValueError("n must be >= 0")
    cells = (n + 1) ** rank
    if cells > ENUM_CELL_BUDGET:
        raise ResourceLimitError(
            f"parity census of rank {rank}, n={n} needs {cells} cells "
            f"(budget {ENUM_CELL_BUDGET})"
        )
    axis = np.arange(0, n + 1, dtype=np.int64)
    rest = np.meshgrid(*([axis] * (rank - 1)), indexing="ij")
    rest = np.stack([a.ravel() for a in rest])
    rest_gcd = rest[0]
    for row in rest[1:]:
        rest_gcd = np.gcd(rest_gcd, row)
    rest_odd = (rest & 1).sum(axis=0)
    acc = np.zeros(rank + 1, dtype=np.int64)
    u1ev = 0
    for x0 in range(0, n + 1):
        visible = np.gcd(rest_gcd, x0) == 1
        odd = rest_odd + (x0 & 1)
        acc += np.bincount(odd[visible], minlength=rank + 1)
        u1ev += int(np.count_nonzero(visible & (odd % 2 == 0)))
    table = {i: int(acc[i]) for i in range(rank + 1) if acc[i]}
    return ParityCensus(n, rank, table, u1ev)


@dataclass(frozen=True)
class OmegaSpec:
    """Axis-aligned open box or open Euclidean ball with rational data."""

    kind: str  # "box" or "ball"
    bounds: tuple = ()  # box: ((lo, hi), ...) of Fractions
    center: tuple = ()  # ball: Fractions
    radius: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind == "box":
            if not self.bounds:
                raise ValueError("box needs per-axis (lo, hi) bounds")
            for lo, hi in self.bounds:
                if not lo < hi:
                    raise ValueError("box bounds must satisfy lo < hi")
        elif self.kind == "ball":
            if not self.center:
                raise ValueError("ball needs a center")
            if not self.radius > 0:
                raise ValueError("ball radius must be positive")
        else:
            raise ValueError(f"unknown omega kind {self.kind!r}")

    @property
    def dim(self):
        return len(self.bounds) if self.kind == "box" else len(self.center)

    def lebesgue(self):
        if self.kind == "box":
            vol = Fraction(1)
            for lo, hi in self.bounds:
                vol *= hi - lo
            return float(vol)
        r, d = float(self.radius), self.dim
        return math.pi ** (d / 2) / math.gamma(d / 2 + 1) * r ** d


def box_omega(*bounds):
    return OmegaSpec("box", bounds=tuple(
        (Fraction(lo), Fraction(hi)) for lo, hi in bounds))


def ball_omega(center, radius):
    return OmegaSpec("ball", center=tuple(Fraction(c) for c in center),
                     radius=Fraction(radius))


def _open_int_range(lo, hi):
    """Integers strictly between rationals lo and hi."""
    return math.floor(lo) + 1, math.ceil(hi) - 1


def measure_ratio(omega, rank, t, gcd_class=1):
    """#(S intersect t*Omega) / t^r for S the set of gcd_class-visible points."""
    if rank < 1:
        raise ValueError("rank must be >= 1")
    if omega.dim != rank:
        raise ValueError(f"omega has dimension {omega.dim}, expected {rank}")
    t = Fraction(t)
    if t <= 0:
        raise ValueError("scale t must be positive")
    if omega.kind == "box":
        ranges = [_open_int_range(t * lo, t * hi) for lo, hi in omega.bounds]
    else:
        ranges = [
            _open_int_range(t * (c - omega.radius), t * (c + omega.radius))
            for c in omega.center
        ]
    cells = 1
    for lo, hi in ranges:
        if hi < lo:
            return 0.0
        cells *= hi - lo + 1
    if cells * rank > ENUM_CELL_BUDGET:
        raise ResourceLimitError(
            f"measure_ratio enumeration needs {cells} cells "
            f"(budget {ENUM_CELL_BUDGET})"
        )
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in ranges]
    grid = np.meshgrid(*axes, indexing="ij")
    coords = np.stack([a.ravel() for a in grid])
    gcds = np.abs(coords[0])
    for row in coords[1:]:
        gcds = np.gcd(gcds, np.abs(row))
    if omega.kind == "box":
        inside = np.ones(coords.shape[1], dtype=bool)
    else:
        # strict membership: sum (q*x - p_i)^2 < (q*t*R)^2 over integers
        q = math.lcm((t * omega.radius).denominator,
                     *[(t * c).denominator for c in omega.center])
        lhs = np.zeros(coords.shape[1], dtype=np.int64)
        for i, c in enumerate(omega.center):
            lhs += (q * coords[i] - int(q * t * c)) ** 2
        rhs = int(q * t * omega.radius)
        inside = lhs < rhs * rhs
    if gcd_class == INFINITY:
        matched = int(np.count_nonzero(inside & (gcds == 0)))
    else:
        matched = int(np.count_nonzero(inside & (gcds == gcd_class)))
    return float(Fraction(matched) / t ** rank)
