"""Mapping ratios, limit formulas and the homogeneous-equation decider.

For free-abelian targets, "v is a homomorphic image of u" is exactly
"gcd(u) divides gcd(v)" under the INFINITY conventions: the image of 0
is 0 only, while 0 is an image of everything via the trivial map.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import lattice
from .freegrp import visible_fraction
from .numtheory import INFINITY, divides, gcd_vec, zeta
from .words import abelianize, free_reduce, invert


@dataclass(frozen=True)
class BetaLimits:
    """Spherical density limits of visible elements at abelianization rank r."""

    r: int
    even: float
    odd: float
    annular: float


def beta_limits(r):
    if r < 2:
        raise ValueError("rank must be >= 2")
    z = zeta(r, 1e-12)
    even = (2 ** r - 2) / ((2 ** r - 1) * z)
    odd = 2 ** r / ((2 ** r - 1) * z)
    return BetaLimits(r, even, odd, 1.0 / z)


def mapping_ratio_lattice(rank_n, rank_k, norm, s, t):
    """Exact fraction of pairs (u, v) in the (s, t) balls with v an image of u."""
    census_n = lattice.gcd_census(rank_n, norm, s)
    census_k = lattice.gcd_census(rank_k, norm, t)
    matched = 0
    for g, cg in census_n.counts.items():
        for h, ch in census_k.counts.items():
            if divides(g, h):
                matched += cg * ch
    return Fraction(matched, census_n.total * census_k.total)


def mapping_ratio_bounds_lattice(rank_n, rank_k):
    """Limit bounds on the free-abelian (s, t)-mapping ratio."""
    if rank_n < 2 or rank_k < 2:
        raise ValueError("ranks must be >= 2")
    zn, zk = zeta(rank_n, 1e-12), zeta(rank_k, 1e-12)
    return 1.0 / zn, 1.0 - (1.0 / zk) * (1.0 - 1.0 / zn)


def spherical_mapping_bounds(census_f, census_g):
    """Finite-size sandwich for the spherical mapping ratio e(F, G, s, t)."""
    # exact rational arithmetic keeps lower <= upper under float rounding
    vf = Fraction(census_f.visible_count(), census_f.total)
    vg = Fraction(census_g.visible_count(), census_g.total)
    if census_f.n == 0:
        vf = Fraction(0)
    if census_g.n == 0:
        vg = Fraction(0)
    return float(vf), float(1 - vg * (1 - vf))


class Verdict(enum.Enum):
    SOLVABLE = "solvable"
    UNSOLVABLE = "unsolvable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class EquationInstance:
    """Homogeneous equation z(X_1..X_n) = w, abelianized on the right."""

    z: tuple          # word over the variable alphabet, exponents +-1
    num_vars: int
    w_ab: tuple       # abelianization of the right-hand side
    w_is_identity: bool

    def exponent_vector(self):
        return abelianize(self.z, self.num_vars)


def decide_homogeneous(eq):
    """Lemma-of-gcd verdict: gcd 1 left sides are always solvable, and an
    image gcd must be a multiple of the source gcd."""
    if eq.w_is_identity:
        return Verdict.SOLVABLE  # trivial homomorphism
    gz = gcd_vec(eq.exponent_vector())
    if gz == 1:
        return Verdict.SOLVABLE
    if not divides(gz, gcd_vec(eq.w_ab)):
        return Verdict.UNSOLVABLE
    return Verdict.UNKNOWN


def bezout_coefficients(v):
    """Integers p with sum(v_i * p_i) == gcd(|v|) (gcd 0 for the zero vector).

    Deterministic iterated extended gcd; used to build the explicit
    solvability witness X_i -> w^(p_i) when gcd(v) == 1.
    """
    if not v:
        raise ValueError("empty exponent vector")
    coeffs = [0] * len(v)
    g = 0
    for i, a in enumerate(v):
        if a == 0:
            continue
        if g == 0:
            g = abs(a)
            coeffs = [0] * len(v)
            coeffs[i] = 1 if a > 0 else -1
            continue
        g2, p, q = _xgcd(g, abs(a))
        coeffs = [c * p for c in coeffs]
        coeffs[i] = q if a > 0 else -q
        g = g2
    return g, coeffs


def _xgcd(a, b):
    """(g, x, y) with a*x + b*y == g, for non-negative a, b."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def solvability_witness(eq, w_word):
    """For a SOLVABLE equation, the homomorphism X_i -> w^(p_i) as words.

    Returns the list of images, or None when the Bezout construction does
    not apply (exponent gcd != 1 and w not the identity).
    """
    if eq.w_is_identity:
        return [()] * eq.num_vars
    v = eq.exponent_vector()
    g, coeffs = bezout_coefficients(v)
    if g != 1:
        return None
    w_word = free_reduce(w_word)
    images = []
    for p in coeffs:
        if p >= 0:
            images.append(free_reduce(w_word * p))
        else:
            images.append(free_reduce(invert(w_word) * (-p)))
    return images


def apply_homomorphism(word, images):
    """Image of a variable word under X_i -> images[i], freely reduced."""
    out = []
    for letter in word:
        image = images[letter >> 1]
        out.extend(invert(image) if letter & 1 else image)
    return free_reduce(out)


def equation_ratio_bounds(census_z, census_w):
    """Bounds on the solvable fraction of (s, t)-homogeneous equations.

    Left-hand sides are identified with reduced words of length s in the
    free group on the variables, so the bounds coincide with the
    spherical mapping bounds.
    """
    return spherical_mapping_bounds(census_z, census_w)


def verdict_fractions(census_z, census_w):
    """Exact SOLVABLE/UNSOLVABLE/UNKNOWN fractions over sphere pairs."""
    gz_counts = census_z.gcd_class_counts()
    gw_counts = census_w.gcd_class_counts()
    totals = {v: 0 for v in Verdict}
    w_is_identity = census_w.n == 0
    for gz, cz in gz_counts.items():
        for gw, cw in gw_counts.items():
            if w_is_identity or gz == 1:
                verdict = Verdict.SOLVABLE
            elif not divides(gz, gw):
                verdict = Verdict.UNSOLVABLE
            else:
                verdict = Verdict.UNKNOWN
            totals[verdict] += cz * cw
    denom = census_z.total * census_w.total
    return {v: Fraction(c, denom) for v, c in totals.items()}
