"""Mobius function, gcd-class arithmetic and Riemann zeta evaluation.

The gcd of the all-zero tuple is the distinguished value INFINITY, and
divisibility is extended so that every positive integer divides INFINITY
while INFINITY divides only itself.  This keeps the homomorphic-image
criterion in `ratios` a single divisibility test.
"""

import math
from dataclasses import dataclass

INFINITY = math.inf


@dataclass(frozen=True)
class MobiusTable:
    """mu(n) for 1 <= n <= limit."""

    limit: int
    values: tuple  # values[n-1] == mu(n)

    def __getitem__(self, n):
        if not 1 <= n <= self.limit:
            raise IndexError(f"mu({n}) outside sieve limit {self.limit}")
        return self.values[n - 1]


def mobius_sieve(limit):
    """Sieve mu(1..limit)."""
    if limit < 1:
        raise ValueError("sieve limit must be >= 1")
    mu = [1] * (limit + 1)
    is_prime = [True] * (limit + 1)
    for p in range(2, limit + 1):
        if not is_prime[p]:
            continue
        for m in range(p, limit + 1, p):
            if m > p:
                is_prime[m] = False
            mu[m] = -mu[m]
        for m in range(p * p, limit + 1, p * p):
            mu[m] = 0
    return MobiusTable(limit, tuple(mu[1:]))


def gcd_vec(coords):
    """gcd of |coords|, INFINITY for the zero vector."""
    if len(coords) == 0:
        raise ValueError("gcd of an empty tuple is undefined")
    g = 0
    for c in coords:
        g = math.gcd(g, c)
    return INFINITY if g == 0 else g


def divides(g, h):
    """Extended divisibility on gcd classes."""
    if g == INFINITY:
        return h == INFINITY
    return h == INFINITY or h % g == 0


# pi^2/6, pi^4/90, pi^6/945
_ZETA_CLOSED = {
    2: math.pi ** 2 / 6,
    4: math.pi ** 4 / 90,
    6: math.pi ** 6 / 945,
}


def zeta(r, precision=1e-12):
    """zeta(r) for integer r >= 2, to within `precision`.

    Even r <= 6 use the classical closed forms; otherwise a partial sum
    with the integral tail correction N^(1-r)/(r-1), N chosen so the
    residual is below `precision`.
    """
    if r < 2:
        raise ValueError("zeta series diverges for r < 2")
    if not 0 < precision <= 1e-6:
        raise ValueError("precision must lie in (0, 1e-6]")
    if r in _ZETA_CLOSED:
        return _ZETA_CLOSED[r]
    # residual after tail correction is below N^-r
    n_terms = max(2, math.ceil(precision ** (-1.0 / r))) + 1
    partial = sum(n ** -float(r) for n in range(1, n_terms + 1))
    tail = n_terms ** (1.0 - r) / (r - 1.0)
    return partial + tail
