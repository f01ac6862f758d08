"""Exact integer and rational primitives.

Rationals are :class:`fractions.Fraction` throughout; integers are Python
ints, and any path that drops into numpy ``int64`` checks its magnitude
bound first (see :func:`fits_int64`) and escalates to exact Python
arithmetic instead of wrapping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import LimitTooLarge, NonInvertible, NonPositiveModulus

Rat = Fraction

INT_BOUND = 1 << 62
# entries of an int8 Moebius table; 4e8 bytes is the default ceiling
MOEBIUS_LIMIT = 400_000_000


def fits_int64(bound: int) -> bool:
    """True when every intermediate of magnitude ``<= bound`` is safe in int64."""
    return abs(bound) < INT_BOUND


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def mod_inverse(d: int, q: int) -> int:
    """Return the reciprocal residue of ``d`` modulo ``q`` in ``[0, q-1]``.

    For ``q == 1`` every class is 0, so 0 is returned.
    """
    if q < 1:
        raise NonPositiveModulus(f"modulus must be >= 1, got {q}")
    if q == 1:
        return 0
    if math.gcd(d, q) != 1:
        raise NonInvertible(f"{d} is not invertible modulo {q}")
    # extended Euclid on (d mod q, q)
    old_r, r = d % q, q
    old_s, s = 1, 0
    while r:
        t = old_r // r
        old_r, r = r, old_r - t * r
        old_s, s = s, old_s - t * s
    return old_s % q


def mod_inverse_batch(d, q) -> np.ndarray:
    """Vectorised :func:`mod_inverse` over broadcast arrays ``d``, ``q``.

    Entries with ``gcd(d, q) != 1`` come back as -1 instead of raising;
    callers mask them out with their own coprimality test.
    """
    d = np.asarray(d, dtype=np.int64)
    q = np.asarray(q, dtype=np.int64)
    d, q = np.broadcast_arrays(d, q)
    if np.any(q < 1):
        raise NonPositiveModulus("modulus must be >= 1")
    old_r = np.mod(d, q)
    r = q.copy()
    old_s = np.ones_like(d)
    s = np.zeros_like(d)
    active = r != 0
    while active.any():
        safe_r = np.where(active, r, 1)
        t = np.where(active, old_r // safe_r, 0)
        new_r = np.where(active, old_r - t * r, r)
        new_s = np.where(active, old_s - t * s, s)
        old_r = np.where(active, r, old_r)
        old_s = np.where(active, s, old_s)
        r, s = new_r, new_s
        active = r != 0
    inv = np.mod(old_s, q)
    inv = np.where(q == 1, 0, inv)
    return np.where((old_r == 1) | (q == 1), inv, -1)


def moebius_table(limit: int, *, max_limit: int = MOEBIUS_LIMIT) -> np.ndarray:
    """Moebius function on ``0..limit`` as an int8 array (index 0 unused, set to 0)."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > max_limit:
        raise LimitTooLarge(f"Moebius table of size {limit} exceeds budget {max_limit}")
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    for p in np.flatnonzero(is_prime):
        p = int(p)
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    return mu


def euler_phi(q: int) -> int:
    if q < 1:
        raise ValueError("q must be >= 1")
    result = q
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def divisors(n: int) -> list[int]:
    """Positive divisors of ``|n|`` in increasing order."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has no finite divisor list")
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def frac_part(x: Rat) -> Rat:
    """``{x} = x - floor(x)``, floor toward minus infinity."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def b1(x: Rat) -> Rat:
    """First Bernoulli function: ``{x} - 1/2`` off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return frac_part(x) - Fraction(1, 2)


def b1_ratio_twice(m: int, q: int) -> int:
    """Integer ``2q * B1(m/q)`` for integer ``m`` and ``q >= 1``."""
    r = m % q
    return 0 if r == 0 else 2 * r - q


def dist_to_int(x: Rat) -> Rat:
    fx = frac_part(x)
    return min(fx, 1 - fx)


def b1_fourier(n: int, q: int) -> float:
    """Finite cotangent-sine expansion of ``B1(n/q)`` in floating point."""
    if q < 1:
        raise NonPositiveModulus(f"modulus must be >= 1, got {q}")
    n %= q
    terms = [
        math.sin(2.0 * math.pi * ((j * n) % q) / q) / math.tan(math.pi * j / q)
        for j in range(1, q // 2 + 1)
    ]
    return -math.fsum(terms) / q


def count_in_ap(m1: int, m2: int, q: int, r: int) -> int:
    """``#{m : m1 < m <= m2, m = r (mod q)}``."""
    if q < 1:
        raise NonPositiveModulus(f"modulus must be >= 1, got {q}")
    return (m2 - r) // q - (m1 - r) // q


@dataclass(frozen=True)
class CountDecomposition:
    density: Rat
    bernoulli_part: Rat
    indicator_part: Rat

    @property
    def total(self) -> Rat:
        return self.density + self.bernoulli_part + self.indicator_part


def count_b1_decomposition(m1: int, m2: int, q: int, r: int) -> CountDecomposition:
    """Split :func:`count_in_ap` via ``floor(t) = t - B1(t) - [t not in Z]/2``."""
    if q < 1:
        raise NonPositiveModulus(f"modulus must be >= 1, got {q}")
    hi = Fraction(m2 - r, q)
    lo = Fraction(m1 - r, q)
    indicator = Fraction(int((m2 - r) % q == 0) - int((m1 - r) % q == 0), 2)
    return CountDecomposition(
        density=Fraction(m2 - m1, q),
        bernoulli_part=-b1(hi) + b1(lo),
        indicator_part=indicator,
    )


def exact_sum(x: np.ndarray) -> int:
    """Exact integer sum of an integer array, escalating past int64 when needed."""
    if x.size == 0:
        return 0
    if x.dtype != object and fits_int64(int(np.max(np.abs(x))) * x.size):
        return int(np.sum(x))
    return sum(int(v) for v in x.ravel().tolist())


def exact_dot(x: np.ndarray, y: np.ndarray) -> int:
    """Exact integer dot product of two equal-length integer arrays."""
    if x.size == 0:
        return 0
    if x.dtype != object and y.dtype != object:
        bound = int(np.max(np.abs(x))) * int(np.max(np.abs(y))) * x.size
        if fits_int64(bound):
            return int(np.dot(x, y))
    return sum(a * b for a, b in zip(x.tolist(), y.tolist()))
