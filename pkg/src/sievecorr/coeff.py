"""Coefficient tables ``g`` on ``[1, Q]`` and sieving of ``f = g * 1``.

A :class:`Segment` stores ``f`` on an integer window as integer numerators
over one common denominator, so sums and dot products stay exact while
running at numpy speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .arith import Rat, fits_int64, moebius_table
from .errors import BadTableLength, NonDyadicSupport, SegmentTooShort

PRESETS = ("unit", "moebius", "moebius_sq")

# default chunk length for the segmented sieve (int64 entries)
SIEVE_CHUNK = 1 << 21


@dataclass(frozen=True)
class CoeffFn:
    """Exact rational table ``g(1..support_bound)``; zero beyond the bound."""

    support_bound: int
    values: tuple[Fraction, ...]
    label: str = "custom"

    def __post_init__(self):
        if self.support_bound < 1:
            raise ValueError("support_bound must be >= 1")
        if len(self.values) != self.support_bound:
            raise BadTableLength(
                f"table has {len(self.values)} entries, expected {self.support_bound}"
            )
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __call__(self, d: int) -> Fraction:
        if 1 <= d <= self.support_bound:
            return self.values[d - 1]
        return Fraction(0)

    @cached_property
    def denominator(self) -> int:
        return math.lcm(*(v.denominator for v in self.values))

    @cached_property
    def numerators(self) -> np.ndarray:
        """Integers ``g(d) * denominator`` indexed by ``d`` (entry 0 is 0)."""
        L = self.denominator
        ints = [0] + [v.numerator * (L // v.denominator) for v in self.values]
        if fits_int64(sum(abs(x) for x in ints)):
            return np.array(ints, dtype=np.int64)
        return np.array(ints, dtype=object)

    @cached_property
    def support(self) -> np.ndarray:
        """Indices ``d`` with ``g(d) != 0``."""
        return np.flatnonzero(self.numerators != 0).astype(np.int64)

    @cached_property
    def abs_sum(self) -> Fraction:
        return sum((abs(v) for v in self.values), Fraction(0))

    @cached_property
    def max_abs(self) -> Fraction:
        return max(abs(v) for v in self.values)

    def is_zero(self) -> bool:
        return self.support.size == 0

    def restrict(self, lo: Rat, hi: Rat, label: str | None = None) -> "CoeffFn":
        """Copy of ``g`` zeroed outside the half-open block ``]lo, hi]``."""
        bound = max(1, min(self.support_bound, math.floor(hi)))
        vals = [self(d) if lo < d <= hi else Fraction(0) for d in range(1, bound + 1)]
        return CoeffFn(bound, tuple(vals), label or f"{self.label}]{lo},{hi}]")


@dataclass(frozen=True)
class Segment:
    """Values of ``f`` on ``[start, start + len - 1]`` as ``numer / den``."""

    start: int
    numer: np.ndarray
    den: int = 1

    def __post_init__(self):
        if self.start < 1:
            raise ValueError("segment start must be >= 1")
        if len(self.numer) == 0:
            raise ValueError("segment must be nonempty")

    def __len__(self) -> int:
        return len(self.numer)

    @property
    def end(self) -> int:
        return self.start + len(self.numer) - 1

    def covers(self, lo: int, hi: int) -> bool:
        return self.start <= lo and hi <= self.end

    def require(self, lo: int, hi: int) -> None:
        if not self.covers(lo, hi):
            raise SegmentTooShort(
                f"segment [{self.start}, {self.end}] does not cover [{lo}, {hi}]"
            )

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Numerators for ``n`` in ``[lo, hi]``."""
        self.require(lo, hi)
        return self.numer[lo - self.start : hi - self.start + 1]

    def __getitem__(self, n: int) -> Fraction:
        self.require(n, n)
        return Fraction(int(self.numer[n - self.start]), self.den)

    @property
    def values(self) -> list[Fraction]:
        return [Fraction(int(x), self.den) for x in self.numer]

    @cached_property
    def max_abs(self) -> Fraction:
        return Fraction(int(np.max(np.abs(self.numer))), self.den)

    def as_float(self) -> np.ndarray:
        return np.asarray(self.numer, dtype=np.float64) / self.den


@dataclass(frozen=True)
class DyadicSupport:
    """A coefficient table vanishing outside the block ``]base, 2*base]``.

    ``base`` is a positive rational; the block holding ``d = 1`` has base 1/2.
    """

    base: Fraction
    underlying: CoeffFn = field(repr=False)

    def __post_init__(self):
        base = Fraction(self.base)
        object.__setattr__(self, "base", base)
        if base <= 0:
            raise NonDyadicSupport("block base must be positive")
        bad = [d for d in self.underlying.support.tolist() if not base < d <= 2 * base]
        if bad:
            raise NonDyadicSupport(
                f"support point {bad[0]} lies outside ]{base}, {2 * base}]"
            )


def as_dyadic(g: CoeffFn | DyadicSupport) -> DyadicSupport:
    """Wrap ``g`` in the smallest power-of-two block holding its support."""
    if isinstance(g, DyadicSupport):
        return g
    supp = g.support
    if supp.size == 0:
        return DyadicSupport(Fraction(1, 2), g)
    lo, hi = int(supp[0]), int(supp[-1])
    k = (hi - 1).bit_length() - 1
    base = Fraction(1 << k) if k >= 0 else Fraction(1, 2)
    if not base < lo:
        raise NonDyadicSupport(f"support [{lo}, {hi}] spans more than one dyadic block")
    return DyadicSupport(base, g)


def dyadic_blocks(g: CoeffFn) -> list[DyadicSupport]:
    """Partition ``g`` into blocks ``]2^(k-1), 2^k]``, ``k >= 0``; empty blocks dropped."""
    blocks = []
    base = Fraction(1, 2)
    while base < g.support_bound:
        part = g.restrict(base, 2 * base)
        if not part.is_zero():
            blocks.append(DyadicSupport(base, part))
        base *= 2
    return blocks


def make_preset(kind: str, Q: int, table: Sequence | None = None) -> CoeffFn:
    """Build ``unit`` (g = 1), ``moebius``, ``moebius_sq`` or ``custom`` on ``[1, Q]``."""
    if Q < 1:
        raise ValueError("Q must be >= 1")
    if kind == "unit":
        vals = (Fraction(1),) * Q
    elif kind in ("moebius", "moebius_sq"):
        mu = moebius_table(Q)[1:].astype(np.int64)
        if kind == "moebius_sq":
            mu = mu * mu
        vals = tuple(Fraction(int(x)) for x in mu)
    elif kind == "custom":
        if table is None or len(table) != Q:
            raise BadTableLength(f"custom table must have exactly {Q} entries")
        vals = tuple(Fraction(v) for v in table)
    else:
        raise ValueError(f"unknown preset {kind!r}")
    return CoeffFn(Q, vals, f"{kind}({Q})")


def zero_coeff(Q: int) -> CoeffFn:
    return CoeffFn(Q, (Fraction(0),) * Q, f"zero({Q})")


def random_signs(lo: int, hi: int, rng: np.random.Generator, label: str = "signs") -> CoeffFn:
    """Independent random +-1 values on ``]lo, hi]``, zero below."""
    signs = rng.choice(np.array([-1, 1]), size=hi - lo)
    vals = [Fraction(0)] * lo + [Fraction(int(s)) for s in signs]
    return CoeffFn(hi, tuple(vals), f"{label}]{lo},{hi}]")


def load_coeff_table(path: str | Path, Q: int | None = None) -> CoeffFn:
    """Read lines ``d value`` (value as ``num/den`` or integer); absent ``d`` is 0."""
    entries: dict[int, Fraction] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'd value', got {line!r}")
        d = int(parts[0])
        if d < 1:
            raise ValueError(f"{path}:{lineno}: index must be >= 1")
        entries[d] = Fraction(parts[1])
    bound = Q if Q is not None else max(entries, default=1)
    if entries and max(entries) > bound:
        raise BadTableLength(f"{path}: index {max(entries)} exceeds support bound {bound}")
    vals = tuple(entries.get(d, Fraction(0)) for d in range(1, bound + 1))
    return CoeffFn(bound, vals, Path(path).stem)


def save_coeff_table(g: CoeffFn, path: str | Path) -> None:
    lines = [
        f"{d} {v.numerator}/{v.denominator}" for d, v in enumerate(g.values, 1) if v != 0
    ]
    Path(path).write_text("\n".join(lines) + "\n")


def sieve_segment(g: CoeffFn, A: int, B: int, *, chunk: int = SIEVE_CHUNK) -> Segment:
    """Sieve ``f(n) = sum_{d | n, d <= Q} g(d)`` for ``n`` in ``[A, B]``.

    The window is processed in chunks of ``chunk`` integers; within a chunk
    ``g(d)`` is added at every multiple of ``d``.
    """
    if not 1 <= A <= B:
        raise ValueError(f"need 1 <= A <= B, got [{A}, {B}]")
    gnum = g.numerators
    supp = g.support.tolist()
    exact_int64 = gnum.dtype != object
    out = np.zeros(B - A + 1, dtype=np.int64 if exact_int64 else object)
    for lo in range(A, B + 1, chunk):
        hi = min(B, lo + chunk - 1)
        view = out[lo - A : hi - A + 1]
        for d in supp:
            if d > hi:
                break
            first = -(-lo // d) * d
            if first > hi:
                continue
            view[first - lo :: d] += gnum[d]
    return Segment(A, out, g.denominator)


def f_at(g: CoeffFn, n: int) -> Fraction:
    """``f(n)`` by direct divisor enumeration."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = Fraction(0)
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            total += g(d)
            if d * d != n:
                total += g(n // d)
    return total


def mean_value(g: CoeffFn, h: int) -> Fraction:
    """``M_f(h) = h * sum_d g(d)/d``."""
    if h < 1:
        raise ValueError("h must be >= 1")
    return h * sum((v / d for d, v in enumerate(g.values, 1) if v), Fraction(0))


def long_sum_check(g: CoeffFn, x: int) -> tuple[Fraction, Fraction, Fraction]:
    """Compare ``sum_{n<=x} f(n) = sum_d g(d) floor(x/d)`` with ``x * sum_d g(d)/d``."""
    exact = sum((v * (x // d) for d, v in enumerate(g.values, 1) if v), Fraction(0))
    smooth = x * sum((v / d for d, v in enumerate(g.values, 1) if v), Fraction(0))
    return exact, smooth, exact - smooth


def essential_bound_report(g: CoeffFn, eps: float) -> float:
    """Diagnostic ``max_d |g(d)| / d^eps`` over the support."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    return max(
        (float(abs(v)) / d**eps for d, v in enumerate(g.values, 1) if v), default=0.0
    )
