"""Viable functions: weakly increasing, at least 6, unbounded.

Values are exact ``Fraction``s so that every comparison ``|p| * f(|r|) < |r|``
is decided in integer arithmetic. Each function may also carry a lower bound
on ``inf_{n >= n0} n / f(n)``, which lets a truncated pair-condition check be
upgraded to a statement about all longer relators.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

RatioBound = Callable[[int], Optional[Fraction]]


def icbrt(n: int) -> int:
    """Largest integer m with m**3 <= n."""
    if n < 0:
        raise ValueError("negative input")
    m = round(n ** (1 / 3))
    while m**3 > n:
        m -= 1
    while (m + 1) ** 3 <= n:
        m += 1
    return m


@dataclass(frozen=True)
class ViableFunction:
    name: str
    func: Callable[[int], Fraction] = field(repr=False, compare=False)
    ratio_bound: Optional[RatioBound] = field(default=None, repr=False, compare=False)
    unbounded: bool = True

    def __call__(self, n: int) -> Fraction:
        return Fraction(self.func(n))

    def min_ratio_from(self, n0: int) -> Optional[Fraction]:
        """A lower bound for ``n / f(n)`` over all ``n >= n0``, if known."""
        if self.ratio_bound is None:
            return None
        return self.ratio_bound(max(n0, 1))

    def problems(self, ns: Iterable[int]) -> list[str]:
        """Violations of ``f >= 6`` and monotonicity on the sampled ``ns``."""
        out = []
        prev = None
        for n in sorted(set(ns)):
            v = self(n)
            if v < 6:
                out.append(f"f({n}) = {v} < 6")
            if prev is not None and v < prev[1]:
                out.append(f"f({n}) = {v} < f({prev[0]}) = {prev[1]}")
            prev = (n, v)
        return out


def constant(c: int | Fraction = 6) -> ViableFunction:
    c = Fraction(c)
    return ViableFunction(
        f"constant-{c}", lambda n: c, lambda n0: Fraction(n0) / c, unbounded=False
    )


def corrected_example() -> ViableFunction:
    """``max(6, floor(n^(1/3) / 2))``, evaluated at relator length."""

    def f(n: int) -> Fraction:
        m = icbrt(n) // 2  # floor(cbrt(n)/2) == floor(floor(cbrt(n))/2)
        return Fraction(max(6, m))

    def bound(n0: int) -> Fraction:
        # f(n) <= max(6, n^(1/3)/2), so n/f(n) >= min(n/6, 2 n^(2/3)), increasing
        return min(Fraction(n0, 6), Fraction(2 * icbrt(n0 * n0)))

    return ViableFunction("corrected-ex", f, bound)


def literal_example() -> ViableFunction:
    """``ceil(n^3 / (2 (n+1)^2))`` for n >= 14 (6 below), applied to relator length."""

    def f(n: int) -> Fraction:
        if n < 14:
            return Fraction(6)
        num, den = n**3, 2 * (n + 1) ** 2
        return Fraction(-(-num // den))

    def bound(n0: int) -> Fraction:
        # f(n) < n/2 + 1 for n >= 14
        b = Fraction(2 * max(n0, 14), max(n0, 14) + 2)
        return min(b, Fraction(n0, 6)) if n0 < 14 else b

    return ViableFunction("literal-ex", f, bound)


def table(points: Sequence[tuple[int, int | Fraction]], name: str = "viable-table") -> ViableFunction:
    """Step function through ``(n_k, v_k)``; the last value extends forever and
    the first value applies below the first key."""
    pts = sorted((int(n), Fraction(v)) for n, v in points)
    if not pts:
        raise ValueError("empty table")
    keys = [n for n, _ in pts]
    vals = [v for _, v in pts]

    def f(n: int) -> Fraction:
        j = bisect.bisect_right(keys, n) - 1
        return vals[max(j, 0)]

    def bound(n0: int) -> Fraction:
        j = max(bisect.bisect_right(keys, n0) - 1, 0)
        best = Fraction(n0) / vals[j]
        for k in range(j + 1, len(keys)):
            best = min(best, Fraction(keys[k]) / vals[k])
        return best

    return ViableFunction(name, f, bound, unbounded=False)


def parse_table(text: str) -> ViableFunction:
    """Parse ``n1:v1 n2:v2 ...``."""
    points = []
    for tok in text.split():
        n, _, v = tok.partition(":")
        if not v:
            raise ValueError(f"bad table entry {tok!r}")
        points.append((int(n), Fraction(v)))
    return table(points)


REGISTRY: dict[str, Callable[[], ViableFunction]] = {
    "constant-6": constant,
    "corrected-ex": corrected_example,
    "literal-ex": literal_example,
}
