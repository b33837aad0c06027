"""Numerical semigroups: membership, gaps, Frobenius number.

A numerical semigroup here is the additive closure of positive generators
with gcd 1, so it is cofinite in the nonnegative integers.  Membership is
tabulated up to the Frobenius number; everything beyond is a member.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd


@dataclass(frozen=True)
class NumericalSemigroup:
    generators: tuple[int, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a numerical semigroup needs at least one generator")
        if any(g < 1 for g in self.generators):
            raise ValueError("generators must be positive")
        g = 0
        for v in self.generators:
            g = gcd(g, v)
        if g != 1:
            raise ValueError(f"generators {self.generators} have gcd {g} != 1")

    @classmethod
    def parse(cls, text: str) -> "NumericalSemigroup":
        try:
            gens = tuple(int(p) for p in text.split(","))
        except ValueError as exc:
            raise ValueError(f"malformed semigroup descriptor {text!r}") from exc
        return cls(gens)

    @cached_property
    def _table(self) -> list[bool]:
        """Reachability table long enough to certify cofiniteness: extend
        until min(generators) consecutive members appear, after which every
        larger integer is a member."""
        step = min(self.generators)
        limit = max(self.generators) * step + step + 1
        while True:
            table = [False] * limit
            table[0] = True
            for n in range(1, limit):
                for g in self.generators:
                    if g <= n and table[n - g]:
                        table[n] = True
                        break
            run = 0
            for n, ok in enumerate(table):
                run = run + 1 if ok else 0
                if run >= step:
                    return table[: n + 1]
            limit *= 2

    @cached_property
    def gaps(self) -> tuple[int, ...]:
        return tuple(n for n, ok in enumerate(self._table) if not ok)

    @cached_property
    def frobenius(self) -> int:
        """Largest non-member; -1 when the semigroup is all of N."""
        return self.gaps[-1] if self.gaps else -1

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n >= len(self._table):
            return True
        return self._table[n]

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    def describe(self) -> str:
        return "<" + ",".join(str(g) for g in self.generators) + ">"
