"""Finitely generated abelian groups given by cyclic orders.

An order 0 entry denotes an infinite cyclic factor; order n >= 1 denotes
Z/n.  Elements are integer tuples reduced mod each finite order.  The
element enumeration is the mixed-radix odometer with the least significant
(= last listed) factor moving fastest; all matrix indexings downstream
depend on this order, so it is fixed here once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class FinGenAbGroup:
    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        for n in self.cyclic_orders:
            if n < 0:
                raise ValueError("cyclic orders must be nonnegative (0 = infinite cyclic)")

    @classmethod
    def parse(cls, text: str) -> "FinGenAbGroup":
        """Parse a comma-separated order list, e.g. '2,4' or '0' for Z."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            orders = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise ValueError(f"malformed group descriptor {text!r}") from exc
        group = cls(orders)
        return group

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def is_finite(self) -> bool:
        return all(n >= 1 for n in self.cyclic_orders)

    @property
    def is_trivial(self) -> bool:
        return all(n == 1 for n in self.cyclic_orders)

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        total = 1
        for n in self.cyclic_orders:
            total *= n
        return total

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def reduce(self, elem: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(v % n if n else v for v, n in zip(elem, self.cyclic_orders))

    def add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x + y) % n if n else x + y
                     for x, y, n in zip(a, b, self.cyclic_orders))

    def neg(self, a: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((-x) % n if n else -x for x, n in zip(a, self.cyclic_orders))

    def scale(self, a: tuple[int, ...], k: int) -> tuple[int, ...]:
        return tuple((k * x) % n if n else k * x for x, n in zip(a, self.cyclic_orders))

    def elements(self) -> Iterator[tuple[int, ...]]:
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*(range(n) for n in self.cyclic_orders))

    def index_of(self, elem: tuple[int, ...]) -> int:
        idx = 0
        for v, n in zip(elem, self.cyclic_orders):
            idx = idx * n + (v % n)
        return idx

    def tuples(self, arity: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        """All arity-tuples of elements, in enumeration (row-major) order."""
        return itertools.product(list(self.elements()), repeat=arity)

    def tuple_index(self, tup: tuple[tuple[int, ...], ...]) -> int:
        order = self.order
        idx = 0
        for elem in tup:
            idx = idx * order + self.index_of(elem)
        return idx

    def describe(self) -> str:
        if self.is_trivial:
            return "0"
        parts = [("Z" if n == 0 else f"Z/{n}") for n in self.cyclic_orders if n != 1]
        return " x ".join(parts) if parts else "0"
