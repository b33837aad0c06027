"""Exhaustive cocycle enumeration for small groups.

Everything here is deliberately naive -- direct enumeration over addition
tables -- so it can serve as an oracle for the normal-form machinery
without sharing any code path with it.  Only finite base and coefficient
groups are supported, and sizes are expected to satisfy
|A|^(|G|^2) within a few hundred thousand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from homcert.groups import FinGenAbGroup


def _addition_table(group: FinGenAbGroup) -> list[list[int]]:
    elems = list(group.elements())
    idx = {e: i for i, e in enumerate(elems)}
    return [[idx[group.add(a, b)] for b in elems] for a in elems]


@dataclass(frozen=True)
class CocycleCensus:
    """Counts from exhaustive 2-cochain enumeration."""

    group: FinGenAbGroup
    coeffs: FinGenAbGroup
    n_cocycles: int
    n_symmetric_cocycles: int
    n_coboundaries: int
    all_coboundaries_symmetric: bool
    hochschild_classes: int
    symmetric_classes: int
    symmetric_classes_stay_distinct: bool

    def details(self) -> dict:
        return {
            "group": self.group.describe(),
            "coefficients": self.coeffs.describe(),
            "cocycles": self.n_cocycles,
            "symmetric_cocycles": self.n_symmetric_cocycles,
            "coboundaries": self.n_coboundaries,
            "all_coboundaries_symmetric": self.all_coboundaries_symmetric,
            "hochschild_classes": self.hochschild_classes,
            "symmetric_classes": self.symmetric_classes,
            "symmetric_classes_stay_distinct": self.symmetric_classes_stay_distinct,
        }


def enumerate_cocycles(group: FinGenAbGroup, coeffs: FinGenAbGroup) -> CocycleCensus:
    """Enumerate all maps G^2 -> A, filter the 2-cocycles, and quotient by
    the coboundaries of maps G -> A.

    A 2-cochain c is a cocycle when c(y,z) - c(x+y,z) + c(x,y+z) - c(x,y)
    vanishes for all triples; it is symmetric when c(x,y) = c(y,x).
    """
    if not (group.is_finite and coeffs.is_finite):
        raise ValueError("enumeration needs finite groups")
    gtab = _addition_table(group)
    atab = _addition_table(coeffs)
    n = len(gtab)
    na = len(atab)
    aneg = [next(j for j in range(na) if atab[i][j] == 0) for i in range(na)]

    pair = [[x * n + y for y in range(n)] for x in range(n)]
    triples = [
        (pair[y][z], pair[gtab[x][y]][z], pair[x][gtab[y][z]], pair[x][y])
        for x in range(n) for y in range(n) for z in range(n)
    ]

    cocycles = []
    for c in itertools.product(range(na), repeat=n * n):
        ok = True
        for t0, t1, t2, t3 in triples:
            acc = atab[atab[c[t0]][aneg[c[t1]]]][atab[c[t2]][aneg[c[t3]]]]
            if acc != 0:
                ok = False
                break
        if ok:
            cocycles.append(c)

    symmetric = [c for c in cocycles
                 if all(c[pair[x][y]] == c[pair[y][x]] for x in range(n) for y in range(x))]

    coboundaries = set()
    for f in itertools.product(range(na), repeat=n):
        cob = tuple(
            atab[f[gtab[x][y]]][atab[aneg[f[x]]][aneg[f[y]]]]
            for x in range(n) for y in range(n)
        )
        coboundaries.add(cob)
    all_cob_symmetric = all(
        b[pair[x][y]] == b[pair[y][x]]
        for b in coboundaries for x in range(n) for y in range(x)
    )

    def classes(items):
        seen = set()
        reps = []
        for c in items:
            if c in seen:
                continue
            reps.append(c)
            for b in coboundaries:
                seen.add(tuple(atab[ci][bi] for ci, bi in zip(c, b)))
        return reps

    hoch_reps = classes(cocycles)
    sym_reps = classes(symmetric)

    # distinct symmetric classes must stay distinct inside the full quotient
    distinct = True
    for i in range(len(sym_reps)):
        for j in range(i + 1, len(sym_reps)):
            diff = tuple(atab[a][aneg[b]] for a, b in zip(sym_reps[i], sym_reps[j]))
            if diff in coboundaries:
                distinct = False
    return CocycleCensus(
        group=group,
        coeffs=coeffs,
        n_cocycles=len(cocycles),
        n_symmetric_cocycles=len(symmetric),
        n_coboundaries=len(coboundaries),
        all_coboundaries_symmetric=all_cob_symmetric,
        hochschild_classes=len(hoch_reps),
        symmetric_classes=len(sym_reps),
        symmetric_classes_stay_distinct=distinct,
    )


def abelian_extension_count(group: FinGenAbGroup, coeffs: FinGenAbGroup) -> int:
    """Number of abelian extension classes = number of symmetric 2-cocycle
    classes (independent route to |Ext^1| for small inputs)."""
    return enumerate_cocycles(group, coeffs).symmetric_classes
