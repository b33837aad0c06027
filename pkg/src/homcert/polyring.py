"""Sparse multivariate polynomials over arbitrary-precision integers.

Rings declare a fixed, ordered variable alphabet; individual variables may
be flagged Laurent, in which case negative exponents are allowed for that
variable only.  The canonical term order is graded lexicographic in the
declared variable order, and every rendered polynomial lists its terms in
descending order, so identical inputs produce identical bytes.

On top of the arithmetic sit per-variable subring constraints (a numerical
semigroup restricting one variable's exponents), finite generator lists of
ring submodules, and a degree-bounded membership search whose positive
answers are explicit multiplier certificates, re-checkable by expansion
alone.  A failed search only means "not found within this bound"; no
completeness is claimed.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from homcert.intlinalg import IntMatrix, solve
from homcert.semigroups import NumericalSemigroup


class LaurentViolation(ValueError):
    """A negative exponent reached a variable that is not Laurent."""


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    laurent: frozenset[str] = frozenset()

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        for n in self.names:
            if not re.fullmatch(r"[a-z]+", n):
                raise ValueError(f"variable names must match [a-z]+, got {n!r}")
        unknown = self.laurent - set(self.names)
        if unknown:
            raise ValueError(f"Laurent flags for unknown variables: {sorted(unknown)}")

    @classmethod
    def of(cls, *names: str, laurent: Iterable[str] = ()) -> "PolyRing":
        return cls(tuple(names), frozenset(laurent))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no variable {name!r} in ring {self.names}") from None

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        return Poly(self, {(0,) * len(self.names): c} if c else {})

    def var(self, name: str) -> "Poly":
        i = self.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return Poly(self, {exps: 1})

    def monomial(self, coeff: int, **powers: int) -> "Poly":
        exps = [0] * len(self.names)
        for name, e in powers.items():
            exps[self.index(name)] = e
        return Poly(self, {tuple(exps): coeff} if coeff else {})

    def extended(self, *extra: str, laurent: Iterable[str] = ()) -> "PolyRing":
        names = self.names + tuple(n for n in extra if n not in self.names)
        return PolyRing(names, self.laurent | frozenset(laurent))

    def parse(self, text: str) -> "Poly":
        return _parse(self, text)


def _grlex_key(exps: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(exps), exps)


class Poly:
    """Canonical sparse polynomial: map from exponent tuples to nonzero
    integer coefficients, validated against the ring's Laurent flags."""

    __slots__ = ("ring", "_t")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], int]):
        self.ring = ring
        t = {}
        for exps, c in terms.items():
            if not c:
                continue
            for name, e in zip(ring.names, exps):
                if e < 0 and name not in ring.laurent:
                    raise LaurentViolation(
                        f"negative exponent on non-Laurent variable {name!r}"
                    )
            t[exps] = c
        self._t = t

    # -- inspection

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self._t.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    @property
    def is_zero(self) -> bool:
        return not self._t

    def leading(self) -> tuple[tuple[int, ...], int]:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self._t, key=_grlex_key)
        return exps, self._t[exps]

    def degree(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self._t), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._t), default=0)

    def constant_term(self) -> int:
        return self._t.get((0,) * len(self.ring.names), 0)

    def coefficient(self, **powers: int) -> int:
        exps = [0] * len(self.ring.names)
        for name, e in powers.items():
            exps[self.ring.index(name)] = e
        return self._t.get(tuple(exps), 0)

    # -- arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings; cast first")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        t = dict(self._t)
        for e, c in other._t.items():
            w = t.get(e, 0) + c
            if w:
                t[e] = w
            else:
                t.pop(e, None)
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {e: -c for e, c in self._t.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        t: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                w = t.get(e, 0) + c1 * c2
                if w:
                    t[e] = w
                else:
                    t.pop(e, None)
        return Poly(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            if len(self._t) != 1:
                raise LaurentViolation("only single monomials can be inverted")
            (exps, c), = self._t.items()
            if c not in (1, -1):
                raise LaurentViolation("only unit-coefficient monomials can be inverted")
            inv = Poly(self.ring, {tuple(-e for e in exps): c})
            return inv ** (-k)
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def substitute(self, name: str, value: "Poly") -> "Poly":
        """Replace a variable by a polynomial of the same ring.

        Negative powers of the replaced variable require the replacement to
        be an invertible (unit-coefficient) monomial.
        """
        if value.ring != self.ring:
            raise ValueError("cast the replacement into the same ring first")
        vi = self.ring.index(name)
        powers: dict[int, Poly] = {}
        out = self.ring.zero()
        for exps, c in self._t.items():
            k = exps[vi]
            rest = exps[:vi] + (0,) + exps[vi + 1:]
            if k not in powers:
                powers[k] = value ** k
            out = out + Poly(self.ring, {rest: c}) * powers[k]
        return out

    def cast(self, ring: PolyRing) -> "Poly":
        """Re-express in another ring by variable name; every variable that
        actually occurs must exist there."""
        pos = []
        for i, name in enumerate(self.ring.names):
            pos.append(ring.names.index(name) if name in ring.names else None)
        width = len(ring.names)
        t: dict[tuple[int, ...], int] = {}
        for exps, c in self._t.items():
            out = [0] * width
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                if pos[i] is None:
                    raise ValueError(
                        f"variable {self.ring.names[i]!r} does not exist in the target ring"
                    )
                out[pos[i]] = e
            key = tuple(out)
            w = t.get(key, 0) + c
            if w:
                t[key] = w
            else:
                t.pop(key, None)
        return Poly(ring, t)

    # -- identity

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self) -> int:
        return hash((self.ring.names, frozenset(self._t.items())))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, (exps, c) in enumerate(self.terms()):
            mono = _mono_str(self.ring, exps)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _mono_str(ring: PolyRing, exps: tuple[int, ...]) -> str:
    parts = []
    for name, e in zip(ring.names, exps):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[a-z]+|\*|\^|\+|\-|\(|\))")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot tokenize {text[pos:pos + 12]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _parse(ring: PolyRing, text: str) -> Poly:
    """Parse the certificate/CLI polynomial syntax: integer coefficients,
    ``*`` products, ``^`` powers (negative allowed on Laurent variables),
    parentheses, variables matching [a-z]+."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"unexpected end of input in {text!r}")
        tok = tokens[pos]
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r}, got {tok!r} in {text!r}")
        pos += 1
        return tok

    def parse_expr() -> Poly:
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        node = parse_term() * sign
        while peek() in ("+", "-"):
            op = take()
            node = node + parse_term() * (1 if op == "+" else -1)
        return node

    def parse_term() -> Poly:
        node = parse_factor()
        while peek() == "*":
            take("*")
            node = node * parse_factor()
        return node

    def parse_factor() -> Poly:
        if peek() == "-":
            take("-")
            return -parse_factor()
        base = parse_atom()
        if peek() == "^":
            take("^")
            neg = False
            if peek() == "-":
                take("-")
                neg = True
            k = int(take())
            base = base ** (-k if neg else k)
        return base

    def parse_atom() -> Poly:
        tok = peek()
        if tok == "(":
            take("(")
            node = parse_expr()
            take(")")
            return node
        tok = take()
        if tok.isdigit():
            return ring.const(int(tok))
        if re.fullmatch(r"[a-z]+", tok):
            return ring.var(tok)
        raise ValueError(f"unexpected token {tok!r} in {text!r}")

    node = parse_expr()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens {tokens[pos:]} in {text!r}")
    return node


# -- subring constraints -------------------------------------------------------


@dataclass(frozen=True)
class SubringSpec:
    """Restrict one variable's exponents to a numerical semigroup; the
    identity spec (no variable) admits everything.  Admissible monomials
    are closed under multiplication because semigroups are closed under
    addition; sampled on construction as a sanity check."""

    variable: Optional[str] = None
    semigroup: Optional[NumericalSemigroup] = None

    def __post_init__(self):
        if (self.variable is None) != (self.semigroup is None):
            raise ValueError("variable and semigroup must be set together")
        if self.semigroup is not None:
            gens = self.semigroup.generators[:4]
            for a in gens:
                for b in gens:
                    assert self.semigroup.contains(a + b)

    @property
    def unrestricted(self) -> bool:
        return self.variable is None

    def admits_exponent(self, e: int) -> bool:
        return self.semigroup.contains(e) if self.semigroup else True

    def admits_monomial(self, ring: PolyRing, exps: tuple[int, ...]) -> bool:
        if self.unrestricted or self.variable not in ring.names:
            return True
        return self.admits_exponent(exps[ring.index(self.variable)])

    def payload(self) -> dict:
        return {
            "variable": self.variable,
            "semigroup": list(self.semigroup.generators) if self.semigroup else None,
        }


UNRESTRICTED = SubringSpec()


def in_subring(p: Poly, spec: SubringSpec) -> bool:
    """True when every monomial's designated-variable exponent lies in the
    semigroup (other variables are unrestricted)."""
    if spec.unrestricted:
        return True
    if spec.variable not in p.ring.names:
        return True
    i = p.ring.index(spec.variable)
    return all(spec.admits_exponent(e[i]) for e in p._t)


# -- module generator lists ----------------------------------------------------


def _poly_sort_key(p: Poly):
    return tuple((_grlex_key(e), c) for e, c in p.terms())


@dataclass(frozen=True)
class ModuleGens:
    """Finite generator list of a submodule of the ambient ring, with the
    coefficient subring constraint the multipliers must satisfy.

    Generators are canonicalized on construction: sign-normalized so the
    leading coefficient is positive, deduplicated, and sorted.
    """

    ring: PolyRing
    generators: tuple[Poly, ...]
    subring: SubringSpec = UNRESTRICTED
    bound_vars: tuple[str, ...] = ()

    def __post_init__(self):
        canon = []
        seen = set()
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("generator outside the ambient ring")
            if g.is_zero:
                continue
            if g.leading()[1] < 0:
                g = -g
            if g not in seen:
                seen.add(g)
                canon.append(g)
        canon.sort(key=_poly_sort_key, reverse=True)
        object.__setattr__(self, "generators", tuple(canon))

    def rendered(self) -> list[str]:
        return [str(g) for g in self.generators]


def module_product(M: ModuleGens, N: ModuleGens) -> ModuleGens:
    """All pairwise generator products, canonicalized and deduplicated."""
    if M.ring != N.ring or M.subring != N.subring:
        raise ValueError("ambient mismatch between the module factors")
    gens = [a * b for a in M.generators for b in N.generators]
    bound_vars = tuple(dict.fromkeys(M.bound_vars + N.bound_vars))
    return ModuleGens(M.ring, tuple(gens), M.subring, bound_vars)


# -- degree-bounded membership ---------------------------------------------------


@dataclass(frozen=True)
class Bounds:
    """Per-variable exponent caps plus optional total-degree caps over
    variable subsets.  Unlisted variables are capped at zero."""

    per_var: tuple[tuple[str, int], ...]
    totals: tuple[tuple[tuple[str, ...], int], ...] = ()

    def __post_init__(self):
        for name, cap in self.per_var:
            if cap < 0:
                raise ValueError(f"negative cap for {name!r}")
        for names, cap in self.totals:
            if cap < 0:
                raise ValueError(f"negative total cap for {names!r}")

    @classmethod
    def of(cls, per_var: Mapping[str, int],
           totals: Sequence[tuple[Sequence[str], int]] = ()) -> "Bounds":
        return cls(
            tuple(sorted(per_var.items())),
            tuple((tuple(names), cap) for names, cap in totals),
        )

    def cap(self, name: str) -> int:
        for n, c in self.per_var:
            if n == name:
                return c
        return 0

    def doubled(self) -> "Bounds":
        return Bounds(
            tuple((n, 2 * c) for n, c in self.per_var),
            tuple((names, 2 * c) for names, c in self.totals),
        )

    def payload(self) -> dict:
        return {n: c for n, c in self.per_var}


def _admissible_monomials(ring: PolyRing, bounds: Bounds,
                          subring: SubringSpec) -> list[tuple[int, ...]]:
    ranges = [range(bounds.cap(n) + 1) for n in ring.names]
    idx = {n: i for i, n in enumerate(ring.names)}
    out = []
    for exps in itertools.product(*ranges):
        if any(
            sum(exps[idx[n]] for n in names if n in idx) > cap
            for names, cap in bounds.totals
        ):
            continue
        if not subring.admits_monomial(ring, exps):
            continue
        out.append(exps)
    return out


@dataclass(frozen=True)
class MembershipCertificate:
    """Explicit multipliers expressing the target over the generators.

    The invariants -- exact expansion equality and per-monomial subring
    admissibility of every multiplier -- are what verify_certificate
    recomputes from scratch.
    """

    target: Poly
    generators: tuple[Poly, ...]
    multipliers: tuple[Poly, ...]
    bounds: Bounds
    subring: SubringSpec = UNRESTRICTED

    def payload(self) -> dict:
        return {
            "target": str(self.target),
            "generators": [str(g) for g in self.generators],
            "multipliers": [str(m) for m in self.multipliers],
            "bound": self.bounds.payload(),
            "subring": self.subring.payload(),
        }

    @classmethod
    def from_payload(cls, data: Mapping) -> "MembershipCertificate":
        texts = [data["target"], *data["generators"], *data["multipliers"]]
        names = sorted({m for t in texts for m in re.findall(r"[a-z]+", t)})
        ring = PolyRing(tuple(names))
        sub = data.get("subring") or {}
        spec = UNRESTRICTED
        if sub.get("variable") is not None:
            spec = SubringSpec(sub["variable"], NumericalSemigroup(tuple(sub["semigroup"])))
        return cls(
            target=ring.parse(data["target"]),
            generators=tuple(ring.parse(t) for t in data["generators"]),
            multipliers=tuple(ring.parse(t) for t in data["multipliers"]),
            bounds=Bounds.of({k: v for k, v in data.get("bound", {}).items()}),
            subring=spec,
        )


def membership(target: Poly, module: ModuleGens, bounds: Bounds) -> Optional[MembershipCertificate]:
    """Search for subring-admissible multipliers within the degree bounds.

    The multiplier monomials are enumerated, the identity "sum of unknown
    coefficients times shifted generators = target" becomes one exact
    integer linear system, and homcert.intlinalg.solve picks the solution.
    Returns None when no solution exists within this bound -- which is a
    bounded-search failure, not a proof of non-membership.
    """
    ring = module.ring
    if target.ring != ring:
        raise ValueError("target outside the ambient ring")
    monos = _admissible_monomials(ring, bounds, module.subring)

    columns: list[dict[tuple[int, ...], int]] = []
    col_ids: list[tuple[int, tuple[int, ...]]] = []
    row_keys = set(target._t)
    for gi, gen in enumerate(module.generators):
        terms = list(gen._t.items())
        for mono in monos:
            col = {}
            for e, c in terms:
                key = tuple(a + b for a, b in zip(e, mono))
                col[key] = col.get(key, 0) + c
            columns.append(col)
            col_ids.append((gi, mono))
            row_keys.update(col)

    rows = sorted(row_keys, key=_grlex_key)
    row_index = {k: i for i, k in enumerate(rows)}
    entries = {}
    for j, col in enumerate(columns):
        for k, v in col.items():
            if v:
                entries[(row_index[k], j)] = v
    A = IntMatrix(len(rows), len(columns), entries)
    b = [target._t.get(k, 0) for k in rows]

    x = solve(A, b)
    if x is None:
        return None
    mults = []
    for gi in range(len(module.generators)):
        terms = {
            mono: x[j]
            for j, (g, mono) in enumerate(col_ids)
            if g == gi and x[j]
        }
        mults.append(Poly(ring, terms))
    return MembershipCertificate(
        target=target,
        generators=module.generators,
        multipliers=tuple(mults),
        bounds=bounds,
        subring=module.subring,
    )


def verify_certificate(cert: MembershipCertificate) -> bool:
    """Recompute the certificate from scratch: exact expansion equality and
    subring admissibility of every multiplier monomial.  Shares no code
    path with the membership solver."""
    if len(cert.generators) != len(cert.multipliers):
        return False
    total = cert.target.ring.zero()
    for m, g in zip(cert.multipliers, cert.generators):
        total = total + m * g
    if total != cert.target:
        return False
    return all(in_subring(m, cert.subring) for m in cert.multipliers)
