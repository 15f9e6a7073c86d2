"""Groupoid 1- and 2-cocycles with pluggable coefficient carriers.

Coefficients may be a finite abelian group (elements are integer tuples) or
one of the exact scalar carriers: the integers, the rationals, or the
rationals mod 1 (the finite stand-in for the circle).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .abelian import FinAbGroup, GroupHom, QmodZ
from .groupoid import FiniteGroupoid
from .intlinalg import CongruenceSolver
from .report import ValidationReport


class SearchSpaceTooLargeError(Exception):
    pass


class Coefficients:
    """Additive coefficient carrier for cochain values."""

    name: str

    def zero(self):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def encode(self, x):
        raise NotImplementedError

    def decode(self, raw):
        raise NotImplementedError

    def __repr__(self):
        return f"<coefficients {self.name}>"


class _IntegerCoefficients(Coefficients):
    name = "Z"

    def zero(self):
        return 0

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def encode(self, x):
        return int(x)

    def decode(self, raw):
        return int(raw)


class _RationalCoefficients(Coefficients):
    name = "Q"

    def zero(self):
        return Fraction(0)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def encode(self, x):
        return f"{x.numerator}/{x.denominator}"

    def decode(self, raw):
        return Fraction(raw)


class _CircleCoefficients(Coefficients):
    """The circle modelled exactly as rationals mod 1."""

    name = "QmodZ"

    def zero(self):
        return QmodZ.zero()

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def encode(self, x):
        return str(x)

    def decode(self, raw):
        return QmodZ.of(Fraction(raw))


@dataclass(frozen=True)
class GroupCoefficients(Coefficients):
    group: FinAbGroup

    @property
    def name(self):
        return str(self.group)

    def zero(self):
        return self.group.zero

    def add(self, x, y):
        return self.group.add(x, y)

    def neg(self, x):
        return self.group.neg(x)

    def encode(self, x):
        return list(x)

    def decode(self, raw):
        return self.group.reduce(tuple(raw))


INTEGERS = _IntegerCoefficients()
RATIONALS = _RationalCoefficients()
CIRCLE = _CircleCoefficients()


def coefficients_for(group: FinAbGroup) -> GroupCoefficients:
    return GroupCoefficients(group)


@dataclass(frozen=True)
class Cocycle1:
    """An additive 1-cocycle: values on arrows with
    phi(g1 g2) = phi(g1) + phi(g2) on composable pairs."""

    groupoid: FiniteGroupoid
    target: Coefficients
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.groupoid.n_arrows:
            raise ValueError("a value is required for every arrow")

    def __call__(self, arrow: int):
        return self.values[arrow]

    @staticmethod
    def zero(groupoid: FiniteGroupoid, target: Coefficients) -> "Cocycle1":
        return Cocycle1(groupoid, target, tuple(target.zero() for _ in groupoid.arrows))

    @staticmethod
    def from_map(groupoid: FiniteGroupoid, target: Coefficients, fn: Callable) -> "Cocycle1":
        return Cocycle1(groupoid, target, tuple(fn(a) for a in groupoid.arrows))

    def add(self, other: "Cocycle1") -> "Cocycle1":
        if other.groupoid != self.groupoid:
            raise ValueError("cocycles live on different groupoids")
        t = self.target
        return Cocycle1(self.groupoid, t,
                        tuple(t.add(x, y) for x, y in zip(self.values, other.values)))

    def neg(self) -> "Cocycle1":
        t = self.target
        return Cocycle1(self.groupoid, t, tuple(t.neg(x) for x in self.values))


def is_cocycle1(phi: Cocycle1) -> ValidationReport:
    """Empty report iff the additivity identity holds on every composable
    pair; each failure carries the offending pair."""
    report = ValidationReport(subject="1-cocycle")
    g, t = phi.groupoid, phi.target
    for (a, b), c in g.compose.items():
        if phi.values[c] != t.add(phi.values[a], phi.values[b]):
            report.add("cocycle-identity", (a, b),
                       f"phi({c}) != phi({a}) + phi({b})")
    return report


def pushforward(hom: GroupHom, phi: Cocycle1) -> Cocycle1:
    """Compose a group-valued cocycle with a homomorphism of the target."""
    if not isinstance(phi.target, GroupCoefficients) or phi.target.group != hom.domain:
        raise ValueError("cocycle target must be the domain of the hom")
    new_target = GroupCoefficients(hom.codomain)
    return Cocycle1(phi.groupoid, new_target, tuple(hom(v) for v in phi.values))


def map_values(phi: Cocycle1, fn: Callable, new_target: Coefficients) -> Cocycle1:
    """Push a cocycle forward along an arbitrary additive map of carriers."""
    return Cocycle1(phi.groupoid, new_target, tuple(fn(v) for v in phi.values))


def unit_coboundary(groupoid: FiniteGroupoid, target: Coefficients, unit_values) -> Cocycle1:
    """The coboundary of a function on units: phi(g) = b(s(g)) - b(r(g))."""
    vals = tuple(target.sub(unit_values[groupoid.source[a]], unit_values[groupoid.range_[a]])
                 for a in groupoid.arrows)
    return Cocycle1(groupoid, target, vals)


@dataclass(frozen=True)
class Cocycle2:
    """An additive 2-cocycle: values on composable pairs satisfying
    s(g1,g2) + s(g1 g2, g3) = s(g2,g3) + s(g1, g2 g3)."""

    groupoid: FiniteGroupoid
    target: Coefficients
    values: dict  # (arrow, arrow) -> value, keys exactly the composable pairs

    def __post_init__(self):
        missing = set(self.groupoid.compose) - set(self.values)
        extra = set(self.values) - set(self.groupoid.compose)
        if missing or extra:
            raise ValueError(f"values must cover exactly the composable pairs "
                             f"(missing {len(missing)}, extra {len(extra)})")

    def __call__(self, a: int, b: int):
        return self.values[(a, b)]

    @staticmethod
    def zero(groupoid: FiniteGroupoid, target: Coefficients) -> "Cocycle2":
        return Cocycle2(groupoid, target,
                        {pair: target.zero() for pair in groupoid.compose})

    def map_values(self, fn: Callable, new_target: Coefficients) -> "Cocycle2":
        return Cocycle2(self.groupoid, new_target,
                        {k: fn(v) for k, v in self.values.items()})


def is_cocycle2(sigma: Cocycle2) -> ValidationReport:
    report = ValidationReport(subject="2-cocycle")
    g, t = sigma.groupoid, sigma.target
    for (a, b), ab in g.compose.items():
        for c in g.arrows_with_range.get(g.source[b], ()):
            bc = g.compose[(b, c)]
            lhs = t.add(sigma.values[(a, b)], sigma.values[(ab, c)])
            rhs = t.add(sigma.values[(b, c)], sigma.values[(a, bc)])
            if lhs != rhs:
                report.add("cocycle-identity", (a, b, c), "2-cocycle identity fails")
    return report


def is_normalized2(sigma: Cocycle2) -> ValidationReport:
    """Normalized: vanishes whenever either argument is a unit."""
    report = ValidationReport(subject="normalized 2-cocycle")
    g, t = sigma.groupoid, sigma.target
    for (a, b) in g.compose:
        if (g.is_unit(a) or g.is_unit(b)) and not t.is_zero(sigma.values[(a, b)]):
            report.add("normalization", (a, b), "nonzero on a unit argument")
    return report


# ---------------------------------------------------------------------------
# Enumeration of the full cocycle group for sweep checks


def _component_solutions(groupoid: FiniteGroupoid, modulus: int,
                         limit: int) -> list[tuple[int, ...]]:
    """All functions arrows -> Z/modulus satisfying the additivity identity,
    found as the solution subgroup of the linear congruence system."""
    n = groupoid.n_arrows
    rows, moduli = [], []
    for (a, b), c in sorted(groupoid.compose.items()):
        row = [0] * n
        row[c] += 1
        row[a] -= 1
        row[b] -= 1
        rows.append(row)
        moduli.append(modulus)
    solver = CongruenceSolver(rows, moduli)
    gens = [tuple(x % modulus for x in g) for g in solver.homogeneous_generators()]
    zero = (0,) * n
    seen = {zero}
    frontier = [zero]
    while frontier:
        cur = frontier.pop()
        for gen in gens:
            nxt = tuple((x + y) % modulus for x, y in zip(cur, gen))
            if nxt not in seen:
                if len(seen) >= limit:
                    raise SearchSpaceTooLargeError(
                        f"more than {limit} cocycles for modulus {modulus}")
                seen.add(nxt)
                frontier.append(nxt)
    return sorted(seen)


def enumerate_cocycles(groupoid: FiniteGroupoid, group: FinAbGroup,
                       limit: int = 10**6) -> list[Cocycle1]:
    """Every group-valued 1-cocycle on the groupoid, in a deterministic
    order.  Raises SearchSpaceTooLargeError beyond `limit` cocycles."""
    per_component = []
    total = 1
    for d in group.invariant_factors:
        sols = _component_solutions(groupoid, d, limit)
        total *= len(sols)
        if total > limit:
            raise SearchSpaceTooLargeError(f"cocycle group larger than {limit}")
        per_component.append(sols)
    target = GroupCoefficients(group)
    if not per_component:
        return [Cocycle1.zero(groupoid, target)]
    out = []
    for combo in itertools.product(*per_component):
        values = tuple(tuple(comp[a] for comp in combo) for a in groupoid.arrows)
        out.append(Cocycle1(groupoid, target, values))
    return out
