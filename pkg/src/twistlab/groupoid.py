"""Finite groupoids as explicit integer tables.

Arrows are dense integers 0..n-1 with the units listed first (0..k-1).
Composition is a partial table; every axiom is decidable and `validate`
reports each violation with a concrete witness.  All values are immutable
after construction, so everything here is safe to share between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Optional, Sequence

from .abelian import FinAbGroup
from .report import ValidationReport


class NotInvariantError(Exception):
    """A unit subset is not invariant; carries a crossing arrow."""

    def __init__(self, arrow: int, message: str = ""):
        super().__init__(message or f"arrow {arrow} crosses the subset boundary")
        self.arrow = arrow


class FiniteGroupoid:
    """Immutable finite groupoid on dense integer arrow ids."""

    def __init__(self, n_units: int, source: Sequence[int], range_: Sequence[int],
                 inverse: Sequence[int], compose: dict[tuple[int, int], int]):
        self.n_units = int(n_units)
        self.source = tuple(int(x) for x in source)
        self.range_ = tuple(int(x) for x in range_)
        self.inverse = tuple(int(x) for x in inverse)
        self.compose = dict(compose)
        n = len(self.source)
        if not (len(self.range_) == len(self.inverse) == n):
            raise ValueError("source/range/inverse must have equal length")
        if not (0 <= self.n_units <= n):
            raise ValueError("unit count out of range")
        for label, seq in (("source", self.source), ("range", self.range_),
                           ("inverse", self.inverse)):
            for x in seq:
                if not 0 <= x < n:
                    raise ValueError(f"{label} entry {x} out of range")
        for (a, b), c in self.compose.items():
            if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
                raise ValueError(f"compose entry {(a, b, c)} out of range")

    @property
    def n_arrows(self) -> int:
        return len(self.source)

    @property
    def units(self) -> range:
        return range(self.n_units)

    @property
    def arrows(self) -> range:
        return range(self.n_arrows)

    def is_unit(self, arrow: int) -> bool:
        return arrow < self.n_units

    def compose_get(self, a: int, b: int) -> Optional[int]:
        return self.compose.get((a, b))

    @cached_property
    def composable_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.compose.keys()))

    @cached_property
    def compose_triples(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((a, b, c) for (a, b), c in sorted(self.compose.items()))

    @cached_property
    def arrows_with_range(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {u: [] for u in self.units}
        for g in self.arrows:
            out.setdefault(self.range_[g], []).append(g)
        return {u: tuple(v) for u, v in out.items()}

    @cached_property
    def arrows_with_source(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {u: [] for u in self.units}
        for g in self.arrows:
            out.setdefault(self.source[g], []).append(g)
        return {u: tuple(v) for u, v in out.items()}

    @cached_property
    def _key(self):
        return (self.n_units, self.source, self.range_, self.inverse,
                frozenset(self.compose.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroupoid) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"FiniteGroupoid(units={self.n_units}, arrows={self.n_arrows})"

    def replace(self, **fields) -> "FiniteGroupoid":
        """Copy with some tables swapped out (used to plant defects in tests)."""
        data = {
            "n_units": self.n_units,
            "source": self.source,
            "range_": self.range_,
            "inverse": self.inverse,
            "compose": self.compose,
        }
        data.update(fields)
        return FiniteGroupoid(**data)


def validate(g: FiniteGroupoid) -> ValidationReport:
    """Check every groupoid axiom; an empty report means g is a groupoid."""
    report = ValidationReport(subject="groupoid")

    # axiom 1: compose defined exactly on matching source/range
    for a in g.arrows:
        for b in g.arrows:
            defined = (a, b) in g.compose
            should = g.source[a] == g.range_[b]
            if defined and not should:
                report.add("composability", (a, b), "composite defined but s(a) != r(b)")
            elif should and not defined:
                report.add("composability", (a, b), "composable pair without composite")

    # axiom 2: associativity wherever both sides are defined
    for (a, b), ab in g.compose.items():
        for c in g.arrows:
            bc = g.compose.get((b, c))
            if bc is None:
                continue
            left = g.compose.get((ab, c))
            right = g.compose.get((a, bc))
            if left is not None and right is not None and left != right:
                report.add("associativity", (a, b, c),
                           f"(ab)c = {left} but a(bc) = {right}")

    # axiom 3: units are idempotent identities
    for u in g.units:
        if g.source[u] != u or g.range_[u] != u:
            report.add("unit-endpoints", (u,), "unit with source or range not itself")
    for a in g.arrows:
        u, v = g.range_[a], g.source[a]
        if u in g.units:
            got = g.compose.get((u, a))
            if got is not None and got != a:
                report.add("unit-identity", (u, a), "left unit does not act as identity")
        if v in g.units:
            got = g.compose.get((a, v))
            if got is not None and got != a:
                report.add("unit-identity", (a, v), "right unit does not act as identity")

    # axiom 4: a a^{-1} = r(a) and a^{-1} a = s(a)
    for a in g.arrows:
        inv = g.inverse[a]
        left = g.compose.get((a, inv))
        right = g.compose.get((inv, a))
        if left != g.range_[a]:
            report.add("inverse-composite", (a,),
                       f"a a^-1 = {left}, expected the range unit {g.range_[a]}")
        if right != g.source[a]:
            report.add("inverse-composite", (a,),
                       f"a^-1 a = {right}, expected the source unit {g.source[a]}")

    # axiom 5: inversion swaps endpoints and is an involution
    for a in g.arrows:
        inv = g.inverse[a]
        if g.range_[inv] != g.source[a] or g.source[inv] != g.range_[a]:
            report.add("inverse-endpoints", (a,), "inversion does not swap source and range")
        if g.inverse[inv] != a:
            report.add("inverse-endpoints", (a,), "inversion is not an involution")

    return report


def build_groupoid(unit_labels: Sequence[Hashable], arrow_labels: Sequence[Hashable],
                   source_fn: Callable, range_fn: Callable, invert_fn: Callable,
                   compose_fn: Callable) -> tuple[FiniteGroupoid, list, dict]:
    """Assemble a dense-index groupoid from labelled data.

    `arrow_labels` lists the non-unit arrows (units are added first
    automatically).  The structure maps act on labels; composable pairs are
    enumerated by matching source and range units, and `compose_fn` must be
    defined on all of them.  Returns (groupoid, labels, label_to_index).
    """
    labels = list(unit_labels)
    seen = set(labels)
    if len(seen) != len(labels):
        raise ValueError("duplicate unit labels")
    for a in arrow_labels:
        if a not in seen:
            labels.append(a)
            seen.add(a)
    index = {lab: i for i, lab in enumerate(labels)}
    n_units = len(list(unit_labels))

    def unit_index(lab) -> int:
        i = index[lab]
        if i >= n_units:
            raise ValueError(f"structure map produced non-unit label {lab!r}")
        return i

    source = [unit_index(source_fn(lab)) for lab in labels]
    range_ = [unit_index(range_fn(lab)) for lab in labels]
    inverse = [index[invert_fn(lab)] for lab in labels]

    by_source: dict[int, list[int]] = {}
    by_range: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        by_source.setdefault(source[i], []).append(i)
        by_range.setdefault(range_[i], []).append(i)
    compose: dict[tuple[int, int], int] = {}
    for u, lefts in by_source.items():
        rights = by_range.get(u, ())
        for a in lefts:
            la = labels[a]
            for b in rights:
                compose[(a, b)] = index[compose_fn(la, labels[b])]
    return FiniteGroupoid(n_units, source, range_, inverse, compose), labels, index


# ---------------------------------------------------------------------------
# Stock constructors


def group_groupoid(group: FinAbGroup) -> FiniteGroupoid:
    """A finite abelian group as a one-unit groupoid; arrow i is the i-th
    element in lexicographic order (so arrow 0 is the unit)."""
    elems = list(group.elements())
    index = {e: i for i, e in enumerate(elems)}
    compose = {(i, j): index[group.add(a, b)]
               for i, a in enumerate(elems) for j, b in enumerate(elems)}
    return FiniteGroupoid(
        n_units=1,
        source=[0] * len(elems),
        range_=[0] * len(elems),
        inverse=[index[group.neg(e)] for e in elems],
        compose=compose,
    )


def cyclic_groupoid(n: int) -> FiniteGroupoid:
    """Z/n as a one-unit groupoid; arrow k is the residue k."""
    return group_groupoid(FinAbGroup.cyclic(n))


def pair_groupoid(n: int) -> FiniteGroupoid:
    """The pair groupoid on n units: arrows (i, j), (i,j)(j,k) = (i,k)."""
    units = [(i, i) for i in range(n)]
    others = [(i, j) for i in range(n) for j in range(n) if i != j]
    g, _, _ = build_groupoid(
        units, others,
        source_fn=lambda p: (p[1], p[1]),
        range_fn=lambda p: (p[0], p[0]),
        invert_fn=lambda p: (p[1], p[0]),
        compose_fn=lambda p, q: (p[0], q[1]),
    )
    return g


def disjoint_union(g1: FiniteGroupoid, g2: FiniteGroupoid) -> FiniteGroupoid:
    """Disjoint union, reindexed so that all units come first."""
    labels_units = [(0, u) for u in g1.units] + [(1, u) for u in g2.units]
    labels_rest = [(0, a) for a in g1.arrows if not g1.is_unit(a)] + \
                  [(1, a) for a in g2.arrows if not g2.is_unit(a)]
    parts = (g1, g2)

    def src(lab):
        k, a = lab
        return (k, parts[k].source[a])

    def rng(lab):
        k, a = lab
        return (k, parts[k].range_[a])

    def inv(lab):
        k, a = lab
        return (k, parts[k].inverse[a])

    def comp(la, lb):
        (k, a), (m, b) = la, lb
        assert k == m
        return (k, parts[k].compose[(a, b)])

    g, _, _ = build_groupoid(labels_units, labels_rest, src, rng, inv, comp)
    return g


def product_with_group_labeled(g: FiniteGroupoid, group: FinAbGroup
                               ) -> tuple[FiniteGroupoid, list, dict]:
    """The product groupoid g x group with arrows (gamma, a), composition
    (g1, a1)(g2, a2) = (g1 g2, a1 + a2) and inverse (g^-1, -a); units are
    the pairs (u, 0).  Returns the groupoid with the (gamma, a) labels."""
    elems = list(group.elements())
    zero = group.zero
    units = [(u, zero) for u in g.units]
    rest = [(a, e) for a in g.arrows for e in elems if not (g.is_unit(a) and e == zero)]
    return build_groupoid(
        units, rest,
        source_fn=lambda p: (g.source[p[0]], zero),
        range_fn=lambda p: (g.range_[p[0]], zero),
        invert_fn=lambda p: (g.inverse[p[0]], group.neg(p[1])),
        compose_fn=lambda p, q: (g.compose[(p[0], q[0])], group.add(p[1], q[1])),
    )


def product_with_group(g: FiniteGroupoid, group: FinAbGroup) -> FiniteGroupoid:
    return product_with_group_labeled(g, group)[0]


# ---------------------------------------------------------------------------
# Unit subsets and reductions


@dataclass(frozen=True)
class UnitSubset:
    """A set of units of a groupoid; invariance is always computed."""

    owner: FiniteGroupoid
    members: frozenset[int]

    def __post_init__(self):
        for u in self.members:
            if not (0 <= u < self.owner.n_units):
                raise ValueError(f"{u} is not a unit")

    def invariance_witness(self) -> Optional[int]:
        """An arrow joining the subset to its complement, or None."""
        for a in self.owner.arrows:
            if (self.owner.source[a] in self.members) != (self.owner.range_[a] in self.members):
                return a
        return None

    @property
    def is_invariant(self) -> bool:
        return self.invariance_witness() is None


@dataclass
class Reduction:
    """A reduced groupoid together with its arrow correspondence."""

    groupoid: FiniteGroupoid
    parent_arrows: tuple[int, ...]       # new arrow -> old arrow
    from_parent: dict[int, int]          # old arrow -> new arrow


def reduce_to_units(g: FiniteGroupoid, subset: UnitSubset) -> Reduction:
    """Restrict to an invariant unit subset: the subgroupoid of arrows with
    source and range in the subset.  Raises NotInvariantError (with the
    crossing arrow) if the subset is not invariant."""
    if subset.owner is not g and subset.owner != g:
        raise ValueError("subset belongs to a different groupoid")
    witness = subset.invariance_witness()
    if witness is not None:
        raise NotInvariantError(witness)
    keep = [a for a in g.arrows
            if g.source[a] in subset.members and g.range_[a] in subset.members]
    keep_units = [a for a in keep if g.is_unit(a)]
    keep_rest = [a for a in keep if not g.is_unit(a)]
    new_order = keep_units + keep_rest
    from_parent = {old: new for new, old in enumerate(new_order)}
    reduced = FiniteGroupoid(
        n_units=len(keep_units),
        source=[from_parent[g.source[a]] for a in new_order],
        range_=[from_parent[g.range_[a]] for a in new_order],
        inverse=[from_parent[g.inverse[a]] for a in new_order],
        compose={(from_parent[a], from_parent[b]): from_parent[c]
                 for (a, b), c in g.compose.items()
                 if a in from_parent and b in from_parent},
    )
    return Reduction(reduced, tuple(new_order), from_parent)
