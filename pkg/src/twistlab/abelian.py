"""Finite abelian groups in invariant-factor form, homomorphisms, short
exact sequences, and Pontryagin duality with an exact Q/Z pairing.

Elements of a group with invariant factors (d1, ..., dk) are integer tuples
reduced componentwise, 0 <= x_i < d_i.  The circle group is modelled as the
rationals mod 1 (class:`QmodZ`) so that all character values stay exact;
complex phases are produced only on demand.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .intlinalg import smith_normal_form, diagonal_of
from .report import ValidationReport

Element = tuple[int, ...]


@dataclass(frozen=True)
class QmodZ:
    """A rational mod 1, stored as its canonical representative in [0, 1)."""

    value: Fraction

    def __post_init__(self):
        if not (0 <= self.value < 1):
            raise ValueError(f"representative {self.value} not in [0,1)")

    @staticmethod
    def of(x) -> "QmodZ":
        return QmodZ(Fraction(x) % 1)

    @staticmethod
    def zero() -> "QmodZ":
        return QmodZ(Fraction(0))

    def __add__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ((self.value + other.value) % 1)

    def __sub__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ((self.value - other.value) % 1)

    def __neg__(self) -> "QmodZ":
        return QmodZ((-self.value) % 1)

    def is_zero(self) -> bool:
        return self.value == 0

    def lift(self) -> Fraction:
        """The canonical rational lift in [0, 1)."""
        return self.value

    def phase(self) -> complex:
        """exp(2 pi i q), computed from the reduced rational angle."""
        return cmath.exp(2j * math.pi * float(self.value))

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


def phase_of(q: Fraction | QmodZ) -> complex:
    if isinstance(q, QmodZ):
        return q.phase()
    return cmath.exp(2j * math.pi * float(Fraction(q) % 1))


@dataclass(frozen=True)
class FinAbGroup:
    """A finite abelian group presented by its invariant factors
    d1 | d2 | ... | dk (factors equal to 1 are dropped)."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors",
                           tuple(int(d) for d in self.invariant_factors if int(d) != 1))
        for d in self.invariant_factors:
            if d < 1:
                raise ValueError(f"invariant factor {d} must be >= 1")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError(
                    f"invariant factors {self.invariant_factors} violate the divisibility chain")

    @staticmethod
    def cyclic(n: int) -> "FinAbGroup":
        return FinAbGroup((n,)) if n > 1 else FinAbGroup(())

    @staticmethod
    def trivial() -> "FinAbGroup":
        return FinAbGroup(())

    @staticmethod
    def from_orders(orders: Sequence[int]) -> "FinAbGroup":
        """Invariant-factor form of a direct sum of cyclic groups of the
        given orders (computed by Smith reduction of the diagonal)."""
        orders = [int(n) for n in orders]
        if any(n < 1 for n in orders):
            raise ValueError("cyclic orders must be positive")
        diag = [[orders[i] if i == j else 0 for j in range(len(orders))]
                for i in range(len(orders))]
        _, s, _ = smith_normal_form(diag)
        return FinAbGroup(tuple(d for d in diagonal_of(s) if d > 1))

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def reduce(self, vec: Sequence[int]) -> Element:
        if len(vec) != self.rank:
            raise ValueError(f"element length {len(vec)} != rank {self.rank}")
        return tuple(int(x) % d for x, d in zip(vec, self.invariant_factors))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x: Element) -> Element:
        return tuple((-a) % d for a, d in zip(x, self.invariant_factors))

    def sub(self, x: Element, y: Element) -> Element:
        return tuple((a - b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def scale(self, k: int, x: Element) -> Element:
        return tuple((k * a) % d for a, d in zip(x, self.invariant_factors))

    def contains(self, x) -> bool:
        return (isinstance(x, tuple) and len(x) == self.rank
                and all(0 <= a < d for a, d in zip(x, self.invariant_factors)))

    def elements(self) -> Iterator[Element]:
        """All elements in lexicographic order (zero first)."""
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between finite abelian groups, given by an integer
    matrix (codomain.rank x domain.rank) acting on element columns."""

    domain: FinAbGroup
    codomain: FinAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        if len(rows) != self.codomain.rank:
            raise ValueError("matrix row count must equal codomain rank")
        for row in rows:
            if len(row) != self.domain.rank:
                raise ValueError("matrix column count must equal domain rank")
        # well-definedness: d_j * (column j) must vanish in the codomain
        for j, d in enumerate(self.domain.invariant_factors):
            for r, big in enumerate(self.codomain.invariant_factors):
                if (d * rows[r][j]) % big:
                    raise ValueError(
                        f"ill-defined hom: {d} * column {j} does not vanish mod {big}")

    @staticmethod
    def of(domain: FinAbGroup, codomain: FinAbGroup, rows: Sequence[Sequence[int]]) -> "GroupHom":
        return GroupHom(domain, codomain, tuple(tuple(r) for r in rows))

    @staticmethod
    def identity(group: FinAbGroup) -> "GroupHom":
        n = group.rank
        return GroupHom(group, group, tuple(tuple(1 if i == j else 0 for j in range(n))
                                            for i in range(n)))

    @staticmethod
    def zero(domain: FinAbGroup, codomain: FinAbGroup) -> "GroupHom":
        return GroupHom(domain, codomain,
                        tuple((0,) * domain.rank for _ in range(codomain.rank)))

    @staticmethod
    def cyclic(domain: FinAbGroup, codomain: FinAbGroup, k: int) -> "GroupHom":
        """x -> k*x between two cyclic (rank <= 1) groups."""
        if domain.rank > 1 or codomain.rank > 1:
            raise ValueError("cyclic() expects rank <= 1 groups")
        rows = tuple((k,) for _ in range(codomain.rank))
        return GroupHom(domain, codomain, rows if domain.rank else tuple(() for _ in range(codomain.rank)))

    def __call__(self, x: Element) -> Element:
        if len(x) != self.domain.rank:
            raise ValueError("element has wrong rank")
        return self.codomain.reduce(tuple(sum(row[j] * x[j] for j in range(len(x)))
                                          for row in self.matrix))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if other.codomain != self.domain:
            raise ValueError("homs are not composable")
        rows = tuple(tuple(sum(self.matrix[i][k] * other.matrix[k][j]
                               for k in range(self.domain.rank))
                           for j in range(other.domain.rank))
                     for i in range(self.codomain.rank))
        return GroupHom(other.domain, self.codomain, rows)

    def kernel_elements(self) -> list[Element]:
        return [x for x in self.domain.elements() if self(x) == self.codomain.zero]

    def image_elements(self) -> set[Element]:
        return {self(x) for x in self.domain.elements()}

    def is_injective(self) -> bool:
        return len(self.kernel_elements()) == 1

    def is_surjective(self) -> bool:
        return len(self.image_elements()) == self.codomain.order


@dataclass(frozen=True)
class ShortExactSeq:
    """0 -> A -i-> B -p-> C -> 0 of finite abelian groups."""

    A: FinAbGroup
    B: FinAbGroup
    C: FinAbGroup
    i: GroupHom
    p: GroupHom

    def __post_init__(self):
        if self.i.domain != self.A or self.i.codomain != self.B:
            raise ValueError("i must map A to B")
        if self.p.domain != self.B or self.p.codomain != self.C:
            raise ValueError("p must map B to C")


def check_exact(seq: ShortExactSeq) -> ValidationReport:
    """Certify injectivity of i, surjectivity of p and im(i) = ker(p),
    with witnesses for every failure."""
    report = ValidationReport(subject="short exact sequence")
    for a in seq.A.elements():
        if a != seq.A.zero and seq.i(a) == seq.B.zero:
            report.add("injectivity", (a,), "nonzero element of A maps to 0")
    image_p = seq.p.image_elements()
    for c in seq.C.elements():
        if c not in image_p:
            report.add("surjectivity", (c,), "element of C not hit by p")
    image_i = seq.i.image_elements()
    kernel_p = set(seq.p.kernel_elements())
    for b in image_i - kernel_p:
        report.add("exactness", (b,), "in im(i) but not in ker(p)")
    for b in kernel_p - image_i:
        report.add("exactness", (b,), "in ker(p) but not in im(i)")
    return report


def standard_seq(a: int, b: int, c: int) -> ShortExactSeq:
    """The sequence 0 -> Z/a -(x c)-> Z/b -(mod c)-> Z/c -> 0 with b = a*c."""
    if a * c != b:
        raise ValueError("need b == a*c")
    A, B, C = FinAbGroup.cyclic(a), FinAbGroup.cyclic(b), FinAbGroup.cyclic(c)
    i = GroupHom.cyclic(A, B, c)
    p = GroupHom.cyclic(B, C, 1)
    seq = ShortExactSeq(A, B, C, i, p)
    rep = check_exact(seq)
    assert rep.ok, rep
    return seq


# ---------------------------------------------------------------------------
# Pontryagin duality


def dual_group(group: FinAbGroup) -> FinAbGroup:
    """The character group; for a finite group it has the same invariant
    factors."""
    return FinAbGroup(group.invariant_factors)


def pairing(group: FinAbGroup, t: Element, g: Element) -> QmodZ:
    """<t, g> = sum_i t_i g_i / d_i mod 1."""
    total = Fraction(0)
    for ti, gi, d in zip(t, g, group.invariant_factors):
        total += Fraction(ti * gi, d)
    return QmodZ.of(total)


@dataclass(frozen=True)
class Character:
    """A character of a finite abelian group, stored by its exponent
    vector; evaluation lands in Q/Z."""

    group: FinAbGroup
    exponents: Element

    def __post_init__(self):
        object.__setattr__(self, "exponents", self.group.reduce(self.exponents))

    def __call__(self, g: Element) -> QmodZ:
        return pairing(self.group, self.exponents, g)

    def phase(self, g: Element) -> complex:
        return self(g).phase()

    def is_trivial(self) -> bool:
        return self.exponents == self.group.zero


def characters(group: FinAbGroup) -> list[Character]:
    return [Character(group, t) for t in group.elements()]


@dataclass
class AnnihilatorData:
    """The annihilator of i(A) inside the dual of B, realising the dual of
    C as a subgroup, together with a fixed transversal of the cosets."""

    seq: ShortExactSeq
    dual_b: FinAbGroup
    subgroup: tuple[Element, ...]
    transversal: tuple[Element, ...]
    _decomp: dict[Element, tuple[Element, Element]]

    def decompose(self, t: Element) -> tuple[Element, Element]:
        """Write t = rep - h with rep in the transversal and h in the
        subgroup; returns (rep, h)."""
        return self._decomp[t]

    def coset_rep(self, t: Element) -> Element:
        return self._decomp[t][0]


def annihilator(seq: ShortExactSeq) -> AnnihilatorData:
    """Characters of B vanishing on i(A): a subgroup of order |C|, plus a
    transversal of size |A| (greedy over lexicographic order, so the zero
    character represents the zero coset)."""
    report = check_exact(seq)
    if not report.ok:
        raise ValueError(f"sequence is not exact: {report}")
    dual_b = dual_group(seq.B)
    image_a = [seq.i(a) for a in seq.A.elements()]
    subgroup = tuple(t for t in dual_b.elements()
                     if all(pairing(seq.B, t, b).is_zero() for b in image_a))
    assert len(subgroup) == seq.C.order, "annihilator order must equal |C|"
    decomp: dict[Element, tuple[Element, Element]] = {}
    transversal: list[Element] = []
    for t in dual_b.elements():
        if t in decomp:
            continue
        transversal.append(t)
        for h in subgroup:
            # every u in the coset t - subgroup satisfies u = t - h
            u = dual_b.sub(t, h)
            decomp[u] = (t, dual_b.sub(t, u))
    assert len(transversal) == seq.A.order
    return AnnihilatorData(seq, dual_b, subgroup, tuple(transversal), decomp)


@lru_cache(maxsize=None)
def _quotient_generator_lifts(seq: ShortExactSeq) -> tuple[Element, ...]:
    """For each generator e_j of C, a fixed b with p(b) = e_j."""
    lifts = []
    for j in range(seq.C.rank):
        e = tuple(1 if k == j else 0 for k in range(seq.C.rank))
        found = None
        for b in seq.B.elements():
            if seq.p(b) == e:
                found = b
                break
        assert found is not None, "p must be surjective"
        lifts.append(found)
    return tuple(lifts)


def quotient_character(seq: ShortExactSeq, h: Element) -> Character:
    """Regard a character of B that annihilates i(A) as a character of C."""
    exps = []
    for j, d in enumerate(seq.C.invariant_factors):
        b = _quotient_generator_lifts(seq)[j]
        q = pairing(seq.B, h, b).value * d
        if q.denominator != 1:
            raise ValueError("character does not annihilate ker(p)")
        exps.append(int(q) % d)
    return Character(seq.C, tuple(exps))


def pullback_character(seq: ShortExactSeq, t: Character) -> Element:
    """The character t o p of B, as an exponent vector over B's factors."""
    if t.group != seq.C:
        raise ValueError("character must live on C")
    exps = []
    for j, d in enumerate(seq.B.invariant_factors):
        e = tuple(1 if k == j else 0 for k in range(seq.B.rank))
        q = t(seq.p(e)).value * d
        assert q.denominator == 1
        exps.append(int(q) % d)
    return tuple(exps)
