"""Bielements, integer-weighted formal sums and the cross binary operation.

A :class:`Bielement` pairs a right element with a left element drawn from
an additive :class:`Carrier`.  Combining two bielements with the cross
operation adds componentwise; *expanding* the combination develops
``(r1 + r2) x (l1 + l2)`` into two diagonal and two cross terms, kept as a
:class:`BiformalSum`.  Formal sums play the role of tensor cosets: the
bilinearity rewrite is the expansion itself, no quotient is enumerated.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional

from .serialize import decode_scalar, to_jsonable

__all__ = [
    "Tag",
    "Carrier",
    "INTEGERS",
    "RATIONALS",
    "vector_carrier",
    "Bielement",
    "BiformalSum",
    "CarrierMismatch",
    "SimplicityWarning",
    "cross_combine",
    "expand_terms",
    "cross_expand",
    "cross_product_sums",
    "is_simple_pair",
    "check_cross_abelian",
    "check_cross_associative",
    "check_cross_distributive",
    "is_bimonoid_identity",
]


class Tag(str, Enum):
    DIAGONAL = "D"
    CROSS = "C"


_TAG_ORDER = {Tag.DIAGONAL: 0, Tag.CROSS: 1}


class CarrierMismatch(ValueError):
    pass


class SimplicityWarning(UserWarning):
    """An element occurs more than once in a cross expansion."""


def _identity_key(x):
    return x


@dataclass(frozen=True, eq=False)
class Carrier:
    """An additive semigroup carrier shared by both sides of a bielement.

    ``key`` must return a totally ordered surrogate for canonical sorting.
    Carriers compare by name.
    """

    name: str
    add: Callable[[Any, Any], Any]
    zero: Any = None
    key: Callable[[Any], Any] = _identity_key

    def __eq__(self, other):
        return isinstance(other, Carrier) and other.name == self.name

    def __hash__(self):
        return hash(self.name)


def _add(a, b):
    return a + b


INTEGERS = Carrier("integers", _add, 0)
RATIONALS = Carrier("rationals", _add, Fraction(0))


def _complex_key(z):
    return (z.real, z.imag) if isinstance(z, complex) else (z, 0)


COMPLEXES = Carrier("complexes", _add, 0j, _complex_key)


def vector_carrier(n: int, zero=0, name: Optional[str] = None) -> Carrier:
    """Componentwise addition on length-``n`` tuples."""

    def add(u, v):
        if len(u) != n or len(v) != n:
            raise CarrierMismatch(f"expected {n}-tuples")
        return tuple(a + b for a, b in zip(u, v))

    def key(u):
        return tuple(_complex_key(x) for x in u)

    return Carrier(name or f"vectors{n}", add, (zero,) * n, key)


@dataclass(frozen=True)
class Bielement:
    right: Any
    left: Any
    tag: Tag = Tag.DIAGONAL
    carrier: Carrier = field(default=INTEGERS, compare=False)

    def key(self):
        return (self.carrier.key(self.right), self.carrier.key(self.left))

    def untagged(self) -> Bielement:
        return Bielement(self.right, self.left, Tag.DIAGONAL, self.carrier)

    def with_tag(self, tag: Tag) -> Bielement:
        return Bielement(self.right, self.left, tag, self.carrier)

    def __repr__(self):
        return f"{self.tag.value}:({self.right})x({self.left})"


def _check_carriers(*bs: Bielement) -> Carrier:
    c = bs[0].carrier
    for b in bs[1:]:
        if b.carrier != c:
            raise CarrierMismatch(f"carrier {b.carrier.name!r} does not match {c.name!r}")
    return c


def cross_combine(b1: Bielement, b2: Bielement) -> Bielement:
    """``(r1 x l1) cross (r2 x l2) -> (r1 + r2) x (l1 + l2)``."""
    c = _check_carriers(b1, b2)
    return Bielement(c.add(b1.right, b2.right), c.add(b1.left, b2.left), Tag.DIAGONAL, c)


def expand_terms(b1: Bielement, b2: Bielement) -> list:
    """The four raw ``(coeff, bielement)`` terms of a cross expansion.

    Order: the two diagonal terms, then the cross terms ``r1 x l2`` and
    ``r2 x l1``.
    """
    c = _check_carriers(b1, b2)
    return [
        (1, Bielement(b1.right, b1.left, Tag.DIAGONAL, c)),
        (1, Bielement(b2.right, b2.left, Tag.DIAGONAL, c)),
        (1, Bielement(b1.right, b2.left, Tag.CROSS, c)),
        (1, Bielement(b2.right, b1.left, Tag.CROSS, c)),
    ]


def is_simple_pair(b1: Bielement, b2: Bielement) -> bool:
    """True when no right or left element is repeated across the pair."""
    return b1.right != b2.right and b1.left != b2.left


def cross_expand(b1: Bielement, b2: Bielement, check_simple: bool = False) -> BiformalSum:
    if check_simple and not is_simple_pair(b1, b2):
        warnings.warn(f"non-simple inputs {b1!r}, {b2!r}", SimplicityWarning, stacklevel=2)
    return BiformalSum(expand_terms(b1, b2))


class BiformalSum:
    """A finite integer combination of tagged bielements.

    Stored terms are canonical: sorted by ``(right, left, tag)``, like
    terms (same pair and same tag) merged, zero coefficients dropped.
    Equality ignores tags -- it compares the fully merged, tag-free form --
    while ``terms`` keeps the diagonal/cross provenance.
    """

    __slots__ = ("terms", "carrier")

    def __init__(self, terms: Iterable = (), carrier: Optional[Carrier] = None):
        merged: dict = {}
        order: dict = {}
        for coeff, b in terms:
            if not isinstance(coeff, int):
                raise TypeError("formal sum coefficients are integers")
            if carrier is None:
                carrier = b.carrier
            elif b.carrier != carrier:
                raise CarrierMismatch(f"carrier {b.carrier.name!r} does not match {carrier.name!r}")
            k = (b.key(), _TAG_ORDER[b.tag])
            merged[k] = merged.get(k, 0) + coeff
            order.setdefault(k, b)
        self.carrier = carrier
        self.terms = tuple((merged[k], order[k]) for k in sorted(merged) if merged[k] != 0)

    @classmethod
    def of(cls, *bielements: Bielement) -> BiformalSum:
        return cls((1, b) for b in bielements)

    def untagged(self) -> BiformalSum:
        return BiformalSum(((c, b.untagged()) for c, b in self.terms), self.carrier)

    def tag_counts(self) -> dict:
        counts = {Tag.DIAGONAL: 0, Tag.CROSS: 0}
        for c, b in self.terms:
            counts[b.tag] += c
        return counts

    def __add__(self, other: BiformalSum) -> BiformalSum:
        return BiformalSum(self.terms + other.terms, self.carrier or other.carrier)

    def scale(self, n: int) -> BiformalSum:
        return BiformalSum(((n * c, b) for c, b in self.terms), self.carrier)

    def __eq__(self, other):
        if not isinstance(other, BiformalSum):
            return NotImplemented
        return self.untagged().terms == other.untagged().terms

    def __hash__(self):
        return hash(self.untagged().terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __repr__(self):
        body = " + ".join(f"{c}*{b!r}" for c, b in self.terms) or "0"
        return f"BiformalSum({body})"

    def to_json(self) -> list:
        return [
            {"coeff": c, "right": to_jsonable(b.right), "left": to_jsonable(b.left), "tag": b.tag.value}
            for c, b in self.terms
        ]

    @classmethod
    def from_json(cls, items: list, carrier: Carrier = INTEGERS) -> BiformalSum:
        def dec(v):
            if isinstance(v, list):
                return tuple(dec(x) for x in v)
            x = decode_scalar(v)
            if isinstance(x, Fraction) and x.denominator == 1 and carrier == INTEGERS:
                return int(x)
            return x

        return cls(
            (int(it["coeff"]), Bielement(dec(it["right"]), dec(it["left"]), Tag(it["tag"]), carrier)) for it in items
        )


def cross_product_sums(s: BiformalSum, t: BiformalSum) -> BiformalSum:
    """Bilinear extension of the cross expansion to formal sums."""
    terms = []
    for cs, bs in s.terms:
        for ct, bt in t.terms:
            for c, b in expand_terms(bs, bt):
                terms.append((cs * ct * c, b))
    return BiformalSum(terms, s.carrier or t.carrier)


def _same(x: Bielement, y: Bielement, eq=None) -> bool:
    if eq is None:
        return x == y
    return x.tag == y.tag and eq(x.right, y.right) and eq(x.left, y.left)


def check_cross_abelian(b1: Bielement, b2: Bielement, eq=None) -> bool:
    """Commutativity of the cross operation.

    Both the combined bielement and its canonical expansion must agree; the
    first catches a non-commutative carrier addition, the second the
    diagonal/cross bookkeeping.  ``eq`` overrides component equality
    (floating carriers).
    """
    combined = _same(cross_combine(b1, b2), cross_combine(b2, b1), eq)
    expanded = cross_expand(b1, b2) == cross_expand(b2, b1)
    return combined and expanded


def check_cross_associative(b1: Bielement, b2: Bielement, b3: Bielement, eq=None) -> bool:
    lhs = cross_combine(cross_combine(b1, b2), b3)
    rhs = cross_combine(b1, cross_combine(b2, b3))
    return _same(lhs, rhs, eq)


def check_cross_distributive(b1: Bielement, b2: Bielement, b3: Bielement) -> bool:
    """Compare ``b1 x (b2 + b3)`` with ``(b1 x b2) + (b1 x b3)`` as formal sums."""
    _check_carriers(b1, b2, b3)
    lhs = cross_product_sums(BiformalSum.of(b1), BiformalSum.of(b2, b3))
    rhs = cross_expand(b1, b2) + cross_expand(b1, b3)
    return lhs == rhs


def is_bimonoid_identity(e: Bielement, samples: Iterable[Bielement]) -> bool:
    """``e`` is a two-sided identity for the cross combination on ``samples``.

    The identity of both carriers is taken to be one shared value (the
    carrier's ``zero``), so ``e`` must be ``zero x zero``.
    """
    c = e.carrier
    if e.right != c.zero or e.left != c.zero:
        return False
    return all(cross_combine(e, b) == b.untagged() and cross_combine(b, e) == b.untagged() for b in samples)
