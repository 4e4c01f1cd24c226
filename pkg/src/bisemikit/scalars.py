"""Left/right scalar carriers and the bisemifield built from them.

Two backends are shipped:

* ``RATIONAL`` -- exact :class:`fractions.Fraction` arithmetic.  The left
  carrier is the nonnegative rationals, the right carrier is its negated
  image.
* ``COMPLEX`` -- double precision complex numbers.  The right carrier is the
  conjugate image of the left one.

Right scalars multiply through the transported product
``r1 * r2 = I(P(r1) * P(r2))`` where ``P`` projects right to left and ``I``
is the involution back.  For negation this keeps the right carrier closed
(the biunit is ``(-1, 1)``); for conjugation it is ordinary multiplication.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Any, Optional

__all__ = [
    "Backend",
    "RationalBackend",
    "IntegerBackend",
    "ComplexBackend",
    "RATIONAL",
    "INTEGER",
    "COMPLEX",
    "BACKENDS",
    "get_backend",
    "backend_for",
    "LeftScalar",
    "RightScalar",
    "BiScalar",
    "involution_left_to_right",
    "project_right_to_left",
    "check_semifield_axioms",
    "close",
    "principal_sqrt",
    "ABS_TOL",
]

ABS_TOL = 1e-12

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def close(a: complex, b: complex, tol: float = ABS_TOL) -> bool:
    """Absolute comparison for unit-scale values, relative beyond that."""
    scale = max(1.0, abs(a), abs(b))
    return abs(a - b) <= tol * scale


class Backend:
    """Arithmetic of one scalar carrier pair.

    Subclasses provide the left-carrier semifield operations and the
    involution/projection pair linking it to the right carrier.
    """

    name = "abstract"
    exact = True

    zero: Any = 0
    one: Any = 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        """Multiplicative inverse, or ``None`` when ``a`` is not a unit."""
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def coerce(self, value):
        return value

    def to_right(self, a):
        """Involution ``I_{L->R}`` applied to a raw left value."""
        raise NotImplementedError

    def to_left(self, r):
        """Projection ``P_{R->L}`` applied to a raw right value."""
        raise NotImplementedError

    def in_left(self, a) -> bool:
        return True

    def in_right(self, r) -> bool:
        return True

    def right_add(self, r, s):
        return self.add(r, s)

    def right_mul(self, r, s):
        return self.to_right(self.mul(self.to_left(r), self.to_left(s)))

    schedule: tuple = ()

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def sample(self, rng: random.Random, index: int = 0):
        """Draw a left-carrier element.

        Indices below ``len(schedule)`` walk the boundary schedule (zero,
        units, small primes); larger ones draw at random.
        """
        if index < len(self.schedule):
            return self.schedule[index]
        return self.random_element(rng)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name!r}>"


class RationalBackend(Backend):
    name = "rational"
    exact = True
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, complex):
            if value.imag != 0:
                raise ValueError(f"complex value {value!r} in rational backend")
            value = value.real
        if isinstance(value, str):
            return Fraction(value)
        return Fraction(value)

    def inv(self, a):
        if a == 0:
            return None
        return 1 / Fraction(a)

    def to_right(self, a):
        return -a

    def to_left(self, r):
        return -r

    def in_left(self, a) -> bool:
        return a >= 0

    def in_right(self, r) -> bool:
        return r <= 0

    schedule = tuple(Fraction(x) for x in (0, 1) + SMALL_PRIMES)

    def random_element(self, rng):
        return Fraction(rng.randint(0, 60), rng.randint(1, 12))


class IntegerBackend(RationalBackend):
    """Natural numbers: a semiring without inverses (used for bisemigroups)."""

    name = "integer"

    def coerce(self, value):
        value = Fraction(value)
        if value.denominator != 1:
            raise ValueError(f"non-integer value {value} in integer backend")
        return int(value)

    zero = 0
    one = 1

    def inv(self, a):
        return a if a == 1 else None

    schedule = (0, 1) + SMALL_PRIMES

    def random_element(self, rng):
        return rng.randint(0, 50)


class ComplexBackend(Backend):
    name = "complex"
    exact = False
    zero = 0j
    one = 1 + 0j

    def __init__(self, tol: float = ABS_TOL):
        self.tol = tol

    def coerce(self, value):
        if isinstance(value, str):
            return complex(Fraction(value))
        return complex(value)

    def inv(self, a):
        if a == 0:
            return None
        return 1 / a

    def eq(self, a, b) -> bool:
        return close(a, b, self.tol)

    def is_zero(self, a) -> bool:
        return a == 0

    def to_right(self, a):
        return complex(a).conjugate()

    def to_left(self, r):
        return complex(r).conjugate()

    def right_mul(self, r, s):
        # conjugation is a ring automorphism
        return r * s

    schedule = (0j, 1 + 0j, -1 + 0j, 1j, -1j) + tuple(complex(p) for p in SMALL_PRIMES)

    def random_element(self, rng):
        return complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))


RATIONAL = RationalBackend()
INTEGER = IntegerBackend()
COMPLEX = ComplexBackend()

BACKENDS = {b.name: b for b in (RATIONAL, INTEGER, COMPLEX)}


def get_backend(name) -> Backend:
    if isinstance(name, Backend):
        return name
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; expected one of {sorted(BACKENDS)}") from None


def backend_for(value) -> Backend:
    """Pick the backend a raw value belongs to (complex or rational)."""
    if isinstance(value, complex):
        return COMPLEX
    if isinstance(value, (int, Fraction)):
        return RATIONAL
    if isinstance(value, float):
        return COMPLEX
    if isinstance(value, Number):
        return COMPLEX
    raise TypeError(f"no scalar backend for {type(value).__name__}")


@dataclass(frozen=True)
class LeftScalar:
    value: Any
    backend: Backend = RATIONAL

    def __post_init__(self):
        v = self.backend.coerce(self.value)
        if not self.backend.in_left(v):
            raise ValueError(f"{v} is outside the left carrier of the {self.backend.name} backend")
        object.__setattr__(self, "value", v)

    def __add__(self, other: LeftScalar) -> LeftScalar:
        return LeftScalar(self.backend.add(self.value, other.value), self.backend)

    def __mul__(self, other: LeftScalar) -> LeftScalar:
        return LeftScalar(self.backend.mul(self.value, other.value), self.backend)


@dataclass(frozen=True)
class RightScalar:
    value: Any
    backend: Backend = RATIONAL

    def __post_init__(self):
        v = self.backend.coerce(self.value)
        if not self.backend.in_right(v):
            raise ValueError(f"{v} is outside the right carrier of the {self.backend.name} backend")
        object.__setattr__(self, "value", v)

    def __add__(self, other: RightScalar) -> RightScalar:
        return RightScalar(self.backend.right_add(self.value, other.value), self.backend)

    def __mul__(self, other: RightScalar) -> RightScalar:
        return RightScalar(self.backend.right_mul(self.value, other.value), self.backend)


@dataclass(frozen=True)
class BiScalar:
    """A (right, left) scalar pair; multiplication is componentwise."""

    right: RightScalar
    left: LeftScalar

    @classmethod
    def of(cls, right, left, backend: Backend = RATIONAL) -> BiScalar:
        return cls(RightScalar(right, backend), LeftScalar(left, backend))

    @classmethod
    def biunit(cls, backend: Backend = RATIONAL) -> BiScalar:
        return cls(RightScalar(backend.to_right(backend.one), backend), LeftScalar(backend.one, backend))

    @property
    def backend(self) -> Backend:
        return self.left.backend

    def __mul__(self, other: BiScalar) -> BiScalar:
        return BiScalar(self.right * other.right, self.left * other.left)

    def is_zero(self) -> bool:
        b = self.backend
        return b.is_zero(self.right.value) or b.is_zero(self.left.value)

    def inverse(self) -> Optional[BiScalar]:
        """Componentwise inverse, ``None`` if either component is zero."""
        b = self.backend
        left_inv = b.inv(self.left.value)
        right_inv = b.inv(b.to_left(self.right.value))
        if left_inv is None or right_inv is None:
            return None
        return BiScalar(RightScalar(b.to_right(right_inv), b), LeftScalar(left_inv, b))

    def eq(self, other: BiScalar) -> bool:
        b = self.backend
        return b.eq(self.right.value, other.right.value) and b.eq(self.left.value, other.left.value)


def involution_left_to_right(a: LeftScalar) -> RightScalar:
    """``I_{L->R}``: negation on the rational backend, conjugation on complex."""
    return RightScalar(a.backend.to_right(a.value), a.backend)


def project_right_to_left(r: RightScalar) -> LeftScalar:
    """``P_{R->L}``, the inverse of :func:`involution_left_to_right`."""
    return LeftScalar(r.backend.to_left(r.value), r.backend)


def check_semifield_axioms(backend, sample_budget: int, seed: int = 0):
    """Sample element triples and evaluate every semifield law on them.

    Never raises on a violated law; the returned report carries the first
    witness for each failure.
    """
    if sample_budget < 1:
        raise ValueError("sample_budget must be >= 1")
    from .harness import StructureSpec, run_conformance

    return run_conformance(StructureSpec.for_kind("semifield", backend), sample_budget, seed)


def principal_sqrt(value, backend: Backend):
    """Square root in ``backend`` or ``None`` when it has none there."""
    if backend.exact:
        q = Fraction(value)
        if q < 0:
            return None
        num, den = _isqrt_exact(q.numerator), _isqrt_exact(q.denominator)
        if num is None or den is None:
            return None
        return Fraction(num, den)
    return cmath.sqrt(value)


def _isqrt_exact(n: int):
    r = math.isqrt(n)
    return r if r * r == n else None
