"""Deliberately broken carriers used to prove the checkers catch faults."""

from math import gcd

from bisemikit.bisemigroup import Carrier
from bisemikit.scalars import Backend, IntegerBackend, RationalBackend


class ModularBackend(Backend):
    """Z/n with its own arithmetic; has zero divisors unless n is prime."""

    exact = True
    zero = 0
    one = 1

    def __init__(self, n=6):
        self.n = n
        self.name = f"z{n}"
        self.schedule = tuple(range(n))

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def inv(self, a):
        if gcd(a, self.n) != 1:
            return None
        return pow(a, -1, self.n)

    def to_right(self, a):
        return a

    def to_left(self, r):
        return r

    def random_element(self, rng):
        return rng.randrange(self.n)


class SkewProductBackend(RationalBackend):
    """Rationals with ``a * b`` replaced by ``a*b + a`` (not commutative)."""

    name = "skew-product"

    def mul(self, a, b):
        return a * b + a


class SkewSumBackend(RationalBackend):
    """Rationals with ``a + b`` replaced by ``a + 2b`` (not commutative)."""

    name = "skew-sum"

    def add(self, a, b):
        return a + 2 * b


class SkewSumIntegers(IntegerBackend):
    name = "skew-sum-integers"

    def add(self, a, b):
        return a + 2 * b


def clamp_add(cap=10):
    def add(a, b):
        return max(-cap, min(cap, a + b))

    return add


SATURATING = Carrier("saturating", clamp_add(10), 0)
SKEW_SUM = Carrier("skew-sum", lambda a, b: a + 2 * b, 0)

