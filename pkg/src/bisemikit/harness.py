"""Declarative law tables and a seeded conformance runner.

A :class:`StructureSpec` names a structure kind, a scalar backend and the
laws to evaluate.  :func:`run_conformance` draws elements from the backend
(boundary schedule first, then random values, every law with its own
deterministically seeded generator) and records per law whether it held
and, on failure, the first witness.

Laws quantify over both sides where the definition has a left and a right
version; the right side uses the backend's right-carrier operations on the
involution images of the drawn left values.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import bisemigroup as bsg
from .bisemigroup import Bielement, Carrier
from .hopf import symmetric_table
from .scalars import BiScalar, Backend, LeftScalar, RightScalar, get_backend
from .serialize import to_jsonable

__all__ = [
    "KINDS",
    "LAWS",
    "KIND_LAWS",
    "Law",
    "UnknownLaw",
    "UnknownKind",
    "StructureSpec",
    "LawOutcome",
    "ConformanceReport",
    "run_conformance",
]


class UnknownLaw(KeyError):
    pass


class UnknownKind(ValueError):
    pass


@dataclass(frozen=True)
class Law:
    name: str
    arity: int
    sort: str  # what the drawn elements are: scalar, bielement, biscalar, vector, algebra
    description: str
    check: Callable


# Element drawing


_VECTOR_DIM = 3
_ALGEBRA_TABLE = symmetric_table(3)


class _Draw:
    """Per-law element source.

    The first ``len(backend.schedule)`` samples read the schedule at
    staggered offsets so small tuples of boundary values get paired; later
    samples are random with an occasional schedule value mixed in.
    """

    def __init__(self, backend: Backend, rng: random.Random):
        self.backend = backend
        self.rng = rng
        self.sample_index = 0
        self.slot = 0

    def start(self, i: int):
        self.sample_index = i
        self.slot = 0

    def scalar(self):
        b = self.backend
        size = len(b.schedule)
        i, t = self.sample_index, self.slot
        self.slot += 1
        if size and i < size:
            return b.schedule[(i * (t + 1) + t) % size]
        if size and self.rng.random() < 0.15:
            return b.schedule[self.rng.randrange(size)]
        return b.random_element(self.rng)

    def vector(self, n: int = _VECTOR_DIM) -> tuple:
        return tuple(self.scalar() for _ in range(n))


def _carrier(backend: Backend) -> Carrier:
    key = bsg.COMPLEXES.key if not backend.exact else (lambda x: x)
    return Carrier(f"backend:{backend.name}", backend.add, backend.zero, key)


def _bielement(d: _Draw, carrier: Carrier) -> Bielement:
    b = d.backend
    right = b.to_right(d.scalar())
    return Bielement(right, d.scalar(), bsg.Tag.DIAGONAL, carrier)


# Sides: (add, mul, zero, one, inv, lift) with ``lift`` mapping a drawn left
# value into the side's carrier.


@dataclass(frozen=True)
class _Side:
    name: str
    add: Callable
    mul: Callable
    zero: object
    one: object
    inv: Callable
    lift: Callable


def _sides(b: Backend) -> tuple:
    def right_inv(r):
        x = b.inv(b.to_left(r))
        return None if x is None else b.to_right(x)

    left = _Side("left", b.add, b.mul, b.zero, b.one, b.inv, lambda x: x)
    right = _Side("right", b.right_add, b.right_mul, b.to_right(b.zero), b.to_right(b.one), right_inv, b.to_right)
    return left, right


def _on_both_sides(fn):
    """Evaluate a one-sided law on the left and right carriers.

    ``fn(backend, side, values)`` returns ``True`` or a witness dict.
    """

    def check(b: Backend, d: _Draw, arity: int):
        values = [d.scalar() for _ in range(arity)]
        for side in _sides(b):
            lifted = [side.lift(v) for v in values]
            ok = fn(b, side, lifted)
            if ok is not True:
                witness = {"side": side.name, "elements": lifted}
                if isinstance(ok, dict):
                    witness.update(ok)
                return witness
        return True

    return check


# One-sided semigroup ... semifield laws


@_on_both_sides
def _add_associative(b, s, v):
    x, y, z = v
    return b.eq(s.add(s.add(x, y), z), s.add(x, s.add(y, z)))


@_on_both_sides
def _add_identity(b, s, v):
    (x,) = v
    return b.eq(s.add(s.zero, x), x) and b.eq(s.add(x, s.zero), x)


@_on_both_sides
def _add_commutative(b, s, v):
    x, y = v
    return b.eq(s.add(x, y), s.add(y, x))


@_on_both_sides
def _mul_associative(b, s, v):
    x, y, z = v
    return b.eq(s.mul(s.mul(x, y), z), s.mul(x, s.mul(y, z)))


@_on_both_sides
def _left_distributive(b, s, v):
    x, y, z = v
    return b.eq(s.mul(x, s.add(y, z)), s.add(s.mul(x, y), s.mul(x, z)))


@_on_both_sides
def _right_distributive(b, s, v):
    x, y, z = v
    return b.eq(s.mul(s.add(x, y), z), s.add(s.mul(x, z), s.mul(y, z)))


@_on_both_sides
def _mul_commutative(b, s, v):
    x, y = v
    return b.eq(s.mul(x, y), s.mul(y, x))


@_on_both_sides
def _mul_identity(b, s, v):
    (x,) = v
    return b.eq(s.mul(s.one, x), x) and b.eq(s.mul(x, s.one), x)


@_on_both_sides
def _zero_divisor_free(b, s, v):
    x, y = v
    if b.eq(x, s.zero) or b.eq(y, s.zero):
        return True
    return not b.eq(s.mul(x, y), s.zero)


@_on_both_sides
def _mul_inverse(b, s, v):
    (x,) = v
    if b.eq(x, s.zero):
        return True
    xi = s.inv(x)
    if xi is None:
        return {"reason": "no inverse"}
    return b.eq(s.mul(x, xi), s.one)


# Bisemigroup laws


def _bi_elements(b: Backend, d: _Draw, arity: int) -> list:
    c = _carrier(b)
    return [_bielement(d, c) for _ in range(arity)]


def _bi_witness(elements) -> dict:
    return {"elements": [{"right": e.right, "left": e.left} for e in elements]}


def _bielement_law(fn):
    def check(b: Backend, d: _Draw, arity: int):
        elements = _bi_elements(b, d, arity)
        return True if fn(b, *elements) else _bi_witness(elements)

    return check


@_bielement_law
def _cross_associative(b, x, y, z):
    return bsg.check_cross_associative(x, y, z, eq=b.eq)


@_bielement_law
def _cross_abelian(b, x, y):
    return bsg.check_cross_abelian(x, y, eq=b.eq)


@_bielement_law
def _cross_distributive(b, x, y, z):
    return bsg.check_cross_distributive(x, y, z)


@_bielement_law
def _cross_expansion(b, x, y):
    terms = bsg.expand_terms(x, y)
    tags = [t.tag for _, t in terms]
    if tags.count(bsg.Tag.DIAGONAL) != 2 or tags.count(bsg.Tag.CROSS) != 2:
        return False
    (_, d1), (_, d2), (_, c1), (_, c2) = terms
    combined = bsg.cross_combine(x, y)
    if not (b.eq(b.add(d1.right, d2.right), combined.right) and b.eq(b.add(d1.left, d2.left), combined.left)):
        return False
    return (c1.right, c1.left, c2.right, c2.left) == (x.right, y.left, y.right, x.left)


@_bielement_law
def _bimonoid_identity(b, x):
    c = x.carrier
    e = Bielement(c.zero, c.zero, bsg.Tag.DIAGONAL, c)
    both = bsg.cross_combine(e, x), bsg.cross_combine(x, e)
    return all(b.eq(r.right, x.right) and b.eq(r.left, x.left) for r in both)


# Bisemifield laws on paired scalars


def _biscalar(b: Backend, d: _Draw) -> BiScalar:
    return BiScalar(RightScalar(b.to_right(d.scalar()), b), LeftScalar(d.scalar(), b))


def _biscalar_law(fn):
    def check(b: Backend, d: _Draw, arity: int):
        elements = [_biscalar(b, d) for _ in range(arity)]
        if fn(b, *elements):
            return True
        return {"elements": [{"right": p.right.value, "left": p.left.value} for p in elements]}

    return check


def _nonzero(p: BiScalar) -> bool:
    return not p.is_zero()


@_biscalar_law
def _biscalar_commutative(b, p, q):
    return (p * q).eq(q * p)


@_biscalar_law
def _biscalar_identity(b, p):
    one = BiScalar.biunit(b)
    return (one * p).eq(p) and (p * one).eq(p)


@_biscalar_law
def _zero_bidivisor_free(b, p, q):
    if not (_nonzero(p) and _nonzero(q)):
        return True
    return _nonzero(p * q)


@_biscalar_law
def _biunit_inverse(b, p):
    if not _nonzero(p):
        return True
    inv = p.inverse()
    return inv is not None and (p * inv).eq(BiScalar.biunit(b))


# Semimodule and bisemimodule laws; vectors are coordinate tuples acted on
# componentwise (left: r g, right: g r).


def _vadd(add, u, v):
    return tuple(add(a, c) for a, c in zip(u, v))


def _act(side: _Side, r, g):
    if side.name == "left":
        return tuple(side.mul(r, x) for x in g)
    return tuple(side.mul(x, r) for x in g)


def _veq(b, u, v):
    return all(b.eq(x, y) for x, y in zip(u, v))


def _module_law(fn, n_scalars, n_vectors):
    def check(b: Backend, d: _Draw, arity: int):
        scalars = [d.scalar() for _ in range(n_scalars)]
        vectors = [d.vector() for _ in range(n_vectors)]
        for side in _sides(b):
            rs = [side.lift(r) for r in scalars]
            gs = [tuple(side.lift(x) for x in g) for g in vectors]
            if not fn(b, side, rs, gs):
                return {"side": side.name, "scalars": rs, "vectors": gs}
        return True

    return check


def _action_distributes_vectors(b, s, rs, gs):
    (r,), (g, h) = rs, gs
    return _veq(b, _act(s, r, _vadd(s.add, g, h)), _vadd(s.add, _act(s, r, g), _act(s, r, h)))


def _action_distributes_scalars(b, s, rs, gs):
    (r, t), (g,) = rs, gs
    return _veq(b, _act(s, s.add(r, t), g), _vadd(s.add, _act(s, r, g), _act(s, t, g)))


def _action_compatible(b, s, rs, gs):
    (r, t), (g,) = rs, gs
    if s.name == "left":
        return _veq(b, _act(s, r, _act(s, t, g)), _act(s, s.mul(r, t), g))
    return _veq(b, _act(s, r, _act(s, t, g)), _act(s, s.mul(t, r), g))


def _action_unitary(b, s, rs, gs):
    (g,) = gs
    return _veq(b, _act(s, s.one, g), g)


def _biaction(b, r_R, r_L, g_R, g_L):
    left, right = _sides(b)
    return _act(right, r_R, g_R), _act(left, r_L, g_L)


def _draw_bivector(b, d):
    return tuple(b.to_right(x) for x in d.vector()), d.vector()


def _biaction_cross(b: Backend, d: _Draw, arity: int):
    r_R, r_L = b.to_right(d.scalar()), d.scalar()
    (gR1, gL1), (gR2, gL2) = _draw_bivector(b, d), _draw_bivector(b, d)
    left, right = _sides(b)
    lhs = _biaction(b, r_R, r_L, _vadd(right.add, gR1, gR2), _vadd(left.add, gL1, gL2))
    a1 = _biaction(b, r_R, r_L, gR1, gL1)
    a2 = _biaction(b, r_R, r_L, gR2, gL2)
    rhs = (_vadd(right.add, a1[0], a2[0]), _vadd(left.add, a1[1], a2[1]))
    if _veq(b, lhs[0], rhs[0]) and _veq(b, lhs[1], rhs[1]):
        return True
    return {"scalar": {"right": r_R, "left": r_L}, "vectors": [[gR1, gL1], [gR2, gL2]]}


def _biaction_sided(b: Backend, d: _Draw, arity: int):
    """Swapping the scalars between the two slots changes the result.

    The swap goes through the involution pair so each scalar stays in its
    own carrier; it is vacuous when the swap is the identity or a vector
    component vanishes.
    """
    r_R, r_L = b.to_right(d.scalar()), d.scalar()
    g_R, g_L = _draw_bivector(b, d)
    if b.eq(b.to_left(r_R), r_L):
        return True
    if any(b.is_zero(b.to_left(x)) for x in g_R) or any(b.is_zero(x) for x in g_L):
        return True
    straight = _biaction(b, r_R, r_L, g_R, g_L)
    swapped = _biaction(b, b.to_right(r_L), b.to_left(r_R), g_R, g_L)
    if _veq(b, straight[0], swapped[0]) or _veq(b, straight[1], swapped[1]):
        return {"scalar": {"right": r_R, "left": r_L}, "vector": [g_R, g_L]}
    return True


# Semialgebra and bisemialgebra laws on the group algebra of S_3 with
# coefficients in the backend.


def _alg_mul(side: _Side, x, y):
    n = len(_ALGEBRA_TABLE)
    out = [side.zero] * n
    for i in range(n):
        for j in range(n):
            k = _ALGEBRA_TABLE[i][j]
            out[k] = side.add(out[k], side.mul(x[i], y[j]))
    return tuple(out)


def _alg_unit(side: _Side, r):
    return (r,) + (side.zero,) * (len(_ALGEBRA_TABLE) - 1)


def _algebra_law(fn, n_scalars, n_elements):
    def check(b: Backend, d: _Draw, arity: int):
        n = len(_ALGEBRA_TABLE)
        scalars = [d.scalar() for _ in range(n_scalars)]
        elements = [d.vector(n) for _ in range(n_elements)]
        for side in _sides(b):
            rs = [side.lift(r) for r in scalars]
            xs = [tuple(side.lift(c) for c in x) for x in elements]
            if not fn(b, side, rs, xs):
                return {"side": side.name, "scalars": rs, "elements": xs}
        return True

    return check


def _algebra_associative(b, s, rs, xs):
    x, y, z = xs
    return _veq(b, _alg_mul(s, _alg_mul(s, x, y), z), _alg_mul(s, x, _alg_mul(s, y, z)))


def _algebra_scalar_compatible(b, s, rs, xs):
    (r,), (x, y) = rs, xs
    xy = _alg_mul(s, x, y)
    first = _act(s, r, xy)
    return _veq(b, first, _alg_mul(s, _act(s, r, x), y)) and _veq(b, first, _alg_mul(s, x, _act(s, r, y)))


def _unit_injective(b, s, rs, xs):
    r, t = rs
    same_image = _veq(b, _alg_unit(s, r), _alg_unit(s, t))
    if same_image != b.eq(r, t):
        return False
    # homomorphism: eta(r t) = eta(r) eta(t)
    return _veq(b, _alg_unit(s, s.mul(r, t)), _alg_mul(s, _alg_unit(s, r), _alg_unit(s, t)))


def _bialgebra_cross_bilinear(b: Backend, d: _Draw, arity: int):
    """The biscalar action commutes with the cross operation on algebra bielements."""
    n = len(_ALGEBRA_TABLE)
    r_R, r_L = b.to_right(d.scalar()), d.scalar()
    x = (tuple(b.to_right(c) for c in d.vector(n)), d.vector(n))
    y = (tuple(b.to_right(c) for c in d.vector(n)), d.vector(n))
    left, right = _sides(b)

    def cross(u, v):
        return _vadd(right.add, u[0], v[0]), _vadd(left.add, u[1], v[1])

    def act(u):
        return _act(right, r_R, u[0]), _act(left, r_L, u[1])

    lhs, rhs = act(cross(x, y)), cross(act(x), act(y))
    if _veq(b, lhs[0], rhs[0]) and _veq(b, lhs[1], rhs[1]):
        return True
    return {"scalar": {"right": r_R, "left": r_L}, "elements": [list(x), list(y)]}


def _law(name, arity, sort, description, check):
    return Law(name, arity, sort, description, check)


_REGISTRY = (
    _law("add-associative", 3, "scalar", "the semigroup operation is associative", _add_associative),
    _law("add-identity", 1, "scalar", "the monoid has a two-sided identity", _add_identity),
    _law("add-commutative", 2, "scalar", "addition is abelian", _add_commutative),
    _law("mul-associative", 3, "scalar", "multiplication is associative", _mul_associative),
    _law("left-distributive", 3, "scalar", "x(y + z) = xy + xz", _left_distributive),
    _law("right-distributive", 3, "scalar", "(x + y)z = xz + yz", _right_distributive),
    _law("mul-commutative", 2, "scalar", "multiplication is commutative", _mul_commutative),
    _law("mul-identity", 1, "scalar", "multiplication has an identity", _mul_identity),
    _law("zero-divisor-free", 2, "scalar", "no two nonzero elements multiply to zero", _zero_divisor_free),
    _law("mul-inverse", 1, "scalar", "every nonzero element is a unit", _mul_inverse),
    _law("cross-associative", 3, "bielement", "the cross operation is associative", _cross_associative),
    _law("cross-expansion", 2, "bielement", "a cross product expands into two diagonal and two cross terms", _cross_expansion),
    _law("bimonoid-identity", 1, "bielement", "zero x zero is a cross identity", _bimonoid_identity),
    _law("cross-abelian", 2, "bielement", "the cross operation is commutative", _cross_abelian),
    _law("cross-distributive", 3, "bielement", "cross expansion distributes over formal sums", _cross_distributive),
    _law("biscalar-commutative", 2, "biscalar", "paired multiplication is commutative", _biscalar_commutative),
    _law("biscalar-identity", 1, "biscalar", "the biunit is a paired identity", _biscalar_identity),
    _law("zero-bidivisor-free", 2, "biscalar", "no zero bidivisors", _zero_bidivisor_free),
    _law("biunit-inverse", 1, "biscalar", "every nonzero biscalar is a biunit", _biunit_inverse),
    _law("action-distributes-vectors", 3, "vector", "r(g + h) = rg + rh", _module_law(_action_distributes_vectors, 1, 2)),
    _law("action-distributes-scalars", 3, "vector", "(r + s)g = rg + sg", _module_law(_action_distributes_scalars, 2, 1)),
    _law("action-compatible", 3, "vector", "r(sg) = (rs)g", _module_law(_action_compatible, 2, 1)),
    _law("action-unitary", 1, "vector", "1g = g", _module_law(_action_unitary, 0, 1)),
    _law("biaction-cross", 3, "vector", "the biscalar action distributes over the cross operation", _biaction_cross),
    _law("biaction-sided", 2, "vector", "the right and left scalar slots are not interchangeable", _biaction_sided),
    _law("algebra-associative", 3, "algebra", "algebra multiplication is associative", _algebra_law(_algebra_associative, 0, 3)),
    _law("algebra-scalar-compatible", 3, "algebra", "r(ab) = (ra)b = a(rb)", _algebra_law(_algebra_scalar_compatible, 1, 2)),
    _law("unit-injective", 2, "algebra", "the unit map is an injective homomorphism", _algebra_law(_unit_injective, 2, 0)),
    _law("bialgebra-cross-bilinear", 3, "algebra", "the cross product of algebra bielements is bilinear", _bialgebra_cross_bilinear),
)

LAWS = {law.name: law for law in _REGISTRY}

_SEMIRING = ("add-associative", "add-commutative", "mul-associative", "left-distributive", "right-distributive")
_BISEMIRING = ("cross-associative", "cross-expansion", "cross-abelian", "cross-distributive", "bimonoid-identity")

KIND_LAWS = {
    "semigroup": ("add-associative",),
    "monoid": ("add-associative", "add-identity"),
    "semiring": _SEMIRING,
    "semifield": _SEMIRING + ("mul-commutative", "mul-identity", "zero-divisor-free", "mul-inverse"),
    "bisemigroup": ("cross-associative", "cross-expansion"),
    "bisemiring": _BISEMIRING,
    "bisemifield": _BISEMIRING + ("biscalar-commutative", "biscalar-identity", "zero-bidivisor-free", "biunit-inverse"),
    "bisemimodule": (
        "cross-associative",
        "cross-abelian",
        "action-distributes-vectors",
        "action-distributes-scalars",
        "action-compatible",
        "action-unitary",
        "biaction-cross",
        "biaction-sided",
    ),
    "bisemialgebra": _BISEMIRING
    + (
        "action-unitary",
        "biaction-cross",
        "algebra-associative",
        "algebra-scalar-compatible",
        "unit-injective",
        "bialgebra-cross-bilinear",
    ),
}

KINDS = tuple(KIND_LAWS)


@dataclass(frozen=True)
class StructureSpec:
    kind: str
    carrier: Backend
    laws: tuple = ()

    def __post_init__(self):
        if self.kind not in KIND_LAWS:
            raise UnknownKind(f"unknown structure kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        laws = tuple(self.laws) if self.laws else KIND_LAWS[self.kind]
        for name in laws:
            if name not in LAWS:
                raise UnknownLaw(name)
        object.__setattr__(self, "laws", laws)

    @classmethod
    def for_kind(cls, kind: str, backend="rational") -> StructureSpec:
        if isinstance(backend, str):
            backend = get_backend(backend)
        return cls(kind, backend)


@dataclass(frozen=True)
class LawOutcome:
    law: str
    passed: bool
    samples_run: int
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        d = {"law": self.law, "passed": self.passed, "samples_run": self.samples_run}
        if self.witness is not None:
            d["witness"] = to_jsonable(self.witness)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> LawOutcome:
        return cls(d["law"], bool(d["passed"]), int(d["samples_run"]), d.get("witness"))


@dataclass(frozen=True)
class ConformanceReport:
    kind: str
    backend: str
    samples: int
    seed: int
    outcomes: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def __getitem__(self, law: str) -> LawOutcome:
        for o in self.outcomes:
            if o.law == law:
                return o
        raise KeyError(law)

    def failures(self) -> list:
        return [o.law for o in self.outcomes if not o.passed]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "backend": self.backend,
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.passed,
            "laws": [o.to_dict() for o in self.outcomes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> ConformanceReport:
        outcomes = tuple(LawOutcome.from_dict(x) for x in d["laws"])
        return cls(d["kind"], d["backend"], int(d["samples"]), int(d["seed"]), outcomes)


def _evaluate(law: Law, backend: Backend, samples: int, seed: int) -> LawOutcome:
    rng = random.Random(f"{seed}:{law.name}")
    draw = _Draw(backend, rng)
    for i in range(samples):
        draw.start(i)
        result = law.check(backend, draw, law.arity)
        if result is not True:
            witness = result if isinstance(result, dict) else {}
            return LawOutcome(law.name, False, i + 1, dict(witness, sample=i))
    return LawOutcome(law.name, True, samples)


def run_conformance(spec: StructureSpec, samples: int, seed: int = 0) -> ConformanceReport:
    """Evaluate every law of ``spec`` on ``samples`` seeded draws.

    Each law gets its own generator seeded from ``(seed, law name)``, so a
    law's outcome does not depend on which other laws are listed.  Stops a
    law at its first violation and reports that witness.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    outcomes = tuple(_evaluate(LAWS[name], spec.carrier, samples, seed) for name in spec.laws)
    return ConformanceReport(spec.kind, spec.carrier.name, samples, seed, outcomes)
