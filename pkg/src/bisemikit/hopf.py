"""Finite group Hopf algebras and the bilinear antipode between the left
and right bisemialgebras.

Structure constants are sparse and exact:

* ``mul[(a, b)]`` maps basis index ``k`` to the coefficient of ``e_k`` in
  ``e_a e_b``;
* ``comul[j]`` maps ``(c, d)`` to the coefficient of ``e_c (x) e_d`` in
  ``Delta(e_j)``.

Linear maps on the carrier are ``dim x dim`` matrices whose column ``j`` is
the image of ``e_j``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from . import _linalg
from .scalars import ABS_TOL, close

__all__ = [
    "AlgebraData",
    "CoalgebraData",
    "HopfData",
    "Orientation",
    "BisemialgebraElement",
    "InvalidGroupTable",
    "LawResult",
    "AxiomReport",
    "validate_group_table",
    "cyclic_table",
    "klein_table",
    "symmetric_table",
    "product_table",
    "named_group",
    "build_group_bisemialgebra",
    "multiply",
    "comultiply",
    "counit",
    "apply_map",
    "identity_map",
    "unit_counit_map",
    "convolution",
    "hopf_axiom_check",
    "bilinear_antipode",
    "bilinear_antipode_inverse",
    "mirror_antipode",
    "project_to_cosemialgebra",
    "star",
    "star_inverse",
    "star_involution_check",
]


class InvalidGroupTable(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraData:
    dim: int
    mul: dict
    unit: tuple


@dataclass(frozen=True)
class CoalgebraData:
    comul: dict
    counit: tuple


@dataclass(frozen=True)
class HopfData:
    algebra: AlgebraData
    coalgebra: CoalgebraData
    antipode: tuple
    labels: tuple = ()
    group_table: Optional[tuple] = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def basis(self, i: int) -> tuple:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def with_antipode(self, S) -> HopfData:
        return replace(self, antipode=_linalg.as_matrix(S))


# -- group tables ---------------------------------------------------------------


def validate_group_table(table: Sequence[Sequence[int]]) -> int:
    """Check closure, associativity, identity and inverses.

    Returns the index of the identity element.
    """
    n = len(table)
    if n == 0:
        raise InvalidGroupTable("empty table")
    for row in table:
        if len(row) != n:
            raise InvalidGroupTable("table is not square")
        for x in row:
            if not (isinstance(x, int) and 0 <= x < n):
                raise InvalidGroupTable(f"entry {x!r} outside 0..{n - 1}")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise InvalidGroupTable(f"not associative at ({a}, {b}, {c})")
    ids = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
    if not ids:
        raise InvalidGroupTable("no identity element")
    e = ids[0]
    for g in range(n):
        if not any(table[g][h] == e and table[h][g] == e for h in range(n)):
            raise InvalidGroupTable(f"element {g} has no inverse")
    return e


def cyclic_table(n: int) -> tuple:
    return tuple(tuple((a + b) % n for b in range(n)) for a in range(n))


def product_table(t1, t2) -> tuple:
    n1, n2 = len(t1), len(t2)
    idx = lambda a, b: a * n2 + b  # noqa: E731
    return tuple(
        tuple(idx(t1[a1][b1], t2[a2][b2]) for b1 in range(n1) for b2 in range(n2))
        for a1 in range(n1)
        for a2 in range(n2)
    )


def klein_table() -> tuple:
    return product_table(cyclic_table(2), cyclic_table(2))


def symmetric_table(n: int = 3) -> tuple:
    """Composition table of the permutations of ``range(n)``, identity first."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    return tuple(tuple(index[tuple(p[q[x]] for x in range(n))] for q in perms) for p in perms)


def named_group(name: str) -> tuple:
    name = name.lower()
    if name in ("z1", "trivial", "1"):
        return cyclic_table(1)
    if name.startswith("z") and name[1:].isdigit():
        return cyclic_table(int(name[1:]))
    if name in ("z2xz2", "klein", "v4"):
        return klein_table()
    if name == "s3":
        return symmetric_table(3)
    raise ValueError(f"unknown group {name!r}")


def build_group_bisemialgebra(group_table: Sequence[Sequence[int]], labels: Sequence = ()) -> HopfData:
    """Group algebra Hopf data: ``gh``, ``Delta(g) = g (x) g``, ``eps(g) = 1``, ``S(g) = g^-1``."""
    table = tuple(tuple(int(x) for x in row) for row in group_table)
    e = validate_group_table(table)
    n = len(table)
    one, zero = Fraction(1), Fraction(0)
    mul = {(a, b): {table[a][b]: one} for a in range(n) for b in range(n)}
    unit = tuple(one if k == e else zero for k in range(n))
    comul = {g: {(g, g): one} for g in range(n)}
    eps = tuple(one for _ in range(n))
    inverse = [next(h for h in range(n) if table[g][h] == e) for g in range(n)]
    S = tuple(tuple(one if inverse[j] == i else zero for j in range(n)) for i in range(n))
    hopf = HopfData(
        AlgebraData(n, mul, unit),
        CoalgebraData(comul, eps),
        S,
        tuple(labels) or tuple(f"g{i}" for i in range(n)),
        table,
    )
    report = hopf_axiom_check(hopf)
    if not report.passed:  # pragma: no cover - guarded by validate_group_table
        raise InvalidGroupTable(f"group algebra fails {report.failures()}")
    return hopf


# -- linear algebra on the carrier -------------------------------------------------


def multiply(H: HopfData, x: Sequence, y: Sequence) -> tuple:
    out = [0] * H.dim
    for (a, b), image in H.algebra.mul.items():
        cab = x[a] * y[b]
        if cab == 0:
            continue
        for k, c in image.items():
            out[k] = out[k] + c * cab
    return tuple(out)


def comultiply(H: HopfData, x: Sequence) -> dict:
    """``Delta(x)`` as ``{(c, d): coeff}`` with zero entries dropped."""
    out: dict = {}
    for j, xj in enumerate(x):
        if xj == 0:
            continue
        for cd, coeff in H.coalgebra.comul.get(j, {}).items():
            out[cd] = out.get(cd, 0) + coeff * xj
    return {k: v for k, v in out.items() if v != 0}


def counit(H: HopfData, x: Sequence):
    total = 0
    for a, b in zip(H.coalgebra.counit, x):
        total = total + a * b
    return total


def apply_map(M, x: Sequence) -> tuple:
    return _linalg.matvec(M, tuple(x))


def identity_map(H: HopfData) -> tuple:
    return _linalg.identity(H.dim)


def unit_counit_map(H: HopfData) -> tuple:
    """``eta . eps`` as a matrix."""
    return tuple(tuple(H.algebra.unit[i] * H.coalgebra.counit[j] for j in range(H.dim)) for i in range(H.dim))


def convolution(h1, h2, H: HopfData) -> tuple:
    """``h1 * h2 = mu . (h1 (x) h2) . Delta``."""
    n = H.dim
    for h in (h1, h2):
        if _linalg.shape(h) != (n, n):
            raise ValueError(f"map of shape {_linalg.shape(h)} on a dimension {n} carrier")
    cols = []
    for j in range(n):
        col = [0] * n
        for (c, d), coeff in H.coalgebra.comul.get(j, {}).items():
            u = tuple(h1[i][c] for i in range(n))
            v = tuple(h2[i][d] for i in range(n))
            prod = multiply(H, u, v)
            col = [a + coeff * b for a, b in zip(col, prod)]
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


# -- axiom report ------------------------------------------------------------------


@dataclass
class LawResult:
    name: str
    passed: bool = True
    checked: int = 0
    witness: Optional[dict] = None

    def record(self, ok: bool, witness=None):
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.witness = witness

    def to_dict(self) -> dict:
        from .serialize import to_jsonable

        return {"law": self.name, "passed": self.passed, "checked": self.checked, "witness": to_jsonable(self.witness)}


@dataclass
class AxiomReport:
    laws: list

    @property
    def passed(self) -> bool:
        return all(law.passed for law in self.laws)

    def failures(self) -> list:
        return [law.name for law in self.laws if not law.passed]

    def __getitem__(self, name) -> LawResult:
        for law in self.laws:
            if law.name == name:
                return law
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "laws": [law.to_dict() for law in self.laws]}


def _tensor_mul(H, s: dict, t: dict) -> dict:
    out: dict = {}
    for (a, b), x in s.items():
        for (c, d), y in t.items():
            left = H.algebra.mul.get((a, c), {})
            right = H.algebra.mul.get((b, d), {})
            for k, p in left.items():
                for m, q in right.items():
                    out[(k, m)] = out.get((k, m), 0) + x * y * p * q
    return {k: v for k, v in out.items() if v != 0}


def _leg_map(H, s: dict, first, second) -> dict:
    """Apply ``first (x) second`` to a two-leg tensor; legs given as callables."""
    out: dict = {}
    for (a, b), coeff in s.items():
        for key_a, va in first(a).items():
            for key_b, vb in second(b).items():
                k = key_a + key_b
                out[k] = out.get(k, 0) + coeff * va * vb
    return {k: v for k, v in out.items() if v != 0}


def hopf_axiom_check(H: HopfData) -> AxiomReport:
    """Exhaustive check over basis elements of every Hopf identity."""
    n = H.dim
    e = [H.basis(i) for i in range(n)]
    unit = H.algebra.unit
    laws = {name: LawResult(name) for name in (
        "associativity", "unit", "coassociativity", "counit",
        "comultiplication_multiplicative", "counit_multiplicative",
        "unit_grouplike", "antipode_left", "antipode_right",
    )}

    for a, b, c in itertools.product(range(n), repeat=3):
        lhs = multiply(H, multiply(H, e[a], e[b]), e[c])
        rhs = multiply(H, e[a], multiply(H, e[b], e[c]))
        laws["associativity"].record(lhs == rhs, {"a": a, "b": b, "c": c})

    for a in range(n):
        ok = multiply(H, unit, e[a]) == e[a] and multiply(H, e[a], unit) == e[a]
        laws["unit"].record(ok, {"a": a})

    single = lambda i: {(i,): Fraction(1)}  # noqa: E731
    delta = lambda i: H.coalgebra.comul.get(i, {})  # noqa: E731
    for j in range(n):
        d = comultiply(H, e[j])
        lhs = _leg_map(H, d, delta, single)
        rhs = _leg_map(H, d, single, delta)
        laws["coassociativity"].record(lhs == rhs, {"j": j})

        left = [0] * n
        right = [0] * n
        for (c, dd), coeff in d.items():
            left[dd] += H.coalgebra.counit[c] * coeff
            right[c] += H.coalgebra.counit[dd] * coeff
        laws["counit"].record(tuple(left) == e[j] and tuple(right) == e[j], {"j": j})

    for a, b in itertools.product(range(n), repeat=2):
        ab = multiply(H, e[a], e[b])
        ok = comultiply(H, ab) == _tensor_mul(H, comultiply(H, e[a]), comultiply(H, e[b]))
        laws["comultiplication_multiplicative"].record(ok, {"a": a, "b": b})
        ok = counit(H, ab) == counit(H, e[a]) * counit(H, e[b])
        laws["counit_multiplicative"].record(ok, {"a": a, "b": b})

    one_one = {(i, k): unit[i] * unit[k] for i in range(n) for k in range(n) if unit[i] * unit[k] != 0}
    laws["unit_grouplike"].record(comultiply(H, unit) == one_one and counit(H, unit) == 1, {})

    ee = unit_counit_map(H)
    ident = identity_map(H)
    for name, conv in (
        ("antipode_left", convolution(H.antipode, ident, H)),
        ("antipode_right", convolution(ident, H.antipode, H)),
    ):
        for j in range(n):
            col = tuple(conv[i][j] for i in range(n))
            target = tuple(ee[i][j] for i in range(n))
            laws[name].record(col == target, {"basis": j, "got": col, "expected": target})

    return AxiomReport(list(laws.values()))


# -- bisemialgebra elements and the bilinear antipode ---------------------------------


class Orientation(str, Enum):
    LEFT_BI = "LeftBi"  # A_{R(P)} (x) A_L
    RIGHT_BI = "RightBi"  # A_{L(P)} (x) A_R


@dataclass(frozen=True)
class BisemialgebraElement:
    """A pure tensor of a left-semialgebra and a right-semialgebra element.

    For ``LEFT_BI`` the tensor reads ``right_factor (x) left_factor`` with
    the right factor the projected cosemialgebra leg; for ``RIGHT_BI`` it
    reads ``left_factor (x) right_factor`` with the left factor projected.
    """

    left_factor: tuple
    right_factor: tuple
    orientation: Orientation = Orientation.LEFT_BI

    def __post_init__(self):
        object.__setattr__(self, "left_factor", tuple(self.left_factor))
        object.__setattr__(self, "right_factor", tuple(self.right_factor))
        object.__setattr__(self, "orientation", Orientation(self.orientation))

    @classmethod
    def from_pair(cls, first, second, orientation=Orientation.LEFT_BI) -> BisemialgebraElement:
        """Build from tensor positions ``first (x) second``."""
        orientation = Orientation(orientation)
        if orientation == Orientation.LEFT_BI:
            return cls(second, first, orientation)
        return cls(first, second, orientation)

    @property
    def pair(self) -> tuple:
        if self.orientation == Orientation.LEFT_BI:
            return (self.right_factor, self.left_factor)
        return (self.left_factor, self.right_factor)

    @property
    def projected_factor(self) -> str:
        return "right" if self.orientation == Orientation.LEFT_BI else "left"


def _swap_apply(x: BisemialgebraElement, S, target: Orientation) -> BisemialgebraElement:
    first, second = x.pair
    return BisemialgebraElement.from_pair(apply_map(S, second), apply_map(S, first), target)


def bilinear_antipode(x: BisemialgebraElement, H: HopfData) -> BisemialgebraElement:
    """``S_b``: ``(a (x) b)`` in the left bisemialgebra to ``(S b (x) S a)`` in the right one."""
    if x.orientation != Orientation.LEFT_BI:
        raise ValueError("bilinear antipode takes a LeftBi element")
    return _swap_apply(x, H.antipode, Orientation.RIGHT_BI)


def bilinear_antipode_inverse(y: BisemialgebraElement, H: HopfData) -> BisemialgebraElement:
    """``S_b^-1``, using the inverse of the classical antipode."""
    if y.orientation != Orientation.RIGHT_BI:
        raise ValueError("inverse bilinear antipode takes a RightBi element")
    return _swap_apply(y, _linalg.inverse(H.antipode), Orientation.LEFT_BI)


def mirror_antipode(y: BisemialgebraElement, H: HopfData) -> BisemialgebraElement:
    """The symmetric right-to-left antipode (same formula, opposite direction)."""
    if y.orientation != Orientation.RIGHT_BI:
        raise ValueError("mirror antipode takes a RightBi element")
    return _swap_apply(y, H.antipode, Orientation.LEFT_BI)


def project_to_cosemialgebra(a_R: Sequence, H: Optional[HopfData] = None) -> tuple:
    """``p_L: A_R -> A_{R(P)}`` on coefficients (``P_{R->L}`` coefficientwise)."""
    from .scalars import backend_for

    return tuple(backend_for(c).to_left(c) for c in a_R)


# -- *-involutions -------------------------------------------------------------------


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


def star(H: HopfData, a: Sequence) -> tuple:
    """``I_{L->R}``: ``(sum c_g g)* = sum conj(c_g) g^-1``."""
    return apply_map(H.antipode, tuple(_conj(c) for c in a))


def star_inverse(H: HopfData, a_star: Sequence) -> tuple:
    """``I_{R->L}``, computed as the inverse map (not by reapplying ``star``)."""
    S_inv = _linalg.inverse(H.antipode)
    return tuple(_conj(c) for c in apply_map(S_inv, a_star))


def _vec_close(u, v, tol) -> bool:
    return all(close(complex(a), complex(b), tol) for a, b in zip(u, v))


def star_involution_check(H: HopfData, samples: int = 100, seed: int = 0, tol: float = ABS_TOL) -> AxiomReport:
    """Sampled check of the ``*``-structure with complex coefficients."""
    rng = random.Random(seed)
    n = H.dim

    def draw():
        return tuple(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n))

    laws = {name: LawResult(name) for name in (
        "conjugate_linear", "antimultiplicative", "inverse_pair", "involutive",
    )}
    for _ in range(samples):
        a, b = draw(), draw()
        alpha = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        lhs = star(H, tuple(alpha * x + y for x, y in zip(a, b)))
        rhs = tuple(alpha.conjugate() * x + y for x, y in zip(star(H, a), star(H, b)))
        laws["conjugate_linear"].record(_vec_close(lhs, rhs, tol), {"a": a, "b": b, "alpha": alpha})

        lhs = star(H, multiply(H, a, b))
        rhs = multiply(H, star(H, b), star(H, a))
        laws["antimultiplicative"].record(_vec_close(lhs, rhs, tol), {"a": a, "b": b})

        laws["inverse_pair"].record(_vec_close(star_inverse(H, star(H, a)), a, tol), {"a": a})
        laws["involutive"].record(_vec_close(star(H, star(H, a)), a, tol), {"a": a})
    return AxiomReport(list(laws.values()))
