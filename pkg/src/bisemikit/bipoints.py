"""Half-space splitting, algebraic bipoints and metric bookkeeping.

An algebraic bipoint is the ``n x n`` grid of products ``(-a_i) * (a_j)``
built from a right source tuple and a left source tuple.  Diagonal entries
are the ``x_D`` products, off-diagonal ones the ``x_OD`` products; the two
markers carry no arithmetic of their own.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import _linalg
from .scalars import backend_for
from .serialize import decode_matrix, decode_vector, to_jsonable

__all__ = [
    "SemispacePartition",
    "AlgebraicBipoint",
    "CrossBipoints",
    "MetricKind",
    "MetricComponents",
    "split_solutions",
    "outer_bipoint",
    "partition_bipoint",
    "reassemble_bipoint",
    "cross_bipoints",
    "project_right_sources",
    "project_bipoint_to_point",
    "metric_component",
    "convert_metric",
    "AsymmetricSources",
]


class AsymmetricSources(ValueError):
    pass


@dataclass(frozen=True)
class SemispacePartition:
    W_L: frozenset
    W_R: frozenset
    mixed: frozenset


def _sign_scan(point) -> str:
    nonneg = all(x >= 0 for x in point)
    nonpos = all(x <= 0 for x in point)
    if nonneg:
        return "L"  # the all-zero tuple lands here
    if nonpos:
        return "R"
    return "mixed"


def split_solutions(points: Iterable[Sequence]) -> SemispacePartition:
    """Sort real points into the upper (left) and lower (right) semispaces.

    Mixed-sign tuples belong to neither side and are reported apart.
    """
    sides = {"L": set(), "R": set(), "mixed": set()}
    for p in points:
        p = tuple(p)
        sides[_sign_scan(p)].add(p)
    return SemispacePartition(frozenset(sides["L"]), frozenset(sides["R"]), frozenset(sides["mixed"]))


@dataclass(frozen=True)
class AlgebraicBipoint:
    source_right: tuple
    source_left: tuple

    def __post_init__(self):
        object.__setattr__(self, "source_right", tuple(self.source_right))
        object.__setattr__(self, "source_left", tuple(self.source_left))
        if len(self.source_right) != len(self.source_left):
            raise ValueError(
                f"source length mismatch: {len(self.source_right)} != {len(self.source_left)}"
            )
        if not self.source_right:
            raise ValueError("bipoint needs n >= 1")

    @property
    def n(self) -> int:
        return len(self.source_left)

    @property
    def entries(self) -> tuple:
        return tuple(tuple(r * l for l in self.source_left) for r in self.source_right)

    def entry(self, i: int, j: int):
        return self.source_right[i] * self.source_left[j]

    @staticmethod
    def marker(i: int, j: int) -> str:
        return "D" if i == j else "OD"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "right": to_jsonable(self.source_right),
            "left": to_jsonable(self.source_left),
            "entries": to_jsonable(self.entries),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> AlgebraicBipoint:
        bp = cls(decode_vector(obj["right"]), decode_vector(obj["left"]))
        if "entries" in obj and decode_matrix(obj["entries"]) != bp.entries:
            raise ValueError("entries disagree with the source tuples")
        return bp


def outer_bipoint(right: Sequence, left: Sequence) -> AlgebraicBipoint:
    return AlgebraicBipoint(tuple(right), tuple(left))


def partition_bipoint(bp: AlgebraicBipoint) -> tuple:
    """Split the grid into (diagonal n-tuple, off-diagonal row-major tuple)."""
    grid = bp.entries
    n = bp.n
    diagonal = tuple(grid[i][i] for i in range(n))
    off = tuple(grid[i][j] for i in range(n) for j in range(n) if i != j)
    return diagonal, off


def reassemble_bipoint(diagonal: Sequence, off_diagonal: Sequence) -> tuple:
    """Inverse of :func:`partition_bipoint` on the entry grid."""
    n = len(diagonal)
    if len(off_diagonal) != n * n - n:
        raise ValueError("off-diagonal part has the wrong length")
    it = iter(off_diagonal)
    return tuple(tuple(diagonal[i] if i == j else next(it) for j in range(n)) for i in range(n))


class CrossBipoints(NamedTuple):
    general: tuple
    cross: tuple


def cross_bipoints(bp_i: AlgebraicBipoint, bp_j: AlgebraicBipoint) -> CrossBipoints:
    """General bipoints ``(i, i)``, ``(j, j)`` and cross bipoints ``(i, j)``, ``(j, i)``."""
    if bp_i.n != bp_j.n:
        raise ValueError(f"dimension mismatch: {bp_i.n} != {bp_j.n}")
    bp_ij = outer_bipoint(bp_i.source_right, bp_j.source_left)
    bp_ji = outer_bipoint(bp_j.source_right, bp_i.source_left)
    return CrossBipoints((bp_i, bp_j), (bp_ij, bp_ji))


def project_right_sources(bp: AlgebraicBipoint) -> AlgebraicBipoint:
    """Apply ``P_{R->L}`` to every right coordinate.

    On symmetric sources the result has both sources equal to the left
    tuple and entries ``a_i * a_j``.
    """
    projected = tuple(backend_for(x).to_left(x) for x in bp.source_right)
    return AlgebraicBipoint(projected, bp.source_left)


def project_bipoint_to_point(bp: AlgebraicBipoint) -> tuple:
    """Identify a symmetric bipoint with its classical point of ``V_L``."""
    projected = project_right_sources(bp)
    if projected.source_right != bp.source_left:
        raise AsymmetricSources(
            f"right sources {bp.source_right} are not the involution of left sources {bp.source_left}"
        )
    return bp.source_left


class MetricKind(str, Enum):
    COVARIANT = "0,2"
    MIXED = "1,1"
    CONTRAVARIANT = "2,0"

    @classmethod
    def parse(cls, value) -> MetricKind:
        if isinstance(value, cls):
            return value
        if isinstance(value, tuple):
            value = f"{value[0]},{value[1]}"
        return cls(str(value).strip("()").replace(" ", ""))


@dataclass(frozen=True)
class MetricComponents:
    kind: MetricKind
    g: tuple

    def __post_init__(self):
        object.__setattr__(self, "kind", MetricKind.parse(self.kind))
        g = _linalg.as_matrix(self.g)
        if not _linalg.is_square(g):
            raise ValueError("metric must be square")
        if not _linalg.is_symmetric(g):
            raise ValueError("metric must be symmetric")
        object.__setattr__(self, "g", g)

    @classmethod
    def identity(cls, n: int, kind=MetricKind.COVARIANT) -> MetricComponents:
        return cls(kind, _linalg.identity(n))

    @property
    def n(self) -> int:
        return len(self.g)

    def is_positive_definite(self) -> bool:
        return _linalg.is_positive_definite(self.g)


def metric_component(g: MetricComponents, i: int, j: int):
    """``g_ij`` with zero-based indices."""
    if not (0 <= i < g.n and 0 <= j < g.n):
        raise IndexError(f"index ({i}, {j}) out of range for dimension {g.n}")
    return g.g[i][j]


def convert_metric(g: MetricComponents, target_kind) -> MetricComponents:
    """Raise indices with the inverse matrix.

    ``(0,2) -> (2,0)`` inverts ``g``, ``(2,0) -> (0,2)`` inverts back, and
    either one to ``(1,1)`` gives the identity-shaped mixed tensor.  A
    ``(1,1)`` tensor has forgotten ``g`` and cannot be converted further.
    """
    target = MetricKind.parse(target_kind)
    if target == g.kind:
        return g
    if g.kind == MetricKind.MIXED:
        raise ValueError("a (1,1) metric carries no information to raise or lower")
    try:
        inv = _linalg.inverse(g.g)
    except ZeroDivisionError:
        raise ValueError("singular metric cannot be converted") from None
    if target == MetricKind.MIXED:
        exact = all(isinstance(x, (int, Fraction)) for row in g.g for x in row)
        if exact:
            return MetricComponents(target, _linalg.matmul(inv, g.g))
        # g^-1 g is the identity up to rounding; store it exactly
        return MetricComponents(target, _linalg.identity(g.n, 1.0, 0.0))
    return MetricComponents(target, inv)
