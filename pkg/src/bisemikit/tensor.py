"""Bisemimodule elements, the diagonal/off-diagonal split and the three
pairing stages.

The pairing of a right vector with a left vector passes through three
stages:

``MIXED``
    the raw right-by-left sums.
``EXTERNAL``
    after the right vector has been projected onto the left side by
    :func:`project_p` (a covariant one-form, ``(1,1)`` metric).
``INTERNAL``
    after the Riesz-style map :func:`riesz_B` has turned that one-form into
    a contravariant vector (``(0,2)`` metric).  On the complex backend this
    map is conjugate-linear, so ``B(p(x_R))`` is the conjugate partner the
    Hermitian product needs.

All three stages share one summation kernel; they differ in what enters
the left slot.  ``OFF_DIAGONAL`` is always ``EXTENDED - DIAGONAL``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence

from . import _linalg
from .bipoints import MetricComponents, MetricKind
from .scalars import ABS_TOL, backend_for, close

__all__ = [
    "Side",
    "Variance",
    "Mode",
    "Stage",
    "InnerProductSpec",
    "BisemimoduleElement",
    "SemimoduleVector",
    "tensor_element",
    "tensor_split",
    "pairing",
    "mixed_product",
    "external_product",
    "inner_product",
    "project_p",
    "riesz_B",
    "lower_B",
    "internal_partner",
    "staged_product",
    "conjugate",
    "norm",
    "hilbert_correspondence_check",
    "HilbertReport",
    "CheckResult",
    "DimensionMismatch",
]


class DimensionMismatch(ValueError):
    pass


class Side(str, Enum):
    LEFT = "L"
    RIGHT = "R"


class Variance(str, Enum):
    COVARIANT = "covariant"
    CONTRAVARIANT = "contravariant"


class Mode(str, Enum):
    DIAGONAL = "diag"
    EXTENDED = "ext"
    OFF_DIAGONAL = "offdiag"


class Stage(str, Enum):
    MIXED = "mixed"
    EXTERNAL = "external"
    INTERNAL = "internal"


_STAGE_ORDER = {Stage.MIXED: 0, Stage.EXTERNAL: 1, Stage.INTERNAL: 2}


@dataclass(frozen=True)
class InnerProductSpec:
    mode: Mode = Mode.DIAGONAL
    stage: Stage = Stage.MIXED

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "stage", Stage(self.stage))

    def advance(self, stage) -> InnerProductSpec:
        stage = Stage(stage)
        if _STAGE_ORDER[stage] != _STAGE_ORDER[self.stage] + 1:
            raise ValueError(f"stage cannot move from {self.stage.value} to {stage.value}")
        return replace(self, stage=stage)

    @property
    def metric_kind(self) -> Optional[MetricKind]:
        return {Stage.MIXED: None, Stage.EXTERNAL: MetricKind.MIXED, Stage.INTERNAL: MetricKind.COVARIANT}[
            self.stage
        ]


@dataclass(frozen=True)
class BisemimoduleElement:
    """Coefficients ``X[a][b]`` on the bilinear basis ``e_a (x) f_b``."""

    coeffs: tuple

    def __post_init__(self):
        grid = _linalg.as_matrix(self.coeffs)
        if not _linalg.is_square(grid):
            raise ValueError("coefficient grid must be square")
        object.__setattr__(self, "coeffs", grid)

    @property
    def basis_dim(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: BisemimoduleElement) -> BisemimoduleElement:
        if other.basis_dim != self.basis_dim:
            raise DimensionMismatch("basis dimensions differ")
        return BisemimoduleElement(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs))
        )

    def diagonal(self) -> tuple:
        return tuple(self.coeffs[i][i] for i in range(self.basis_dim))

    def off_diagonal(self) -> tuple:
        n = self.basis_dim
        return tuple(self.coeffs[i][j] for i in range(n) for j in range(n) if i != j)


def tensor_element(x_R: Sequence, x_L: Sequence) -> BisemimoduleElement:
    """Develop ``x_R (x) x_L`` on the bilinear basis."""
    if len(x_R) != len(x_L):
        raise DimensionMismatch(f"{len(x_R)} != {len(x_L)}")
    return BisemimoduleElement(tuple(tuple(r * l for l in x_L) for r in x_R))


def tensor_split(X: BisemimoduleElement) -> tuple:
    """Return ``(X_D, X_OD)`` with ``X_D + X_OD == X``."""
    n = X.basis_dim
    zero = X.coeffs[0][0] * 0 if n else 0
    d = tuple(tuple(X.coeffs[i][j] if i == j else zero for j in range(n)) for i in range(n))
    od = tuple(tuple(zero if i == j else X.coeffs[i][j] for j in range(n)) for i in range(n))
    return BisemimoduleElement(d), BisemimoduleElement(od)


@dataclass(frozen=True)
class SemimoduleVector:
    side: Side
    coords: tuple
    variance: Variance = Variance.CONTRAVARIANT
    projected: bool = False
    trace: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "side", Side(self.side))
        object.__setattr__(self, "variance", Variance(self.variance))
        object.__setattr__(self, "coords", tuple(self.coords))

    @classmethod
    def left(cls, coords) -> SemimoduleVector:
        return cls(Side.LEFT, tuple(coords))

    @classmethod
    def right(cls, coords) -> SemimoduleVector:
        return cls(Side.RIGHT, tuple(coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def __add__(self, other: SemimoduleVector) -> SemimoduleVector:
        _same_dim(self, other)
        return replace(self, coords=tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: SemimoduleVector) -> SemimoduleVector:
        _same_dim(self, other)
        return replace(self, coords=tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, alpha) -> SemimoduleVector:
        return replace(self, coords=tuple(alpha * x for x in self.coords))


def _same_dim(a, b):
    if len(a.coords) != len(b.coords):
        raise DimensionMismatch(f"{len(a.coords)} != {len(b.coords)}")


def _coords(x) -> tuple:
    return x.coords if isinstance(x, SemimoduleVector) else tuple(x)


def pairing(first: Sequence, second: Sequence, mode: Mode):
    """The shared summation kernel, evaluated left to right by index."""
    mode = Mode(mode)
    if len(first) != len(second):
        raise DimensionMismatch(f"{len(first)} != {len(second)}")
    diag = 0
    for a, b in zip(first, second):
        diag = diag + a * b
    if mode == Mode.DIAGONAL:
        return diag
    s1 = 0
    for a in first:
        s1 = s1 + a
    s2 = 0
    for b in second:
        s2 = s2 + b
    ext = s1 * s2
    if mode == Mode.EXTENDED:
        return ext
    return ext - diag


def _mode(spec) -> Mode:
    return spec.mode if isinstance(spec, InnerProductSpec) else Mode(spec)


def mixed_product(x_R: SemimoduleVector, x_L: SemimoduleVector, spec=Mode.DIAGONAL):
    """Right-by-left pairing before any projection.

    Returns the scalar ``sum r_a * l_b`` over the index set of the mode.
    """
    if x_R.side != Side.RIGHT or x_L.side != Side.LEFT:
        raise ValueError("mixed product pairs a right vector with a left vector")
    return pairing(x_R.coords, x_L.coords, _mode(spec))


def external_product(x_proj: SemimoduleVector, x_L: SemimoduleVector, spec=Mode.DIAGONAL):
    """Pairing of a projected one-form with a left vector."""
    if not (x_proj.projected and x_proj.side == Side.LEFT and x_proj.variance == Variance.COVARIANT):
        raise ValueError("external product expects the output of project_p")
    return pairing(x_proj.coords, _coords(x_L), _mode(spec))


def inner_product(x_bar, x, spec=Mode.DIAGONAL):
    """``sum x_bar[a] * x[b]`` over the mode's index set.

    ``x_bar`` is already the conjugate partner (e.g. ``riesz_B(project_p(x_R))``
    or :func:`conjugate` of a left vector), so no further conjugation is
    applied here.
    """
    return pairing(_coords(x_bar), _coords(x), _mode(spec))


def conjugate(x: SemimoduleVector) -> SemimoduleVector:
    """Coordinatewise involution (conjugation, or identity on rationals)."""
    return replace(x, coords=tuple(_conj(c) for c in x.coords))


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


def project_p(x: SemimoduleVector, direction=Side.LEFT) -> SemimoduleVector:
    """``p_L`` (right vector onto the left side) or ``p_R`` (the reverse).

    Coordinates go through ``P_{R->L}`` (or its inverse): negation on the
    rational backend, conjugation on complex.  ``p_L`` output is a
    covariant one-form, ``p_R`` output contravariant.
    """
    direction = Side(direction)
    if direction == Side.LEFT:
        if x.side != Side.RIGHT:
            raise ValueError("p_L takes a right-side vector")
        coords = tuple(backend_for(c).to_left(c) for c in x.coords)
        variance = Variance.COVARIANT
    else:
        if x.side != Side.LEFT:
            raise ValueError("p_R takes a left-side vector")
        coords = tuple(backend_for(c).to_right(c) for c in x.coords)
        variance = Variance.CONTRAVARIANT
    return SemimoduleVector(direction, coords, variance, True, x.trace + (f"p_{direction.value}",))


def _metric_inverse(metric: Optional[MetricComponents], n: int):
    if metric is None:
        return None
    if metric.kind != MetricKind.COVARIANT:
        raise ValueError("riesz_B needs a (0,2) metric")
    if metric.n != n:
        raise DimensionMismatch(f"metric dimension {metric.n} != {n}")
    try:
        return _linalg.inverse(metric.g)
    except ZeroDivisionError:
        raise ValueError("singular metric") from None


def riesz_B(x: SemimoduleVector, metric: Optional[MetricComponents] = None) -> SemimoduleVector:
    """Covariant one-form to contravariant vector.

    Coordinates become ``g^-1 conj(x)``; with the identity metric (the
    default) and real data only the variance flips.  The map is a bijection
    with inverse :func:`lower_B`.
    """
    if x.variance != Variance.COVARIANT:
        raise ValueError("riesz_B expects a covariant vector")
    if metric is not None and not metric.is_positive_definite():
        raise ValueError("riesz_B needs a positive-definite metric")
    coords = tuple(_conj(c) for c in x.coords)
    inv = _metric_inverse(metric, x.dim)
    if inv is not None:
        coords = _linalg.matvec(inv, coords)
    side = Side.LEFT if x.side == Side.LEFT else Side.RIGHT
    return SemimoduleVector(side, coords, Variance.CONTRAVARIANT, x.projected, x.trace + ("B",))


def lower_B(x: SemimoduleVector, metric: Optional[MetricComponents] = None) -> SemimoduleVector:
    """Inverse of :func:`riesz_B`: ``conj(g x)``."""
    if x.variance != Variance.CONTRAVARIANT:
        raise ValueError("lower_B expects a contravariant vector")
    coords = x.coords
    if metric is not None:
        if metric.n != x.dim:
            raise DimensionMismatch(f"metric dimension {metric.n} != {x.dim}")
        coords = _linalg.matvec(metric.g, coords)
    coords = tuple(_conj(c) for c in coords)
    return SemimoduleVector(x.side, coords, Variance.COVARIANT, x.projected, x.trace + ("B^-1",))


def internal_partner(x_R: SemimoduleVector, metric: Optional[MetricComponents] = None) -> SemimoduleVector:
    """``B_L(p_L(x_R))``: the left-slot argument of the internal products."""
    return riesz_B(project_p(x_R, Side.LEFT), metric)


def staged_product(x_R: SemimoduleVector, x_L: SemimoduleVector, spec: InnerProductSpec, metric=None):
    """Evaluate the pairing of a raw (right, left) pair at ``spec.stage``.

    Returns ``(value, trace)`` where ``trace`` lists the maps applied to
    the right vector.
    """
    if spec.stage == Stage.MIXED:
        return mixed_product(x_R, x_L, spec), ()
    projected = project_p(x_R, Side.LEFT)
    if spec.stage == Stage.EXTERNAL:
        return external_product(projected, x_L, spec), projected.trace
    partner = riesz_B(projected, metric)
    return inner_product(partner, x_L, spec), partner.trace


def norm(x) -> float:
    """Square root of the diagonal self-product with the conjugate partner."""
    coords = _coords(x)
    value = inner_product(tuple(_conj(c) for c in coords), coords, Mode.DIAGONAL)
    if isinstance(value, complex):
        value = value.real
    return math.sqrt(value)


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    checked: int = 0
    max_error: float = 0.0
    witness: Optional[dict] = None

    def record(self, ok: bool, error: float = 0.0, witness=None):
        self.checked += 1
        self.max_error = max(self.max_error, error)
        if not ok and self.passed:
            self.passed = False
            self.witness = witness


@dataclass
class HilbertReport:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _err(a, b) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _hermitian_reference(y, x):
    # textbook conj(y) . x, computed independently of the pairing kernel
    return sum((complex(a).conjugate() * complex(b) for a, b in zip(y, x)), 0j)


def hilbert_correspondence_check(xs, samples: int = 100, seed: int = 0, tol: float = ABS_TOL) -> HilbertReport:
    """Check the pre-Hilbert correspondence ``x -> (conj(x), x)`` on ``xs``.

    Sub-checks: ``injective``, ``hermitian`` (agreement with the textbook
    Hermitian product), ``sesquilinear`` (linear right, antilinear left,
    for ``samples`` random scalars per pair) and ``conjugate_symmetric``.
    """
    vecs = [tuple(complex(c) for c in _coords(x)) for x in xs]
    rng = random.Random(seed)
    injective = CheckResult("injective")
    hermitian = CheckResult("hermitian")
    sesqui = CheckResult("sesquilinear")
    symmetric = CheckResult("conjugate_symmetric")

    seen = {}
    for v in vecs:
        pair = (tuple(_conj(c) for c in v), v)
        prev = seen.get(pair)
        injective.record(prev is None or prev == v, witness={"x": v})
        seen[pair] = v

    pairs = [(vecs[i], vecs[j]) for i in range(len(vecs)) for j in (i, (i + 1) % len(vecs))]
    for y, x in pairs:
        if len(y) != len(x):
            continue
        y_bar = tuple(_conj(c) for c in y)
        x_bar = tuple(_conj(c) for c in x)
        value = inner_product(y_bar, x)
        ref = _hermitian_reference(y, x)
        e = _err(value, ref)
        hermitian.record(e <= tol, e, {"y": y, "x": x, "value": value, "reference": ref})

        other = inner_product(x_bar, y)
        e = _err(value, other.conjugate())
        symmetric.record(e <= tol, e, {"y": y, "x": x})

        for _ in range(max(1, samples // max(1, len(pairs)))):
            alpha = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            ax = tuple(alpha * c for c in x)
            lin = inner_product(y_bar, ax)
            e1 = _err(lin, alpha * value)
            anti = inner_product(tuple(_conj(alpha * c) for c in y), x)
            e2 = _err(anti, alpha.conjugate() * value)
            e = max(e1, e2)
            sesqui.record(e <= tol, e, {"y": y, "x": x, "alpha": alpha})

    return HilbertReport([injective, hermitian, sesqui, symmetric])
