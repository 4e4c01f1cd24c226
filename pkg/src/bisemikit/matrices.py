"""Pivot-free Gauss (LDU) decomposition and the triangular pair
``(T_R, T_L)`` of the bilinear semigroup of matrices.

``A = xi_R @ delta @ xi_L`` with ``xi_R`` lower unitriangular, ``delta``
diagonal and ``xi_L`` upper unitriangular.  No row exchanges are ever
made: a permutation is not triangular, so matrices with a vanishing
leading principal minor are rejected with :class:`DecompositionUndefined`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .bipoints import AlgebraicBipoint, outer_bipoint
from .scalars import ABS_TOL, COMPLEX, RATIONAL, Backend, get_backend, principal_sqrt
from .serialize import decode_matrix, to_jsonable

__all__ = [
    "DecompositionUndefined",
    "SqrtUnavailable",
    "RegularMatrix",
    "GaussFactors",
    "BilinearMatrixPair",
    "SplitRule",
    "gauss_ldu",
    "bilinear_decompose",
    "bisemimodule_action",
    "compose_pairs",
    "correspondence_roundtrip",
    "CorrespondenceReport",
    "relative_residual",
]


class DecompositionUndefined(ValueError):
    """A leading principal minor vanishes; ``index`` is its 1-based order."""

    def __init__(self, index: int, detail: str = ""):
        self.index = index
        super().__init__(detail or f"leading principal minor {index} is zero; matrix is outside the pivot-free Gauss cell")


class SqrtUnavailable(ValueError):
    def __init__(self, index: int, value):
        self.index = index
        super().__init__(f"pivot {index} = {value} has no square root in this backend")


@dataclass(frozen=True)
class RegularMatrix:
    entries: tuple
    backend: Backend = RATIONAL

    def __post_init__(self):
        m = _linalg.as_matrix(self.entries, self.backend.coerce)
        if not _linalg.is_square(m) or not m:
            raise ValueError("expected a non-empty square matrix")
        object.__setattr__(self, "entries", m)

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def from_json(cls, rows, backend="rational") -> RegularMatrix:
        b = get_backend(backend)
        return cls(decode_matrix(rows, b), b)


def _as_regular(A) -> RegularMatrix:
    if isinstance(A, RegularMatrix):
        return A
    rows = _linalg.as_matrix(A)
    is_complex = any(isinstance(x, (complex, float)) for r in rows for x in r)
    return RegularMatrix(rows, COMPLEX if is_complex else RATIONAL)


@dataclass(frozen=True)
class GaussFactors:
    xi_R: tuple
    delta: tuple
    xi_L: tuple

    @property
    def pivots(self) -> tuple:
        return tuple(self.delta[i][i] for i in range(len(self.delta)))

    def product(self) -> tuple:
        return _linalg.matmul(_linalg.matmul(self.xi_R, self.delta), self.xi_L)

    def to_dict(self) -> dict:
        return {"xi_R": to_jsonable(self.xi_R), "delta": to_jsonable(self.delta), "xi_L": to_jsonable(self.xi_L)}

    @classmethod
    def from_dict(cls, obj) -> GaussFactors:
        return cls(decode_matrix(obj["xi_R"]), decode_matrix(obj["delta"]), decode_matrix(obj["xi_L"]))


@dataclass(frozen=True)
class BilinearMatrixPair:
    """Lower triangular ``T_R`` (right carrier) and upper triangular ``T_L`` (left carrier)."""

    T_R: tuple
    T_L: tuple

    def __post_init__(self):
        T_R, T_L = _linalg.as_matrix(self.T_R), _linalg.as_matrix(self.T_L)
        n = len(T_R)
        if len(T_L) != n:
            raise ValueError("T_R and T_L differ in size")
        for i in range(n):
            for j in range(n):
                if j > i and T_R[i][j] != 0:
                    raise ValueError("T_R must be lower triangular")
                if j < i and T_L[i][j] != 0:
                    raise ValueError("T_L must be upper triangular")
        if any(T_R[i][i] == 0 or T_L[i][i] == 0 for i in range(n)):
            raise ValueError("triangular factors must be invertible")
        object.__setattr__(self, "T_R", T_R)
        object.__setattr__(self, "T_L", T_L)

    @property
    def n(self) -> int:
        return len(self.T_R)

    def product(self) -> tuple:
        return _linalg.matmul(self.T_R, self.T_L)

    def to_dict(self) -> dict:
        return {"T_R": to_jsonable(self.T_R), "T_L": to_jsonable(self.T_L)}

    @classmethod
    def from_dict(cls, obj) -> BilinearMatrixPair:
        return cls(decode_matrix(obj["T_R"]), decode_matrix(obj["T_L"]))


class SplitRule(str, Enum):
    DELTA_LEFT = "delta_left"
    DELTA_SQRT = "delta_sqrt"

    @classmethod
    def parse(cls, value) -> SplitRule:
        if isinstance(value, cls):
            return value
        return cls(str(value).replace("-", "_"))


def _is_zero_pivot(p, scale, exact: bool) -> bool:
    if exact:
        return p == 0
    return abs(p) <= ABS_TOL * scale


def gauss_ldu(A, order: str = "row") -> GaussFactors:
    """Factor ``A = xi_R @ delta @ xi_L`` without pivoting.

    ``order="row"`` eliminates row by row (Doolittle); ``order="column"``
    builds the factors column by column (Crout).  On exact input both give
    the same factors, which is unique in the pivot-free cell.
    """
    M = _as_regular(A)
    exact = M.backend.exact
    if order == "row":
        L, U = _doolittle(M.entries, exact)
    elif order == "column":
        L, U = _crout(M.entries, exact)
    else:
        raise ValueError(f"unknown elimination order {order!r}")
    n = M.n
    zero = M.backend.zero
    one = M.backend.one
    d = tuple(U[i][i] for i in range(n))
    delta = _linalg.diag(d, zero)
    xi_L = tuple(tuple(one if i == j else (U[i][j] / d[i] if j > i else zero) for j in range(n)) for i in range(n))
    return GaussFactors(L, delta, xi_L)


def _scale(a) -> float:
    return max(1.0, max(abs(x) for row in a for x in row))


def _doolittle(a, exact):
    n = len(a)
    scale = _scale(a)
    U = [list(row) for row in a]
    L = [[0] * n for _ in range(n)]
    for k in range(n):
        if _is_zero_pivot(U[k][k], scale, exact):
            raise DecompositionUndefined(k + 1)
        L[k][k] = 1
        for i in range(k + 1, n):
            f = U[i][k] / U[k][k]
            L[i][k] = f
            for j in range(k, n):
                U[i][j] = U[i][j] - f * U[k][j]
            U[i][k] = U[i][k] * 0
    return _typed(L, a), _typed(U, a)


def _crout(a, exact):
    # column-oriented: L has the pivots on its diagonal, U is unit upper
    n = len(a)
    scale = _scale(a)
    Lc = [[a[0][0] * 0] * n for _ in range(n)]
    Uc = [[a[0][0] * 0] * n for _ in range(n)]
    for j in range(n):
        Uc[j][j] = a[0][0] * 0 + 1
        for i in range(j, n):
            s = a[i][j]
            for k in range(j):
                s = s - Lc[i][k] * Uc[k][j]
            Lc[i][j] = s
        if _is_zero_pivot(Lc[j][j], scale, exact):
            raise DecompositionUndefined(j + 1)
        for i in range(j + 1, n):
            s = a[j][i]
            for k in range(j):
                s = s - Lc[j][k] * Uc[k][i]
            Uc[j][i] = s / Lc[j][j]
    # rescale to unit-lower L and pivot-carrying U
    n_range = range(n)
    L = [[Lc[i][j] / Lc[j][j] if i >= j else Lc[i][j] for j in n_range] for i in n_range]
    U = [[Uc[i][j] * Lc[i][i] for j in n_range] for i in n_range]
    return _typed(L, a), _typed(U, a)


def _typed(m, like):
    sample = like[0][0]
    cast = complex if isinstance(sample, complex) else Fraction
    return tuple(tuple(cast(x) for x in row) for row in m)


def bilinear_decompose(A, split_rule=SplitRule.DELTA_LEFT) -> BilinearMatrixPair:
    """``T_R = xi_R @ d_R`` and ``T_L = d_L @ xi_L`` with ``d_R @ d_L = delta``.

    ``delta_left`` puts the whole diagonal on the left factor;
    ``delta_sqrt`` splits it into principal square roots.
    """
    M = _as_regular(A)
    rule = SplitRule.parse(split_rule)
    f = gauss_ldu(M)
    pivots = f.pivots
    zero, one = M.backend.zero, M.backend.one
    if rule == SplitRule.DELTA_LEFT:
        d_R = (one,) * M.n
        d_L = pivots
    else:
        roots = []
        for i, p in enumerate(pivots):
            r = principal_sqrt(p, M.backend)
            if r is None:
                raise SqrtUnavailable(i + 1, p)
            roots.append(r)
        d_R = d_L = tuple(roots)
    T_R = _linalg.matmul(f.xi_R, _linalg.diag(d_R, zero))
    T_L = _linalg.matmul(_linalg.diag(d_L, zero), f.xi_L)
    return BilinearMatrixPair(T_R, T_L)


def bisemimodule_action(pair: BilinearMatrixPair, v_R: Sequence, v_L: Sequence) -> AlgebraicBipoint:
    """Act with ``(T_R, T_L)`` on a source pair and form the bipoint of the images."""
    if len(v_R) != pair.n or len(v_L) != pair.n:
        raise ValueError(f"expected vectors of length {pair.n}")
    w_R = _linalg.matvec(pair.T_R, tuple(v_R))
    w_L = _linalg.matvec(pair.T_L, tuple(v_L))
    return outer_bipoint(w_R, w_L)


def compose_pairs(Q: BilinearMatrixPair, P: BilinearMatrixPair) -> BilinearMatrixPair:
    """Acting with ``P`` then ``Q``."""
    return BilinearMatrixPair(_linalg.matmul(Q.T_R, P.T_R), _linalg.matmul(Q.T_L, P.T_L))


def relative_residual(A, B) -> float:
    """``||A - B||_F / ||A||_F`` (absolute when ``A`` is zero)."""
    denom = _linalg.frobenius(A)
    diff = _linalg.frobenius(_linalg.sub(A, B))
    return diff / denom if denom else diff


@dataclass
class CorrespondenceReport:
    passed: bool
    reconstruction: bool
    unipotent_upper: bool
    unipotent_lower: bool
    diagonal_split: bool
    redecomposition: bool
    residual: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def correspondence_roundtrip(A, split_rule=SplitRule.DELTA_LEFT, tol: float = 1e-10) -> CorrespondenceReport:
    """Send ``A`` to its triangular pair and back, checking each factor map.

    ``xi_L`` must be recoverable as ``diag(T_L)^-1 T_L``, ``xi_R`` as
    ``T_R diag(T_R)^-1``, and ``diag(T_R) diag(T_L)`` must equal ``delta``.
    Re-decomposing the reconstruction must give back the same factors.
    """
    M = _as_regular(A)
    exact = M.backend.exact
    f = gauss_ldu(M)
    pair = bilinear_decompose(M, split_rule)
    n = M.n
    zero = M.backend.zero

    def same(x, y) -> bool:
        if exact:
            return x == y
        return _linalg.frobenius(_linalg.sub(x, y)) <= tol * max(1.0, _linalg.frobenius(y))

    back = pair.product()
    residual = 0.0 if exact and back == M.entries else relative_residual(M.entries, back)
    reconstruction = back == M.entries if exact else residual <= tol

    dR = tuple(pair.T_R[i][i] for i in range(n))
    dL = tuple(pair.T_L[i][i] for i in range(n))
    xi_L = tuple(tuple(pair.T_L[i][j] / dL[i] for j in range(n)) for i in range(n))
    xi_R = tuple(tuple(pair.T_R[i][j] / dR[j] for j in range(n)) for i in range(n))
    unipotent_upper = same(xi_L, f.xi_L)
    unipotent_lower = same(xi_R, f.xi_R)
    diagonal_split = same(_linalg.diag(tuple(r * l for r, l in zip(dR, dL)), zero), f.delta)

    again = gauss_ldu(RegularMatrix(back, M.backend))
    redecomposition = all(same(getattr(again, k), getattr(f, k)) for k in ("xi_R", "delta", "xi_L"))

    passed = reconstruction and unipotent_upper and unipotent_lower and diagonal_split and redecomposition
    return CorrespondenceReport(
        passed, reconstruction, unipotent_upper, unipotent_lower, diagonal_split, redecomposition, residual
    )
