"""Sampled functions and bifunctions on a quadrature grid.

The Haar measure of the continuous setting is replaced by caller-supplied
positive quadrature weights (uniform ``1/m`` by default).  A grid is an
opaque ``domain_label`` plus sample positions the caller already
evaluated; integrals are weighted sums in index order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

__all__ = [
    "SampledFunction",
    "Bifunction",
    "GridMismatch",
    "quadrature_l1",
    "quadrature_l2",
    "discrete_inner",
    "l11_membership",
    "L11Result",
    "transform_BL_pL",
    "TransformResult",
]


class GridMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SampledFunction:
    samples: tuple
    weights: Optional[tuple] = None
    domain_label: str = "grid"

    def __post_init__(self):
        samples = tuple(complex(s) for s in self.samples)
        m = len(samples)
        if m == 0:
            raise ValueError("a sampled function needs at least one sample")
        weights = self.weights
        if weights is None:
            weights = (1.0 / m,) * m
        weights = tuple(float(w) for w in weights)
        if len(weights) != m:
            raise ValueError(f"{m} samples but {len(weights)} weights")
        if any(not (w > 0) for w in weights):
            raise ValueError("quadrature weights must be positive")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.samples)

    def same_grid(self, other: SampledFunction) -> bool:
        return self.domain_label == other.domain_label and self.weights == other.weights

    def conjugate(self) -> SampledFunction:
        return SampledFunction(tuple(s.conjugate() for s in self.samples), self.weights, self.domain_label)


@dataclass(frozen=True)
class Bifunction:
    phi_R: SampledFunction
    phi_L: SampledFunction

    def __post_init__(self):
        if not self.phi_R.same_grid(self.phi_L):
            raise GridMismatch("phi_R and phi_L live on different grids")


def quadrature_l1(f: SampledFunction) -> float:
    total = 0.0
    for w, s in zip(f.weights, f.samples):
        total += w * abs(s)
    return total


def quadrature_l2(f: SampledFunction) -> float:
    """``sum w |f|^2``."""
    total = 0.0
    for w, s in zip(f.weights, f.samples):
        total += w * (s.real * s.real + s.imag * s.imag)
    return total


def discrete_inner(phi: SampledFunction, psi: SampledFunction) -> complex:
    """``sum w conj(phi) psi`` on a shared grid."""
    if not phi.same_grid(psi) or len(phi) != len(psi):
        raise GridMismatch("functions live on different grids")
    total = 0j
    for w, a, b in zip(phi.weights, phi.samples, psi.samples):
        total += w * (a.conjugate() * b)
    return total


class L11Result(NamedTuple):
    value: float
    within_bound: bool


def l11_membership(bf: Bifunction, bound: float = math.inf) -> L11Result:
    """Weighted double integral of ``|phi_R (x) phi_L|``.

    The integrand factorizes, so the double sum is evaluated as the product
    of the two single L1 sums.
    """
    value = quadrature_l1(bf.phi_R) * quadrature_l1(bf.phi_L)
    return L11Result(value, value < bound)


class TransformResult(NamedTuple):
    squared: Bifunction
    l2_value: float


def transform_BL_pL(bf: Bifunction) -> TransformResult:
    """Replace ``phi_R`` by ``conj(phi_L)`` and integrate ``|phi_L|^2``.

    This is ``B_L . p_L`` at function level: the right factor is discarded
    in favour of the conjugate partner of the left one, so the diagonal
    integrand ``conj(phi_L) * phi_L`` is ``|phi_L|^2`` pointwise.
    """
    partner = bf.phi_L.conjugate()
    return TransformResult(Bifunction(partner, bf.phi_L), quadrature_l2(bf.phi_L))
