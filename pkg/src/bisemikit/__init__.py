"""Bisemistructures at desk scale.

Bielements and the cross operation, bisemimodule tensors with their
diagonal/off-diagonal split, staged inner products, group Hopf
bisemialgebras, pivot-free Gauss factorization into triangular pairs,
sampled function spaces, and a seeded law-conformance harness.
"""

__version__ = "0.1.0"

from .bisemigroup import Bielement, BiformalSum, cross_combine, cross_expand
from .bipoints import AlgebraicBipoint, MetricComponents, convert_metric, outer_bipoint
from .functions import Bifunction, SampledFunction, l11_membership, quadrature_l1, transform_BL_pL
from .harness import StructureSpec, run_conformance
from .hopf import build_group_bisemialgebra, hopf_axiom_check, named_group
from .matrices import DecompositionUndefined, bilinear_decompose, correspondence_roundtrip, gauss_ldu
from .scalars import BiScalar, LeftScalar, RightScalar, get_backend
from .tensor import InnerProductSpec, SemimoduleVector, hilbert_correspondence_check, tensor_split

__all__ = [
    "__version__",
    "Bielement",
    "BiformalSum",
    "cross_combine",
    "cross_expand",
    "AlgebraicBipoint",
    "MetricComponents",
    "convert_metric",
    "outer_bipoint",
    "Bifunction",
    "SampledFunction",
    "l11_membership",
    "quadrature_l1",
    "transform_BL_pL",
    "StructureSpec",
    "run_conformance",
    "build_group_bisemialgebra",
    "hopf_axiom_check",
    "named_group",
    "DecompositionUndefined",
    "bilinear_decompose",
    "correspondence_roundtrip",
    "gauss_ldu",
    "BiScalar",
    "LeftScalar",
    "RightScalar",
    "get_backend",
    "InnerProductSpec",
    "SemimoduleVector",
    "hilbert_correspondence_check",
    "tensor_split",
]
