"""Command-line entry point: ``bisemikit <subcommand> ...``.

Every subcommand prints one JSON document (or writes it to ``--output``).
Exit status is 0 on success, 1 for domain errors (reported as
``{"error", "detail", "location"}``) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bipoints import MetricComponents, MetricKind, outer_bipoint
from .functions import Bifunction, GridMismatch, SampledFunction, l11_membership, transform_BL_pL
from .harness import KINDS, StructureSpec, UnknownLaw, run_conformance
from .hopf import InvalidGroupTable, build_group_bisemialgebra, hopf_axiom_check, named_group, star_involution_check
from .matrices import (
    DecompositionUndefined,
    RegularMatrix,
    SplitRule,
    SqrtUnavailable,
    bilinear_decompose,
    gauss_ldu,
    relative_residual,
)
from .scalars import get_backend
from .serialize import decode_scalar, decode_vector, to_jsonable
from .tensor import DimensionMismatch, InnerProductSpec, Mode, SemimoduleVector, Stage, staged_product

SEED_ENV = "BISEMIKIT_SEED"
GROUPS = ("z1", "z2", "z3", "z4", "z2xz2", "s3")


class UsageError(Exception):
    pass


class DomainError(Exception):
    def __init__(self, error: str, detail: str, location=None):
        super().__init__(detail)
        self.error = error
        self.detail = detail
        self.location = location


# -- input helpers ----------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _csv_cell(cell: str):
    cell = cell.strip()
    try:
        return Fraction(cell)
    except ValueError:
        pass
    try:
        return complex(cell.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse matrix entry {cell!r}") from None


def _read_matrix(path: str, backend):
    text = _read_text(path)
    if path.endswith(".csv"):
        rows = [[_csv_cell(c) for c in row] for row in csv.reader(io.StringIO(text)) if row]
    else:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON ({exc.msg})") from None
        if isinstance(obj, dict):
            obj = obj.get("matrix")
        if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
            raise UsageError(f"{path}: expected a list of rows or {{\"matrix\": rows}}")
        rows = [[decode_scalar(x) for x in r] for r in obj]
    try:
        return RegularMatrix(rows, backend)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _read_vector(path: str, backend):
    obj = _read_json(path)
    if isinstance(obj, dict):
        obj = obj.get("vector", obj.get("coords"))
    if not isinstance(obj, list):
        raise UsageError(f"{path}: expected a JSON list")
    try:
        return decode_vector(obj, backend)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


# -- subcommands ------------------------------------------------------------


def cmd_decompose(args) -> dict:
    backend = get_backend(args.backend)
    A = _read_matrix(args.input, backend)
    try:
        factors = gauss_ldu(A, order=args.order)
        pair = bilinear_decompose(A, args.rule)
    except DecompositionUndefined as exc:
        raise DomainError("DecompositionUndefined", str(exc), {"index": exc.index}) from None
    except SqrtUnavailable as exc:
        raise DomainError("SqrtUnavailable", str(exc), {"index": exc.index}) from None
    out = {"backend": backend.name, "rule": SplitRule.parse(args.rule).value, "n": A.n}
    out.update(factors.to_dict())
    out.update(pair.to_dict())
    out["residual"] = relative_residual(A.entries, pair.product())
    return out


def cmd_bipoint(args) -> dict:
    backend = get_backend(args.backend)
    right = _read_vector(args.right, backend)
    left = _read_vector(args.left, backend)
    if len(right) != len(left):
        raise DomainError("DimensionMismatch", f"{len(right)} right sources but {len(left)} left sources")
    bp = outer_bipoint(right, left)
    out = bp.to_dict()
    out["markers"] = [[bp.marker(i, j) for j in range(bp.n)] for i in range(bp.n)]
    return out


def cmd_inner(args) -> dict:
    backend = get_backend(args.backend)
    x_R = SemimoduleVector.right(_read_vector(args.right, backend))
    x_L = SemimoduleVector.left(_read_vector(args.left, backend))
    spec = InnerProductSpec(Mode(args.mode), Stage(args.stage))
    metric = None
    if args.metric:
        rows = _read_json(args.metric)
        metric = MetricComponents(MetricKind.COVARIANT, tuple(decode_vector(r, backend) for r in rows))
    try:
        value, trace = staged_product(x_R, x_L, spec, metric)
    except DimensionMismatch as exc:
        raise DomainError("DimensionMismatch", str(exc)) from None
    except ValueError as exc:
        raise DomainError("InvalidMetric", str(exc)) from None
    return {
        "backend": backend.name,
        "mode": spec.mode.value,
        "stage": spec.stage.value,
        "value": to_jsonable(backend.coerce(value)),
        "trace": list(trace),
    }


def _group_table(spec: str):
    if spec.startswith("table:"):
        obj = _read_json(spec[len("table:"):])
        if isinstance(obj, dict):
            obj = obj.get("table")
        return obj
    if spec not in GROUPS:
        raise UsageError(f"unknown group {spec!r}; expected one of {', '.join(GROUPS)} or table:<file>")
    return named_group(spec)


def cmd_hopf(args) -> dict:
    if args.star and args.backend != "complex":
        raise UsageError("--star needs --backend complex")
    table = _group_table(args.group)
    try:
        H = build_group_bisemialgebra(table)
    except (InvalidGroupTable, TypeError, ValueError) as exc:
        raise DomainError("InvalidGroupTable", str(exc)) from None
    report = hopf_axiom_check(H)
    out = {"group": args.group, "dim": H.dim, "backend": args.backend, "passed": report.passed}
    out["axioms"] = report.to_dict()
    if args.star:
        star = star_involution_check(H, samples=args.samples, seed=args.seed)
        out["star"] = star.to_dict()
        out["passed"] = report.passed and star.passed
    return out


def cmd_check(args) -> dict:
    try:
        spec = StructureSpec.for_kind(args.structure, args.backend)
        if args.laws:
            spec = StructureSpec(spec.kind, spec.carrier, tuple(args.laws.split(",")))
    except UnknownLaw as exc:
        raise UsageError(f"unknown law {exc.args[0]!r}") from None
    return run_conformance(spec, args.samples, args.seed).to_dict()


def cmd_transform(args) -> dict:
    obj = _read_json(args.input)
    if not isinstance(obj, dict) or "samples_L" not in obj:
        raise UsageError(f"{args.input}: expected an object with samples_R, samples_L and weights")
    label = obj.get("domain", "grid")
    try:
        samples_L = [complex(decode_scalar(x)) for x in obj["samples_L"]]
        samples_R = [complex(decode_scalar(x)) for x in obj.get("samples_R", obj["samples_L"])]
        weights = obj.get("weights")
        if weights is not None:
            weights = [float(decode_scalar(w)) for w in weights]
        phi_R = SampledFunction(tuple(samples_R), None if weights is None else tuple(weights), label)
        phi_L = SampledFunction(tuple(samples_L), None if weights is None else tuple(weights), label)
        bf = Bifunction(phi_R, phi_L)
    except GridMismatch as exc:
        raise DomainError("GridMismatch", str(exc)) from None
    except ValueError as exc:
        raise DomainError("InvalidGrid", str(exc)) from None
    result = transform_BL_pL(bf)
    l11 = l11_membership(bf, args.bound)
    return {
        "l11": l11.value,
        "within_bound": l11.within_bound,
        "l2": result.l2_value,
        "squared_samples": {
            "right": to_jsonable(result.squared.phi_R.samples),
            "left": to_jsonable(result.squared.phi_L.samples),
        },
        "weights": list(bf.phi_L.weights),
    }


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bisemikit", description="Bisemistructure computations with JSON I/O.")
    parser.add_argument("--version", action="version", version=f"bisemikit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text, func):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("-o", "--output", help="write the JSON result here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("decompose", "pivot-free LDU and triangular pair of a square matrix", cmd_decompose)
    p.add_argument("input", help="matrix as JSON rows or CSV ('-' for stdin)")
    p.add_argument("--rule", choices=("delta-left", "delta-sqrt"), default="delta-left")
    p.add_argument("--backend", choices=("rational", "complex"), default="rational")
    p.add_argument("--order", choices=("row", "column"), default="row")

    p = add("bipoint", "algebraic bipoint of two source tuples", cmd_bipoint)
    p.add_argument("right", help="JSON list of right sources")
    p.add_argument("left", help="JSON list of left sources")
    p.add_argument("--backend", choices=("rational", "complex"), default="rational")

    p = add("inner", "staged inner product of a right and a left vector", cmd_inner)
    p.add_argument("right", help="JSON list: the right vector")
    p.add_argument("left", help="JSON list: the left vector")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="diag")
    p.add_argument("--stage", choices=[s.value for s in Stage], default="internal")
    p.add_argument("--metric", help="JSON (0,2) metric matrix for the internal stage")
    p.add_argument("--backend", choices=("rational", "complex"), default="complex")

    p = add("hopf", "Hopf axiom report for a finite group bisemialgebra", cmd_hopf)
    p.add_argument("--group", default="z2", help=f"one of {', '.join(GROUPS)} or table:<file>")
    p.add_argument("--backend", choices=("rational", "complex"), default="rational")
    p.add_argument("--star", action="store_true", help="also check the *-involution (complex backend)")
    p.add_argument("--samples", type=_positive, default=100)
    p.add_argument("--seed", type=int, default=None)

    p = add("check", "seeded conformance report for a structure kind", cmd_check)
    p.add_argument("--structure", choices=KINDS, required=True)
    p.add_argument("--backend", choices=("rational", "integer", "complex"), default="rational")
    p.add_argument("--samples", type=_positive, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--laws", help="comma-separated law names overriding the kind's table")

    p = add("transform", "L1-1 value and the B_L p_L transform of sampled bifunctions", cmd_transform)
    p.add_argument("input", help="JSON {samples_R, samples_L, weights}")
    p.add_argument("--bound", type=float, default=float("inf"))
    return parser


def _emit(result: dict, output) -> None:
    text = json.dumps(to_jsonable(result), indent=2) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        result = args.func(args)
    except UsageError as exc:
        print(f"bisemikit {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        _emit({"error": exc.error, "detail": exc.detail, "location": exc.location}, None)
        return 1
    _emit(result, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
