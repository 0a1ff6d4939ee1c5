"""Command-line front end.

Subcommands: ``analyze``, ``bounds``, ``radius``, ``verify`` and ``trace``.
Exit codes: 0 success, 1 usage or parse error, 2 inadmissible spec,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass

import jsonschema
import numpy as np

from . import svg
from .blaschke import BlaschkeProduct
from .bounds import corollary7_window, convexity_radius_check, max_separation, min_separation, zero_radius_lower_bound
from .errors import DegreeCollapse, Inadmissible, PreconditionFailure, SCError, UnwrapFailure
from .mapspec import Kind, MapSpec
from .prevertex import PrevertexSet, solve_prevertices
from .scmap import (
    VertexCounts,
    is_conjugate_symmetric,
    symmetry_condition,
    trace_polygon,
    univalence_bound,
    univalence_bound_symmetric,
    vertex_counts,
    winding_degree,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INADMISSIBLE = 2
EXIT_VERIFY = 3

_POINT = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_PRODUCT = {
    "type": "object",
    "properties": {
        "rotation_deg": {"type": "number", "description": "rotation of the unimodular constant, degrees"},
        "zeros": {"type": "array", "items": _POINT},
    },
    "required": ["rotation_deg", "zeros"],
    "additionalProperties": False,
}

#: input document; angles in degrees
SPEC_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SpecDocument",
    "type": "object",
    "properties": {
        "kind": {"enum": ["interior", "exterior"]},
        "b1": _PRODUCT,
        "b2": _PRODUCT,
    },
    "required": ["kind", "b1", "b2"],
    "additionalProperties": False,
}

_NUM_OR_NULL = {"type": ["number", "null"]}

#: output document; angles in radians
REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "AnalysisReport",
    "type": "object",
    "properties": {
        "admissible": {"type": "boolean"},
        "kind": {"enum": ["interior", "exterior"]},
        "degrees": {
            "type": "object",
            "properties": {"d1": {"type": "integer"}, "d2": {"type": "integer"}},
            "required": ["d1", "d2"],
            "additionalProperties": False,
        },
        "prevertices": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "t": {"type": "number", "description": "radians"},
                    "z": _POINT,
                    "beta": {"type": "number"},
                    "label": {"enum": ["convex", "concave"]},
                },
                "required": ["t", "z", "beta", "label"],
                "additionalProperties": False,
            },
        },
        "counts": {
            "type": ["object", "null"],
            "properties": {k: {"type": "integer"} for k in ("convex", "concave", "a_runs", "b_switches", "c_runs")},
            "additionalProperties": False,
        },
        "winding": {"type": ["integer", "null"]},
        "univalence": {
            "type": ["object", "null"],
            "properties": {
                "sum_abs_beta": {"type": "number"},
                "theorem4_pass": {"type": "boolean"},
                "theorem5_applicable": {"type": "boolean"},
                "theorem5_pass": {"type": ["boolean", "null"]},
            },
            "required": ["sum_abs_beta", "theorem4_pass", "theorem5_applicable", "theorem5_pass"],
            "additionalProperties": False,
        },
        "bounds": {
            "type": "object",
            "properties": {
                "min_sep": _NUM_OR_NULL,
                "max_sep": _NUM_OR_NULL,
                "r_used": {"type": "number"},
                "radius_bound": _NUM_OR_NULL,
            },
            "required": ["min_sep", "max_sep", "r_used", "radius_bound"],
            "additionalProperties": False,
        },
        "convexity_radius_pass": {"type": ["boolean", "null"]},
        "message": {"type": "string"},
    },
    "required": [
        "admissible",
        "kind",
        "degrees",
        "prevertices",
        "counts",
        "winding",
        "univalence",
        "bounds",
        "convexity_radius_pass",
        "message",
    ],
    "additionalProperties": False,
}


class SpecError(ValueError):
    """A spec document that does not parse to a valid pair."""


# ---------------------------------------------------------------- spec documents


def _product_from_doc(doc) -> BlaschkeProduct:
    zeros = tuple(complex(re, im) for re, im in doc["zeros"])
    return BlaschkeProduct(math.radians(doc["rotation_deg"]), zeros)


def parse_spec(doc) -> MapSpec:
    """Validate a SpecDocument and build the pair."""
    try:
        jsonschema.validate(doc, SPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecError(f"invalid spec document: {exc.message}") from None
    try:
        return MapSpec(Kind(doc["kind"]), _product_from_doc(doc["b1"]), _product_from_doc(doc["b2"]))
    except ValueError as exc:
        raise SpecError(str(exc)) from None


def spec_document(spec: MapSpec) -> dict:
    def product(b):
        return {
            "rotation_deg": math.degrees(b.rotation),
            "zeros": [[float(a.real), float(a.imag)] for a in b.zeros],
        }

    return {"kind": spec.kind.value, "b1": product(spec.b1), "b2": product(spec.b2)}


def load_spec(path) -> MapSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}") from None
    return parse_spec(doc)


# ---------------------------------------------------------------- reports


@dataclass(frozen=True)
class AnalysisReport:
    admissible: bool
    kind: str
    degrees: dict
    prevertices: list
    counts: dict | None
    winding: int | None
    univalence: dict | None
    bounds: dict
    convexity_radius_pass: bool | None
    message: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc) -> "AnalysisReport":
        jsonschema.validate(doc, REPORT_SCHEMA)
        return cls(**doc)

    def to_json(self) -> str:
        doc = self.to_dict()
        jsonschema.validate(doc, REPORT_SCHEMA)
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def _winding(spec, samples=4096, rounds=5):
    for _ in range(rounds):
        try:
            return winding_degree(spec, samples)
        except UnwrapFailure:
            samples *= 4
    return None


def _theorem5(pvs: PrevertexSet):
    """``(applicable, pass)`` for the conjugate-symmetric univalence test."""
    if pvs.kind is not Kind.INTERIOR:
        return False, None
    ts, betas = pvs.ts, pvs.betas
    at_plus = np.abs(np.angle(np.exp(1j * ts))) <= 1e-9
    at_minus = np.abs(np.angle(-np.exp(1j * ts))) <= 1e-9
    beta_plus = float(betas[at_plus].sum())
    beta_minus = float(betas[at_minus].sum())
    rest = ~(at_plus | at_minus)
    if max(abs(beta_plus), abs(beta_minus)) > 0.5:
        return False, None
    if not is_conjugate_symmetric(betas[rest], ts[rest]):
        return False, None
    try:
        if not symmetry_condition(pvs):
            return False, None
    except SCError:
        return False, None
    return True, univalence_bound_symmetric(betas[rest], beta_plus, beta_minus, ts[rest])


def _bounds_record(spec: MapSpec) -> dict:
    r = spec.max_zero_modulus
    lo = hi = None
    if spec.d2 == 0 and spec.d1 >= 1:
        lo = min_separation(spec.kind, spec.d1, r)
        hi = max_separation(spec.kind, spec.d1, r)
    radius = zero_radius_lower_bound(spec.kind, spec.d1, spec.d2).r_min if spec.d2 >= 1 else None
    return {"min_sep": lo, "max_sep": hi, "r_used": r, "radius_bound": radius}


def analyze(spec: MapSpec, tol: float = 1e-8) -> tuple[AnalysisReport, PrevertexSet | None]:
    """Everything the library can say about one pair."""
    degrees = {"d1": spec.d1, "d2": spec.d2}
    convexity = convexity_radius_check(spec) if spec.kind is Kind.INTERIOR else None
    base = dict(
        kind=spec.kind.value,
        degrees=degrees,
        winding=_winding(spec),
        bounds=_bounds_record(spec),
        convexity_radius_pass=convexity,
    )
    try:
        pvs = solve_prevertices(spec, tol)
    except (Inadmissible, DegreeCollapse) as exc:
        return AnalysisReport(False, prevertices=[], counts=None, univalence=None, message=str(exc), **base), None
    points = [
        {"t": p.t, "z": [p.z.real, p.z.imag], "beta": p.beta, "label": p.label.value} for p in pvs.points
    ]
    counts: VertexCounts = vertex_counts(pvs, check=False)
    betas = pvs.betas
    applicable, t5 = _theorem5(pvs)
    univ = {
        "sum_abs_beta": float(np.abs(betas).sum()),
        "theorem4_pass": univalence_bound(betas),
        "theorem5_applicable": applicable,
        "theorem5_pass": t5,
    }
    report = AnalysisReport(True, prevertices=points, counts=asdict(counts), univalence=univ, message="", **base)
    return report, pvs


# ---------------------------------------------------------------- commands


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_analyze(args) -> int:
    spec = load_spec(args.spec)
    report, pvs = analyze(spec, args.tol)
    _write(args.out, report.to_json())
    if args.svg:
        trace = trace_polygon(pvs, nodes=args.nodes) if pvs is not None else None
        _write(args.svg, svg.figure(spec, pvs, trace))
    if not report.admissible:
        print(f"inadmissible: {report.message}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    return EXIT_OK


def cmd_bounds(args) -> int:
    kind = Kind(args.kind)
    window = list(corollary7_window(kind, args.n, args.r)) if args.r <= 0.05 else None
    record = {
        "min_sep": min_separation(kind, args.n, args.r),
        "max_sep": max_separation(kind, args.n, args.r),
        "corollary7_window": window,
    }
    print(json.dumps(record, indent=2))
    return EXIT_OK


def cmd_radius(args) -> int:
    bound = zero_radius_lower_bound(Kind(args.kind), args.d1, args.d2)
    print(json.dumps({"kind": bound.kind.value, "d1": bound.d1, "d2": bound.d2, "r_min": bound.r_min}, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import all_passed, run_suites, summary_lines

    if args.trials < 1:
        raise PreconditionFailure("trials must be at least 1")
    results, _ = run_suites(args.seed, args.trials)
    for line in summary_lines(results):
        print(line)
    if all_passed(results):
        return EXIT_OK
    for res in results.values():
        for sample, reason in res.failures:
            print(f"FAILED {res.name}: {reason}")
            if sample is not None:
                doc = {"trial": sample.index, "spec": spec_document(sample.spec)}
                print(json.dumps(doc))
    return EXIT_VERIFY


def cmd_trace(args) -> int:
    spec = load_spec(args.spec)
    try:
        pvs = solve_prevertices(spec)
    except (Inadmissible, DegreeCollapse) as exc:
        print(f"inadmissible: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    trace = trace_polygon(pvs, scale=complex(args.scale_re, args.scale_im), nodes=args.nodes)
    _write(args.svg, svg.polygon_figure(trace))
    record = {
        "vertices": [None if v is None else [v.real, v.imag] for v in trace.vertices],
        "interior_angles": trace.interior_angles,
        "closure_gap": trace.closure_gap,
        "path_error": trace.path_error,
    }
    print(json.dumps(record, indent=2))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sc-blaschke", description="Schwarz-Christoffel maps from Blaschke pairs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log sampler warnings")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="pre-vertices, angles, counts and bounds of one spec")
    a.add_argument("spec")
    a.add_argument("--out", required=True)
    a.add_argument("--svg")
    a.add_argument("--tol", type=float, default=1e-8)
    a.add_argument("--nodes", type=int, default=32)
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bounds", help="separation bounds for n zeros of modulus at most r")
    b.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--r", type=float, required=True)
    b.set_defaults(func=cmd_bounds)

    r = sub.add_parser("radius", help="lower bound on the largest zero modulus")
    r.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    r.add_argument("--d1", type=int, required=True)
    r.add_argument("--d2", type=int, required=True)
    r.set_defaults(func=cmd_radius)

    v = sub.add_parser("verify", help="run the property suites on seeded random specs")
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--trials", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("trace", help="trace the image polygon")
    t.add_argument("spec")
    t.add_argument("--svg", required=True)
    t.add_argument("--scale-re", type=float, default=1.0)
    t.add_argument("--scale-im", type=float, default=0.0)
    t.add_argument("--nodes", type=int, default=32)
    t.set_defaults(func=cmd_trace)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help (0) and on usage errors (EXIT_USAGE)
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR, format="%(message)s")
    try:
        return args.func(args)
    except (SpecError, PreconditionFailure, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
