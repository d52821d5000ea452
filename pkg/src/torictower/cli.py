"""Command-line surface: one document in, one report out.

Commands: build, fan, map-to-proj, base-change, lc-check, local-model,
volume, degree, random, verify.  Documents and reports are canonical JSON
with integers (and rationals) as decimal strings.  Exit codes: 0 success,
1 violations, 2 usage or parse error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .documents import (
    Report,
    TowerDocumentError,
    emit_tower,
    encode_int,
    encode_rational,
    parse_tower,
    random_tower,
    report_from_outcome,
)
from .lattice import DEFAULT_MAX_DIM, DEFAULT_MAX_RAYS, LatticeError, ResourceCapError
from .polytope import ProjectiveDivisorData, relative_degree_on_P, relative_volume_on_P
from .tower import (
    CurveGermData,
    base_change_to_curve,
    build_model,
    lc_place_transfer_check,
    local_model_at,
    projective_model,
)
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _read_input(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fan_document(fan):
    rays = list(fan.all_rays)
    index = {r: i for i, r in enumerate(rays)}
    return {
        "ambient_dim": encode_int(fan.ambient_dim),
        "rays": [[encode_int(x) for x in r] for r in rays],
        "maximal_cones": [
            [encode_int(index[g]) for g in cone.generators] for cone in fan.maximal_cones
        ],
    }


def _emit_report(args, report, start):
    report.elapsed_ms = (time.monotonic() - start) * 1000.0
    _write_output(args.output, report.to_json(include_timing=args.timing))
    return EXIT_OK if report.ok() else EXIT_VIOLATIONS


def _divisor_data_from_json(text):
    import json

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TowerDocumentError(f"malformed document: {exc.msg} (line {exc.lineno})") from None
    if not isinstance(doc, dict):
        raise TowerDocumentError("document root must be an object")
    try:
        coeffs = tuple(Fraction(c) for c in doc.get("hyperplane_coefficients", []))
        return ProjectiveDivisorData(
            fiber_dim=int(doc["fiber_dim"]),
            hyperplane_coefficients=coeffs,
            has_vertical=bool(doc.get("vertical", False)),
            polarization=int(doc.get("polarization", 1)),
        )
    except KeyError as exc:
        raise TowerDocumentError(f"missing field {exc.args[0]!r}") from None
    except (ValueError, ZeroDivisionError) as exc:
        raise TowerDocumentError(f"bad divisor data: {exc}") from None


def _check_dim_cap(spec, max_dim):
    ambient = spec.base_dim + spec.depth - 1
    if ambient > max_dim:
        raise ResourceCapError(f"tower ambient dimension {ambient} exceeds cap {max_dim}")


def cmd_build(args, start):
    spec = parse_tower(_read_input(args.input))
    _check_dim_cap(spec, args.max_dim)
    model = build_model(spec, max_rays=args.max_rays)
    report = Report(command="build", seed=args.seed)
    report.data = {
        "base_dim": encode_int(spec.base_dim),
        "depth": encode_int(spec.depth),
        "levels": [
            {
                "ambient_dim": encode_int(level.fan.ambient_dim),
                "ray_count": encode_int(len(level.fan.all_rays)),
                "maximal_cone_count": encode_int(len(level.fan.maximal_cones)),
            }
            for level in model.levels
        ],
    }
    report.checked = report.passed = len(model.levels)
    return _emit_report(args, report, start)


def cmd_fan(args, start):
    spec = parse_tower(_read_input(args.input))
    _check_dim_cap(spec, args.max_dim)
    model = build_model(spec, max_rays=args.max_rays)
    if args.level is not None and not 1 <= args.level <= model.depth:
        raise TowerDocumentError(f"level {args.level} out of range 1..{model.depth}")
    levels = range(model.depth) if args.level is None else [args.level - 1]
    report = Report(command="fan", seed=args.seed)
    report.data = {
        "levels": [
            {"level": encode_int(i + 1), **_fan_document(model.levels[i].fan)}
            for i in levels
        ]
    }
    report.checked = report.passed = len(report.data["levels"])
    return _emit_report(args, report, start)


def cmd_map_to_proj(args, start):
    spec = parse_tower(_read_input(args.input))
    _check_dim_cap(spec, args.max_dim)
    model = build_model(spec, max_rays=args.max_rays)
    proj = projective_model(spec)
    rays = model.levels[-1].fan.all_rays
    supported = [proj.fan.supports(r) for r in rays]
    report = Report(command="map-to-proj", seed=args.seed)
    report.data = {
        "fan": _fan_document(proj.fan),
        "identification": [[encode_int(x) for x in row] for row in proj.identification],
        "boundary_coefficients": {
            str(list(r)): encode_rational(proj.boundary.coefficient(r))
            for r in proj.fan.all_rays
        },
        "level_d_rays_in_support": [
            {"ray": [encode_int(x) for x in r], "supported": ok}
            for r, ok in zip(rays, supported)
        ],
    }
    report.checked = len(rays)
    report.passed = sum(supported)
    for r, ok in zip(rays, supported):
        if not ok:
            report.violations.append(
                {"kind": "support", "detail": f"ray {list(r)} outside |P|"}
            )
    return _emit_report(args, report, start)


def cmd_base_change(args, start):
    spec = parse_tower(_read_input(args.input))
    try:
        orders = tuple(int(c) for c in args.orders.split(",")) if args.orders else ()
    except ValueError:
        raise TowerDocumentError(f"bad --orders value {args.orders!r}") from None
    germ = CurveGermData(orders=orders, on_boundary=args.on_boundary)
    changed = base_change_to_curve(spec, germ)
    _write_output(args.output, emit_tower(changed))
    return EXIT_OK


def cmd_lc_check(args, start):
    spec = parse_tower(_read_input(args.input))
    _check_dim_cap(spec, args.max_dim)
    outcome = lc_place_transfer_check(
        spec, samples=args.samples, seed=args.seed, max_rays=args.max_rays
    )
    report = report_from_outcome("lc-check", outcome, seed=args.seed)
    return _emit_report(args, report, start)


def cmd_local_model(args, start):
    spec = parse_tower(_read_input(args.input))
    _check_dim_cap(spec, args.max_dim)
    model = build_model(spec, max_rays=args.max_rays)
    if model.depth < 2:
        raise TowerDocumentError("tower has depth 1: no fibration level to classify")
    if args.level is not None and not 2 <= args.level <= model.depth:
        raise TowerDocumentError(f"level {args.level} out of range 2..{model.depth}")
    levels = range(2, model.depth + 1) if args.level is None else [args.level]
    report = Report(command="local-model", seed=args.seed)
    data_levels = []
    for level in levels:
        fan = model.levels[level - 1].fan
        cones = []
        seen = set()
        for top in fan.maximal_cones:
            for face in top.faces():
                if face.generators in seen:
                    continue
                seen.add(face.generators)
                cones.append(face)
        cones.sort(key=lambda c: (len(c.generators), c.generators))
        entries = []
        for cone in cones:
            lm = local_model_at(model, level, cone)
            entry = {
                "rays": [[encode_int(x) for x in g] for g in cone.generators],
                "kind": lm.kind,
            }
            if lm.node_character is not None:
                entry["node_character"] = {
                    "alpha_exponents": [encode_int(x) for x in lm.node_character.alpha_exponents],
                    "t_exponents": [encode_int(x) for x in lm.node_character.t_exponents],
                }
            entries.append(entry)
            report.checked += 1
            report.passed += 1
        data_levels.append({"level": encode_int(level), "cones": entries})
    report.data = {"levels": data_levels}
    return _emit_report(args, report, start)


def cmd_degree(args, start):
    data = _divisor_data_from_json(_read_input(args.input))
    report = Report(command="degree", seed=args.seed, checked=1, passed=1)
    report.data = {"relative_degree": encode_rational(relative_degree_on_P(data))}
    return _emit_report(args, report, start)


def cmd_volume(args, start):
    data = _divisor_data_from_json(_read_input(args.input))
    report = Report(command="volume", seed=args.seed, checked=1, passed=1)
    report.data = {"relative_volume": encode_rational(relative_volume_on_P(data))}
    return _emit_report(args, report, start)


def cmd_random(args, start):
    spec = random_tower(args.p, args.d, args.max_exponent, args.seed)
    _write_output(args.output, emit_tower(spec))
    return EXIT_OK


def cmd_verify(args, start):
    outcome = run_suite(args.suite, seed=args.seed, samples=args.samples)
    report = report_from_outcome(f"verify:{args.suite}", outcome, seed=args.seed)
    return _emit_report(args, report, start)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="torictower",
        description="Exact combinatorial engine for special toric towers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        if output:
            p.add_argument("--output", default=None, help="output path ('-' for stdout)")
        p.add_argument("--seed", type=int, default=0, help="random seed")
        p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="dimension cap")
        p.add_argument("--max-rays", type=int, default=DEFAULT_MAX_RAYS, help="ray-count cap")
        p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")

    p = sub.add_parser("build", help="build the tower model and summarize its levels")
    p.add_argument("--input", default=None, help="tower document ('-' for stdin)")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("fan", help="print level fans")
    p.add_argument("--input", default=None)
    p.add_argument("--level", type=int, default=None, help="single level to print")
    common(p)
    p.set_defaults(func=cmd_fan)

    p = sub.add_parser("map-to-proj", help="the congruent projective-space model")
    p.add_argument("--input", default=None)
    common(p)
    p.set_defaults(func=cmd_map_to_proj)

    p = sub.add_parser("base-change", help="base change the tower to a curve germ")
    p.add_argument("--input", default=None)
    p.add_argument("--orders", required=True, help="comma-separated vanishing orders c_1,..,c_p")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--on-boundary", dest="on_boundary", action="store_true")
    group.add_argument("--off-boundary", dest="on_boundary", action="store_false")
    common(p)
    p.set_defaults(func=cmd_base_change)

    p = sub.add_parser("lc-check", help="lc-place transfer check")
    p.add_argument("--input", default=None)
    p.add_argument("--samples", type=int, default=50)
    common(p)
    p.set_defaults(func=cmd_lc_check)

    p = sub.add_parser("local-model", help="classify torus orbits per level")
    p.add_argument("--input", default=None)
    p.add_argument("--level", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_local_model)

    p = sub.add_parser("degree", help="relative degree on a projective fiber")
    p.add_argument("--input", default=None)
    common(p)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("volume", help="relative volume on a projective fiber")
    p.add_argument("--input", default=None)
    common(p)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("random", help="generate a seeded random tower document")
    p.add_argument("--p", type=int, required=True, help="base dimension")
    p.add_argument("--d", type=int, required=True, help="tower depth")
    p.add_argument("--max-exponent", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--samples", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        return args.func(args, start)
    except (TowerDocumentError, LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
