"""Command line interface.

Five subcommands: ``repcheck``, ``orbit``, ``basis``, ``object`` and
``selftest``.  Descriptor files are JSON; small values (an element, a
point) can be passed inline or as ``@path``.  Exit code 0 means every
check passed, 1 means some check failed, 2 means the input was bad.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bases import (
    active_transform,
    change_of_basis,
    coordinate_representation_check,
    gram_schmidt,
    is_g_basis,
    passive_transform,
    standard_coordinates,
    vector_coordinates,
)
from .descriptors import (
    basis_from_descriptor,
    basis_to_descriptor,
    element_from_descriptor,
    element_to_descriptor,
    group_from_descriptor,
    load_json,
    object_from_descriptor,
    object_to_descriptor,
    point_from_descriptor,
    representation_from_descriptor,
)
from .errors import (
    BasiskitError,
    DependentInput,
    EnumerationCapExceeded,
    InfeasibleExhaustive,
    MembershipError,
    NotInOrbit,
    NullVector,
    ParseError,
)
from .groups import AffineTransform
from .matrices import vec_eq, vec_max_diff
from .objects import (
    invariance_check,
    object_orbit,
    object_orbit_well_defined_check,
    representative,
    transform_object,
    vector_space_axioms_check,
)
from .reports import CheckLine, RunReport
from .representations import (
    check_axioms,
    check_variance,
    classify,
    inverse_law_check,
    orbit,
    orbit_well_defined_check,
)
from .scalars import EXACT, approx
from .selftest import run_selftest

__all__ = ["main"]


def _inline_or_file(value: str):
    if value.startswith("@"):
        return load_json(value[1:])
    try:
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise ParseError(f"inline value is not valid JSON: {exc}") from exc


def _backend_override(args):
    if getattr(args, "exact", False):
        return EXACT
    if getattr(args, "approx", False):
        return approx(args.tolerance)
    return None


def _add_common(p, report=True, backend=True, sampling=False):
    if backend:
        mode = p.add_mutually_exclusive_group()
        mode.add_argument(
            "--exact", action="store_true", help="force the exact rational backend"
        )
        mode.add_argument(
            "--approx", action="store_true", help="force the float backend"
        )
        p.add_argument(
            "--tolerance",
            type=float,
            default=1e-9,
            help="comparison tolerance for the float backend (default 1e-9)",
        )
    if sampling:
        p.add_argument(
            "--sample",
            choices=["auto", "exhaustive", "sampled"],
            default="auto",
            help="work plan for the law checks (default auto)",
        )
        p.add_argument("--samples", type=int, default=1000)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument(
            "--cap",
            type=int,
            default=100_000,
            help="enumeration cap for closures and orbits",
        )
    if report:
        p.add_argument("--report", choices=["text", "json"], default="text")


def _settings_echo(args) -> dict:
    """The flags that shaped this run, echoed for reproducibility."""
    if getattr(args, "exact", False):
        backend = "exact"
    elif getattr(args, "approx", False):
        backend = "approx"
    else:
        backend = "default"
    settings = {"backend": backend}
    for key in ("tolerance", "sample", "samples", "seed", "cap"):
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def _emit(report: RunReport, args) -> int:
    report.data["settings"] = _settings_echo(args)
    if args.report == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return 0 if report.passed else 1


def _cmd_repcheck(args) -> int:
    rep = representation_from_descriptor(
        load_json(args.input), _backend_override(args), args.tolerance, args.cap
    )
    report = RunReport("repcheck")
    report.add_verdict(
        "axioms", check_axioms(rep, args.sample, args.samples, args.seed)
    )
    report.add_verdict(
        "inverse-law", inverse_law_check(rep, args.sample, args.samples, args.seed)
    )
    variance = check_variance(rep, args.sample, args.samples, args.seed)
    if rep.variance_claim is None:
        variance_ok = variance.verdict != "neither"
        expected = "covariant or contravariant"
    else:
        variance_ok = getattr(variance, rep.variance_claim)
        expected = rep.variance_claim
    report.add(
        CheckLine(
            "variance",
            passed=variance_ok,
            mode=variance.mode,
            checked=variance.checked,
            counterexample=variance.homomorphism_witness
            if not variance_ok
            else None,
            detail=f"verdict {variance.verdict}, expected {expected}",
        )
    )
    try:
        summary = classify(rep)
        report.data["classification"] = {
            "side": rep.side,
            "variance": summary.variance.verdict,
            "kernel_size": len(summary.kernel),
            "effective": summary.effective,
            "transitive": summary.transitive,
            "single_transitive": summary.single_transitive,
            "uniqueness_agrees": summary.uniqueness_agrees,
        }
    except BasiskitError as exc:
        report.data["classification"] = f"not classified: {exc}"
    return _emit(report, args)


def _cmd_orbit(args) -> int:
    rep = representation_from_descriptor(
        load_json(args.input), _backend_override(args), args.tolerance, args.cap
    )
    report = RunReport("orbit")
    if args.point is not None:
        point = point_from_descriptor(_inline_or_file(args.point), rep.carrier)
        result = orbit(rep, point, cap=args.cap)
        report.data["base"] = point
        report.data["size"] = len(result.points)
        report.data["points"] = list(result.points)
        report.data["witnesses"] = [
            {"point": p, "element": g} for p, g in result.witnesses
        ]
    try:
        partition = orbit_well_defined_check(rep)
    except InfeasibleExhaustive as exc:
        if args.point is None:
            raise
        report.data["partition"] = f"not checked: {exc}"
    else:
        report.add_verdict("orbit-partition", partition)
        report.data["orbit_count"] = len(partition.orbits)
        report.data["orbit_sizes"] = [len(points) for points in partition.orbits]
    return _emit(report, args)


def _cmd_basis(args) -> int:
    report = RunReport(f"basis {args.action}")
    override = _backend_override(args)
    if args.action == "transform":
        b = basis_from_descriptor(load_json(args.input), override, args.tolerance)
        group = group_from_descriptor(
            load_json(args.group), b.space.backend, args.tolerance
        )
        g = element_from_descriptor(_inline_or_file(args.element), group)
        mover = active_transform if args.mode == "active" else passive_transform
        moved = mover(b, g)
        report.data["input"] = b
        report.data["element"] = g
        report.data["mode"] = args.mode
        report.data["result"] = moved
        if args.mode == "active":
            # moving the vectors and the basis together must leave every
            # displacement's components alone
            backend = b.space.backend
            payload = g.payload
            linear = payload.linear if isinstance(payload, AffineTransform) else payload
            n = b.space.dim
            probes = [
                tuple(
                    backend.one() if i == k else backend.zero() for i in range(n)
                )
                for k in range(n)
            ]
            probes.append(tuple(backend.one() for _ in range(n)))
            worst = 0.0
            failure = None
            for v in probes:
                before = vector_coordinates(v, b).components
                after = vector_coordinates(linear.matvec(v), moved).components
                if not backend.is_exact:
                    worst = max(worst, vec_max_diff(before, after))
                if not vec_eq(before, after, backend):
                    failure = (v, before, after)
                    break
            report.add(
                CheckLine(
                    "coordinates-preserved",
                    passed=failure is None,
                    checked=len(probes),
                    counterexample=failure,
                    residual=None if backend.is_exact else worst,
                )
            )
    elif args.action == "change":
        b1 = basis_from_descriptor(load_json(args.source), override, args.tolerance)
        b2 = basis_from_descriptor(load_json(args.target), override, args.tolerance)
        group = group_from_descriptor(
            load_json(args.group), b1.space.backend, args.tolerance
        )
        try:
            a = change_of_basis(b1, b2, group)
        except NotInOrbit as exc:
            report.add(
                CheckLine("connected", passed=False, detail=str(exc))
            )
            return _emit(report, args)
        report.add(CheckLine("connected", passed=True))
        moved = passive_transform(b1, a)
        report.add(
            CheckLine(
                "transport-verified",
                passed=moved.eq(b2),
                detail="passive transform of the source reproduces the target",
            )
        )
        report.data["element"] = a
    elif args.action == "gram-schmidt":
        payload = load_json(args.input)
        signature = payload.get("signature", None)
        vectors = payload.get("vectors", None)
        if signature is None or vectors is None:
            raise ParseError("gram-schmidt input needs 'signature' and 'vectors'")
        try:
            result = gram_schmidt(vectors, tuple(signature), args.tolerance)
        except (DependentInput, NullVector) as exc:
            report.add(
                CheckLine(
                    "orthonormalised",
                    passed=False,
                    detail=f"{type(exc).__name__} at input index {exc.index}",
                )
            )
            return _emit(report, args)
        gcheck = is_g_basis(result)
        report.add(
            CheckLine(
                "orthonormalised",
                passed=gcheck.passed,
                residual=gcheck.residual,
                detail=gcheck.detail,
            )
        )
        report.data["result"] = result
    elif args.action == "standard-coords":
        b = basis_from_descriptor(load_json(args.input), override, args.tolerance)
        ref = basis_from_descriptor(load_json(args.reference), override, args.tolerance)
        sc = standard_coordinates(b, ref)
        report.data["grid"] = sc.grid
        report.data["identity"] = sc.is_identity()
    else:  # coordrep
        group = group_from_descriptor(
            load_json(args.group), override, args.tolerance, args.cap
        )
        result = coordinate_representation_check(
            group, samples=args.samples, seed=args.seed
        )
        report.add_verdict("coordinate-composition", result.composition)
        report.add_verdict("coordinate-effectiveness", result.effectiveness)
    return _emit(report, args)


def _cmd_object(args) -> int:
    obj = object_from_descriptor(
        load_json(args.input), _backend_override(args), args.tolerance
    )
    report = RunReport("object")
    report.data["object"] = obj
    report.data["representative"] = list(representative(obj))
    group = None
    if args.group is not None:
        group = group_from_descriptor(
            load_json(args.group), obj.anchor.space.backend, args.tolerance, args.cap
        )
    if args.element is not None:
        if group is None:
            raise ParseError("--element needs --group for context")
        g = element_from_descriptor(_inline_or_file(args.element), group)
        moved = transform_object(obj, g)
        report.data["result"] = moved
        report.data["result_representative"] = list(representative(moved))
        report.add_verdict("invariance", invariance_check(obj, g))
    elif group is not None and group.store is not None:
        worst = 0.0
        total = 0.0
        failed = None
        checked = 0
        for g in group.elements():
            verdict = invariance_check(obj, g)
            checked += 1
            worst = max(worst, verdict.residual_max)
            total += verdict.residual_max
            if not verdict.passed and failed is None:
                failed = verdict.counterexample
        report.add(
            CheckLine(
                "invariance",
                passed=failed is None,
                mode="stored-elements",
                checked=checked,
                counterexample=failed,
                residual=worst if not obj.anchor.space.backend.is_exact else None,
            )
        )
        if not obj.anchor.space.backend.is_exact and checked:
            report.data["residuals"] = {"max": worst, "mean": total / checked}
    if args.axioms:
        if group is None:
            raise ParseError("--axioms needs --group for sampling elements")
        report.add_verdict(
            "vector-space-axioms",
            vector_space_axioms_check(
                obj.functor, obj.anchor, group, samples=args.samples, seed=args.seed
            ),
        )
    if args.orbit:
        if group is None or group.store is None:
            raise ParseError("--orbit needs --group with stored elements")
        result = object_orbit(obj, group, cap=args.cap)
        report.add_verdict(
            "orbit-well-defined", object_orbit_well_defined_check(obj, group)
        )
        report.data["orbit_size"] = len(result.points)
        report.data["orbit"] = list(result.points)
    return _emit(report, args)


def _cmd_selftest(args) -> int:
    report = run_selftest(seed=args.seed, samples=args.samples, tolerance=args.tolerance)
    return _emit(report, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="basiskit",
        description="Checks for group representations, bases and geometrical objects.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("repcheck", help="verify representation laws from a descriptor")
    p.add_argument("--input", required=True, help="representation descriptor path")
    _add_common(p, sampling=True)
    p.set_defaults(func=_cmd_repcheck)

    p = sub.add_parser("orbit", help="orbits and the partition property")
    p.add_argument("--input", required=True, help="representation descriptor path")
    p.add_argument("--point", help="carrier point, inline JSON or @path")
    _add_common(p, sampling=True)
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser("basis", help="basis transformations and checks")
    basis_sub = p.add_subparsers(dest="action", required=True)

    q = basis_sub.add_parser("transform", help="move a basis by a group element")
    q.add_argument("--input", required=True, help="basis descriptor path")
    q.add_argument("--group", required=True, help="group descriptor path")
    q.add_argument("--element", required=True, help="element, inline JSON or @path")
    q.add_argument("--mode", choices=["active", "passive"], default="passive")
    _add_common(q)
    q.set_defaults(func=_cmd_basis, action="transform")

    q = basis_sub.add_parser("change", help="solve for the element joining two bases")
    q.add_argument("--source", required=True, help="starting basis descriptor path")
    q.add_argument("--target", required=True, help="target basis descriptor path")
    q.add_argument("--group", required=True, help="group descriptor path")
    _add_common(q)
    q.set_defaults(func=_cmd_basis, action="change")

    q = basis_sub.add_parser(
        "gram-schmidt", help="orthonormalise vectors against a diagonal metric"
    )
    q.add_argument(
        "--input",
        required=True,
        help="path to JSON with 'signature' and 'vectors'",
    )
    q.add_argument("--tolerance", type=float, default=1e-9)
    q.add_argument("--report", choices=["text", "json"], default="text")
    q.set_defaults(func=_cmd_basis, action="gram-schmidt")

    q = basis_sub.add_parser(
        "standard-coords", help="coordinates of a basis against a reference"
    )
    q.add_argument("--input", required=True, help="basis descriptor path")
    q.add_argument("--reference", required=True, help="reference basis descriptor path")
    _add_common(q)
    q.set_defaults(func=_cmd_basis, action="standard-coords")

    q = basis_sub.add_parser(
        "coordrep", help="coordinate transformation behaves as a representation"
    )
    q.add_argument("--group", required=True, help="group descriptor path")
    q.add_argument("--samples", type=int, default=100)
    q.add_argument("--seed", type=int, default=42)
    q.add_argument("--cap", type=int, default=100_000)
    _add_common(q)
    q.set_defaults(func=_cmd_basis, action="coordrep")

    p = sub.add_parser("object", help="transform objects and check invariance")
    p.add_argument("--input", required=True, help="object descriptor path")
    p.add_argument("--group", help="group descriptor path")
    p.add_argument("--element", help="element, inline JSON or @path")
    p.add_argument("--orbit", action="store_true", help="list the object's orbit")
    p.add_argument(
        "--axioms",
        action="store_true",
        help="check the vector space laws at this object's anchor",
    )
    _add_common(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cap", type=int, default=100_000)
    p.set_defaults(func=_cmd_object)

    p = sub.add_parser("selftest", help="run the built-in deterministic battery")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=60)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--report", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, MembershipError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EnumerationCapExceeded as exc:
        # the inputs were fine, the work ran over its declared budget
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except BasiskitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
