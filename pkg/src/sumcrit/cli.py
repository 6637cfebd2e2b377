"""Command-line interface: ``sumcrit <command> [flags]``.

Every command prints one JSON report with a ``"command"`` field (or a
plain ``key: value`` listing with ``--human``).  Exit codes: 0 success, 1 a
property violation or internal defect, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence

from . import io
from .criticality import classify, is_k_critical
from .errors import BadParams, DefectError, InputError
from .families import FamilyParams, generate_family
from .geometry import convex_hull
from .sumsets import check_bound, freiman_bound, refined_bound, sum_with_fold
from .triangulation import (
    classify_shape,
    f_vector,
    h_from_shelling,
    h_vector,
    is_stacked,
    is_totally_stackable,
    is_unimodular,
    placing_triangulation,
    verify_triangulation,
)
from .verify import census_2d, run_checks


def _inputs(**sets) -> dict:
    return {name: {"sha256_16": io.digest(P), "size": len(P), "dim": P.ambient_dim} for name, P in sets.items()}


def _k(value: str) -> int:
    k = int(value)
    if k < 1:
        raise argparse.ArgumentTypeError("k must be at least 1")
    return k


def cmd_hull(args) -> dict:
    S = io.load(args.file)
    P = convex_hull(S)
    rep = {
        "inputs": _inputs(points=S),
        "dim": P.dim,
        "vertex_count": len(P.vertices),
        "facet_count": len(P.facets),
        "face_counts": [len(P.faces(j)) for j in range(P.dim + 1)] if P.dim else [1],
    }
    if args.emit_points:
        rep["vertices"] = P.vertices
    return rep


def cmd_sumset(args) -> dict:
    A, B = io.load(args.a), io.load(args.b)
    S = sum_with_fold(A, B, args.k)
    rep = {"inputs": _inputs(A=A, B=B), "k": args.k, "cardinality": len(S), "bound": check_bound(A, B, args.k).as_dict()}
    if args.emit_points:
        rep["points"] = S
    return rep


def cmd_bound(args) -> dict:
    A, B = io.load(args.a), io.load(args.b)
    report = check_bound(A, B, args.k)
    d = convex_hull(B).dim
    rep = {"inputs": _inputs(A=A, B=B), "k": args.k, "dim": d, "mr": report.as_dict()}
    if B.issubset(A):
        T, sh = placing_triangulation(B)
        h = h_from_shelling(T, sh)
        rep["h_vector"] = list(h)
        rep["refined_bound"] = refined_bound(d, args.k, len(A), h)
    if args.k == 1 and A == B:
        rep["freiman_bound"] = freiman_bound(d, len(A))
    rep["violation"] = report.violation or rep.get("refined_bound", 0) > report.lhs_cardinality
    return rep


def _order(text: Optional[str]):
    if not text:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError("--order must be a comma-separated list of point indices") from None


def cmd_triangulate(args) -> dict:
    B = io.load(args.file)
    T, sh = placing_triangulation(B, _order(args.order))
    check = verify_triangulation(B, T)
    return {
        "inputs": _inputs(points=B),
        "dim": T.dim,
        "cells": [list(c) for c in T.cells],
        "shelling_order": list(sh.order),
        "shelling_indices": list(sh.indices),
        "valid": check.ok,
        "reason": check.reason,
        "violation": not check.ok,
    }


def cmd_hvector(args) -> dict:
    B = io.load(args.file)
    T, sh = placing_triangulation(B, _order(args.order))
    h = h_vector(T)
    stacked = is_stacked(T)
    return {
        "inputs": _inputs(points=B),
        "dim": T.dim,
        "f_vector": list(f_vector(T)),
        "h_vector": list(h),
        "h_from_shelling": list(h_from_shelling(T, sh)),
        "stacked": stacked.as_dict(),
        "unimodular": is_unimodular(T),
    }


def cmd_stackable(args) -> dict:
    B = io.load(args.file)
    shape = classify_shape(B)
    return {
        "inputs": _inputs(points=B),
        "totally_stackable": is_totally_stackable(B),
        "shape": shape.as_dict(),
    }


def cmd_critical(args) -> dict:
    A, B = io.load(args.a), io.load(args.b)
    return {
        "inputs": _inputs(A=A, B=B),
        "k": args.k,
        "critical": is_k_critical(A, B, args.k),
        "bound": check_bound(A, B, args.k).as_dict(),
    }


def cmd_classify(args) -> dict:
    A, B = io.load(args.a), io.load(args.b)
    v = classify(A, B, audit_k=tuple(range(1, args.k_audit + 1)))
    return {
        "inputs": _inputs(A=A, B=B),
        "critical": v.critical,
        "k_tested": v.k_tested,
        "case": v.case.value,
        "witness": v.witness,
    }


def _offsets(text: Optional[str], case: str) -> tuple:
    if not text:
        return ()
    out = []
    for item in text.split(","):
        parts = item.split(":")
        if case == "v":
            if len(parts) != 2:
                raise BadParams("case v offsets look like h:1/2,v:1/3")
            out.append((parts[0], io.parse_rational(parts[1])))
        elif case in ("ii",) or len(parts) > 1:
            if len(parts) != 2:
                raise BadParams("case ii offsets look like 0:1/3,1/4:0")
            out.append(tuple(io.parse_rational(x) for x in parts))
        else:
            out.append(io.parse_rational(item))
    return tuple(out)


def cmd_generate(args) -> dict:
    heights = tuple(int(h) for h in args.heights.split(",")) if args.heights else ()
    offset_case = args.base_case if args.case == "vi" else args.case
    p = FamilyParams(
        case=args.case,
        dim=args.dim,
        q=args.q,
        ap_len=args.ap_len,
        w=io.parse_rational(args.w),
        heights=heights,
        offsets=_offsets(args.offsets, offset_case),
        base_case=args.base_case,
        midpoints=args.midpoints,
        shear=io.parse_rational(args.shear),
        audit_k=tuple(range(1, args.k_audit + 1)),
    )
    A, B = generate_family(p)
    if args.out_a:
        io.save(A, args.out_a)
    if args.out_b:
        io.save(B, args.out_b)
    return {
        "inputs": _inputs(A=A, B=B),
        "case": args.case,
        "audited_k": list(p.audit_k),
        "A": io.pointset_to_doc(A),
        "B": io.pointset_to_doc(B),
    }


def cmd_verify(args) -> dict:
    seed = int(os.environ.get("SUMCRIT_SEED", args.seed))
    only = args.only.split(",") if args.only else None
    rep = run_checks(seed, args.instances, args.dim_max, args.k_max, only, args.instance)
    rep["seed"] = seed
    if args.exhaustive_2d:
        c = census_2d(max_pairs=args.census_pairs, seed=seed)
        rep["census"] = {
            "pairs": c.pairs,
            "critical": c.critical,
            "cases": dict(sorted(c.cases.items())),
            "mismatches": len(c.mismatches),
        }
        for A, B, msg in c.mismatches:
            rep["violations"].append({"check": "census", "message": msg, "A": A, "B": B,
                                      "reproduce": "sumcrit classify A.json B.json"})
    rep["violation"] = bool(rep["violations"])
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumcrit", description=__doc__.splitlines()[0])
    out = argparse.ArgumentParser(add_help=False)
    fmt = out.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="human", action="store_false", help="JSON report (default)")
    fmt.add_argument("--human", dest="human", action="store_true", help="plain key: value report")
    out.set_defaults(human=False)
    out.add_argument("--timing", action="store_true", help="include elapsed seconds in the report")
    out.add_argument("--emit-points", action="store_true", help="include point lists in the report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hull", parents=[out], help="convex hull summary")
    p.add_argument("file")
    p.set_defaults(func=cmd_hull)

    for name, func, helptext in (
        ("sumset", cmd_sumset, "cardinality of A + kB"),
        ("bound", cmd_bound, "lower bounds for |A + kB|"),
        ("critical", cmd_critical, "decide k-criticality by enumeration"),
    ):
        p = sub.add_parser(name, parents=[out], help=helptext)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--k", type=_k, default=1)
        p.set_defaults(func=func)

    for name, func, helptext in (
        ("triangulate", cmd_triangulate, "placing triangulation and shelling"),
        ("hvector", cmd_hvector, "f- and h-vectors and stackedness"),
    ):
        p = sub.add_parser(name, parents=[out], help=helptext)
        p.add_argument("file")
        p.add_argument("--order", help="placing order as comma-separated point indices")
        p.set_defaults(func=func)

    p = sub.add_parser("stackable", parents=[out], help="total stackability and shape")
    p.add_argument("file")
    p.set_defaults(func=cmd_stackable)

    p = sub.add_parser("classify", parents=[out], help="classify a critical pair")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--k-audit", type=_k, default=3, help="audit against enumeration for k = 1..K")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("generate", parents=[out], help="generate a critical pair of a given case")
    p.add_argument("--case", required=True, choices=["i", "ii", "iii", "iv", "v", "vi"])
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--ap-len", type=int, default=3)
    p.add_argument("--w", default="1")
    p.add_argument("--heights", help="comma-separated vertical multiples (case iii)")
    p.add_argument("--offsets", help="case-specific offsets, e.g. 1/3,1/2 or 0:1/3 or h:1/2")
    p.add_argument("--base-case", default="v", choices=["iii", "iv", "v"])
    p.add_argument("--midpoints", type=int, default=3)
    p.add_argument("--shear", default="0")
    p.add_argument("--k-audit", type=_k, default=3)
    p.add_argument("--out-a")
    p.add_argument("--out-b")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", parents=[out], help="run the property-verification harness")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--dim-max", type=int, default=3)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--exhaustive-2d", action="store_true")
    p.add_argument("--census-pairs", type=int, default=10**5)
    p.add_argument("--only", help="comma-separated subset of checks")
    p.add_argument("--instance", type=int, help="run a single instance index")
    p.set_defaults(func=cmd_verify)
    return parser


def _human(rep: dict, prefix: str = "") -> list:
    lines = []
    for key, val in rep.items():
        if isinstance(val, dict):
            lines.extend(_human(val, f"{prefix}{key}."))
        else:
            lines.append(f"{prefix}{key}: {json.dumps(val)}")
    return lines


def emit(rep: dict, human: bool, stream=None) -> None:
    stream = stream or sys.stdout
    data = io.to_jsonable(rep)
    if human:
        stream.write("\n".join(_human(data)) + "\n")
    else:
        stream.write(json.dumps(data, sort_keys=True) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        rep = args.func(args)
        code = 1 if rep.pop("violation", False) else 0
        rep = {"command": args.command, **rep, "violation": bool(code)}
    except InputError as e:
        rep = {"command": args.command, "error": type(e).__name__, "message": str(e)}
        code = 2
    except DefectError as e:
        rep = {"command": args.command, "error": type(e).__name__, "message": str(e), "violation": True}
        code = 1
    if args.timing:
        rep["elapsed_seconds"] = round(time.perf_counter() - start, 6)
    emit(rep, args.human)
    return code


if __name__ == "__main__":
    sys.exit(main())
