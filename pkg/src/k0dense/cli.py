"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 infinite-dimensional algebra.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import catalog
from .abelian import (
    BoundExceeded,
    InfiniteGroup,
    InfinitelyMany,
    enumerate_subgroups,
    group_from_json,
    quotient,
    subgroup_generated,
    subgroups_containing,
)
from .cartan import InfiniteDimensional, QuiverAlgebra, QuiverError, dense_resolving_count, enumeration_count
from .excat import (
    VARIANTS,
    ExactCatPresentation,
    IncompleteSES,
    PresentationError,
    box,
    classify,
    g_membership,
    generator_image,
    k0,
    verify_bijection,
)
from .intlinalg import IntMatrix, snf

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INFINITE_DIM = 0, 1, 2, 3
SAMPLE_BOUND = 2
SAMPLE_LIMIT = 12
CROSS_CHECK_ORDER = 10**4


class InputError(Exception):
    pass


def load_json(path: str):
    """Read a JSON input; names of bundled files resolve to package data."""
    p = Path(path)
    try:
        if p.exists():
            text = p.read_text()
        else:
            bundled = resources.files("k0dense") / "data" / p.name
            if not bundled.is_file():
                raise InputError(f"{path}: no such file")
            text = bundled.read_text()
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _matrix_from_json(data) -> IntMatrix:
    cols = None
    if isinstance(data, dict):
        cols = data.get("cols")
        data = data.get("matrix")
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError("expected a matrix as a list of rows")
    if not data and cols is None:
        raise InputError("an empty matrix needs an explicit column count")
    try:
        return IntMatrix.from_rows(data, cols=cols)
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad matrix: {exc}") from exc


def cmd_snf(args) -> int:
    A = _matrix_from_json(load_json(args.file))
    sf = snf(A)
    _emit(args, {
        "S": sf.S.tolist(), "U": sf.U.tolist(), "V": sf.V.tolist(),
        "invariant_factors": list(sf.invariant_factors),
    }, [
        "S =", str(sf.S), "U =", str(sf.U), "V =", str(sf.V),
        "invariant factors: " + ", ".join(map(str, sf.invariant_factors)),
    ])
    return EXIT_OK


def _read_group(path):
    try:
        return group_from_json(load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad group file: {exc}") from exc


def cmd_group(args) -> int:
    G, gens = _read_group(args.file)
    H = subgroup_generated(G, gens)
    payload = {
        "group": str(G), "torsion": list(G.torsion), "free_rank": G.free_rank,
        "order": G.order(), "finitely_many_subgroups": G.is_finite,
        "generated_subgroup": H.to_json(),
    }
    lines = [
        f"group: {G}",
        f"torsion: {list(G.torsion)}  free rank: {G.free_rank}",
        f"order: {G.order() if G.is_finite else 'infinite'}",
        f"finitely many subgroups: {'yes' if G.is_finite else 'no'}",
        f"subgroup generated by the listed generators: {H} (quotient {quotient(G, H)})",
    ]
    if args.list:
        if not G.is_finite:
            lines.append("subgroups: infinitely many")
            payload["subgroups"] = "infinitely many"
        else:
            subs = enumerate_subgroups(G)
            payload["subgroups"] = [S.to_json() for S in subs]
            lines.append(f"{len(subs)} subgroups")
            lines += [f"  {i}: {S}  order {S.order()}" for i, S in enumerate(subs)]
    _emit(args, payload, lines)
    return EXIT_OK


def _read_presentation(path) -> ExactCatPresentation:
    try:
        return ExactCatPresentation.from_json(load_json(path))
    except (PresentationError, AttributeError, TypeError) as exc:
        raise InputError(f"bad presentation: {exc}") from exc


def _report_lines(P, report) -> list[str]:
    lines = [f"verification at bound {report.bound}: {'PASS' if report.passed else 'FAIL'}"]
    for c in report.checks:
        where = "" if c.class_index is None else f" class {c.class_index}"
        lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}{where}"
                     + (f": {c.detail}" if c.detail else ""))
    return lines


def cmd_classify(args) -> int:
    P = _read_presentation(args.file)
    k = k0(P)
    N = generator_image(P, k)
    Q = quotient(k.group, N)
    payload = {
        "k0": {"group": str(k.group), "torsion": list(k.group.torsion),
               "free_rank": k.group.free_rank},
        "generator_image": str(N),
        "quotient": {"group": str(Q), "torsion": list(Q.torsion), "free_rank": Q.free_rank},
    }
    lines = [
        f"indecomposables: {', '.join(P.indecomposables)} ({len(P.ses_list)} SES listed)",
        f"K0: {k.group}",
        f"generator image: {N}",
        f"K0 / generator image: {Q}",
    ]
    try:
        classes = classify(P, args.variant)
    except InfinitelyMany as exc:
        payload["status"] = "infinitely many"
        payload["count"] = None
        lines.append(f"status: infinitely many dense resolving subcategories "
                     f"(quotient has free rank {exc.free_rank})")
        _emit(args, payload, lines)
        return EXIT_OK

    sample = SAMPLE_BOUND if args.bound is None else args.bound
    objs = box(P.rank, sample)
    payload["status"] = "finite"
    payload["count"] = len(classes)
    payload["classes"] = []
    lines.append(f"{len(classes)} dense resolving subcategories (equivalently, dense coresolving)")
    for i, cls in enumerate(classes):
        members = [v for v in objs if g_membership(P, cls, v, k)]
        payload["classes"].append({
            "subgroup": cls.subgroup.lattice.tolist(),
            "index": cls.subgroup.index(),
            "sample_members": [list(v) for v in members],
        })
        shown = ", ".join(P.describe(v) for v in members[:SAMPLE_LIMIT])
        more = f", ... ({len(members)} in all)" if len(members) > SAMPLE_LIMIT else ""
        lines.append(f"class {i}: subgroup {cls.subgroup}, index {cls.subgroup.index()} in K0")
        lines.append(f"  members with multiplicities <= {sample}: {shown}{more}")

    code = EXIT_OK
    if args.bound is not None:
        report = verify_bijection(P, args.bound, classes)
        payload["verification"] = report.to_json()
        lines += _report_lines(P, report)
        code = EXIT_OK if report.passed else EXIT_VERIFY
    _emit(args, payload, lines)
    return code


def cmd_verify(args) -> int:
    P = _read_presentation(args.file)
    try:
        report = verify_bijection(P, args.bound)
    except InfinitelyMany as exc:
        _emit(args, {"status": "infinitely many", "free_rank": exc.free_rank},
              [f"status: infinitely many classes; nothing to verify ({exc})"])
        return EXIT_OK
    _emit(args, report.to_json(), _report_lines(P, report))
    return EXIT_OK if report.passed else EXIT_VERIFY


def _read_quiver(path) -> QuiverAlgebra:
    try:
        return QuiverAlgebra.from_json(load_json(path))
    except (QuiverError, AttributeError, TypeError) as exc:
        raise InputError(f"bad quiver: {exc}") from exc


def cmd_cartan(args) -> int:
    Q = _read_quiver(args.file)
    try:
        rep = dense_resolving_count(Q)
    except InfiniteDimensional as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.json:
            print(json.dumps({"status": "infinite-dimensional", "cycle": list(exc.cycle)}, indent=2))
        return EXIT_INFINITE_DIM
    cross = enumeration_count(rep, CROSS_CHECK_ORDER)
    payload = rep.to_json()
    payload["enumeration_count"] = cross
    lines = [
        "Cartan matrix:", str(rep.matrix),
        f"determinant: {rep.determinant}",
        "elementary divisors: " + ", ".join(map(str, rep.invariant_factors)),
        f"cokernel: {rep.cokernel}",
        f"count: {rep.count if rep.finite else 'INFINITE'}",
    ]
    if cross is not None:
        lines.append(f"count by subgroup enumeration: {cross}")
    _emit(args, payload, lines)
    return EXIT_OK if cross is None or cross == rep.count else EXIT_VERIFY


def cmd_singularity(args) -> int:
    try:
        if args.all:
            rows = catalog.full_table(args.max_n)
        else:
            if args.type is None:
                raise InputError("give --type or --all")
            rows = [catalog.entry(args.type, args.n)]
    except catalog.CatalogError as exc:
        raise InputError(str(exc)) from exc
    data = [r.to_json() for r in rows]
    lines = ["type\tn\tK0(mod R)\tcount\texpected\tagrees"]
    lines += [f"{d['type']}\t{'' if d['n'] is None else d['n']}\t{d['k0']}\t{d['count']}\t"
              f"{d['expected']}\t{'yes' if d['agrees'] else 'NO'}" for d in data]
    _emit(args, {"rows": data}, lines)
    return EXIT_OK if all(d["agrees"] for d in data) else EXIT_VERIFY


def _parse_vector(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad designated element {text!r}") from exc


def cmd_quotient_classify(args) -> int:
    G, gens = _read_group(args.file)
    if args.designated:
        try:
            gens = [G.element(_parse_vector(t)) for t in args.designated]
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    N = subgroup_generated(G, gens)
    Q = quotient(G, N)
    payload = {"group": str(G), "designated_span": str(N), "quotient": str(Q)}
    lines = [f"group: {G}", f"designated span: {N}", f"quotient: {Q}"]
    try:
        subs = subgroups_containing(G, N)
    except InfinitelyMany as exc:
        payload["status"] = "infinitely many"
        lines.append(f"status: infinitely many subgroups (quotient has free rank {exc.free_rank})")
        _emit(args, payload, lines)
        return EXIT_OK
    payload["status"] = "finite"
    payload["subgroups"] = [S.to_json() for S in subs]
    lines.append(f"{len(subs)} subgroups containing the designated elements")
    lines += [f"  {i}: {S}  index {S.index()}" for i, S in enumerate(subs)]
    _emit(args, payload, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k0dense",
        description="Grothendieck groups and dense resolving subcategories.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("group", help="invariants of a finitely generated abelian group")
    p.add_argument("file")
    p.add_argument("--list", action="store_true", help="enumerate all subgroups")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("classify", help="dense classes of an exact category presentation")
    p.add_argument("file")
    p.add_argument("--variant", choices=VARIANTS, default="resolving")
    p.add_argument("--bound", type=int, help="also verify the correspondence up to this bound")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="brute-force check of the correspondence")
    p.add_argument("file")
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cartan", help="Cartan matrix and dense resolving count of a quiver algebra")
    p.add_argument("file")
    p.set_defaults(func=cmd_cartan)

    p = sub.add_parser("singularity", help="simple surface singularity table")
    p.add_argument("--type", choices=catalog.TYPES + ("d_n_even", "d_n_odd"))
    p.add_argument("--n", type=int)
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-n", type=int, default=10)
    p.set_defaults(func=cmd_singularity)

    p = sub.add_parser("quotient-classify", help="subgroups containing designated elements")
    p.add_argument("file")
    p.add_argument("--designated", action="append", metavar="X1,X2,...",
                   help="coordinates of a designated element; repeat for several")
    p.set_defaults(func=cmd_quotient_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, IncompleteSES, BoundExceeded, InfiniteGroup) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
