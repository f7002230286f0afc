"""Command-line entry point: ``greenkit <command> ...``.

Exit codes: 0 all checks passed, 1 some check failed, 2 bad input,
3 a size bound was exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from pathlib import Path

from .cohomology import DEFAULT_COCHAIN_BOUND, cohomology_green_functor
from .corpus import load_group
from .errors import InputError, InvariantBreach, ResourceError
from .exactla import Field, Matrix
from .frobenius import frobenius_dimension, frobenius_suite, induced_frobenius
from .groups import DEFAULT_SUBGROUP_BOUND, Group, Subgroup, format_cycles
from .instances import (algebra_family, burnside_green_functor, convolution_green_functor, end_green_functor,
                        fixed_point_green_functor, function_algebra, induced_algebra, k_decat_gsets, marks)
from .mackey import check_external_roundtrip, check_green_axioms, check_mackey_axioms
from .monadicity import verify_equivalence
from .repcat import Induction, Rep, check_rectification, random_rep
from .report import Report

INSTANCES = ("burnside", "fixed-points", "cohomology", "end", "convolution")


# -- suites (also used by the acceptance tests) -------------------------------------------

def subgroup_by_index(G: Group, index: int) -> Subgroup:
    classes = G.classes
    if not 0 <= index < len(classes):
        raise InputError(f"subgroup index {index} out of range 0..{len(classes) - 1}")
    return classes[index].representative


def rectification_suite(G: Group, field: Field, seed: int, dim_cap: int = 4, samples: int = 3) -> Report:
    rng = random.Random(seed)
    rep = Report("rectification", G.name, field.tag, seed, {"dim_cap": dim_cap, "samples": samples})
    for k, H in enumerate(G.lattice):
        ind = Induction(G, H)
        xs_h = [random_rep(H.as_group, field, rng, dim_cap) for _ in range(samples)]
        xs_g = [random_rep(G, field, rng, dim_cap) for _ in range(samples)]
        check_rectification(ind, xs_h, xs_g, report=rep, tag=f"H{k}:")
    return rep.finish()


def frobenius_report(G: Group, H: Subgroup, field: Field, seed: int, dim_cap: int = 3) -> tuple[Report, int]:
    rep = Report("frobenius", G.name, field.tag, seed, {"subgroup": list(H.elements), "dim_cap": dim_cap})
    frobenius_suite(G, H, field, random.Random(seed), dim_cap, rep)
    dim = frobenius_dimension(induced_frobenius(Induction(G, H), field))
    rep.check("dim A(i) = index", "monoidal dimension of A(i) equals the index",
              dim == field.scalar(H.index_in()), {"dimension": str(dim), "index": H.index_in()})
    return rep.finish(), dim


def monadicity_report(G: Group, H: Subgroup, field: Field, seed: int, dim_cap: int = 2) -> Report:
    rep = Report("monadicity", G.name, field.tag, seed, {"subgroup": list(H.elements), "dim_cap": dim_cap})
    verify_equivalence(G, H, field, random.Random(seed), pairs=3, dim_cap=dim_cap, report=rep)
    return rep.finish()


def build_instance(instance: str, G: Group, field: Field, prime: int = 2, max_degree: int = 3,
                   subgroup: Subgroup | None = None, cochain_bound: int = DEFAULT_COCHAIN_BOUND):
    """Functor and pairing for one named instance."""
    H = subgroup if subgroup is not None else _default_subgroup(G)
    if instance == "burnside":
        M, P = burnside_green_functor(G)
    elif instance == "fixed-points":
        M, P = fixed_point_green_functor(function_algebra(G, H, field))
    elif instance == "cohomology":
        M, P, _ = cohomology_green_functor(G, prime, max_degree, cochain_bound)
    elif instance == "end":
        M, P = end_green_functor(Rep.permutation(G, H, field))
    elif instance == "convolution":
        M, P = convolution_green_functor(algebra_family(induced_algebra(G, H, field)))
    else:
        raise InputError(f"unknown instance {instance!r}; choose from {', '.join(INSTANCES)}")
    return M, P


def _default_subgroup(G: Group) -> Subgroup:
    classes = G.classes
    return classes[1].representative if len(classes) > 1 else classes[0].representative


def green_report(instance: str, G: Group, field: Field, prime: int = 2, max_degree: int = 3,
                 subgroup: Subgroup | None = None, cochain_bound: int = DEFAULT_COCHAIN_BOUND) -> Report:
    M, P = build_instance(instance, G, field, prime, max_degree, subgroup, cochain_bound)
    params = {"instance": instance, "ring": M.ring, "ranks": M.ranks}
    if instance == "cohomology":
        params.update(prime=prime, max_degree=max_degree)
    elif instance != "burnside":
        params["subgroup"] = list((subgroup or _default_subgroup(G)).elements)
    rep = Report("check-green", G.name, M.field.tag, None, params)
    check_mackey_axioms(M, rep)
    check_green_axioms(M, P, rep)
    return rep.finish()


def dress_report(G: Group) -> Report:
    M, P = burnside_green_functor(G)
    rep = Report("dress-roundtrip", G.name, M.field.tag, None, {"pairing": "burnside"})
    check_external_roundtrip(P, rep)
    return rep.finish()


# -- tables -------------------------------------------------------------------------------

def _class_labels(G: Group) -> list[str]:
    return [f"{k}:{c.representative.order}" for k, c in enumerate(G.classes)]


def marks_table(G: Group) -> tuple[list[str], Matrix]:
    return _class_labels(G), marks(G)


def _csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def format_marks(G: Group, fmt: str) -> str:
    labels, m = marks_table(G)
    entries = m.to_strings()
    if fmt == "json":
        return json.dumps({"group": G.name, "columns": labels, "rows": [f"G/{x}" for x in labels],
                           "marks": entries}, sort_keys=True, indent=2) + "\n"
    return _csv([["set"] + labels] + [[f"G/{labels[i]}"] + entries[i] for i in range(len(labels))])


def format_burnside(G: Group, fmt: str) -> str:
    ring = k_decat_gsets(G)
    labels = _class_labels(G)
    r = ring.rank
    rows = []
    for a in range(r):
        for b in range(r):
            for k, v in sorted(ring.product(a, b).items()):
                rows.append([labels[a], labels[b], labels[k], str(v)])
    if fmt == "json":
        return json.dumps({"group": G.name, "basis": labels,
                           "products": [dict(zip(("left", "right", "term", "coefficient"), x)) for x in rows]},
                          sort_keys=True, indent=2) + "\n"
    return _csv([["left", "right", "term", "coefficient"]] + rows)


def format_subgroups(G: Group) -> str:
    rows = [["index", "order", "conjugates", "generators"]]
    for k, c in enumerate(G.classes):
        h = c.representative
        gens = " ".join(format_cycles(G.elements[g]) for g in h.generators) or "()"
        rows.append([str(k), str(h.order), str(len(c)), gens])
    return _csv(rows)


# -- argument handling ------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q or fp:<p> (default q)")
    common.add_argument("--seed", type=int, default=0, help="seed for random samples (default 0)")
    common.add_argument("--dim-cap", type=int, default=None, help="largest random sample dimension")
    common.add_argument("--json", type=Path, default=None, help="write the JSON report here ('-' for stdout)")
    common.add_argument("--bound", type=int, default=DEFAULT_SUBGROUP_BOUND, help="largest accepted group order")
    common.add_argument("--format", choices=("csv", "json"), default="csv", help="table format")

    p = argparse.ArgumentParser(prog="greenkit", description="Exact checks for induction, Mackey and Green functors.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("subgroups", parents=[common], help="list subgroup classes with their indices")
    s.add_argument("group")
    s = sub.add_parser("marks", parents=[common], help="table of marks")
    s.add_argument("group")
    s = sub.add_parser("burnside", parents=[common], help="Burnside ring structure constants")
    s.add_argument("group")
    s = sub.add_parser("check-green", parents=[common], help="Mackey and Green axioms for an instance")
    s.add_argument("instance", choices=INSTANCES)
    s.add_argument("group")
    s.add_argument("--prime", type=int, default=2)
    s.add_argument("--max-degree", type=int, default=3)
    s.add_argument("--subgroup", type=int, default=None, help="subgroup class index for k[G/H], End, A(i)")
    s.add_argument("--cochain-bound", type=int, default=DEFAULT_COCHAIN_BOUND)
    s = sub.add_parser("frobenius", parents=[common], help="A(i) suite for one inclusion")
    s.add_argument("group")
    s.add_argument("subgroup", type=int)
    s = sub.add_parser("monadicity", parents=[common], help="modules and comodules over A(i)")
    s.add_argument("group")
    s.add_argument("subgroup", type=int)
    s = sub.add_parser("rectification", parents=[common], help="adjunction and base-change checks")
    s.add_argument("group")
    s = sub.add_parser("dress-roundtrip", parents=[common], help="internal/external pairing round trip")
    s.add_argument("group")
    return p


def _emit(rep: Report, args, out) -> int:
    print(rep.summary(), file=out)
    for c in rep.failures[:10]:
        print(f"  fail: {c.id} [{c.anchor}]", file=out)
    if args.json is not None:
        text = rep.to_json()
        if str(args.json) == "-":
            out.write(text)
        else:
            args.json.write_text(text)
    return 0 if rep.passed else 1


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        field = Field.parse(args.field)
        G = load_group(args.group, max_order=args.bound)
        if G.order > args.bound:
            raise ResourceError(f"|G| = {G.order} exceeds the bound {args.bound}")
        cmd = args.command
        if cmd == "subgroups":
            out.write(format_subgroups(G))
            return 0
        if cmd == "marks":
            out.write(format_marks(G, args.format))
            return 0
        if cmd == "burnside":
            out.write(format_burnside(G, args.format))
            return 0
        if cmd == "check-green":
            H = subgroup_by_index(G, args.subgroup) if args.subgroup is not None else None
            if args.max_degree < 0:
                raise InputError("max degree must be non-negative")
            Field.parse(f"fp:{args.prime}")
            rep = green_report(args.instance, G, field, args.prime, args.max_degree, H, args.cochain_bound)
            return _emit(rep, args, out)
        if cmd == "frobenius":
            H = subgroup_by_index(G, args.subgroup)
            rep, dim = frobenius_report(G, H, field, args.seed, args.dim_cap or 3)
            print(f"dim A(i) = {dim}", file=out)
            return _emit(rep, args, out)
        if cmd == "monadicity":
            H = subgroup_by_index(G, args.subgroup)
            return _emit(monadicity_report(G, H, field, args.seed, args.dim_cap or 2), args, out)
        if cmd == "rectification":
            return _emit(rectification_suite(G, field, args.seed, args.dim_cap or 4), args, out)
        if cmd == "dress-roundtrip":
            return _emit(dress_report(G), args, out)
        raise InputError(f"unknown command {cmd}")  # pragma: no cover
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ResourceError as e:
        print(f"resource bound exceeded: {e}", file=sys.stderr)
        return 3
    except InvariantBreach as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
