"""Command-line interface.

Exit status: 0 decisive yes, 1 decisive no, 2 undecided within limits,
3 bad input. ``--json`` prints ``{"verdict", "witnesses", "limits", "timings"}``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import covers, factorize, nerve
from .errors import (
    ActionNotFree,
    BasepointOutOfRange,
    BudgetExceeded,
    Cat1Error,
    EndpointMismatch,
    IndexNotFinite,
    InfiniteOrUnknownPi1,
    NotPathConnected,
    ParseError,
    SubgroupObstruction,
    UnknownResult,
    ValidationError,
)
from .fincat import FinCat, find_isomorphism
from .homotopy import abelianization, pi0, pi1_presentation, todd_coxeter
from .lifting import classify
from .textio import (
    dump_category,
    dump_functor,
    format_word,
    parse_word,
    read_category,
    read_functor,
)
from .verdict import DEFAULT_LIMITS, FALSE, TRUE, UNKNOWN, Limits

EXIT = {TRUE: 0, FALSE: 1, UNKNOWN: 2}
INPUT_ERROR = 3


@dataclass
class Outcome:
    status: str
    lines: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)


def _combine(statuses) -> str:
    statuses = list(statuses)
    if UNKNOWN in statuses:
        return UNKNOWN
    return FALSE if FALSE in statuses else TRUE


def _limits(args) -> Limits:
    return Limits(
        coset_limit=args.limit,
        zigzag_bound=args.zigzag_bound,
        functor_budget=args.functor_budget,
    )


def _is_functor_file(path: str) -> bool:
    with open(path) as fh:
        for line in fh:
            s = line.split("#", 1)[0].strip()
            if s:
                return s.startswith("functor ")
    return False


def _object(C: FinCat, name: Optional[str], default: Optional[int]) -> int:
    if name is None:
        return 0 if default is None else default
    if name in C.obj_names:
        return C.obj_index(name)
    raise BasepointOutOfRange(f"no object named {name!r}")


def _subgroup(args, n_gens: int) -> tuple:
    return tuple(parse_word(w, n_gens) for w in (args.subgroup or []))


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


# ----------------------------------------------------------------------
# verbs
# ----------------------------------------------------------------------

def cmd_validate(args, limits):
    if _is_functor_file(args.input):
        ff = read_functor(args.input)
        F = ff.functor
        return Outcome(TRUE, [f"valid functor {ff.name}: {F.source.n_obj} objects -> {F.target.n_obj} objects"],
                       {"kind": "functor", "name": ff.name})
    cf = read_category(args.input)
    C = cf.category
    return Outcome(TRUE, [f"valid category: {C.n_obj} objects, {C.n_mor} morphisms"],
                   {"kind": "category", "objects": C.n_obj, "morphisms": C.n_mor})


def cmd_pi0(args, limits):
    C = read_category(args.input).category
    part = pi0(C)
    comps = [[C.obj_names[o] for o in part.members(k)] for k in range(part.n_classes)]
    lines = [f"components: {part.n_classes}"] + ["  " + " ".join(c) for c in comps]
    return Outcome(TRUE, lines, {"components": comps})


def cmd_pi1(args, limits):
    cf = read_category(args.input)
    C = cf.category
    b = _object(C, args.base, cf.basepoint)
    P = pi1_presentation(C, b)
    G = P.presentation
    ab = abelianization(G)
    lines = [f"generators: {G.n_gens}, relators: {len(G.relators)}, abelianization: {ab.describe()}"]
    for k, m in enumerate(P.generators, 1):
        lines.append(f"  {k} = {C.mor_names[m]}")
    for r in G.relators:
        lines.append(f"  rel {format_word(r)}")
    wit = {"generators": [C.mor_names[m] for m in P.generators],
           "relators": [list(r) for r in G.relators],
           "abelianization": {"torsion": list(ab.torsion), "free_rank": ab.free_rank}}
    v = todd_coxeter(G, (), limits.coset_limit)
    if v.is_true:
        lines.append(f"order: {v.payload.index}")
        wit["order"] = v.payload.index
    elif ab.free_rank > 0:
        lines.append("order: infinite")
        wit["order"] = "infinite"
    else:
        lines.append(f"order: unknown (coset limit {limits.coset_limit})")
        wit["order"] = None
    return Outcome(TRUE, lines, wit)


def cmd_classify(args, limits):
    F = read_functor(args.input).functor
    rep = classify(F, limits)
    return Outcome(_combine(v.status for v in rep.entries.values()), rep.lines(),
                   {k: v.status for k, v in rep.entries.items()})


def _emit_cover(args, cov: covers.CoverWithBasepoint, lines: list, wit: dict) -> list:
    text = dump_category(cov.total, cov.basepoint)
    if args.output:
        cat_path = args.output + ".cat"
        fun_path = args.output + ".fun"
        _write(cat_path, text)
        here = os.path.dirname(os.path.abspath(fun_path))
        _write(fun_path, dump_functor(cov.projection, "projection",
                                      os.path.relpath(os.path.abspath(cat_path), here),
                                      os.path.relpath(os.path.abspath(args.input), here)))
        lines.append(f"wrote {cat_path} and {fun_path}")
        wit["files"] = [cat_path, fun_path]
    else:
        lines += text.rstrip("\n").split("\n")
        wit["category_file"] = text
    return lines


def cmd_cover(args, limits):
    cf = read_category(args.input)
    C = cf.category
    b = _object(C, args.base, cf.basepoint)
    P = pi1_presentation(C, b)
    H = _subgroup(args, P.presentation.n_gens)
    cov = covers.cover_from_subgroup(C, b, H, limits)
    rep = cov.report()
    lines = [f"# cover: {rep['objects']} objects, {rep['morphisms']} morphisms, "
             f"sheets {cov.cosets.index}, connected {rep['connected']}"]
    wit = dict(rep, sheets=cov.cosets.index, subgroup=[list(w) for w in H])
    return Outcome(TRUE, _emit_cover(args, cov, lines, wit), wit)


def cmd_universal_cover(args, limits):
    cf = read_category(args.input)
    C = cf.category
    b = _object(C, args.base, cf.basepoint)
    cov = covers.universal_cover(C, b, limits)
    rep = cov.report()
    lines = [f"# universal cover: {rep['objects']} objects, {rep['morphisms']} morphisms, "
             f"sheets {cov.cosets.index}"]
    wit = dict(rep, sheets=cov.cosets.index)
    return Outcome(TRUE, _emit_cover(args, cov, lines, wit), wit)


def cmd_quotient(args, limits):
    cf = read_category(args.input)
    C = cf.category
    autos = [read_functor(p).functor for p in (args.by or [])]
    A = covers.action_from_automorphisms(C, autos)
    Q, q = covers.quotient_by_free_action(C, A)
    lines = [f"# quotient by a group of order {A.order}: {Q.n_obj} objects, {Q.n_mor} morphisms"]
    wit = {"group_order": A.order, "objects": Q.n_obj, "morphisms": Q.n_mor}
    if args.compare:
        D = read_category(args.compare).category
        iso = find_isomorphism(Q, D, limits.functor_budget) is not None
        lines.append(f"# isomorphic to {args.compare}: {iso}")
        wit["isomorphic"] = iso
        status = TRUE if iso else FALSE
    else:
        status = TRUE
    text = dump_category(Q)
    if args.output:
        _write(args.output, text)
        lines.append(f"wrote {args.output}")
    else:
        lines += text.rstrip("\n").split("\n")
    return Outcome(status, lines, wit)


def cmd_lift(args, limits):
    pf = read_functor(args.cover)
    ff = read_functor(args.input)
    p, f = pf.functor, ff.functor
    x0 = _object(f.source, args.base, ff.source_basepoint)
    E = p.source
    if args.cover_base is not None:
        e0 = _object(E, args.cover_base, None)
    else:
        over = [e for e in E.objects if p.obj_map[e] == f.obj_map[x0]]
        if not over:
            raise EndpointMismatch("empty fiber over the image of the basepoint")
        e0 = over[0]
    cov = covers.CoverWithBasepoint(E, p, e0, p.obj_map[e0])
    try:
        g = covers.lift_through_covering(cov, f, x0, e0, limits)
    except SubgroupObstruction as exc:
        return Outcome(FALSE, [f"no lift: {exc}", f"obstruction word: {format_word(exc.word)}"],
                       {"obstruction": list(exc.word)})
    # paths in the written file are relative to where it lands
    base = os.path.dirname(os.path.abspath(args.output or args.input))
    src = os.path.join(os.path.dirname(args.input), ff.source_path)
    tgt = os.path.join(os.path.dirname(args.cover), pf.source_path)
    text = dump_functor(g, "lift", os.path.relpath(os.path.abspath(src), base),
                        os.path.relpath(os.path.abspath(tgt), base))
    lines = [f"# lift sends {f.source.obj_names[x0]} to {E.obj_names[e0]}"]
    if args.output:
        _write(args.output, text)
        lines.append(f"wrote {args.output}")
    else:
        lines += text.rstrip("\n").split("\n")
    return Outcome(TRUE, lines, {"obj_map": [E.obj_names[o] for o in g.obj_map]})


def cmd_factorize(args, limits):
    ff = read_functor(args.input)
    r = factorize.mapping_category(ff.functor, limits)
    rep = factorize.verify_factorization(r, limits)
    E = r.category
    lines = [f"mapping category: {E.n_obj} objects, {E.n_mor} morphisms"] + rep.lines()
    wit = {"objects": E.n_obj, "morphisms": E.n_mor, **{k: v.status for k, v in rep.entries.items()}}
    if args.output:
        os.makedirs(args.output, exist_ok=True)
        here = os.path.abspath(args.output)
        src = os.path.relpath(os.path.abspath(os.path.join(os.path.dirname(args.input), ff.source_path)), here)
        tgt = os.path.relpath(os.path.abspath(os.path.join(os.path.dirname(args.input), ff.target_path)), here)
        _write(os.path.join(args.output, "mapping.cat"), dump_category(E))
        _write(os.path.join(args.output, "j.fun"), dump_functor(r.j, "j", src, "mapping.cat"))
        _write(os.path.join(args.output, "p.fun"), dump_functor(r.p, "p", "mapping.cat", tgt))
        lines.append(f"wrote mapping.cat, j.fun, p.fun to {args.output}")
    return Outcome(_combine(v.status for v in rep.entries.values()), lines, wit)


def cmd_nerve_kan(args, limits):
    if _is_functor_file(args.input):
        p = read_functor(args.input).functor
        v = nerve.kan_fibration_truncated(p)
        if v.is_true:
            return Outcome(TRUE, ["nerve of the functor is a Kan fibration (dimensions <= 3)"], {})
        h = v.payload["horn"]
        return Outcome(FALSE, [f"unfillable horn: dimension {h.n}, missing face {h.k}"],
                       {"dimension": h.n, "missing_face": h.k})
    C = read_category(args.input).category
    h = nerve.first_unfillable_horn(nerve.nerve_truncated(C))
    if h is None:
        return Outcome(TRUE, ["nerve is Kan (dimensions <= 3)"], {})
    return Outcome(FALSE, [f"unfillable horn: dimension {h.n}, missing face {h.k}"],
                   {"dimension": h.n, "missing_face": h.k, "faces": list(h.faces)})


def cmd_roundtrip(args, limits):
    cf = read_category(args.input)
    C = cf.category
    b = _object(C, args.base, cf.basepoint)
    P = pi1_presentation(C, b)
    H = _subgroup(args, P.presentation.n_gens)
    v = covers.classification_roundtrip(C, b, H, limits)
    lines = [f"roundtrip: {v}"]
    wit = {}
    if v.is_true:
        lines.append(f"index {v.payload['index']}, cover objects {v.payload['objects']}")
        wit = {"index": v.payload["index"], "objects": v.payload["objects"]}
    return Outcome(v.status, lines, wit)


VERBS = {
    "validate": (cmd_validate, "check a category or functor file"),
    "pi0": (cmd_pi0, "path components"),
    "pi1": (cmd_pi1, "fundamental group presentation"),
    "classify": (cmd_classify, "cofibration / fibration / covering / weak equivalence report"),
    "cover": (cmd_cover, "cover from a subgroup of the fundamental group"),
    "universal-cover": (cmd_universal_cover, "universal cover"),
    "quotient": (cmd_quotient, "quotient by a free group action"),
    "lift": (cmd_lift, "lift a functor through a covering"),
    "factorize": (cmd_factorize, "factor through the mapping category"),
    "nerve-kan": (cmd_nerve_kan, "horn filling in the truncated nerve"),
    "roundtrip": (cmd_roundtrip, "subgroup -> cover -> subgroup round trip"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cat1", description="Homotopy computations on finite categories.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--limit", type=int, default=DEFAULT_LIMITS.coset_limit,
                        help="coset enumeration limit (default %(default)s)")
    common.add_argument("--zigzag-bound", type=int, default=DEFAULT_LIMITS.zigzag_bound,
                        help="maximum zigzag length searched (default %(default)s)")
    common.add_argument("--functor-budget", type=int, default=DEFAULT_LIMITS.functor_budget,
                        help="functor search node budget (default %(default)s)")
    sub = ap.add_subparsers(dest="verb", required=True)
    for verb, (_, help_text) in VERBS.items():
        sp = sub.add_parser(verb, parents=[common], help=help_text)
        sp.add_argument("input", help="category (.cat) or functor (.fun) file")
        if verb in ("pi1", "cover", "universal-cover", "roundtrip", "lift"):
            sp.add_argument("--base", help="basepoint object name")
        if verb in ("cover", "roundtrip"):
            sp.add_argument("--subgroup", action="append",
                            help="subgroup generator as signed generator indices, e.g. \"1 1\"; repeatable")
        if verb in ("cover", "universal-cover"):
            sp.add_argument("-o", "--output", help="write PREFIX.cat and PREFIX.fun instead of printing")
        if verb == "quotient":
            sp.add_argument("--by", action="append", help="automorphism functor file; repeatable")
            sp.add_argument("--compare", help="category file to compare the quotient with")
            sp.add_argument("-o", "--output", help="write the quotient category here")
        if verb == "lift":
            sp.add_argument("--cover", required=True, help="covering functor file")
            sp.add_argument("--cover-base", help="object of the cover's total category over the basepoint")
            sp.add_argument("-o", "--output", help="write the lift here")
        if verb == "factorize":
            sp.add_argument("-o", "--output", help="directory for mapping.cat, j.fun, p.fun")
    return ap


def run(argv=None) -> tuple:
    """Return ``(exit_code, output_text)``."""
    args = build_parser().parse_args(argv)
    limits = _limits(args)
    handler = VERBS[args.verb][0]
    t0 = time.perf_counter()
    try:
        out = handler(args, limits)
        code = EXIT[out.status]
    except (ParseError, ValidationError, BasepointOutOfRange, NotPathConnected, EndpointMismatch,
            ActionNotFree, OSError) as exc:
        out = Outcome("error", [f"error: {exc}"], {"error": type(exc).__name__})
        code = INPUT_ERROR
    except (IndexNotFinite, InfiniteOrUnknownPi1, UnknownResult, BudgetExceeded) as exc:
        out = Outcome(UNKNOWN, [f"unknown: {exc}"], {"error": type(exc).__name__})
        code = EXIT[UNKNOWN]
    except Cat1Error as exc:
        out = Outcome("error", [f"error: {exc}"], {"error": type(exc).__name__})
        code = INPUT_ERROR
    elapsed = time.perf_counter() - t0
    if args.json:
        text = json.dumps({
            "verdict": out.status,
            "witnesses": out.witnesses,
            "limits": limits.as_dict(),
            "timings": {"seconds": round(elapsed, 6)},
        }, indent=2, sort_keys=True, default=str)
    else:
        text = "\n".join(out.lines)
    return code, text


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code == INPUT_ERROR and not ("--json" in (argv or sys.argv)) else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
