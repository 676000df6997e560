"""Command-line surface: kernel / prim / classify / check / build-relation /
regulator / verify-corpus.

Exit codes: 0 success, 2 verification mismatch, 3 resource bound exceeded.
All JSON output carries ``"schema": 1`` and renders integers as decimal
strings so consumers never need 64-bit arithmetic.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from multiprocessing import Pool

from .burnside import (
    BurnsideElement,
    SubgroupClassTable,
    deflate,
    inflate,
    induct,
    is_relation,
    multiply,
    restrict,
)
from .catalog import (
    CorpusEntry,
    extended_corpus,
    group_from_file,
    parse_group_spec,
    standard_corpus,
)
from .classify import build_relation as _build_relation
from .classify import classify, primitive_generators, verify_classification
from .errors import BrauerError, ResourceBoundError, ShapeError
from .groups import PermGroup
from .perms import format_cycles, parse_cycles
from .primitivity import PrimStructure
from .regulator import (
    has_critical_subquotient,
    has_nonzero_ordl,
    ord_l_functional,
    regulator_constant_trivial,
)
from .relations import (
    artin_relation,
    coefficient_gcd_at_top,
    is_quasi_elementary,
    kernel_lattice,
    quasi_elementary_primes,
    solomon_relation,
)

SCHEMA = 1


def _emit(payload: dict) -> None:
    payload = {"schema": str(SCHEMA), **payload}
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _load_group(args) -> tuple[PermGroup, dict]:
    if getattr(args, "file", None):
        G = group_from_file(args.file)
        desc = {
            "degree": str(G.degree),
            "generators": [format_cycles(g) for g in G.gens],
        }
    else:
        G = parse_group_spec(args.group)
        desc = {"spec": args.group}
    return G, desc


def _relation_json(theta: BurnsideElement, group_desc: dict) -> dict:
    terms = []
    for i in sorted(theta.coeffs):
        terms.append(
            {
                "class": str(i),
                "order": str(theta.table.class_reps[i].order),
                "coeff": str(theta.coeffs[i]),
            }
        )
    return {"group": group_desc, "terms": terms}


def _relation_from_json(doc: dict) -> BurnsideElement:
    gdesc = doc["group"]
    if "spec" in gdesc:
        G = parse_group_spec(gdesc["spec"])
    else:
        degree = int(gdesc["degree"])
        gens = [parse_cycles(t, degree) for t in gdesc["generators"]]
        G = PermGroup(degree, gens)
    table = SubgroupClassTable(G)
    coeffs: dict[int, int] = {}
    for term in doc["terms"]:
        i = int(term["class"])
        if not 0 <= i < table.n_classes:
            raise ShapeError(f"class index {i} out of range")
        if "order" in term and int(term["order"]) != table.class_reps[i].order:
            raise ShapeError(f"class {i} order mismatch in relation file")
        coeffs[i] = coeffs.get(i, 0) + int(term["coeff"])
    return BurnsideElement(table, coeffs)


# -- verbs ------------------------------------------------------------------


def cmd_kernel(args) -> int:
    G, desc = _load_group(args)
    K = kernel_lattice(G)
    _emit(
        {
            "group": desc,
            "rank": str(K.rank),
            "basis": [_relation_json(b, desc)["terms"] for b in K.basis],
        }
    )
    return 0


def cmd_prim(args) -> int:
    G, desc = _load_group(args)
    ps = PrimStructure(SubgroupClassTable(G))
    inv = ps.invariants
    _emit(
        {
            "group": desc,
            "kernel_rank": str(ps.kernel.rank),
            "imprimitive_rank": str(ps.imprimitive_rank),
            "free_rank": str(inv.free_rank),
            "torsion": [str(t) for t in inv.torsion],
            "invariants": str(inv),
        }
    )
    return 0


def cmd_classify(args) -> int:
    G, desc = _load_group(args)
    case = classify(G)
    _emit(
        {
            "group": desc,
            "tag": case.tag,
            "predicted": str(case.predicted),
            "p": str(case.p) if case.p else None,
        }
    )
    return 0


def cmd_check(args) -> int:
    with open(args.relation, encoding="utf-8") as fh:
        doc = json.load(fh)
    theta = _relation_from_json(doc)
    rel = is_relation(theta)
    imprim = None
    if rel:
        ps = PrimStructure(theta.table)
        imprim = ps.is_imprimitive(theta)
    _emit(
        {
            "is_relation": rel,
            "imprimitive": imprim,
        }
    )
    return 0 if rel else 2


def cmd_build_relation(args) -> int:
    G, desc = _load_group(args)
    table = SubgroupClassTable(G)
    params: dict = {}
    if args.index is not None:
        key = "j" if args.kind == "heisenberg" else "i"
        params[key] = args.index
    theta = _build_relation(args.kind, table, **params)
    doc = {"schema": str(SCHEMA), **_relation_json(theta, desc)}
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    else:
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0


def cmd_regulator(args) -> int:
    with open(args.relation, encoding="utf-8") as fh:
        doc = json.load(fh)
    theta = _relation_from_json(doc)
    rv = regulator_constant_trivial(theta)
    out = {
        "value": str(rv),
        "numerator": str(rv.numerator),
        "denominator": str(rv.denominator),
        "ord": {str(p): str(v) for p, v in rv.ord_map},
    }
    if args.prime:
        out["ord_at_prime"] = str(rv.ord(args.prime))
    _emit(out)
    return 0


# -- corpus verification ----------------------------------------------------

_REG_PRIMES = (2, 3, 5, 7, 11, 13)


def _verify_entry(entry: CorpusEntry) -> dict:
    t0 = time.time()
    res = {
        "spec": entry.spec,
        "order": "",
        "tag": "",
        "predicted": "",
        "computed": "",
        "kernel_rank": "",
        "status": "pass",
        "detail": "",
    }

    def fail(msg: str) -> dict:
        res["status"] = "fail"
        res["detail"] = msg
        res["seconds"] = round(time.time() - t0, 2)
        return res

    try:
        G = parse_group_spec(entry.spec)
        res["order"] = G.order
        case = classify(G)
        res["tag"] = case.tag
        res["predicted"] = str(case.predicted)
        if case.tag != entry.tag or str(case.predicted) != entry.invariants:
            return fail(
                f"classified as {case.tag}/{case.predicted}, "
                f"expected {entry.tag}/{entry.invariants}"
            )
        if entry.prim_optional:
            res["seconds"] = round(time.time() - t0, 2)
            return res

        table = SubgroupClassTable(G)
        K = kernel_lattice(table)
        res["kernel_rank"] = K.rank
        ps = PrimStructure(table)
        res["computed"] = str(ps.invariants)
        if ps.invariants != case.predicted:
            return fail(f"Prim = {ps.invariants}, predicted {case.predicted}")

        gens = primitive_generators(table, case)
        for g in gens:
            if not is_relation(g):
                return fail("case builder output is not a relation")
            if case.predicted != ps.invariants.__class__(0, ()) and all(
                v == 0 for v in ps.prim_class(g)
            ):
                return fail("case builder output is imprimitive")
        from .intlinalg import quotient_invariants

        rows = list(ps.imprimitive_rows) + [g.as_vector() for g in gens]
        span = quotient_invariants(ps.kernel.basis_rows, rows)
        if span.free_rank != 0 or span.torsion:
            return fail(f"builders + imprimitive span misses {span}")

        noncyc = [
            i
            for i in range(table.n_classes - 1)
            if not table.is_cyclic[i]
        ]
        if noncyc:
            artin_relation(table, noncyc[0])  # self-checking

        sol = solomon_relation(table)
        if sol is not None and sol.coeff(table.n_classes - 1) != 1:
            return fail("top coefficient of the induction relation is not 1")
        if not G.is_cyclic():
            g_top = coefficient_gcd_at_top(K)
            if is_quasi_elementary(G):
                p = quasi_elementary_primes(G)[0]
                if g_top != p:
                    return fail(f"top-coefficient gcd {g_top} != {p}")
            elif g_top != 1:
                return fail(f"top-coefficient gcd {g_top} != 1")

        for l in _REG_PRIMES:
            a = has_nonzero_ordl(table, l)
            b = has_critical_subquotient(table, l)
            if a != b:
                return fail(f"regulator criterion split at l={l}: {a} vs {b}")

        if K.rank:
            theta = K.basis[0]
            rv = regulator_constant_trivial(theta)
            prod = regulator_constant_trivial(theta + theta)
            if prod.value != rv.value**2:
                return fail("regulator constant is not multiplicative")
            H = next(
                r
                for r in table.class_reps
                if 1 < r.order < G.order
            )
            h_table = SubgroupClassTable(H.as_group())
            res_theta = restrict(theta, H, h_table)
            if not is_relation(res_theta):
                return fail("restriction broke a relation")
            prod = multiply(theta, table.basis_element(table.class_index(H)))
            if induct(res_theta, table) != prod:
                return fail("Theta * [G/H] != Ind Res Theta")
        for N in G.normal_subgroups:
            if 1 < N.order < G.order:
                Q, phi = G.quotient(N)
                q_table = SubgroupClassTable(Q)
                KQ = kernel_lattice(q_table)
                if KQ.rank:
                    tq = KQ.basis[0]
                    lifted = inflate(tq, phi, table)
                    if not is_relation(lifted):
                        return fail("inflation broke a relation")
                    if deflate(lifted, phi, q_table) != tq:
                        return fail("deflate(inflate(x)) != x")
                    rv1 = regulator_constant_trivial(tq)
                    rv2 = regulator_constant_trivial(lifted)
                    if rv1.value != rv2.value:
                        return fail("regulator constant changed under inflation")
                break
    except ResourceBoundError as exc:
        res["status"] = "resource"
        res["detail"] = str(exc)
    except BrauerError as exc:
        return fail(f"{type(exc).__name__}: {exc}")
    res["seconds"] = round(time.time() - t0, 2)
    return res


def cmd_verify_corpus(args) -> int:
    entries = extended_corpus() if args.extended else standard_corpus()
    if args.parallel and args.parallel > 1:
        with Pool(args.parallel) as pool:
            results = pool.map(_verify_entry, entries)
    else:
        results = [_verify_entry(e) for e in entries]
    npass = 0
    resource = False
    for r in results:
        mark = {"pass": "PASS", "fail": "FAIL", "resource": "BOUND"}[r["status"]]
        line = (
            f"{mark} {r['spec']:28s} order={r['order']!s:5s} "
            f"{r['tag']:12s} prim={r['computed'] or r['predicted']} "
            f"({r['seconds']}s)"
        )
        if r["detail"]:
            line += f"  [{r['detail']}]"
        print(line)
        npass += r["status"] == "pass"
        resource |= r["status"] == "resource"
    print(f"summary: {npass}/{len(results)} groups verified")
    if args.report_dir:
        from .report import write_report

        files = write_report(results, args.report_dir)
        print(f"report: {args.report_dir}: {', '.join(files)}")
    if resource:
        return 3
    return 0 if npass == len(results) else 2


# -- entry point ------------------------------------------------------------


def _add_group_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("group", nargs="?", help="catalog spec, e.g. D8 or sd:C5:C4:2")
    p.add_argument("--file", help="group text file (degree header + cycle lines)")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="brauerrel")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("kernel", help="basis of the relation lattice")
    _add_group_arg(p)
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("prim", help="primitive quotient invariants")
    _add_group_arg(p)
    p.set_defaults(fn=cmd_prim)

    p = sub.add_parser("classify", help="classification case and prediction")
    _add_group_arg(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("check", help="verify a relation JSON file")
    p.add_argument("relation")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("build-relation", help="construct a named relation")
    p.add_argument("kind")
    _add_group_arg(p)
    p.add_argument("--index", type=int, help="j/i parameter for indexed kinds")
    p.add_argument("-o", "--output", help="write relation JSON here")
    p.set_defaults(fn=cmd_build_relation)

    p = sub.add_parser("regulator", help="regulator constant of a relation")
    p.add_argument("relation")
    p.add_argument("--prime", type=int)
    p.set_defaults(fn=cmd_regulator)

    p = sub.add_parser("verify-corpus", help="run the verification corpus")
    p.add_argument("--parallel", type=int, default=0)
    p.add_argument("--extended", action="store_true")
    p.add_argument("--report-dir", help="write results.csv and figures here")
    p.set_defaults(fn=cmd_verify_corpus)

    args = ap.parse_args(argv)
    if args.fn in (cmd_kernel, cmd_prim, cmd_classify, cmd_build_relation):
        if not args.group and not args.file:
            ap.error("a group spec or --file is required")
    try:
        return args.fn(args)
    except ResourceBoundError as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return 3
    except BrauerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
