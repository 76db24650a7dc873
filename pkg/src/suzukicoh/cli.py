"""Command-line driver.

Commands: basis, matrices, cartier-table, decompose, eo, anumber,
trivial, good-subsets, conjecture, verify.  All output is
deterministic for a fixed (m, modulus); JSON is canonical
(sorted keys, fixed separators).  Operator matrices are cached under
--cache / $SUZUKICOH_CACHE keyed by (m, modulus, operator) and
validated by a content hash of (m, modulus, basis order).
"""

from __future__ import annotations

import argparse
import sys

from . import dieudonne as dd
from . import known_results as kr
from . import rep_theory as rt
from . import store
from . import verify as verify_mod
from .cohomology import verify_cartier_table
from .pipeline import build_module, build_operators
from .suzuki_ff import CurveParams, pole_order

FORMATS = ("table", "json", "csv")


def _params(args):
    return CurveParams(args.m)


def _emit(args, payload, table_lines, csv_text=None):
    if args.format == "json":
        print(store.dumps_json(payload))
    elif args.format == "csv":
        if csv_text is None:
            raise SystemExit("this command has no CSV form; use table or json")
        sys.stdout.write(csv_text)
    else:
        for line in table_lines:
            print(line)


def _tuple_str(t):
    return "(%s)" % ",".join(str(x) for x in t)


def cmd_basis(args):
    params = _params(args)
    from .cohomology import index_set

    tuples = index_set(params)
    q0 = params.q0
    rows = []
    for t in tuples:
        a, b, c, d = t
        fkey = (-(a + 1), 1 - b, q0 - 1 - c, q0 - 1 - d)
        rows.append(
            {
                "tuple": list(t),
                "omega_pole_weight": pole_order(params, t),
                "h1O_pole_order": pole_order(params, fkey),
            }
        )
    payload = {"m": params.m, "genus": params.genus, "basis": rows}
    lines = ["index set for m=%d (g=%d):" % (params.m, params.genus)]
    lines += [
        "  %-14s  g-weight %5d   f-pole %5d"
        % (_tuple_str(r["tuple"]), r["omega_pole_weight"], r["h1O_pole_order"])
        for r in rows
    ]
    _emit(args, payload, lines)


def cmd_matrices(args):
    params = _params(args)
    cache = store.cache_dir_from(args.cache)
    space, ops = build_operators(params, cache)
    names = [args.operator] if args.operator != "all" else ["F", "V", "tau"]
    if args.format == "csv":
        out = []
        for name in names:
            out.append("# operator %s twist %+d\n" % (name, ops[name].twist))
            out.append(store.matrix_to_csv(ops[name]))
        sys.stdout.write("".join(out))
        return
    payload = {name: store.matrix_envelope(params, name, ops[name]) for name in names}
    lines = []
    for name in names:
        lines.append("%s: dim %d, twist %+d, %d nonzero entries" % (
            name, ops[name].dim, ops[name].twist, int((ops[name].matrix != 0).sum())))
    _emit(args, payload, lines)


def cmd_cartier_table(args):
    params = _params(args)
    report = verify_cartier_table(params)
    payload = {"m": params.m, "rows": report}
    lines = ["Cartier action rows, m=%d:" % params.m]
    for row in report:
        status = "ok" if row["matches_printed"] else "MISMATCH"
        note = " (printed exponent garbled)" if row["printed_exponent_garbled"] else ""
        lines.append("  %-12s %s%s" % (row["row"], status, note))
        if not row["matches_printed"]:
            lines.append("    recomputed: %s" % row["computed_rhs"])
    _emit(args, payload, lines)


def cmd_decompose(args):
    params = _params(args)
    _, module = build_module(params, store.cache_dir_from(args.cache))
    dec = dd.decompose(module)
    eo = dd.eo_type(module)
    payload = {
        "m": params.m,
        "summands": dec.to_json(),
        "eo_type": eo,
        "a_number": dd.a_number(module),
        "p_rank": dd.p_rank(module),
    }
    lines = ["D_%d = %s" % (params.m, dec)]
    _emit(args, payload, lines)


def cmd_eo(args):
    params = _params(args)
    if args.trivial:
        module = kr.d_m0_action(params.m) if args.source == "model" else None
        if module is None:
            _, full = build_module(params, store.cache_dir_from(args.cache))
            module, _, _ = dd.tau_split(full)
    else:
        _, module = build_module(params, store.cache_dir_from(args.cache))
    eo = dd.eo_type(module)
    payload = {"m": params.m, "trivial": bool(args.trivial), "eo_type": eo}
    _emit(args, payload, ["[%s]" % ",".join(str(v) for v in eo)])


def cmd_anumber(args):
    params = _params(args)
    _, module = build_module(params, store.cache_dir_from(args.cache))
    exp = kr.expected(params.m)
    payload = {
        "m": params.m,
        "a_number": dd.a_number(module),
        "a_number_closed_form": exp["a_number"],
        "p_rank": dd.p_rank(module),
        "genus": params.genus,
    }
    lines = [
        "a-number %d (closed form %d), 2-rank %d, g = %d"
        % (payload["a_number"], exp["a_number"], payload["p_rank"], params.genus)
    ]
    _emit(args, payload, lines)


def cmd_trivial(args):
    params = _params(args)
    if args.source == "curve":
        _, full = build_module(params, store.cache_dir_from(args.cache))
        module, _, _ = dd.tau_split(full)
    else:
        module = kr.d_m0_action(params.m)
    dec = dd.decompose(module)
    payload = {
        "m": params.m,
        "source": args.source,
        "rank": module.dim,
        "eo_type": dd.eo_type(module),
        "a_number": dd.a_number(module),
        "summands": dec.to_json(),
    }
    lines = [
        "trivial eigenspace (%s): rank %d, EO %s, a-number %d"
        % (args.source, module.dim, payload["eo_type"], payload["a_number"]),
        "  decomposition: %s" % dec,
    ]
    _emit(args, payload, lines)


def cmd_good_subsets(args):
    subsets = rt.good_subsets(args.m)
    payload = {
        "m": args.m,
        "subsets": [g.to_json() for g in subsets],
        "total_dimension": sum(g.multiplicity * g.dimension for g in subsets),
    }
    lines = ["%d good subsets of Z/%d:" % (len(subsets), 2 * args.m + 1)]
    for g in subsets:
        lines.append(
            "  {%s}  multiplicity %d  dim %d"
            % (",".join(str(x) for x in g.members), g.multiplicity, g.dimension)
        )
    lines.append("total dimension %d" % payload["total_dimension"])
    _emit(args, payload, lines)


def cmd_conjecture(args):
    params = _params(args)
    _, module = build_module(params, store.cache_dir_from(args.cache))
    rep = rt.conjecture_report(params.m, dd.decompose(module))
    lines = [
        "multiplicity of E/E(F^%d+V^%d): computed %d, conjectured %d (%s)"
        % (
            2 * params.m + 1,
            2 * params.m + 1,
            rep["multiplicity"],
            rep["expected_multiplicity"],
            "matches" if rep["matches_paper"] else "DIFFERS",
        )
    ]
    _emit(args, rep, lines)


def cmd_verify(args):
    suites = [s.strip() for s in args.suite.split(",")] if args.suite else ["all"]
    ok, report = verify_mod.run_suites(
        args.m, suites, cache_dir=store.cache_dir_from(args.cache), order=args.order
    )
    if args.format == "json":
        print(store.dumps_json(report))
    else:
        for sname, checks in report["suites"].items():
            for c in checks:
                mark = "PASS" if c["passed"] else "FAIL"
                print("[%s] %-10s %s" % (mark, sname, c["name"]))
                if not c["passed"]:
                    print("        expected: %s" % (c["expected"],))
                    print("        computed: %s" % (c["computed"],))
        print("verify m=%d: %s" % (args.m, "all checks passed" if ok else "FAILURES"))
    raise SystemExit(0 if ok else 1)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="suzukicoh",
        description="Exact de Rham cohomology and Dieudonne invariants of Suzuki curves.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, curve=True):
        p.add_argument("--m", type=int, required=True, help="curve index (1..4; pipelines need m <= 3)")
        p.add_argument("--format", choices=FORMATS, default="table")
        if curve:
            p.add_argument("--cache", default=None, help="matrix cache directory (or $SUZUKICOH_CACHE)")

    p = sub.add_parser("basis", help="index tuples and pole orders of the bases")
    common(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("matrices", help="F/V/tau operator matrices")
    common(p)
    p.add_argument("--operator", choices=("F", "V", "tau", "all"), default="all")
    p.set_defaults(func=cmd_matrices)

    p = sub.add_parser("cartier-table", help="recompute the published Cartier rows")
    common(p)
    p.set_defaults(func=cmd_cartier_table)

    p = sub.add_parser("decompose", help="indecomposable decomposition of H^1_dR")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("eo", help="Ekedahl-Oort type")
    common(p)
    p.add_argument("--trivial", action="store_true", help="trivial torus eigenspace only")
    p.add_argument("--source", choices=("model", "curve"), default="curve")
    p.set_defaults(func=cmd_eo)

    p = sub.add_parser("anumber", help="a-number and 2-rank")
    common(p)
    p.set_defaults(func=cmd_anumber)

    p = sub.add_parser("trivial", help="trivial-eigenspace module report")
    common(p)
    p.add_argument("--source", choices=("model", "curve"), default="model")
    p.set_defaults(func=cmd_trivial)

    p = sub.add_parser("good-subsets", help="good subsets and multiplicities")
    common(p, curve=False)
    p.set_defaults(func=cmd_good_subsets)

    p = sub.add_parser("conjecture", help="evidence for the long-word multiplicity")
    common(p)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument(
        "--suite",
        default="all",
        help="comma-separated: %s or all" % ",".join(verify_mod.SUITES),
    )
    p.add_argument("--order", type=int, default=None, help="series truncation-order override")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if not 1 <= args.m <= 4:
        raise SystemExit("--m must be between 1 and 4")
    args.func(args)


if __name__ == "__main__":
    main()
