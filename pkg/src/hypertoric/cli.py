"""Command-line interface: ``hypertoric <command> ...``.

Every command builds a report document with the fields ``command``,
``input``, ``result``, ``warnings`` and ``elapsed_ms``; ``--json`` prints
it verbatim, otherwise a short text rendering is printed.

Exit codes: 0 success, 1 invalid input, 2 invariant violation, 3 budget
exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from typing import Any, Callable

from . import arrangement as ar
from . import classify as cl
from . import datum as dt
from . import exact_linalg as el
from .errors import BudgetExceeded, InvalidInput, InvariantViolation, NotSurjective
from .io import format_matrix, read_graph, read_matrix

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_BUDGET = 0, 1, 2, 3


def _rows(M) -> list[list[int]]:
    return [[int(x) for x in r] for r in M]


def _datum_from_args(args) -> tuple[dt.HypertoricDatum, dict]:
    if getattr(args, "graph", None):
        G = read_graph(args.graph)
        return dt.from_graph(G, allow_disconnected=True), {"graph": args.graph, "edges": [list(e) for e in G.edges]}
    if not args.matrix:
        raise InvalidInput("a matrix file (or --graph) is required")
    A = read_matrix(args.matrix)
    return dt.from_matrix_a(A), {"matrix": args.matrix, "rows": _rows(A)}


# ---------------------------------------------------------------------------
# commands; each returns (input_echo, result, text)


def cmd_validate(args):
    A = read_matrix(args.matrix)
    d, n = A.shape
    surj = el.is_surjective_over_Z(A)
    full = el.rank(A) == d
    uni = full and el.is_unimodular(A)
    res = {"shape": [d, n], "surjective": surj, "unimodular": uni}
    yes = {True: "yes", False: "no"}
    text = f"surjective: {yes[surj]}\nunimodular: {yes[uni]}"
    return {"matrix": args.matrix, "rows": _rows(A)}, res, text


def cmd_gale(args):
    A = read_matrix(args.matrix)
    B = el.kernel_basis(A)
    return {"matrix": args.matrix, "rows": _rows(A)}, {"B": _rows(B), "shape": list(B.shape)}, format_matrix(B).rstrip("\n")


def cmd_info(args):
    D, echo = _datum_from_args(args)
    W = dt.namikawa_weyl(D)
    slices = dt.codim2_slices(D)
    strata = [
        {
            "flat": list(f.F),
            "rank": f.rank,
            "stratum_dim": f.stratum_dim,
            "slice_multiplicities": sorted(f.slice.multiplicities, reverse=True),
        }
        for f in dt.flats(D)
    ]
    res = {
        "n": D.n,
        "d": D.d,
        "dimension": dt.dimension(D),
        "dropped_rows": list(D.dropped_rows),
        "reduced_expression": [{"row": list(r), "multiplicity": m} for r, m in D.reduced],
        "weyl_group": {"type": str(W), "order": W.order},
        "codim2_slices": [{"rows": list(s.rows), "type": s.label} for s in slices],
        "strata": strata,
    }
    lines = [
        f"dimension: {res['dimension']}  (n = {D.n}, d = {D.d})",
        "reduced expression: " + ", ".join(f"{list(r)}^{m}" for r, m in D.reduced),
        f"Namikawa-Weyl group: {W}  (order {W.order})",
        "codim-2 slices: " + (", ".join(f"{s.label} on rows {list(s.rows)}" for s in slices) or "none"),
        "strata (flat, rank, dim):",
    ]
    lines += [f"  {s['flat']}  {s['rank']}  {s['stratum_dim']}" for s in strata]
    return echo, res, "\n".join(lines)


def cmd_ring_gens(args):
    D, echo = _datum_from_args(args)
    bound = args.degree_bound
    gens = dt.ring_generators(D, degree_bound=bound)
    res = {
        "degree_bound": bound if bound is not None else dt.default_degree_bound(D),
        "generators": [
            {"label": g.label, "degree": g.degree, "z": list(g.z_exponents), "w": list(g.w_exponents)} for g in gens
        ],
    }
    text = "\n".join(f"{g.label}\t{g.degree}" for g in gens)
    return echo, res, text


def cmd_chi(args):
    if args.er:
        l1, l2, l3 = args.er
        arr = ar.edelman_reiner_arrangement(l1, l2, l3)
        echo = {"er": [l1, l2, l3]}
    else:
        if not args.matrix:
            raise InvalidInput("a matrix file or --er is required")
        A = read_matrix(args.matrix)
        arr = ar.from_columns(A)
        echo = {"matrix": args.matrix, "rows": _rows(A)}
    echo["method"] = args.method
    res: dict[str, Any] = {"ambient_dim": arr.ambient_dim, "hyperplanes": len(arr)}
    if args.method == "ffield" and args.prime is not None:
        count = ar.char_poly_finite_field(arr, args.prime, threads=args.threads)
        res.update(prime=args.prime, count=count)
        return echo, res, str(count)
    chi = ar.char_poly(arr, method=args.method, threads=args.threads)
    res.update(coefficients=chi.descending(), polynomial=str(chi), chambers=(-1) ** arr.ambient_dim * chi(-1))
    if args.prime is not None:
        res.update(prime=args.prime, count=ar.char_poly_finite_field(arr, args.prime, threads=args.threads))
    return echo, res, str(chi)


def cmd_resolutions(args):
    D, echo = _datum_from_args(args)
    arr = ar.from_columns(D.A)
    r = ar.chamber_count(arr, threads=args.threads)
    w = dt.namikawa_weyl(D).order
    count = ar.crepant_resolution_count(D, threads=args.threads)
    res = {"chambers": r, "weyl_order": w, "resolutions": count}
    return echo, res, f"{count}\n(chambers {r}, |W| {w})"


def cmd_iso(args):
    A1, A2 = read_matrix(args.matrix_a), read_matrix(args.matrix_b)
    echo = {"matrix_a": args.matrix_a, "matrix_b": args.matrix_b}
    phi = cl.isomorphism(A1, A2)
    res: dict[str, Any] = {"isomorphic": phi is not None, "bijection": list(phi) if phi is not None else None}
    text = "isomorphic" if phi is not None else "not isomorphic"
    if args.witness:
        W = cl.equivalence_witness(A1, A2, max_n=args.max_n, budget=args.budget)
        res["witness"] = {"P": _rows(W.P), "D": _rows(W.D)} if W is not None else None
        if W is not None:
            text += "\nP =\n" + format_matrix(W.P) + "D =\n" + format_matrix(W.D).rstrip("\n")
        else:
            text += "\nno witness A' = P A D"
    return echo, res, text


def cmd_classify(args):
    D, echo = _datum_from_args(args)
    label = cl.classify(D)
    return echo, {"label": str(label), **label.as_dict()}, str(label)


def cmd_quiver_iso(args):
    G1, G2 = read_graph(args.graph_a), read_graph(args.graph_b)
    ok = cl.quiver_iso(G1, G2)
    echo = {"graph_a": args.graph_a, "graph_b": args.graph_b}
    return echo, {"isomorphic": ok}, "isomorphic" if ok else "not isomorphic"


def cmd_nilpotent_test(args):
    D, echo = _datum_from_args(args)
    ms = dt.degree_two_test(D)
    if ms is None:
        return echo, {"nilpotent": False, "multiset": None}, "absent"
    return echo, {"nilpotent": True, "multiset": list(ms)}, "{" + ",".join(map(str, ms)) + "}"


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "gale": cmd_gale,
    "info": cmd_info,
    "ring-gens": cmd_ring_gens,
    "chi": cmd_chi,
    "resolutions": cmd_resolutions,
    "iso": cmd_iso,
    "classify": cmd_classify,
    "quiver-iso": cmd_quiver_iso,
    "nilpotent-test": cmd_nilpotent_test,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the full report as JSON")
    common.add_argument("--seed", type=int, default=0, help="seed recorded in the report")
    common.add_argument("--threads", type=int, default=1, help="worker threads for point counting")
    common.add_argument("--no-timings", action="store_true", help="report elapsed_ms as null")

    p = _Parser(prog="hypertoric", description="Invariants of affine hypertoric varieties Y(A, 0).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    add("validate", "check surjectivity and unimodularity").add_argument("matrix")
    add("gale", "print the Gale dual B").add_argument("matrix")
    for name, help_ in (
        ("info", "dimension, reduced expression, Weyl group, strata"),
        ("classify", "isomorphism class label"),
        ("nilpotent-test", "is Y(A,0) a product of minimal nilpotent orbit closures"),
        ("resolutions", "number of projective crepant resolutions"),
        ("ring-gens", "monomial generators of the coordinate ring"),
    ):
        sp = add(name, help_)
        sp.add_argument("matrix", nargs="?")
        sp.add_argument("--graph", help="use the toric quiver datum of this graph file")
        if name == "ring-gens":
            sp.add_argument("--degree-bound", type=int)
    sp = add("chi", "characteristic polynomial of H_A")
    sp.add_argument("matrix", nargs="?")
    sp.add_argument("--er", type=int, nargs=3, metavar=("L1", "L2", "L3"))
    sp.add_argument("--method", choices=("poset", "delres", "ffield"), default="poset")
    sp.add_argument("--prime", type=int)
    sp = add("iso", "decide isomorphism of Y(A,0) and Y(A',0)")
    sp.add_argument("matrix_a")
    sp.add_argument("matrix_b")
    sp.add_argument("--witness", action="store_true", help="also search for A' = P A D")
    sp.add_argument("--budget", type=int, default=cl.WITNESS_BUDGET)
    sp.add_argument("--max-n", type=int, default=cl.WITNESS_MAX_N)
    sp = add("quiver-iso", "decide isomorphism of two toric quiver varieties")
    sp.add_argument("graph_a")
    sp.add_argument("graph_b")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    report: dict[str, Any] = {"command": args.command, "input": None, "result": None, "warnings": [], "elapsed_ms": None}
    code = EXIT_OK
    error = None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            echo, result, text = COMMANDS[args.command](args)
            report["input"], report["result"] = echo, result
        except (InvalidInput, NotSurjective, OSError) as exc:
            code, error = EXIT_INPUT, exc
        except InvariantViolation as exc:
            code, error = EXIT_INVARIANT, exc
        except BudgetExceeded as exc:
            code, error = EXIT_BUDGET, exc
    report["warnings"] = [{"category": w.category.__name__, "message": str(w.message)} for w in caught]
    if not args.no_timings:
        report["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    if error is not None:
        report["error"] = {"type": type(error).__name__, "message": str(error)}
    report["input"] = report["input"] or {}
    report["input"]["seed"] = args.seed
    if args.json:
        print(json.dumps(report, indent=2))
    elif error is not None:
        print(f"error ({type(error).__name__}): {error}", file=sys.stderr)
    else:
        print(text)
        for w in report["warnings"]:
            print(f"warning ({w['category']}): {w['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
