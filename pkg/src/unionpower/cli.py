"""Command line surface.

Exit codes: 0 success, 1 bad input or route disagreement, 2 size bounds
exceeded.  All value output is symbolic ("4*a + 23/3*b") unless both --alpha
and --beta are given, in which case entries are exact rationals.  Rational
flags take "p/q" or integer syntax; decimal notation is rejected.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .axioms import (
    AXIOMS,
    EXTRA_AXIOMS,
    UniverseSpec,
    alpha_beta_index,
    check_axioms,
    independence_matrix,
)
from .errors import (
    GraphTooLarge,
    GraphValidationError,
    UnionPowerError,
    UnionTooLarge,
    UnknownFixture,
)
from .fixtures import demo_doc, demo_names
from .game import (
    Coalition,
    characteristic,
    harsanyi_dividends,
    shapley_bruteforce,
    shapley_via_dividends,
    shapley_via_potential,
    subadditivity_witness,
)
from .graph import GraphFormatError, UnionGraph, load_graph, to_file_dict
from .index import MarketParams, power_index
from .linform import parse_rational
from .ranking import rank_sweep, ranking_at

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BOUNDS = 2


def _node_name(g: UnionGraph, i: int) -> str:
    label = g.labels.get(i)
    return f"node {i + 1} ({label})" if label else f"node {i + 1}"


def _emit(args, text_lines, json_payload) -> None:
    if args.format == "json":
        print(json.dumps(json_payload, indent=2, sort_keys=False))
    else:
        for line in text_lines:
            print(line)


def _report(command: str, args, results) -> dict:
    return {
        "command": command,
        "input": getattr(args, "graph", None),
        "results": results,
    }


def _params(args, *, economic: bool) -> MarketParams | None:
    alpha = getattr(args, "alpha", None)
    beta = getattr(args, "beta", None)
    if alpha is None and beta is None:
        return None
    if alpha is None or beta is None:
        raise ValueError("give both --alpha and --beta or neither")
    p = MarketParams(parse_rational(alpha), parse_rational(beta))
    return p.require_market() if economic else p


def _vector_lines(g, forms, params):
    lines = []
    results = []
    for i, form in enumerate(forms):
        if params is None:
            shown = form.render()
        else:
            shown = str(form.evaluate(params.alpha, params.beta))
        lines.append(f"{_node_name(g, i)}: {shown}")
        entry = {"node": i + 1, "value": shown}
        if g.labels.get(i):
            entry["label"] = g.labels[i]
        results.append(entry)
    return lines, results


def _parse_coalition(text: str, g: UnionGraph) -> Coalition:
    ids = [int(part) for part in text.replace(" ", "").split(",") if part]
    for v in ids:
        if not 1 <= v <= g.n:
            raise ValueError(f"coalition member {v} outside 1..{g.n}")
    return Coalition.from_nodes([v - 1 for v in ids])


# -- subcommands -------------------------------------------------------------


def _cmd_validate(args) -> int:
    g = load_graph(args.graph)
    summary = {
        "nodes": g.n,
        "unions": g.r,
        "edges": len(g.edges),
        "external_edges": g.external_edge_count(),
        "bridge_nodes": sorted(i + 1 for i in g.bridge_nodes()),
    }
    lines = [
        f"ok: {g.n} nodes, {g.r} unions, {len(g.edges)} edges "
        f"({summary['external_edges']} external)"
    ]
    _emit(args, lines, _report("validate", args, [summary]))
    return EXIT_OK


def _cmd_index(args) -> int:
    g = load_graph(args.graph)
    params = _params(args, economic=True)
    lines, results = _vector_lines(g, power_index(g), params)
    _emit(args, lines, _report("index", args, results))
    return EXIT_OK


def _cmd_game(args) -> int:
    g = load_graph(args.graph)
    params = _params(args, economic=True)
    table = characteristic(g)

    def shown(form):
        return form.render() if params is None else str(
            form.evaluate(params.alpha, params.beta)
        )

    lines = []
    results = []
    coalitions = [_parse_coalition(c, g) for c in args.coalition or []]
    if not coalitions:
        coalitions = [Coalition.full(g.n)] + [
            Coalition.from_nodes(block) for block in g.partition
        ]
    for coal in coalitions:
        value = shown(table.value(coal))
        lines.append(f"worth {coal.render()}: {value}")
        results.append({"coalition": [v + 1 for v in coal.members()], "value": value})
    witness = subadditivity_witness(g)
    if witness is not None:
        t, s = witness
        joint = shown(table.value(t | s))
        split = shown(table.value(t) + table.value(s))
        lines.append(
            f"strictly subadditive: worth {t.render()} + worth {s.render()} "
            f"exceeds worth {(t | s).render()} ({split} vs {joint})"
        )
        results.append(
            {
                "subadditivity_witness": [
                    [v + 1 for v in t.members()],
                    [v + 1 for v in s.members()],
                ],
                "joint": joint,
                "separate": split,
            }
        )
    else:
        lines.append("no strict subadditivity witness (additive beta part)")
        results.append({"subadditivity_witness": None})
    _emit(args, lines, _report("game", args, results))
    return EXIT_OK


def _cmd_dividends(args) -> int:
    g = load_graph(args.graph)
    params = _params(args, economic=True)
    table = harsanyi_dividends(g, max_union_size=args.max_union_size)
    lines = []
    results = []
    for coal, form in table.sorted_items():
        shown = form.render() if params is None else str(
            form.evaluate(params.alpha, params.beta)
        )
        lines.append(f"{coal.render()}: {shown}")
        results.append({"coalition": [v + 1 for v in coal.members()], "value": shown})
    lines.append(f"{len(table)} nonzero dividends")
    _emit(args, lines, _report("dividends", args, results))
    return EXIT_OK


_SHAPLEY_METHODS = ("closed", "potential", "dividends", "bruteforce")


def _shapley_by(method: str, g: UnionGraph, max_n: int):
    if method == "closed":
        return power_index(g)
    if method == "potential":
        return shapley_via_potential(g)
    if method == "dividends":
        return shapley_via_dividends(g)
    return shapley_bruteforce(g, max_n=max_n)


def _cmd_shapley(args) -> int:
    g = load_graph(args.graph)
    params = _params(args, economic=True)
    max_n = args.max_n
    if args.method == "all":
        vectors = {m: _shapley_by(m, g, max_n) for m in _SHAPLEY_METHODS}
        reference = vectors["closed"]
        disagree = [
            m for m in _SHAPLEY_METHODS if vectors[m] != reference
        ]
        if disagree:
            print(
                f"route disagreement: {', '.join(disagree)} differ from closed form",
                file=sys.stderr,
            )
            return EXIT_INPUT
        lines, results = _vector_lines(g, reference, params)
        lines.append("all 4 routes agree")
        payload = _report("shapley", args, results)
        payload["methods"] = list(_SHAPLEY_METHODS)
        payload["agreement"] = True
        _emit(args, lines, payload)
        return EXIT_OK
    forms = _shapley_by(args.method, g, max_n)
    lines, results = _vector_lines(g, forms, params)
    payload = _report("shapley", args, results)
    payload["method"] = args.method
    _emit(args, lines, payload)
    return EXIT_OK


def _cmd_rank(args) -> int:
    g = load_graph(args.graph)
    params = _params(args, economic=True)
    if params is None:
        raise ValueError("rank needs --alpha and --beta")
    ranking = ranking_at(g, params)
    lines = []
    results = []
    for depth, group in enumerate(ranking.groups, start=1):
        ids = [v + 1 for v in group]
        lines.append(f"rank {depth}: {', '.join(str(v) for v in ids)}")
        results.append({"rank": depth, "nodes": ids})
    _emit(args, lines, _report("rank", args, results))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    g = load_graph(args.graph)
    rho_max = parse_rational(args.rho_max)
    sweep = rank_sweep(g, rho_max)
    headers = [col.header() for col in sweep.columns]
    depth = max(len(col.ranking.groups) for col in sweep.columns)
    cells = []
    for col in sweep.columns:
        column = [
            ", ".join(str(v + 1) for v in grp) for grp in col.ranking.groups
        ]
        column += [""] * (depth - len(column))
        cells.append(column)
    widths = [
        max(len(headers[c]), *(len(cells[c][r]) for r in range(depth)))
        for c in range(len(headers))
    ]
    rank_w = len(f"rank {depth}")
    lines = [
        " | ".join(
            [" " * rank_w]
            + [headers[c].ljust(widths[c]) for c in range(len(headers))]
        ).rstrip()
    ]
    for r in range(depth):
        lines.append(
            " | ".join(
                [f"rank {r + 1}".ljust(rank_w)]
                + [cells[c][r].ljust(widths[c]) for c in range(len(headers))]
            ).rstrip()
        )
    results = {
        "breakpoints": [str(b) for b in sweep.breakpoints],
        "columns": [
            {
                "header": col.header(),
                "kind": col.kind,
                "ranking": [[v + 1 for v in grp] for grp in col.ranking.groups],
            }
            for col in sweep.columns
        ],
    }
    _emit(args, lines, _report("sweep", args, [results]))
    return EXIT_OK


def _witness_payload(report):
    if report.witness is None:
        return None
    return {
        "detail": report.witness.detail,
        "node": None if report.witness.node is None else report.witness.node + 1,
        "graphs": [to_file_dict(g) for g in report.witness.graphs],
    }


def _cmd_axioms(args) -> int:
    spec = UniverseSpec(max_n=args.max_n)
    alpha = parse_rational(args.alpha) if args.alpha is not None else Fraction(1)
    beta = parse_rational(args.beta) if args.beta is not None else Fraction(1)
    matrix = independence_matrix(
        spec, include_power_row=args.full, extra_axioms=args.full
    )
    if args.full:
        power_reports = check_axioms(
            alpha_beta_index(alpha, beta), AXIOMS + EXTRA_AXIOMS, spec
        )
        for ax, report in power_reports.items():
            matrix.reports[("power", ax)] = report
    name_w = max(len(r) for r in matrix.rows) + 2
    col_w = max(len(a) for a in matrix.axioms) + 2
    lines = [
        "".ljust(name_w)
        + "".join(ax.center(col_w) for ax in matrix.axioms)
    ]
    for row in matrix.rows:
        marks = [
            ("pass" if matrix.passed(row, ax) else "FAIL").center(col_w)
            for ax in matrix.axioms
        ]
        lines.append(row.ljust(name_w) + "".join(marks))
    failing = matrix.failing_cells()
    lines.append(
        "diagonal-fail: "
        + ("yes" if matrix.is_exactly_diagonal_fail() else f"no, failing cells {failing}")
    )
    results = [
        {
            "row": row,
            "axiom": ax,
            "passed": matrix.reports[(row, ax)].passed,
            "checks": matrix.reports[(row, ax)].checks,
            "witness": _witness_payload(matrix.reports[(row, ax)]),
        }
        for row in matrix.rows
        for ax in matrix.axioms
    ]
    _emit(args, lines, _report("axioms", args, results))
    return EXIT_OK


def _cmd_demo(args) -> int:
    doc = demo_doc(args.name)
    text = json.dumps(doc, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.name} to {args.output}")
    else:
        print(text)
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------


def _add_graph_arg(p):
    p.add_argument("graph", help="path to a graph JSON file")


def _add_param_args(p):
    p.add_argument("--alpha", help="rational alpha, e.g. 2 or 3/4")
    p.add_argument("--beta", help="rational beta, e.g. 1 or 1/2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unionpower",
        description="Exact power indices and cooperative games on graphs with a priori unions",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a graph file")
    _add_graph_arg(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("index", help="per-node power index")
    _add_graph_arg(p)
    _add_param_args(p)
    p.set_defaults(func=_cmd_index)

    p = sub.add_parser("game", help="coalition worths and subadditivity")
    _add_graph_arg(p)
    _add_param_args(p)
    p.add_argument(
        "--coalition",
        action="append",
        help="1-based members, e.g. 1,2,3 (repeatable)",
    )
    p.set_defaults(func=_cmd_game)

    p = sub.add_parser("dividends", help="nonzero Harsanyi dividends")
    _add_graph_arg(p)
    _add_param_args(p)
    p.add_argument("--max-union-size", type=int, default=20)
    p.set_defaults(func=_cmd_dividends)

    p = sub.add_parser("shapley", help="Shapley value by one or all routes")
    _add_graph_arg(p)
    _add_param_args(p)
    p.add_argument(
        "--method",
        choices=_SHAPLEY_METHODS + ("all",),
        default="all",
    )
    p.add_argument(
        "--max-n",
        type=int,
        default=int(os.environ.get("UNIONPOWER_MAX_N", "16")),
        help="brute-force size cap (or set UNIONPOWER_MAX_N)",
    )
    p.set_defaults(func=_cmd_shapley)

    p = sub.add_parser("rank", help="dense ranking at fixed (alpha, beta)")
    _add_graph_arg(p)
    _add_param_args(p)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("sweep", help="rankings across the beta/alpha ratio")
    _add_graph_arg(p)
    p.add_argument("--rho-max", default="1", help="right end of the sweep window")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("axioms", help="fixture-versus-axiom matrix")
    p.add_argument("--max-n", type=int, default=5, help="exhaustive universe bound")
    p.add_argument("--full", action="store_true",
                   help="append the power-index row and the EP/PConI columns")
    _add_param_args(p)
    p.set_defaults(func=_cmd_axioms, graph=None)

    p = sub.add_parser("demo", help="write a built-in example graph")
    p.add_argument("name", help=f"one of: {', '.join(demo_names())}")
    p.add_argument("-o", "--output", help="file to write (default: stdout)")
    p.set_defaults(func=_cmd_demo, graph=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphTooLarge, UnionTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except (
        GraphValidationError,
        GraphFormatError,
        UnknownFixture,
        UnionPowerError,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
