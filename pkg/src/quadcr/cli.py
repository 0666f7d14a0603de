"""Command-line interface.

Subcommands::

    quadcr generate --kind square|staircase|flipped|strip --size N --out FILE
    quadcr weights  --graph G --spectral S --out FILE.csv
    quadcr verify   --graph G --spectral S --suite cr|sigma|tau|positivity|theorem|all
    quadcr solve    --graph G --spectral S --boundary B --cycle "v1,v2,..." --out FILE
    quadcr render   --graph G [--spectral S] [--field F] --what ... --out FILE.svg

Exit codes: 0 pass, 1 verification fail, 2 I/O or document error,
3 degenerate data, 4 singular solve.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import documents, render, suites
from .dirichlet import Side, region_from_cycle, solve
from .errors import (
    DegenerateFaceError,
    DocumentError,
    QuadCRError,
    SingularSystemError,
    SpectralDataError,
)
from .quadgraph import generate_fixture
from .weights import read_weights_csv, weight_function, write_weights_csv

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_IO = 2
EXIT_DEGENERATE = 3
EXIT_SINGULAR = 4


def _parse_columns(text: str):
    """Column spec "1:+,2:-,4:+" -> [(1, +1), (2, -1), (4, +1)]."""
    out = []
    for chunk in text.split(","):
        axis, _, sign = chunk.strip().partition(":")
        out.append((int(axis), -1 if sign.strip() == "-" else 1))
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadcr",
        description="Finite discrete complex analysis on quad-graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a fixture graph document")
    p.add_argument("--kind", required=True,
                   help="square | staircase | flipped | strip")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--columns", help="strip column spec, e.g. '4:-,5:-,1:+,2:+'")
    p.add_argument("--rows", help="strip row spec (default: all '3:+')")
    p.add_argument("--out", required=True)

    p = sub.add_parser("weights", help="face coefficients and weights as CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--spectral", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--graph")
    p.add_argument("--spectral", required=True)
    p.add_argument("--suite", default="all",
                   choices=[*suites.SUITES, "all"])
    p.add_argument("--tol", type=float, help="override the suite tolerance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", help="verify against weights from this CSV (cr suite)")
    p.add_argument("--out", help="write the verdict JSON here (default stdout)")

    p = sub.add_parser("solve", help="Dirichlet problem inside a cycle")
    p.add_argument("--graph", required=True)
    p.add_argument("--spectral", required=True)
    p.add_argument("--boundary", required=True, help="field document with boundary data")
    p.add_argument("--cycle", required=True, help="comma-separated vertex ids")
    p.add_argument("--side", default="inner", choices=["inner", "outer"])
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--weights", help="use weights from this CSV instead of the data")
    p.add_argument("--out", required=True)

    p = sub.add_parser("render", help="draw a figure to SVG")
    p.add_argument("--graph", required=True)
    p.add_argument("--spectral")
    p.add_argument("--field", help="field document (for --what solution)")
    p.add_argument("--what", required=True,
                   choices=["embedding", "weights", "violations", "solution"])
    p.add_argument("--out", required=True)

    return parser


def _cmd_generate(args) -> int:
    col_specs = _parse_columns(args.columns) if args.columns else None
    row_specs = _parse_columns(args.rows) if args.rows else None
    q, labeling = generate_fixture(args.kind, args.size, col_specs, row_specs)
    documents.save_graph(args.out, q, labeling)
    return EXIT_PASS


def _cmd_weights(args) -> int:
    q, labeling = documents.load_graph(args.graph)
    data = documents.load_spectral(args.spectral)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fp:
            write_weights_csv(fp, data, q, labeling)
    except OSError as exc:
        raise DocumentError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_PASS


def _cmd_verify(args) -> int:
    data = documents.load_spectral(args.spectral)
    q = labeling = None
    if args.graph:
        q, labeling = documents.load_graph(args.graph)
    weights_override = None
    if args.weights:
        if q is None:
            raise DocumentError("--weights requires --graph")
        try:
            with open(args.weights, "r", encoding="utf-8", newline="") as fp:
                weights_override = read_weights_csv(fp, q)
        except OSError as exc:
            raise DocumentError(f"cannot read {args.weights}: {exc}") from exc
    verdict = suites.run_suite(
        args.suite,
        data=data,
        q=q,
        labeling=labeling,
        tol=args.tol,
        seed=args.seed,
        weights_override=weights_override,
    )
    text = json.dumps(verdict, indent=2, sort_keys=True) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fp:
                fp.write(text)
        except OSError as exc:
            raise DocumentError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_PASS if verdict["pass"] else EXIT_FAIL


def _cmd_solve(args) -> int:
    q, labeling = documents.load_graph(args.graph)
    data = documents.load_spectral(args.spectral)
    boundary = documents.load_field(args.boundary)
    cycle = [int(v) for v in args.cycle.split(",") if v.strip()]
    if args.weights:
        try:
            with open(args.weights, "r", encoding="utf-8", newline="") as fp:
                w = read_weights_csv(fp, q)
        except OSError as exc:
            raise DocumentError(f"cannot read {args.weights}: {exc}") from exc
    else:
        w = weight_function(data, q, labeling)
    problem = region_from_cycle(q, cycle, Side(args.side), w).with_data(boundary)
    solution = solve(problem, tol=args.tol)
    documents.save_field(args.out, solution)
    return EXIT_PASS


def _cmd_render(args) -> int:
    q, labeling = documents.load_graph(args.graph)
    data = documents.load_spectral(args.spectral) if args.spectral else None
    if args.what == "solution":
        if not args.field:
            raise DocumentError("--what solution requires --field")
        field = documents.load_field(args.field)
        render.render_solution(args.out, q, labeling, field, data)
        return EXIT_PASS
    if data is None:
        raise DocumentError(f"--what {args.what} requires --spectral")
    if args.what == "embedding":
        render.render_embedding(args.out, q, labeling, data)
    elif args.what == "weights":
        render.render_weights(args.out, q, labeling, data)
    else:
        render.render_violations(args.out, q, labeling, data)
    return EXIT_PASS


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "weights": _cmd_weights,
        "verify": _cmd_verify,
        "solve": _cmd_solve,
        "render": _cmd_render,
    }
    try:
        return handlers[args.command](args)
    except (DegenerateFaceError, SpectralDataError) as exc:
        print(f"degenerate data: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except SingularSystemError as exc:
        print(f"singular system: {exc}", file=sys.stderr)
        if exc.null_vector is not None:
            print(f"null-vector witness (first entries): "
                  f"{[round(abs(x), 6) for x in exc.null_vector[:8]]}", file=sys.stderr)
        return EXIT_SINGULAR
    except (DocumentError, OSError) as exc:
        print(f"document error: {exc}", file=sys.stderr)
        return EXIT_IO
    except QuadCRError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
