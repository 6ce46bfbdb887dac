"""Command-line front end.

Every subcommand prints one JSON report on stdout::

    {"command": ..., "input_digest": ..., "result": {...}, "timing_ms": ...}

Failures go to stderr as ``{"error": {...}}``.  Exit codes: 0 success,
1 unreadable or malformed input, 2 precondition violation (bad vertex,
bad flag, violated operation precondition), 3 oracle mismatch under
``--oracle-check``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__, connectivity, linkedness, oracle, sparsity
from .errors import GraphError, ParseError, PreconditionError
from .graph import Graph, _norm, guess_format, parse_graph, serialize_graph

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_ORACLE = 3


class CliError(Exception):
    def __init__(self, code, kind, message, **extra):
        super().__init__(message)
        self.code = code
        self.kind = kind
        self.extra = extra


class _Parser(argparse.ArgumentParser):
    """argparse reporting usage errors as JSON like every other failure."""

    def error(self, message):
        raise CliError(EXIT_PRECONDITION, "usage", message, usage=self.format_usage().strip())


def _on_off(text):
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return text == "on"


def load(path, fmt=None) -> Graph:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            text = Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, "io", f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text, fmt or guess_format(path))


def _pair(G, args):
    return G.vertex(args.u), G.vertex(args.v)


def _edges(es):
    return [list(e) for e in es]


# ---------------------------------------------------------------------------
# subcommands; each returns the "result" object


def _oracle_check(G, rank, args):
    report = oracle.generic_rank(G, 2, seed=args.seed)
    if report.rank != rank:
        raise CliError(EXIT_ORACLE, "oracle-mismatch",
                       f"pebble game rank {rank} differs from numeric rank {report.rank}",
                       oracle=report.as_dict())
    return report.as_dict()


def cmd_rank(G, args):
    out = {"rank": sparsity.rank2(G), "n": G.n, "m": G.m}
    if args.certificate:
        summary = sparsity.matroid_summary(G)
        out["bridges"] = _edges(summary.bridges)
        out["components"] = [_edges(c) for c in summary.components]
    if args.oracle_check:
        out["oracle"] = _oracle_check(G, out["rank"], args)
    return out


def cmd_is_rigid(G, args):
    rank = sparsity.rank2(G)
    out = {"rigid": sparsity.is_rigid2(G), "rank": rank, "target": max(0, 2 * G.n - 3)}
    if args.oracle_check:
        out["oracle"] = _oracle_check(G, rank, args)
    return out


def cmd_is_globally_rigid(G, args):
    out = linkedness.is_globally_rigid2(G).as_dict()
    if not args.certificate:
        out = {"globally_rigid": out["globally_rigid"]}
    return out


def cmd_pair(G, args):
    u, v = _pair(G, args)
    return linkedness.classify_pair(G, u, v, certificate=args.certificate).as_dict(args.certificate)


def cmd_all_pairs(G, args):
    if args.threads < 1:
        raise CliError(EXIT_PRECONDITION, "usage", "--threads must be positive")
    res = linkedness.classify_all_pairs(G, certificate=args.certificate, threads=args.threads)
    return {
        "weakly_linked_pairs": [[c.u, c.v] for c in res if c.weakly_globally_linked],
        "pairs": [c.as_dict(args.certificate) for c in res],
    }


def cmd_three_block(G, args):
    u, v = _pair(G, args)
    tb = connectivity.three_block(G, u, v, method=args.method)
    if isinstance(tb, connectivity.SeparatingPairOutcome):
        return {"separating_pair": True}
    out = {
        "separating_pair": False,
        "vertices": list(tb.to_parent),
        "virtual_edges": _edges(sorted(tb.parent_edges(tb.added_edges))),
    }
    if args.certificate:
        out["edges"] = _edges(sorted(tb.parent_edges(tb.block.edge_list())))
    return out


def cmd_circuit(G, args):
    u, v = _pair(G, args)
    c = sparsity.fundamental_circuit(G, u, v)
    return {"vertices": list(c.vertices), "edges": _edges(c.base_edges), "pair": list(_norm(u, v))}


def cmd_audit_mgr(G, args):
    return linkedness.audit_minimally_globally_rigid(G, samples=args.samples, seed=args.sample_seed).as_dict()


def cmd_oracle_rank(G, args):
    return oracle.generic_rank(G, args.d, seed=args.seed, repetitions=args.repetitions).as_dict()


def cmd_sample_equivalence(G, args):
    u, v = _pair(G, args)
    w = oracle.equivalence_sampler(G, u, v, d=args.d, trials=args.trials, seed=args.seed)
    seed = oracle.default_seed() if args.seed is None else args.seed
    out = {"witness_found": w is not None, "trials": args.trials, "seed": seed, "d": args.d}
    if w is not None and args.certificate:
        out["witness"] = w.as_dict()
    return out


def cmd_convert(G, args):
    fmt = args.to or guess_format(args.output)
    text = serialize_graph(G, fmt)
    try:
        Path(args.output).write_text(text)
    except OSError as exc:
        raise CliError(EXIT_PARSE, "io", f"cannot write {args.output}: {exc.strerror}") from None
    return {"format": fmt, "n": G.n, "m": G.m, "labels_dropped": bool(G.labels) and fmt == "edge-list"}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["edge-list", "json"],
                        help="input format (default: from the file extension, .json or edge list)")
    common.add_argument("--certificate", type=_on_off, default=True, metavar="on|off",
                        help="include certificate payloads (default on)")

    parser = _Parser(prog="rigidlink", description="Planar rigidity and weak global linkedness of graph pairs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, pair=False):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("file", help="graph file, '-' for stdin")
        if pair:
            p.add_argument("u", help="vertex id or label")
            p.add_argument("v", help="vertex id or label")
        p.set_defaults(func=func)
        return p

    for name, func, help in (("rank", cmd_rank, "rigidity matroid rank"),
                             ("is-rigid", cmd_is_rigid, "generic rigidity in the plane")):
        p = add(name, func, help)
        p.add_argument("--oracle-check", action="store_true", help="cross-check against the numeric rank oracle")
        p.add_argument("--seed", type=int, default=None, help="oracle seed (default: $RIGIDLINK_SEED or built-in)")

    add("is-globally-rigid", cmd_is_globally_rigid, "global rigidity in the plane")
    add("pair", cmd_pair, "classify one vertex pair", pair=True)
    p = add("all-pairs", cmd_all_pairs, "classify every non-adjacent pair")
    p.add_argument("--threads", type=int, default=1)
    p = add("three-block", cmd_three_block, "3-block of a pair", pair=True)
    p.add_argument("--method", choices=["fast", "cleave"], default="fast")
    add("circuit", cmd_circuit, "fundamental circuit of a linked pair", pair=True)
    p = add("audit-mgr", cmd_audit_mgr, "minimal global rigidity audit")
    p.add_argument("--samples", type=int, default=200, help="random subsets for graphs too large to enumerate")
    p.add_argument("--sample-seed", type=int, default=0)
    p = add("oracle-rank", cmd_oracle_rank, "numeric generic rank in dimension d")
    p.add_argument("-d", type=int, default=2)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--repetitions", type=int, default=2)
    p = add("sample-equivalence", cmd_sample_equivalence, "search for a looseness witness", pair=True)
    p.add_argument("-d", type=int, default=2)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p = add("convert", cmd_convert, "translate between edge-list and JSON")
    p.add_argument("output")
    p.add_argument("--to", choices=["edge-list", "json"], help="output format (default: from the extension)")
    return parser


def _fail(code, kind, message, **extra):
    err = {"code": code, "kind": kind, "message": message}
    err.update(extra)
    sys.stderr.write(json.dumps({"error": err}, sort_keys=True) + "\n")
    return code


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        t0 = time.perf_counter()
        G = load(args.file, args.format)
        result = args.func(G, args)
        elapsed = (time.perf_counter() - t0) * 1000.0
    except CliError as exc:
        return _fail(exc.code, exc.kind, str(exc), **exc.extra)
    except ParseError as exc:
        extra = {"line": exc.line} if exc.line is not None else {}
        return _fail(EXIT_PARSE, "parse", str(exc), **extra)
    except PreconditionError as exc:
        return _fail(EXIT_PRECONDITION, exc.kind, str(exc))
    except GraphError as exc:
        return _fail(EXIT_PRECONDITION, "vertex", str(exc))
    report = {"command": args.command, "input_digest": G.digest(), "result": result,
              "timing_ms": round(elapsed, 3)}
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
