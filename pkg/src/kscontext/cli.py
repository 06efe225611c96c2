"""Command-line interface.

Exit codes: 0 success / verified, 1 semantic negative (colourable, not
fully contextual, no violation), 2 input error, 3 resource or budget error.
Every option can also be set through an environment variable named
``KSCONTEXT_<OPTION>`` (e.g. ``KSCONTEXT_TOL=1e-8``); flags win.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import __version__
from .catalog import (
    BUILTIN_GRAPH_NAMES,
    builtin_graph,
    builtin_seven_context,
    parse_vector_set,
    to_dot,
)
from .contextuality import (
    ContextSet,
    ContextSetError,
    ScanResult,
    context_parity,
    corpus_scan,
    is_parity_proof,
    johnson_dim_bound,
    ks_colorable,
    orthogonality_graph,
    validate_context_set,
)
from .graph import Graph, Graph6Error, from_graph6, maximum_cliques, read_graph6_lines, to_graph6
from .inequality import DEFAULT_BUDGET, BudgetExceededError, inequality_report
from .theta import DEFAULT_TOL, ThetaConvergenceError, lovasz_theta

log = logging.getLogger("kscontext")

ENV_PREFIX = "KSCONTEXT_"
EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    tol: float = DEFAULT_TOL
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise InputError("--tol must be positive")
        if not 0 < self.budget <= DEFAULT_BUDGET:
            raise InputError(f"--budget must be in 1..{DEFAULT_BUDGET}")
        if self.workers < 1:
            raise InputError("--workers must be at least 1")
        if self.fmt not in ("json", "text"):
            raise InputError("--format must be json or text")


def _env(name: str, default, cast):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise InputError(f"bad value {raw!r} for {ENV_PREFIX}{name.upper()}") from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def load_context_set(source: str) -> ContextSet:
    if source == "builtin":
        return builtin_seven_context()
    return parse_vector_set(_read_text(source))


@dataclass
class GraphItem:
    source: str
    line: int | None
    graph: Graph | None = None
    labels: list[str] | None = None
    error: str | None = None


def iter_graphs(sources: Sequence[str]) -> Iterator[GraphItem]:
    """Built-in names or graph6 files (one graph per line, '-' for stdin)."""
    for src in sources:
        if src in BUILTIN_GRAPH_NAMES:
            g, labels = builtin_graph(src)
            yield GraphItem(src, None, g, labels)
            continue
        text = _read_text(src)
        for lineno, line in read_graph6_lines(text.splitlines()):
            try:
                yield GraphItem(src, lineno, from_graph6(line))
            except Graph6Error as exc:
                yield GraphItem(src, lineno, error=str(exc))


# --------------------------------------------------------------------------
# subcommands

def cmd_verify_ks(cfg: RunConfig) -> int:
    source = cfg.inputs[0] if cfg.inputs else "builtin"
    try:
        cs = load_context_set(source)
        validation = validate_context_set(cs)
        g, _ = orthogonality_graph(cs)
    except ContextSetError as exc:
        raise InputError(str(exc)) from None
    assignment = ks_colorable(cs)
    parity = is_parity_proof(g)
    declared = sorted(tuple(sorted(c)) for c in cs.contexts)
    report = {
        "schema": "1",
        "source": source,
        "dimension": cs.dimension,
        "contexts": validation.contexts,
        "rays": validation.rays,
        "ray_multiplicities": validation.multiplicity_histogram(),
        "pair_labeling": validation.pair_labeling,
        "edges": g.num_edges(),
        "colorable": assignment is not None,
        "assignment_ones": None if assignment is None else [cs.ray_labels[r] for r in assignment.ones()],
        "parity": parity.is_parity,
        "context_parity": context_parity(cs).is_parity,
        "max_clique_count": parity.clique_count,
        "contexts_are_max_cliques": declared == maximum_cliques(g),
        "ks_set": assignment is None,
    }
    if cfg.fmt == "json":
        report["ray_multiplicities"] = {str(k): v for k, v in report["ray_multiplicities"].items()}
        _emit(report)
    else:
        verdict = "KS set (no valid 0/1 assignment)" if assignment is None else "colorable, not a KS set"
        print(f"{source}: d={cs.dimension}, {validation.contexts} contexts, {validation.rays} rays, "
              f"{g.num_edges()} orthogonal pairs")
        print(f"parity proof: {parity.is_parity} ({parity.clique_count} maximum cliques)")
        print(verdict)
    return EXIT_OK if assignment is None else EXIT_NEGATIVE


def cmd_classify(cfg: RunConfig, table: bool = False) -> int:
    items = list(iter_graphs(cfg.inputs))
    good = [it for it in items if it.graph is not None]
    scan = corpus_scan([it.graph for it in good], tol=cfg.tol, workers=cfg.workers)
    by_item = dict(zip(map(id, good), scan.entries))
    input_errors = sum(1 for it in items if it.error)
    all_fc = True
    for it in items:
        head = {"source": it.source, "line": it.line}
        entry = by_item.get(id(it))
        if it.error or entry.error:
            msg = it.error or entry.error
            all_fc = False
            if cfg.fmt == "json":
                _emit({"schema": "1", **head, "error": msg})
            else:
                print(f"{it.source}:{it.line}: error: {msg}")
            continue
        rep = entry.report
        all_fc &= rep.fully_contextual
        if cfg.fmt == "json":
            _emit({**rep.to_dict(), **head, "graph6": to_graph6(it.graph)})
        else:
            where = it.source if it.line is None else f"{it.source}:{it.line}"
            print(
                f"{where}: n={rep.n} alpha={rep.alpha} omega={rep.omega} chi={rep.chi} "
                f"theta={rep.theta:.6f} alpha*={rep.alpha_star} VT={rep.vertex_transitive} "
                f"FC={rep.fully_contextual} cliques={rep.max_clique_count} "
                f"parity={rep.parity_proof} symmetric_parity={rep.symmetric_parity}"
            )
    if table:
        _print_table(scan, cfg.fmt)
    if input_errors:
        return EXIT_INPUT
    return EXIT_OK if all_fc and good else EXIT_NEGATIVE


def _print_table(scan: ScanResult, fmt: str) -> None:
    rows = scan.table()
    if fmt == "json":
        _emit({"schema": "1", "table": {
            str(n): {"fcvt": r["fcvt"], "pfcvt": {str(k): v for k, v in r["pfcvt"].items()}}
            for n, r in rows.items()
        }})
        return
    print("vertices  FCVT  PFCVT (bases)")
    for n, r in rows.items():
        pf = ", ".join(f"{v} ({k})" for k, v in r["pfcvt"].items()) or "0"
        print(f"{n:>8}  {r['fcvt']:>4}  {pf}")


def cmd_inequality(cfg: RunConfig, samples: int) -> int:
    source = cfg.inputs[0] if cfg.inputs else "builtin"
    try:
        cs = load_context_set(source)
    except ContextSetError as exc:
        raise InputError(str(exc)) from None
    seeds = list(range(cfg.seed, cfg.seed + samples))
    log.info("sampling %d states from seed %d", samples, cfg.seed)
    rep = inequality_report(cs, seeds, cfg.budget)
    if cfg.fmt == "json":
        _emit(rep.to_dict())
    else:
        q = rep.quantum_value
        print(f"noncontextual bound: S <= {rep.classical_max} "
              f"({rep.classical_maximizer_count} maximizing assignments)")
        print(f"context products equal -I: {rep.per_context_product_is_minus_identity}")
        print(f"quantum value (exact, state independent): {q if q is not None else 'state dependent'}")
        if rep.samples:
            worst = max(abs(v - float(q)) for _, v in rep.samples) if q is not None else float("nan")
            print(f"{len(rep.samples)} random states, max deviation {worst:.2e}")
    return EXIT_OK if rep.violated else EXIT_NEGATIVE


def cmd_theta(cfg: RunConfig) -> int:
    status = EXIT_OK
    for it in iter_graphs(cfg.inputs):
        head = {"source": it.source, "line": it.line}
        if it.error:
            status = EXIT_INPUT
            if cfg.fmt == "json":
                _emit({"schema": "1", **head, "error": it.error})
            else:
                print(f"{it.source}:{it.line}: error: {it.error}")
            continue
        res = lovasz_theta(it.graph, cfg.tol)
        if cfg.fmt == "json":
            _emit({"schema": "1", **head, "n": it.graph.n, **res.to_dict()})
        else:
            print(f"{it.source}: theta = {res.value:.9f} (gap {res.duality_gap:.1e}, {res.iterations} iterations)")
    return status


def cmd_export(cfg: RunConfig, to: str) -> int:
    status = EXIT_OK
    for it in iter_graphs(cfg.inputs):
        if it.error:
            print(f"{it.source}:{it.line}: error: {it.error}", file=sys.stderr)
            status = EXIT_INPUT
            continue
        if to == "dot":
            name = it.source.replace("-", "_") if it.line is None else f"G{it.line}"
            sys.stdout.write(to_dot(it.graph, it.labels, name if name.isidentifier() else "G"))
        else:
            print(to_graph6(it.graph))
    return status


def cmd_dim_bound(cfg: RunConfig, ks: Sequence[int]) -> int:
    for k in ks:
        try:
            b = johnson_dim_bound(k)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if cfg.fmt == "json":
            _emit({
                "schema": "1",
                "k": b.k,
                "min_extra_rows": b.min_extra_rows,
                "min_dimension": b.min_dimension,
                "column_rank_total": b.column_rank_total,
                "row_capacity_without_extra": b.row_capacity_without_extra,
                "excluded_dimensions": list(b.excluded_dimensions),
            })
        else:
            print(f"k={k}: {b.column_rank_total} <= {b.row_capacity_without_extra} + 2p gives "
                  f"p >= {b.min_extra_rows}; minimum dimension {b.min_dimension}")
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="SDP duality-gap tolerance (default 1e-6)")
    common.add_argument("--budget", type=int, default=None, help="max assignments for brute force (<= 2^24)")
    common.add_argument("--workers", type=int, default=None, help="worker processes for corpus scans")
    common.add_argument("--seed", type=int, default=None, help="first random seed (default 0)")
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="kscontext", description="Kochen-Specker set and contextuality-graph toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("verify-ks", parents=[common], help="verify a context set is a KS set")
    s.add_argument("inputs", nargs="*", help="'builtin' (default), a vector-set file, or '-'")

    s = sub.add_parser("classify", parents=[common], help="classify graphs (graph6 files or built-in names)")
    s.add_argument("inputs", nargs="+", help=f"graph6 files, '-', or one of {', '.join(BUILTIN_GRAPH_NAMES)}")
    s.add_argument("--table", action="store_true", help="also print FCVT/PFCVT counts per vertex count")

    s = sub.add_parser("inequality", parents=[common], help="classical bound and quantum value of S")
    s.add_argument("inputs", nargs="*", help="'builtin' (default) or a vector-set file")
    s.add_argument("--samples", type=int, default=100, help="number of random states (default 100)")

    s = sub.add_parser("theta", parents=[common], help="Lovász number of graphs")
    s.add_argument("inputs", nargs="+")

    s = sub.add_parser("export", parents=[common], help="export graphs as DOT or graph6")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--to", choices=("dot", "graph6"), default="dot")

    s = sub.add_parser("dim-bound", parents=[common], help="dimension bound for the k-fold J(5,2) structure")
    s.add_argument("k", type=int, nargs="+")
    return p


def _config(args: argparse.Namespace) -> RunConfig:
    def pick(name, cast, default):
        val = getattr(args, name)
        return val if val is not None else _env(name, default, cast)

    return RunConfig(
        subcommand=args.subcommand,
        inputs=list(getattr(args, "inputs", []) or []),
        tol=pick("tol", float, DEFAULT_TOL),
        budget=pick("budget", int, DEFAULT_BUDGET),
        workers=pick("workers", int, 1),
        fmt=args.fmt if args.fmt is not None else _env("format", "json", str),
        seed=pick("seed", int, 0),
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = _config(args)
        log.info("config: %s", cfg)
        if cfg.subcommand == "verify-ks":
            return cmd_verify_ks(cfg)
        if cfg.subcommand == "classify":
            return cmd_classify(cfg, table=args.table)
        if cfg.subcommand == "inequality":
            return cmd_inequality(cfg, args.samples)
        if cfg.subcommand == "theta":
            return cmd_theta(cfg)
        if cfg.subcommand == "export":
            return cmd_export(cfg, args.to)
        if cfg.subcommand == "dim-bound":
            return cmd_dim_bound(cfg, args.k)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceededError, ThetaConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
