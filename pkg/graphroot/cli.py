"""
Command-line front end.

Exit codes: 0 yes or success, 1 no-instance, 2 usage or input error,
3 internal invariant failure.
"""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from .checks import ContractError
from .core import Graph, RootSolution, compute_square, is_square_root
from .datafeeds import read_graph_file, to_dot, wire_ids, write_graph_file
from .definitions import SquareFamily, generator_families, result_keys
from .generators import (
    PlantedInstance,
    gen_known_square,
    gen_planted_batch,
    gen_random_connected,
    gen_tree_plus_k,
)
from .maxroot import max_root_exact, max_root_fpt
from .minroot import kernelize, min_square_root, replay_trace
from .oracle import OracleQuery, oracle_enumerate_roots, oracle_max_root, oracle_min_root
from .rules import LabeledInstance
from .survey import survey

logger = logging.getLogger(__name__)

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    logger.info("wrote %s", path)


def _report(
    args: argparse.Namespace,
    summary: str,
    answer: bool,
    solution: Optional[RootSolution] = None,
    **extra: Any,
) -> int:
    """Print the human summary or the JSON result object and pick the exit code."""
    if args.json:
        result: Dict[str, Any] = dict.fromkeys(result_keys)
        result["answer"] = "yes" if answer else "no"
        if solution is not None:
            result["edges"] = solution.edge_count
            result["deletions"] = solution.deletions
            result["kernel_vertices"] = solution.counters.get("kernel_vertices")
            if solution.trace is not None:
                result["rule_counts"] = solution.trace.rule_counts()
        result.update({k: v for k, v in extra.items() if k in result})
        print(json.dumps(result, sort_keys=False))
    else:
        print(summary)
    return EXIT_YES if answer else EXIT_NO


def _emit_root(args: argparse.Namespace, root: Graph, comments: Sequence[str] = ()) -> None:
    if getattr(args, "emit_root", None):
        _write(args.emit_root, write_graph_file(root, comments))
    if getattr(args, "emit_dot", None):
        _write(args.emit_dot, to_dot(root, name="root"))


def _kernel_comments(inst: LabeledInstance, g: Graph) -> List[str]:
    """Comment lines listing the kernel's labels in file ids of the kernel."""
    ids = wire_ids(inst.graph)
    source = wire_ids(g)
    lines = [f"kernel k {inst.k}"]
    lines.extend(f"vertex {ids[v]} input {source[v]}" for v in inst.graph.vertices)
    lines.extend(
        f"required {ids[e.u]} {ids[e.v]} {origin.value}" for e, origin in inst.required.items()
    )
    lines.extend(f"blocked {ids[e.u]} {ids[e.v]}" for e in sorted(inst.blocked))
    return lines


def _kernel_for_emit(g: Graph, k: int, solution: Optional[RootSolution]) -> Optional[LabeledInstance]:
    if solution is not None:
        if solution.kernel_root is None:
            return None
        return replay_trace(g, k, solution.trace)
    try:
        return kernelize(g, k).instance
    except ContractError as exc:
        logger.info("no kernel to emit: %s", exc)
        return None


def _cmd_square(args: argparse.Namespace) -> int:
    g = read_graph_file(args.input)
    square = compute_square(g)
    text = write_graph_file(square)
    if args.output:
        _write(args.output, text)
    elif not args.json:
        sys.stdout.write(text)
        return EXIT_YES
    return _report(args, f"square has {square.n} vertices and {square.m} edges", True, edges=square.m)


def _cmd_verify(args: argparse.Namespace) -> int:
    root = read_graph_file(args.root)
    g = read_graph_file(args.graph)
    ok = is_square_root(root, g)
    summary = "yes: root squares to graph" if ok else "no: root does not square to graph"
    return _report(args, summary, ok, edges=root.m if ok else None)


def _cmd_minroot(args: argparse.Namespace) -> int:
    g = read_graph_file(args.input)
    solution = min_square_root(g, args.k)
    if args.emit_kernel:
        kernel = _kernel_for_emit(g, args.k, solution)
        if kernel is not None:
            _write(args.emit_kernel, write_graph_file(kernel.graph, _kernel_comments(kernel, g)))
    budget = max(g.n - 1, 0) + args.k
    if solution is None:
        return _report(args, f"no: no square root with at most {budget} edges", False)
    _emit_root(args, solution.root, [f"minimum root search, k {args.k}"])
    return _report(
        args,
        f"yes: root with {solution.edge_count} edges (budget {budget})",
        True,
        solution,
    )


def _cmd_maxroot(args: argparse.Namespace) -> int:
    g = read_graph_file(args.input)
    if args.fpt:
        if args.k is None:
            raise ContractError("maxroot --fpt needs -k")
        solution = max_root_fpt(g, args.k)
        failed = f"no: no square root within {args.k} edge deletions"
    else:
        solution = max_root_exact(g)
        failed = "no: graph has no square root"
    if solution is None:
        return _report(args, failed, False)
    _emit_root(args, solution.root, [f"maximum root, {solution.deletions} deletions"])
    return _report(
        args,
        f"yes: root with {solution.edge_count} edges, {solution.deletions} deletions",
        True,
        solution,
    )


def _cmd_oracle(args: argparse.Namespace) -> int:
    g = read_graph_file(args.input)
    kwargs = {"jobs": args.jobs}
    if args.all:
        roots = oracle_enumerate_roots(OracleQuery(g, 0, g.m), **kwargs)
        if not args.json:
            for root in roots:
                print(" ".join(f"{e.u + 1}-{e.v + 1}" for e in root.edges()))
        summary = f"{len(roots)} square roots"
        return _report(args, summary, bool(roots), edges=roots[0].m if roots else None)
    if args.min:
        if args.k is None:
            raise ContractError("oracle --min needs -k")
        root = oracle_min_root(g, args.k, **kwargs)
    else:
        root = oracle_max_root(g, **kwargs)
    if root is None:
        return _report(args, "no: oracle found no admissible root", False)
    _emit_root(args, root)
    solution = RootSolution(root=root, edge_count=root.m, deletions=g.m - root.m)
    return _report(args, f"yes: oracle root with {root.m} edges", True, solution)


def _int_param(params: List[str], i: int, name: str) -> int:
    try:
        return int(params[i])
    except (IndexError, ValueError):
        raise ContractError(f"gen needs an integer {name}") from None


def _generate(family: str, params: List[str], seed: int) -> PlantedInstance:
    if family == "tree_plus_k":
        return gen_tree_plus_k(_int_param(params, 0, "n"), _int_param(params, 1, "k"), seed)
    if family == "random_connected":
        n = _int_param(params, 0, "n")
        try:
            density = float(params[1])
        except (IndexError, ValueError):
            raise ContractError("gen random_connected needs a density") from None
        g = gen_random_connected(n, density, seed)
        # no planted root; the graph itself stands in
        return PlantedInstance(square=g, planted_root=g, k_true=g.m - (g.n - 1), seed=seed)
    if family == SquareFamily.UNION_TWO_CLIQUES.value and len(params) > 1:
        return gen_known_square(family, (_int_param(params, 0, "a"), _int_param(params, 1, "b")))
    return gen_known_square(family, _int_param(params, 0, "size"))


def _cmd_gen(args: argparse.Namespace) -> int:
    instance = _generate(args.family, args.params, args.seed)
    comments = [f"family {args.family} {' '.join(args.params)}", f"seed {args.seed}"]
    if args.family != "random_connected":
        comments.append(f"k_true {instance.k_true}")
    text = write_graph_file(instance.square, comments)
    if args.output:
        _write(args.output, text)
    elif not args.json:
        sys.stdout.write(text)
    if args.emit_root and args.family != "random_connected":
        _write(args.emit_root, write_graph_file(instance.planted_root, comments))
    if args.json:
        return _report(args, "", True, edges=instance.square.m)
    return EXIT_YES


def _cmd_survey(args: argparse.Namespace) -> int:
    instances = gen_planted_batch(args.count, args.n_max, args.k_max, args.seed)
    data = survey(
        instances,
        n_interval=args.n_interval,
        raw=args.raw,
        include_max=args.include_max,
        jobs=args.jobs,
    )
    if args.json:
        print(data.to_json(orient="records", default_handler=str))
    else:
        print(data.to_string(index=False))
    return EXIT_YES


_COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "square": _cmd_square,
    "verify": _cmd_verify,
    "minroot": _cmd_minroot,
    "maxroot": _cmd_maxroot,
    "oracle": _cmd_oracle,
    "gen": _cmd_gen,
    "survey": _cmd_survey,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print one JSON result object")
    common.add_argument("--jobs", type=int, default=1, help="Worker processes (oracle, survey)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")

    parser = argparse.ArgumentParser(prog="graphroot", description="Graph square root solver")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("square", parents=[common], help="Write the square of a graph")
    p.add_argument("input")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", parents=[common], help="Check that root squares to graph")
    p.add_argument("root")
    p.add_argument("graph")

    p = sub.add_parser("minroot", parents=[common], help="Root with at most n-1+k edges")
    p.add_argument("input")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--emit-root")
    p.add_argument("--emit-kernel")
    p.add_argument("--emit-dot")

    p = sub.add_parser("maxroot", parents=[common], help="Root by fewest edge deletions")
    p.add_argument("input")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--fpt", action="store_true")
    mode.add_argument("--exact", action="store_true")
    p.add_argument("-k", type=int)
    p.add_argument("--emit-root")
    p.add_argument("--emit-dot")

    p = sub.add_parser("oracle", parents=[common], help="Brute-force reference answers")
    p.add_argument("input")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--min", action="store_true")
    mode.add_argument("--max", action="store_true")
    mode.add_argument("--all", action="store_true")
    p.add_argument("-k", type=int)
    p.add_argument("--emit-root")
    p.add_argument("--emit-dot")

    p = sub.add_parser("gen", parents=[common], help="Generate a seeded instance")
    p.add_argument("family", choices=generator_families)
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.add_argument("--emit-root")

    p = sub.add_parser("survey", parents=[common], help="Kernel statistics over planted instances")
    p.add_argument("--family", choices=["tree_plus_k"], default="tree_plus_k")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--k-max", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-interval", type=int, default=10)
    p.add_argument("--raw", action="store_true")
    p.add_argument("--include-max", action="store_true")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, dispatch the subcommand and return its exit code."""
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_YES if exc.code in (0, None) else EXIT_USAGE
    _configure_logging(args.verbose)
    try:
        return _COMMANDS[args.command](args)
    except (RuntimeError, AssertionError) as exc:
        logger.error("internal failure: %s", exc)
        print(f"error: internal failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
