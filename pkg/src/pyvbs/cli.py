"""
Command-line front end: structure checks, marginals, queries and set chains
"""
import argparse
import logging
import sys
from typing import List, Optional, TextIO

from .core.errors import InvariantError, ModelError, ValuationError
from .core.settings import Presets, Settings
from .exporters import ModelReader, TextExporter
from .inference.counters import OperationCounter
from .inference.setchain import verify_chain
from .structure.hypergraph import graham_test

logger = logging.getLogger(__name__)


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="pyvbs",
        description="Local computation in valuation-based systems.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log to stderr (repeat for debug output)")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, metavar="EPS",
                        help=f"equality tolerance (default {Presets.default.tolerance:g})")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common],
                                help="run the Graham test on a model or hypergraph")
    check.add_argument("file")

    marginal = commands.add_parser("marginal", parents=[common],
                                   help="print a node or variable marginal")
    marginal.add_argument("file")
    marginal.add_argument("variables", nargs="*", metavar="VAR")
    marginal.add_argument("--node", type=int)
    marginal.add_argument("--root", type=int)

    query = commands.add_parser("query", parents=[common],
                                help="evaluate a boolean query")
    query.add_argument("file")
    query.add_argument("query")
    query.add_argument("--stats", action="store_true",
                       help="print the plan and operation counts")
    query.add_argument("--root", type=int)

    chain = commands.add_parser("chain", parents=[common],
                                help="build a set chain and write it to a file")
    chain.add_argument("file")
    chain.add_argument("out")
    chain.add_argument("--root", type=int)

    verify = commands.add_parser("verify", parents=[common],
                                 help="check a set chain against the joint")
    verify.add_argument("file")
    verify.add_argument("--chain", dest="chain_file")
    verify.add_argument("--root", type=int)

    args = parser.parse_args(argv)
    if args.command == "marginal" and (args.node is None) == (not args.variables):
        parser.error("marginal needs either --node or a list of variables")
    return args


# ============================================================================
# Commands
# ============================================================================

def cmd_check(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    model = ModelReader(settings).read_model(args.file)
    hypergraph = model.hypergraph()
    ok, trace = graham_test(hypergraph)
    exporter = TextExporter(settings)
    out.write(f"hypergraph: {len(hypergraph)} edges, {len(hypergraph.variables)} variables\n")
    for index, edge in enumerate(hypergraph.edges):
        out.write(f"e{index} {hypergraph.label(edge)}\n")
    out.write("trace:\n")
    out.write(exporter.trace(hypergraph, trace))
    out.write("stages:\n")
    out.write(exporter.stages(hypergraph, trace))
    if not ok:
        residual = ", ".join(hypergraph.label(e) for e in trace.residual.values())
        out.write(f"residual: {{{residual}}}\n")
    out.write(f"verdict: {'hypertree' if ok else 'not a hypertree'}\n")
    return 0


def cmd_marginal(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    model = ModelReader(settings).read_model(args.file)
    if args.node is not None:
        tree = model.markov_tree()
        if not 0 <= args.node < len(tree):
            raise ModelError(f"node {args.node} does not exist, the tree has {len(tree)} nodes")
        valuation = model.propagate(args.root)[args.node]
        out.write(f"node {args.node} {tree.label(args.node)}\n")
    else:
        valuation = model.marginal(args.variables, args.root)
    out.write(TextExporter(settings).table(valuation))
    return 0


def cmd_query(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    model = ModelReader(settings).read_model(args.file)
    answer = model.query(args.query, args.root)
    out.write(settings.format_number(answer.value) + "\n")
    if args.stats:
        full = OperationCounter()
        model.propagate(args.root, full)
        out.write("plan:\n")
        out.writelines(f"{line}\n" for line in answer.plan.describe())
        out.write("query operations: " + _counts(answer.counter) + "\n")
        out.write("propagation operations: " + _counts(full) + "\n")
    return 0


def cmd_chain(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    model = ModelReader(settings).read_model(args.file)
    chain = model.setchain(args.root)
    TextExporter(settings).export(chain, args.out)
    out.write(f"wrote {len(chain)} chain factors to {args.out}\n")
    return 0


def cmd_verify(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    reader = ModelReader(settings)
    model = reader.read_model(args.file)
    assignment = model.assignment()
    if args.chain_file:
        chain = reader.read_chain(args.chain_file)
        if chain.instance is not model.instance:
            raise ModelError(f"chain holds {chain.instance.kind} tables, model is {model.kind}")
        if any(not 0 <= f.node < len(assignment.tree) for f in chain):
            raise ModelError("chain refers to nodes the model's tree does not have")
    else:
        chain = model.setchain(args.root)
    report = verify_chain(chain, assignment, settings)
    for node in report.nodes:
        out.write(f"node {node.node} {assignment.tree.label(node.node)} "
                  f"deviation {settings.format_number(node.deviation)}\n")
    if report.reconstruction is not None:
        out.write(f"reconstruction deviation {settings.format_number(report.reconstruction)}\n")
    out.write(f"verdict: {'ok' if report.passed else 'FAILED'}\n")
    report.check()
    return 0


def _counts(counter: OperationCounter) -> str:
    return " ".join(f"{name}={value}" for name, value in counter.as_dict().items())


COMMANDS = {
    "check": cmd_check,
    "marginal": cmd_marginal,
    "query": cmd_query,
    "chain": cmd_chain,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = _parse_args(argv)
    if args.verbose:
        level = logging.DEBUG if args.verbose > 1 else logging.INFO
        logging.basicConfig(level=level, stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
    settings = Presets.default
    if args.tolerance is not None:
        try:
            settings = settings.with_tolerance(args.tolerance)
        except ValueError as error:
            sys.stderr.write(f"pyvbs: error: {error}\n")
            return 2
    try:
        return COMMANDS[args.command](args, settings, sys.stdout)
    except InvariantError as error:
        sys.stderr.write(f"pyvbs: verification failed: {error}\n")
        return error.exit_code
    except ValuationError as error:
        logger.debug("command failed", exc_info=True)
        sys.stderr.write(f"pyvbs: error: {error}\n")
        return error.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
