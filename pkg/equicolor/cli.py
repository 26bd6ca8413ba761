import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

import structlog
from pydantic import ValidationError

from equicolor.errors import EquicolorError, IllegalMove, InvalidInput, OracleInfeasible
from equicolor.io import format_edge_list, read_edge_list
from equicolor.models.base import Document
from equicolor.models.coloring import ColoringDocument
from equicolor.models.config import CliSettings, GenSpec, SearchBudget, SolverConfig, SolverMode
from equicolor.models.trace import TraceDocument
from equicolor.services import bench as bench_service
from equicolor.services.coloring import verify_equitable, verify_proper
from equicolor.services.generators import generate
from equicolor.services.oracle import brute_force_equitable
from equicolor.services.solver import equitable_color, replay_trace
from equicolor.utils.logging_utils import configure_logging, verbosity_level

logger = structlog.get_logger(__name__)


class OracleDocument(Document):
    k: int
    feasible: bool
    coloring: Optional[ColoringDocument] = None


def _emit(data: bytes, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        out.write_bytes(data)


# region Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equicolor", description="Equitable colourings of sparse graphs.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging, repeatable")
    parser.add_argument("--log-json", action="store_true", help="render logs as JSON lines on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    color = commands.add_parser("color", help="compute an equitable colouring")
    color.add_argument("--r", type=int, required=True)
    color.add_argument("--mode", choices=[m.value for m in SolverMode], default=SolverMode.ONE_PLANAR.value)
    color.add_argument("--seed", type=int, default=None)
    color.add_argument("--in", dest="input", type=Path, required=True)
    color.add_argument("--out", type=Path, default=None)
    color.add_argument("--trace", type=Path, default=None)
    color.add_argument("--strict", action="store_true", help="use the 3n-8 bound for bipartite inputs")
    color.add_argument("--no-validate", action="store_true", help="skip the up-front edge and degeneracy checks")
    color.add_argument("--neighbor-choice", choices=["lowest", "random"], default="lowest")
    color.add_argument("--audit", action="store_true", help="audit every stuck state")
    color.add_argument("--max-pattern-attempts", type=int, default=SearchBudget().max_pattern_attempts)
    color.add_argument("--max-fallback-depth", type=int, default=SearchBudget().max_fallback_depth)

    verify = commands.add_parser("verify", help="check a colouring document against a graph")
    verify.add_argument("--in", dest="input", type=Path, required=True)
    verify.add_argument("--coloring", type=Path, required=True)
    verify.add_argument("--r", type=int, default=None)

    oracle = commands.add_parser("oracle", help="exact equitable k-colourability for small graphs")
    oracle.add_argument("--k", type=int, required=True)
    oracle.add_argument("--in", dest="input", type=Path, required=True)
    oracle.add_argument("--out", type=Path, default=None)
    oracle.add_argument("--require-feasible", action="store_true")

    gen = commands.add_parser("gen", help="write a generated graph as an edge list")
    gen.add_argument("--family", required=True)
    for name in ("rows", "cols", "t", "p", "q", "keep"):
        gen.add_argument(f"--{name}", type=int, default=None)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", type=Path, default=None)

    trace = commands.add_parser("trace", help="trace utilities")
    trace_commands = trace.add_subparsers(dest="trace_command", required=True)
    trace_verify = trace_commands.add_parser("verify", help="replay a trace and check every move")
    trace_verify.add_argument("--in", dest="input", type=Path, required=True)
    trace_verify.add_argument("--trace", type=Path, required=True)

    bench = commands.add_parser("bench", help="solve every instance of a corpus directory")
    bench.add_argument("--corpus", type=Path, required=True)
    bench.add_argument("--r", type=int, required=True)
    bench.add_argument("--mode", choices=[m.value for m in SolverMode], default=SolverMode.ONE_PLANAR.value)
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--jobs", type=int, default=1)
    bench.add_argument("--out", type=Path, default=None)
    return parser


# endregion


def resolve_seed(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    return CliSettings().seed


# region Commands


def _color(args: argparse.Namespace) -> int:
    cfg = SolverConfig(
        r=args.r,
        mode=args.mode,
        seed=resolve_seed(args.seed),
        strict_validation=not args.no_validate,
        strict_bipartite=args.strict,
        neighbor_choice=args.neighbor_choice,
        audit=args.audit,
        budget=SearchBudget(
            max_pattern_attempts=args.max_pattern_attempts,
            max_fallback_depth=args.max_fallback_depth,
        ),
    )
    g = read_edge_list(args.input)
    result = equitable_color(g, cfg)
    _emit(result.coloring.to_document().dumps(), args.out)
    if args.trace is not None:
        result.trace.write(args.trace)
    if result.audit is not None and result.audit.violations:
        for finding in result.audit.violations:
            print(f"audit: {finding.check}: {finding.detail}", file=sys.stderr)
    return 0


def _verify(args: argparse.Namespace) -> int:
    g = read_edge_list(args.input)
    doc = ColoringDocument.read(args.coloring)
    coloring = doc.to_coloring()
    if doc.class_sizes != coloring.sizes():
        raise InvalidInput(f"class_sizes {doc.class_sizes} do not match the assignment {coloring.sizes()}")
    if args.r is not None and coloring.r != args.r:
        raise InvalidInput(f"colouring uses r={coloring.r}, expected {args.r}")
    if not verify_proper(g, coloring):
        raise InvalidInput("colouring is not proper")
    if not verify_equitable(coloring):
        raise InvalidInput(f"class sizes {coloring.sizes()} are not equitable")
    print("ok")
    return 0


def _oracle(args: argparse.Namespace) -> int:
    g = read_edge_list(args.input)
    coloring = brute_force_equitable(g, args.k)
    doc = OracleDocument(
        k=args.k,
        feasible=coloring is not None,
        coloring=None if coloring is None else coloring.to_document(),
    )
    _emit(doc.dumps(), args.out)
    if coloring is None and args.require_feasible:
        raise OracleInfeasible(f"no equitable {args.k}-colouring exists")
    return 0


def _gen(args: argparse.Namespace) -> int:
    spec = GenSpec(
        family=args.family,
        rows=args.rows,
        cols=args.cols,
        t=args.t,
        p=args.p,
        q=args.q,
        keep=args.keep,
        seed=resolve_seed(args.seed),
    )
    text = format_edge_list(generate(spec)).encode()
    _emit(text, args.out)
    return 0


def _trace_verify(args: argparse.Namespace) -> int:
    g = read_edge_list(args.input)
    doc = TraceDocument.read(args.trace)
    try:
        replay_trace(g, doc)
    except IllegalMove as e:
        raise InvalidInput(f"illegal move in trace: {e}") from e
    print("ok")
    return 0


def _bench(args: argparse.Namespace) -> int:
    if not args.corpus.is_dir():
        raise InvalidInput(f"corpus {args.corpus} is not a directory")
    cfg = SolverConfig(r=args.r, mode=args.mode, seed=resolve_seed(args.seed))
    report = bench_service.bench(args.corpus, cfg, jobs=args.jobs)
    sys.stdout.write(report.table())
    if args.out is not None:
        report.write(args.out)
    return 0


# endregion


def dispatch(args: argparse.Namespace) -> int:
    match args.command:
        case "color":
            return _color(args)
        case "verify":
            return _verify(args)
        case "oracle":
            return _oracle(args)
        case "gen":
            return _gen(args)
        case "trace":
            return _trace_verify(args)
        case "bench":
            return _bench(args)
    raise RuntimeError(f"Bug! Unknown command: {args.command}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one CLI invocation and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(verbosity_level(args.verbose), json_output=args.log_json)
    try:
        return dispatch(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return InvalidInput.exit_code
    except EquicolorError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
