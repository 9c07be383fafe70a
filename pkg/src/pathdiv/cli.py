"""
CLI entry point for Pathdiv.

Exit codes: 0 ok, 1 verification failed, 2 bad input, 3 theorem violation.
"""

import argparse
import csv
import json
import sys
from collections.abc import Sequence
from contextlib import ExitStack
from pathlib import Path

from pydantic import ValidationError

from pathdiv import __version__
from pathdiv.config import get_settings, init_settings
from pathdiv.core.bench import BENCH_FIELDS, bench
from pathdiv.core.generator import generate_instance
from pathdiv.core.pipeline import ensure_valid, solve, solve_forced
from pathdiv.core.verify import certify, oracle
from pathdiv.exceptions import CertificateError, InputError, TheoremViolation
from pathdiv.io import dump_instance, load_division, load_instance, load_witnesses, write_document
from pathdiv.logging import TraceSink, get_logger, set_log_level
from pathdiv.models.outcome import SearchMode

logger = get_logger("cli")

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_BAD_INPUT = 2
EXIT_THEOREM_VIOLATION = 3

MODES = [mode.value for mode in SearchMode]


def _add_mode(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=MODES, default="plain", help="Fairness guarantee")
    parser.add_argument(
        "--secretive-agent",
        type=int,
        metavar="K",
        help="Agent whose valuation is never read (secretive mode)",
    )


def _add_threads(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threads", type=int, metavar="T", help="Worker threads for scans")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathdiv",
        description="Connected EF1_outer divisions of a path of indivisible items",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help="Log level for stderr (default from PATHDIV_LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="Generate a seeded random additive instance")
    gen.add_argument("--seed", type=int, default=0, help="64-bit generator seed")
    gen.add_argument("--agents", "-n", type=int, required=True, help="Number of agents")
    gen.add_argument("--items", "-m", type=int, required=True, help="Number of items")
    gen.add_argument("--max-value", type=int, help="Largest item value (inclusive)")
    gen.add_argument("--out", "-o", type=Path, help="Output file (.json or .yaml); stdout if omitted")

    solve_cmd = commands.add_parser("solve", help="Find, round and certify a division")
    solve_cmd.add_argument("instance", type=Path, help="Instance file (JSON or YAML)")
    _add_mode(solve_cmd)
    solve_cmd.add_argument("--engine", choices=["exhaustive", "pathfollow"], help="Plain-mode search engine")
    _add_threads(solve_cmd)
    solve_cmd.add_argument(
        "--force-simplex",
        metavar="VERTICES",
        help="Round this simplex instead of searching: JSON list of doubled knife vectors, or a file holding one",
    )
    solve_cmd.add_argument("--trace-simplices", type=Path, metavar="FILE", help="JSON-lines record per scanned simplex")
    solve_cmd.add_argument("--trace-colors", type=Path, metavar="FILE", help="JSON-lines record per colored vertex")
    solve_cmd.add_argument("--out", "-o", type=Path, help="Report file; stdout if omitted")

    verify = commands.add_parser("verify", help="Certify a division")
    verify.add_argument("instance", type=Path, help="Instance file (JSON or YAML)")
    verify.add_argument("--division", type=Path, required=True, help="Division file or solve report")
    _add_mode(verify)
    verify.add_argument(
        "--use-witnesses",
        action="store_true",
        help="Check the witnesses stored in the division file instead of searching for new ones",
    )
    verify.add_argument("--out", "-o", type=Path, help="Report file; stdout if omitted")

    oracle_cmd = commands.add_parser("oracle", help="Count feasible divisions by brute force")
    oracle_cmd.add_argument("instance", type=Path, help="Instance file (JSON or YAML)")
    _add_mode(oracle_cmd)
    _add_threads(oracle_cmd)
    oracle_cmd.add_argument("--out", "-o", type=Path, help="Report file; stdout if omitted")

    bench_cmd = commands.add_parser("bench", help="Sweep an (n, m) grid and report CSV")
    bench_cmd.add_argument("--n-min", type=int, default=2)
    bench_cmd.add_argument("--n-max", type=int, default=3)
    bench_cmd.add_argument("--m-min", type=int, default=1)
    bench_cmd.add_argument("--m-max", type=int, default=6)
    bench_cmd.add_argument(
        "--modes",
        default="plain",
        help=f"Comma-separated subset of {','.join(MODES)}",
    )
    bench_cmd.add_argument("--seed", type=int, default=0)
    bench_cmd.add_argument("--max-value", type=int)
    _add_threads(bench_cmd)
    bench_cmd.add_argument("--out", "-o", type=Path, help="CSV file; stdout if omitted")
    return parser


def _configure(args: argparse.Namespace) -> None:
    overrides = {}
    for name in ("threads", "engine", "log_level"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    try:
        settings = init_settings(**overrides)
    except ValidationError as e:
        raise InputError(f"Invalid option: {e.errors()[0]['msg']}") from e
    set_log_level(settings.log_level_number)


def _force_vertices(value: str) -> list[list[int]]:
    text = value
    candidate = Path(value)
    if not value.lstrip().startswith("[") and candidate.exists():
        text = candidate.read_text(encoding="utf-8")
    try:
        vertices = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"--force-simplex is neither a JSON vertex list nor a readable file: {e}") from e
    if not isinstance(vertices, list) or not all(
        isinstance(v, list) and all(isinstance(c, int) for c in v) for v in vertices
    ):
        raise InputError("--force-simplex must be a list of integer lists")
    return vertices


def cmd_gen(args: argparse.Namespace) -> int:
    max_value = args.max_value if args.max_value is not None else get_settings().default_max_value
    inst = generate_instance(args.seed, args.agents, args.items, max_value)
    dump_instance(inst, args.out)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    mode = SearchMode(args.mode)
    if args.force_simplex is not None:
        report = solve_forced(inst, _force_vertices(args.force_simplex), mode, args.secretive_agent)
    else:
        with ExitStack() as stack:
            trace_simplices = trace_colors = None
            if args.trace_simplices is not None:
                trace_simplices = stack.enter_context(TraceSink(args.trace_simplices))
            if args.trace_colors is not None:
                trace_colors = stack.enter_context(TraceSink(args.trace_colors))
            report = solve(
                inst,
                mode,
                secretive_agent=args.secretive_agent,
                engine=args.engine,
                threads=args.threads,
                trace_simplices=trace_simplices,
                trace_colors=trace_colors,
            )
    write_document(report, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    ensure_valid(inst)
    mode = SearchMode(args.mode)
    division = load_division(args.division, inst.m)
    witnesses = load_witnesses(args.division) if args.use_witnesses else None
    report = certify(inst, division, mode, args.secretive_agent, witnesses)
    write_document(report, args.out)
    return EXIT_OK if report.accepted else EXIT_REJECTED


def cmd_oracle(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    ensure_valid(inst)
    report = oracle(inst, SearchMode(args.mode), args.secretive_agent, threads=args.threads)
    write_document(report, args.out)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        modes = [SearchMode(name.strip()) for name in args.modes.split(",") if name.strip()]
    except ValueError as e:
        raise InputError(f"Unknown mode in --modes: {e}") from e
    max_value = args.max_value if args.max_value is not None else get_settings().default_max_value
    rows = bench(
        (args.n_min, args.n_max),
        (args.m_min, args.m_max),
        modes,
        seed=args.seed,
        max_value=max_value,
        threads=args.threads,
    )
    with ExitStack() as stack:
        if args.out is None:
            handle = sys.stdout
        else:
            args.out.parent.mkdir(parents=True, exist_ok=True)
            handle = stack.enter_context(open(args.out, "w", encoding="utf-8", newline=""))
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(BENCH_FIELDS)
        for row in rows:
            writer.writerow(row.as_csv_row())
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "bench": cmd_bench,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Main CLI entry point."""
    args = build_parser().parse_args(argv)
    try:
        _configure(args)
        return COMMANDS[args.command](args)
    except InputError as e:
        logger.error(str(e))
        return EXIT_BAD_INPUT
    except CertificateError as e:
        logger.error(str(e))
        return EXIT_REJECTED
    except TheoremViolation as e:
        logger.critical(str(e))
        sys.stderr.write(json.dumps(e.diagnostic, sort_keys=True, indent=2, default=str) + "\n")
        return EXIT_THEOREM_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
