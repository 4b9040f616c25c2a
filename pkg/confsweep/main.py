# Command line entry point wiring every subcommand
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import structlog
from pydantic import ValidationError

from confsweep.config import settings
from confsweep.draw import draw
from confsweep.errors import ConfigurationError, ConfsweepError, RecordFormatError
from confsweep.incidence import Configuration, parse_table_text, verify
from confsweep.known import known_count
from confsweep.oracle import enumerate_combinatorial, load_coordinates, verify_realization
from confsweep.partitions import format_table, partition_table
from confsweep.reduce import reduce_all
from confsweep.storage import JsonlStore, RunManifest, make_record, record_configuration
from confsweep.sweep import SweepOptions, enumerate_sweep


logger = structlog.get_logger(__name__)


def configure_logging(level: str = "INFO") -> None:
    # JSON lines on stderr so stdout stays a data stream
    structlog.configure(
        processors=[
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            structlog.processors.JSONRenderer(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(getattr(logging, level.upper(), logging.INFO)),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def positive_int(text: str) -> int:
    # argparse type for worker counts; bad values are usage errors
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int value: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="confsweep", description="Enumerate topological (n_k) configurations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="sweep every topological configuration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--jobs", type=positive_int, default=None)
    p.add_argument("--out", default="-")
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--progress", action="store_true")
    p.add_argument("--split-depth", type=int, default=None)

    p = sub.add_parser("reduce", help="merge raw output into combinatorial classes")
    p.add_argument("--in", dest="inp", default="-")
    p.add_argument("--out", default="-")
    p.add_argument("--jobs", type=positive_int, default=None)
    p.add_argument("--report", default=None)

    p = sub.add_parser("verify", help="check configuration records or a line table")
    source = p.add_mutually_exclusive_group()
    source.add_argument("--in", dest="inp", default=None)
    source.add_argument("--table", default=None)

    p = sub.add_parser("oracle", help="brute-force combinatorial classes for tiny n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("partitions", help="list the maximal k-partitions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("draw", help="render wiring diagrams of swept records")
    p.add_argument("--in", dest="inp", default="-")
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("verify-real", help="check rational coordinates against a configuration")
    p.add_argument("--config", required=True)
    p.add_argument("--coords", required=True)
    return parser


def _jobs(value: Optional[int]) -> int:
    return settings.jobs if value is None else value


def cmd_enumerate(args: argparse.Namespace) -> int:
    options = SweepOptions(
        jobs=_jobs(args.jobs),
        split_depth=settings.split_depth if args.split_depth is None else args.split_depth,
        checkpoint=args.checkpoint,
        progress=args.progress,
        log_level=settings.log_level,
    )
    manifest = RunManifest(subcommand="enumerate", n=args.n, k=args.k, flags={"split_depth": options.split_depth})
    count = JsonlStore(args.out).write(manifest, enumerate_sweep(args.n, args.k, options))
    logger.info("Enumeration written", n=args.n, k=args.k, records=count)
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    records = JsonlStore(args.inp).read_records()
    classes, report = reduce_all((record_configuration(record) for record in records), jobs=_jobs(args.jobs))
    manifest = RunManifest(subcommand="reduce", n=report.n, k=report.k, input=args.inp)
    JsonlStore(args.out).write(
        manifest,
        (make_record(cls.representative, members=cls.members, self_dual=cls.self_dual) for cls in classes),
    )
    if args.report:
        Path(args.report).write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    if report.matches_known is False:
        logger.warning("Class count differs from the published value", classes=report.classes, known=report.known_topological)
    logger.info("Reduction written", inputs=report.inputs, classes=report.classes, self_dual=report.self_dual)
    return 0


def _raw_configuration(record) -> Configuration:
    try:
        return Configuration(n=record.n, k=record.k, lines=record.lines)
    except ValidationError as e:
        raise RecordFormatError(str(e)) from e


def cmd_verify(args: argparse.Namespace) -> int:
    # One JSON report per input; exit 1 when any input is invalid
    reports = []
    if args.table is not None:
        text = Path(args.table).read_text(encoding="utf-8")
        try:
            reports.append(verify(parse_table_text(text)).model_dump())
        except ConfigurationError as e:
            reports.append({"valid": False, "violations": [f"{type(e).__name__}: {e}"]})
    else:
        for record in JsonlStore(args.inp).read_records():
            reports.append(verify(_raw_configuration(record)).model_dump())
    for index, report in enumerate(reports):
        sys.stdout.write(json.dumps({"index": index, **report}, separators=(",", ":")) + "\n")
    invalid = sum(1 for report in reports if not report["valid"])
    logger.info("Verification finished", checked=len(reports), invalid=invalid)
    return 1 if invalid else 0


def cmd_oracle(args: argparse.Namespace) -> int:
    found = enumerate_combinatorial(args.n, args.k)
    if args.out:
        manifest = RunManifest(subcommand="oracle", n=args.n, k=args.k)
        JsonlStore(args.out).write(manifest, (make_record(c) for c in found))
    sys.stdout.write(f"{len(found)}\n")
    known = known_count("combinatorial", args.n, args.k)
    if known is not None and known != len(found):
        logger.warning("Oracle count differs from the published value", found=len(found), known=known)
    return 0


def cmd_partitions(args: argparse.Namespace) -> int:
    for row in format_table(partition_table(args.n, args.k)):
        sys.stdout.write(row + "\n")
    return 0


def cmd_draw(args: argparse.Namespace) -> int:
    written = draw(JsonlStore(args.inp).read_records(), Path(args.out_dir))
    for path in written:
        sys.stdout.write(f"{path}\n")
    return 0


def cmd_verify_real(args: argparse.Namespace) -> int:
    records = list(JsonlStore(args.config).read_records())
    if len(records) != 1:
        raise ConfsweepError(f"expected one configuration record, got {len(records)}")
    config = record_configuration(records[0])
    try:
        data = json.loads(Path(args.coords).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise RecordFormatError(f"coordinates: {e}") from e
    points, lines = load_coordinates(data)
    realized = verify_realization(points, lines, config)
    sys.stdout.write(json.dumps({"realized": realized}) + "\n")
    return 0 if realized else 1


COMMANDS = {
    "enumerate": cmd_enumerate,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "partitions": cmd_partitions,
    "draw": cmd_draw,
    "verify-real": cmd_verify_real,
}


def run(argv: Sequence[str]) -> int:
    # Exit 0 on success, 1 on a failed check or internal error, 2 on usage errors
    try:
        args = build_parser().parse_args(list(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return COMMANDS[args.command](args)
    except ValidationError as e:
        logger.error("Invalid option value", command=args.command, error=str(e))
        return 2
    except ConfsweepError as e:
        logger.error("Command failed", command=args.command, kind=type(e).__name__, error=str(e))
        return 1
    except OSError as e:
        logger.error("File access failed", command=args.command, error=str(e))
        return 1


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging(settings.log_level)
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
