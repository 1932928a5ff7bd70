"""Command-line front end and CSV reports.

Three modes: `single` optimizes one functional and optionally writes the
bi-level image; `sweep` walks an index grid for one functional; `compare`
runs Tsallis and Kaniadakis over the same grid and pairs their columns in
one report. Reports are written atomically (temp file, then rename) so an
error never leaves a partial file behind.

Exit statuses: 0 success, 1 usage error, 2 unreadable or invalid input,
3 infeasible image, 4 output I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass, field

from .entropy import (
    ENTROPY_KINDS,
    KANIADAKIS,
    SHANNON,
    TSALLIS,
    EntropyFunctional,
)
from .imaging import (
    GrayImage,
    PgmParseError,
    UnsupportedFormatError,
    build_histogram,
    load_image,
    write_bilevel,
)
from .sweep import (
    DEFAULT_INDEX_GRID,
    DEFAULT_JUMP_TOLERANCE,
    SweepRow,
    SweepTable,
    detect_transitions,
    select_best,
    sweep,
)
from .thresholding import InfeasibleHistogramError, binarize, optimize_threshold

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_OUTPUT = 4

MODES = ("single", "sweep", "compare")

# The only supported tie-break policy: smallest maximizing threshold wins.
TIE_BREAK = "smallest"


class UsageError(Exception):
    """Bad command line or inconsistent configuration."""


@dataclass
class RunConfig:
    input_path: str
    mode: str
    entropy_kind: str | None = None
    index: float | None = None
    grid: tuple[float, ...] | None = None
    connectivity: int = 4
    out_image_path: str | None = None
    report_path: str | None = None
    jump_tolerance: int = DEFAULT_JUMP_TOLERANCE
    allow_extended_index: bool = False
    tie_break: str = field(default=TIE_BREAK)


def _format_index(x: float) -> str:
    # repr of a float is the shortest round-tripping form, so user-supplied
    # grid values print back verbatim (0.99 never becomes 0.9900000000000001).
    return repr(float(x))


def _check_index_policy(kind: str, x: float, allow_extended: bool) -> float:
    x = float(x)
    if not allow_extended and not 0.0 < x < 1.0:
        raise UsageError(
            f"index {_format_index(x)} outside (0, 1); use --allow-extended-index to permit it"
        )
    try:
        EntropyFunctional(kind, x)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return x


def validate_config(config: RunConfig) -> None:
    """Raise UsageError unless the configuration is internally consistent."""
    if config.mode not in MODES:
        raise UsageError(f"mode must be one of {', '.join(MODES)}")
    if config.tie_break != TIE_BREAK:
        raise UsageError(f"only tie_break={TIE_BREAK!r} is supported")
    if config.connectivity not in (4, 8):
        raise UsageError("connectivity must be 4 or 8")
    if config.jump_tolerance < 0:
        raise UsageError("jump tolerance must be non-negative")

    if config.mode == "single":
        if config.grid is not None:
            raise UsageError("--grid is only valid in sweep or compare mode")
        if config.report_path is not None:
            raise UsageError("--report is only valid in sweep or compare mode")
        if config.entropy_kind not in ENTROPY_KINDS:
            raise UsageError("single mode requires --entropy shannon|tsallis|kaniadakis")
        if config.entropy_kind == SHANNON:
            if config.index is not None:
                raise UsageError("Shannon entropy takes no --index")
        else:
            if config.index is None:
                raise UsageError(f"--entropy {config.entropy_kind} requires --index")
            _check_index_policy(config.entropy_kind, config.index, config.allow_extended_index)
        return

    # sweep / compare
    if config.index is not None:
        raise UsageError("--index is only valid in single mode")
    if config.out_image_path is not None:
        raise UsageError("--out-image is only valid in single mode")
    if config.grid is None or len(config.grid) == 0:
        raise UsageError("sweep and compare modes require a non-empty --grid (or --grid-default)")
    if len(set(config.grid)) != len(config.grid):
        raise UsageError("index grid contains duplicates")
    if config.mode == "sweep":
        if config.entropy_kind not in (TSALLIS, KANIADAKIS):
            raise UsageError("sweep mode requires --entropy tsallis|kaniadakis")
        kinds = (config.entropy_kind,)
    else:
        if config.entropy_kind is not None:
            raise UsageError("compare mode runs both entropies; drop --entropy")
        kinds = (TSALLIS, KANIADAKIS)
    for kind in kinds:
        for x in config.grid:
            _check_index_policy(kind, x, config.allow_extended_index)


def _single_kind_header(kind: str) -> str:
    return f"index,threshold_{kind},edges_{kind}"


def emit_csv(tables, path) -> None:
    """Write one or two sweep tables as a CSV report, atomically.

    A Tsallis/Kaniadakis pair over the same grid becomes the five-column
    paired layout; a single table gets three columns. Grid mismatches fail
    before anything is written.
    """
    tables = list(tables)
    if len(tables) == 1:
        table = tables[0]
        lines = [_single_kind_header(table.functional_kind)]
        for row in table.rows:
            lines.append(f"{_format_index(row.index)},{row.threshold},{row.edge_pixels}")
    elif len(tables) == 2:
        by_kind = {t.functional_kind: t for t in tables}
        if set(by_kind) != {TSALLIS, KANIADAKIS}:
            raise ValueError("paired report needs one Tsallis and one Kaniadakis table")
        ts, ka = by_kind[TSALLIS], by_kind[KANIADAKIS]
        if ts.indices != ka.indices:
            raise ValueError("paired tables must share the same index grid")
        lines = ["index,threshold_tsallis,edges_tsallis,threshold_kaniadakis,edges_kaniadakis"]
        for t_row, k_row in zip(ts.rows, ka.rows):
            lines.append(
                f"{_format_index(t_row.index)},{t_row.threshold},{t_row.edge_pixels},"
                f"{k_row.threshold},{k_row.edge_pixels}"
            )
    else:
        raise ValueError("emit_csv takes one or two tables")

    payload = "\n".join(lines) + "\n"
    directory = os.path.dirname(os.fspath(path)) or "."
    try:
        fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".report-", suffix=".tmp")
    except OSError as exc:
        raise OSError(f"cannot write report {os.fspath(path)!r}: {exc}") from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
        # mkstemp files are 0600; give the report ordinary umask permissions
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp_path, 0o666 & ~umask)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def read_csv(path) -> list[SweepTable]:
    """Parse a report written by emit_csv back into sweep tables."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines:
        raise ValueError(f"{path}: empty report")
    header = lines[0].split(",")
    if header[0] != "index" or (len(header) - 1) % 2 != 0 or len(header) == 1:
        raise ValueError(f"{path}: unrecognized report header {lines[0]!r}")
    kinds = []
    for t_col, e_col in zip(header[1::2], header[2::2]):
        if not t_col.startswith("threshold_") or e_col != f"edges_{t_col[10:]}":
            raise ValueError(f"{path}: unrecognized report header {lines[0]!r}")
        kinds.append(t_col[10:])
    rows_per_kind: list[list[SweepRow]] = [[] for _ in kinds]
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != len(header):
            raise ValueError(f"{path}: malformed report row {line!r}")
        index = float(cells[0])
        for slot, (t_cell, e_cell) in enumerate(zip(cells[1::2], cells[2::2])):
            rows_per_kind[slot].append(SweepRow(index, int(t_cell), int(e_cell)))
    return [SweepTable(kind, tuple(rows)) for kind, rows in zip(kinds, rows_per_kind)]


def _print_transitions(table: SweepTable, tolerance: int, label: str = "") -> None:
    if len(table.rows) < 2:
        return
    prefix = f"transition {label}".rstrip()
    for jump in detect_transitions(table, tolerance).jumps:
        print(
            f"{prefix}: index {_format_index(jump.index_before)} -> "
            f"{_format_index(jump.index_after)} threshold "
            f"{jump.threshold_before} -> {jump.threshold_after}"
        )


def _print_best(table: SweepTable, label: str = "") -> None:
    best = select_best(table)
    prefix = f"best {label}".rstrip()
    print(
        f"{prefix}: index {_format_index(best.index)} threshold {best.threshold} "
        f"edge_pixels {best.edge_pixels}"
    )


def _run_single(config: RunConfig, img: GrayImage) -> None:
    functional = EntropyFunctional(config.entropy_kind, config.index)
    result = optimize_threshold(build_histogram(img), functional)
    if config.index is None:
        print(f"entropy: {config.entropy_kind}")
    else:
        print(f"entropy: {config.entropy_kind} index {_format_index(config.index)}")
    print(f"threshold: {result.threshold}")
    print(f"entropy_a: {result.entropy_a:.6f}")
    print(f"entropy_b: {result.entropy_b:.6f}")
    print(f"entropy_total: {result.total_entropy:.6f}")
    if config.out_image_path is not None:
        write_bilevel(binarize(img, result.threshold), config.out_image_path)
        print(f"wrote bi-level image: {config.out_image_path}")


def _run_sweep(config: RunConfig, img: GrayImage) -> None:
    table = sweep(
        img,
        config.entropy_kind,
        config.grid,
        connectivity=config.connectivity,
        allow_extended=config.allow_extended_index,
    )
    print(f"functional: {table.functional_kind}")
    print("index threshold edge_pixels")
    for row in table.rows:
        print(f"{_format_index(row.index)} {row.threshold} {row.edge_pixels}")
    _print_best(table)
    _print_transitions(table, config.jump_tolerance)
    if config.report_path is not None:
        emit_csv([table], config.report_path)
        print(f"wrote report: {config.report_path}")


def _run_compare(config: RunConfig, img: GrayImage) -> None:
    ts = sweep(
        img, TSALLIS, config.grid,
        connectivity=config.connectivity, allow_extended=config.allow_extended_index,
    )
    ka = sweep(
        img, KANIADAKIS, config.grid,
        connectivity=config.connectivity, allow_extended=config.allow_extended_index,
    )
    print("index threshold_tsallis edges_tsallis threshold_kaniadakis edges_kaniadakis")
    for t_row, k_row in zip(ts.rows, ka.rows):
        print(
            f"{_format_index(t_row.index)} {t_row.threshold} {t_row.edge_pixels} "
            f"{k_row.threshold} {k_row.edge_pixels}"
        )
    _print_best(ts, TSALLIS)
    _print_best(ka, KANIADAKIS)
    _print_transitions(ts, config.jump_tolerance, TSALLIS)
    _print_transitions(ka, config.jump_tolerance, KANIADAKIS)
    if config.report_path is not None:
        emit_csv([ts, ka], config.report_path)
        print(f"wrote report: {config.report_path}")


def run(config: RunConfig) -> int:
    """Execute a run and map failures to the documented exit statuses."""
    try:
        validate_config(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        img = load_image(config.input_path)
    except (PgmParseError, UnsupportedFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        if config.mode == "single":
            _run_single(config, img)
        elif config.mode == "sweep":
            _run_sweep(config, img)
        else:
            _run_compare(config, img)
    except InfeasibleHistogramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="entrothresh",
        description=(
            "Bi-level image thresholding by maximum Shannon, Tsallis, or "
            "Kaniadakis entropy, with entropic-index sweeps ranked by edge pixels."
        ),
    )
    parser.add_argument("--input", required=True, help="input image (binary PGM; PNG accepted)")
    parser.add_argument("--mode", required=True, choices=MODES)
    parser.add_argument(
        "--entropy",
        choices=ENTROPY_KINDS,
        help="functional for single/sweep mode; compare mode always runs both indexed ones",
    )
    parser.add_argument("--index", type=float, help="entropic index (single mode)")
    grid = parser.add_mutually_exclusive_group()
    grid.add_argument("--grid", help="comma-separated entropic indices (sweep/compare)")
    grid.add_argument(
        "--grid-default",
        action="store_true",
        help="use the built-in grid " + ",".join(repr(x) for x in DEFAULT_INDEX_GRID),
    )
    parser.add_argument("--connectivity", type=int, choices=(4, 8), default=4)
    parser.add_argument("--out-image", help="write the bi-level image here (single mode)")
    parser.add_argument("--report", help="write the CSV report here (sweep/compare)")
    parser.add_argument("--jump-tolerance", type=int, default=DEFAULT_JUMP_TOLERANCE)
    parser.add_argument(
        "--allow-extended-index",
        action="store_true",
        help="permit indices outside (0, 1), e.g. Tsallis q > 1",
    )
    return parser


def _parse_grid(text: str) -> tuple[float, ...]:
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            values.append(float(token))
        except ValueError:
            raise UsageError(f"invalid grid value {token!r}") from None
    return tuple(values)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.grid_default:
        grid: tuple[float, ...] | None = DEFAULT_INDEX_GRID
    elif args.grid is not None:
        grid = _parse_grid(args.grid)
    else:
        grid = None
    return RunConfig(
        input_path=args.input,
        mode=args.mode,
        entropy_kind=args.entropy,
        index=args.index,
        grid=grid,
        connectivity=args.connectivity,
        out_image_path=args.out_image,
        report_path=args.report,
        jump_tolerance=args.jump_tolerance,
        allow_extended_index=args.allow_extended_index,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = config_from_args(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry_point()
