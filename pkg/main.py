"""
# CLI Usage Examples

## Spectra
    python main.py spectrum --model m1 --xi 1 --class pm --size 10 --levels 4
    python main.py spectrum --model m2 --xi 1 --class all --size 14 --levels 4 --format json

## Convergence tables (one row per basis size)
    python main.py converge --model m1 --xi 1 --class pp --n-min 5 --n-max 10 --levels 4

## Exact perturbation series
    python main.py pt --model m1 --level 3 --order 4
    python main.py pt --model m2 --level 4 --class mp --order 4

## Figure data
    python main.py scan --model m1 --xi-min -0.5 --xi-max 0.5 --steps 21 --size 12 --levels 4 --out figure1.csv

## Invariant suites
    python main.py check --suite conjecture --xi 1 --size 16
    python main.py check --suite all

# Classes
- `pp` (+,+) A / A1, `pm` (+,-) B2 / B1, `mp` (-,+) B1 / A2, `mm` (-,-) B3 / B2

# Exit codes
- 0 success, 1 usage or validation error, 2 numerical failure or failed check suite

Logs go to stderr (and to a timestamped file with --log-dir); results go to stdout.
"""
import argparse
import json
import logging
import os
import sys
from datetime import datetime
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ValidationError

import config
from ellipse.analysis import scan
from ellipse.checks import SUITES, run_suite
from ellipse.exceptions import EllipseError, NumericalFailure
from ellipse.model import ModelKind, SymmetryClass, group_labels
from ellipse.perturbation import eigenvalue_series
from ellipse.schemas import (
    CheckRecord,
    ConvergenceRecord,
    Deformation,
    OutputEnvelope,
    OutputMeta,
    ScanRecord,
    SeriesRecord,
    SpectrumRecord,
)
from ellipse.solver import convergence_scan, merged_spectrum, solve_block
from ellipse.utils import csv_text, format_number, format_table, repr_number, save_text_to_file

SCAN_HEADER = ["xi", "level_index", "class", "d2_label", "energy", "pt_first_order", "pt_improved", "pt_series4"]


# --- Setup Logging ---
def setup_logging(log_level: str = "WARNING", log_dir: Optional[str] = None) -> None:
    """
    Configure logging on stderr, plus a UTF-8 file handler when log_dir is given.
    Stdout stays reserved for rendered results.
    """
    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    numeric_level = getattr(logging, log_level.upper(), logging.WARNING)
    root_logger.setLevel(numeric_level)

    formatter = logging.Formatter(
        '%(asctime)s - %(process)d - %(threadName)s - %(levelname)s - %(name)s - %(funcName)s:%(lineno)d - %(message)s'
    )

    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        log_filename = os.path.join(log_dir, f"ellipse_{timestamp}.log")
        file_handler = logging.FileHandler(log_filename, encoding='utf-8')
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    logging.getLogger(__name__).info(f"Logging configured. Level: {log_level}, directory: {log_dir or 'none'}")


logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Flag combinations argparse cannot express; exit code 1."""


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that exits with code 1 on usage errors."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# --- Rendering ---
def render(fmt: str, meta: OutputMeta, records: Sequence[BaseModel], headers: Sequence[str], text_rows: Sequence[Sequence[str]], csv_rows: Sequence[Sequence[str]]) -> str:
    if fmt == "json":
        envelope = OutputEnvelope(meta=meta, data=[record.model_dump() for record in records])
        return json.dumps(envelope.model_dump(), indent=2) + "\n"
    if fmt == "csv":
        return csv_text(headers, csv_rows)
    return format_table(headers, text_rows)


def _deformation(xi: float) -> float:
    return Deformation(xi=xi).xi


def _spectrum_records(args: argparse.Namespace, model: ModelKind, xi: float) -> List[SpectrumRecord]:
    if args.cls == "all":
        levels = merged_spectrum(model, xi, args.size, args.levels)
        return [
            SpectrumRecord(
                energy=level.energy,
                symmetry=level.cls.value,
                d2_label=level.d2_label,
                c2v_label=level.c2v_label,
                n=level.n,
                level_index=level.level_index,
                imag_residual=level.imag_residual,
                degenerate_with=level.degenerate_with.value if level.degenerate_with else None,
            )
            for level in levels
        ]
    cls = SymmetryClass(args.cls)
    spectrum = solve_block(model, cls, xi, args.size, args.levels)
    d2, c2v = group_labels(cls)
    return [
        SpectrumRecord(energy=energy, symmetry=cls.value, d2_label=d2, c2v_label=c2v, n=n, level_index=index, imag_residual=imag)
        for index, (energy, n, imag) in enumerate(zip(spectrum.eigenvalues, spectrum.levels, spectrum.imag_residuals))
    ]


def cmd_spectrum(args: argparse.Namespace) -> Tuple[str, int]:
    model, xi = ModelKind(args.model), _deformation(args.xi)
    records = _spectrum_records(args, model, xi)
    headers = ["energy", "class", "d2_label", "c2v_label", "n", "level_index", "degenerate_with"]
    text_rows = [
        [format_number(r.energy), SymmetryClass(r.symmetry).label, r.d2_label, r.c2v_label, str(r.n), str(r.level_index), SymmetryClass(r.degenerate_with).label if r.degenerate_with else "-"]
        for r in records
    ]
    csv_rows = [[repr_number(r.energy), r.symmetry, r.d2_label, r.c2v_label, r.n, r.level_index, r.degenerate_with or ""] for r in records]
    meta = OutputMeta(command="spectrum", model=model.value, xi=xi, size=args.size)
    return render(args.format, meta, records, headers, text_rows, csv_rows), 0


def cmd_converge(args: argparse.Namespace) -> Tuple[str, int]:
    model, xi, cls = ModelKind(args.model), _deformation(args.xi), SymmetryClass(args.cls)
    table = convergence_scan(model, cls, xi, args.n_min, args.n_max, args.levels)
    records = [ConvergenceRecord(size=size, energies=energies) for size, energies in table.rows]
    headers = ["N"] + [f"E{i}" for i in range(args.levels)]
    text_rows = [[str(r.size)] + [format_number(e) for e in r.energies] for r in records]
    csv_rows = [[r.size] + [repr_number(e) for e in r.energies] for r in records]
    meta = OutputMeta(command="converge", model=model.value, xi=xi, size=args.n_max)
    return render(args.format, meta, records, headers, text_rows, csv_rows), 0


def _series_class(model: ModelKind, level: int, flag: Optional[str]) -> SymmetryClass:
    if flag:
        return SymmetryClass(flag)
    if level == 0:
        return SymmetryClass.PP
    if model.is_hermitian:
        raise UsageError(f"--class is required for model m2 level {level}: its two classes have different series")
    return SymmetryClass.PP if level % 2 == 0 else SymmetryClass.PM


def cmd_pt(args: argparse.Namespace) -> Tuple[str, int]:
    model = ModelKind(args.model)
    if args.level < 0:
        raise UsageError(f"--level must be >= 0, got {args.level}")
    cls = _series_class(model, args.level, args.cls)
    series = eigenvalue_series(model, cls, args.level, args.order)
    records = [SeriesRecord(order=j, coefficient=str(c), approximation=float(c)) for j, c in enumerate(series.coefficients)]
    headers = ["order", "coefficient", "approximation"]
    text_rows = [[str(r.order), r.coefficient, format_number(r.approximation)] for r in records]
    csv_rows = [[r.order, r.coefficient, repr_number(r.approximation)] for r in records]
    meta = OutputMeta(command="pt", model=model.value)
    return render(args.format, meta, records, headers, text_rows, csv_rows), 0


def cmd_scan(args: argparse.Namespace) -> Tuple[str, int]:
    model = ModelKind(args.model)
    xi_min, xi_max = _deformation(args.xi_min), _deformation(args.xi_max)
    grid = scan(model, xi_min, xi_max, args.steps, args.size, args.levels)
    records = [
        ScanRecord(
            xi=row.xi,
            level_index=row.n,
            symmetry=row.cls.value,
            d2_label=row.d2_label,
            energy=row.energy,
            pt_first_order=row.pt_first_order,
            pt_improved=row.pt_improved,
            pt_series4=row.pt_series4,
        )
        for row in grid.rows
    ]
    csv_rows = [
        [repr_number(r.xi), r.level_index, r.symmetry, r.d2_label, repr_number(r.energy), repr_number(r.pt_first_order), repr_number(r.pt_improved), repr_number(r.pt_series4)]
        for r in records
    ]
    if args.out:
        saved = save_text_to_file(csv_text(SCAN_HEADER, csv_rows), args.out)
        if saved is None:
            raise UsageError(f"Cannot write scan output to {args.out}")
    text_rows = [
        [format_number(r.xi), str(r.level_index), SymmetryClass(r.symmetry).label, r.d2_label, format_number(r.energy), format_number(r.pt_first_order), format_number(r.pt_improved), format_number(r.pt_series4)]
        for r in records
    ]
    meta = OutputMeta(command="scan", model=model.value, size=args.size)
    return render(args.format, meta, records, SCAN_HEADER, text_rows, csv_rows), 0


def cmd_check(args: argparse.Namespace) -> Tuple[str, int]:
    xi = None if args.xi is None else _deformation(args.xi)
    results = run_suite(args.suite, xi, args.size)
    records = [CheckRecord(suite=r.suite, name=r.name, measured=r.measured, tolerance=r.tolerance, passed=r.passed) for r in results]
    headers = ["suite", "name", "measured", "tolerance", "result"]
    text_rows = [[r.suite, r.name, format_number(r.measured, 4), format_number(r.tolerance, 4), "PASS" if r.passed else "FAIL"] for r in records]
    csv_rows = [[r.suite, r.name, repr_number(r.measured), repr_number(r.tolerance), r.passed] for r in records]
    meta = OutputMeta(command="check", xi=xi, size=args.size)
    code = 0 if all(r.passed for r in records) else 2
    return render(args.format, meta, records, headers, text_rows, csv_rows), code


# --- Argument Parsing ---
def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["text", "csv", "json"], default="text", help="Output format. Default: text")
    parser.add_argument("--log-level", default=config.LOG_LEVEL, choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Set the logging level.")
    parser.add_argument("--log-dir", default=None, help="Directory for log files. Default: no log file")


def _add_model(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", required=True, choices=[m.value for m in ModelKind], help="m1 (non-Hermitian) or m2 (Hermitian).")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="main.py", description=f"{config.APP_NAME}: spectra of a particle on an elliptical path.")
    parser.add_argument("--version", action="version", version=config.APP_VERSION)
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)
    class_choices = [c.value for c in SymmetryClass]

    spectrum = subparsers.add_parser("spectrum", help="Lowest eigenvalues per class or merged.")
    _add_model(spectrum)
    spectrum.add_argument("--xi", type=float, required=True, help="Deformation xi = (b^2 - a^2)/a^2 > -1.")
    spectrum.add_argument("--class", dest="cls", choices=class_choices + ["all"], default="all", help="Symmetry class. Default: all")
    spectrum.add_argument("--size", type=int, default=config.DEFAULT_SIZE, help=f"Basis size N. Default: {config.DEFAULT_SIZE}")
    spectrum.add_argument("--levels", type=int, default=config.DEFAULT_LEVELS, help=f"Eigenvalues per class. Default: {config.DEFAULT_LEVELS}")
    _add_common(spectrum)
    spectrum.set_defaults(handler=cmd_spectrum)

    converge = subparsers.add_parser("converge", help="Eigenvalues for a range of basis sizes.")
    _add_model(converge)
    converge.add_argument("--xi", type=float, required=True)
    converge.add_argument("--class", dest="cls", choices=class_choices, required=True)
    converge.add_argument("--n-min", type=int, required=True)
    converge.add_argument("--n-max", type=int, required=True)
    converge.add_argument("--levels", type=int, default=config.DEFAULT_LEVELS)
    _add_common(converge)
    converge.set_defaults(handler=cmd_converge)

    pt = subparsers.add_parser("pt", help="Exact perturbation series of one level.")
    _add_model(pt)
    pt.add_argument("--level", type=int, required=True, help="Unperturbed level n (energy n^2 at xi = 0).")
    pt.add_argument("--class", dest="cls", choices=class_choices, default=None, help="Required for m2 levels n >= 1.")
    pt.add_argument("--order", type=int, default=4, help="Highest order J. Default: 4")
    _add_common(pt)
    pt.set_defaults(handler=cmd_pt)

    scan_parser = subparsers.add_parser("scan", help="Spectra and reference curves over a xi grid.")
    _add_model(scan_parser)
    scan_parser.add_argument("--xi-min", type=float, required=True)
    scan_parser.add_argument("--xi-max", type=float, required=True)
    scan_parser.add_argument("--steps", type=int, required=True, help="Grid points, endpoints included.")
    scan_parser.add_argument("--size", type=int, default=config.DEFAULT_SIZE)
    scan_parser.add_argument("--levels", type=int, default=config.DEFAULT_LEVELS, help="Highest unperturbed level n.")
    scan_parser.add_argument("--out", default=None, help="CSV file to write; bare names go to the output directory.")
    _add_common(scan_parser)
    scan_parser.set_defaults(handler=cmd_scan)

    check = subparsers.add_parser("check", help="Run invariant suites.")
    check.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    check.add_argument("--xi", type=float, default=None, help="Override the suite's deformation.")
    check.add_argument("--size", type=int, default=None, help="Override the suite's basis size.")
    _add_common(check)
    check.set_defaults(handler=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1

    setup_logging(log_level=args.log_level, log_dir=args.log_dir)
    logger.info(f"Running {args.command} with {vars(args)}")
    try:
        output, code = args.handler(args)
    except NumericalFailure as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (UsageError, ValidationError, EllipseError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
