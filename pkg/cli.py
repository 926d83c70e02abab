"""
Command-line front end for the semicircle decomposition verifier.

Usage:
    python cli.py [-v|-vv] verify --legs 3 4 [--samples N] [--seed S] [--tol T] [--report PATH]
    python cli.py areas --legs 3 4 [--format table|csv|json]
    python cli.py batch --input rows.csv --output results.csv
    python cli.py render --legs 3 4 --figure 5 --out fig5.svg
    python cli.py oracle --legs 3 4 --region RA --samples 1000000 --seed 42
    python cli.py ledger [--steps]

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 I/O error.
"""

import csv
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, TextIO

import click
import coloredlogs
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from tqdm import tqdm

import symbolic_ledger
from errors import DomainError, ParseError, VerificationError, build_config
from figure_renderer import FigureId, RenderOptions, render_figure, write_figure
from geometry_core import build_triangle, construct_scene
from numeric_oracle import VerificationReport, VerifyConfig, mc_region_area, verify_all
from region_model import SEGMENT_IDS, RegionId, all_region_areas, region_area, region_spec

logger = logging.getLogger(__name__)

TOOL_VERSION = "1.0.0"

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

BATCH_COLUMNS = ["a", "b", "c", "theta_deg"] + [region.value for region in SEGMENT_IDS] + ["residual", "pass"]
LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


# ---------------------------------------------------------------------------
# Report and batch models
# ---------------------------------------------------------------------------

class TriangleInfo(BaseModel):
    a: float
    b: float
    c: float
    theta_deg: float


class CheckEntry(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    residual: float
    tolerance: float


class EstimateEntry(BaseModel):
    mean: float
    std_error: float


class OracleInfo(BaseModel):
    seed: int
    samples: int
    estimates: Dict[str, EstimateEntry]


class ReportDocument(BaseModel):
    tool_version: str
    triangle: TriangleInfo
    checks: List[CheckEntry]
    oracle: OracleInfo
    overall_pass: bool


class BatchRow(BaseModel):
    a: float = Field(gt=0, allow_inf_nan=False)
    b: float = Field(gt=0, allow_inf_nan=False)


@dataclass
class ParsedBatch:
    rows: List[BatchRow] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


def report_document(report: VerificationReport) -> ReportDocument:
    tri = report.tri
    return ReportDocument(
        tool_version=TOOL_VERSION,
        triangle=TriangleInfo(a=tri.a, b=tri.b, c=tri.c, theta_deg=report.theta_deg),
        checks=[CheckEntry(name=check.name, passed=check.passed, residual=check.residual,
                           tolerance=check.tolerance) for check in report.checks],
        oracle=OracleInfo(
            seed=report.config.seed,
            samples=report.config.samples,
            estimates={region.value: EstimateEntry(mean=est.mean, std_error=est.std_error)
                       for region, est in report.estimates.items()},
        ),
        overall_pass=report.overall_pass,
    )


def parse_batch(stream: TextIO) -> ParsedBatch:
    """
    Read `a,b` rows from a CSV stream.

    Blank lines are ignored. Rows whose legs are not positive finite numbers
    are skipped with a warning.

    Raises:
        ParseError: For a missing header or a row that is not two numbers
    """
    parsed = ParsedBatch()
    header_seen = False
    for line_no, line in enumerate(stream, start=1):
        text = line.strip()
        if not text:
            continue
        fields = [value.strip() for value in next(csv.reader([text]))]
        if not header_seen:
            if fields != ["a", "b"]:
                raise ParseError(f"expected header 'a,b', got {text!r}", line=line_no)
            header_seen = True
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 2 comma-separated values, got {len(fields)}", line=line_no)
        try:
            a, b = float(fields[0]), float(fields[1])
        except ValueError:
            raise ParseError(f"not a number in {text!r}", line=line_no) from None
        try:
            parsed.rows.append(BatchRow(a=a, b=b))
        except ValidationError:
            warning = f"line {line_no}: legs must be positive finite numbers, got a={a}, b={b}; row skipped"
            logger.warning(warning)
            parsed.warnings.append(warning)
    if not header_seen:
        raise ParseError("empty input, expected header 'a,b'", line=1)
    return parsed


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _configure_logging(verbose: int) -> None:
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    coloredlogs.install(level=level, fmt=LOG_FORMAT, stream=sys.stderr)


def _progress_bar(total: int, desc: str) -> tqdm:
    # disable=None turns the bar off when stderr is not a terminal
    return tqdm(total=total, desc=desc, file=sys.stderr, disable=None, leave=False)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _print_report(report: VerificationReport) -> None:
    tri = report.tri
    click.echo(f"triangle a={tri.a:.6f} b={tri.b:.6f} c={tri.c:.6f} theta_deg={report.theta_deg:.6f}")
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        click.echo(f"{status} {check.name} residual={check.residual:.6e} tol={check.tolerance:.6e}")
    for note in report.notes:
        click.echo(f"note: {note}")
    click.echo(f"overall: {'PASS' if report.overall_pass else 'FAIL'}")


legs_option = click.option("--legs", nargs=2, type=float, required=True, metavar="A B",
                           help="Leg lengths a = |CB| and b = |AC|.")
workers_option = click.option("--workers", type=int, default=None, help="Parallel sampling workers.")
tol_stat_option = click.option("--tol-stat", type=float, default=None,
                               help="Monte-Carlo slack as a fraction of the sampling box area (default 2e-4).")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

@click.group()
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output.")
def main(verbose):
    """Verify the semicircle decomposition of a right triangle."""
    _configure_logging(verbose)


@main.command()
@legs_option
@click.option("--samples", type=int, default=None, help="Monte-Carlo samples (default 1000000).")
@click.option("--seed", type=int, default=None, help="Sampling seed (default 0).")
@click.option("--tol", type=float, default=None, help="Analytic tolerance (default 1e-9).")
@click.option("--report", "report_path", default=None, help="Write a JSON report to this path.")
@workers_option
@tol_stat_option
def verify(legs, samples, seed, tol, report_path, workers, tol_stat):
    """Run every check for one triangle."""
    tri = build_triangle(*legs)
    config = build_config(VerifyConfig, samples=samples, seed=seed, tol_analytic=tol,
                          tol_stat=tol_stat, workers=workers)

    with _progress_bar(100, "verify") as bar:
        def update(progress, message):
            bar.set_description_str(message[:40])
            bar.update(progress - bar.n)

        report = verify_all(tri, config, status_callback=update)

    _print_report(report)
    if report_path:
        document = report_document(report)
        _write_text(report_path, document.model_dump_json(by_alias=True, indent=2) + "\n")
        logger.info("Report written to %s", report_path)
    return EXIT_OK if report.overall_pass else EXIT_VERIFICATION_FAILED


@main.command()
@legs_option
@click.option("--format", "fmt", type=click.Choice(["table", "csv", "json"]), default="table")
def areas(legs, fmt):
    """Closed-form areas of every region and reference triangle."""
    values = all_region_areas(build_triangle(*legs))
    if fmt == "csv":
        click.echo("region,area")
        for region, value in values.items():
            click.echo(f"{region.value},{value:.6f}")
    elif fmt == "json":
        click.echo(json.dumps({region.value: value for region, value in values.items()}, indent=2))
    else:
        for region, value in values.items():
            click.echo(f"{region.value:<8} {value:>16.6f}")
    return EXIT_OK


@main.command()
@click.option("--input", "input_path", required=True, help="CSV with header a,b.")
@click.option("--output", "output_path", required=True, help="Destination CSV.")
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@workers_option
@tol_stat_option
def batch(input_path, output_path, samples, seed, workers, tol_stat):
    """Verify every triangle of a CSV file."""
    config = build_config(VerifyConfig, samples=samples, seed=seed, tol_stat=tol_stat, workers=workers)
    with open(input_path, "r", encoding="utf-8", newline="") as handle:
        parsed = parse_batch(handle)

    all_pass = True
    accepted, skipped = 0, len(parsed.warnings)
    with open(output_path, "w", encoding="utf-8", newline="") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(BATCH_COLUMNS)
        for row in tqdm(parsed.rows, desc="batch", file=sys.stderr, disable=None, leave=False):
            tri = build_triangle(row.a, row.b)
            try:
                report = verify_all(tri, config)
            except DomainError as exc:
                logger.warning("legs (%r, %r): %s; row skipped", row.a, row.b, exc)
                skipped += 1
                continue
            accepted += 1
            residual = symbolic_ledger.pythagoras_residual(tri.a, tri.b, tri.c)
            all_pass = all_pass and report.overall_pass
            writer.writerow(
                [repr(tri.a), repr(tri.b), repr(tri.c), repr(report.theta_deg)]
                + [repr(region_area(region, tri)) for region in SEGMENT_IDS]
                + [repr(residual), "true" if report.overall_pass else "false"]
            )

    click.echo(f"accepted={accepted} skipped={skipped}", err=True)
    return EXIT_OK if all_pass else EXIT_VERIFICATION_FAILED


@main.command()
@legs_option
@click.option("--figure", "figure", type=int, required=True, help="Figure number 1-9.")
@click.option("--out", "out_path", required=True, help="Destination SVG file.")
@click.option("--width", type=int, default=None, help="Width in pixels (default 480).")
@click.option("--decimals", type=int, default=None, help="Coordinate decimals (default 6).")
def render(legs, figure, out_path, width, decimals):
    """Write one figure as SVG."""
    opts = build_config(RenderOptions, width_px=width, decimals=decimals)
    fig = FigureId.parse(figure)
    scene = construct_scene(build_triangle(*legs))
    write_figure(out_path, render_figure(scene, fig, opts))
    click.echo(f"wrote figure {int(fig)} to {out_path}")
    return EXIT_OK


@main.command()
@legs_option
@click.option("--region", required=True, help="Region id, e.g. RA or SC.")
@click.option("--samples", type=int, default=1_000_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
def oracle(legs, region, samples, seed, workers):
    """Monte-Carlo estimate of one region."""
    if workers < 1:
        raise DomainError(f"workers must be at least 1, got {workers}")
    tri = build_triangle(*legs)
    region = RegionId.parse(region)
    spec = region_spec(region, construct_scene(tri))
    estimate = mc_region_area(spec, samples, seed, workers)
    closed = region_area(region, tri)
    click.echo(f"region={region.value} mean={estimate.mean:.6f} std_error={estimate.std_error:.6f} "
               f"samples={estimate.samples} seed={estimate.seed}")
    click.echo(f"closed_form={closed:.6f} deviation_in_std_errors="
               f"{abs(estimate.mean - closed) / estimate.std_error if estimate.std_error else 0.0:.6f}")
    return EXIT_OK


@main.command()
@click.option("--steps", is_flag=True, help="Also print the per-circle pair sums.")
def ledger(steps):
    """Exact basis coefficients of every region and of the decomposition."""
    columns = [term.value for term in symbolic_ledger.BASIS_ORDER]
    click.echo(f"{'region':<8}" + "".join(f"{name:>8}" for name in columns))
    for name, expr in symbolic_ledger.coefficient_table():
        click.echo(f"{name:<8}" + "".join(f"{value:>8}" for value in expr.format_row()))

    if steps:
        click.echo("")
        for circle, expr in symbolic_ledger.circle_pair_sums().items():
            click.echo(f"circle {circle} pair sum: {expr} (theta free: {expr.is_theta_free()})")
        total = symbolic_ledger.decomposition_ledger()
        click.echo(f"decomposition: {total} (theta free: {total.is_theta_free()})")
        click.echo(f"decomposition - SC: {total - symbolic_ledger.region_symbolic(RegionId.SC)}")
        click.echo(f"a^3 b + a b^3 - a b c^2 = ab(a^2 + b^2 - c^2): "
                   f"{symbolic_ledger.residual_polynomial_identity()}")
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line and map every outcome to an exit code.

    Args:
        argv: Arguments without the program name; sys.argv[1:] when None

    Returns:
        int: 0 success, 1 verification failure, 2 usage or domain error, 3 I/O error
    """
    args = list(argv) if argv is not None else sys.argv[1:]
    try:
        result = main.main(args=args, prog_name="cli.py", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except click.FileError as exc:
        exc.show()
        return EXIT_IO
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except (DomainError, ParseError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except VerificationError as exc:
        click.echo(f"verification failed: {exc}", err=True)
        return EXIT_VERIFICATION_FAILED
    except OSError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        return EXIT_IO
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(run())
