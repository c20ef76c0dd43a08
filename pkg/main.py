# main.py
"""
PicardCalc – degree bookkeeping for the top cohomology of Morava stabilizer groups.
Main entry point: one typer command per operation, envelopes on stdout.
"""

import logging
from contextlib import contextmanager, nullcontext
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple

import typer

import config
import report
from charts import write_strip_chart
from duality import (Coefficients, Variant, conclusions, dual_degree, pattern_range,
                     theoremC_sweep)
from errors import DomainError, PicardError
from grading import ChromaticContext
from greek import Family, a_hn_closed, a_hn_recursive, bound_level_family_III, generators
from ideals import enumerate_invariant, is_invariant, max_exponents
from primes import count_pairs, stream_pairs
from ui import console, draw_verdict_strip, print_error, render_table, setup_logging

app = typer.Typer(help="PicardCalc – chromatic degree calculator", add_completion=False,
                  no_args_is_help=True)
ideal_app = typer.Typer(help="Invariant ideals (p, v_1^d_1, ..., v_{h-1}^d_{h-1}).",
                        no_args_is_help=True)
greek_app = typer.Typer(help="Greek letter elements.", no_args_is_help=True)
dual_app = typer.Typer(help="Gross-Hopkins degree shifts.", no_args_is_help=True)
app.add_typer(ideal_app, name="ideal")
app.add_typer(greek_app, name="greek")
app.add_typer(dual_app, name="dual")

log = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TABLE = "table"


@dataclass
class State:
    settings: config.Settings
    format: OutputFormat = OutputFormat.JSON
    workers: int = 1


# ─────────────────────────────────────────────────────────────────────────────
# OUTPUT
# ─────────────────────────────────────────────────────────────────────────────
def _emit(state: State, envelope: report.OutputEnvelope):
    if state.format is OutputFormat.TABLE:
        render_table(envelope)
    elif state.format is OutputFormat.CSV:
        typer.echo(envelope.to_csv(), nl=False)
    else:
        typer.echo(envelope.to_json(), nl=False)


def _fail(fmt: OutputFormat, command: str, err: PicardError):
    print_error(err)
    envelope = report.OutputEnvelope(command, payload=(err.to_record(),))
    typer.echo(envelope.to_csv() if fmt is OutputFormat.CSV else envelope.to_json(), nl=False)
    raise typer.Exit(code=1)


@contextmanager
def _guard(state: State, command: str):
    """Turns library errors into an error envelope and exit status 1."""
    try:
        yield
    except PicardError as err:
        log.debug("%s failed: %r", command, err)
        _fail(state.format, command, err)


def _state(ctx: typer.Context) -> State:
    return ctx.obj


def _parse_exponents(raw: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise DomainError(f"exponents must be comma-separated integers, got '{raw}'") from None


def _print_version(value: bool):
    if value:
        typer.echo(f"{config.APP_NAME} v{config.APP_VERSION}")
        raise typer.Exit()


# ─────────────────────────────────────────────────────────────────────────────
# GLOBAL OPTIONS
# ─────────────────────────────────────────────────────────────────────────────
@app.callback()
def main(
    ctx: typer.Context,
    version: bool = typer.Option(False, "--version", callback=_print_version, is_eager=True,
                                 help="Show the version and exit."),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="Envelope format."),
    config_file: Optional[str] = typer.Option(None, "--config", help="Settings file (key=value)."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
    workers: Optional[int] = typer.Option(None, "--workers", min=1, help="Worker processes."),
):
    setup_logging(verbose)
    try:
        settings = config.load_settings(config_file)
    except PicardError as err:
        _fail(fmt, ctx.invoked_subcommand or "picardcalc", err)
    ctx.obj = State(settings, fmt, workers or settings.workers)


# ─────────────────────────────────────────────────────────────────────────────
# PRIMES
# ─────────────────────────────────────────────────────────────────────────────
@app.command()
def pairs(
    ctx: typer.Context,
    limit: Optional[int] = typer.Option(None, "--limit", help="Search heights h < LIMIT."),
    range_: Optional[Tuple[int, int]] = typer.Option(None, "--range", help="Search LO <= h < HI."),
    count_only: bool = typer.Option(False, "--count-only", help="Print the count only."),
):
    """Heights h with 2p - 1 = h² for a prime p."""
    state = _state(ctx)
    with _guard(state, "pairs"):
        if range_ is not None:
            lo, hi = range_
        elif limit is not None:
            lo, hi = 1, limit
        else:
            raise DomainError("give --limit or --range")
        if lo < 1:
            raise DomainError("range start must be at least 1", lo=lo)
        if lo > hi:
            raise DomainError("range start exceeds range end", lo=lo, hi=hi)
        s = state.settings

        if count_only:
            spinner = (console.status(f"Counting pairs in [{lo}, {hi})…")
                       if console.is_terminal else nullcontext())
            with spinner:
                total = count_pairs(hi, workers=state.workers, lo=lo,
                                    sieve_limit=s.sieve_limit, segment_size=s.segment_size)
            payload = [{"lo": str(lo), "hi": str(hi), "count": str(total)}]
        else:
            payload = report.pair_records(stream_pairs(lo, hi, sieve_limit=s.sieve_limit,
                                                       segment_size=s.segment_size))
        _emit(state, report.OutputEnvelope("pairs", payload=tuple(payload)))


# ─────────────────────────────────────────────────────────────────────────────
# IDEALS
# ─────────────────────────────────────────────────────────────────────────────
@ideal_app.command("check")
def ideal_check(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p"),
    h: int = typer.Option(..., "--h"),
    n: int = typer.Option(..., "--N", help="Top exponent s_h = p^N is appended."),
    exponents: Optional[str] = typer.Option(None, "--exponents", help="d_1,...,d_{h-1}."),
):
    """Baird's criterion for one exponent vector (default: the maximal box corner)."""
    state = _state(ctx)
    with _guard(state, "ideal check"):
        chrom = ChromaticContext(p, h)
        d = _parse_exponents(exponents) if exponents else max_exponents(chrom, n)
        if len(d) != h - 1:
            raise DomainError(f"expected {h - 1} exponents, got {len(d)}", exponents=exponents)
        if n < 0:
            raise DomainError(f"N must be non-negative, got {n}", N=n)
        sequence = d + (p ** n,)
        record = {"exponents": ",".join(map(str, d)), "N": str(n),
                  "sequence": ",".join(map(str, sequence)),
                  "invariant": str(is_invariant(chrom, sequence)).lower()}
        _emit(state, report.OutputEnvelope("ideal check", chrom.to_record(), (record,)))


@ideal_app.command("enum")
def ideal_enum(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p"),
    h: int = typer.Option(..., "--h"),
    n: int = typer.Option(..., "--N"),
    cap: Optional[int] = typer.Option(None, "--cap", help="Per-exponent cap."),
):
    """Every invariant ideal in the box d_i <= min(cap, p^N), lexicographically."""
    state = _state(ctx)
    with _guard(state, "ideal enum"):
        chrom = ChromaticContext(p, h)
        ideals = enumerate_invariant(chrom, n, cap or state.settings.search_cap)
        _emit(state, report.OutputEnvelope("ideal enum", chrom.to_record(),
                                           tuple(report.ideal_records(ideals))))


# ─────────────────────────────────────────────────────────────────────────────
# GREEK LETTERS
# ─────────────────────────────────────────────────────────────────────────────
@app.command()
def ahn(
    ctx: typer.Context,
    h: int = typer.Option(..., "--h"),
    p: int = typer.Option(..., "--p"),
    n_max: int = typer.Option(..., "--N-max"),
    cross_check: bool = typer.Option(False, "--cross-check", help="Compare with the closed formula."),
):
    """The exponent bound a_(h,N) for N = 1..N_max."""
    state = _state(ctx)
    with _guard(state, "ahn"):
        if n_max < 1:
            raise DomainError("N_max must be at least 1", N_max=n_max)
        rows = []
        for n in range(1, n_max + 1):
            row = {"N": str(n), "a": str(a_hn_recursive(h, p, n))}
            if cross_check:
                closed = a_hn_closed(h, p, n)
                row["closed"] = str(closed)
                row["agrees"] = str(closed == int(row["a"])).lower()
            rows.append(row)
        _emit(state, report.OutputEnvelope("ahn", {"p": str(p), "h": str(h)}, tuple(rows)))


@greek_app.command("degrees")
def greek_degrees(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p"),
    h: int = typer.Option(..., "--h"),
    family: Optional[Family] = typer.Option(None, "--family", help="Restrict to one family."),
    window: Tuple[int, int] = typer.Option(..., "--window", help="Degree window A B."),
    bound_n: Optional[int] = typer.Option(None, "--bound-N",
                                          help="Also list bound-level family III at this N."),
):
    """Chart-level generators with internal degree in the window."""
    state = _state(ctx)
    with _guard(state, "greek degrees"):
        chrom = ChromaticContext(p, h)
        if h < 2:
            raise DomainError("generator tables start at height 2", h=h)
        elements = [e for e in generators(chrom, window) if family is None or e.family is family]
        if bound_n is not None and family in (None, Family.III):
            elements += bound_level_family_III(chrom, bound_n, window, state.settings.search_cap)
        _emit(state, report.OutputEnvelope("greek degrees", chrom.to_record(),
                                           tuple(report.greek_records(elements))))


# ─────────────────────────────────────────────────────────────────────────────
# DUALITY
# ─────────────────────────────────────────────────────────────────────────────
@dual_app.command("shift")
def dual_shift(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p"),
    h: int = typer.Option(..., "--h"),
    t: int = typer.Option(..., "--t"),
    n: int = typer.Option(..., "--N"),
):
    """Residue of 2h - t - p^N|v_h|/(p-1) modulo p^N|v_h|."""
    state = _state(ctx)
    with _guard(state, "dual shift"):
        chrom = ChromaticContext(p, h)
        residue = dual_degree(chrom, t, n)
        record = {"t": str(t), "N": str(n), "modulus": str(residue.modulus),
                  "residue": str(residue.representative)}
        _emit(state, report.OutputEnvelope("dual shift", chrom.to_record(), (record,)))


@app.command("pattern")
def pattern_cmd(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p"),
    h: int = typer.Option(..., "--h"),
    t_range: Tuple[int, int] = typer.Option(..., "--t-range", help="Degrees A..B inclusive."),
    coeffs: Coefficients = typer.Option(Coefficients.MOD_P, "--coeffs"),
    n_max: Optional[int] = typer.Option(None, "--N-max", help="Hard cap on the N-scan."),
    svg: Optional[Path] = typer.Option(None, "--svg", help="Write a static strip chart."),
    detail: bool = typer.Option(False, "--detail", help="Reason, N-scan range and bound-level candidates per degree."),
):
    """Zero / nonzero verdicts for H^{h²} with coefficients in degree t."""
    state = _state(ctx)
    with _guard(state, "pattern"):
        chrom = ChromaticContext(p, h)
        lo, hi = t_range
        reports = pattern_range(chrom, lo, hi, coeffs, n_max or state.settings.n_max)
        context = {**chrom.to_record(), "coefficients": coeffs.value}
        if detail:
            envelope = report.OutputEnvelope("pattern", context, tuple(report.pattern_details(reports)),
                                             report.PATTERN_DETAIL_COLUMNS)
        else:
            envelope = report.OutputEnvelope("pattern", context, tuple(report.pattern_records(reports)),
                                             report.PATTERN_COLUMNS)
        if svg is not None:
            written = write_strip_chart(str(svg), reports, f"p={p} h={h} {coeffs.value}  t in [{lo}, {hi}]")
            log.info("chart written to %s", written)
        _emit(state, envelope)
        if state.format is OutputFormat.TABLE:
            draw_verdict_strip(envelope)


@app.command()
def bounds(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p"),
    h: int = typer.Option(..., "--h"),
    n_max: int = typer.Option(..., "--N-max"),
    variant: Variant = typer.Option(Variant.RHVC, "--variant"),
):
    """Divisibility-bound inequality over the extremal MRW-shape ideal at each N."""
    state = _state(ctx)
    with _guard(state, "bounds"):
        chrom = ChromaticContext(p, h)
        rows = theoremC_sweep(chrom, n_max, variant)
        _emit(state, report.OutputEnvelope("bounds", {**chrom.to_record(), "variant": variant.value},
                                           tuple(report.sweep_records(rows))))


@app.command("conclusions")
def conclusions_cmd(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p"),
    h: int = typer.Option(..., "--h"),
    n_max: int = typer.Option(20, "--N-max", help="Depth of the divisibility-bound sweep."),
):
    """Implications licensed by the pattern and bound checks."""
    state = _state(ctx)
    with _guard(state, "conclusions"):
        chrom = ChromaticContext(p, h)
        result = conclusions(chrom, n_max)
        context = {**chrom.to_record(), "applicable": str(result.applicable).lower()}
        _emit(state, report.OutputEnvelope("conclusions", context,
                                           tuple(report.conclusions_records(result))))


if __name__ == "__main__":
    app()
