"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                           ChainCensus v1.0.0                                 ║
║          Exact counts of Collatz chain shapes and integers                   ║
║                                                                              ║
║  Commands:                                                                   ║
║    gamma       closed-form counts of official + non-official shapes          ║
║    delta       lower bound on proper chains, with per-(K, q) breakdown       ║
║    census      exhaustive classification of ]2^n, 2^(n+1)]                   ║
║    calibrate   score incidence predicates against the published T(n)         ║
║    generative  generative seeds and their proper successors                  ║
║    verify      property suites (periodicity, bijection, ratio, oracles)      ║
║    plot        static SVG line chart from any emitted CSV                    ║
║                                                                              ║
║  Exit codes: 0 ok · 1 domain/guard error · 2 property violation · 3 I/O      ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass
from typing import Callable, Optional

import click
from rich.console import Console

# ── Internal imports ──────────────────────────────────────────────────────────
from config import settings
from calculus.classify import IncidencePredicate
from calculus.counting import delta, gamma
from calculus.errors import ChainCensusError
from census.calibrate import calibrate_predicate
from census.oracle import check_guard, generative_census, integer_census, shape_census
from census.verify import SUITES, run_suite, summarise
from ui.plots import write_plot
from ui.tables import FORMATS, TableRow, emit, to_frame
from utils.alerts import clear_mismatches, get_recent_mismatches
from utils.cache import CensusStore
from utils.logger import configure_logging, get_logger

log = get_logger(__name__)

err_console = Console(stderr=True)

EXIT_OK, EXIT_DOMAIN, EXIT_PROPERTY, EXIT_IO = 0, 1, 2, 3


@dataclass
class RunContext:
    store: Optional[CensusStore]
    max_n: Optional[int]

    def census_cap(self) -> int:
        return self.max_n if self.max_n is not None else settings.CENSUS_MAX_N

    def formula_cap(self) -> int:
        return self.max_n if self.max_n is not None else settings.FORMULA_MAX_N


# ── Error → exit status ───────────────────────────────────────────────────────
def exit_codes(fn: Callable) -> Callable:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ChainCensusError, ValueError) as e:
            err_console.print(f"[red]error:[/red] {e}")
            log.debug("Domain error in {}: {!r}", fn.__name__, e)
            raise SystemExit(EXIT_DOMAIN)
        except OSError as e:
            err_console.print(f"[red]I/O error:[/red] {e}")
            raise SystemExit(EXIT_IO)
    return wrapper


def _out():
    return sys.stdout


def _range(n_min: int, n_max: Optional[int]) -> range:
    n_max = n_min if n_max is None else n_max
    if n_min > n_max:
        raise ValueError(f"--n-min {n_min} is above --n-max {n_max}")
    return range(n_min, n_max + 1)


def _predicate(token: Optional[str]) -> IncidencePredicate:
    return IncidencePredicate.parse(token or settings.DEFAULT_PREDICATE)


def _report_mismatches() -> None:
    records = get_recent_mismatches()
    if records:
        err_console.print(f"[yellow]{len(records)} mismatch record(s):[/yellow]")
        for record in reversed(records):
            err_console.print(f"  {record}")


format_option = click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
threads_option = click.option("--threads", type=click.IntRange(min=1), default=None,
                              help="Worker threads (default: CPU count).")
partitions_option = click.option("--partitions", type=click.IntRange(min=1), default=None,
                                 help="Subranges per census (default: threads).")
predicate_option = click.option("--predicate", default=None,
                                help=f"Incidence predicate token (default: {settings.DEFAULT_PREDICATE}).")


# ── Group ─────────────────────────────────────────────────────────────────────
class ChainCensusGroup(click.Group):
    """Usage errors exit with the domain status; 2 stays reserved for failed suites."""

    def make_context(self, *args, **kwargs):
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as e:
            e.exit_code = EXIT_DOMAIN
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_DOMAIN
            raise


@click.group(cls=ChainCensusGroup)
@click.option("--cache-dir", envvar=settings.CACHE_DIR_ENV, default=None, type=click.Path(file_okay=False),
              help=f"Census cache directory (env: {settings.CACHE_DIR_ENV}).")
@click.option("--no-cache", is_flag=True, help="Neither read nor write the census file cache.")
@click.option("--unsafe-max-n", type=int, default=None, help="Override every n guard.")
@click.option("--log-level", default=settings.LOG_LEVEL, show_default=True,
              type=click.Choice(["TRACE", "DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
@click.version_option(settings.APP_VERSION, prog_name="chaincensus")
@click.pass_context
def cli(ctx, cache_dir, no_cache, unsafe_max_n, log_level):
    """Closed-form counts and brute-force censuses of Collatz chains."""
    configure_logging(level=log_level)
    clear_mismatches()
    store = None if (no_cache or not settings.CACHE_ENABLED) else CensusStore(cache_dir)
    ctx.obj = RunContext(store=store, max_n=unsafe_max_n)


def _workers(threads: Optional[int], partitions: Optional[int]) -> tuple[int, int]:
    """(threads, partitions); partitions default to the thread count."""
    threads = settings.CENSUS_THREADS if threads is None else threads
    return threads, threads if partitions is None else partitions


def _census_t(run: RunContext, n: int, pred: IncidencePredicate, threads, partitions) -> int:
    check_guard(n, settings.CENSUS_MIN_N, run.census_cap())
    threads, partitions = _workers(threads, partitions)
    report = integer_census(n, pred, partitions, threads, run.census_cap(), run.store)
    return report.t


# ── gamma ─────────────────────────────────────────────────────────────────────
@cli.command("gamma")
@click.option("--n-min", type=int, default=3, show_default=True)
@click.option("--n-max", type=int, default=None, help="Defaults to --n-min.")
@format_option
@click.option("--with-t", is_flag=True, help="Add T(n) and the (gamma+T) ratio from the census.")
@click.option("--reference", is_flag=True, help="Add the published values as ref_* columns.")
@predicate_option
@threads_option
@partitions_option
@click.pass_obj
@exit_codes
def cmd_gamma(run: RunContext, n_min, n_max, fmt, with_t, reference, predicate, threads, partitions):
    """gamma(n): official plus non-official chain shapes."""
    ns = _range(n_min, n_max)
    for n in (ns.start, ns.stop - 1):
        check_guard(n, settings.FORMULA_MIN_N, run.formula_cap(), "gamma")
    pred = _predicate(predicate)

    rows = []
    for n in ns:
        t = _census_t(run, n, pred, threads, partitions) if with_t else None
        rows.append(TableRow.build(n, gamma=gamma(n).total, t=t))

    columns = ["n", "gamma", "ratio_gamma"]
    if with_t:
        columns += ["t", "ratio_gamma_t"]
    if reference:
        columns += ["ref_gamma"] + (["ref_t"] if with_t else [])
    emit(to_frame(rows, columns), fmt, _out(), title="gamma(n)")


# ── delta ─────────────────────────────────────────────────────────────────────
@cli.command("delta")
@click.option("--n-min", type=int, default=3, show_default=True)
@click.option("--n-max", type=int, default=None, help="Defaults to --n-min.")
@format_option
@click.option("--verbose", "-v", is_flag=True, help="Add the g + per-(K, q) breakdown.")
@click.option("--with-t", is_flag=True, help="Add T(n) and the T/delta ratio from the census.")
@click.option("--reference", is_flag=True, help="Add the published values as ref_* columns.")
@predicate_option
@threads_option
@partitions_option
@click.pass_obj
@exit_codes
def cmd_delta(run: RunContext, n_min, n_max, fmt, verbose, with_t, reference, predicate, threads, partitions):
    """delta(n): lower bound on proper chains."""
    ns = _range(n_min, n_max)
    for n in (ns.start, ns.stop - 1):
        check_guard(n, settings.FORMULA_MIN_N, run.formula_cap(), "delta")
    pred = _predicate(predicate)

    records, breakdowns = [], []
    for n in ns:
        breakdown = delta(n)
        t = _census_t(run, n, pred, threads, partitions) if with_t else None
        row = TableRow.build(n, t=t, delta=breakdown.total).to_dict()
        record = {"n": n, "delta": breakdown.total}
        if verbose:
            record["breakdown"] = "+".join(str(c) for c in breakdown.summands())
        if with_t:
            record.update(t=t, ratio_t_delta=row["ratio_t_delta"])
        if reference:
            record["ref_delta"] = row["ref_delta"]
            if with_t:
                record["ref_t"] = row["ref_t"]
        records.append(record)
        breakdowns.append({**breakdown.to_dict(), **record})

    if verbose and fmt == "json":
        click.echo(json.dumps(breakdowns, indent=2))
        return
    emit(records, fmt, _out(), title="delta(n)")


# ── census ────────────────────────────────────────────────────────────────────
@cli.command("census")
@click.argument("n", type=int)
@click.option("--n-max", type=int, default=None, help="Sweep n..N_MAX.")
@click.option("--shapes", is_flag=True, help="Enumerate shapes instead of integers.")
@predicate_option
@threads_option
@partitions_option
@format_option
@click.pass_obj
@exit_codes
def cmd_census(run: RunContext, n, n_max, shapes, predicate, threads, partitions, fmt):
    """Classify every odd integer (or every shape) for chain length N."""
    ns = _range(n, n_max)
    for m in (ns.start, ns.stop - 1):
        check_guard(m, settings.CENSUS_MIN_N, run.census_cap())
    pred = _predicate(predicate)
    threads, partitions = _workers(threads, partitions)

    records = []
    for m in ns:
        if shapes:
            report = shape_census(m, run.census_cap())
            formula = gamma(m).total
            records.append({"n": m, **report.counts, "total": report.total,
                            "gamma": formula, "match": report.satisfying == formula})
            continue
        report = integer_census(m, pred, partitions, threads, run.census_cap(), run.store)
        records.append({
            "n": m,
            "predicate": report.predicate,
            **report.counts,
            "evens": report.evens,
            "gamma_plus_t": report.gamma_plus_t,
            "ref_t": settings.REFERENCE_T.get(m),
            "partition_count": report.partition_count,
            "elapsed": f"{report.elapsed:.3f}",
        })
    emit(records, fmt, _out(), title="shape census" if shapes else f"integer census ({pred})")


# ── calibrate ─────────────────────────────────────────────────────────────────
@cli.command("calibrate")
@click.option("--n-min", type=int, default=3, show_default=True)
@click.option("--n-max", type=int, default=12, show_default=True)
@threads_option
@partitions_option
@format_option
@click.pass_obj
@exit_codes
def cmd_calibrate(run: RunContext, n_min, n_max, threads, partitions, fmt):
    """Score every incidence predicate against the published T(n)."""
    if n_min <= n_max:
        for m in (n_min, n_max):
            check_guard(m, settings.CENSUS_MIN_N, run.census_cap())
    threads, partitions = _workers(threads, partitions)
    report = calibrate_predicate(n_min, n_max, partitions=partitions, threads=threads,
                                 max_n=run.census_cap(), store=run.store)
    if report.is_empty:
        err_console.print("[yellow]empty n range: nothing calibrated[/yellow]")
        emit([], fmt, _out())
        return

    records = [{"n": row["n"], "reference_t": row["reference_t"], **row["t"]} for row in report.rows]
    emit(records, fmt, _out(), title="T(n) per predicate")
    err_console.print("scores: " + ", ".join(f"{t}={s}" for t, s in report.scores.items()))
    err_console.print(f"[bold]best predicate:[/bold] {report.best}")
    _report_mismatches()


# ── generative ────────────────────────────────────────────────────────────────
@cli.command("generative")
@click.argument("n", type=int)
@click.option("--n-max", type=int, default=None, help="Sweep n..N_MAX.")
@format_option
@click.pass_obj
@exit_codes
def cmd_generative(run: RunContext, n, n_max, fmt):
    """Generative seeds in [2/3·2^n, 2^n] against delta(n)."""
    records = []
    for m in _range(n, n_max):
        report = generative_census(m, run.census_cap()).to_dict()
        report["per_interval_K"] = ";".join(f"{K}:{c}" for K, c in report["per_interval_K"].items())
        records.append(report)
    emit(records, fmt, _out(), title="generative census")
    _report_mismatches()


# ── verify ────────────────────────────────────────────────────────────────────
@cli.command("verify")
@click.argument("suite", type=click.Choice(sorted(SUITES)))
@click.option("--n", "n_single", type=int, default=None, help="Single n (suite 2).")
@click.option("--n-min", type=int, default=None)
@click.option("--n-max", type=int, default=None)
@click.option("--trials", type=int, default=None, help="Random pairs (suite 1).")
@click.option("--max-z", type=int, default=None, help="Largest z (suite 1).")
@click.option("--seed", type=int, default=None, help="RNG seed (suite 1).")
@click.pass_obj
@exit_codes
def cmd_verify(run: RunContext, suite, n_single, n_min, n_max, trials, max_z, seed):
    """Run a property suite; exit 2 on any counterexample."""
    if n_single is not None:
        n_min = n_max = n_single

    if suite == "1":
        params = {"trials": trials, "max_z": max_z, "seed": seed}
    elif suite == "log-floor":
        params = {"m_max": n_max}
    else:
        params = {"n_min": n_min, "n_max": n_max}
        if n_max is not None and suite in ("2", "gamma-oracle", "official-count"):
            check_guard(n_max, 1, run.census_cap(), f"suite {suite}")

    result = run_suite(suite, **params)
    click.echo(summarise(result))
    for witness in result.failures:
        click.echo(json.dumps(witness, default=str))
    if not result.passed:
        err_console.print(f"[red]{result.failure_count} counterexample(s)[/red]")
        raise SystemExit(EXIT_PROPERTY)


# ── plot ──────────────────────────────────────────────────────────────────────
@cli.command("plot")
@click.argument("input_csv", type=click.Path(dir_okay=False))
@click.argument("output_svg", type=click.Path(dir_okay=False))
@click.option("--series", "-s", multiple=True, required=True,
              help="Column(s) to draw against n; repeat or comma-separate.")
@exit_codes
def cmd_plot(input_csv, output_svg, series):
    """Static SVG line chart of CSV columns against n."""
    names = [s.strip() for item in series for s in item.split(",") if s.strip()]
    path = write_plot(input_csv, output_svg, names)
    err_console.print(f"[green]Chart saved to {path}[/green]")


if __name__ == "__main__":
    cli()
