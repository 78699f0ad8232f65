"""
Command-line front end for pneumalogic.

Subcommands:
    check       parse netlists and print diagnostics
    simulate    run netlists and write trace CSVs
    discretize  turn a trace CSV into logic-signal CSV
    verify      check a trace (or a fresh simulation) against a chart
    synthesize  enumerate gate networks realizing a chart
    plot        render a trace as a three-panel figure

Exit codes: 0 success, 1 usage / configuration / I/O, 2 parse,
3 verification failure, 4 simulation failure.
"""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, List, Optional

import click
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table
from rich.text import Text
from typer.core import TyperGroup

from pneumalogic.config import (
    Settings,
    StructuredLogger,
    configure_logging,
    get_logger,
    get_settings,
)
from pneumalogic.exceptions import NetlistParseError, PneumaLogicError
from pneumalogic.models.trace import SimConfig
from pneumalogic.netlist import abstract, load_chart, load_circuit, parse_file
from pneumalogic.services.abstract_machine import AbstractMachine, logic_simulate
from pneumalogic.services.discretizer import discretize_trace, extract_sequence, write_logic_csv
from pneumalogic.services.pipeline import VerificationPipeline, chart_monitors, simulate_batch
from pneumalogic.services.simulator import read_trace_csv
from pneumalogic.services.synthesizer import problem_from_chart, render_assignments, synthesize
from pneumalogic.services.verifier import verify as verify_sequence
from pneumalogic.utils.files import atomic_write_text

logger = get_logger(__name__)

EXIT_USAGE = 1
EXIT_VERIFICATION = 3

console = Console(highlight=False, soft_wrap=True)


class PneumaGroup(TyperGroup):
    """Root group; owns the process exit so usage errors exit with ``EXIT_USAGE``."""

    def main(
        self,
        args: Optional[List[str]] = None,
        prog_name: Optional[str] = None,
        complete_var: Optional[str] = None,
        standalone_mode: bool = True,
        **extra: Any,
    ) -> Any:
        try:
            rv = super().main(
                args=args,
                prog_name=prog_name,
                complete_var=complete_var,
                standalone_mode=False,
                **extra,
            )
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            if not standalone_mode:
                raise
            e.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as e:
            if not standalone_mode:
                raise
            e.show()
            sys.exit(e.exit_code)
        except click.Abort:
            if not standalone_mode:
                raise
            typer.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        if not standalone_mode:
            return rv
        sys.exit(rv if isinstance(rv, int) else 0)


app = typer.Typer(
    name="pneumalogic",
    cls=PneumaGroup,
    help="Simulate, verify and synthesize pneumatic logic circuits.",
    add_completion=False,
    no_args_is_help=True,
)


def _fail(message: str, code: int) -> typer.Exit:
    typer.echo(f"error: {message}", err=True)
    return typer.Exit(code=code)


@contextmanager
def _reported_errors() -> Iterator[None]:
    """Turn package errors into diagnostics and their exit code."""
    try:
        yield
    except NetlistParseError as e:
        source = e.details.get("file", "<input>")
        for diagnostic in e.diagnostics:
            typer.echo(diagnostic.format(source), err=True)
        raise _fail(e.message, e.exit_code)
    except PneumaLogicError as e:
        raise _fail(e.message, e.exit_code)
    except ValidationError as e:
        raise _fail(f"invalid option: {e.errors()[0].get('msg', e)}", EXIT_USAGE)
    except OSError as e:
        raise _fail(str(e), EXIT_USAGE)


def _state(ctx: typer.Context) -> dict:
    return ctx.ensure_object(dict)


def _settings(ctx: typer.Context) -> Settings:
    return _state(ctx)["settings"]


def _journal(ctx: typer.Context) -> Optional[StructuredLogger]:
    return _state(ctx).get("journal")


def _sim_config(
    ctx: typer.Context,
    t_end: Optional[float],
    dt_max: Optional[float],
    event_tol: Optional[float] = None,
    record_stride: Optional[int] = None,
) -> SimConfig:
    return _settings(ctx).sim_config(
        t_end=t_end, dt_max=dt_max, event_tol=event_tol, record_stride=record_stride
    )


@app.callback()
def main_callback(
    ctx: typer.Context,
    log_level: Optional[str] = typer.Option(
        None, "--log-level", help="Logging level (defaults to PNEUMA_LOG_LEVEL)."
    ),
    json_logs: bool = typer.Option(False, "--json-logs", help="JSON records in the log file."),
) -> None:
    """Simulate, verify and synthesize pneumatic logic circuits."""
    try:
        settings = get_settings()
    except PneumaLogicError as e:
        raise _fail(e.message, e.exit_code)
    configure_logging(
        level=(log_level or settings.log_level),
        log_dir=settings.logs_dir,
        json_logs=json_logs or settings.json_logs,
        console_output=True,
        file_output=settings.log_to_file,
    )
    state = _state(ctx)
    state["settings"] = settings
    if settings.journal_dir:
        settings.ensure_directories()
        state["journal"] = StructuredLogger(log_dir=settings.journal_dir)
    logger.debug(f"Invoked subcommand {ctx.invoked_subcommand}")


# =============================================================================
# check
# =============================================================================


@app.command()
def check(
    netlists: List[Path] = typer.Argument(
        ..., exists=True, dir_okay=False, help="Netlist files to check."
    ),
    gates: bool = typer.Option(
        False, "--gates", help="Also print the abstracted gates and their predicted cycle."
    ),
) -> None:
    """Parse netlists and print diagnostics (exit 0 iff no errors)."""
    failed = False
    for path in netlists:
        try:
            document = parse_file(path)
        except OSError as e:
            raise _fail(str(e), EXIT_USAGE)
        for diagnostic in document.diagnostics:
            typer.echo(diagnostic.format(path))
        if document.circuit is None:
            failed = True
            continue
        circuit = document.circuit
        typer.echo(
            f"{path}: ok ({len(circuit.actuators)} actuators, {len(circuit.valves)} valves, "
            f"{len(circuit.monitors)} monitors)"
        )
        if gates and not _print_gates(path, document):
            failed = True
    if failed:
        raise typer.Exit(code=NetlistParseError.exit_code)


def _print_gates(path: Path, document: Any) -> bool:
    circuit = document.circuit
    try:
        relations = abstract(circuit)
    except PneumaLogicError as e:
        element = e.details.get("valve") or e.details.get("actuator")
        line, col = document.locations.get(element, (1, 1))
        typer.echo(f"{path}:{line}:{col}: error: {e.message}")
        return False
    for gate in relations:
        typer.echo(f"  gate {gate.valve}: {gate}")
    if not circuit.monitors:
        return True
    try:
        run = logic_simulate(AbstractMachine.from_circuit(circuit))
    except PneumaLogicError as e:
        typer.echo(f"{path}: warning: {e.message}")
        return True
    cycle = " -> ".join("".join(map(str, state)) for state in run.cycle)
    label = "fixed point" if run.deadlock else f"cycle of {len(run.cycle)}"
    signals = " ".join(str(s) for s in run.signals)
    typer.echo(f"  predicted {label} over {signals}: {cycle}")
    return True


# =============================================================================
# simulate
# =============================================================================


@app.command()
def simulate(
    ctx: typer.Context,
    netlists: List[Path] = typer.Argument(
        ..., exists=True, dir_okay=False, help="Netlist files to simulate."
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Trace CSV path (single netlist only)."
    ),
    out_dir: Optional[Path] = typer.Option(
        None, "--out-dir", help="Directory for <netlist>.csv traces (default: next to input)."
    ),
    t_end: Optional[float] = typer.Option(None, "--t-end", help="Simulation horizon (s)."),
    dt_max: Optional[float] = typer.Option(None, "--dt-max", help="Base step (s)."),
    event_tol: Optional[float] = typer.Option(None, "--event-tol", help="Crossing tolerance."),
    record_stride: Optional[int] = typer.Option(
        None, "--record-stride", help="Record every n-th base step."
    ),
    workers: Optional[int] = typer.Option(
        None, "--workers", "-j", min=1, help="Worker processes for several netlists."
    ),
) -> None:
    """Simulate netlists and write one trace CSV each."""
    if out is not None and len(netlists) > 1:
        raise _fail("--out takes a single netlist; use --out-dir for several", EXIT_USAGE)
    with _reported_errors():
        cfg = _sim_config(ctx, t_end, dt_max, event_tol, record_stride)
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
    outputs = [
        out if out is not None else (out_dir or path.parent) / f"{path.stem}.csv"
        for path in netlists
    ]
    n_workers = workers if workers is not None else _settings(ctx).batch_workers
    items = simulate_batch(netlists, outputs, cfg, workers=n_workers)

    table = Table(title="Simulation", show_lines=False)
    for column in ("netlist", "trace", "samples", "events", "status"):
        table.add_column(column)
    for item in items:
        for diagnostic in item.diagnostics:
            typer.echo(diagnostic, err=True)
        status = Text("ok", style="green") if item.ok else Text(item.error or "", style="red")
        table.add_row(
            Text(item.netlist), Text(item.output or "-"), str(item.samples), str(item.events),
            status,
        )
    console.print(table)

    journal = _journal(ctx)
    if journal is not None:
        for number, item in enumerate(items, start=1):
            journal.log_step(
                number, "simulate", "completed" if item.ok else "failed",
                input_data={"netlist": item.netlist},
                output_data={"trace": item.output, "samples": item.samples},
                error=item.error,
            )
    failures = [item for item in items if not item.ok]
    if failures:
        raise typer.Exit(code=failures[0].exit_code)


# =============================================================================
# discretize
# =============================================================================


@app.command()
def discretize(
    trace_csv: Path = typer.Argument(..., exists=True, dir_okay=False, help="Trace CSV."),
    netlist: Path = typer.Option(
        ..., "--netlist", "-n", exists=True, dir_okay=False, help="Netlist declaring monitors."
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Logic CSV path (default: <trace>.logic.csv)."
    ),
) -> None:
    """Discretize a trace into logic signals."""
    target = out or trace_csv.with_suffix(".logic.csv")
    with _reported_errors():
        circuit = load_circuit(netlist)
        trace = read_trace_csv(trace_csv)
        discrete = discretize_trace(trace, circuit.monitors)
        write_logic_csv(discrete, target)
    typer.echo(
        f"wrote {target}: {len(discrete.signals)} signals, "
        f"{len(discrete.change_times())} changes"
    )


# =============================================================================
# verify
# =============================================================================


@app.command()
def verify(
    ctx: typer.Context,
    chart_file: Path = typer.Argument(..., exists=True, dir_okay=False, help="Chart file."),
    netlist: Path = typer.Option(
        ..., "--netlist", "-n", exists=True, dir_okay=False, help="Circuit netlist."
    ),
    trace_csv: Optional[Path] = typer.Option(
        None, "--trace", "-t", exists=True, dir_okay=False,
        help="Stored trace CSV; the netlist is simulated when omitted.",
    ),
    trace_out: Optional[Path] = typer.Option(
        None, "--trace-out", help="Also write the simulated trace here."
    ),
    dwell_min: Optional[float] = typer.Option(None, "--dwell-min", help="Dwell filter (s)."),
    min_cycles: Optional[int] = typer.Option(
        None, "--min-cycles", min=1, help="Complete cycles required to pass."
    ),
    t_end: Optional[float] = typer.Option(None, "--t-end", help="Simulation horizon (s)."),
    dt_max: Optional[float] = typer.Option(None, "--dt-max", help="Base step (s)."),
) -> None:
    """Verify a trace or a fresh simulation against a chart (exit 0 iff pass)."""
    settings = _settings(ctx)
    with _reported_errors():
        chart = load_chart(chart_file)
        if trace_csv is None:
            pipeline = VerificationPipeline(settings=settings, journal=_journal(ctx))
            result = pipeline.run(
                netlist,
                chart=chart,
                cfg=_sim_config(ctx, t_end, dt_max),
                dwell_min=dwell_min,
                min_cycles=min_cycles,
                trace_out=trace_out,
            )
            report = result.report
        else:
            circuit = load_circuit(netlist)
            discrete = discretize_trace(read_trace_csv(trace_csv), chart_monitors(circuit, chart))
            sequence = extract_sequence(
                discrete, settings.dwell_min if dwell_min is None else dwell_min
            )
            report = verify_sequence(
                sequence, chart, settings.min_cycles if min_cycles is None else min_cycles
            )
    assert report is not None
    typer.echo(report.render())
    if not report.passed:
        raise typer.Exit(code=EXIT_VERIFICATION)


# =============================================================================
# synthesize
# =============================================================================


@app.command(name="synthesize")
def synthesize_command(
    chart_file: Path = typer.Argument(..., exists=True, dir_okay=False, help="Chart file."),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Write fragments here instead of stdout."
    ),
    signals: Optional[str] = typer.Option(
        None, "--signals", help="Comma-separated subset of chart signals to synthesize."
    ),
    allow_constant_vent: bool = typer.Option(
        False, "--allow-constant-vent", help="Admit valve-free outputs with a fixed vent."
    ),
    limit: Optional[int] = typer.Option(
        None, "--limit", min=1, help="Emit only the best-ranked assignments."
    ),
) -> None:
    """Enumerate gate networks realizing a chart, ranked by valve count."""
    subset = [s.strip() for s in signals.split(",") if s.strip()] if signals else None
    with _reported_errors():
        chart = load_chart(chart_file)
        problem = problem_from_chart(chart, subset, allow_constant_vent=allow_constant_vent)
        assignments = synthesize(problem)
    if not assignments:
        raise _fail(f"no gate assignment realizes chart {chart.name}", EXIT_VERIFICATION)
    text = render_assignments(assignments[:limit] if limit else assignments, problem.thresholds)
    if out is None:
        typer.echo(text, nl=False)
        return
    with _reported_errors():
        atomic_write_text(out, text)
    typer.echo(f"wrote {out}: {len(assignments)} assignment(s)", err=True)


# =============================================================================
# plot
# =============================================================================


@app.command()
def plot(
    trace_csv: Path = typer.Argument(..., exists=True, dir_okay=False, help="Trace CSV."),
    netlist: Path = typer.Option(
        ..., "--netlist", "-n", exists=True, dir_okay=False, help="Netlist declaring monitors."
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Figure path; the suffix picks the format (default .svg)."
    ),
    title: Optional[str] = typer.Option(None, "--title", help="Figure title."),
) -> None:
    """Render pressures, valve states and logic rails of a trace."""
    from pneumalogic.services.plotting import plot_trace

    target = out or trace_csv.with_suffix(".svg")
    with _reported_errors():
        circuit = load_circuit(netlist)
        trace = read_trace_csv(trace_csv)
        discrete = discretize_trace(trace, circuit.monitors)
        plot_trace(trace, circuit.monitors, target, discrete=discrete, title=title)
    typer.echo(f"wrote {target}")
