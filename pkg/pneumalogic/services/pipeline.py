"""
Verification pipeline for coordinating the netlist-to-verdict workflow.

This module provides the VerificationPipeline class that runs a netlist
through parse -> simulate -> discretize -> extract -> verify as named steps,
and the batch simulation used by the ``simulate`` command.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, List, Optional, Sequence, Union

from pneumalogic.config import Settings, StructuredLogger, get_logger, get_settings
from pneumalogic.exceptions import InvalidMonitorError, NetlistParseError, PneumaLogicError
from pneumalogic.models.chart import StateTransitionChart, VerificationReport
from pneumalogic.models.circuit import CircuitModel, Monitor
from pneumalogic.models.trace import DiscreteTrace, SimConfig, State, Trace
from pneumalogic.netlist.parser import load_circuit
from pneumalogic.services.discretizer import discretize_trace, extract_sequence
from pneumalogic.services.simulator import simulate, write_trace_csv
from pneumalogic.services.verifier import verify

logger = get_logger(__name__)


class PipelineStatus(str, Enum):
    """Status of pipeline execution."""

    PENDING = "pending"
    IN_PROGRESS = "in_progress"
    COMPLETED = "completed"
    FAILED = "failed"


class PipelineStep(str, Enum):
    """Steps in the verification pipeline."""

    PARSE = "parse"
    SIMULATE = "simulate"
    DISCRETIZE = "discretize"
    EXTRACT = "extract"
    VERIFY = "verify"


@dataclass
class StepResult:
    """
    Result of a single pipeline step.

    Attributes:
        step: The pipeline step that was executed.
        status: Status of the step.
        started_at: When the step started.
        completed_at: When the step completed.
        data: Step output summary.
        error: Error message if the step failed.
    """

    step: PipelineStep
    status: PipelineStatus
    started_at: datetime = field(default_factory=datetime.now)
    completed_at: Optional[datetime] = None
    data: Any = None
    error: Optional[str] = None


@dataclass
class PipelineResult:
    """
    Complete result of a pipeline execution.

    Attributes:
        run_id: Unique identifier for this run.
        netlist: Path of the simulated netlist.
        status: Overall pipeline status.
        started_at: When the run started.
        completed_at: When the run completed.
        steps: Results of individual steps.
        circuit: Parsed circuit.
        trace: Analog simulation trace.
        discrete: Discretized logic signals.
        sequence: Dwell-filtered state sequence.
        report: Verification report (only when a chart was given).
        error: Error message if the run failed.
    """

    run_id: str
    netlist: str
    status: PipelineStatus = PipelineStatus.PENDING
    started_at: datetime = field(default_factory=datetime.now)
    completed_at: Optional[datetime] = None
    steps: List[StepResult] = field(default_factory=list)
    circuit: Optional[CircuitModel] = None
    trace: Optional[Trace] = None
    discrete: Optional[DiscreteTrace] = None
    sequence: Optional[List[State]] = None
    report: Optional[VerificationReport] = None
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        """Whether the run completed and (if verified) the verdict is PASS."""
        if self.status is not PipelineStatus.COMPLETED:
            return False
        return self.report.passed if self.report is not None else True

    @property
    def duration_seconds(self) -> Optional[float]:
        """Get total run duration in seconds."""
        if self.completed_at:
            return (self.completed_at - self.started_at).total_seconds()
        return None


def chart_monitors(circuit: CircuitModel, chart: StateTransitionChart) -> List[Monitor]:
    """
    Circuit monitors in the chart's signal order.

    Raises:
        InvalidMonitorError: If a chart signal is not a monitor of the circuit.
    """
    monitors = []
    for ref in chart.signals:
        try:
            monitors.append(circuit.monitor(ref.actuator, ref.label))
        except KeyError as e:
            raise InvalidMonitorError(
                f"Chart {chart.name} signal {ref} is not declared as a monitor",
                details={"signal": str(ref), "monitors": [m.signal for m in circuit.monitors]},
            ) from e
    return monitors


class VerificationPipeline:
    """
    Runs a netlist through simulation and (optionally) chart verification.

    Attributes:
        settings: Defaults for simulation and verification.
        journal: Optional run journal receiving one entry per step.

    Example:
        >>> pipeline = VerificationPipeline()
        >>> result = pipeline.run("circuits/crawler.pneu", chart=crawler_chart)
        >>> result.report.passed
        True
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        journal: Optional[StructuredLogger] = None,
    ) -> None:
        self._settings = settings
        self.journal = journal
        self._run_counter = 0

    @property
    def settings(self) -> Settings:
        """Lazy-load settings on first access."""
        if self._settings is None:
            self._settings = get_settings()
        return self._settings

    def _generate_run_id(self) -> str:
        """Generate a unique run ID."""
        self._run_counter += 1
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        return f"run_{timestamp}_{self._run_counter:04d}"

    def _record(
        self,
        result: PipelineResult,
        step: PipelineStep,
        status: PipelineStatus,
        data: Any = None,
        error: Optional[str] = None,
    ) -> None:
        step_result = StepResult(step=step, status=status, data=data, error=error)
        if status in (PipelineStatus.COMPLETED, PipelineStatus.FAILED):
            step_result.completed_at = datetime.now()
        result.steps.append(step_result)
        if self.journal is not None:
            self.journal.log_step(
                len(result.steps), step.value, status.value, output_data=data, error=error
            )

    def run(
        self,
        netlist: Union[str, Path],
        chart: Optional[StateTransitionChart] = None,
        cfg: Optional[SimConfig] = None,
        dwell_min: Optional[float] = None,
        min_cycles: Optional[int] = None,
        trace_out: Optional[Union[str, Path]] = None,
    ) -> PipelineResult:
        """
        Execute the pipeline for one netlist.

        Args:
            netlist: Path of the ``.pneu`` file.
            chart: Chart to verify against; verification is skipped when None.
            cfg: Simulation config; settings defaults when None.
            dwell_min: Dwell filter override.
            min_cycles: Required cycle coverage override.
            trace_out: Also write the trace CSV here.

        Returns:
            PipelineResult with every intermediate artifact.

        Raises:
            NetlistParseError: If the netlist does not parse.
            SimulationError: If the simulation fails.
            VerificationError: If discretization or verification cannot run.
        """
        result = PipelineResult(run_id=self._generate_run_id(), netlist=str(netlist))
        result.status = PipelineStatus.IN_PROGRESS
        cfg = cfg or self.settings.sim_config()
        dwell = self.settings.dwell_min if dwell_min is None else dwell_min
        cycles = self.settings.min_cycles if min_cycles is None else min_cycles
        logger.info(f"Starting pipeline {result.run_id} for {netlist}")

        step = PipelineStep.PARSE
        try:
            result.circuit = load_circuit(netlist)
            self._record(result, step, PipelineStatus.COMPLETED, result.circuit.element_count)

            step = PipelineStep.SIMULATE
            result.trace = simulate(result.circuit, cfg)
            if trace_out is not None:
                write_trace_csv(result.trace, trace_out)
            self._record(
                result,
                step,
                PipelineStatus.COMPLETED,
                {"samples": len(result.trace), "events": len(result.trace.events)},
            )

            step = PipelineStep.DISCRETIZE
            monitors = (
                chart_monitors(result.circuit, chart)
                if chart is not None
                else list(result.circuit.monitors)
            )
            result.discrete = discretize_trace(result.trace, monitors)
            self._record(
                result,
                step,
                PipelineStatus.COMPLETED,
                {"signals": [str(s) for s in result.discrete.signals],
                 "changes": len(result.discrete.change_times())},
            )

            step = PipelineStep.EXTRACT
            result.sequence = extract_sequence(result.discrete, dwell)
            self._record(
                result, step, PipelineStatus.COMPLETED, {"states": len(result.sequence)}
            )

            if chart is not None:
                step = PipelineStep.VERIFY
                result.report = verify(result.sequence, chart, cycles)
                self._record(
                    result,
                    step,
                    PipelineStatus.COMPLETED,
                    {"passed": result.report.passed, "reason": result.report.reason},
                )

            result.status = PipelineStatus.COMPLETED
            result.completed_at = datetime.now()
            logger.info(f"Pipeline {result.run_id} completed in {result.duration_seconds:.2f}s")

        except PneumaLogicError as e:
            self._fail(result, step, str(e))
            raise

        except Exception as e:
            self._fail(result, step, f"Unexpected error: {e}")
            logger.error(f"Pipeline {result.run_id} failed unexpectedly: {e}", exc_info=True)
            raise PneumaLogicError(f"Pipeline failed unexpectedly: {e}") from e

        return result

    def _fail(self, result: PipelineResult, step: PipelineStep, error: str) -> None:
        result.status = PipelineStatus.FAILED
        result.error = error
        result.completed_at = datetime.now()
        self._record(result, step, PipelineStatus.FAILED, error=error)
        logger.error(f"Pipeline {result.run_id} failed at {step.value}: {error}")


# =============================================================================
# Batch simulation
# =============================================================================


@dataclass
class BatchItem:
    """
    Outcome of simulating one netlist in a batch.

    Attributes:
        netlist: Input path.
        output: Written trace CSV (None on failure).
        samples: Recorded samples.
        events: Localized crossings.
        error: Error message on failure.
        exit_code: Exit code class of the failure (0 on success).
        diagnostics: Formatted parse diagnostics when the netlist did not parse.
    """

    netlist: str
    output: Optional[str] = None
    samples: int = 0
    events: int = 0
    error: Optional[str] = None
    exit_code: int = 0
    diagnostics: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.error is None


def _simulate_one(netlist: str, output: str, cfg: SimConfig) -> BatchItem:
    try:
        circuit = load_circuit(netlist)
        trace = simulate(circuit, cfg)
        write_trace_csv(trace, output)
    except NetlistParseError as e:
        return BatchItem(
            netlist=netlist,
            error=e.message,
            exit_code=e.exit_code,
            diagnostics=[d.format(netlist) for d in e.diagnostics],
        )
    except PneumaLogicError as e:
        return BatchItem(netlist=netlist, error=e.message, exit_code=e.exit_code)
    except OSError as e:
        return BatchItem(netlist=netlist, error=str(e), exit_code=1)
    return BatchItem(
        netlist=netlist, output=output, samples=len(trace), events=len(trace.events)
    )


def simulate_batch(
    netlists: Sequence[Union[str, Path]],
    outputs: Sequence[Union[str, Path]],
    cfg: SimConfig,
    workers: int = 1,
) -> List[BatchItem]:
    """
    Simulate several netlists, one trace CSV each.

    Failures are isolated per file. Results are in input order.

    Args:
        netlists: Input ``.pneu`` paths.
        outputs: Trace CSV path per netlist.
        cfg: Simulation config shared by all runs.
        workers: Worker processes; 1 runs in-process.
    """
    jobs = [(str(n), str(o)) for n, o in zip(netlists, outputs)]
    if workers <= 1 or len(jobs) <= 1:
        items = [_simulate_one(n, o, cfg) for n, o in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_simulate_one, n, o, cfg) for n, o in jobs]
            items = [f.result() for f in futures]
    failed = sum(not item.ok for item in items)
    logger.info(f"Batch simulation finished: {len(items) - failed} ok, {failed} failed")
    return items
