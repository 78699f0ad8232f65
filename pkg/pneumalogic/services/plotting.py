"""
Three-panel trace plots.

Top: actuator pressures with dashed monitor threshold lines. Middle: valve
flow states. Bottom: discretized logic rails. Output format follows the file
suffix (SVG by default); SVG output is byte-stable for a fixed trace.
"""

import io
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from pneumalogic.config import get_logger  # noqa: E402
from pneumalogic.exceptions import InvalidInputError  # noqa: E402
from pneumalogic.models.circuit import Monitor  # noqa: E402
from pneumalogic.models.trace import DiscreteTrace, Trace  # noqa: E402
from pneumalogic.utils.files import atomic_write_bytes  # noqa: E402

logger = get_logger(__name__)

RAIL_SPACING = 1.5
SUPPORTED_FORMATS = ("svg", "pdf", "eps", "png")


def _rail(
    t_start: float, initial: int, changes: Sequence[Tuple[float, int]], t_end: float
) -> Tuple[np.ndarray, np.ndarray]:
    times = [t_start] + [t for t, _ in changes] + [t_end]
    values = [initial] + [v for _, v in changes]
    values.append(values[-1])
    return np.asarray(times, dtype=float), np.asarray(values, dtype=float)


def render_trace_figure(
    trace: Trace,
    monitors: Sequence[Monitor],
    discrete: Optional[DiscreteTrace] = None,
    title: Optional[str] = None,
) -> "plt.Figure":
    """
    Build the three-panel figure for a trace.

    Args:
        trace: Analog trace.
        monitors: Monitors whose thresholds are drawn on the pressure panel.
        discrete: Logic signals for the bottom panel (omitted when None).
        title: Figure title.

    Returns:
        Matplotlib figure; the caller closes it.
    """
    fig, (ax_p, ax_v, ax_l) = plt.subplots(
        3, 1, sharex=True, figsize=(10, 8), gridspec_kw={"height_ratios": [3, 1.5, 1.5]}
    )
    times = trace.times()
    for actuator in trace.actuators:
        (line,) = ax_p.plot(times, trace.pressure_series(actuator), label=actuator, linewidth=1.2)
        for monitor in monitors:
            if monitor.actuator != actuator:
                continue
            for level in monitor.threshold.levels():
                ax_p.axhline(level, color=line.get_color(), linestyle="--", linewidth=0.7,
                             alpha=0.7)
    ax_p.set_ylabel("pressure (psi)")
    ax_p.legend(loc="upper right", fontsize="small")
    ax_p.grid(True, alpha=0.3)

    ticks, names = [], []
    for i, valve in enumerate(trace.valves):
        offset = i * RAIL_SPACING
        ax_v.step(times, trace.status_series(valve) + offset, where="post", linewidth=1.0)
        ticks.append(offset + 0.5)
        names.append(valve)
    ax_v.set_yticks(ticks)
    ax_v.set_yticklabels(names)
    ax_v.set_ylabel("valve open")

    ticks, names = [], []
    if discrete is not None:
        for i, ref in enumerate(discrete.signals):
            offset = i * RAIL_SPACING
            rail_t, rail_v = _rail(
                discrete.t_start, discrete.initial[ref], discrete.changes[ref], discrete.t_end
            )
            ax_l.step(rail_t, rail_v + offset, where="post", linewidth=1.0)
            ticks.append(offset + 0.5)
            names.append(str(ref))
    ax_l.set_yticks(ticks)
    ax_l.set_yticklabels(names)
    ax_l.set_ylabel("logic")
    ax_l.set_xlabel("time (s)")

    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return fig


def plot_trace(
    trace: Trace,
    monitors: Sequence[Monitor],
    path: Union[str, Path],
    discrete: Optional[DiscreteTrace] = None,
    title: Optional[str] = None,
) -> Path:
    """
    Render a trace and write it atomically.

    Raises:
        InvalidInputError: If the file suffix is not a supported format.
    """
    target = Path(path)
    fmt = target.suffix.lstrip(".").lower() or "svg"
    if fmt not in SUPPORTED_FORMATS:
        raise InvalidInputError(
            f"Unsupported plot format {fmt!r}", details={"supported": list(SUPPORTED_FORMATS)}
        )
    fig = render_trace_figure(trace, monitors, discrete, title)
    buffer = io.BytesIO()
    try:
        with matplotlib.rc_context({"svg.hashsalt": "pneumalogic"}):
            fig.savefig(buffer, format=fmt, metadata={"Date": None} if fmt == "svg" else None)
    finally:
        plt.close(fig)
    logger.info(f"Plotted {len(trace)} samples to {target}")
    return atomic_write_bytes(target, buffer.getvalue())
