"""
Parser and serializer for ``.chart`` state transition charts.

Grammar (line-oriented, ``#`` comments)::

    chart <name>
    signals <actuator>[<label>] ...
    threshold <actuator>[<label>] <num> | hyst(<num>,<num>)
    state <name> <bit> ...
    cycle <name> ...

``signals`` must precede ``state`` and ``threshold`` lines.
"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from pneumalogic.config import get_logger
from pneumalogic.exceptions import NetlistParseError
from pneumalogic.models.chart import StateTransitionChart
from pneumalogic.models.logic import ConstantThreshold, HystereticThreshold
from pneumalogic.models.trace import SignalRef, State
from pneumalogic.models.valve import ValveThreshold
from pneumalogic.netlist.parser import DiagnosticSink, ParseDiagnostic, Token, tokenize
from pneumalogic.netlist.serializer import format_threshold
from pneumalogic.utils.files import atomic_write_text
from pneumalogic.utils.validators import (
    parse_bit,
    parse_hyst,
    parse_number,
    parse_signal,
    validate_identifier,
)

logger = get_logger(__name__)


class ChartDocument(BaseModel):
    """
    Result of parsing a chart file.

    Attributes:
        source: Source text.
        chart: Parsed chart; None when any error diagnostic exists.
        diagnostics: Errors and warnings in source order.
    """

    model_config = ConfigDict(frozen=True)

    source: str
    chart: Optional[StateTransitionChart] = None
    diagnostics: Tuple[ParseDiagnostic, ...] = ()

    @property
    def errors(self) -> List[ParseDiagnostic]:
        return [d for d in self.diagnostics if d.is_error]


class _ChartParser:
    def __init__(self) -> None:
        self.sink = DiagnosticSink()
        self.name: Optional[str] = None
        self.signals: Optional[List[SignalRef]] = None
        self.states: Dict[str, State] = {}
        self.state_lines: Dict[str, int] = {}
        self.thresholds: Dict[str, ValveThreshold] = {}
        self.cycle: Optional[List[Tuple[str, int]]] = None
        self.cycle_line = 0

    def parse(self, text: str) -> ChartDocument:
        for number, raw in enumerate(text.splitlines(), start=1):
            tokens = tokenize(raw)
            if not tokens:
                continue
            keyword, col = tokens[0]
            handler = {
                "chart": self._chart,
                "signals": self._signals,
                "threshold": self._threshold,
                "state": self._state,
                "cycle": self._cycle,
            }.get(keyword)
            if handler is None:
                self.sink.error(number, col, f"unknown declaration {keyword!r}", keyword)
                continue
            handler(tokens, number)

        last = max(len(text.splitlines()), 1)
        for what, missing in (
            ("chart", self.name is None),
            ("signals", self.signals is None),
            ("cycle", self.cycle is None),
        ):
            if missing:
                self.sink.error(last, 1, f"chart file has no {what} declaration")

        chart: Optional[StateTransitionChart] = None
        if not self.sink.has_errors:
            self._check_cycle()
        if not self.sink.has_errors:
            assert self.name is not None and self.signals is not None and self.cycle
            try:
                chart = StateTransitionChart(
                    name=self.name,
                    signals=tuple(self.signals),
                    states=self.states,
                    cycle=tuple(name for name, _ in self.cycle),
                    thresholds=self.thresholds,
                )
            except ValidationError as e:
                errors = e.errors()
                message = errors[0].get("msg", str(e)) if errors else str(e)
                self.sink.error(1, 1, f"invalid chart: {message}")
        return ChartDocument(source=text, chart=chart, diagnostics=self.sink.sorted())

    def _single(self, tokens: List[Token], line: int, keyword: str, seen: bool) -> bool:
        if seen:
            self.sink.error(line, tokens[0][1], f"duplicate {keyword} declaration", keyword)
            return False
        return True

    def _chart(self, tokens: List[Token], line: int) -> None:
        if not self._single(tokens, line, "chart", self.name is not None):
            return
        if len(tokens) != 2:
            self.sink.error(line, tokens[0][1], "expected: chart <name>", tokens[0][0])
            return
        check = validate_identifier(tokens[1][0], "chart name")
        if not check:
            self.sink.error(line, tokens[1][1], check.error or "invalid name", tokens[1][0])
            return
        self.name = tokens[1][0]

    def _signals(self, tokens: List[Token], line: int) -> None:
        if not self._single(tokens, line, "signals", self.signals is not None):
            return
        if len(tokens) < 2:
            self.sink.error(line, tokens[0][1], "signals requires at least one signal")
            return
        refs: List[SignalRef] = []
        for text, col in tokens[1:]:
            parsed = parse_signal(text)
            if not parsed:
                self.sink.error(line, col, parsed.error or "invalid signal", text)
                return
            ref = SignalRef(actuator=parsed.value[0], label=parsed.value[1])
            if ref in refs:
                self.sink.error(line, col, f"duplicate signal {text}", text)
                return
            refs.append(ref)
        self.signals = refs

    def _require_signals(self, tokens: List[Token], line: int) -> bool:
        if self.signals is None:
            self.sink.error(line, tokens[0][1], f"{tokens[0][0]} before signals declaration",
                            tokens[0][0])
            return False
        return True

    def _threshold(self, tokens: List[Token], line: int) -> None:
        if not self._require_signals(tokens, line):
            return
        if len(tokens) != 3:
            self.sink.error(line, tokens[0][1], "expected: threshold <signal> <num>|hyst(lo,hi)")
            return
        (signal, signal_col), (value, value_col) = tokens[1], tokens[2]
        assert self.signals is not None
        if signal not in {str(s) for s in self.signals}:
            self.sink.error(line, signal_col, f"threshold for undeclared signal {signal}", signal)
            return
        if signal in self.thresholds:
            self.sink.error(line, signal_col, f"duplicate threshold for {signal}", signal)
            return
        if value.startswith("hyst"):
            hyst = parse_hyst(value)
            if not hyst:
                self.sink.error(line, value_col, hyst.error or "invalid hyst", value)
                return
            self.thresholds[signal] = HystereticThreshold(low=hyst.value[0], high=hyst.value[1])
        else:
            number = parse_number(value, f"threshold of {signal}")
            if not number:
                self.sink.error(line, value_col, number.error or "invalid number", value)
                return
            self.thresholds[signal] = ConstantThreshold(level=number.value)

    def _state(self, tokens: List[Token], line: int) -> None:
        if not self._require_signals(tokens, line):
            return
        assert self.signals is not None
        if len(tokens) < 2:
            self.sink.error(line, tokens[0][1], "state requires a name")
            return
        name, col = tokens[1]
        check = validate_identifier(name, "state name")
        if not check:
            self.sink.error(line, col, check.error or "invalid name", name)
            return
        if name in self.states:
            self.sink.error(line, col, f"duplicate state {name} (first declared on line "
                            f"{self.state_lines[name]})", name)
            return
        bits_tokens = tokens[2:]
        if len(bits_tokens) != len(self.signals):
            self.sink.error(line, col, f"state {name} has {len(bits_tokens)} bits, expected "
                            f"{len(self.signals)}", name)
            return
        bits: List[int] = []
        for text, bit_col in bits_tokens:
            bit = parse_bit(text, f"bit of state {name}")
            if not bit:
                self.sink.error(line, bit_col, bit.error or "invalid bit", text)
                return
            bits.append(bit.value)
        vector = tuple(bits)
        for other, existing in self.states.items():
            if existing == vector:
                self.sink.error(line, col, f"state {name} repeats the bits of {other}", name)
                return
        self.states[name] = vector
        self.state_lines[name] = line

    def _cycle(self, tokens: List[Token], line: int) -> None:
        if not self._single(tokens, line, "cycle", self.cycle is not None):
            return
        if len(tokens) < 2:
            self.sink.error(line, tokens[0][1], "cycle requires at least one state")
            return
        self.cycle = list(tokens[1:])
        self.cycle_line = line

    def _check_cycle(self) -> None:
        assert self.cycle is not None
        line = self.cycle_line
        for name, col in self.cycle:
            if name not in self.states:
                self.sink.error(line, col, f"cycle references undeclared state {name}", name)
        if self.sink.has_errors or len(self.cycle) < 2:
            return
        ring = self.cycle + self.cycle[:1]
        for (a, _), (b, col) in zip(ring, ring[1:]):
            if self.states[a] == self.states[b]:
                self.sink.error(line, col, f"consecutive cycle states {a} and {b} are identical",
                                b)


def parse_chart(text: str) -> ChartDocument:
    """Parse chart text; ``chart`` is None iff errors were reported."""
    return _ChartParser().parse(text)


def load_chart(path: Union[str, Path]) -> StateTransitionChart:
    """
    Parse a chart file.

    Raises:
        NetlistParseError: If the chart has errors; carries the diagnostics.
        OSError: If the file cannot be read.
    """
    document = parse_chart(Path(path).read_text(encoding="utf-8", errors="replace"))
    if document.chart is None:
        errors = document.errors
        raise NetlistParseError(
            f"{path}: {len(errors)} error(s) in chart",
            diagnostics=errors,
            details={"file": str(path)},
        )
    logger.info(
        f"Loaded chart {document.chart.name}: {len(document.chart.signals)} signals, "
        f"cycle of {len(document.chart.cycle)}"
    )
    return document.chart


def serialize_chart(chart: StateTransitionChart) -> str:
    """Render a chart as ``.chart`` text."""
    lines = [f"chart {chart.name}", "signals " + " ".join(str(s) for s in chart.signals)]
    for ref in chart.signals:
        threshold = chart.thresholds.get(str(ref))
        if threshold is not None:
            lines.append(f"threshold {ref} {format_threshold(threshold)}")
    for name, bits in chart.states.items():
        lines.append(f"state {name} " + " ".join(str(b) for b in bits))
    lines.append("cycle " + " ".join(chart.cycle))
    return "\n".join(lines) + "\n"


def write_chart(chart: StateTransitionChart, path: Union[str, Path]) -> Path:
    """Write a chart atomically."""
    return atomic_write_text(path, serialize_chart(chart))
