"""
Netlist parser for ``.pneu`` circuit descriptions.

The grammar is line-oriented; ``#`` starts a comment and keywords are
lowercase::

    actuator <id> fill=<num> vent_coeff=<num> p0=<num> [p_max=<num>]
             [vent=open|closed] [vent_law=dump|leak]
    valve <id> kind=NC|NO|HNC|HNO sense=<id> (threshold=<num> | low=<num> high=<num>)
          controls=<id> [init=0|1]
    monitor <id> <label>=<num> | <label>=hyst(<num>,<num>) ...

Parsing never raises on bad input: every problem becomes a located
ParseDiagnostic, and a circuit is produced only when there are no errors.
"""

import re
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from pneumalogic.config import get_logger
from pneumalogic.exceptions import NetlistParseError
from pneumalogic.models.circuit import ActuatorModel, CircuitModel, Monitor, VentLaw, VentState
from pneumalogic.models.logic import ConstantThreshold, HystereticThreshold
from pneumalogic.models.valve import ValveKind, ValveSpec, ValveThreshold
from pneumalogic.utils.validators import (
    parse_bit,
    parse_hyst,
    parse_number,
    validate_identifier,
    validate_label,
)

logger = get_logger(__name__)

# A parenthesized group may contain blanks: P_R=hyst(0.05, 1.8)
TOKEN_PATTERN = re.compile(r"[^\s(]*\([^)]*\)\S*|\S+")

ACTUATOR_KEYS = ("fill", "vent_coeff", "p0", "p_max", "vent", "vent_law")
ACTUATOR_REQUIRED = ("fill", "vent_coeff", "p0")
VALVE_KEYS = ("kind", "sense", "threshold", "low", "high", "controls", "init")


class Severity(str, Enum):
    """Diagnostic severity."""

    ERROR = "error"
    WARNING = "warning"


class ParseDiagnostic(BaseModel):
    """
    A located parser message.

    Attributes:
        severity: error or warning.
        line: 1-based line number.
        col: 1-based column of the offending token.
        message: Description of the problem.
        token: Offending token text, if any.
    """

    model_config = ConfigDict(frozen=True)

    severity: Severity
    line: int = Field(..., ge=1)
    col: int = Field(default=1, ge=1)
    message: str
    token: Optional[str] = None

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def format(self, file: Union[str, Path] = "<input>") -> str:
        """Render as ``<file>:<line>:<col>: <severity>: <message>``."""
        return f"{file}:{self.line}:{self.col}: {self.severity.value}: {self.message}"


class NetlistDocument(BaseModel):
    """
    Result of parsing a netlist.

    Attributes:
        source: Source text.
        circuit: Parsed circuit; None when any error diagnostic exists.
        locations: ``(line, col)`` of every declared element id (monitors as
            ``<actuator>[<label>]``).
        diagnostics: Errors and warnings in source order.
    """

    model_config = ConfigDict(frozen=True)

    source: str
    circuit: Optional[CircuitModel] = None
    locations: Dict[str, Tuple[int, int]] = Field(default_factory=dict)
    diagnostics: Tuple[ParseDiagnostic, ...] = ()

    @property
    def errors(self) -> List[ParseDiagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def warnings(self) -> List[ParseDiagnostic]:
        return [d for d in self.diagnostics if not d.is_error]

    @property
    def ok(self) -> bool:
        return self.circuit is not None


Token = Tuple[str, int]


def tokenize(line: str) -> List[Token]:
    """Split a line into ``(text, column)`` tokens, dropping any comment."""
    code = line.split("#", 1)[0]
    return [(m.group(0), m.start() + 1) for m in TOKEN_PATTERN.finditer(code)]


class DiagnosticSink:
    """Collects diagnostics for one source text."""

    def __init__(self) -> None:
        self.diagnostics: List[ParseDiagnostic] = []

    def error(self, line: int, col: int, message: str, token: Optional[str] = None) -> None:
        self.diagnostics.append(
            ParseDiagnostic(severity=Severity.ERROR, line=line, col=col, message=message,
                            token=token)
        )

    def warning(self, line: int, col: int, message: str, token: Optional[str] = None) -> None:
        self.diagnostics.append(
            ParseDiagnostic(severity=Severity.WARNING, line=line, col=col, message=message,
                            token=token)
        )

    @property
    def has_errors(self) -> bool:
        return any(d.is_error for d in self.diagnostics)

    def sorted(self) -> Tuple[ParseDiagnostic, ...]:
        return tuple(sorted(self.diagnostics, key=lambda d: (d.line, d.col)))


def split_assignments(
    tokens: List[Token], line: int, sink: DiagnosticSink, element: str
) -> Optional[Dict[str, Token]]:
    """
    Parse ``key=value`` tokens into ``{key: (value, col)}``.

    Returns None (after reporting) on malformed or duplicate keys.
    """
    pairs: Dict[str, Token] = {}
    ok = True
    for text, col in tokens:
        key, sep, value = text.partition("=")
        if not sep or not key or not value:
            sink.error(line, col, f"expected key=value in {element}, got {text!r}", text)
            ok = False
            continue
        if key in pairs:
            sink.error(line, col, f"duplicate key {key!r} in {element}", text)
            ok = False
            continue
        pairs[key] = (value, col + len(key) + 1)
    return pairs if ok else None


class _NetlistParser:
    def __init__(self) -> None:
        self.sink = DiagnosticSink()
        self.actuators: List[ActuatorModel] = []
        self.valves: List[ValveSpec] = []
        self.monitors: List[Monitor] = []
        self.locations: Dict[str, Tuple[int, int]] = {}
        self.references: List[Tuple[str, str, int, int]] = []

    def parse(self, text: str) -> NetlistDocument:
        declarations = 0
        for number, raw in enumerate(text.splitlines(), start=1):
            tokens = tokenize(raw)
            if not tokens:
                continue
            declarations += 1
            keyword, col = tokens[0]
            if keyword == "actuator":
                self._actuator(tokens, number)
            elif keyword == "valve":
                self._valve(tokens, number)
            elif keyword == "monitor":
                self._monitor(tokens, number)
            else:
                self.sink.error(number, col, f"unknown declaration {keyword!r}", keyword)

        self._check_references()
        circuit: Optional[CircuitModel] = None
        if not self.sink.has_errors:
            try:
                circuit = CircuitModel(
                    actuators=tuple(self.actuators),
                    valves=tuple(self.valves),
                    monitors=tuple(self.monitors),
                )
            except ValidationError as e:
                self.sink.error(1, 1, f"invalid circuit: {_first_message(e)}")
        if circuit is not None and declarations == 0:
            self.sink.warning(1, 1, "netlist declares no elements")
        return NetlistDocument(
            source=text,
            circuit=circuit,
            locations=self.locations,
            diagnostics=self.sink.sorted(),
        )

    # =========================================================================
    # Declarations
    # =========================================================================

    def _declare(self, tokens: List[Token], line: int, element: str) -> Optional[str]:
        if len(tokens) < 2:
            self.sink.error(line, tokens[0][1], f"{element} requires an id", tokens[0][0])
            return None
        name, col = tokens[1]
        check = validate_identifier(name, f"{element} id")
        if not check:
            self.sink.error(line, col, check.error or "invalid id", name)
            return None
        if name in self.locations:
            first = self.locations[name][0]
            self.sink.error(line, col, f"duplicate id {name!r} (first declared on line {first})",
                            name)
            return None
        self.locations[name] = (line, col)
        return name

    def _number(
        self, pairs: Dict[str, Token], key: str, line: int, positive: bool = False
    ) -> Optional[float]:
        value, col = pairs[key]
        result = parse_number(value, key, strictly_positive=positive)
        if not result:
            self.sink.error(line, col, result.error or f"invalid {key}", value)
            return None
        return result.value

    def _actuator(self, tokens: List[Token], line: int) -> None:
        name = self._declare(tokens, line, "actuator")
        if name is None:
            return
        pairs = split_assignments(tokens[2:], line, self.sink, f"actuator {name}")
        if pairs is None:
            return
        errors = len(self.sink.diagnostics)
        for key, (_, col) in pairs.items():
            if key not in ACTUATOR_KEYS:
                self.sink.error(line, col - len(key) - 1, f"unknown key {key!r} for actuator",
                                key)
        for key in ACTUATOR_REQUIRED:
            if key not in pairs:
                self.sink.error(line, tokens[0][1], f"actuator {name} missing {key}=")

        values: Dict[str, object] = {}
        for key, positive in (("fill", False), ("vent_coeff", True), ("p0", False),
                              ("p_max", True)):
            if key in pairs:
                values[key] = self._number(pairs, key, line, positive)
        if "vent" in pairs:
            values["vent"] = self._choice(pairs, "vent", VentState, line)
        if "vent_law" in pairs:
            values["vent_law"] = self._choice(pairs, "vent_law", VentLaw, line)
        if len(self.sink.diagnostics) > errors:
            return
        p_max = values.get("p_max")
        if p_max is not None and values["p0"] > p_max:  # type: ignore[operator]
            self.sink.error(line, pairs["p0"][1], f"p0 exceeds p_max={p_max!r}", pairs["p0"][0])
            return
        try:
            self.actuators.append(
                ActuatorModel(
                    id=name,
                    fill_rate=values["fill"],
                    vent_coeff=values["vent_coeff"],
                    p0=values["p0"],
                    p_max=p_max,
                    vent=values.get("vent"),
                    vent_law=values.get("vent_law", VentLaw.DUMP),
                )
            )
        except ValidationError as e:
            self.sink.error(line, tokens[1][1], f"invalid actuator {name}: {_first_message(e)}")

    def _choice(self, pairs: Dict[str, Token], key: str, enum: type, line: int) -> Optional[Enum]:
        value, col = pairs[key]
        try:
            return enum(value)
        except ValueError:
            allowed = "|".join(member.value for member in enum)  # type: ignore[attr-defined]
            self.sink.error(line, col, f"{key} must be {allowed}, got {value!r}", value)
            return None

    def _valve(self, tokens: List[Token], line: int) -> None:
        name = self._declare(tokens, line, "valve")
        if name is None:
            return
        pairs = split_assignments(tokens[2:], line, self.sink, f"valve {name}")
        if pairs is None:
            return
        errors = len(self.sink.diagnostics)
        for key, (_, col) in pairs.items():
            if key not in VALVE_KEYS:
                self.sink.error(line, col - len(key) - 1, f"unknown key {key!r} for valve", key)
        for key in ("kind", "sense", "controls"):
            if key not in pairs:
                self.sink.error(line, tokens[0][1], f"valve {name} missing {key}=")
        if len(self.sink.diagnostics) > errors:
            return

        kind = self._choice(pairs, "kind", ValveKind, line)
        for key in ("sense", "controls"):
            value, col = pairs[key]
            check = validate_identifier(value, f"{key} id")
            if not check:
                self.sink.error(line, col, check.error or f"invalid {key}", value)
        if kind is None or len(self.sink.diagnostics) > errors:
            return
        assert isinstance(kind, ValveKind)

        threshold: Optional[ValveThreshold] = None
        kind_col = pairs["kind"][1]
        if kind.is_hysteretic:
            if "threshold" in pairs or "low" not in pairs or "high" not in pairs:
                self.sink.error(line, kind_col, f"{kind.value} requires low/high", kind.value)
                return
            low = self._number(pairs, "low", line)
            high = self._number(pairs, "high", line)
            if low is None or high is None:
                return
            if not low < high:
                self.sink.error(line, pairs["low"][1], f"low must be < high ({low!r}, {high!r})",
                                pairs["low"][0])
                return
            threshold = HystereticThreshold(low=low, high=high)
        else:
            if "threshold" not in pairs or "low" in pairs or "high" in pairs:
                self.sink.error(line, kind_col, f"{kind.value} requires threshold", kind.value)
                return
            level = self._number(pairs, "threshold", line)
            if level is None:
                return
            threshold = ConstantThreshold(level=level)

        init = 0
        if "init" in pairs:
            value, col = pairs["init"]
            bit = parse_bit(value, "init")
            if not bit:
                self.sink.error(line, col, bit.error or "invalid init", value)
                return
            if bit.value and not kind.is_hysteretic:
                self.sink.error(line, col, f"{kind.value} has no memory to initialize", value)
                return
            init = bit.value

        try:
            self.valves.append(
                ValveSpec(
                    id=name,
                    kind=kind,
                    sense=pairs["sense"][0],
                    thresholds=threshold,
                    controls=pairs["controls"][0],
                    init_memory=init,
                )
            )
        except ValidationError as e:
            self.sink.error(line, tokens[1][1], f"invalid valve {name}: {_first_message(e)}")
            return
        self.references.append((f"valve {name} sense", pairs["sense"][0], line,
                                pairs["sense"][1]))
        self.references.append((f"valve {name} controls", pairs["controls"][0], line,
                                pairs["controls"][1]))

    def _monitor(self, tokens: List[Token], line: int) -> None:
        if len(tokens) < 2:
            self.sink.error(line, tokens[0][1], "monitor requires an actuator id", tokens[0][0])
            return
        actuator, col = tokens[1]
        check = validate_identifier(actuator, "monitor actuator")
        if not check:
            self.sink.error(line, col, check.error or "invalid actuator", actuator)
            return
        if len(tokens) < 3:
            self.sink.error(line, col, f"monitor {actuator} requires <label>=<threshold>",
                            actuator)
            return
        pairs = split_assignments(tokens[2:], line, self.sink, f"monitor {actuator}")
        if pairs is None:
            return
        self.references.append((f"monitor {actuator}", actuator, line, col))
        for label, (value, value_col) in pairs.items():
            label_col = value_col - len(label) - 1
            checked = validate_label(label)
            if not checked:
                self.sink.error(line, label_col, checked.error or "invalid label", label)
                continue
            key = f"{actuator}[{label}]"
            if key in self.locations:
                first = self.locations[key][0]
                self.sink.error(line, label_col,
                                f"duplicate monitor {key} (first declared on line {first})", label)
                continue
            threshold: ValveThreshold
            if value.startswith("hyst"):
                hyst = parse_hyst(value)
                if not hyst:
                    self.sink.error(line, value_col, hyst.error or "invalid hyst", value)
                    continue
                threshold = HystereticThreshold(low=hyst.value[0], high=hyst.value[1])
            else:
                number = parse_number(value, f"monitor {key}")
                if not number:
                    self.sink.error(line, value_col, number.error or "invalid number", value)
                    continue
                threshold = ConstantThreshold(level=number.value)
            self.locations[key] = (line, label_col)
            self.monitors.append(Monitor(actuator=actuator, label=label, threshold=threshold))

    # =========================================================================
    # Cross references
    # =========================================================================

    def _check_references(self) -> None:
        actuators = {a.id for a in self.actuators}
        valves = {v.id for v in self.valves}
        for what, ref, line, col in self.references:
            if ref in actuators:
                continue
            if ref in valves:
                self.sink.error(line, col, f"{what} references valve {ref!r}, not an actuator",
                                ref)
            elif ref in self.locations:
                # Declared on a line that already has an error.
                continue
            else:
                self.sink.error(line, col, f"{what} references unknown actuator {ref!r}", ref)
        controllers: Dict[str, str] = {}
        for valve in self.valves:
            first = controllers.setdefault(valve.controls, valve.id)
            if first != valve.id:
                line, col = self.locations[valve.id]
                self.sink.error(
                    line, col,
                    f"actuator {valve.controls} vent already controlled by valve {first}",
                    valve.id,
                )


def _first_message(error: ValidationError) -> str:
    errors = error.errors()
    return str(errors[0].get("msg", error)) if errors else str(error)


def parse(text: str) -> NetlistDocument:
    """
    Parse netlist text.

    Args:
        text: ``.pneu`` source.

    Returns:
        NetlistDocument; ``circuit`` is None iff at least one error was reported.
    """
    document = _NetlistParser().parse(text)
    if document.circuit is not None:
        logger.debug(f"Parsed netlist: {document.circuit.element_count}")
    return document


def parse_file(path: Union[str, Path]) -> NetlistDocument:
    """
    Parse a netlist file.

    Raises:
        OSError: If the file cannot be read.
    """
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        diagnostic = ParseDiagnostic(
            severity=Severity.ERROR, line=raw[: e.start].count(b"\n") + 1, col=1,
            message="file is not valid UTF-8",
        )
        return NetlistDocument(source="", diagnostics=(diagnostic,))
    return parse(text)


def load_circuit(path: Union[str, Path]) -> CircuitModel:
    """
    Parse a netlist file into a circuit.

    Raises:
        NetlistParseError: If the netlist has errors; carries the diagnostics.
        OSError: If the file cannot be read.
    """
    document = parse_file(path)
    for warning in document.warnings:
        logger.warning(warning.format(path))
    if document.circuit is None:
        errors = document.errors
        raise NetlistParseError(
            f"{path}: {len(errors)} error(s) in netlist",
            diagnostics=errors,
            details={"file": str(path)},
        )
    logger.info(f"Loaded {path}: {document.circuit.element_count}")
    return document.circuit
