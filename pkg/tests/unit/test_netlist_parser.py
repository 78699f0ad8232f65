"""
Unit tests for the netlist parser and serializer.

Tests cover:
- Tokenizing and key=value splitting
- Declarations and their located diagnostics
- Cross-reference checks
- File loading and error reporting
- Canonical serialization
- Mutation fuzzing: parsing never raises
"""

import random

import pytest

from pneumalogic.exceptions import NetlistParseError
from pneumalogic.models.circuit import VentLaw, VentState
from pneumalogic.models.logic import HystereticThreshold
from pneumalogic.models.valve import ValveKind
from pneumalogic.netlist import load_circuit, parse, parse_file, serialize, write_netlist
from pneumalogic.netlist.parser import Severity, tokenize
from pneumalogic.netlist.serializer import format_number

BASE = """\
actuator A fill=1 vent_coeff=1 p0=0
actuator B fill=1 vent_coeff=1 p0=0
valve v_B kind=NC sense=A threshold=1 controls=B
monitor B P_B=0.5
"""


def _messages(text: str):
    return [d.message for d in parse(text).errors]


# =============================================================================
# Tokenizer Tests
# =============================================================================


class TestTokenize:
    """Tests for tokenize."""

    def test_columns_are_one_based(self):
        assert tokenize("actuator  A fill=1") == [("actuator", 1), ("A", 11), ("fill=1", 13)]

    def test_comment_dropped(self):
        assert tokenize("monitor A P=1  # note") == [("monitor", 1), ("A", 9), ("P=1", 11)]

    def test_parenthesized_group_keeps_blanks(self):
        tokens = tokenize("monitor R P_R=hyst(0.05, 1.8)")
        assert tokens[-1] == ("P_R=hyst(0.05, 1.8)", 11)

    def test_blank_line(self):
        assert tokenize("   # only a comment") == []


# =============================================================================
# Declaration Tests
# =============================================================================


class TestParseDeclarations:
    """Tests for well-formed netlists."""

    def test_crawler(self, circuits_dir):
        document = parse_file(circuits_dir / "crawler.pneu")
        assert document.ok
        circuit = document.circuit
        assert circuit.actuator_ids == ("M", "R", "F")
        assert [v.kind for v in circuit.valves] == [ValveKind.NC, ValveKind.HNO, ValveKind.NO]
        assert circuit.valve("HNOV").thresholds == HystereticThreshold(low=0.05, high=1.8)
        assert [m.signal for m in circuit.monitors] == ["M[P_M]", "R[P_R]", "F[P_F]"]
        assert document.diagnostics == ()

    def test_locations_recorded(self, circuits_dir):
        document = parse_file(circuits_dir / "crawler.pneu")
        line, col = document.locations["NCV"]
        assert col == 7
        assert document.source.splitlines()[line - 1].startswith("valve NCV")

    def test_optional_actuator_keys(self):
        document = parse(
            "actuator A fill=0.5 vent_coeff=2 p0=1 p_max=3 vent=closed vent_law=leak\n"
        )
        actuator = document.circuit.actuators[0]
        assert actuator.p_max == 3.0
        assert actuator.vent is VentState.CLOSED
        assert actuator.vent_law is VentLaw.LEAK

    def test_hysteretic_monitor_with_blank(self):
        document = parse(BASE + "monitor A P_A+-=hyst(0.05, 1.8)\n")
        assert document.circuit.monitor("A", "P_A+-").threshold.high == 1.8

    def test_several_monitors_on_one_line(self, circuits_dir):
        circuit = load_circuit(circuits_dir / "ternary.pneu")
        assert [m.label for m in circuit.monitors_for("A")] == ["P_A1", "P_A2"]

    def test_valve_initial_memory(self):
        document = parse(
            "actuator A fill=1 vent_coeff=2 p0=0\n"
            "valve v kind=HNC sense=A low=0.5 high=2 controls=A init=1\n"
        )
        assert document.circuit.valve("v").init_memory == 1

    def test_empty_netlist_warns(self):
        document = parse("# nothing here\n\n")
        assert document.ok
        assert [d.severity for d in document.diagnostics] == [Severity.WARNING]
        assert document.warnings[0].message == "netlist declares no elements"


class TestParseErrors:
    """Tests for located diagnostics on malformed netlists."""

    def test_dangling_sense(self, fixtures_dir):
        path = fixtures_dir / "dangling_sense.pneu"
        document = parse_file(path)
        assert document.circuit is None
        (error,) = document.errors
        assert error.format(path) == (
            f"{path}:4:25: error: valve v_B sense references unknown actuator 'Q'"
        )

    def test_unknown_declaration(self):
        (error,) = parse("pump P rate=1\n").errors
        assert (error.line, error.col, error.token) == (1, 1, "pump")

    def test_duplicate_id(self):
        text = "actuator A fill=1 vent_coeff=1 p0=0\nactuator A fill=1 vent_coeff=1 p0=0\n"
        assert _messages(text) == ["duplicate id 'A' (first declared on line 1)"]

    def test_missing_required_key(self):
        assert _messages("actuator A fill=1 vent_coeff=1\n") == ["actuator A missing p0="]

    def test_unknown_key_located_at_key(self):
        (error,) = parse("actuator A fill=1 vent_coeff=1 p0=0 color=red\n").errors
        assert error.col == 37
        assert error.message == "unknown key 'color' for actuator"

    def test_malformed_assignment(self):
        (error,) = parse("actuator A fill=1 vent_coeff p0=0\n").errors
        assert "expected key=value" in error.message

    def test_hysteretic_kind_needs_band(self):
        text = BASE.replace("kind=NC sense=A threshold=1", "kind=HNO sense=A threshold=1")
        assert _messages(text) == ["HNO requires low/high"]

    def test_constant_kind_needs_threshold(self):
        text = BASE.replace("kind=NC sense=A threshold=1", "kind=NC sense=A low=1 high=2")
        assert _messages(text) == ["NC requires threshold"]

    def test_unknown_kind(self):
        text = BASE.replace("kind=NC", "kind=XOR")
        assert _messages(text) == ["kind must be NC|NO|HNC|HNO, got 'XOR'"]

    def test_band_order(self):
        text = BASE.replace("kind=NC sense=A threshold=1", "kind=HNO sense=A low=2 high=1")
        assert _messages(text)[0].startswith("low must be < high")

    def test_memory_on_constant_valve(self):
        text = BASE.replace("controls=B", "controls=B init=1")
        assert _messages(text) == ["NC has no memory to initialize"]

    def test_p0_above_cap(self):
        assert _messages("actuator A fill=1 vent_coeff=1 p0=4 p_max=3\n") == [
            "p0 exceeds p_max=3.0"
        ]

    def test_non_positive_vent_coeff(self):
        assert _messages("actuator A fill=1 vent_coeff=0 p0=0\n") == [
            "vent_coeff must be > 0, got 0"
        ]

    def test_sense_references_valve(self):
        text = BASE + "valve v2 kind=NO sense=v_B threshold=1 controls=A\n"
        assert _messages(text) == ["valve v2 sense references valve 'v_B', not an actuator"]

    def test_double_vent_control(self):
        text = BASE + "valve v2 kind=NO sense=A threshold=2 controls=B\n"
        assert _messages(text) == ["actuator B vent already controlled by valve v_B"]

    def test_monitor_on_unknown_actuator(self):
        assert _messages(BASE + "monitor Q P=1\n") == [
            "monitor Q references unknown actuator 'Q'"
        ]

    def test_duplicate_monitor(self):
        messages = _messages(BASE + "monitor B P_B=0.7\n")
        assert messages == ["duplicate monitor B[P_B] (first declared on line 4)"]

    def test_diagnostics_sorted_by_position(self):
        text = "widget\nactuator 1A fill=1 vent_coeff=1 p0=0\nvalve\n"
        lines = [d.line for d in parse(text).diagnostics]
        assert lines == sorted(lines)
        assert len(lines) == 3

    def test_non_utf8_file(self, tmp_path):
        path = tmp_path / "bad.pneu"
        path.write_bytes(b"actuator A fill=1 vent_coeff=1 p0=0\nmonitor A P=\xff\n")
        (error,) = parse_file(path).errors
        assert (error.line, error.message) == (2, "file is not valid UTF-8")


class TestLoadCircuit:
    """Tests for load_circuit."""

    def test_raises_with_diagnostics(self, fixtures_dir):
        path = fixtures_dir / "dangling_sense.pneu"
        with pytest.raises(NetlistParseError) as exc_info:
            load_circuit(path)
        assert exc_info.value.exit_code == 2
        assert len(exc_info.value.diagnostics) == 1
        assert exc_info.value.details["file"] == str(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_circuit(tmp_path / "absent.pneu")


# =============================================================================
# Serializer Tests
# =============================================================================


class TestSerialize:
    """Tests for canonical serialization."""

    def test_crawler_canonical_text(self, crawler_circuit):
        assert serialize(crawler_circuit) == (
            "actuator M fill=1.0 vent_coeff=1.0 p0=0.0\n"
            "actuator R fill=1.0 vent_coeff=1.0 p0=0.0\n"
            "actuator F fill=1.0 vent_coeff=1.0 p0=0.0\n"
            "\n"
            "valve NCV kind=NC sense=F threshold=2.3 controls=R\n"
            "valve HNOV kind=HNO sense=R low=0.05 high=1.8 controls=F\n"
            "valve NOV kind=NO sense=R threshold=1.1 controls=M\n"
            "\n"
            "monitor M P_M=1.5\n"
            "monitor R P_R=1.1\n"
            "monitor F P_F=2.3\n"
        )

    @pytest.mark.parametrize(
        "name", ["crawler", "feet", "oscillator", "not_gate", "buffer", "ternary"]
    )
    def test_shipped_circuits_round_trip(self, circuits_dir, name):
        circuit = load_circuit(circuits_dir / f"{name}.pneu")
        assert parse(serialize(circuit)).circuit == circuit

    def test_optional_keys_written_when_set(self):
        circuit = parse(
            "actuator A fill=1 vent_coeff=1 p0=0 p_max=3 vent=closed vent_law=leak\n"
        ).circuit
        assert serialize(circuit) == (
            "actuator A fill=1.0 vent_coeff=1.0 p0=0.0 p_max=3.0 vent=closed vent_law=leak\n"
        )

    def test_empty_circuit(self):
        assert serialize(parse("").circuit) == ""

    def test_format_number_shortest_round_trip(self):
        assert format_number(0.1) == "0.1"
        assert float(format_number(1 / 3)) == 1 / 3

    def test_write_netlist(self, tmp_path, crawler_circuit):
        path = write_netlist(crawler_circuit, tmp_path / "copy.pneu")
        assert load_circuit(path) == crawler_circuit


# =============================================================================
# Fuzzing
# =============================================================================

ALPHABET = "=()#[],.-+e_ 0123456789AFRMvxyz\n\t"


def _mutate(text: str, rng: random.Random) -> str:
    for _ in range(rng.randint(1, 4)):
        op = rng.randrange(5)
        pos = rng.randrange(len(text) + 1)
        if op == 0 and text:
            text = text[:pos] + text[pos + 1:]
        elif op == 1:
            text = text[:pos] + rng.choice(ALPHABET) + text[pos:]
        elif op == 2:
            lines = text.splitlines()
            if lines:
                line = rng.choice(lines)
                lines.insert(rng.randrange(len(lines) + 1), line)
                text = "\n".join(lines)
        elif op == 3:
            text = text[:pos]
        else:
            tokens = text.split(" ")
            if len(tokens) > 1:
                i, j = rng.randrange(len(tokens)), rng.randrange(len(tokens))
                tokens[i], tokens[j] = tokens[j], tokens[i]
                text = " ".join(tokens)
    return text


class TestParserFuzz:
    """Randomly mutated netlists never crash the parser."""

    @pytest.mark.slow
    @pytest.mark.timeout(300)
    def test_mutations_yield_circuit_or_located_errors(self, circuits_dir):
        source = (circuits_dir / "crawler.pneu").read_text()
        rng = random.Random(1337)
        for _ in range(10_000):
            text = _mutate(source, rng)
            document = parse(text)
            assert (document.circuit is None) == bool(document.errors)
            last_line = max(len(text.splitlines()), 1)
            for diagnostic in document.diagnostics:
                assert 1 <= diagnostic.line <= last_line
                assert diagnostic.col >= 1
