"""
Netlist tooling for pneumalogic.

Parsing and canonical serialization of ``.pneu`` circuits and ``.chart``
state transition charts, and the logic abstraction of a circuit into
NOT/BUFFER gate relations.
"""

from pneumalogic.netlist.abstraction import abstract, input_thresholds, merge_thresholds
from pneumalogic.netlist.chart_parser import (
    ChartDocument,
    load_chart,
    parse_chart,
    serialize_chart,
    write_chart,
)
from pneumalogic.netlist.parser import (
    NetlistDocument,
    ParseDiagnostic,
    Severity,
    load_circuit,
    parse,
    parse_file,
)
from pneumalogic.netlist.serializer import serialize, write_netlist

__all__ = [
    "abstract",
    "input_thresholds",
    "merge_thresholds",
    "ChartDocument",
    "load_chart",
    "parse_chart",
    "serialize_chart",
    "write_chart",
    "NetlistDocument",
    "ParseDiagnostic",
    "Severity",
    "load_circuit",
    "parse",
    "parse_file",
    "serialize",
    "write_netlist",
]
