"""
pneumalogic package.

Simulation and verification toolkit for electronics-free pneumatic logic
circuits: soft actuators coupled by pressure-threshold switch-valves,
abstracted into NOT/BUFFER gate relations and checked against cyclic
state transition charts.
"""

__version__ = "0.1.0"
