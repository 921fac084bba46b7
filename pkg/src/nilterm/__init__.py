"""Exact counting of Q-factorial terminalizations for covers of classical nilpotent orbits."""

__version__ = "0.1.0"
