"""Exact simulation of Schmidt-type intersection games and their strategy transformations."""

__version__ = "0.1.0"
