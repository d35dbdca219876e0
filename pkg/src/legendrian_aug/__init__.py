"""Legendrian link invariants from nearly plat fronts over finite fields."""

__version__ = "0.1.0"
