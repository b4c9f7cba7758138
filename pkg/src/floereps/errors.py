"""Exception types shared across the package."""

from __future__ import annotations


class NotLSpaceForm(ValueError):
    """A polynomial or knot that cannot be given a staircase model."""


class NoRepresentative(ValueError):
    """A step sequence with no chain complex realizing it."""


class Undecided(Exception):
    """The simplifier gave up; the requested value is not known.

    Kept separate from ``ValueError`` so callers never mistake it for a
    definite answer such as epsilon = 0.
    """


class InvariantViolation(RuntimeError):
    """An internal consistency check failed (a bug trap)."""
