"""Error-bounded checks of the Nicolas, Robin and CLM inequalities, and an
exact asymptotic-series audit of a reciprocal-prime recurrence."""

__version__ = "0.1.0"
