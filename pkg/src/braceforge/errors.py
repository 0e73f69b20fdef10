from __future__ import annotations


class BraceforgeError(Exception):
    pass


class StructuralError(BraceforgeError, ValueError):
    """Malformed input: wrong shapes, out-of-range entries, mismatched groups."""


class HypothesisError(BraceforgeError, ValueError):
    """An operation was asked to run outside the hypothesis that makes it valid.

    ``hypothesis`` names the violated condition, e.g. ``"p > n+1"``.
    """

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        msg = f"hypothesis violated: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class AxiomError(BraceforgeError, ValueError):
    """A table failed an axiom check where passing was required."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class InternalCheckError(BraceforgeError, AssertionError):
    """A self-check that the mathematics guarantees came out false."""
