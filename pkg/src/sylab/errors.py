"""Exception types shared across the library.

Every error the library raises on purpose derives from :class:`SyLabError`, so
the CLI can tell usage problems (exit code 1) from invariant violations
(exit code 2).
"""


class SyLabError(Exception):
    """Base class for all deliberate library errors."""


class LoopArgument(SyLabError, ValueError):
    pass


class DependentContraction(SyLabError, ValueError):
    pass


class SizeLimit(SyLabError, ValueError):
    pass


class OverlappingConstraints(SyLabError, ValueError):
    pass


class BadRange(SyLabError, ValueError):
    pass


class BadParameters(SyLabError, ValueError):
    pass


class NotAPartition(SyLabError, ValueError):
    pass


class NotSymmetric(SyLabError, ValueError):
    pass


class PreconditionUnmet(SyLabError):
    """An atlas lemma was invoked outside its hypotheses.

    ``hypothesis`` names the failed condition, e.g. ``"P(a-1) > 0"``.
    """

    def __init__(self, hypothesis: str):
        super().__init__(f"precondition unmet: {hypothesis}")
        self.hypothesis = hypothesis


class UnknownEdge(SyLabError, KeyError):
    pass


class DegenerateEdge(SyLabError, ValueError):
    pass


class ZeroDenominator(SyLabError, ZeroDivisionError):
    pass


class NoCandidate(SyLabError, ValueError):
    pass


class BadQuotient(SyLabError, ValueError):
    pass


class DegenerateRatio(SyLabError, ValueError):
    pass


class ParallelPair(SyLabError, ValueError):
    pass


class ParseError(SyLabError, ValueError):
    """Malformed text input; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class InvariantViolation(SyLabError, AssertionError):
    """A mathematical identity that must hold failed on a concrete input."""
