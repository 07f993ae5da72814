"""Exception hierarchy shared by every hyperx module."""

from __future__ import annotations


class HyperxError(Exception):
    """Base class for all hyperx errors."""


class InvalidHypergraph(HyperxError, ValueError):
    pass


class NonUniformEdge(InvalidHypergraph):
    pass


class DuplicateEdge(InvalidHypergraph):
    pass


class VertexOutOfRange(InvalidHypergraph):
    pass


class NotLinear(HyperxError, ValueError):
    pass


class NotConnected(HyperxError, ValueError):
    pass


class NotAdjacent(HyperxError, ValueError):
    pass


class DimensionMismatch(HyperxError, ValueError):
    pass


class BadParams(HyperxError, ValueError):
    pass


class TooLarge(HyperxError, ValueError):
    pass


class Infeasible(HyperxError, RuntimeError):
    pass


class NotCertifiedFree(HyperxError, RuntimeError):
    """A bound was requested on an instance lacking the required freeness certificate."""


class Overflow(HyperxError, OverflowError):
    """Exact walk counts no longer fit in a signed 64-bit integer."""

    def __init__(self, h: int):
        super().__init__(f"walk counts overflow int64 at length {h}")
        self.h = h


class NoConvergence(HyperxError, RuntimeError):
    """Power iteration hit ``max_iter`` before the bracket closed."""

    def __init__(self, max_iter: int, bracket: tuple[float, float]):
        lo, hi = bracket
        super().__init__(
            f"no convergence after {max_iter} iterations; bracket [{lo!r}, {hi!r}]"
        )
        self.max_iter = max_iter
        self.bracket = bracket


class ParseError(HyperxError, ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.source = source
