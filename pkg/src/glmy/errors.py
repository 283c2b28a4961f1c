"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GlmyError(Exception):
    """Base class for all errors raised by this package."""


class SelfLoop(GlmyError, ValueError):
    def __init__(self, token, line: int | None = None):
        self.token = token
        self.line = line
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"self-loop on vertex {token!r}{where}")


class UnknownVertex(GlmyError, KeyError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"unknown vertex {vertex!r}")

    def __str__(self) -> str:
        return self.args[0]


class UnknownEdge(GlmyError, KeyError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"edge {edge!r} is not an arrow of the digraph")

    def __str__(self) -> str:
        return self.args[0]


class OverlappingSets(GlmyError, ValueError):
    pass


class EdgeInForest(GlmyError, ValueError):
    pass


class NotACluster(GlmyError, ValueError):
    pass


class DegreeMismatch(GlmyError, ValueError):
    pass


class NotAMorphism(GlmyError, ValueError):
    pass


class NotAPartition(GlmyError, ValueError):
    pass


class OrderTooSmall(GlmyError, ValueError):
    pass


class BudgetExceeded(GlmyError, RuntimeError):
    def __init__(self, count: int, budget: int, what: str = "allowed paths"):
        self.count = count
        self.budget = budget
        super().__init__(f"{what}: {count} exceeds budget {budget}")


class ParseError(GlmyError, ValueError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class SchemaError(GlmyError, ValueError):
    pass
