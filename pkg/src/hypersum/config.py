"""Run configuration and the trace collector."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Config:
    """Switches shared by the engines and the command line.

    ``order`` is the largest recurrence order tried by the Zeilberger search.
    """

    trace: bool = True
    direction: str = "down"
    order: int = 5
    factor: bool = True
    proof: bool = False

    def __post_init__(self):
        if self.direction not in ("down", "up"):
            raise ValueError(f"direction must be 'down' or 'up', not {self.direction!r}")
        if self.order < 0:
            raise ValueError("order must be nonnegative")


@dataclass
class Trace:
    """Ordered intermediate results, rendered like ``q:= k - 1``."""

    entries: list = field(default_factory=list)

    def value(self, label: str, value, sep: str = ":= "):
        self.entries.append((label, value, sep))

    def note(self, text: str):
        self.entries.append((text, None, ""))

    def lines(self) -> list:
        out = []
        for label, value, sep in self.entries:
            out.append(label if value is None else f"{label}{sep}{value}")
        return out

    def __contains__(self, text):
        return any(text in line for line in self.lines())


class _NullTrace(Trace):
    def value(self, label, value, sep=":= "):
        pass

    def note(self, text):
        pass


def null_trace() -> Trace:
    return _NullTrace()
