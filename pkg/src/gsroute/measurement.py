"""Pauli measurements on graph states, expressed as graph rewrites.

Each single-qubit Pauli measurement maps the graph of a graph state to the
graph of the post-measurement state (up to local Clifford corrections on the
old neighborhood of the measured vertex):

* Z on ``v``: delete ``v``.
* Y on ``v``: complement the neighborhood of ``v``, then delete ``v``.
* X on ``v`` with special neighbor ``w``: LC at ``w``, LC at ``v``, delete
  ``v``, LC at ``w``.

Outcomes are not sampled; everything here is at the graph level.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Literal

from gsroute.errors import GraphError, InvalidNeighborError, MeasurementSequenceError
from gsroute.graph import Graph, delete_vertex, local_complement

Basis = Literal["X", "Y", "Z"]
BASES: tuple[Basis, ...] = ("X", "Y", "Z")


@dataclass(frozen=True)
class MeasurementStep:
    basis: Basis
    target: int
    special_neighbor: int | None = None

    def __post_init__(self) -> None:
        if self.basis not in BASES:
            raise GraphError(f"basis must be one of X, Y, Z, got {self.basis!r}")
        if self.special_neighbor is not None and self.basis != "X":
            raise GraphError("special_neighbor only applies to X measurements")

    def to_json(self) -> dict:
        return {"basis": self.basis, "target": self.target, "w": self.special_neighbor}

    @classmethod
    def from_json(cls, data: dict) -> MeasurementStep:
        return cls(data["basis"], int(data["target"]), data.get("w"))

    def __str__(self) -> str:
        if self.special_neighbor is None:
            return f"{self.basis}_{self.target}"
        return f"{self.basis}_{self.target}(w={self.special_neighbor})"


@dataclass(frozen=True)
class MeasurementLog:
    """Steps as applied, with the special neighbor of every X step resolved."""

    steps: tuple[MeasurementStep, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        targets = [s.target for s in self.steps]
        if len(set(targets)) != len(targets):
            raise GraphError("a vertex can only be measured once")

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __add__(self, other: MeasurementLog) -> MeasurementLog:
        return MeasurementLog(self.steps + other.steps)

    def count(self, basis: Basis) -> int:
        return sum(1 for s in self.steps if s.basis == basis)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]


def measure_z(g: Graph, v: int) -> Graph:
    return delete_vertex(g, v)


def measure_y(g: Graph, v: int) -> Graph:
    return delete_vertex(local_complement(g, v), v)


def default_special_neighbor(g: Graph, v: int) -> int | None:
    """Smallest-label neighbor of ``v``, or None when ``v`` is isolated."""
    mask = g.neighbor_mask(v)
    if not mask:
        return None
    return (mask & -mask).bit_length() - 1


def measure_x(g: Graph, v: int, w: int | None = None) -> Graph:
    """X measurement of ``v`` using special neighbor ``w``.

    ``w`` defaults to the smallest-label neighbor of ``v``.  An isolated ``v``
    is simply deleted, since its qubit is already in a product state.

    Raises
    ------
    InvalidNeighborError
        If ``w`` is given but is not adjacent to ``v``.
    """
    mask = g.neighbor_mask(v)
    if w is None:
        w = default_special_neighbor(g, v)
        if w is None:
            return delete_vertex(g, v)
    elif w not in g or not mask >> w & 1:
        raise InvalidNeighborError(f"{w} is not a neighbor of {v}")
    h = local_complement(g, w)
    h = local_complement(h, v)
    h = delete_vertex(h, v)
    return local_complement(h, w)


def apply_step(g: Graph, step: MeasurementStep) -> tuple[Graph, MeasurementStep]:
    """Apply one step, returning the new graph and the resolved step."""
    if step.basis == "Z":
        return measure_z(g, step.target), step
    if step.basis == "Y":
        return measure_y(g, step.target), step
    w = step.special_neighbor
    if w is None:
        w = default_special_neighbor(g, step.target)
    resolved = MeasurementStep("X", step.target, w)
    return measure_x(g, step.target, w), resolved


def apply_sequence(
    g: Graph, steps: Iterable[MeasurementStep]
) -> tuple[Graph, MeasurementLog]:
    """Apply ``steps`` left to right.

    Errors from an individual step are re-raised as
    :class:`MeasurementSequenceError` carrying the step index.
    """
    applied: list[MeasurementStep] = []
    for i, step in enumerate(steps):
        try:
            g, resolved = apply_step(g, step)
        except GraphError as exc:
            raise MeasurementSequenceError(i, exc) from exc
        applied.append(resolved)
    return g, MeasurementLog(tuple(applied))


def steps_from_json(data: Sequence[dict]) -> list[MeasurementStep]:
    return [MeasurementStep.from_json(d) for d in data]
