"""Single-step safe-move filtering for robots on a grid.

Each robot contributes a dynamics contract; each pair contributes four
vertex-conflict contracts and one swap-conflict contract.  A joint move is safe
when it satisfies the merged dynamics together with, for every pair, at least
one conflict contract and the swap guarantee.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..contracts import IoContract, merge, merge_all
from ..lp import is_feasible
from ..terms import PolyhedralTerm, TermList

Cell = tuple[int, int]

STEPS: tuple[Cell, ...] = ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1))
TIME, TIME_NEXT = "t", "t'"


@dataclass(frozen=True)
class GridRobot:
    id: str

    @property
    def x(self) -> str:
        return f"x_{self.id}"

    @property
    def y(self) -> str:
        return f"y_{self.id}"

    @property
    def x_next(self) -> str:
        return f"x_{self.id}'"

    @property
    def y_next(self) -> str:
        return f"y_{self.id}'"


def _eq(coeffs: Mapping[str, float], constant: float) -> list[PolyhedralTerm]:
    return [PolyhedralTerm.of(coeffs, constant), PolyhedralTerm.of({v: -c for v, c in coeffs.items()}, -constant)]


def _profile(robots: Sequence[GridRobot]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    inputs = (TIME,) + tuple(v for r in robots for v in (r.x, r.y))
    outputs = (TIME_NEXT,) + tuple(v for r in robots for v in (r.x_next, r.y_next))
    return inputs, outputs


def _over(c: IoContract, robots: Sequence[GridRobot]) -> IoContract:
    inputs, outputs = _profile(robots)
    return c.widened([v for v in inputs if v not in c.inputs], [v for v in outputs if v not in c.outputs])


def manhattan(a: Cell, b: Cell) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _separated(distance: float) -> TermList:
    # distance >= 1 folded to a constant term
    return TermList((PolyhedralTerm.of({}, distance - 1),))


def dynamics_contract(r: GridRobot, t: float, x: float, y: float) -> IoContract:
    """Robot ``r`` sits at ``(x, y)`` at time ``t`` and moves at most one cell."""
    assumptions = _eq({TIME: 1}, t) + _eq({r.x: 1}, x) + _eq({r.y: 1}, y)
    guarantees = _eq({TIME_NEXT: 1, TIME: -1}, 1)
    for sx, sy in itertools.product((1, -1), repeat=2):
        guarantees.append(PolyhedralTerm.of({r.x_next: sx, r.x: -sx, r.y_next: sy, r.y: -sy}, 1))
    return IoContract.make((TIME, r.x, r.y), (TIME_NEXT, r.x_next, r.y_next), assumptions, guarantees)


def collision_contracts(r1: GridRobot, r2: GridRobot, current: Mapping[str, Cell] | None = None) -> list[IoContract]:
    """The four half-plane pieces of ``|dx| + |dy| >= 1`` on the next positions.

    Piece ``i`` is ``sx*dx + sy*dy <= -1`` with ``dx = x1' - x2'`` and
    ``dy = y1' - y2'``, for the sign patterns (+,+), (+,-), (-,+), (-,-).
    """
    inputs = (r1.x, r1.y, r2.x, r2.y)
    outputs = (r1.x_next, r1.y_next, r2.x_next, r2.y_next)
    a_d = _separated(manhattan(current[r1.id], current[r2.id])) if current else TermList(())
    out = []
    for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        g = PolyhedralTerm.of({r1.x_next: sx, r2.x_next: -sx, r1.y_next: sy, r2.y_next: -sy}, -1)
        out.append(IoContract.make(inputs, outputs, a_d, [g]))
    return out


def swapping_contract(r1: GridRobot, r2: GridRobot, current: Mapping[str, Cell]) -> IoContract:
    """``delta_x + delta_y >= 1`` with the current offsets folded into coefficients."""
    (x1, y1), (x2, y2) = current[r1.id], current[r2.id]
    dx, dy = x1 - x2, y1 - y2
    g = PolyhedralTerm.of({r1.x_next: -dx, r2.x_next: dx, r1.y_next: -dy, r2.y_next: dy}, -1)
    return IoContract.make(
        (r1.x, r1.y, r2.x, r2.y),
        (r1.x_next, r1.y_next, r2.x_next, r2.y_next),
        _separated(manhattan(current[r1.id], current[r2.id])),
        [g],
    )


def candidate_moves(
    robots: Sequence[GridRobot], current: Mapping[str, Cell], width: int | None = None, height: int | None = None
) -> Iterable[dict[str, Cell]]:
    """Every joint one-step move, optionally clipped to a ``width x height`` grid."""
    per_robot = []
    for r in robots:
        x, y = current[r.id]
        cells = [(x + sx, y + sy) for sx, sy in STEPS]
        if width is not None:
            cells = [c for c in cells if 0 <= c[0] < width]
        if height is not None:
            cells = [c for c in cells if 0 <= c[1] < height]
        per_robot.append(cells)
    for combo in itertools.product(*per_robot):
        yield {r.id: c for r, c in zip(robots, combo)}


def _pin(robots: Sequence[GridRobot], move: Mapping[str, Cell]) -> list[PolyhedralTerm]:
    terms: list[PolyhedralTerm] = []
    for r in robots:
        x, y = move[r.id]
        terms += _eq({r.x_next: 1}, x) + _eq({r.y_next: 1}, y)
    return terms


@dataclass
class StepModel:
    """Contracts for one decision step, merged over the joint IO profile of all robots."""

    robots: tuple[GridRobot, ...]
    current: dict[str, Cell]
    dynamics: IoContract
    vertex: dict[tuple[str, str], list[IoContract]]
    swap: dict[tuple[str, str], IoContract]

    @classmethod
    def build(cls, robots: Sequence[GridRobot], current: Mapping[str, Cell], t: int = 0) -> StepModel:
        robots = tuple(robots)
        current = dict(current)
        dyn = merge_all(_over(dynamics_contract(r, t, *current[r.id]), robots) for r in robots)
        vertex, swap = {}, {}
        for r1, r2 in itertools.combinations(robots, 2):
            key = (r1.id, r2.id)
            vertex[key] = [merge(dyn, _over(c, robots)) for c in collision_contracts(r1, r2, current)]
            swap[key] = _over(swapping_contract(r1, r2, current), robots)
        return cls(robots, current, dyn, vertex, swap)

    def is_safe(self, move: Mapping[str, Cell]) -> bool:
        pin = _pin(self.robots, move)
        base = list(self.dynamics.assumptions) + pin
        if not is_feasible(base + list(self.dynamics.guarantees)):
            return False
        for key, pieces in self.vertex.items():
            if not any(is_feasible(base + list(c.assumptions) + list(c.guarantees)) for c in pieces):
                return False
            s = self.swap[key]
            if not is_feasible(base + list(s.assumptions) + list(s.guarantees)):
                return False
        return True


def safe_moves(
    robots: Sequence[GridRobot],
    current: Mapping[str, Cell],
    candidates: Iterable[Mapping[str, Cell]] | None = None,
    t: int = 0,
) -> list[dict[str, Cell]]:
    """Candidates (all joint moves by default) that pass every step contract."""
    model = StepModel.build(robots, current, t)
    if candidates is None:
        candidates = candidate_moves(model.robots, model.current)
    return [dict(m) for m in candidates if model.is_safe(m)]


def conflicts(current: Mapping[str, Cell], move: Mapping[str, Cell]) -> bool:
    """Direct integer check for vertex and swap conflicts."""
    ids = list(move)
    for a, b in itertools.combinations(ids, 2):
        if move[a] == move[b]:
            return True
        if move[a] == current[b] and move[b] == current[a]:
            return True
    return False
