"""Linear-programming kernel.

Every containment, redundancy and feasibility question in the package is
answered by :func:`solve`.  Variables are free (unbounded in both
directions) unless the constraints bound them.  The actual solve is
delegated to HiGHS through :func:`scipy.optimize.linprog`; each call builds
its own solver instance, so concurrent calls share no state.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

LP_TOL = 1e-7


class MalformedProblem(ValueError):
    """An objective or constraint references an undeclared variable."""


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    value: float | None = None
    witness: Mapping[str, float] | None = None

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


INFEASIBLE = LpResult(LpStatus.INFEASIBLE)
UNBOUNDED = LpResult(LpStatus.UNBOUNDED)


@dataclass(frozen=True)
class LpProblem:
    """Maximize ``objective . x`` subject to rows ``coefficients . x <= constant``.

    ``constraints`` holds anything exposing ``coefficients`` (a mapping from
    variable name to float) and ``constant``; polyhedral terms qualify.
    """

    objective: Mapping[str, float]
    constraints: tuple = ()
    variables: frozenset[str] = field(default=frozenset())

    @classmethod
    def build(cls, objective: Mapping[str, float], constraints: Iterable) -> "LpProblem":
        """Declare exactly the variables the objective and constraints use."""
        constraints = tuple(constraints)
        names = set(objective)
        for row in constraints:
            names.update(row.coefficients)
        return cls(dict(objective), constraints, frozenset(names))


def solve(problem: LpProblem) -> LpResult:
    declared = problem.variables
    stray = set(problem.objective) - declared
    for row in problem.constraints:
        stray |= set(row.coefficients) - declared
    if stray:
        raise MalformedProblem(f"undeclared variables: {sorted(stray)}")

    rows = []
    for row in problem.constraints:
        if row.coefficients:
            rows.append(row)
        elif row.constant < -LP_TOL:
            return INFEASIBLE

    names = sorted(declared)
    objective = np.array([problem.objective.get(v, 0.0) for v in names], dtype=float)
    has_objective = bool(np.any(np.abs(objective) > 0.0))
    if not rows:
        if has_objective:
            return UNBOUNDED
        return LpResult(LpStatus.OPTIMAL, 0.0, {v: 0.0 for v in names})

    index = {v: j for j, v in enumerate(names)}
    a_ub = np.zeros((len(rows), len(names)))
    b_ub = np.empty(len(rows))
    for i, row in enumerate(rows):
        for v, c in row.coefficients.items():
            a_ub[i, index[v]] = c
        b_ub[i] = row.constant

    res = linprog(-objective, A_ub=a_ub, b_ub=b_ub, bounds=(None, None), method="highs")
    if res.status == 0:
        witness = dict(zip(names, (float(x) for x in res.x)))
        return LpResult(LpStatus.OPTIMAL, float(-res.fun), witness)
    if res.status == 3:
        return UNBOUNDED
    if res.status == 2 and not has_objective:
        return INFEASIBLE
    # HiGHS presolve can report an unbounded model as infeasible; settle that
    # case and numerical trouble with a feasibility solve, then without presolve.
    feas = linprog(np.zeros(len(names)), A_ub=a_ub, b_ub=b_ub, bounds=(None, None), method="highs")
    if feas.status == 2:
        return INFEASIBLE
    if feas.status == 0 and has_objective:
        res = linprog(-objective, A_ub=a_ub, b_ub=b_ub, bounds=(None, None), method="highs",
                      options={"presolve": False})
        if res.status == 0:
            return LpResult(LpStatus.OPTIMAL, float(-res.fun), dict(zip(names, (float(x) for x in res.x))))
        return UNBOUNDED
    raise RuntimeError(f"LP solver failed: {res.message}")


def maximize(objective: Mapping[str, float], constraints: Iterable) -> LpResult:
    return solve(LpProblem.build(objective, constraints))


def is_feasible(constraints: Iterable) -> bool:
    """True iff some real assignment satisfies every row."""
    return maximize({}, constraints).status is LpStatus.OPTIMAL
