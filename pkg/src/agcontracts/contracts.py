"""IO contracts and the composition, quotient, merging and refinement operations.

Each operation returns a contract over the interface variables of its
result.  Pass a dict as ``trace`` to collect the intermediate term lists.
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Iterable
from dataclasses import dataclass, field

from . import lp
from .polyhedra import EliminationError, is_refinement, reduce, refine_with_context, relax_with_context
from .terms import TermList, as_termlist, is_var_name

log = logging.getLogger(__name__)


class ErrorKind(enum.Enum):
    NOT_COMPOSABLE = "Contracts are not composable"
    QUOTIENT_UNDEFINED = "The quotient is not defined"
    MERGE_UNDEFINED = "Merging is not defined"
    UNSATISFIABLE_CONTEXT = "Unsatisfiable in the given context"
    INVALID_CONTRACT = "Invalid contract"


class AlgebraError(Exception):
    def __init__(self, kind: ErrorKind, detail: str = ""):
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind.value}: {detail}" if detail else kind.value)


def _ordered(names: Iterable[str]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for n in names:
        seen.setdefault(n, None)
    return tuple(seen)


@dataclass(frozen=True)
class IoContract:
    inputs: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ()
    assumptions: TermList = field(default_factory=TermList)
    guarantees: TermList = field(default_factory=TermList)

    def __post_init__(self):
        object.__setattr__(self, "inputs", _ordered(self.inputs))
        object.__setattr__(self, "outputs", _ordered(self.outputs))
        object.__setattr__(self, "assumptions", as_termlist(self.assumptions))
        object.__setattr__(self, "guarantees", as_termlist(self.guarantees))

    @classmethod
    def make(cls, inputs, outputs, assumptions=(), guarantees=()) -> IoContract:
        """Build and validate; terms may be given as strings."""
        c = cls(tuple(inputs), tuple(outputs), as_termlist(list(assumptions)), as_termlist(list(guarantees)))
        validate(c)
        return c

    def widened(self, inputs, outputs) -> IoContract:
        """Same terms over a larger IO profile."""
        return IoContract(self.inputs + tuple(inputs), self.outputs + tuple(outputs),
                          self.assumptions, self.guarantees)

    def __str__(self) -> str:
        return (
            f"InVars: [{', '.join(self.inputs)}]\n"
            f"OutVars: [{', '.join(self.outputs)}]\n"
            f"A: {self.assumptions}\n"
            f"G: {self.guarantees}"
        )


def validate(c: IoContract) -> None:
    """Raise ``AlgebraError(INVALID_CONTRACT)`` unless ``c`` is a well-formed IO contract."""
    for v in c.inputs + c.outputs:
        if not is_var_name(v):
            raise AlgebraError(ErrorKind.INVALID_CONTRACT, f"invalid variable name {v!r}")
    both = set(c.inputs) & set(c.outputs)
    if both:
        raise AlgebraError(ErrorKind.INVALID_CONTRACT, f"{', '.join(sorted(both))} in both I and O")
    stray = c.assumptions.vars - set(c.inputs)
    if stray:
        raise AlgebraError(ErrorKind.INVALID_CONTRACT, f"{', '.join(sorted(stray))} in assumptions")
    stray = c.guarantees.vars - set(c.inputs) - set(c.outputs)
    if stray:
        raise AlgebraError(ErrorKind.INVALID_CONTRACT, f"{', '.join(sorted(stray))} in guarantees")


def _refine(tl, context, allowed):
    try:
        return refine_with_context(tl, context, allowed)
    except EliminationError as exc:
        raise AlgebraError(ErrorKind.UNSATISFIABLE_CONTEXT, str(exc)) from exc


def compose(c: IoContract, d: IoContract, trace: dict | None = None) -> IoContract:
    validate(c)
    validate(d)
    I, O, I2, O2 = set(c.inputs), set(c.outputs), set(d.inputs), set(d.outputs)
    out_vars = [v for v in c.outputs + d.outputs if v not in I | I2]
    in_vars = [v for v in c.inputs + d.inputs if v not in O | O2]
    constrained, constrained2 = c.assumptions.vars, d.assumptions.vars
    cycle = bool(O2 & I) and bool(O & I2)
    if O & O2:
        raise AlgebraError(ErrorKind.NOT_COMPOSABLE, f"shared outputs {sorted(O & O2)}")
    if cycle and (O2 & constrained or O & constrained2):
        raise AlgebraError(
            ErrorKind.NOT_COMPOSABLE,
            "feedback loop drives constrained inputs "
            f"{sorted((O2 & constrained) | (O & constrained2))}",
        )
    trace = trace if trace is not None else {}
    if O2 & I and not O & I2:
        trace["branch"] = "second drives first"
        refined = _refine(c.assumptions, d.assumptions + d.guarantees, in_vars)
        trace["refined_assumptions"] = refined
        assumptions = reduce(refined + d.assumptions, ())
    elif O & I2 and not O2 & I:
        trace["branch"] = "first drives second"
        refined = _refine(d.assumptions, c.assumptions + c.guarantees, in_vars)
        trace["refined_assumptions"] = refined
        assumptions = reduce(refined + c.assumptions, ())
    else:
        trace["branch"] = "cycle" if cycle else "unconnected"
        assumptions = reduce(c.assumptions + d.assumptions, ())
    trace["assumptions"] = assumptions
    if not lp.is_feasible(assumptions):
        log.warning("composed assumptions are infeasible: %s", assumptions)
    relaxed = relax_with_context(c.guarantees + d.guarantees, assumptions, in_vars + out_vars)
    trace["relaxed_guarantees"] = relaxed
    return IoContract(tuple(in_vars), tuple(out_vars), assumptions, reduce(relaxed, assumptions))


def quotient(c: IoContract, d: IoContract, trace: dict | None = None) -> IoContract:
    """Specification of the part missing from ``d`` to implement ``c``."""
    validate(c)
    validate(d)
    I, O, I2, O2 = set(c.inputs), set(c.outputs), set(d.inputs), set(d.outputs)
    if I & O2:
        raise AlgebraError(ErrorKind.QUOTIENT_UNDEFINED, f"top-level inputs driven by {sorted(I & O2)}")
    out_vars = [v for v in c.outputs if v not in O2] + [v for v in d.inputs if v not in I]
    in_vars = [v for v in d.outputs if v not in O] + [v for v in c.inputs if v not in I2]
    trace = trace if trace is not None else {}
    assumptions = c.assumptions
    trace["augmented"] = is_refinement(c.assumptions, d.assumptions)
    if trace["augmented"]:
        assumptions = reduce(assumptions + d.guarantees, ())
    assumptions = relax_with_context(assumptions, (), in_vars)
    trace["assumptions"] = assumptions
    g2 = _refine(c.guarantees, d.assumptions + d.guarantees, in_vars + out_vars)
    trace["refined_guarantees"] = g2
    g3 = _refine(d.assumptions + g2, c.assumptions, in_vars + out_vars)
    trace["guarantees"] = g3
    return IoContract(tuple(in_vars), tuple(out_vars), assumptions, reduce(g3, assumptions))


def merge(c: IoContract, d: IoContract) -> IoContract:
    """Strong merging: both viewpoints hold at once."""
    validate(c)
    validate(d)
    if set(c.inputs) != set(d.inputs) or set(c.outputs) != set(d.outputs):
        raise AlgebraError(ErrorKind.MERGE_UNDEFINED, "contracts have different IO profiles")
    assumptions = reduce(c.assumptions + d.assumptions, ())
    return IoContract(c.inputs, c.outputs, assumptions, reduce(c.guarantees + d.guarantees, assumptions))


def refines(c: IoContract, d: IoContract) -> bool:
    """``c <= d``: weaker assumptions, and stronger guarantees under ``d``'s assumptions."""
    validate(c)
    validate(d)
    if set(c.inputs) != set(d.inputs) or set(c.outputs) != set(d.outputs):
        raise AlgebraError(ErrorKind.INVALID_CONTRACT, "refinement requires identical IO profiles")
    return is_refinement(d.assumptions, c.assumptions) and is_refinement(
        c.guarantees + d.assumptions, d.guarantees
    )


def compose_all(contracts: Iterable[IoContract]) -> IoContract:
    """Left fold; composition is not associative, so order matters."""
    it = iter(contracts)
    acc = next(it)
    for c in it:
        acc = compose(acc, c)
    return acc


def merge_all(contracts: Iterable[IoContract]) -> IoContract:
    it = iter(contracts)
    acc = next(it)
    for c in it:
        acc = merge(acc, c)
    return acc
