"""Reference checks that share no code with the library's LP or elimination.

Feasibility is decided by exact rational Fourier-Motzkin over a mix of strict
and non-strict rows, so implication needs no LP solver at all.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping

SLACK = Fraction(1, 10**6)
# library output carries float ratios such as 0.6666666666666667; on unbounded
# polyhedra that rounding outgrows any absolute slack, so snap to nearby rationals
MAX_DENOMINATOR = 10**9

Row = tuple[dict[str, Fraction], Fraction, bool]  # sum(coeffs) <= const, or < when strict


def _rational(x: float) -> Fraction:
    return Fraction(x).limit_denominator(MAX_DENOMINATOR)


def _row(coeffs: Mapping[str, float], const: float, strict: bool = False) -> Row:
    return ({v: _rational(c) for v, c in coeffs.items() if c != 0}, _rational(const), strict)


def _key(r: Row):
    coeffs, const, strict = r
    if not coeffs:
        return ("const", const, strict)
    scale = max(abs(c) for c in coeffs.values())
    return (tuple(sorted((v, c / scale) for v, c in coeffs.items())), const / scale, strict)


def exact_feasible(rows: Iterable[Row]) -> bool:
    rows = list({_key(r): r for r in rows}.values())
    while True:
        for coeffs, const, strict in rows:
            if not coeffs and (const < 0 or (strict and const == 0)):
                return False
        live = [r for r in rows if r[0]]
        if not live:
            return True
        counts: dict[str, int] = {}
        for coeffs, _, _ in live:
            for v in coeffs:
                counts[v] = counts.get(v, 0) + 1
        var = min(counts, key=lambda v: (counts[v], v))
        pos = [r for r in live if r[0].get(var, 0) > 0]
        neg = [r for r in live if r[0].get(var, 0) < 0]
        rest = [r for r in live if var not in r[0]]
        for (pc, pk, ps), (nc, nk, ns) in itertools.product(pos, neg):
            a, b = pc[var], -nc[var]
            coeffs = {}
            for v in set(pc) | set(nc):
                c = b * pc.get(v, 0) + a * nc.get(v, 0)
                if v != var and c != 0:
                    coeffs[v] = c
            rest.append((coeffs, b * pk + a * nk, ps or ns))
        rows = list({_key(r): r for r in rest}.values())


def term_row(t, strict: bool = False) -> Row:
    return _row(t.coefficients, t.constant, strict)


def negated_row(t, slack: Fraction = SLACK) -> Row:
    """``lhs > const + slack`` written as ``-lhs < -(const + slack)``."""
    return ({v: -_rational(c) for v, c in t.coefficients.items()}, -(_rational(t.constant) + slack), True)


def exact_implies(lhs, term, slack: Fraction = SLACK) -> bool:
    return not exact_feasible([term_row(t) for t in lhs] + [negated_row(term, slack)])


def exact_entails(lhs, rhs, slack: Fraction = SLACK) -> bool:
    lhs = list(lhs)
    return all(exact_implies(lhs, t, slack) for t in rhs)


def equivalent(a, b, slack: Fraction = SLACK) -> bool:
    return exact_entails(a, b, slack) and exact_entails(b, a, slack)


def hygienic(c) -> bool:
    """Assumptions over inputs only, guarantees over the interface, inputs and outputs disjoint."""
    ins, outs = set(c.inputs), set(c.outputs)
    return not ins & outs and c.assumptions.vars <= ins and c.guarantees.vars <= ins | outs

