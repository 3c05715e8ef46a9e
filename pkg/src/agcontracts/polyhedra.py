"""Containment, redundancy removal and variable elimination for term lists.

``refine_with_context`` strengthens terms by substituting context bounds for
forbidden variables; ``relax_with_context`` weakens them by Fourier-Motzkin
projection.  Both return terms over the allowed variables only.
"""

from __future__ import annotations

from collections.abc import Iterable

from .lp import LP_TOL, LpStatus, is_feasible, maximize
from .terms import PolyhedralTerm, TermList, as_termlist

FM_LIMIT = 10_000
REFINE_NODE_LIMIT = 200_000
# Intermediate Fourier-Motzkin lists above this size are pruned by LP.
FM_PRUNE_SIZE = 48


class EliminationError(ValueError):
    """No chain of context substitutions removes ``var`` from ``term``."""

    def __init__(self, var: str, term: PolyhedralTerm):
        self.var = var
        self.term = term
        super().__init__(f"cannot eliminate {var} from '{term}': unsatisfiable in the given context")


class ResourceLimitError(RuntimeError):
    pass


def implies(lhs: Iterable[PolyhedralTerm], term: PolyhedralTerm) -> bool:
    """Every point satisfying ``lhs`` satisfies ``term``."""
    res = maximize(term.coefficients, lhs)
    if res.status is LpStatus.INFEASIBLE:
        return True
    if res.status is LpStatus.UNBOUNDED:
        return False
    return res.value <= term.constant + LP_TOL


def is_refinement(lhs, rhs) -> bool:
    """True iff the polyhedron ``lhs`` is contained in ``rhs``."""
    lhs, rhs = as_termlist(lhs), as_termlist(rhs)
    if not rhs:
        return True
    if not is_feasible(lhs):
        return True
    return all(implies(lhs, r) for r in rhs)


def reduce(tl, context=()) -> TermList:
    """Greedily drop terms of ``tl`` implied by the remaining terms plus ``context``."""
    remaining = list(as_termlist(tl))
    ctx = list(as_termlist(context))
    i = 0
    while i < len(remaining):
        t = remaining[i]
        others = remaining[:i] + remaining[i + 1 :] + ctx
        if t.is_tautology() or implies(others, t):
            del remaining[i]
        else:
            i += 1
    return TermList(tuple(remaining))


# -- refinement ---------------------------------------------------------------


def _refine_term(term, context, allowed, used, budget) -> PolyhedralTerm | None:
    budget[0] -= 1
    if budget[0] < 0:
        raise ResourceLimitError("refinement search exceeded its node budget")
    forbidden = sorted(term.vars - allowed)
    if not forbidden:
        return None if term.is_contradiction(LP_TOL) else term
    var = forbidden[0]
    c = term.coefficient(var)
    candidates = [
        (i, s) for i, s in enumerate(context) if i not in used and s.coefficient(var) * c > 0
    ]
    # Relational bounds keep more of the environment than bare constant bounds.
    candidates.sort(key=lambda p: (len(p[1].vars) == 1, p[0]))
    for i, s in candidates:
        step = _tidy(term.plus(s, -c / s.coefficient(var), drop=var))
        out = _refine_term(step, context, allowed, used | {i}, budget)
        if out is not None:
            return out
    return None


def refine_with_context(tl, context, allowed) -> TermList:
    """Terms over ``allowed`` which, together with ``context``, imply ``tl``.

    Raises :class:`EliminationError` when some term cannot be rewritten.
    """
    tl, ctx = as_termlist(tl), list(as_termlist(context))
    allowed = frozenset(allowed)
    out: list[PolyhedralTerm] = []
    for t in tl:
        if t.vars <= allowed:
            if not t.is_tautology():
                out.append(t)
            continue
        r = _refine_term(t, ctx, allowed, frozenset(), [REFINE_NODE_LIMIT])
        if r is None:
            raise EliminationError(sorted(t.vars - allowed)[0], t)
        if not r.is_tautology():
            out.append(r)
    return TermList(tuple(out))


# -- relaxation ---------------------------------------------------------------


def _tidy(t: PolyhedralTerm) -> PolyhedralTerm:
    """Unit coefficient for single-variable bounds; otherwise rescale only on drift."""
    if len(t.items) == 1:
        return t.scaled(1.0 / abs(t.items[0][1]))
    if t.items:
        top = max(abs(c) for _, c in t.items)
        if top > 1e4 or top < 1e-4:
            return t.normalized()
    return t


def _fm_combine(pos: PolyhedralTerm, neg: PolyhedralTerm, var: str) -> PolyhedralTerm:
    a_p, a_n = pos.coefficient(var), neg.coefficient(var)
    return _tidy(pos.scaled(-a_n).plus(neg, a_p, drop=var))


def _dedupe_rows(rows):
    out: list[tuple[PolyhedralTerm, bool]] = []
    for t, own in rows:
        if t.is_tautology():
            continue
        for k, (u, uown) in enumerate(out):
            if t == u or t.same_as(u):
                if own and not uown:
                    out[k] = (u, True)
                break
        else:
            out.append((t, own))
    return out


def _prune_rows(rows):
    # Context-derived rows are tried first so that rows derived from the
    # termlist survive whenever either could go.
    order = sorted(range(len(rows)), key=lambda k: (rows[k][1], k))
    alive = set(range(len(rows)))
    for k in order:
        others = [rows[j][0] for j in sorted(alive) if j != k]
        if implies(others, rows[k][0]):
            alive.discard(k)
    return [rows[k] for k in sorted(alive)]


def relax_with_context(tl, context, allowed) -> TermList:
    """Terms over ``allowed`` implied by ``tl`` together with ``context``.

    Only consequences that use at least one term of ``tl`` are returned.
    """
    tl, ctx = as_termlist(tl), as_termlist(context)
    allowed = frozenset(allowed)
    rows = _dedupe_rows([(t, True) for t in tl] + [(t, False) for t in ctx])
    forbidden = sorted((tl.vars | ctx.vars) - allowed)
    for var in forbidden:
        pos = [r for r in rows if r[0].coefficient(var) > 0]
        neg = [r for r in rows if r[0].coefficient(var) < 0]
        if len(pos) * len(neg) > FM_LIMIT:
            raise ResourceLimitError(f"Fourier-Motzkin on {var} exceeds {FM_LIMIT} terms")
        nxt = [r for r in rows if r[0].coefficient(var) == 0]
        for p, pown in pos:
            for n, nown in neg:
                nxt.append((_fm_combine(p, n, var), pown or nown))
        rows = _dedupe_rows(nxt)
        if len(rows) > FM_LIMIT:
            raise ResourceLimitError(f"Fourier-Motzkin exceeds {FM_LIMIT} terms")
        if len(rows) > FM_PRUNE_SIZE:
            rows = _prune_rows(rows)
    return reduce(TermList(tuple(t for t, own in rows if own)), ())
