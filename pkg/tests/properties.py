"""Random instances and the invariants checked on them.

Instances use at most four variables and six terms per list, with small
integer coefficients so the exact oracle stays cheap.
"""

from __future__ import annotations

from hypothesis import assume
from hypothesis import strategies as st

from agcontracts import AlgebraError, IoContract, compose, quotient, refines
from agcontracts.polyhedra import EliminationError, reduce, refine_with_context, relax_with_context
from agcontracts.terms import PolyhedralTerm, TermList, parse_term, print_term

from .oracles import exact_entails, equivalent, hygienic

POOL = ("w", "x", "y", "z")
MAX_TERMS = 6


@st.composite
def terms(draw, variables=POOL, max_vars: int = 3):
    pool = sorted(variables)
    if not pool:
        return PolyhedralTerm.of({}, draw(st.integers(0, 5)))
    chosen = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=min(max_vars, len(pool)), unique=True))
    coeffs = {v: draw(st.integers(-3, 3).filter(bool)) for v in chosen}
    return PolyhedralTerm.of(coeffs, draw(st.integers(-5, 5)))


def term_lists(variables=POOL, min_size: int = 0, max_size: int = MAX_TERMS):
    return st.lists(terms(variables), min_size=min_size, max_size=max_size).map(lambda ts: TermList(tuple(ts)))


@st.composite
def contracts_over(draw, inputs, outputs):
    a = draw(term_lists(inputs, max_size=3)) if inputs else TermList()
    g = draw(term_lists(tuple(inputs) + tuple(outputs), max_size=3))
    return IoContract(tuple(inputs), tuple(outputs), a, g)


# roles of one variable with respect to the pair (c, d): "-" absent, "i" input, "o" output
_ROLES = [(rc, rd) for rc in "io-" for rd in "io-" if not (rc == rd == "o")]


@st.composite
def contract_pairs(draw, allow_top_input_driven: bool = True):
    roles = dict(zip(POOL, draw(st.lists(st.sampled_from(_ROLES), min_size=len(POOL), max_size=len(POOL)))))
    if not allow_top_input_driven:
        roles = {v: (rc, "-" if rc == "i" and rd == "o" else rd) for v, (rc, rd) in roles.items()}
    c_in = [v for v, (rc, _) in roles.items() if rc == "i"]
    c_out = [v for v, (rc, _) in roles.items() if rc == "o"]
    d_in = [v for v, (_, rd) in roles.items() if rd == "i"]
    d_out = [v for v, (_, rd) in roles.items() if rd == "o"]
    assume((c_in or c_out) and (d_in or d_out))
    return draw(contracts_over(c_in, c_out)), draw(contracts_over(d_in, d_out))


@st.composite
def refinement_chains(draw):
    """``(a, b, c)`` over one profile with ``a <= b <= c`` by construction."""
    inputs, outputs = ("x", "y"), ("z",)
    a = draw(contracts_over(inputs, outputs))

    def weaken(k: IoContract) -> IoContract:
        extra = draw(term_lists(inputs, max_size=2))
        keep = draw(st.lists(st.booleans(), min_size=len(k.guarantees), max_size=len(k.guarantees)))
        g = TermList(tuple(t for t, kept in zip(k.guarantees, keep) if kept))
        return IoContract(inputs, outputs, k.assumptions + extra, g)

    b = weaken(a)
    return a, b, weaken(b)


# -- invariants ------------------------------------------------------------------


def check_refine(tl: TermList, ctx: TermList, allowed: frozenset[str]) -> bool:
    try:
        out = refine_with_context(tl, ctx, allowed)
    except EliminationError:
        return False
    assert out.vars <= allowed, (out, allowed)
    assert exact_entails(list(out) + list(ctx), tl), (tl, ctx, out)
    return True


def check_relax(tl: TermList, ctx: TermList, allowed: frozenset[str]) -> None:
    out = relax_with_context(tl, ctx, allowed)
    assert out.vars <= allowed, (out, allowed)
    assert exact_entails(list(tl) + list(ctx), out), (tl, ctx, out)


def check_reduce(tl: TermList, ctx: TermList) -> None:
    out = reduce(tl, ctx)
    assert all(any(t.same_as(s) for s in tl) for t in out)
    assert equivalent(list(out) + list(ctx), list(tl) + list(ctx)), (tl, ctx, out)


def check_roundtrip(t: PolyhedralTerm) -> None:
    parsed = parse_term(print_term(t))
    assert parsed.coefficients == t.coefficients and parsed.constant == t.constant, (t, parsed)


def check_compose(c: IoContract, d: IoContract) -> bool:
    trace: dict = {}
    try:
        r = compose(c, d, trace)
    except AlgebraError:
        return False
    assert hygienic(r), r
    if trace["branch"] == "first drives second":
        driver, driven = c, d
    elif trace["branch"] == "second drives first":
        driver, driven = d, c
    else:
        driver = driven = None
    if driver is not None:
        lhs = list(trace["refined_assumptions"]) + list(driver.guarantees) + list(driver.assumptions)
        assert exact_entails(lhs, driven.assumptions), (c, d, trace)
    assert exact_entails(list(c.guarantees) + list(d.guarantees) + list(r.assumptions), r.guarantees), (c, d, r)
    return True


def check_quotient(c: IoContract, d: IoContract) -> bool:
    trace: dict = {}
    try:
        q = quotient(c, d, trace)
    except AlgebraError:
        return False
    assert hygienic(q), q
    g2, g3, a2 = trace["refined_guarantees"], trace["guarantees"], trace["assumptions"]
    assert exact_entails(list(d.assumptions) + list(d.guarantees) + list(g2), c.guarantees), (c, d, trace)
    assert exact_entails(list(g3) + list(c.assumptions), list(d.assumptions) + list(g2)), (c, d, trace)
    source = list(c.assumptions) + (list(d.guarantees) if trace["augmented"] else [])
    assert exact_entails(source, a2), (c, d, trace)
    return True


def check_refines_oracle(c: IoContract, d: IoContract) -> None:
    expected = exact_entails(d.assumptions, c.assumptions) and exact_entails(
        list(c.guarantees) + list(d.assumptions), d.guarantees
    )
    assert refines(c, d) == expected, (c, d)


def check_chain(a: IoContract, b: IoContract, c: IoContract) -> None:
    assert refines(a, a) and refines(b, b)
    assert refines(a, b) and refines(b, c)
    assert refines(a, c)
