"""Property tests on random small instances (fixed seeds)."""

from hypothesis import HealthCheck, given, seed, settings
from hypothesis import strategies as st

from . import properties as P

FAST = settings(max_examples=100, deadline=None, derandomize=True,
                suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])

allowed_sets = st.sets(st.sampled_from(P.POOL), max_size=3).map(frozenset)


@FAST
@given(P.term_lists(min_size=1), P.term_lists(), allowed_sets)
def test_refine_is_sound(tl, ctx, allowed):
    P.check_refine(tl, ctx, allowed)


@FAST
@given(P.term_lists(min_size=1), P.term_lists(), allowed_sets)
def test_relax_is_sound(tl, ctx, allowed):
    P.check_relax(tl, ctx, allowed)


@FAST
@given(P.term_lists(), P.term_lists(max_size=3))
def test_reduce_preserves_meaning(tl, ctx):
    P.check_reduce(tl, ctx)


@settings(max_examples=300, deadline=None, derandomize=True)
@given(P.terms())
def test_print_parse_roundtrip(t):
    P.check_roundtrip(t)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.dictionaries(st.sampled_from(P.POOL), st.floats(-1e6, 1e6, allow_nan=False).filter(lambda c: abs(c) > 1e-6),
                       min_size=1, max_size=4),
       st.floats(-1e6, 1e6, allow_nan=False))
def test_roundtrip_with_float_coefficients(coeffs, const):
    P.check_roundtrip(P.PolyhedralTerm.of(coeffs, const))


@FAST
@given(P.contract_pairs())
def test_compose_conditions(pair):
    P.check_compose(*pair)


@FAST
@given(P.contract_pairs(allow_top_input_driven=False))
def test_quotient_conditions(pair):
    P.check_quotient(*pair)


@FAST
@given(P.refinement_chains())
def test_refines_reflexive_and_transitive(chain):
    P.check_chain(*chain)


@FAST
@given(P.contracts_over(("x", "y"), ("z",)), P.contracts_over(("x", "y"), ("z",)))
def test_refines_matches_oracle(c, d):
    P.check_refines_oracle(c, d)
