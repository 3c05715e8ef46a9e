import logging

import pytest

from agcontracts import AlgebraError, ErrorKind, IoContract, compose, compose_all, merge, quotient, refines, validate
from agcontracts.terms import TermList

from .oracles import hygienic


def C(i, o, a, g) -> IoContract:
    return IoContract.make(i, o, a, g)


def terms_equal(tl, texts):
    other = TermList.parse(texts)
    return len(tl) == len(other) and all(any(t.same_as(s) for s in other) for t in tl)


def assert_contract(c, i, o, a, g):
    assert set(c.inputs) == set(i) and set(c.outputs) == set(o)
    assert terms_equal(c.assumptions, a), c.assumptions
    assert terms_equal(c.guarantees, g), c.guarantees


EX1_C = (["i"], ["o"], ["i <= 2"], ["o <= i"])
EX1_D = (["o"], ["o'"], ["o <= 1"], ["o' <= o"])


class TestValidate:
    def test_valid(self):
        validate(C(*EX1_C))

    def test_output_in_assumptions(self):
        with pytest.raises(AlgebraError) as err:
            C(["i"], ["o"], ["o <= 2"], ["o <= i"])
        assert err.value.kind is ErrorKind.INVALID_CONTRACT and "o in assumptions" in err.value.detail

    def test_overlapping_profile(self):
        with pytest.raises(AlgebraError) as err:
            C(["i"], ["i"], [], [])
        assert "i in both I and O" in err.value.detail

    def test_stray_guarantee_variable(self):
        with pytest.raises(AlgebraError):
            C(["i"], ["o"], [], ["o <= z"])


class TestCompose:
    def test_series_connection(self):
        assert_contract(compose(C(*EX1_C), C(*EX1_D)), ["i"], ["o'"], ["i <= 1"], ["o' <= i"])

    def test_series_connection_reversed_argument_order(self):
        assert_contract(compose(C(*EX1_D), C(*EX1_C)), ["i"], ["o'"], ["i <= 1"], ["o' <= i"])

    def test_scaled_series_connection(self):
        got = compose(C(["i"], ["o"], ["i <= 2"], ["o <= 2*i"]), C(["o"], ["o'"], ["o <= 2"], ["o' <= o + 1"]))
        assert_contract(got, ["i"], ["o'"], ["i <= 1"], ["o' <= 2*i + 1"])

    def test_shared_output(self):
        with pytest.raises(AlgebraError) as err:
            compose(C(["i"], ["o"], [], ["o <= i"]), C(["i"], ["o"], [], []))
        assert err.value.kind is ErrorKind.NOT_COMPOSABLE and "o" in err.value.detail

    def test_cycle_on_constrained_input(self):
        with pytest.raises(AlgebraError) as err:
            compose(C(["x"], ["y"], ["x <= 1"], ["y <= x"]), C(["y"], ["x"], [], ["x <= y"]))
        assert err.value.kind is ErrorKind.NOT_COMPOSABLE

    def test_benign_cycle_takes_union(self):
        trace = {}
        got = compose(C(["x", "u"], ["y"], ["u <= 1"], ["y <= x"]), C(["y", "v"], ["x"], ["v <= 2"], ["x <= y"]), trace)
        assert trace["branch"] == "cycle"
        assert_contract(got, ["u", "v"], [], ["u <= 1", "v <= 2"], [])

    def test_unconnected(self):
        got = compose(C(["a"], ["b"], ["a <= 1"], ["b <= a"]), C(["c"], ["d"], ["c <= 1"], ["d <= c"]))
        assert_contract(got, ["a", "c"], ["b", "d"], ["a <= 1", "c <= 1"], ["b <= a", "d <= c"])

    def test_insufficient_guarantee(self):
        with pytest.raises(AlgebraError) as err:
            compose(C(["i"], ["o"], [], ["-o <= 0"]), C(["o"], ["p"], ["o <= 1"], ["p <= o"]))
        assert err.value.kind is ErrorKind.UNSATISFIABLE_CONTEXT

    def test_infeasible_assumptions_warn(self, caplog):
        with caplog.at_level(logging.WARNING):
            compose(C(["a"], ["b"], ["a <= 0"], []), C(["a"], ["c"], ["-a <= -1"], []))
        assert "infeasible" in caplog.text

    def test_not_associative(self):
        a = C(["i"], ["x"], [], ["x <= i"])
        b = C(["x"], ["y"], [], ["y <= x"])
        c = C(["x", "y"], ["z"], [], ["z <= x + y"])
        left = compose(compose(a, b), c)
        right = compose(a, compose(b, c))
        assert set(left.inputs) != set(right.inputs)

    def test_compose_all_folds_left(self):
        a, b = C(*EX1_C), C(*EX1_D)
        assert compose_all([a, b]) == compose(a, b)


class TestQuotient:
    SYS = (["i"], ["o'"], ["i <= 1"], ["o' <= 2*i + 1"])
    PART = (["i"], ["o"], ["i <= 2"], ["o <= 2*i"])

    def test_missing_component(self):
        assert_contract(quotient(C(*self.SYS), C(*self.PART)), ["o"], ["o'"], ["o <= 2"], ["o' <= o + 1"])

    def test_roundtrip_refines_system(self):
        q = quotient(C(*self.SYS), C(*self.PART))
        assert refines(compose(q, C(*self.PART)), C(*self.SYS))

    def test_driven_top_level_input(self):
        with pytest.raises(AlgebraError) as err:
            quotient(C(["i"], ["o"], [], []), C(["x"], ["i"], [], []))
        assert err.value.kind is ErrorKind.QUOTIENT_UNDEFINED

    def test_trace(self):
        trace = {}
        quotient(C(*self.SYS), C(*self.PART), trace)
        assert trace["augmented"] is True
        assert set(trace) == {"augmented", "assumptions", "refined_guarantees", "guarantees"}


class TestMerge:
    def test_idempotent(self):
        c = C(*EX1_C)
        assert merge(c, c) == c

    def test_union(self):
        got = merge(C(["x"], ["y"], ["x <= 1"], ["y <= x"]), C(["x"], ["y"], ["-x <= 0"], ["-y <= 0"]))
        assert_contract(got, ["x"], ["y"], ["x <= 1", "-x <= 0"], ["y <= x", "-y <= 0"])

    def test_profile_mismatch(self):
        with pytest.raises(AlgebraError) as err:
            merge(C(*EX1_C), C(*EX1_D))
        assert err.value.kind is ErrorKind.MERGE_UNDEFINED


class TestRefines:
    def test_reflexive(self):
        assert refines(C(*EX1_C), C(*EX1_C))

    def test_weaker_assumption_stronger_guarantee(self):
        assert refines(C(["i"], ["o"], ["i <= 2"], ["o <= i"]), C(["i"], ["o"], ["i <= 1"], ["o <= i + 1"]))

    def test_wrong_direction(self):
        assert not refines(C(["i"], ["o"], ["i <= 1"], ["o <= i"]), C(["i"], ["o"], ["i <= 2"], ["o <= i"]))

    def test_profile_mismatch(self):
        with pytest.raises(AlgebraError) as err:
            refines(C(*EX1_C), C(*EX1_D))
        assert err.value.kind is ErrorKind.INVALID_CONTRACT


def test_results_are_hygienic_and_deterministic():
    results = [compose(C(*EX1_C), C(*EX1_D)) for _ in range(3)]
    results += [quotient(C(*TestQuotient.SYS), C(*TestQuotient.PART)) for _ in range(3)]
    assert all(hygienic(r) for r in results)
    assert len({str(r) for r in results[:3]}) == 1 and len({str(r) for r in results[3:]}) == 1


def test_widened_keeps_terms():
    c = C(*EX1_C).widened(["j"], ["p"])
    assert c.inputs == ("i", "j") and c.outputs == ("o", "p")
    validate(c)
