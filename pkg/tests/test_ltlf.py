import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from prefnash import ltlf
from prefnash.errors import CapacityError, LtlfSyntaxError
from prefnash.ltlf import (FALSE, TRUE, Always, And, Atom, Eventually, Next, Not, Or, Release,
                           Until, WeakNext, holds, ltlf_to_dfa, parse_ltlf, progress)
from prefnash.random_instances import random_formula

AP = ("a", "b")


def words(ap, max_len):
    letters = [frozenset(c) for r in range(len(ap) + 1) for c in itertools.combinations(ap, r)]
    for n in range(1, max_len + 1):
        yield from itertools.product(letters, repeat=n)


def test_parse_eventually():
    assert parse_ltlf("F d1") == Eventually(Atom("d1"))


def test_parse_until_with_conjunction():
    f = parse_ltlf("(!d1 & !d3) U d2")
    assert f == Until(And(Not(Atom("d1")), Not(Atom("d3"))), Atom("d2"))


def test_parse_error_at_end():
    with pytest.raises(LtlfSyntaxError) as info:
        parse_ltlf("d1 U")
    assert "end of input" in str(info.value)
    assert info.value.position == 4


def test_unknown_token_reports_position():
    with pytest.raises(LtlfSyntaxError) as info:
        parse_ltlf("a & $b")
    assert info.value.position == 4


@pytest.mark.parametrize("text, expected", [
    ("a | b & c", Or(Atom("a"), And(Atom("b"), Atom("c")))),
    ("a U b U c", Until(Atom("a"), Until(Atom("b"), Atom("c")))),
    ("!a U b", Until(Not(Atom("a")), Atom("b"))),
    ("X F G a", Next(Eventually(Always(Atom("a"))))),
    ("WX a R b", Release(WeakNext(Atom("a")), Atom("b"))),
    ("true & false", And(TRUE, FALSE)),
])
def test_precedence(text, expected):
    assert parse_ltlf(text) == expected


def test_pretty_printer_round_trip():
    rng = np.random.default_rng(3)
    for _ in range(200):
        f = random_formula(rng, 4)
        assert parse_ltlf(str(f)) == f


def test_progress_examples():
    a, b = Atom("a"), Atom("b")
    assert progress(Eventually(a), {"a"}) == TRUE
    assert progress(Eventually(a), set()) == Eventually(a)
    assert progress(Until(b, a), {"b"}) == Until(b, a)


def test_progress_until_matches_semantics_on_two_letter_continuations():
    f = Until(Atom("b"), Atom("a"))
    residual = progress(f, {"b"})
    for rest in words(AP, 2):
        assert holds(f, (frozenset({"b"}),) + rest) == holds(residual, rest)


def test_dfa_for_eventually_has_two_states():
    d = ltlf_to_dfa(parse_ltlf("F a"), AP)
    assert d.n_states == 2
    assert d.accepts([set(), {"a"}])
    assert not d.accepts([set(), {"b"}])


def test_dfa_is_total_and_deterministic():
    d = ltlf_to_dfa(parse_ltlf("a U (b & X a)"), AP)
    assert all(len(row) == 4 for row in d.delta)
    assert all(0 <= r < d.n_states for row in d.delta for r in row)


def test_unknown_atom_rejected():
    with pytest.raises(ValueError):
        ltlf_to_dfa(Atom("z"), AP)


def test_capacity_bound():
    f = parse_ltlf("F (a & X X X b)")
    with pytest.raises(CapacityError):
        ltlf_to_dfa(f, AP, max_states=2)


def test_dfa_json_round_trip():
    d = ltlf_to_dfa(parse_ltlf("G (a -> F b)".replace("->", "|").replace("(a", "(!a")), AP)
    assert ltlf.Dfa.from_json(d.to_json()) == d


def test_minimal_dfa_is_not_larger_than_raw():
    rng = np.random.default_rng(11)
    for _ in range(30):
        f = random_formula(rng, 3, AP)
        assert ltlf_to_dfa(f, AP).n_states <= ltlf_to_dfa(f, AP, minimal=False).n_states


def test_dot_marks_accepting_states():
    dot = ltlf_to_dfa(parse_ltlf("F a"), AP).to_dot()
    assert "doublecircle" in dot and "->" in dot


formula_seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(formula_seeds)
def test_dfa_matches_direct_semantics(seed):
    f = random_formula(np.random.default_rng(seed), 3, AP)
    d = ltlf_to_dfa(f, AP)
    for w in words(AP, 3):
        assert d.accepts(w) == holds(f, w)


@settings(max_examples=60, deadline=None)
@given(formula_seeds)
def test_progress_is_a_derivative(seed):
    rng = np.random.default_rng(seed)
    f = random_formula(rng, 3, AP)
    first = frozenset(x for x in AP if rng.random() < 0.5)
    residual = progress(f, first)
    for rest in words(AP, 2):
        assert holds(f, (first,) + rest) == holds(residual, rest)
