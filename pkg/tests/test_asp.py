from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from asplambda.asp import (
    AspError, AspProgram, AspRule, Literal, answer_sets, format_answer_set, ground,
    herbrand_universe, is_consistent, program_of, reduct, satisfies,
)
from asplambda.syntax import parse_term as P
from asplambda.terms import Atom, Const, FuncApp


def prog(src):
    return program_of(P(src))


def lit(src, positive=True):
    t = P(src)
    # a bare identifier outside a rule reads as a constant
    return Literal(Atom(t.name) if isinstance(t, Const) else t, positive)


def sets(src, depth=0):
    return {format_answer_set(s) for s in answer_sets(prog(src), depth)}


class TestConversion:
    def test_fact(self):
        assert prog("bird(tweety).") == AspProgram((AspRule((lit("bird(tweety)"),)),))

    def test_default_rule(self):
        (r,) = prog("fly(X) <- bird(X), not -fly(X).").rules
        assert r.head == (lit("fly(X)"),)
        assert r.pos == (lit("bird(X)"),)
        assert r.naf == (lit("fly(X)", False),)

    @pytest.mark.parametrize("src", [r"\v.v", r"\v.(v <- p.)", "p(a)"])
    def test_rejects_non_programs(self, src):
        with pytest.raises(AspError):
            prog(src)

    def test_printing(self):
        assert str(prog("p or -q <- r, not s.").rules[0]) == "p or -q <- r, not s."
        assert str(prog("<- p.").rules[0]) == "<- p."


class TestGrounding:
    def test_single_constant(self):
        g = ground(prog("bird(tweety). fly(X) <- bird(X)."))
        assert g == prog("bird(tweety). fly(tweety) <- bird(tweety).")

    def test_ground_is_fixed(self):
        p = prog("p(a). q(b) <- p(a).")
        assert ground(p) == p

    def test_two_constants(self):
        g = ground(prog("p(a). p(b). q(X) <- p(X)."))
        assert len(g.rules) == 4

    def test_function_depth(self):
        p = prog("n(z). n(s(X)) <- n(X).")
        assert herbrand_universe(p) == [Const("z")]
        assert FuncApp("s", (Const("z"),)) in herbrand_universe(p, 1)
        with pytest.raises(AspError):
            herbrand_universe(p, 20, limit=10)


class TestSatisfies:
    RULE = prog("fly(tweety) <- bird(tweety).").rules[0]

    def test_body_true_head_false(self):
        assert not satisfies({lit("bird(tweety)")}, self.RULE)

    def test_vacuous(self):
        assert satisfies(set(), self.RULE)

    def test_both(self):
        assert satisfies({lit("bird(tweety)"), lit("fly(tweety)")}, self.RULE)

    def test_non_ground(self):
        with pytest.raises(AspError):
            satisfies(set(), prog("p(X).").rules[0])


class TestReduct:
    def test_choice(self):
        assert reduct(prog("p <- not q. q <- not p."), {lit("p")}) == prog("p.")

    def test_naf_free_unchanged(self):
        p = prog("p. q <- p.")
        assert reduct(p, {lit("p")}) == p

    def test_empty_set(self):
        assert reduct(prog("p <- not q. q <- not p."), set()) == prog("p. q.")


class TestAnswerSets:
    def test_even_loop(self):
        assert sets("p <- not q. q <- not p.") == {"{p}", "{q}"}

    def test_most_birds_fly(self):
        assert sets("bird(tweety). fly(X) <- bird(X), not -fly(X).") == {"{bird(tweety), fly(tweety)}"}

    def test_penguin_exception(self):
        src = ("bird(tweety). bird(rocky). penguin(rocky). fly(X) <- bird(X), not -fly(X). "
               "-fly(X) <- penguin(X).")
        assert sets(src) == {"{-fly(rocky), bird(rocky), bird(tweety), fly(tweety), penguin(rocky)}"}

    def test_empty_program(self):
        assert answer_sets(AspProgram()) == {frozenset()}

    def test_disjunction_minimal(self):
        assert sets("a or b.") == {"{a}", "{b}"}

    def test_odd_loop(self):
        assert sets("p <- not p.") == set()

    def test_inconsistency(self):
        assert sets("p. -p.") == set()

    def test_bound(self):
        src = " ".join(f"p{i} <- not q{i}. q{i} <- not p{i}." for i in range(11))
        with pytest.raises(AspError):
            answer_sets(prog(src))

    def test_consistency(self):
        assert not is_consistent({lit("p"), lit("p", False)})
        assert is_consistent({lit("p"), lit("q", False)})


# -- randomized ground programs ------------------------------------------------

ATOMS = [Atom(n) for n in "pqrs"]
literals = st.builds(Literal, st.sampled_from(ATOMS), st.booleans())
rules = st.builds(
    AspRule,
    st.lists(literals, max_size=2, unique=True).map(tuple),
    st.lists(literals, max_size=2, unique=True).map(tuple),
    st.lists(literals, max_size=2, unique=True).map(tuple),
)
programs = st.lists(rules, max_size=5).map(lambda rs: AspProgram(tuple(rs)))


def _all_literals(p):
    return sorted({x for r in p.rules for x in r.literals()}, key=str)


def _models(rules_, universe):
    out = []
    for n in range(len(universe) + 1):
        for combo in combinations(universe, n):
            s = frozenset(combo)
            if is_consistent(s) and all(satisfies(s, r) for r in rules_):
                out.append(s)
    return out


def _oracle(p):
    """Answer sets by brute force over every consistent literal set."""
    universe = _all_literals(p)
    found = set()
    for n in range(len(universe) + 1):
        for combo in combinations(universe, n):
            s = frozenset(combo)
            if not is_consistent(s):
                continue
            red = reduct(p, s).rules
            if all(satisfies(s, r) for r in red) and not any(
                    m < s for m in _models(red, sorted(s, key=str))):
                found.add(s)
    return found


@settings(max_examples=150, deadline=None)
@given(programs)
def test_answer_sets_match_exhaustive_oracle(p):
    assert answer_sets(p) == _oracle(p)


@settings(max_examples=200, deadline=None)
@given(programs, st.sets(literals))
def test_reduct_is_naf_free(p, s):
    red = reduct(p, s)
    assert all(not r.naf for r in red.rules)


@settings(max_examples=200, deadline=None)
@given(programs)
def test_answer_sets_are_minimal_models(p):
    found = answer_sets(p)
    for s in found:
        assert all(satisfies(s, r) for r in p.rules)
        assert not any(o < s for o in found)


@settings(max_examples=200, deadline=None)
@given(programs)
def test_naf_free_programs_use_minimal_models(p):
    p = AspProgram(tuple(AspRule(r.head, r.pos, ()) for r in p.rules))
    models = _models(p.rules, _all_literals(p))
    minimal = {m for m in models if not any(o < m for o in models)}
    assert answer_sets(p) == minimal
