"""Ground ASP programs and brute-force answer sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .terms import (
    Abs, App, Atom, CNeg, Conj, Const, FuncApp, Naf, Or, Program, Rule, Term,
    is_asp_variable,
)


class AspError(ValueError):
    pass


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def __str__(self):
        return ("" if self.positive else "-") + _show_atom(self.atom)

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.positive)


@dataclass(frozen=True)
class AspRule:
    head: tuple = ()
    pos: tuple = ()
    naf: tuple = ()

    def literals(self):
        return self.head + self.pos + self.naf

    def __str__(self):
        head = " or ".join(map(str, self.head))
        body = ", ".join([str(x) for x in self.pos] + [f"not {x}" for x in self.naf])
        if not body:
            return f"{head}."
        return f"{head} <- {body}." if head else f"<- {body}."


@dataclass(frozen=True)
class AspProgram:
    rules: tuple = ()

    def __str__(self):
        return "\n".join(map(str, self.rules))


def _show_arg(t: Term) -> str:
    match t:
        case Const(name):
            return name
        case FuncApp(symbol, args):
            return f"{symbol}({', '.join(map(_show_arg, args))})"
    raise AspError(f"not an ASP term: {t!r}")


def _show_atom(a: Atom) -> str:
    if not a.args:
        return a.pred
    return f"{a.pred}({', '.join(map(_show_arg, a.args))})"


# -- conversion --------------------------------------------------------------


def _literal(t: Term) -> Literal:
    match t:
        case Atom():
            _check_args(t.args)
            return Literal(t, True)
        case CNeg(Atom() as a):
            _check_args(a.args)
            return Literal(a, False)
    raise AspError(f"not a literal: {t!r}")


def _check_args(args):
    for a in args:
        match a:
            case Const():
                pass
            case FuncApp(_, inner):
                _check_args(inner)
            case _:
                raise AspError(f"not an ASP term: {a!r}")


def _rule(r: Rule) -> AspRule:
    head = ()
    if r.head is not None:
        items = r.head.items if isinstance(r.head, Or) else (r.head,)
        head = tuple(_literal(x) for x in items)
    pos, naf = [], []
    if r.body is not None:
        items = r.body.items if isinstance(r.body, Conj) else (r.body,)
        for x in items:
            if isinstance(x, Naf):
                naf.append(_literal(x.inner))
            else:
                pos.append(_literal(x))
    return AspRule(head, tuple(pos), tuple(naf))


def program_of(t: Term) -> AspProgram:
    """Convert a lambda-free rule or program term into an ASP program."""
    match t:
        case Program(items):
            return AspProgram(tuple(_rule(_as_rule(x)) for x in items))
        case Rule():
            return AspProgram((_rule(t),))
        case Abs() | App():
            raise AspError("lambda abstraction or application remains")
    raise AspError("not a program: expected rules")


def _as_rule(t: Term) -> Rule:
    if not isinstance(t, Rule):
        raise AspError(f"program item is not a rule: {t!r}")
    return t


# -- grounding ---------------------------------------------------------------


def _term_vars(t: Term, out: set):
    match t:
        case Const(name) if is_asp_variable(name):
            out.add(name)
        case FuncApp(_, args):
            for a in args:
                _term_vars(a, out)


def _rule_vars(r: AspRule) -> list:
    out: set = set()
    for lit in r.literals():
        for a in lit.atom.args:
            _term_vars(a, out)
    return sorted(out)


def is_ground(p: AspProgram) -> bool:
    return all(not _rule_vars(r) for r in p.rules)


def herbrand_universe(p: AspProgram, depth: int = 0, limit: int = 10_000) -> list:
    consts: set = set()
    funcs: set = set()

    def scan(t):
        match t:
            case Const(name) if not is_asp_variable(name):
                consts.add(t)
            case FuncApp(symbol, args):
                funcs.add((symbol, len(args)))
                for a in args:
                    scan(a)

    for r in p.rules:
        for lit in r.literals():
            for a in lit.atom.args:
                scan(a)
    universe = sorted(consts, key=lambda c: c.name)
    for _ in range(depth):
        layer = [FuncApp(f, args) for f, n in sorted(funcs)
                 for args in product(universe, repeat=n)]
        universe = list(dict.fromkeys(universe + layer))
        if len(universe) > limit:
            raise AspError(f"Herbrand universe exceeds {limit} terms")
    if len(universe) > limit:
        raise AspError(f"Herbrand universe exceeds {limit} terms")
    return universe


def _subst_term(t: Term, sigma: dict) -> Term:
    match t:
        case Const(name) if name in sigma:
            return sigma[name]
        case FuncApp(symbol, args):
            return FuncApp(symbol, tuple(_subst_term(a, sigma) for a in args))
    return t


def _subst_lit(lit: Literal, sigma: dict) -> Literal:
    a = lit.atom
    return Literal(Atom(a.pred, tuple(_subst_term(x, sigma) for x in a.args)), lit.positive)


def ground(p: AspProgram, depth: int = 0, limit: int = 10_000) -> AspProgram:
    """Instantiate every rule with all substitutions from the Herbrand universe."""
    universe = herbrand_universe(p, depth, limit)
    out = []
    for r in p.rules:
        names = _rule_vars(r)
        if not names:
            out.append(r)
            continue
        for values in product(universe, repeat=len(names)):
            sigma = dict(zip(names, values))
            out.append(AspRule(*(tuple(_subst_lit(x, sigma) for x in part)
                                 for part in (r.head, r.pos, r.naf))))
    return AspProgram(tuple(dict.fromkeys(out)))


# -- semantics ---------------------------------------------------------------


def _require_ground(rules):
    for r in rules:
        if _rule_vars(r):
            raise AspError(f"rule is not ground: {r}")


def satisfies(i, r: AspRule) -> bool:
    """Body true in ``i`` implies some head literal in ``i``."""
    _require_ground((r,))
    return _sat(frozenset(i), r)


def _sat(i: frozenset, r: AspRule) -> bool:
    body = all(x in i for x in r.pos) and not any(x in i for x in r.naf)
    return not body or any(x in i for x in r.head)


def reduct(p: AspProgram, s) -> AspProgram:
    """Drop rules with a ``not l`` where ``l`` is in ``s``; strip ``not`` from the rest."""
    _require_ground(p.rules)
    s = frozenset(s)
    return AspProgram(tuple(AspRule(r.head, r.pos, ()) for r in p.rules
                            if not any(x in s for x in r.naf)))


def is_consistent(i) -> bool:
    return not any(x.complement() in i for x in i if x.positive)


def answer_sets(p: AspProgram, depth: int = 0, max_literals: int = 20) -> set:
    """All answer sets of ``p`` (grounded first), by exhaustive enumeration.

    Candidates range over consistent sets of head literals: a literal that
    heads no rule can never belong to a minimal model.
    """
    g = ground(p, depth)
    lits = sorted({x for r in g.rules for x in r.head}, key=str)
    if len(lits) > max_literals:
        raise AspError(f"{len(lits)} ground literals exceed the bound of {max_literals}")
    result = set()
    for n in range(len(lits) + 1):
        for combo in combinations(lits, n):
            s = frozenset(combo)
            if not is_consistent(s):
                continue
            red = reduct(g, s).rules
            if not all(_sat(s, r) for r in red):
                continue
            if not _has_smaller_model(s, red):
                result.add(s)
    return result


def _has_smaller_model(s: frozenset, rules) -> bool:
    items = sorted(s, key=str)
    for n in range(len(items)):
        for combo in combinations(items, n):
            sub = frozenset(combo)
            if all(_sat(sub, r) for r in rules):
                return True
    return False


def format_answer_set(s) -> str:
    return "{" + ", ".join(sorted(map(str, s))) + "}"
