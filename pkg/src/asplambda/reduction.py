"""Capture-avoiding substitution and beta-reduction."""

from __future__ import annotations

from .terms import (
    Abs, App, Term, Var, all_names, children, free_vars, fresh_name, rebuild,
)
from .typecheck import TypeCheckError, is_beta_normal, require_well_typed


def _subst(body: Term, x: str, n: Term, n_free: frozenset) -> Term:
    match body:
        case Var(name):
            return n if name == x else body
        case Abs(var, inner, ty):
            if var == x or x not in free_vars(inner):
                return body
            if var in n_free:
                new = fresh_name(var, n_free | all_names(inner) | {x})
                inner = _subst(inner, var, Var(new), frozenset((new,)))
                var = new
            return Abs(var, _subst(inner, x, n, n_free), ty)
    if x not in free_vars(body):
        return body
    return rebuild(body, [_subst(kid, x, n, n_free) for kid in children(body)])


def substitute(body: Term, x: str, n: Term, check: bool = True) -> Term:
    """Replace the free occurrences of ``x`` in ``body`` by ``n``.

    Bound variables of ``body`` are renamed (numeric suffix) when they would
    capture a free variable of ``n``.  With ``check`` the substitution must be
    type-correct: ``(\\x.body)@n`` has to type-check.
    """
    if check:
        require_well_typed(App(Abs(x, body), n))
    return _subst(body, x, n, free_vars(n))


def _contract(redex: App) -> Term:
    fn = redex.fn
    return _subst(fn.body, fn.var, redex.arg, free_vars(redex.arg))


def step_outermost(t: Term) -> Term | None:
    """Contract the leftmost-outermost redex; None if ``t`` is normal."""
    if isinstance(t, App) and isinstance(t.fn, Abs):
        return _contract(t)
    kids = children(t)
    for i, kid in enumerate(kids):
        new = step_outermost(kid)
        if new is not None:
            return rebuild(t, kids[:i] + (new,) + kids[i + 1:])
    return None


def step_innermost(t: Term) -> Term | None:
    """Contract the leftmost-innermost redex; None if ``t`` is normal."""
    kids = children(t)
    for i, kid in enumerate(kids):
        new = step_innermost(kid)
        if new is not None:
            return rebuild(t, kids[:i] + (new,) + kids[i + 1:])
    if isinstance(t, App) and isinstance(t.fn, Abs):
        return _contract(t)
    return None


_STRATEGIES = {"outermost": step_outermost, "innermost": step_innermost}


def _nf(t: Term) -> Term:
    # head first: normalize the function, contract if it became an abstraction
    if is_beta_normal(t):
        return t
    match t:
        case App(fn, arg):
            fn = _nf(fn)
            if isinstance(fn, Abs):
                return _nf(_subst(fn.body, fn.var, arg, free_vars(arg)))
            return App(fn, _nf(arg))
        case Abs(var, body, ty):
            return Abs(var, _nf(body), ty)
    kids = children(t)
    if not kids:
        return t
    new = [_nf(k) for k in kids]
    if all(a is b for a, b in zip(new, kids)):
        return t
    return rebuild(t, new)


def normalize(t: Term, strategy: str = "normal", check: bool = True) -> Term:
    """Beta-normal form of a well-typed term (terminates: simply typed).

    ``strategy`` is ``"normal"`` (one recursive pass), or ``"outermost"`` /
    ``"innermost"`` for literal one-redex-at-a-time reduction.  All three reach
    the same normal form up to alpha-equivalence.
    """
    if check:
        require_well_typed(t)
    if strategy == "normal":
        return _nf(t)
    step = _STRATEGIES[strategy]
    while True:
        nxt = step(t)
        if nxt is None:
            return t
        t = nxt


def apply(f: Term, g: Term) -> Term:
    """Normal form of ``f@g``; raises TypeCheckError if the application is ill-typed."""
    return normalize(App(f, g))


def try_apply(f: Term, g: Term) -> Term | None:
    try:
        return apply(f, g)
    except TypeCheckError:
        return None
