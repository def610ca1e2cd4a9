"""Types and terms of the typed ASP lambda calculus.

Terms are immutable frozen dataclasses.  Disjunction, conjunction and rule
juxtaposition are associative, so ``Or``, ``Conj`` and ``Program`` are n-ary
and always kept flat; build them through :func:`make_or`, :func:`make_conj`
and :func:`make_program`, which flatten nested items and collapse singletons.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

BASE_TAGS = ("e", "a", "l", "g", "d", "h", "t")


@dataclass(frozen=True)
class Base:
    tag: str

    def __post_init__(self):
        if self.tag not in BASE_TAGS:
            raise ValueError(f"unknown base type {self.tag!r}")

    def __str__(self):
        return self.tag


@dataclass(frozen=True)
class Arrow:
    arg: "Type"
    res: "Type"

    def __str__(self):
        return f"({self.arg} -> {self.res})"


Type = Union[Base, Arrow]

E, A, L, G, D, H, T = (Base(tag) for tag in BASE_TAGS)


def arrow(*types: Type) -> Type:
    """Right-nested arrow: ``arrow(e, a, t)`` is ``e -> (a -> t)``."""
    result = types[-1]
    for ty in reversed(types[:-1]):
        result = Arrow(ty, result)
    return result


def order(ty: Type) -> int:
    match ty:
        case Base():
            return 0
        case Arrow(arg, res):
            return max(order(arg) + 1, order(res))
    raise TypeError(f"not a type: {ty!r}")


# -- terms -------------------------------------------------------------------


def _term(cls):
    """Frozen dataclass whose (recursive) hash is computed once."""
    cls = dataclass(frozen=True)(cls)
    structural = cls.__hash__

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = structural(self)
            object.__setattr__(self, "_hash", h)
        return h

    cls.__hash__ = __hash__
    return cls


@_term
class Var:
    """A lambda variable; its type lives on the binding ``Abs``."""

    name: str


@_term
class Const:
    """A constant.  ASP term variables such as ``X`` are constants of type e."""

    name: str
    type: Type = E


@_term
class Abs:
    var: str
    body: "Term"
    var_type: Type | None = None


@_term
class App:
    fn: "Term"
    arg: "Term"


@_term
class FuncApp:
    symbol: str
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ValueError("function terms need at least one argument")


@_term
class Atom:
    """``pred(args)``; an empty argument tuple is a propositional atom."""

    pred: str
    args: tuple = ()


@_term
class CNeg:
    inner: "Term"


@_term
class Naf:
    inner: "Term"


@_term
class Or:
    items: tuple

    def __post_init__(self):
        _check_flat(self, Or)


@_term
class Conj:
    items: tuple

    def __post_init__(self):
        _check_flat(self, Conj)


@_term
class Rule:
    head: "Term | None" = None
    body: "Term | None" = None

    def __post_init__(self):
        if self.head is None and self.body is None:
            raise ValueError("a rule needs a head or a body")


@_term
class Program:
    items: tuple

    def __post_init__(self):
        _check_flat(self, Program)


Term = Union[Var, Const, Abs, App, FuncApp, Atom, CNeg, Naf, Or, Conj, Rule, Program]
NARY = (Or, Conj, Program)


def _check_flat(node, cls):
    if len(node.items) < 2:
        raise ValueError(f"{cls.__name__} needs at least two items")
    if any(isinstance(item, cls) for item in node.items):
        raise ValueError(f"nested {cls.__name__}; use the make_* constructors")


def _flatten(cls, items) -> list:
    out = []
    for item in items:
        if isinstance(item, cls):
            out.extend(item.items)
        else:
            out.append(item)
    return out


def make_or(*items: Term) -> Term:
    flat = _flatten(Or, items)
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def make_conj(*items: Term) -> Term:
    flat = _flatten(Conj, items)
    return flat[0] if len(flat) == 1 else Conj(tuple(flat))


def make_program(*items: Term) -> Term:
    flat = _flatten(Program, items)
    return flat[0] if len(flat) == 1 else Program(tuple(flat))


MAKERS = {Or: make_or, Conj: make_conj, Program: make_program}


def lam(names: str, body: Term) -> Term:
    """``lam("v u", body)`` builds ``\\v.\\u.body``."""
    for name in reversed(names.split()):
        body = Abs(name, body)
    return body


def app(fn: Term, *args: Term) -> Term:
    for arg in args:
        fn = App(fn, arg)
    return fn


def is_asp_variable(name: str) -> bool:
    return name[:1].isupper() or name[:1] == "_"


# -- structure ---------------------------------------------------------------


def node_cached(slot: str):
    """Memoize a function of one term on the term object itself."""
    def deco(fn):
        def wrapper(t):
            value = t.__dict__.get(slot)
            if value is None:
                value = fn(t)
                object.__setattr__(t, slot, value)
            return value
        wrapper.__name__ = fn.__name__
        wrapper.__doc__ = fn.__doc__
        return wrapper
    return deco


_CHILDREN = {
    Var: lambda t: (),
    Const: lambda t: (),
    Abs: lambda t: (t.body,),
    App: lambda t: (t.fn, t.arg),
    FuncApp: lambda t: t.args,
    Atom: lambda t: t.args,
    CNeg: lambda t: (t.inner,),
    Naf: lambda t: (t.inner,),
    Or: lambda t: t.items,
    Conj: lambda t: t.items,
    Program: lambda t: t.items,
    Rule: lambda t: (t.head, t.body) if t.head is not None and t.body is not None
    else (t.head,) if t.body is None else (t.body,),
}


def children(t: Term) -> tuple:
    return _CHILDREN[type(t)](t)


def rebuild(t: Term, kids) -> Term:
    """Return ``t`` with its children replaced, re-flattening n-ary nodes."""
    kids = tuple(kids)
    match t:
        case Abs(var, _, ty):
            return Abs(var, kids[0], ty)
        case App():
            return App(kids[0], kids[1])
        case FuncApp(symbol, _):
            return FuncApp(symbol, kids)
        case Atom(pred, _):
            return Atom(pred, kids)
        case CNeg():
            return CNeg(kids[0])
        case Naf():
            return Naf(kids[0])
        case Or() | Conj() | Program():
            return MAKERS[type(t)](*kids)
        case Rule(head, body):
            it = iter(kids)
            return Rule(next(it) if head is not None else None,
                        next(it) if body is not None else None)
    return t


def size(t: Term) -> int:
    return 1 + sum(size(c) for c in children(t))


@node_cached("_depth")
def depth(t: Term) -> int:
    return 1 + max((depth(c) for c in children(t)), default=0)


def binder_prefix(t: Term) -> tuple[list[Abs], Term]:
    """Split ``\\v1.\\v2...body`` into its leading abstractions and body."""
    binders = []
    while isinstance(t, Abs):
        binders.append(t)
        t = t.body
    return binders, t


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``f@a1@...@an`` into ``(f, [a1, ..., an])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


# -- paths and occurrences ---------------------------------------------------

# A path step is a child index, or a ``(start, stop)`` pair selecting a
# contiguous run of items of an n-ary node (always the last step).
Path = tuple


def resolve(t: Term, path: Path) -> Term:
    for step in path:
        if isinstance(step, tuple):
            start, stop = step
            t = MAKERS[type(t)](*t.items[start:stop])
        else:
            t = children(t)[step]
    return t


def subterm_occurrences(f: Term) -> list[tuple[Path, Term]]:
    """All occurrences in ``f``, leftmost-outermost, root first.

    Runs of two or more consecutive items of an n-ary node count as
    occurrences of their own and are listed just before the items they start.
    """
    return list(_occurrences(f, ()))


def _occurrences(t: Term, path: Path) -> Iterator[tuple[Path, Term]]:
    yield path, t
    kids = children(t)
    if isinstance(t, NARY):
        n = len(kids)
        for i in range(n):
            for stop in range(n - (i == 0), i + 1, -1):
                yield path + ((i, stop),), MAKERS[type(t)](*kids[i:stop])
            yield from _occurrences(kids[i], path + (i,))
    else:
        for i, kid in enumerate(kids):
            yield from _occurrences(kid, path + (i,))


def occurs(p: Term, q: Term) -> bool:
    k = alpha_key(p)
    return any(alpha_key(sub) == k for _, sub in _occurrences(q, ()))


def overlaps(p: Path, q: Path) -> bool:
    """True if the occurrences at ``p`` and ``q`` share a node."""
    n = min(len(p), len(q))
    for i in range(n):
        a, b = p[i], q[i]
        if a == b:
            continue
        ra = a if isinstance(a, tuple) else (a, a + 1)
        rb = b if isinstance(b, tuple) else (b, b + 1)
        return ra[0] < rb[1] and rb[0] < ra[1]
    return True


def replace_at(t: Term, replacements: dict) -> Term:
    """Replace non-overlapping occurrences given as ``{path: new_term}``."""
    if () in replacements:
        return replacements[()]
    if not replacements:
        return t
    kids = list(children(t))
    by_child: dict = {}
    slices = []
    for path, new in replacements.items():
        head = path[0]
        if isinstance(head, tuple):
            slices.append((head, new))
        else:
            by_child.setdefault(head, {})[path[1:]] = new
    new_kids = [replace_at(kid, by_child[i]) if i in by_child else kid
                for i, kid in enumerate(kids)]
    for (start, stop), new in sorted(slices, reverse=True):
        new_kids[start:stop] = [new]
    return rebuild(t, new_kids)


# -- variables and alpha-equivalence -----------------------------------------


_NO_NAMES = frozenset()


@node_cached("_free")
def free_vars(t: Term) -> frozenset:
    match t:
        case Var(name):
            return frozenset((name,))
        case Abs(var, body):
            return free_vars(body) - {var}
    out = _NO_NAMES
    for kid in children(t):
        out |= free_vars(kid)
    return out


def bound_names(t: Term) -> set:
    out = set()
    stack = [t]
    while stack:
        sub = stack.pop()
        if isinstance(sub, Abs):
            out.add(sub.var)
        stack.extend(children(sub))
    return out


def all_names(t: Term) -> set:
    return bound_names(t) | set(free_vars(t))


def is_closed(t: Term) -> bool:
    return not free_vars(t)


@node_cached("_lambda_i")
def is_lambda_i(t: Term) -> bool:
    match t:
        case Abs(var, body):
            return var in free_vars(body) and is_lambda_i(body)
    return all(is_lambda_i(kid) for kid in children(t))


@node_cached("_akey")
def alpha_key(t: Term):
    """Hashable key equal for exactly the alpha-equivalent terms.

    Bound variables become de Bruijn indices; binder annotations are ignored.
    """
    return _key(t, ())


@lru_cache(maxsize=65536)
def _key(t: Term, scope: tuple):
    if scope and not free_vars(t):
        return alpha_key(t)
    match t:
        case Var(name):
            for i, bound in enumerate(scope):
                if bound == name:
                    return ("#", i)
            return ("var", name)
        case Const(name, ty):
            return ("const", name, ty)
        case Abs(var, body):
            return ("lam", _key(body, (var,) + scope))
    return (type(t).__name__, getattr(t, "symbol", None) or getattr(t, "pred", None),
            tuple(_key(kid, scope) if kid is not None else None for kid in _slots(t)))


def _slots(t: Term) -> tuple:
    if isinstance(t, Rule):
        return (t.head, t.body)
    return children(t)


def alpha_eq(a: Term, b: Term) -> bool:
    return a == b or alpha_key(a) == alpha_key(b)


def fresh_name(base: str, avoid) -> str:
    """``base`` itself if unused, else ``base`` with the first free numeric suffix."""
    if base not in avoid:
        return base
    stem = base.rstrip("0123456789") or base
    k = 1
    while f"{stem}{k}" in avoid:
        k += 1
    return f"{stem}{k}"
