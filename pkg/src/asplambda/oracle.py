"""Exhaustive enumeration of small formulas and a brute-force inverse oracle.

Terms are generated type-directed in beta-normal form: an arrow type is
inhabited by abstractions and variable spines, a base type by the ASP
constructors whose type coerces to it and by spines ending in such a type.
Only closed lambda-I terms survive.  Binder annotations guide generation and
are dropped from the output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .reduction import apply, normalize
from .syntax import parse_type, print_term
from .terms import (
    E, Abs, App, Arrow, Atom, Base, CNeg, Conj, Const, FuncApp, Naf, Or, Program, Rule,
    Term, Type, Var, alpha_eq, alpha_key, children, rebuild, size,
)
from .terms import depth as tree_depth
from .typecheck import TypeCheckError, check

_DOWN = {
    "e": ("e",), "t": ("t",), "a": ("a",), "l": ("a", "l"), "g": ("a", "l", "g"),
    "d": ("a", "l", "g", "d"), "h": ("a", "l", "h"),
}


@dataclass(frozen=True)
class Signature:
    predicates: tuple = ()   # (name, arity)
    constants: tuple = ()
    functions: tuple = ()    # (name, arity)

    @classmethod
    def of(cls, predicates=None, constants=(), functions=None) -> "Signature":
        return cls(tuple(sorted((predicates or {}).items())), tuple(sorted(constants)),
                   tuple(sorted((functions or {}).items())))


@dataclass(frozen=True)
class EnumBudget:
    max_depth: int
    max_abstractors: int
    signature: Signature
    target_type: Type
    max_width: int = 2      # items per disjunction or conjunction
    max_rules: int = 2      # rules per program; 1 leaves programs out

    def __post_init__(self):
        if (self.max_depth < 1 or self.max_width < 2 or self.max_rules < 1
                or self.max_abstractors < 0):
            raise ValueError("depth >= 1, width >= 2, rules >= 1 and abstractors >= 0 required")


@dataclass
class _Enumerator:
    budget: EnumBudget
    memo: dict = field(default_factory=dict)

    # Each generator returns a tuple of (term, used names, abstractor count).

    def gen(self, ty: Type, ctx: tuple, depth: int) -> tuple:
        key = (ty, ctx, depth)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = tuple(self._gen(ty, ctx, depth)) if depth > 0 else ()
        return hit

    def _gen(self, ty, ctx, depth):
        if isinstance(ty, Arrow):
            name = f"v{len(ctx) + 1}"
            inner = ctx + ((name, ty.arg),)
            for body, used, n in self.gen(ty.res, inner, depth - 1):
                if name in used and n < self.budget.max_abstractors:
                    yield Abs(name, body, ty.arg), used - {name}, n + 1
            yield from self.spines(ty, ctx, depth)
            return
        for tag in _DOWN[ty.tag]:
            yield from self.exact_base(tag, ctx, depth)

    def spines(self, ty, ctx, depth):
        """Variable-headed applications of exactly type ``ty``."""
        for name, vty in ctx:
            doms = []
            cur = vty
            while True:
                if cur == ty:
                    yield from self._spine(Var(name), doms, ctx, depth, frozenset((name,)))
                if not isinstance(cur, Arrow):
                    break
                doms.append(cur.arg)
                cur = cur.res

    def _spine(self, head, doms, ctx, depth, used):
        if not doms:
            yield head, used, 0
            return
        k = len(doms)
        if depth <= k:
            return
        choices = [self.gen(d, ctx, depth - (k - i)) for i, d in enumerate(doms)]
        for combo in product(*choices):
            t = head
            for arg, _, _ in combo:
                t = App(t, arg)
            total = sum(c[2] for c in combo)
            if total <= self.budget.max_abstractors:
                yield t, used.union(*(c[1] for c in combo)), total

    def exact_base(self, tag, ctx, depth):
        key = ("base", tag, ctx, depth)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = tuple(self._exact_base(tag, ctx, depth))
        return hit

    def _exact_base(self, tag, ctx, depth):
        sig = self.budget.signature
        base = Base(tag)
        yield from self.spines(base, ctx, depth)
        match tag:
            case "e":
                for c in sig.constants:
                    yield Const(c, E), frozenset(), 0
                for f, n in sig.functions:
                    yield from self._args(lambda a, f=f: FuncApp(f, a), n, ctx, depth)
            case "a":
                for p, n in sig.predicates:
                    yield from self._args(lambda a, p=p: Atom(p, a), n, ctx, depth)
            case "l":
                yield from self._wrap(CNeg, Base("a"), ctx, depth)
            case "g":
                yield from self._wrap(Naf, Base("l"), ctx, depth)
            case "d":
                yield from self._nary(Conj, Base("d"), ctx, depth)
            case "h":
                yield from self._nary(Or, Base("h"), ctx, depth)
            case "t":
                yield from self._rules(ctx, depth)
                yield from self._nary(Program, base, ctx, depth)

    def _args(self, build, n, ctx, depth):
        if n == 0:
            yield build(()), frozenset(), 0
            return
        pool = self.gen(E, ctx, depth - 1)
        for combo in product(pool, repeat=n):
            total = sum(c[2] for c in combo)
            if total <= self.budget.max_abstractors:
                yield build(tuple(c[0] for c in combo)), frozenset().union(*(c[1] for c in combo)), total

    def _wrap(self, cls, inner_ty, ctx, depth):
        for t, used, n in self.gen(inner_ty, ctx, depth - 1):
            yield cls(t), used, n

    def _nary(self, cls, item_ty, ctx, depth):
        top = self.budget.max_rules if cls is Program else self.budget.max_width
        if top < 2:
            return
        pool = [x for x in self.gen(item_ty, ctx, depth - 1) if not isinstance(x[0], cls)]
        for width in range(2, top + 1):
            for combo in product(pool, repeat=width):
                total = sum(c[2] for c in combo)
                if total <= self.budget.max_abstractors:
                    yield (cls(tuple(c[0] for c in combo)),
                           frozenset().union(*(c[1] for c in combo)), total)

    def _rules(self, ctx, depth):
        heads = ((None, frozenset(), 0),) + self.gen(Base("h"), ctx, depth - 1)
        bodies = ((None, frozenset(), 0),) + self.gen(Base("d"), ctx, depth - 1)
        for (h, uh, nh), (b, ub, nb) in product(heads, bodies):
            if h is None and b is None:
                continue
            if nh + nb <= self.budget.max_abstractors:
                yield Rule(h, b), uh | ub, nh + nb


def _strip(t: Term) -> Term:
    if isinstance(t, Abs):
        return Abs(t.var, _strip(t.body))
    kids = children(t)
    return rebuild(t, [_strip(k) for k in kids]) if kids else t


def enumerate_formulas(budget: EnumBudget) -> list:
    """Every formula within ``budget`` that checks at the target type,
    sorted by size and then printed form."""
    out = {}
    for t, used, _ in _Enumerator(budget).gen(budget.target_type, (), budget.max_depth):
        if used:
            continue
        t = _strip(t)
        key = alpha_key(t)
        if key not in out and check(t, budget.target_type):
            out[key] = t
    return sorted(out.values(), key=lambda t: (size(t), print_term(t)))


def _matches(fn: Term, arg: Term, h: Term) -> bool:
    try:
        return alpha_eq(apply(fn, arg), h)
    except (TypeCheckError, RecursionError):
        return False


def oracle_inverse_l(h: Term, g: Term, budget: EnumBudget) -> list:
    """All enumerated F with F@G alpha-equal to H, in enumeration order."""
    return [f for f in enumerate_formulas(budget) if _matches(f, g, h)]


def oracle_inverse_r(h: Term, g: Term, budget: EnumBudget) -> list:
    """All enumerated F with G@F alpha-equal to H, in enumeration order."""
    return [f for f in enumerate_formulas(budget) if _matches(g, f, h)]


# -- order matrix ------------------------------------------------------------


@dataclass(frozen=True)
class OrderRow:
    """Orders of H, F and G for H = F@G, with a representative type for F."""

    h: int
    f: int
    g: int
    f_type: Type

    @property
    def g_type(self) -> Type:
        return self.f_type.arg

    @property
    def h_type(self) -> Type:
        return self.f_type.res


def _row(h, f, g, text):
    return OrderRow(h, f, g, parse_type(text))


ORDER_ROWS = (
    _row(0, 1, 0, "e -> t"),
    _row(1, 1, 0, "a -> e -> t"),
    _row(2, 2, 0, "d -> (g -> t) -> t"),
    _row(0, 2, 1, "(h -> t) -> t"),
    _row(1, 2, 1, "(l -> t) -> e -> t"),
    _row(2, 2, 1, "(g -> t) -> (e -> t) -> t"),
)


def _arity(ty: Type) -> int:
    n = 0
    while isinstance(ty, Arrow):
        n, ty = n + 1, ty.res
    return n


def application_table(row: OrderRow, signature: Signature, depth: int = 5,
                      max_width: int = 2, max_abstractors: int = 3) -> dict:
    """Group every enumerated pair (F, G) of the row by (H, G) with H = F@G.

    G ranges over formulas of depth <= ``depth``; F may be deeper by one level
    per extra leading binder.  Only pairs whose H has depth <= ``depth`` are
    kept.  Values are ``(H, G, [F, ...])``, F in enumeration order.
    """
    f_depth = depth + _arity(row.f_type) - 1
    fs = enumerate_formulas(EnumBudget(f_depth, max_abstractors, signature, row.f_type, max_width))
    gs = enumerate_formulas(EnumBudget(depth, max_abstractors, signature, row.g_type, max_width))
    table: dict = {}
    for g in gs:
        gkey = alpha_key(g)
        for f in fs:
            # both sides were generated at matching types, so F@G is well typed
            h = normalize(App(f, g), check=False)
            if tree_depth(h) > depth:
                continue
            entry = table.get((alpha_key(h), gkey))
            if entry is None:
                table[(alpha_key(h), gkey)] = (h, g, [f])
            else:
                entry[2].append(f)
    return table
