"""Type inference for ASP typed terms.

Every node gets a type; base types are ordered by the coercions
``a <= l <= g <= d`` and ``l <= h`` (``e`` and ``t`` stand alone).  A node
whose type is a base type may be used wherever a larger base type is
expected.  Arrow types are never coerced, only unified.

Unannotated binders are solved by unification plus base-type subsumption
constraints.  When several base types satisfy every constraint the least one
in ``a, l, g, d, h, e, t`` order is chosen.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count

from .terms import (
    A, D, E, G, H, L, T, Abs, App, Arrow, Atom, Base, CNeg, Conj, Const, FuncApp,
    Naf, Or, Path, Program, Rule, Term, Type, Var, children, free_vars, is_lambda_i,
    node_cached,
)

_UPPER = {
    "e": {"e"}, "t": {"t"},
    "a": {"a", "l", "g", "d", "h"},
    "l": {"l", "g", "d", "h"},
    "g": {"g", "d"},
    "d": {"d"},
    "h": {"h"},
}
_PREFERENCE = ("a", "l", "g", "d", "h", "e", "t")


def coerces(lo: str, hi: str) -> bool:
    """Base-type subsumption ``lo <= hi``."""
    return hi in _UPPER[lo]


def _join(x: str, y: str) -> str | None:
    common = _UPPER[x] & _UPPER[y]
    for tag in _PREFERENCE:
        if tag in common and common <= _UPPER[tag]:
            return tag
    return None


class TypeCheckError(Exception):
    def __init__(self, path: Path, message: str, expected: Type | None = None,
                 found: Type | None = None):
        super().__init__(f"at {list(path)}: {message}")
        self.path = path
        self.message = message
        self.expected = expected
        self.found = found


@dataclass(frozen=True)
class TypedTerm:
    term: Term
    type: Type
    child_types: dict = field(compare=False, hash=False)
    free_types: dict = field(default_factory=dict, compare=False, hash=False)


class _TVar:
    __slots__ = ("id",)

    def __init__(self, id: int):
        self.id = id


class _Solver:
    def __init__(self):
        self.parent: dict[_TVar, object] = {}
        self.subs: list[tuple[object, object, Path]] = []
        self.ids = count()

    def fresh(self) -> _TVar:
        return _TVar(next(self.ids))

    def find(self, t):
        while isinstance(t, _TVar) and t in self.parent:
            nxt = self.parent[t]
            if isinstance(nxt, _TVar) and nxt in self.parent:
                self.parent[t] = self.parent[nxt]
            t = nxt
        return t

    def occurs(self, v: _TVar, t) -> bool:
        t = self.find(t)
        if t == v:
            return True
        if isinstance(t, Arrow):
            return self.occurs(v, t.arg) or self.occurs(v, t.res)
        return False

    def unify(self, s, t, path: Path):
        s, t = self.find(s), self.find(t)
        if s == t:
            return
        if isinstance(s, _TVar):
            if self.occurs(s, t):
                raise TypeCheckError(path, "infinite type")
            self.parent[s] = t
        elif isinstance(t, _TVar):
            self.unify(t, s, path)
        elif isinstance(s, Arrow) and isinstance(t, Arrow):
            self.unify(s.arg, t.arg, path)
            self.unify(s.res, t.res, path)
        else:
            raise TypeCheckError(path, f"cannot match {self.show(s)} with {self.show(t)}",
                                 self.zonk(t, None), self.zonk(s, None))

    def show(self, t) -> str:
        t = self.find(t)
        if isinstance(t, _TVar):
            return f"?{t.id}"
        if isinstance(t, Arrow):
            return f"({self.show(t.arg)} -> {self.show(t.res)})"
        return str(t)

    def zonk(self, t, values):
        t = self.find(t)
        if isinstance(t, Arrow):
            arg, res = self.zonk(t.arg, values), self.zonk(t.res, values)
            return None if arg is None or res is None else Arrow(arg, res)
        if isinstance(t, _TVar):
            if values is None or t not in values:
                return None
            return Base(values[t])
        return t

    def sub(self, lo, hi, path: Path):
        self.subs.append((lo, hi, path))

    # -- solving

    def solve(self) -> dict:
        self._structural()
        return self._bases()

    def _structural(self):
        """Check base-vs-base constraints; turn arrow-involving ones into equalities."""
        pending = self.subs
        changed = True
        while changed:
            changed = False
            rest = []
            for lo, hi, path in pending:
                a, b = self.find(lo), self.find(hi)
                if isinstance(a, Base) and isinstance(b, Base):
                    if not coerces(a.tag, b.tag):
                        raise TypeCheckError(path, f"{a} cannot be used as {b}", b, a)
                elif isinstance(a, Arrow) or isinstance(b, Arrow):
                    self.unify(a, b, path)
                    changed = True
                else:
                    rest.append((lo, hi, path))
            pending = rest
        self.subs = pending

    def _bases(self) -> dict:
        cons = [(self.find(lo), self.find(hi), path) for lo, hi, path in self.subs]
        values: dict[_TVar, str] = {}

        def val(x):
            return x.tag if isinstance(x, Base) else values.get(x)

        def propagate():
            changed = True
            while changed:
                changed = False
                for lo, hi, path in cons:
                    low = val(lo)
                    if low is None:
                        continue
                    if isinstance(hi, Base):
                        if not coerces(low, hi.tag):
                            raise TypeCheckError(path, f"{low} cannot be used as {hi}",
                                                 hi, Base(low))
                        continue
                    cur = values.get(hi)
                    new = low if cur is None else _join(cur, low)
                    if new is None:
                        raise TypeCheckError(path, f"no common type for {cur} and {low}",
                                             Base(cur), Base(low))
                    if new != cur:
                        values[hi] = new
                        changed = True

        propagate()
        uppers: dict = {}
        for lo, hi, _ in cons:
            if isinstance(lo, _TVar):
                uppers.setdefault(lo, []).append(hi)
        tvars = []
        for lo, hi, _ in cons:
            for x in (lo, hi):
                if isinstance(x, _TVar) and x not in tvars:
                    tvars.append(x)
        for v in tvars:
            if v in values:
                continue
            allowed = set(_PREFERENCE)
            seen, stack = set(), [v]
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                for up in uppers.get(x, ()):
                    bound = val(up)
                    if bound is not None:
                        allowed &= {tag for tag in _PREFERENCE if coerces(tag, bound)}
                    elif isinstance(up, _TVar):
                        stack.append(up)
            choice = next((tag for tag in _PREFERENCE if tag in allowed), None)
            if choice is None:
                path = next(p for lo, _, p in cons if lo == v)
                raise TypeCheckError(path, "no base type satisfies the constraints")
            values[v] = choice
            propagate()
        return values


class _Inferencer:
    def __init__(self):
        self.s = _Solver()
        self.node_types: dict[Path, object] = {}
        self.free: dict[str, object] = {}

    def visit(self, t: Term, env: dict, path: Path):
        ty = self._visit(t, env, path)
        self.node_types[path] = ty
        return ty

    def _visit(self, t: Term, env: dict, path: Path):
        s = self.s
        match t:
            case Var(name):
                if name in env:
                    return env[name]
                return self.free.setdefault(name, s.fresh())
            case Const(_, ty):
                return ty
            case FuncApp(_, args):
                for i, arg in enumerate(args):
                    s.sub(self.visit(arg, env, path + (i,)), E, path)
                return E
            case Atom(_, args):
                for i, arg in enumerate(args):
                    s.sub(self.visit(arg, env, path + (i,)), E, path)
                return A
            case CNeg(inner):
                s.sub(self.visit(inner, env, path + (0,)), A, path)
                return L
            case Naf(inner):
                s.sub(self.visit(inner, env, path + (0,)), L, path)
                return G
            case Or(items):
                for i, item in enumerate(items):
                    s.sub(self.visit(item, env, path + (i,)), H, path)
                return H
            case Conj(items):
                for i, item in enumerate(items):
                    s.sub(self.visit(item, env, path + (i,)), D, path)
                return D
            case Program(items):
                for i, item in enumerate(items):
                    s.sub(self.visit(item, env, path + (i,)), T, path)
                return T
            case Rule(head, body):
                i = 0
                if head is not None:
                    s.sub(self.visit(head, env, path + (0,)), H, path)
                    i = 1
                if body is not None:
                    s.sub(self.visit(body, env, path + (i,)), D, path)
                return T
            case App(fn, arg):
                tf = self.visit(fn, env, path + (0,))
                ta = self.visit(arg, env, path + (1,))
                dom, cod = s.fresh(), s.fresh()
                s.unify(tf, Arrow(dom, cod), path)
                s.sub(ta, dom, path)
                return cod
            case Abs(var, body, ann):
                dom = ann if ann is not None else s.fresh()
                tb = self.visit(body, {**env, var: dom}, path + (0,))
                cod = s.fresh()
                s.sub(tb, cod, path)
                return Arrow(dom, cod)
        raise TypeError(f"not a term: {t!r}")


def _solve(t: Term, expected: Type | None):
    inf = _Inferencer()
    root = inf.visit(t, {}, ())
    if expected is not None:
        inf.s.sub(root, expected, ())
    return inf, inf.s.solve()


def _run(t: Term, expected: Type | None) -> TypedTerm:
    inf, values = _solve(t, expected)
    # unconstrained type variables that never met a constraint default to base
    leftovers: dict = {}

    def resolve(x):
        x = inf.s.find(x)
        if isinstance(x, Arrow):
            return Arrow(resolve(x.arg), resolve(x.res))
        if isinstance(x, _TVar):
            if x in values:
                return Base(values[x])
            return leftovers.setdefault(x, A)
        return x

    child_types = {path: resolve(ty) for path, ty in inf.node_types.items()}
    free_types = {name: resolve(ty) for name, ty in inf.free.items()}
    return TypedTerm(t, child_types[()], child_types, free_types)


def infer(t: Term) -> TypedTerm:
    """Infer the type of every node of ``t``; raise TypeCheckError if untypable."""
    return _run(t, None)


def type_of(t: Term) -> Type:
    return infer(t).type


def check(t: Term, expected: Type) -> bool:
    """True if ``t`` can be given type ``expected`` (base coercion allowed at the root)."""
    try:
        _solve(t, expected)
    except TypeCheckError:
        return False
    return True


def hole_type(t: Term, hole: str, expected: Type | None = None) -> Type:
    """Type that the free variable ``hole`` of ``t`` must have (``t`` at ``expected``)."""
    return _run(t, expected).free_types.get(hole, A)


def require_well_typed(t: Term) -> None:
    """Raise TypeCheckError unless ``t`` is typable (no per-node types kept)."""
    _solve(t, None)


def is_well_typed(t: Term) -> bool:
    try:
        _solve(t, None)
    except TypeCheckError:
        return False
    return True


@node_cached("_formula")
def is_formula(t: Term) -> bool:
    return not free_vars(t) and is_lambda_i(t) and is_well_typed(t)


@node_cached("_normal")
def is_beta_normal(t: Term) -> bool:
    if isinstance(t, App) and isinstance(t.fn, Abs):
        return False
    return all(is_beta_normal(kid) for kid in children(t))
