r"""Inverse application: given H and G find F with F@G = H (left) or G@F = H (right).

Each algorithm tries its four cases in order and returns the first candidate
that survives re-application.  Cases 3 and 4 are driven by an alpha-aware
matcher that understands the associativity of ``,``, ``or`` and rule
juxtaposition, so a pattern variable (or a hole) may stand for a run of
several conjuncts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice
from typing import Iterator

from .reduction import _subst, apply
from .terms import (
    MAKERS, NARY, Abs, App, Atom, CNeg, Const, FuncApp, Naf, Rule, Term, Var,
    alpha_eq, alpha_key, all_names, binder_prefix, children, free_vars, fresh_name,
    is_lambda_i,
    overlaps, replace_at, spine, subterm_occurrences,
)
from .typecheck import TypeCheckError, is_beta_normal, is_formula

CASES = ("L1", "L2", "L3", "L4", "R1", "R2", "R3", "R4")

# bounds on the enumerative parts of cases 3 and 4
MAX_SUBSETS = 64
MAX_ALIGNMENTS = 64
MAX_ABSTRACTIONS = 256


class InverseInputError(ValueError):
    """H or G is not a beta-normal formula."""


@dataclass(frozen=True)
class InverseResult:
    f: Term | None
    case: str | None
    verified: bool

    @property
    def found(self) -> bool:
        return self.f is not None


NULL = InverseResult(None, None, False)


# -- Operator ":" ------------------------------------------------------------


def replace(h: Term, as_: list, bs: list) -> Term:
    """Simultaneously replace occurrences of ``as_[i]`` in ``h`` by ``bs[i]``.

    Occurrences are taken leftmost-outermost; an occurrence inside one that is
    already being replaced is skipped.  Replacements are not rescanned.
    """
    if len(as_) != len(bs):
        raise ValueError("replace needs lists of equal length")
    keys = [alpha_key(a) for a in as_]
    chosen: dict = {}
    for path, sub in subterm_occurrences(h):
        k = alpha_key(sub)
        if k in keys and not any(overlaps(path, p) for p in chosen):
            chosen[path] = bs[keys.index(k)]
    return replace_at(h, chosen)


# -- renaming helpers --------------------------------------------------------


def _rename_binders(t: Term, avoid: set) -> Term:
    """Alpha-rename every binder of ``t`` to a name outside ``avoid``."""
    match t:
        case Abs(var, body, ty):
            new = fresh_name(var, avoid)
            avoid.add(new)
            if new != var:
                body = _subst(body, var, Var(new), frozenset((new,)))
            return Abs(new, _rename_binders(body, avoid), ty)
    kids = children(t)
    if not kids:
        return t
    from .terms import rebuild
    return rebuild(t, [_rename_binders(k, avoid) for k in kids])


def _rename_free(t: Term, mapping: dict) -> Term:
    for old, new in mapping.items():
        if old != new:
            t = _subst(t, old, Var(new), frozenset((new,)))
    return t


# -- matching ----------------------------------------------------------------


@dataclass(frozen=True)
class _State:
    bindings: tuple = ()   # (pattern variable, term)
    holes: tuple = ()      # (argument terms, matched term)

    def lookup(self, name):
        for n, term in self.bindings:
            if n == name:
                return term
        return None


class _Matcher:
    """Match a pattern against a term.

    ``pvars`` are pattern variables (bound consistently, may not capture
    variables bound inside the match); spines headed by a ``holes`` variable
    match any term and record their arguments.
    """

    def __init__(self, pvars=frozenset(), holes=frozenset()):
        self.pvars = pvars
        self.holes = holes

    def _absorbs(self, p: Term, pe: dict) -> bool:
        if isinstance(p, Var):
            return p.name not in pe and (p.name in self.pvars or p.name in self.holes)
        head, _ = spine(p)
        return isinstance(head, Var) and head.name in self.holes and head.name not in pe

    def match(self, p: Term, t: Term, pe: dict, tb: frozenset, st: _State) -> Iterator[_State]:
        if self._absorbs(p, pe):
            head, args = spine(p)
            if head.name in self.holes:
                renamed = tuple(_rename_free(a, pe) for a in args)
                yield _State(st.bindings, st.holes + ((renamed, t),))
                return
            if free_vars(t) & tb:
                return
            prev = st.lookup(p.name)
            if prev is None:
                yield _State(st.bindings + ((p.name, t),), st.holes)
            elif alpha_eq(prev, t):
                yield st
            return
        match p:
            case Var(name):
                if isinstance(t, Var) and (t.name == pe[name] if name in pe
                                           else t.name == name and name not in tb):
                    yield st
                return
            case Const():
                if p == t:
                    yield st
                return
            case Abs(var, body):
                if isinstance(t, Abs):
                    yield from self.match(body, t.body, {**pe, var: t.var}, tb | {t.var}, st)
                return
        if type(p) is not type(t):
            return
        match p:
            case Atom(pred, args):
                if pred == t.pred and len(args) == len(t.args):
                    yield from self._seq(args, t.args, pe, tb, st)
            case FuncApp(symbol, args):
                if symbol == t.symbol and len(args) == len(t.args):
                    yield from self._seq(args, t.args, pe, tb, st)
            case Rule(head, body):
                if (head is None) == (t.head is None) and (body is None) == (t.body is None):
                    yield from self._seq(children(p), children(t), pe, tb, st)
            case App() | CNeg() | Naf():
                yield from self._seq(children(p), children(t), pe, tb, st)
            case _ if isinstance(p, NARY):
                yield from self._align(p.items, t.items, type(p), 0, 0, pe, tb, st)

    def _seq(self, ps, ts, pe, tb, st):
        if not ps:
            yield st
            return
        for st2 in self.match(ps[0], ts[0], pe, tb, st):
            yield from self._seq(ps[1:], ts[1:], pe, tb, st2)

    def _align(self, ps, ts, cls, pi, ti, pe, tb, st):
        if pi == len(ps):
            if ti == len(ts):
                yield st
            return
        remaining = len(ps) - pi - 1
        if self._absorbs(ps[pi], pe):
            for stop in range(ti + 1, len(ts) - remaining + 1):
                piece = MAKERS[cls](*ts[ti:stop])
                for st2 in self.match(ps[pi], piece, pe, tb, st):
                    yield from self._align(ps, ts, cls, pi + 1, stop, pe, tb, st2)
        elif ti < len(ts):
            for st2 in self.match(ps[pi], ts[ti], pe, tb, st):
                yield from self._align(ps, ts, cls, pi + 1, ti + 1, pe, tb, st2)


def _pattern_matches(pattern: Term, host: Term, pvars: list) -> list:
    """Occurrences of ``host`` that instantiate ``pattern``: [(path, args)]."""
    m = _Matcher(pvars=frozenset(pvars))
    found = []
    for path, occ in subterm_occurrences(host):
        for st in m.match(pattern, occ, {}, frozenset(), _State()):
            args = [st.lookup(v) for v in pvars]
            if all(a is not None for a in args):
                found.append((path, args))
                break
    return found


def _selections(paths: list) -> Iterator[list]:
    """Index sets of pairwise disjoint occurrences, most occurrences first,
    ties broken by leftmost-outermost position."""
    n = len(paths)
    clash = [[overlaps(paths[i], paths[j]) for j in range(n)] for i in range(n)]
    found = []

    def grow(i, chosen):
        if len(found) >= MAX_SUBSETS * 4:
            return
        if i == n:
            if chosen:
                found.append(tuple(chosen))
            return
        if not any(clash[i][j] for j in chosen):
            grow(i + 1, chosen + [i])
        grow(i + 1, chosen)

    grow(0, [])
    found.sort(key=lambda sel: (-len(sel), sel))
    for sel in found[:MAX_SUBSETS]:
        yield list(sel)


def _abstractions(records: list, names: list) -> Iterator[Term]:
    """Patterns P with P[names := args] = term for every (args, term) record."""
    args0, t0 = records[0]
    k = len(args0)
    keys = [alpha_key(a) for a in args0]
    cands = []
    for path, occ in subterm_occurrences(t0):
        okey = alpha_key(occ)
        js = [j for j in range(k) if keys[j] == okey]
        if js and not (free_vars(occ) & _bound_above(t0, path)):
            cands.append((path, js))

    def search(i, chosen):
        if i == len(cands):
            used = {j for _, j in chosen}
            if len(used) == k:
                yield replace_at(t0, {p: Var(names[j]) for p, j in chosen})
            return
        path, js = cands[i]
        if not any(overlaps(path, p) for p, _ in chosen):
            for j in js:
                yield from search(i + 1, chosen + [(path, j)])
        yield from search(i + 1, chosen)

    for pattern in islice(search(0, []), MAX_ABSTRACTIONS):
        if all(_instantiates(pattern, names, args, term) for args, term in records[1:]):
            yield pattern


def _bound_above(t: Term, path) -> set:
    """Variables bound by abstractions of ``t`` strictly above ``path``."""
    out = set()
    for step in path:
        if isinstance(t, Abs):
            out.add(t.var)
        if isinstance(step, tuple):
            break
        t = children(t)[step]
    return out


def _instantiates(pattern, names, args, term) -> bool:
    inst = pattern
    for name, arg in zip(names, args):
        inst = _subst(inst, name, arg, free_vars(arg))
    return alpha_eq(inst, term)


def _diff(pattern: Term, host: Term, hole: str) -> Iterator[list]:
    m = _Matcher(holes=frozenset((hole,)))
    for st in islice(m.match(pattern, host, {}, frozenset(), _State()), MAX_ALIGNMENTS):
        if st.holes:
            yield list(st.holes)


# -- validation --------------------------------------------------------------


def _valid(f: Term, fn: Term, arg: Term, h: Term) -> bool:
    # typability of f is implied by a successful apply
    if free_vars(f) or not is_lambda_i(f) or not is_beta_normal(f):
        return False
    try:
        return alpha_eq(apply(fn, arg), h)
    except (TypeCheckError, RecursionError):
        return False


def _require_formula(t: Term, name: str):
    if free_vars(t):
        raise InverseInputError(f"{name} is not closed")
    if not is_beta_normal(t):
        raise InverseInputError(f"{name} is not in beta-normal form")
    if not is_formula(t):
        raise InverseInputError(f"{name} is not a well-typed lambda-I formula")


# -- Inverse_L ---------------------------------------------------------------


def _is_identity(g: Term) -> bool:
    return isinstance(g, Abs) and g.body == Var(g.var)


def _left_candidates(h: Term, g: Term) -> Iterator[tuple[str, Term]]:
    names = all_names(h) | all_names(g)
    w = fresh_name("w", names)
    v = fresh_name("v", names)

    # case 1: G = \v.v
    if _is_identity(g):
        if isinstance(h, Rule) and h.body is None:
            yield "L1", Abs(v, Rule(App(Var(v), h.head)))
        yield "L1", Abs(v, App(Var(v), h))

    # case 2: G is a sub-term of H
    gkey = alpha_key(g)
    paths = [p for p, sub in subterm_occurrences(h) if alpha_key(sub) == gkey]
    if paths:
        for sel in _selections(paths):
            yield "L2", Abs(v, replace_at(h, {paths[i]: Var(v) for i in sel}))

    # case 3: G = \v1..vs.B and H contains instances of B
    if not _is_identity(g):
        binders, _ = binder_prefix(g)
        for s in range(len(binders), 0, -1):
            pvars = [b.var for b in binders[:s]]
            body = binders[s - 1].body
            if isinstance(body, Var) and body.name in pvars:
                continue
            found = _pattern_matches(body, h, pvars)
            if not found:
                continue
            for sel in _selections([p for p, _ in found]):
                subst = {found[i][0]: _spine(w, found[i][1]) for i in sel}
                yield "L3", Abs(w, replace_at(h, subst))

    # case 4: H = \v1..vi.J and G = \w.J(J1 : w@args)
    if isinstance(g, Abs):
        hb, _ = binder_prefix(h)
        hole, m_body = g.var, g.body
        for i in range(len(hb), -1, -1):
            j_body = hb[i - 1].body if i else h
            for records in _diff(m_body, j_body, hole):
                arity = len(records[0][0])
                if any(len(a) != arity for a, _ in records):
                    continue
                us = _fresh_names("u", arity, names)
                for pattern in _abstractions(records, us):
                    inner = _lams(us, pattern)
                    body = App(Var(w), inner)
                    for b in reversed(hb[:i]):
                        body = Abs(b.var, body, b.var_type)
                    yield "L4", Abs(w, body)


def _spine(head: str, args) -> Term:
    t = Var(head)
    for a in args:
        t = App(t, a)
    return t


def _lams(names, body: Term) -> Term:
    for n in reversed(names):
        body = Abs(n, body)
    return body


def _fresh_names(stem: str, k: int, avoid: set) -> list:
    out = []
    taken = set(avoid)
    for j in range(1, k + 1):
        name = fresh_name(f"{stem}{j}", taken)
        taken.add(name)
        out.append(name)
    return out


def inverse_l(h: Term, g: Term) -> InverseResult:
    """Find F with F@G alpha-equal to H, or a null result."""
    _require_formula(h, "H")
    _require_formula(g, "G")
    g = _rename_binders(g, all_names(h) | all_names(g))
    seen = set()
    for case, f in _left_candidates(h, g):
        key = alpha_key(f)
        if key in seen:
            continue
        seen.add(key)
        if _valid(f, f, g, h):
            return InverseResult(f, case, True)
    return NULL


# -- Inverse_R ---------------------------------------------------------------


def _right_candidates(h: Term, g: Term) -> Iterator[tuple[str, Term]]:
    if not isinstance(g, Abs):
        return
    names = all_names(h) | all_names(g)
    hole, m_body = g.var, g.body

    # case 1: G = \v.v@J
    if (isinstance(m_body, App) and m_body.fn == Var(hole)
            and hole not in free_vars(m_body.arg)):
        j = m_body.arg
        try:
            res = inverse_l(h, j)
        except InverseInputError:
            res = NULL
        if res.found:
            yield "R1", res.f

    # cases 2 and 3: G = \w.H(J : w@args)
    for records in _diff(m_body, h, hole):
        arity = len(records[0][0])
        if any(len(a) != arity for a, _ in records):
            continue
        if arity == 0:
            t0 = records[0][1]
            if all(alpha_eq(t0, t) for _, t in records):
                yield "R2", t0
            continue
        us = _fresh_names("v", arity, names)
        for pattern in _abstractions(records, us):
            yield "R3", _lams(us, pattern)

    # case 4: G = \w.\v1..vi.(w@\v(i+1)..vs.P)
    gb, inner = binder_prefix(m_body)
    if not (isinstance(inner, App) and inner.fn == Var(hole) and isinstance(inner.arg, Abs)):
        return
    i = len(gb)
    hb, _ = binder_prefix(h)
    if len(hb) < i:
        return
    kb, pattern = binder_prefix(inner.arg)
    pattern = _rename_free(pattern, {b.var: hb[n].var for n, b in enumerate(gb)})
    j_body = hb[i - 1].body if i else h
    pvars = [b.var for b in kb]
    found = _pattern_matches(pattern, j_body, pvars)
    if not found:
        return
    w = fresh_name("w", names)
    for sel in _selections([p for p, _ in found]):
        subst = {found[n][0]: _spine(w, found[n][1]) for n in sel}
        yield "R4", Abs(w, replace_at(j_body, subst))


def inverse_r(h: Term, g: Term) -> InverseResult:
    """Find F with G@F alpha-equal to H, or a null result."""
    _require_formula(h, "H")
    _require_formula(g, "G")
    g = _rename_binders(g, all_names(h) | all_names(g))
    seen = set()
    for case, f in _right_candidates(h, g):
        key = alpha_key(f)
        if key in seen:
            continue
        seen.add(key)
        if _valid(f, g, f, h):
            return InverseResult(f, case, True)
    return NULL
