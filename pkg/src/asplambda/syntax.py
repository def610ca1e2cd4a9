r"""ASCII concrete syntax for terms and types.

Terms::

    \x.body  \x:(e -> t).body  \x,y.body     abstraction (body extends right)
    f@a@b                                  application, left associative
    -p(X)   not p(X)                       classical / default negation
    p or q    p, q                         disjunction / conjunction
    h <- b.   h.   <- b.   h <- .          rules; juxtaposed rules form a program

Identifiers bound by an enclosing ``\`` are lambda variables.  Other
identifiers starting with an uppercase letter or ``_`` are ASP variables
(constants of type e).  A bare lowercase identifier is a constant, or a
propositional atom when it is the operand of a logical connective.

Types: base letters ``e a l g d h t`` and right-associative ``->``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import (
    BASE_TAGS, Abs, App, Arrow, Atom, Base, CNeg, Conj, Const, FuncApp, Naf, Or,
    Program, Rule, Term, Type, Var, make_conj, make_or, make_program,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<larrow><-)
  | (?P<rarrow>->)
  | (?P<ident>[A-Za-z0-9_]+)
  | (?P<punct>[\\.:()@,-])
""", re.VERBOSE)

_KEYWORDS = {"not", "or"}


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        col = pos - line_start + 1
        if kind == "ident":
            tokens.append(Token(text if text in _KEYWORDS else "ident", text, line, col))
        elif kind in ("larrow", "rarrow"):
            tokens.append(Token(text, text, line, col))
        elif kind == "punct":
            tokens.append(Token(text, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


_ITEM_START = {"ident", "\\", "(", "-", "not", "<-"}


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail(f"expected {kind!r}")
        return self.advance()

    def fail(self, message: str):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.line, tok.col)

    def done(self):
        if self.tok.kind != "eof":
            self.fail("unexpected trailing input")

    # -- types

    def type_(self) -> Type:
        left = self.type_atom()
        if self.tok.kind == "->":
            self.advance()
            return Arrow(left, self.type_())
        return left

    def type_atom(self) -> Type:
        if self.tok.kind == "(":
            self.advance()
            ty = self.type_()
            self.expect(")")
            return ty
        tok = self.tok
        if tok.kind == "ident" and tok.text in BASE_TAGS:
            self.advance()
            return Base(tok.text)
        self.fail("expected a type")

    # -- terms

    def expr(self, bound: frozenset) -> Term:
        items = [self.item(bound)]
        while self.tok.kind in _ITEM_START:
            items.append(self.item(bound))
        if len(items) == 1:
            return items[0]
        return make_program(*(_literal(x) for x in items))

    def item(self, bound) -> Term:
        if self.tok.kind == "<-":
            self.advance()
            return self.rule_tail(None, bound)
        if self.tok.kind not in _ITEM_START:
            self.fail("expected a term")
        left = self.conj(bound)
        if self.tok.kind == "<-":
            self.advance()
            return self.rule_tail(left, bound)
        if self.tok.kind == ".":
            self.advance()
            return Rule(_literal(left), None)
        return left

    def rule_tail(self, head, bound) -> Term:
        body = None
        if self.tok.kind != ".":
            body = _literal(self.conj(bound))
        self.expect(".")
        if head is None and body is None:
            self.fail("empty rule")
        return Rule(_literal(head) if head is not None else None, body)

    def conj(self, bound) -> Term:
        items = [self.disj(bound)]
        while self.tok.kind == ",":
            self.advance()
            items.append(self.disj(bound))
        if len(items) == 1:
            return items[0]
        return make_conj(*(_literal(x) for x in items))

    def disj(self, bound) -> Term:
        items = [self.unary(bound)]
        while self.tok.kind == "or":
            self.advance()
            items.append(self.unary(bound))
        if len(items) == 1:
            return items[0]
        return make_or(*(_literal(x) for x in items))

    def unary(self, bound) -> Term:
        if self.tok.kind == "-":
            self.advance()
            return CNeg(_literal(self.unary(bound)))
        if self.tok.kind == "not":
            self.advance()
            return Naf(_literal(self.unary(bound)))
        return self.application(bound)

    def application(self, bound) -> Term:
        term = self.primary(bound, in_args=False)
        while self.tok.kind == "@":
            self.advance()
            term = App(term, self.primary(bound, in_args=False))
        return term

    def primary(self, bound, in_args: bool) -> Term:
        tok = self.tok
        if tok.kind == "\\":
            return self.abstraction(bound)
        if tok.kind == "(":
            self.advance()
            term = self.expr(bound)
            self.expect(")")
            return term
        if tok.kind != "ident":
            self.fail("expected a term")
        self.advance()
        name = tok.text
        if self.tok.kind == "(":
            self.advance()
            args = []
            if self.tok.kind != ")":
                args.append(self.argument(bound))
                while self.tok.kind == ",":
                    self.advance()
                    args.append(self.argument(bound))
            self.expect(")")
            if in_args:
                if not args:
                    raise ParseError("function term without arguments", tok.line, tok.col)
                return FuncApp(name, tuple(args))
            return Atom(name, tuple(args))
        if name in bound:
            return Var(name)
        return Const(name)

    def argument(self, bound) -> Term:
        # disjunction level: ',' separates arguments
        term = self.primary(bound, in_args=True)
        while self.tok.kind == "@":
            self.advance()
            term = App(term, self.primary(bound, in_args=True))
        return term

    def abstraction(self, bound) -> Term:
        self.expect("\\")
        binders = [self.binder()]
        while self.tok.kind == ",":
            self.advance()
            binders.append(self.binder())
        self.expect(".")
        body = self.expr(bound | {name for name, _ in binders})
        for name, ty in reversed(binders):
            body = Abs(name, body, ty)
        return body

    def binder(self):
        name = self.expect("ident").text
        ty = None
        if self.tok.kind == ":":
            self.advance()
            ty = self.type_atom()
        return name, ty


def _literal(t: Term) -> Term:
    """Read a bare lowercase constant in connective position as an atom."""
    if isinstance(t, Const) and not (t.name[:1].isupper() or t.name[:1] == "_"):
        return Atom(t.name, ())
    return t


def parse_term(src: str) -> Term:
    p = _Parser(src)
    if p.tok.kind == "eof":
        p.fail("expected a term")
    term = p.expr(frozenset())
    p.done()
    return term


def parse_type(src: str) -> Type:
    p = _Parser(src)
    ty = p.type_()
    p.done()
    return ty


# -- printing ----------------------------------------------------------------

# precedence levels, loosest first
_PROGRAM, _RULE, _CONJ, _OR, _UNARY, _APP, _ATOM = range(7)


def print_type(ty: Type) -> str:
    return str(ty)


def print_term(t: Term) -> str:
    return _show(t, _PROGRAM, literal=False)


def _prec(t: Term) -> int:
    match t:
        case Abs():
            return _PROGRAM
        case Program():
            return _PROGRAM
        case Rule():
            return _RULE
        case Conj():
            return _CONJ
        case Or():
            return _OR
        case CNeg() | Naf():
            return _UNARY
        case App():
            return _APP
    return _ATOM


def _show(t: Term, ctx: int, literal: bool) -> str:
    text = _bare(t, literal)
    if _prec(t) < ctx or (isinstance(t, Abs) and ctx > _PROGRAM):
        return f"({text})"
    return text


def _binder(t: Abs) -> str:
    if t.var_type is None:
        return f"\\{t.var}."
    ty = print_type(t.var_type)
    return f"\\{t.var}:{ty}."


def _bare(t: Term, literal: bool) -> str:
    match t:
        case Var(name) | Const(name):
            return name
        case Atom(pred, args):
            if not args:
                return pred if literal else f"{pred}()"
            return f"{pred}({', '.join(_show(x, _APP, False) for x in args)})"
        case FuncApp(symbol, args):
            return f"{symbol}({', '.join(_show(x, _APP, False) for x in args)})"
        case Abs(_, body):
            inner = _show(body, _PROGRAM, False)
            if isinstance(body, (Rule, Program, Conj, Or)):
                inner = f"({inner})"
            return _binder(t) + inner
        case App(fn, arg):
            return f"{_show(fn, _APP, False)}@{_show(arg, _ATOM, False)}"
        case CNeg(inner):
            return "-" + _show(inner, _UNARY, True)
        case Naf(inner):
            return "not " + _show(inner, _UNARY, True)
        case Or(items):
            return " or ".join(_show(x, _UNARY, True) for x in items)
        case Conj(items):
            return ", ".join(_show(x, _OR, True) for x in items)
        case Rule(head, body):
            if body is None:
                return _show(head, _CONJ, True) + "."
            if head is None:
                return "<- " + _show(body, _CONJ, True) + "."
            return f"{_show(head, _CONJ, True)} <- {_show(body, _CONJ, True)}."
        case Program(items):
            parts = []
            for x in items:
                if isinstance(x, Rule) or _prec(x) >= _APP:
                    parts.append(_show(x, _RULE, True))
                else:
                    parts.append(f"({_bare(x, True)})")
            return " ".join(parts)
    raise TypeError(f"not a term: {t!r}")
