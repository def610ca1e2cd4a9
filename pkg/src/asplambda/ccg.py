r"""Learning missing word meanings over CCG derivation trees.

A derivation spec is a JSON document::

    {
      "words": ["Most", "birds", "fly"],
      "tree": "[S [S/(S\\NP) [(S/(S\\NP))/NP Most] [NP birds]] [S\\NP fly]]",
      "meaning": "fly(X) <- bird(X), not -fly(X).",
      "lexicon": {"birds": {"category": "NP", "meaning": "\\x.bird(x)"}, ...}
    }

Leaves are ``[CATEGORY word]``; multi-word leaves are quoted (``"do not"``).
Meanings flow bottom-up by application where both children are known and
top-down by the inverse algorithms where one child is missing.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace

from .inverse import inverse_l, inverse_r
from .reduction import apply
from .syntax import parse_term, print_term
from .terms import Term, alpha_eq


class DerivationError(ValueError):
    def __init__(self, message: str, span: tuple | None = None):
        super().__init__(message if span is None else f"{message} (words {span[0]}..{span[1] - 1})")
        self.span = span


# -- categories --------------------------------------------------------------

ATOMIC = ("S", "NP", "N")


@dataclass(frozen=True)
class Atomic:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Slash:
    forward: bool
    result: "Category"
    arg: "Category"

    def __str__(self):
        return f"{_wrap(self.result)}{'/' if self.forward else chr(92)}{_wrap(self.arg)}"


Category = Atomic | Slash


def _wrap(c: Category) -> str:
    return f"({c})" if isinstance(c, Slash) else str(c)


def parse_category(text: str) -> Category:
    tokens = re.findall(r"[A-Za-z]+|[()/\\]", text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise DerivationError(f"bad category {text!r}")
    pos = 0

    def atom():
        nonlocal pos
        if pos >= len(tokens):
            raise DerivationError(f"bad category {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            c = slashes()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise DerivationError(f"unbalanced category {text!r}")
            pos += 1
            return c
        if tok not in ATOMIC:
            raise DerivationError(f"unknown category {tok!r}")
        return Atomic(tok)

    def slashes():
        nonlocal pos
        left = atom()
        while pos < len(tokens) and tokens[pos] in "/\\":
            forward = tokens[pos] == "/"
            pos += 1
            left = Slash(forward, left, atom())
        return left

    cat = slashes()
    if pos != len(tokens):
        raise DerivationError(f"bad category {text!r}")
    return cat


# -- trees -------------------------------------------------------------------


@dataclass(frozen=True)
class ParseNode:
    category: Category
    span: tuple
    children: tuple = ()
    word: str | None = None
    meaning: Term | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


def parse_tree(text: str) -> ParseNode:
    tokens = re.findall(r'\[|\]|"[^"]*"|[^\s\[\]"]+', text)
    pos = 0
    leaves = 0

    def node():
        nonlocal pos, leaves
        if pos >= len(tokens) or tokens[pos] != "[":
            raise DerivationError("expected '[' in tree")
        pos += 1
        cat = parse_category(tokens[pos])
        pos += 1
        if pos < len(tokens) and tokens[pos] != "[":
            word = tokens[pos].strip('"')
            pos += 1
            _close()
            leaves += 1
            return ParseNode(cat, (leaves - 1, leaves), word=word)
        left, right = node(), node()
        _close()
        return ParseNode(cat, (left.span[0], right.span[1]), (left, right))

    def _close():
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != "]":
            raise DerivationError("expected ']' in tree")
        pos += 1

    root = node()
    if pos != len(tokens):
        raise DerivationError("trailing input after tree")
    return root


def roles(n: ParseNode) -> tuple[int, int]:
    """Indices (function child, argument child) of a binary node."""
    left, right = n.children
    lc, rc = left.category, right.category
    if isinstance(lc, Slash) and lc.forward and lc.arg == rc and lc.result == n.category:
        return 0, 1
    if isinstance(rc, Slash) and not rc.forward and rc.arg == lc and rc.result == n.category:
        return 1, 0
    raise DerivationError(f"categories {lc} and {rc} do not combine to {n.category}", n.span)


# -- driver ------------------------------------------------------------------


@dataclass(frozen=True)
class LexEntry:
    word: str
    category: Category
    meaning: Term | None = None


@dataclass(frozen=True)
class TraceStep:
    span: tuple
    operator: str          # "apply", "Inverse_L" or "Inverse_R"
    inputs: tuple
    output: Term
    case: str | None = None

    def __str__(self):
        args = " ; ".join(print_term(t) for t in self.inputs)
        tag = f" [{self.case}]" if self.case else ""
        return f"{self.span[0]}..{self.span[1] - 1} {self.operator}{tag}: {args} => {print_term(self.output)}"


@dataclass(frozen=True)
class DerivationResult:
    learned: tuple
    trace: tuple
    phrases: tuple = ()


def combine(fn: Term, arg: Term) -> Term:
    return apply(fn, arg)


def _lookup(lexicon, word):
    for entry in lexicon:
        if entry.word == word:
            return entry
    lowered = word.lower()
    for entry in lexicon:
        if entry.word.lower() == lowered:
            return entry
    return None


@dataclass
class _Run:
    lexicon: list
    trace: list = field(default_factory=list)

    def up(self, n: ParseNode) -> ParseNode:
        if n.is_leaf:
            entry = _lookup(self.lexicon, n.word)
            return replace(n, meaning=entry.meaning if entry else None)
        kids = tuple(self.up(k) for k in n.children)
        n = replace(n, children=kids)
        fi, ai = roles(n)
        fn, arg = kids[fi].meaning, kids[ai].meaning
        if fn is None or arg is None:
            return n
        out = combine(fn, arg)
        self.trace.append(TraceStep(n.span, "apply", (fn, arg), out))
        return replace(n, meaning=out)

    def down(self, n: ParseNode) -> ParseNode:
        if n.is_leaf:
            return n
        fi, ai = roles(n)
        kids = list(n.children)
        fn, arg = kids[fi], kids[ai]
        if fn.meaning is None and arg.meaning is None:
            raise DerivationError("both children lack a meaning", n.span)
        if fn.meaning is None:
            res = inverse_l(n.meaning, arg.meaning)
            op, side = "Inverse_L", fi
        elif arg.meaning is None:
            res = inverse_r(n.meaning, fn.meaning)
            op, side = "Inverse_R", ai
        else:
            side = None
        if side is not None:
            if res.f is None:
                raise DerivationError(f"{op} found no meaning", kids[side].span)
            known = kids[ai if side == fi else fi].meaning
            self.trace.append(TraceStep(n.span, op, (n.meaning, known), res.f, res.case))
            kids[side] = replace(kids[side], meaning=res.f)
        return replace(n, children=tuple(self.down(k) for k in kids))


def _leaves(n: ParseNode):
    if n.is_leaf:
        yield n
    else:
        for k in n.children:
            yield from _leaves(k)


def _phrases(n: ParseNode):
    if not n.is_leaf:
        for k in n.children:
            yield from _phrases(k)
        yield n


def rederive(n: ParseNode, meanings: dict) -> Term:
    """Root meaning obtained by combining leaf meanings (keyed by span) bottom-up."""
    if n.is_leaf:
        return meanings[n.span]
    fi, ai = roles(n)
    return combine(rederive(n.children[fi], meanings), rederive(n.children[ai], meanings))


def infer_missing(tree: ParseNode, lexicon: list, meaning: Term | None = None,
                  keep_phrases: bool = False) -> DerivationResult:
    """Fill in the meanings of unknown leaves so that the tree derives ``meaning``."""
    run = _Run(list(lexicon))
    root = run.up(tree)
    if meaning is None:
        meaning = root.meaning
    if meaning is None:
        raise DerivationError("no meaning for the sentence", tree.span)
    if root.meaning is not None and not alpha_eq(root.meaning, meaning):
        raise DerivationError("known words derive a different sentence meaning", tree.span)
    root = run.down(replace(root, meaning=meaning))

    known = {leaf.span for leaf in _leaves(run.up(tree)) if leaf.meaning is not None}
    leaves = list(_leaves(root))
    if not alpha_eq(rederive(root, {x.span: x.meaning for x in leaves}), meaning):
        raise DerivationError("learned meanings do not re-derive the sentence", tree.span)
    learned = tuple(LexEntry(x.word, x.category, x.meaning) for x in leaves if x.span not in known)
    phrases = ()
    if keep_phrases:
        inner = [p for p in _phrases(root) if p is not root]
        phrases = tuple(LexEntry(" ".join(_words(p)), p.category, p.meaning) for p in inner)
    return DerivationResult(learned, tuple(run.trace), phrases)


def _words(n: ParseNode):
    return [leaf.word for leaf in _leaves(n)]


# -- spec documents ----------------------------------------------------------


@dataclass(frozen=True)
class DerivationSpec:
    words: tuple
    tree: ParseNode
    meaning: Term
    lexicon: tuple


def load_spec(doc: dict | str) -> DerivationSpec:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        tree = parse_tree(doc["tree"])
        meaning = parse_term(doc["meaning"])
        lexicon = tuple(
            LexEntry(word, parse_category(e["category"]) if e.get("category") else None,
                     parse_term(e["meaning"]) if e.get("meaning") else None)
            for word, e in doc.get("lexicon", {}).items())
    except KeyError as exc:
        raise DerivationError(f"derivation spec lacks {exc.args[0]!r}") from None
    words = tuple(doc.get("words") or _words(tree))
    if list(words) != _words(tree):
        raise DerivationError("word list does not match the tree leaves")
    return DerivationSpec(words, tree, meaning, lexicon)


def entries_document(entries) -> dict:
    return {e.word: {"category": str(e.category), "meaning": print_term(e.meaning)}
            for e in entries}
