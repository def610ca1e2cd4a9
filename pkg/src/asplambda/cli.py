"""``asplambda`` command-line front end.

Exit codes: 0 success, 1 null result, 2 usage error, 3 parse or type error.
Arguments of the form ``@path`` are replaced by the file's contents.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import asp, ccg, oracle
from .inverse import InverseInputError, inverse_l, inverse_r
from .reduction import apply, normalize
from .syntax import ParseError, parse_term, parse_type, print_term, print_type
from .terms import App, Atom, Const, FuncApp, Var, children, order
from .typecheck import TypeCheckError, hole_type, infer

SCHEMA_VERSION = 1
OK, NULL, USAGE, INVALID = 0, 1, 2, 3


class _Outcome(Exception):
    def __init__(self, code: int, result=None, case=None, diagnostics=(), text=None):
        self.code, self.result, self.case = code, result, case
        self.diagnostics = list(diagnostics)
        self.text = text


def _text(arg: str) -> str:
    if arg.startswith("@"):
        try:
            return Path(arg[1:]).read_text()
        except OSError as exc:
            raise _Outcome(USAGE, diagnostics=[f"cannot read {arg[1:]}: {exc.strerror}"])
    return arg


def _term(arg: str):
    return parse_term(_text(arg))


# -- commands ----------------------------------------------------------------


def cmd_parse(a):
    t = print_term(_term(a.formula))
    return _Outcome(OK, t)


def cmd_type(a):
    return _Outcome(OK, print_type(infer(_term(a.formula)).type))


def cmd_normalize(a):
    return _Outcome(OK, print_term(normalize(_term(a.formula))))


def cmd_apply(a):
    return _Outcome(OK, print_term(apply(_term(a.f), _term(a.g))))


def _inverse(fn, a):
    res = fn(_term(a.h), _term(a.g))
    if res.f is None:
        return _Outcome(NULL, None, None, ["no inverse found"], text="null")
    return _Outcome(OK, print_term(res.f), res.case)


def cmd_invl(a):
    return _inverse(inverse_l, a)


def cmd_invr(a):
    return _inverse(inverse_r, a)


def cmd_order(a):
    return _Outcome(OK, order(parse_type(_text(a.type))))


def cmd_answersets(a):
    src = sys.stdin.read() if a.file == "-" else _text(a.file if a.file.startswith("@") else "@" + a.file)
    program = asp.program_of(parse_term(src))
    sets = sorted(asp.format_answer_set(s) for s in asp.answer_sets(program, a.depth))
    if not sets:
        return _Outcome(NULL, [], diagnostics=["no answer sets"], text="")
    return _Outcome(OK, sets, text="\n".join(sets))


def cmd_derive(a):
    path = a.spec[1:] if a.spec.startswith("@") else a.spec
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise _Outcome(USAGE, diagnostics=[f"cannot read {path}: {exc.strerror}"])
    except json.JSONDecodeError as exc:
        raise _Outcome(INVALID, diagnostics=[f"{path}: {exc}"])
    spec = ccg.load_spec(doc)
    try:
        res = ccg.infer_missing(spec.tree, spec.lexicon, spec.meaning, keep_phrases=a.phrases)
    except ccg.DerivationError as exc:
        return _Outcome(NULL, None, diagnostics=[str(exc)], text="null")
    result = {"learned": ccg.entries_document(res.learned),
              "trace": [str(step) for step in res.trace]}
    if a.phrases:
        result["phrases"] = ccg.entries_document(res.phrases)
    lines = [json.dumps(result["learned"], indent=2, ensure_ascii=False)]
    if a.trace:
        lines += result["trace"]
    return _Outcome(OK, result, text="\n".join(lines))


def _signature(*terms) -> oracle.Signature:
    preds, consts, funcs = {}, set(), {}

    def scan(t):
        match t:
            case Atom(p, args):
                preds[p] = len(args)
            case FuncApp(f, args):
                funcs[f] = len(args)
            case Const(name):
                consts.add(name)
        for kid in children(t):
            scan(kid)

    for t in terms:
        scan(t)
    return oracle.Signature.of(preds, consts, funcs)


def cmd_oracle_check(a):
    h, g = _term(a.h), _term(a.g)
    hole = "_F"
    if a.side == "l":
        target = hole_type(_app(hole, g, first=True), hole, infer(h).type)
    else:
        target = hole_type(_app(hole, g, first=False), hole, infer(h).type)
    budget = oracle.EnumBudget(a.depth, a.abstractors, _signature(h, g), target,
                               a.width, a.rules)
    find = oracle.oracle_inverse_l if a.side == "l" else oracle.oracle_inverse_r
    found = find(h, g, budget)
    res = (inverse_l if a.side == "l" else inverse_r)(h, g)
    agreed = not found or res.f is not None
    result = {"target": print_type(target), "oracle": [print_term(f) for f in found],
              "algorithm": print_term(res.f) if res.f is not None else None,
              "agreed": agreed}
    lines = [f"target type: {result['target']}", f"oracle: {len(found)} formula(s)"]
    lines += [f"  {x}" for x in result["oracle"]]
    lines.append(f"algorithm: {result['algorithm'] or 'null'}"
                 + (f" [{res.case}]" if res.case else ""))
    lines.append("agreed" if agreed else "DISAGREED")
    return _Outcome(OK if agreed else NULL, result, res.case,
                    [] if agreed else ["oracle found an inverse the algorithm missed"],
                    text="\n".join(lines))


def _app(hole, g, first):
    return App(Var(hole), g) if first else App(g, Var(hole))


# -- driver ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="asplambda", description="Typed ASP lambda calculus and inverse lambda tools.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, *positional):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for arg, h in positional:
            sp.add_argument(arg, help=h)
        sp.set_defaults(run=fn)
        return sp

    add("parse", cmd_parse, "print the canonical form", ("formula", "term or @file"))
    add("type", cmd_type, "print the inferred type", ("formula", "term or @file"))
    add("normalize", cmd_normalize, "print the beta-normal form", ("formula", "term or @file"))
    add("apply", cmd_apply, "print the normal form of F@G", ("f", "function"), ("g", "argument"))
    add("invl", cmd_invl, "find F with F@G = H", ("h", "result H"), ("g", "argument G"))
    add("invr", cmd_invr, "find F with G@F = H", ("h", "result H"), ("g", "function G"))
    add("order", cmd_order, "print the order of a type", ("type", "type text"))
    sp = add("answersets", cmd_answersets, "print the answer sets of a program",
             ("file", "program file, or - for stdin"))
    sp.add_argument("--depth", type=int, default=0, help="function nesting for grounding")
    sp = add("derive", cmd_derive, "learn missing word meanings", ("spec", "derivation spec JSON"))
    sp.add_argument("--trace", action="store_true", help="also print the trace")
    sp.add_argument("--phrases", action="store_true", help="also report phrase meanings")
    sp = add("oracle-check", cmd_oracle_check, "compare an inverse with brute force",
             ("h", "result H"), ("g", "known formula G"))
    sp.add_argument("--side", choices=("l", "r"), default="l")
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--width", type=int, default=2, help="items per or / conjunction")
    sp.add_argument("--rules", type=int, default=2, help="rules per program")
    sp.add_argument("--abstractors", type=int, default=3)
    return p


def _render(result) -> str:
    if isinstance(result, list):
        return "\n".join(map(str, result))
    return str(result)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.run(args)
    except _Outcome as exc:
        out = exc
    except (ParseError, TypeCheckError, InverseInputError, asp.AspError,
            ccg.DerivationError) as exc:
        out = _Outcome(INVALID, diagnostics=[str(exc)])
    except ValueError as exc:
        out = _Outcome(USAGE, diagnostics=[str(exc)])
    for line in out.diagnostics:
        print(f"asplambda: {line}", file=sys.stderr)
    if args.json:
        doc = {"v": SCHEMA_VERSION, "ok": out.code == OK, "result": out.result,
               "case": out.case, "diagnostics": out.diagnostics}
        print(json.dumps(doc, ensure_ascii=False))
    elif out.text is not None:
        if out.text:
            print(out.text)
    elif out.result is not None:
        print(_render(out.result))
    return out.code


if __name__ == "__main__":
    sys.exit(main())
