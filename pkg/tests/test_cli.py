import io
import json
import subprocess
import sys
from contextlib import redirect_stdout
from pathlib import Path

import pytest
from hypothesis import given, settings

from asplambda.cli import main

from asplambda.syntax import parse_term, print_term
from asplambda.terms import alpha_eq
from test_syntax import formulas

SPECS = Path(__file__).resolve().parent.parent / "demos" / "specs"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGolden:
    def test_invl_identity_argument(self, capsys):
        code, out, _ = run(capsys, "invl", "bird(tweety).", r"\x.x")
        assert (code, out) == (0, "\\v.(v@bird(tweety).)\n")

    def test_order(self, capsys):
        assert run(capsys, "order", "(e -> t)")[:2] == (0, "1\n")

    def test_invr_null(self, capsys):
        code, out, err = run(capsys, "invr", "bird(tweety).", r"\x.fly(x)")
        assert (code, out) == (1, "null\n")
        assert err

    def test_parse(self, capsys):
        assert run(capsys, "parse", r"\x.(x@X<-bird(X),not -x@X.)")[1] == "\\x.(x@X <- bird(X), not -x@X.)\n"

    def test_type(self, capsys):
        assert run(capsys, "type", r"\v.(v or -v <- .)")[1] == "(a -> t)\n"

    def test_normalize(self, capsys):
        assert run(capsys, "normalize", r"(\x.x)@bird(tweety)")[1] == "bird(tweety)\n"

    def test_apply(self, capsys):
        code, out, _ = run(capsys, "apply", r"\v.\x.(x@X <- v@X, not -x@X.)", r"\x.bird(x)")
        assert out == "\\x.(x@X <- bird(X), not -x@X.)\n"

    def test_invr_relation_argument(self, capsys):
        code, out, _ = run(capsys, "invr", "love(mia, jon) <- love(jon, mia).",
                           r"\w.(w@mia@jon <- w@jon@mia.)")
        assert (code, out) == (0, "\\v1.\\v2.love(v1, v2)\n")

    def test_answersets(self, capsys, tmp_path):
        f = tmp_path / "even.lp"
        f.write_text("p <- not q.\nq <- not p.\n")
        assert run(capsys, "answersets", str(f))[:2] == (0, "{p}\n{q}\n")

    def test_answersets_none(self, capsys, tmp_path):
        f = tmp_path / "odd.lp"
        f.write_text("p <- not p.")
        assert run(capsys, "answersets", str(f))[:2] == (1, "")

    def test_derive(self, capsys):
        code, out, _ = run(capsys, "derive", str(SPECS / "most_birds_fly.json"), "--trace")
        assert code == 0
        assert '"Most"' in out and "Inverse_L" in out

    def test_oracle_check(self, capsys):
        code, out, _ = run(capsys, "oracle-check", "bird(tweety).", r"\x.x", "--depth", "5")
        assert code == 0
        assert out.strip().endswith("agreed")


class TestErrors:
    def test_parse_error(self, capsys):
        code, out, err = run(capsys, "parse", "p(a")
        assert (code, out) == (3, "")
        assert err.startswith("asplambda: 1:4:")

    def test_type_error(self, capsys):
        assert run(capsys, "type", r"\y.\x.(y or not x@X.)")[0] == 3

    def test_inverse_precondition(self, capsys):
        assert run(capsys, "invl", r"\v.u", r"\x.x")[0] == 3

    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "parse", "@/nonexistent/file")
        assert code == 2 and "cannot read" in err

    def test_bad_type_text(self, capsys):
        assert run(capsys, "order", "e ->")[0] == 3


class TestJson:
    def test_success(self, capsys):
        code, out, _ = run(capsys, "invl", "bird(tweety).", r"\x.x", "--json")
        doc = json.loads(out)
        assert doc == {"v": 1, "ok": True, "result": "\\v.(v@bird(tweety).)", "case": "L1",
                       "diagnostics": []}

    def test_null(self, capsys):
        doc = json.loads(run(capsys, "invr", "bird(tweety).", r"\x.fly(x)", "--json")[1])
        assert doc["ok"] is False and doc["result"] is None and doc["diagnostics"]

    def test_error(self, capsys):
        doc = json.loads(run(capsys, "parse", "p(a", "--json")[1])
        assert doc["ok"] is False and doc["diagnostics"]

    def test_lossless(self, capsys, tmp_path):
        f = tmp_path / "p.lp"
        f.write_text("a or b.")
        doc = json.loads(run(capsys, "answersets", str(f), "--json")[1])
        assert json.loads(json.dumps(doc)) == doc
        assert doc["result"] == ["{a}", "{b}"]

    def test_derive(self, capsys):
        doc = json.loads(run(capsys, "derive", str(SPECS / "penguins_are_birds.json"), "--json")[1])
        learned = parse_term(doc["result"]["learned"]["are"]["meaning"])
        assert alpha_eq(learned, parse_term(r"\v.\x.(x@X <- v@X.)"))


def test_file_indirection(capsys, tmp_path):
    f = tmp_path / "h.txt"
    f.write_text("bird(tweety).")
    assert run(capsys, "invl", f"@{f}", r"\x.x")[1] == "\\v.(v@bird(tweety).)\n"


@settings(max_examples=100, deadline=None)
@given(formulas)
def test_parse_output_is_a_fixed_point(t):
    once = io.StringIO()
    with redirect_stdout(once):
        assert main(["parse", "--", print_term(t)]) == 0
    twice = io.StringIO()
    with redirect_stdout(twice):
        main(["parse", "--", once.getvalue().strip()])
    assert once.getvalue() == twice.getvalue()


def test_console_script_and_stdin():
    proc = subprocess.run([sys.executable, "-m", "asplambda.cli", "answersets", "-"],
                          input="bird(tweety). fly(X) <- bird(X), not -fly(X).",
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "{bird(tweety), fly(tweety)}\n"


def test_leading_minus_needs_separator(capsys):
    assert run(capsys, "parse", "--", "-p.")[:2] == (0, "-p.\n")
