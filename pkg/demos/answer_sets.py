"""Reducts and answer sets of a few classic programs.

Run: python3 demos/answer_sets.py
"""

from asplambda.asp import answer_sets, format_answer_set, ground, program_of, reduct
from asplambda.syntax import parse_term

PROGRAMS = {
    "even loop": "p <- not q. q <- not p.",
    "odd loop": "p <- not p.",
    "default with exception": "bird(tweety). bird(rocky). penguin(rocky). "
                              "fly(X) <- bird(X), not -fly(X). -fly(X) <- penguin(X).",
    "disjunction": "a or b. c <- a.",
}


def main():
    for label, src in PROGRAMS.items():
        program = ground(program_of(parse_term(src)))
        sets = answer_sets(program)
        print(f"{label}:")
        print("  " + str(program).replace("\n", "\n  "))
        if not sets:
            print("  no answer sets")
        for s in sorted(sets, key=format_answer_set):
            print("  answer set", format_answer_set(s))
            print("    reduct:", " ".join(str(r) for r in reduct(program, s).rules))
        print()


if __name__ == "__main__":
    main()
