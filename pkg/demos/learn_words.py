"""Learn the meanings of "most", "are" and "do not" from three sentences.

Each spec in demos/specs gives a CCG parse, the sentence's ASP meaning and a
seed lexicon.  The driver pushes meanings down the tree with the inverse
algorithms until the unknown word gets one.

Run: python3 demos/learn_words.py
"""

import json
from pathlib import Path

from asplambda import print_term
from asplambda.asp import answer_sets, format_answer_set, program_of
from asplambda.ccg import infer_missing, load_spec
from asplambda.syntax import parse_term

SPECS = Path(__file__).resolve().parent / "specs"


def main():
    rules = []
    for name in ("most_birds_fly.json", "penguins_are_birds.json", "penguins_do_not_fly.json"):
        spec = load_spec(json.loads((SPECS / name).read_text()))
        print(" ".join(spec.words), "=>", print_term(spec.meaning))
        res = infer_missing(spec.tree, spec.lexicon, spec.meaning)
        for step in res.trace:
            print("   ", step)
        for entry in res.learned:
            print(f"  learned {entry.word!r} : {entry.category} = {print_term(entry.meaning)}")
        rules.append(print_term(spec.meaning))
        print()

    # the sentences together form a small default theory
    facts = "bird(tweety). penguin(rocky)."
    program = program_of(parse_term(facts + " " + " ".join(rules)))
    print("with", facts)
    for s in answer_sets(program):
        print("answer set:", format_answer_set(s))


if __name__ == "__main__":
    main()
