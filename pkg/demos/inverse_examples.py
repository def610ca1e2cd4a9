"""Walk through five inverse problems, one per case family.

Run: python3 demos/inverse_examples.py
"""

from asplambda import apply, inverse_l, inverse_r, parse_term, print_term

PROBLEMS = [
    ("left", "bird(tweety).", r"\x.x",
     "G is the identity, so F just feeds H's content to its argument."),
    ("left", r"\u.(fly(X) <- u, not -fly(X).)", "fly(X)",
     "G occurs inside H; abstracting over it gives F."),
    ("left", r"\u.(bird(tweety), animal(tweety), penguin(rocky), animal(rocky), eats(tweety, u))",
     r"\v.\w.(v, animal(w))",
     "G's body matches two conjunct runs of H; each becomes an application of F's variable."),
    ("right", "love(mia, jon) <- love(jon, mia).", r"\w.(w@mia@jon <- w@jon@mia.)",
     "Lining G's body up against H shows what the hole must return for each argument list."),
    ("right", r"\v.(stay_at(room5) <- not goto_from(v, room5).)", r"\w.\v.(w@\u.goto_from(v, u))",
     "G passes an abstraction to its argument, so F must apply it wherever the pattern occurs."),
]


def main():
    for side, h_src, g_src, note in PROBLEMS:
        h, g = parse_term(h_src), parse_term(g_src)
        solve = inverse_l if side == "left" else inverse_r
        res = solve(h, g)
        print(f"H = {print_term(h)}")
        print(f"G = {print_term(g)}")
        print(f"   {note}")
        print(f"F = {print_term(res.f)}   [{res.case}]")
        back = apply(res.f, g) if side == "left" else apply(g, res.f)
        shown = "F@G" if side == "left" else "G@F"
        print(f"{shown} = {print_term(back)}\n")


if __name__ == "__main__":
    main()
