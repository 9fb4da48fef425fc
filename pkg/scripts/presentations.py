"""Minimal and Wirtinger presentations for the built-in complexes, with
relation verification and the generator/relation counts."""

from diagroups.fixtures import ay_complex, dunce_hat, f_complex, h_complex, v_complex
from diagroups.presentation import minimal_presentation, verify_relations, wirtinger_presentation

CASES = [
    ("Dunce hat", dunce_hat, "x", None),
    ("H1", lambda: h_complex(1), "x", None),
    ("H2", lambda: h_complex(2), "x", None),
    ("V", v_complex, "yy", None),
    ("F_3", lambda: f_complex(3), "x", None),
    ("ay", ay_complex, "a", 4),
]


def main():
    for name, make, base, L in CASES:
        K = make()
        p = minimal_presentation(K, K.word(base), L)
        bad = verify_relations(p)
        tag = "" if p.exhaustive else " (truncated)"
        print(f"== {name} at {base}: {len(p.generators)} generators, "
              f"{len(p.relations)} relations, verified {not bad}{tag}")
        if len(p.relations) <= 6:
            print(p.text(), end="")
    K = ay_complex()
    w = wirtinger_presentation(K, K.word("a"), 8)
    print(f"== ay Wirtinger, words up to 8: {len(w.generators)} generators")
    print(w.text(), end="")


if __name__ == "__main__":
    main()
