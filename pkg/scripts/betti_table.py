"""Print Betti numbers and Poincare series for the built-in complexes."""

import argparse

from diagroups.fixtures import dunce_hat, f_complex, h_complex, sphere_chain, v_complex
from diagroups.homology import betti_numbers, geometric_dimension, poincare_series

CASES = [
    ("F (Dunce hat)", dunce_hat, "x"),
    ("F_3", lambda: f_complex(3), "x"),
    ("F_4", lambda: f_complex(4), "x"),
    ("V", v_complex, "yy"),
    ("H0", lambda: h_complex(0), "x"),
    ("H1", lambda: h_complex(1), "x"),
    ("H2", lambda: h_complex(2), "x"),
    ("S3", lambda: sphere_chain(3), "x1 x2 x3"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-dim", type=int, default=6)
    a = ap.parse_args()
    for name, make, base in CASES:
        K = make()
        w = K.word(base)
        r = betti_numbers(K, w, a.max_dim)
        dim, _ = geometric_dimension(K, w)
        print(f"{name:<14} base {base:<9} r: {' '.join(map(str, r)):<30} "
              f"series {poincare_series(K, w)}  dim {dim}")


if __name__ == "__main__":
    main()
