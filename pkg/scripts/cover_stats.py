"""Growth of the Dunce-hat universal cover per level, with the bounded
comparison between its Squier ball and reduced diagrams."""

import argparse
import time

from diagroups.cover import build_cover, diagram_ball, squier_ball, verify_rooted_tree
from diagroups.fixtures import dunce_hat


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, default=5)
    ap.add_argument("--check-level", type=int, default=3)
    a = ap.parse_args()
    K = dunce_hat()
    print("level,vertices,edges,cells,ball_vertices,ball_edges,diagrams,pairs,seconds")
    for n in range(a.levels + 1):
        t = time.perf_counter()
        cov = build_cover(K, (0,), n)
        verts, edges = squier_ball(cov, n)
        diagrams, pairs = diagram_ball(K, (0,), n)
        v, e, c = cov.counts()
        dt = time.perf_counter() - t
        print(f"{n},{v},{e},{c},{len(verts)},{edges},{len(diagrams)},{pairs},{dt:.2f}")
    rep = verify_rooted_tree(build_cover(K, (0,), a.check_level))
    print(f"# rooted-tree checks at level {a.check_level}: " + ", ".join(rep.lines()))


if __name__ == "__main__":
    main()
