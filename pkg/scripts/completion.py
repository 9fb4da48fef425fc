"""Complete <a,b | ab=a, ba=b> by the retract construction and compare
low-dimensional Betti numbers of the completion at several bases."""

from diagroups.fixtures import abab_complex
from diagroups.homology import betti_numbers
from diagroups.rewriting import complete_by_retract, confluence_check, noetherian_certificate


def main():
    K = abab_complex()
    print("input:", confluence_check(K))
    C = complete_by_retract(K, 6, 64)
    print(f"completion: {len(C.cells)} cells, certificate {noetherian_certificate(C).verdict}, "
          f"{confluence_check(C)}")
    for base in ("a", "b", "ab", "ba", "aa"):
        print(f"  base {base:<3} r: {betti_numbers(C, C.word(base), 2)}")


if __name__ == "__main__":
    main()
