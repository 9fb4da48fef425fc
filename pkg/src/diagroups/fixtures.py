"""Standard small complexes and morphisms used by tests, scripts and the CLI."""

from __future__ import annotations

from .complex import Cell, CellRef, DirectedComplex, Edge, from_presentation
from .diagrams import Diagram, Step, diagram
from .morphism import Morphism, validate_morphism


def dunce_hat() -> DirectedComplex:
    """<x | x^2 = x>."""
    return from_presentation(["x"], [("f0", "xx", "x")])


def h_complex(n: int) -> DirectedComplex:
    """<x | x^2 = x, x = x (n times)>: the Dunce hat with n spheres attached."""
    rules = [("f0", "xx", "x")] + [(f"f{i}", "x", "x") for i in range(1, n + 1)]
    return from_presentation(["x"], rules)


def f_complex(r: int) -> DirectedComplex:
    """<x | x^r = x>."""
    return from_presentation(["x"], [("f0", "x" * r, "x")])


def v_complex() -> DirectedComplex:
    """<y | y^3 = y^2>."""
    return from_presentation(["y"], [("f", "yyy", "yy")])


def ay_complex() -> DirectedComplex:
    """<a, y | ay = a, y^3 = y^2>."""
    return from_presentation(["a", "y"], [("g", "ay", "a"), ("f", "yyy", "yy")])


def abab_complex() -> DirectedComplex:
    """<a, b | ab = a, ba = b>: terminating but not confluent."""
    return from_presentation(["a", "b"], [("fa", "ab", "a"), ("fb", "ba", "b")])


def commutation_complex() -> DirectedComplex:
    """<a, b | ab = ba>."""
    return from_presentation(["a", "b"], [("c", "ab", "ba")])


def sphere_chain(n: int) -> DirectedComplex:
    """A simple path x1...xn with a sphere xi = xi on every edge."""
    vertices = [f"v{i}" for i in range(n + 1)]
    edges = [Edge(f"x{i}", i - 1, i) for i in range(1, n + 1)]
    cells = [Cell(f"s{i}", (i - 1,), (i - 1,)) for i in range(1, n + 1)]
    return DirectedComplex(vertices, edges, cells)


def sphere_bouquet(k: int) -> DirectedComplex:
    """One non-loop edge x with k sphere cells x = x."""
    return DirectedComplex(["u", "v"], [Edge("x", 0, 1)],
                           [Cell(f"s{i}", (0,), (0,)) for i in range(1, k + 1)])


def _x(K, n):
    return (K.edge_index["x"],) * n


def f_generators(K: DirectedComplex | None = None):
    """The loops x0 = (x, f0^-1, 1) and x1 = (x, f0^-1, x) generating D(H_n, x)."""
    from .presentation import generator_diagram
    K = K or dunce_hat()
    g0 = CellRef(K.cell_index["f0"], -1)
    return tuple(generator_diagram(K, (_x(K, 1), g0, v)) for v in ((), _x(K, 1)))


def gamma_morphism() -> Morphism:
    """H1 -> V with x -> y^4."""
    H1, V = h_complex(1), v_complex()
    f = CellRef(0, 1)
    y = lambda n: (0,) * n

    def p(i, j, sign=1):
        return (i, CellRef(0, sign))

    alpha = diagram(V, y(8), [p(3, 3, -1), p(1, 5), p(4, 1), p(0, 4), p(3, 0), p(1, 1)])
    beta = diagram(V, y(4), [p(0, 1), p(1, 0, -1)])
    return validate_morphism(H1, V, None, {"x": y(4)}, {"f0": alpha, "f1": beta})


def h_infinity_to_h2(n: int) -> Morphism:
    """Truncation H_n -> H_2 of the map f_i -> f1^i f2 f1^i."""
    src, dst = h_complex(n), h_complex(2)
    f1, f2 = CellRef(1, 1), CellRef(2, 1)
    cmap = {"f0": diagram(dst, (0, 0), [(0, CellRef(0, 1))])}
    for i in range(1, n + 1):
        cmap[f"f{i}"] = diagram(dst, (0,), [(0, f1)] * i + [(0, f2)] + [(0, f1)] * i)
    return validate_morphism(src, dst, None, {"x": (0,)}, cmap)


def h2_to_h1(a: Diagram | None = None) -> Morphism:
    """H2 -> H1 with f1 -> f1 a f1, f2 -> f1^2 a f1^2."""
    src, dst = h_complex(2), h_complex(1)
    if a is None:
        a = f_generators(dst)[0]
    f1 = Step(0, CellRef(1, 1))
    A = a.steps
    cmap = {
        "f0": diagram(dst, (0, 0), [(0, CellRef(0, 1))]),
        "f1": Diagram(dst, (0,), (f1,) + A + (f1,)),
        "f2": Diagram(dst, (0,), (f1, f1) + A + (f1, f1)),
    }
    return validate_morphism(src, dst, None, {"x": (0,)}, cmap)


FIXTURES = {
    "dunce": dunce_hat,
    "h1": lambda: h_complex(1),
    "h2": lambda: h_complex(2),
    "v": v_complex,
    "ay": ay_complex,
    "abab": abab_complex,
}
