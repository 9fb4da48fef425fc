from math import comb

import pytest

from diagroups.complex import CellRef
from diagroups.fixtures import dunce_hat, h_complex, sphere_chain, v_complex, ay_complex, abab_complex
from diagroups.rewriting import RewritingError, view
from diagroups.squier import (SquierError, all_cubes, census, census_csv, classify_cube, component,
                              cube, cube_faces, export_dot, left_forest, right_forest)

G0 = CellRef(0, -1)


def test_dunce_component_up_to_x5():
    K = dunce_hat()
    c = component(K, (0,), 5)
    assert set(c.vertices) == {(0,) * k for k in range(1, 6)}
    assert len(c.edges) == 10 and not c.exhaustive


def test_sphere_component_is_a_point():
    S = sphere_chain(2)
    c = component(S, (0, 1))
    assert c.vertices == ((0, 1),) and len(c.edges) == 2 and c.exhaustive


def test_empty_base_rejected():
    with pytest.raises(SquierError):
        component(dunce_hat(), ())


def test_dot_export():
    K = dunce_hat()
    dot = export_dot(component(K, (0,), 3))
    assert dot.count("[label=") == 6 and dot.count("->") == 3
    assert dot == export_dot(component(K, (0,), 3))
    single = export_dot(component(sphere_chain(1), (0,), 1))
    assert single.count("->") == 1 and single.count('n0 [label="x1"]') == 1


def test_top_face_of_one_cube():
    K = dunce_hat()
    c = cube([(0,), ()], [G0])
    assert cube_faces(K, c, 1, 0).words == ((0, 0),)
    assert cube_faces(K, c, 1, 1).words == ((0, 0, 0),)
    with pytest.raises(SquierError):
        cube_faces(K, c, 2, 0)


@pytest.mark.parametrize("K,w", [(h_complex(1), (0,)), (v_complex(), (0, 0)), (ay_complex(), (0,))])
def test_semicubical_identities(K, w):
    comp = component(K, w, 9, 400)
    for n in range(2, 4):
        cubes = all_cubes(comp, n)
        assert cubes
        for c in cubes:
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    for k in (0, 1):
                        for l in (0, 1):
                            lhs = cube_faces(K, cube_faces(K, c, j, l), i, k)
                            rhs = cube_faces(K, cube_faces(K, c, i, k), j - 1, l)
                            assert lhs == rhs


def test_forest_on_h_complexes():
    for n in range(4):
        K = h_complex(n)
        tl = left_forest(K)
        assert ((), G0) in tl
        assert ((0,), G0) not in tl
        for i in range(1, n + 1):
            assert ((), CellRef(i, -1)) not in tl and ((), CellRef(i, 1)) not in tl


def test_forest_on_v():
    V = v_complex()
    tl = left_forest(V)
    neg = view(V).negative(0)
    assert ((), neg) in tl and ((0,), neg) not in tl and ((0, 0), neg) not in tl


def test_forest_needs_completeness():
    with pytest.raises(RewritingError):
        left_forest(abab_complex())


@pytest.mark.parametrize("K,w", [(dunce_hat(), (0,)), (h_complex(1), (0,)), (v_complex(), (0, 0)),
                                 (ay_complex(), (0,))])
@pytest.mark.parametrize("kind", ["left", "right"])
def test_forest_is_spanning_and_acyclic(K, w, kind):
    comp = component(K, w, 6)
    rv = view(K)
    forest = left_forest(K) if kind == "left" else right_forest(K)
    edges = forest.edges_in(comp)
    heads = {}
    for u, f, v in edges:
        bot = u + K.bottom(f) + v
        assert bot not in heads, "two forest edges enter one vertex"
        heads[bot] = (u, f, v)
    root = rv.irr(w)
    for p in comp.vertices:
        if rv.reducible(p):
            assert heads[p] == forest.assigned(p)
        else:
            assert p == root and p not in heads
    # following assigned edges always reaches the irreducible vertex
    for p in comp.vertices:
        seen = set()
        while p in heads:
            assert p not in seen
            seen.add(p)
            u, f, v = heads[p]
            p = u + K.top(f) + v
        assert p == root
    assert len(edges) == len(comp.vertices) - 1


def test_dunce_classification_examples():
    K = dunce_hat()
    tl = left_forest(K)
    assert classify_cube(K, cube([(0,), ()], [G0]), tl).kind == "essential"
    col = classify_cube(K, cube([(), (0,)], [G0]), tl)
    assert col.kind == "collapsible" and col.partner.words == ((0, 0, 0),)
    red = classify_cube(K, cube([(0, 0), ()], [G0]), tl)
    assert red.kind == "redundant" and red.partner == cube([(), (), ()], [G0, G0])


@pytest.mark.parametrize("K,w", [(dunce_hat(), (0,)), (h_complex(1), (0,)), (v_complex(), (0, 0))])
def test_pairing_is_a_bijection(K, w):
    tl = left_forest(K)
    comp = component(K, w, 6)
    for n in range(0, 3):
        for c in all_cubes(comp, n):
            cls = classify_cube(K, c, tl)
            if cls.kind == "redundant":
                hat = cls.partner
                assert hat.dim == n + 1
                back = classify_cube(K, hat, tl)
                assert back.kind == "collapsible" and back.partner == c
            elif cls.kind == "collapsible":
                face = cls.partner
                again = classify_cube(K, face, tl)
                assert again.kind == "redundant" and again.partner == c


def test_essential_faces_stay_in_class():
    K = h_complex(1)
    rv = view(K)
    comp = component(K, (0,), 6)
    tl = left_forest(K)
    for n in range(1, 4):
        for c in all_cubes(comp, n):
            if classify_cube(K, c, tl).kind != "essential":
                continue
            face = c
            while face.dim:
                face = cube_faces(K, face, 1, 0)
                assert rv.irr(face.top(K)) == (0,)


@pytest.mark.parametrize("n", range(1, 6))
def test_torus_essential_counts(n):
    S = sphere_chain(n)
    comp = component(S, tuple(range(n)))
    tl = left_forest(S)
    for k in range(n + 1):
        cubes = all_cubes(comp, k)
        assert len(cubes) == comb(n, k)
        assert all(classify_cube(S, c, tl).kind == "essential" for c in cubes)


def test_census_csv():
    K = dunce_hat()
    counts = census(component(K, (0,), 5), left_forest(K), 2)
    text = census_csv(counts)
    assert text.splitlines()[0] == "dimension,class,count"
    assert counts[(0, "essential")] == 1 and counts[(1, "essential")] == 2
