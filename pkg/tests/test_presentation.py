import json

import pytest

from diagroups.complex import CellRef
from diagroups.diagrams import identity, inverse, mult, reduce
from diagroups.fixtures import (abab_complex, ay_complex, dunce_hat, f_complex, f_generators, h_complex,
                                sphere_chain, v_complex)
from diagroups.presentation import (PresentationError, bracket_word, conj, edge_loop, evaluate,
                                    fmt_word, free_reduce, generator_diagram, minimal_presentation,
                                    verify_relations, wirtinger_presentation)
from diagroups.rewriting import RewritingError, view

G0 = CellRef(0, -1)

DUNCE_TEXT = """\
gen x0 = (x, f0^-1, 1)
gen x1 = (x, f0^-1, x)
rel x1^(x0^2) = x1^(x0 x1)
rel x1^(x0^3) = x1^(x0^2 x1)
"""

AY_RELATIONS = [
    "x2^(x0^2) = x2^(x0 x1)",
    "x2^(x0^3) = x2^(x0^2 x2)",
    "x2^(x0^3) = x2^(x0^2 x1)",
    "x2^(x0^4) = x2^(x0^3 x2)",
    "x2^(x0^4) = x2^(x0^3 x1)",
    "x2^(x0^5) = x2^(x0^4 x2)",
]


def rel_lines(pres):
    return [l[4:] for l in pres.text().splitlines() if l.startswith("rel ")]


def mu(K, p, max_len=None):
    """Number of essential 1-cubes at p, i.e. the minimal generator count."""
    return len(minimal_presentation(K, p, max_len).generators) if p else 0


def test_free_word_helpers():
    assert free_reduce(((0, 1), (1, 1), (1, -1), (0, -1))) == ()
    assert conj(((1, 1),), ((0, 1),)) == ((0, -1), (1, 1), (0, 1))
    names = ["x0", "x1"]
    assert fmt_word(((0, -1), (1, 1), (0, 1)), names) == "x1^(x0)"
    assert fmt_word(((0, 1), (0, 1), (1, -1)), names) == "x0^2 x1^-1"
    assert fmt_word((), names) == "1"


def test_dunce_presentation_text():
    pres = minimal_presentation(dunce_hat(), (0,))
    assert pres.exhaustive
    assert pres.text() == DUNCE_TEXT
    assert verify_relations(pres) == []


def test_h1_counts():
    pres = minimal_presentation(h_complex(1), (0,))
    assert (len(pres.generators), len(pres.relations)) == (6, 18)
    assert verify_relations(pres) == []


def test_ay_relations_match_families():
    A = ay_complex()
    pres = minimal_presentation(A, (0,), 4)
    assert not pres.exhaustive
    assert [(A.fmt(u), A.fmt(v)) for u, _, v in pres.generators] == [("a", "1"), ("a", "y"), ("a", "yy")]
    assert rel_lines(pres) == AY_RELATIONS
    assert pres.text().startswith("# truncated")
    assert verify_relations(pres) == []


@pytest.mark.parametrize("K,w,L", [
    (dunce_hat(), "x", None), (h_complex(1), "x", None), (h_complex(2), "x", None),
    (v_complex(), "yy", None), (f_complex(3), "x", None), (ay_complex(), "a", 4),
])
def test_relation_count_is_sum_of_mu(K, w, L):
    pres = minimal_presentation(K, K.word(w), L)
    assert len(pres.relations) == sum(mu(K, v, L) for _, _, v in pres.generators)


@pytest.mark.parametrize("K,w", [(v_complex(), "yy"), (h_complex(2), "x"), (f_complex(3), "x")])
def test_relations_hold_as_diagrams(K, w):
    assert verify_relations(minimal_presentation(K, K.word(w))) == []


def test_presentation_requires_nonempty_complete_input():
    with pytest.raises(PresentationError):
        minimal_presentation(dunce_hat(), ())
    with pytest.raises(RewritingError):
        minimal_presentation(abab_complex(), (0,))


def test_bracket_of_generator_is_itself():
    K = dunce_hat()
    word, gens = bracket_word(K, (0,), G0, ())
    assert word == ((0, 1),) and gens == [((0,), G0, ())]


def test_bracket_of_reducible_context_uses_normal_form():
    K = dunce_hat()
    a = bracket_word(K, (0, 0), G0, ())
    b = bracket_word(K, (0,), G0, ())
    assert a == b


def test_bracket_in_forest_is_trivial():
    K = dunce_hat()
    assert bracket_word(K, (), G0, ())[0] == ()


def test_bracket_conjugation_case():
    A = ay_complex()
    neg_f = view(A).negative(1)
    word, gens = bracket_word(A, (0,), neg_f, (1, 1, 1))
    names = {g: i for i, g in enumerate(gens)}
    x0, x2 = names[((0,), neg_f, ())], names[((0,), neg_f, (1, 1))]
    assert word == ((x0, -1), (x2, 1), (x0, 1))


def test_bracket_evaluates_to_edge_loop():
    """[u,f,v] read as a product of generator loops equals the loop through (u,f,v)."""
    K = dunce_hat()
    pres = minimal_presentation(K, (0,))
    ds = [generator_diagram(K, g) for g in pres.generators]
    e = identity(K, (0,))
    for u in ((0,), (0, 0)):
        for v in ((), (0,), (0, 0), (0, 0, 0)):
            word = bracket_word(K, u, G0, v, index=pres.index)
            assert evaluate(word, ds, e).steps == edge_loop(K, u, G0, v).steps


def test_generator_diagrams():
    K = dunce_hat()
    x0 = generator_diagram(K, ((0,), G0, ()))
    assert len(x0) == 4 and x0.is_spherical() and x0.top == (0,)
    assert x0.steps == f_generators()[0].steps
    assert reduce(mult(x0, inverse(x0))).steps == ()
    with pytest.raises(PresentationError):
        generator_diagram(K, ((), G0, ()))


def test_wirtinger_ay():
    A = ay_complex()
    pres = wirtinger_presentation(A, (0,), 8)
    assert [A.fmt(v) for _, _, v in pres.generators] == ["1", "y", "yy", "yyy", "yyyy"]
    assert rel_lines(pres) == ["x3 = x2^(x0)", "x4 = x3^(x1)", "x4 = x3^(x0)"]
    assert verify_relations(pres) == []


def test_wirtinger_circle_has_no_relations():
    pres = wirtinger_presentation(sphere_chain(1), (0,))
    assert len(pres.generators) == 1 and pres.relations == [] and pres.exhaustive


def test_wirtinger_dunce_truncated():
    pres = wirtinger_presentation(dunce_hat(), (0,), 4)
    assert not pres.exhaustive and len(pres.generators) == 2
    assert "# truncated" in pres.text()


def test_wirtinger_agrees_with_minimal_on_dunce():
    K = dunce_hat()
    w = wirtinger_presentation(K, (0,), 6)
    m = minimal_presentation(K, (0,))
    assert w.generators[:2] == m.generators


def test_json_output():
    data = json.loads(minimal_presentation(dunce_hat(), (0,)).as_json())
    assert data["exhaustive"] and data["kind"] == "minimal"
    assert [g["name"] for g in data["generators"]] == ["x0", "x1"]
    assert len(data["relations"]) == 2
    assert data["relations"][0]["lhs"][0] == ["x0", -1]
