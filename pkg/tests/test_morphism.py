import random

import pytest

from diagroups.complex import CellRef
from diagroups.diagrams import Diagram, atomic, canonical, concat, identity, is_reduced, reduce
from diagroups.fixtures import (FIXTURES, dunce_hat, gamma_morphism, h2_to_h1, h_complex,
                                h_infinity_to_h2, sphere_chain)
from diagroups.io import parse_morphism
from diagroups.morphism import MorphismError, identity_morphism, substitute, validate_morphism

from conftest import FIXTURES as FIXTURE_DIR, all_step_sequences, random_diagram


def test_gamma_validates():
    m = gamma_morphism()
    assert m.emap[0] == (0,) * 4
    assert [len(d) for d in m.cmap] == [6, 2]


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_identity_validates(name):
    K = FIXTURES[name]()
    identity_morphism(K)


def test_loop_to_open_path_violates_m1():
    S = sphere_chain(2)
    K = dunce_hat()
    with pytest.raises(MorphismError, match="M1"):
        validate_morphism(K, S, {"v": "v0"}, {"x": "x1 x2"},
                          {"f0": identity(S, (0, 1))})


def test_wrong_cell_image_violates_m2():
    K = dunce_hat()
    with pytest.raises(MorphismError, match="M2"):
        validate_morphism(K, K, None, {"x": "x"}, {"f0": identity(K, (0, 0))})


def test_missing_assignment():
    K = dunce_hat()
    with pytest.raises(MorphismError, match="missing"):
        validate_morphism(K, K, None, {"x": "x"}, {})


def test_identity_substitution_is_canonical(rng):
    K = h_complex(1)
    m = identity_morphism(K)
    for _ in range(30):
        d = random_diagram(K, (0,), 5, rng)
        assert substitute(d, m).steps == canonical(d).steps


def test_truncated_h_infinity_map_sizes():
    m = h_infinity_to_h2(3)
    src = m.src
    sizes = [len(substitute(atomic(src, (), CellRef(i, 1), ()), m)) for i in range(1, 4)]
    assert sizes == [3, 5, 7]
    img = substitute(atomic(src, (), CellRef(1, 1), ()), m)
    assert [s.cell.cell for s in img.steps] == [1, 2, 1]


def test_substitute_is_functorial(rng):
    m = gamma_morphism()
    K = m.src
    for _ in range(30):
        d1 = random_diagram(K, (0,), 3, rng, max_len=4)
        d2 = random_diagram(K, d1.bottom, 3, rng, max_len=4)
        lhs = substitute(concat(d1, d2), m)
        rhs = concat(substitute(d1, m), substitute(d2, m))
        assert lhs.steps == rhs.steps


def _spherical_h2(max_cells=4):
    H2 = h_complex(2)
    out = {}
    for seq in all_step_sequences(H2, (0,), max_cells, 4):
        d = Diagram(H2, (0,), seq)
        if d.is_spherical():
            r = reduce(d)
            if r.steps:
                out.setdefault(r.steps, r)
    return [out[k] for k in sorted(out)]


def test_psi_is_nonsingular_on_samples():
    m = h2_to_h1()
    pool = _spherical_h2()
    sample = random.Random(3).sample(pool, min(20, len(pool)))
    assert len(sample) == 20
    for d in sample:
        assert is_reduced(d)
        assert len(reduce(substitute(d, m))) > 0


def test_morphism_file_round_trip():
    K, H1 = dunce_hat(), h_complex(1)
    text = (FIXTURE_DIR / "dunce_into_h1.morph").read_text()
    m = parse_morphism(K, H1, text)
    assert m.cmap[0].steps == atomic(H1, (), CellRef(0, 1), ()).steps
