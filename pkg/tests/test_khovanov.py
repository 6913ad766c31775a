import json

import pytest

from chronokh.complex import (chi_q, cone, deloop, flat_complex, gaussian_eliminate, identity_map, juxtapose,
                              simplify)
from chronokh.cube import PROJECTOR, build_complex
from chronokh.diagrams import BUILTINS, DiagramError, builtin, load_pd, parse_pd
from chronokh.homology import EVEN, MOD2, ODD, homology, mod2_dimensions, smith_normal_form
from chronokh.jones import jones_normalized
from chronokh.planar import identity_tangle, tl_generator
from khovanov_oracle import homology_even

TREFOIL_EVEN = {(0, 1): (1, ()), (0, 3): (1, ()), (2, 5): (1, ()), (3, 7): (0, (2,)), (3, 9): (1, ())}
TREFOIL_ODD = {(0, 1): (1, ()), (0, 3): (1, ()), (2, 5): (1, ()), (2, 7): (1, ()), (3, 7): (1, ()),
               (3, 9): (1, ())}
CLOSED = sorted(k for k in BUILTINS if k not in ("figure-eight", "torus3_3"))


def kh(name, spec=EVEN, simp=True):
    C = build_complex(builtin(name))
    return homology(simplify(C) if simp else C, spec).as_dict()


def test_trefoil_tables():
    assert kh("trefoil") == TREFOIL_EVEN
    assert kh("trefoil", ODD) == TREFOIL_ODD


def test_left_trefoil_is_mirror():
    # over Z torsion moves down one homological degree under mirroring
    got = kh("trefoil-left")
    assert {(h, q) for h, q in got} == {(0, -1), (0, -3), (-2, -5), (-2, -7), (-3, -9)}
    assert got[(-2, -7)] == (0, (2,))


def test_unknot_and_unlink():
    assert kh("unknot") == {(0, 1): (1, ()), (0, -1): (1, ())}
    assert kh("unlink2") == {(0, 2): (1, ()), (0, 0): (2, ()), (0, -2): (1, ())}


@pytest.mark.parametrize("name", CLOSED)
def test_even_matches_bruteforce_oracle(name):
    assert kh(name) == homology_even(builtin(name))


@pytest.mark.parametrize("name", ["trefoil", "figure8", "hopf", "kink2"])
def test_simplification_does_not_change_homology(name):
    for spec in (EVEN, ODD, MOD2):
        assert kh(name, spec) == kh(name, spec, simp=False)


@pytest.mark.parametrize("name", ["trefoil", "hopf", "figure8", "torus2_4"])
def test_mod2_from_even_and_odd_agree(name):
    m = {k: v for k, v in mod2_dimensions(homology(build_complex(builtin(name)), MOD2)).items() if v}
    for spec in (EVEN, ODD):
        H = homology(build_complex(builtin(name)), spec)
        dims = {}
        for (h, q), (free, tors) in H.as_dict().items():
            dims[(h, q)] = dims.get((h, q), 0) + free + sum(1 for t in tors if t % 2 == 0)
            for t in tors:
                if t % 2 == 0:
                    dims[(h - 1, q)] = dims.get((h - 1, q), 0) + 1
        assert {k: v for k, v in dims.items() if v} == m


@pytest.mark.parametrize("name", CLOSED)
def test_euler_characteristic_is_jones(name):
    d = builtin(name)
    got = {k: v for k, v in chi_q(build_complex(d)).items() if v}
    assert got == dict(jones_normalized(d))


def test_d_squared_zero_on_builtins():
    for name in CLOSED:
        assert build_complex(builtin(name)).d_squared_zero()


def test_framings_do_not_change_homology():
    d = builtin("figure8")
    flipped = d.with_framings(["reversed"] * d.c)
    for spec in (EVEN, ODD):
        a = homology(simplify(build_complex(d)), spec).as_dict()
        b = homology(simplify(build_complex(flipped)), spec).as_dict()
        assert a == b


def test_juxtaposed_unknots_give_unlink():
    u = build_complex(builtin("unknot"))
    assert homology(juxtapose(u, u), EVEN).as_dict() == kh("unlink2")


def test_cone_of_identity_is_contractible():
    C = build_complex(builtin("hopf"))
    K = simplify(cone(identity_map(C), C, C))
    assert len(K) == 0


def test_flat_complex_and_deloop():
    C = flat_complex(tl_generator(2, 1), h=1, q=3)
    assert C.summary() == [(1, "1-2 3-4", 3)]
    D = deloop(flat_complex(identity_tangle(0).__class__(0, (), 2)))
    assert sorted(q for _, _, q in D.summary()) == [-2, 0, 0, 2]


def test_projector_normalization_shift():
    d = builtin("hopf")
    a, b = build_complex(d), build_complex(d, PROJECTOR)
    assert [(h, q - (d.n_plus)) for h, _, q in a.summary()] == [(h, q) for h, _, q in b.summary()]


def test_gaussian_elimination_preserves_chi():
    C = deloop(build_complex(builtin("torus2_4")))
    assert chi_q(gaussian_eliminate(C)) == chi_q(C)


def test_smith_normal_form_small():
    s = smith_normal_form([[2, 4], [6, 8]])
    assert s.factors == [2, 4] and s.rank == 2
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0


def test_pd_file_round_trip(tmp_path):
    d = builtin("trefoil")
    p = tmp_path / "t.json"
    p.write_text(json.dumps(d.to_json()))
    assert homology(build_complex(load_pd(str(p))), EVEN).as_dict() == TREFOIL_EVEN


@pytest.mark.parametrize("bad", ["[]", "{", '{"crossings": [{"arcs": [1, 2, 3, 4]}]}',
                                 '{"crossings": [{"arcs": [1, 1, 2, 2], "sign": "?"}]}'])
def test_bad_pd_is_rejected(bad):
    with pytest.raises(DiagramError):
        parse_pd(bad)
