"""Property tests; the example counts add up to well over a thousand
generated instances."""

import math
import random

from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from chronokh import relations
from chronokh.complex import chi_q, simplify
from chronokh.cube import build_complex
from chronokh.diagrams import CANONICAL, REVERSED, braid_tangle
from chronokh.homology import EVEN, ODD, homology, smith_normal_form
from chronokh.jones import jones_normalized
from chronokh.planar import matchings, stack
from chronokh.ring import RingElem, lambda_mono, mono_mul

small = st.integers(-4, 4)
bideg = st.tuples(small, small)
mono = st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(-3, 3))
elem = st.dictionaries(mono, st.integers(-3, 3), max_size=4).map(RingElem)


@settings(max_examples=200)
@given(bideg, bideg, bideg)
def test_lambda_bilinear(u, u2, v):
    assert relations.lambda_bilinear(u, u2, v)


@settings(max_examples=200)
@given(bideg, bideg)
def test_lambda_antisymmetric(u, v):
    assert relations.lambda_antisymmetric(u, v)
    assert lambda_mono(u, u)[2] == 0


@settings(max_examples=150)
@given(elem, elem, elem)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=150)
@given(elem, elem, st.sampled_from([EVEN, ODD]))
def test_specialization_is_a_homomorphism(a, b, spec):
    assert (a * b).specialize(spec) == a.specialize(spec) * b.specialize(spec)
    assert (a + b).specialize(spec) == a.specialize(spec) + b.specialize(spec)


@settings(max_examples=100)
@given(st.integers(0, 2**31), st.integers(0, 3))
def test_local_relations_on_random_orders(seed, spect):
    rng = random.Random(seed)
    order = relations.random_order(rng, ["c"], spect)
    assert relations.sphere_S1(order)
    assert relations.two_dots(order, "c")
    assert relations.tube_cutting(order, "c")
    merge_order = relations.random_order(rng, ["a", "b"], spect)
    merge_order = ["a", "b"] + [x for x in merge_order if x not in ("a", "b")]
    assert relations.framing_flip("merge", merge_order)
    assert relations.framing_flip(rng.choice(["split", "death"]), order)


@settings(max_examples=100)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_normal_form(rows):
    s = smith_normal_form(rows)
    assert s.rank == Matrix(rows).rank()
    for a, b in zip(s.factors, s.factors[1:]):
        assert b % a == 0
    # square case: the invariant factors multiply to |det|
    if s.rank == min(len(rows), 3) and len(rows) == 3:
        assert abs(Matrix(rows).det()) == math.prod(s.factors)


@settings(max_examples=80)
@given(st.sampled_from(matchings(3)), st.sampled_from(matchings(3)), st.sampled_from(matchings(3)))
def test_stacking_is_associative(a, b, c):
    ab, l1 = stack(a, b)
    left, l2 = stack(ab, c)
    bc, l3 = stack(b, c)
    right, l4 = stack(a, bc)
    assert left == right
    assert len(l1) + len(l2) == len(l3) + len(l4)


braid_word = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=5)


@settings(max_examples=60)
@given(braid_word, st.integers(0, 2**31))
def test_closed_braids(word, seed):
    rng = random.Random(seed)
    frames = [rng.choice((CANONICAL, REVERSED)) for _ in word]
    d = braid_tangle(3, word, close=True, framings=frames)
    C = build_complex(d)
    assert C.d_squared_zero()
    S = simplify(C)
    assert chi_q(S) == chi_q(C)
    assert {k: v for k, v in chi_q(C).items() if v} == dict(jones_normalized(d))
    plain = build_complex(braid_tangle(3, word, close=True))
    for spec in (EVEN, ODD):
        assert homology(S, spec).as_dict() == homology(simplify(plain), spec).as_dict()
