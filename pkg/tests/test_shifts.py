from chronokh.ring import BiDegree, lambda_mono
from chronokh.shifts import WeightedShift, compose_shifts, cut_tubes, mirror_shift
from chronokh.tqft import birth, death, merge, split


def test_identity_composition():
    a = WeightedShift((), BiDegree(1, 2))
    b = WeightedShift((), BiDegree(-1, 0))
    s, gamma = compose_shifts(a, b)
    assert s.v == BiDegree(0, 2) and gamma == (0, 0, 0)


def test_split_against_its_mirror():
    s = WeightedShift((split("c", "x", "y"),), BiDegree(2, -1))
    m = mirror_shift(s)
    comp, gamma = compose_shifts(s, m)
    assert comp.events == ()
    assert comp.v == BiDegree(0, 0)
    assert gamma == lambda_mono(m.degree, s.v)


def test_tubes_are_counted():
    evs = (merge("a", "b", "c"), split("c", "x", "y"), birth("o"))
    rest, tubes = cut_tubes(evs)
    assert tubes == 1 and len(rest) == 1


def test_degree_sum():
    s = WeightedShift((split("c", "x", "y"), death("x")), BiDegree(0, 0))
    assert s.degree == split("c", "x", "y").degree + death("x").degree
