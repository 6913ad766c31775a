import sympy

from chronokh.diagrams import builtin
from chronokh.jones import (LaurentPoly, check_jw_kills_turnbacks, expand_at_infinity, jones_normalized,
                            jw_expansion, kauffman_bracket, q, quantum_integer, tl_jones_wenzl, tl_trace)
from chronokh.planar import identity_tangle


def test_quantum_integers():
    assert quantum_integer(1) == LaurentPoly({0: 1})
    assert quantum_integer(3) == LaurentPoly({-2: 1, 0: 1, 2: 1})


def test_laurent_arithmetic_against_sympy():
    a = LaurentPoly({-1: 2, 3: -1})
    b = LaurentPoly({0: 1, 1: 5})
    assert sympy.expand((a * b).to_sympy() - a.to_sympy() * b.to_sympy()) == 0
    assert sympy.expand((a - b).to_sympy() - (a.to_sympy() - b.to_sympy())) == 0
    assert (a ** 2).to_sympy().equals(a.to_sympy() ** 2)


def test_bracket_of_unknot_and_hopf():
    assert kauffman_bracket(builtin("unknot")) == LaurentPoly({1: 1, -1: 1})
    assert jones_normalized(builtin("hopf")) == LaurentPoly({0: 1, 2: 1, 4: 1, 6: 1})


def test_kinks_change_only_normalization():
    assert jones_normalized(builtin("kink+")) == jones_normalized(builtin("unknot"))
    assert jones_normalized(builtin("kink-")) == jones_normalized(builtin("unknot"))


def test_jones_wenzl_traces():
    for n in range(1, 5):
        tr = tl_trace(n, tl_jones_wenzl(n))
        assert sympy.simplify(tr - quantum_integer(n + 1).to_sympy()) == 0


def test_jones_wenzl_kills_turnbacks():
    for n in (2, 3, 4):
        assert check_jw_kills_turnbacks(n)


def test_p2_expansion():
    exp = jw_expansion(2, -9)
    ident = identity_tangle(2).partner
    assert exp[ident] == LaurentPoly({0: 1})
    # -1/[2] = -(q^-1 - q^-3 + q^-5 - ...)
    cup = [k for k in exp if k != ident][0]
    assert exp[cup] == LaurentPoly({-1: -1, -3: 1, -5: -1, -7: 1, -9: -1})


def test_expand_at_infinity_geometric():
    assert expand_at_infinity(1 / (1 - 1 / q), -4) == LaurentPoly({0: 1, -1: 1, -2: 1, -3: 1, -4: 1})
