import math
from fractions import Fraction

import pytest

from oracles import sylvester_direct
from sylvester_cy import arith
from sylvester_cy.exceptions import InputError, SingularMatrixError


@pytest.mark.parametrize("n,value", [(0, 2), (1, 3), (2, 7), (3, 43), (4, 1807), (5, 3263443)])
def test_sylvester_values(n, value):
    assert arith.sylvester(n) == value


def test_sylvester_matches_direct_recurrence():
    for n in range(15):
        assert arith.sylvester(n) == sylvester_direct(n)
    assert arith.sylvester_terms(6) == [sylvester_direct(k) for k in range(6)]


def test_sylvester_rejects_negative():
    with pytest.raises(InputError):
        arith.sylvester(-1)


@pytest.mark.parametrize("n,value", [(0, Fraction(1)), (2, Fraction(1, 6)), (3, Fraction(1, 42))])
def test_deficit(n, value):
    assert arith.sylvester_deficit(n) == value


def test_deficit_and_product_identities():
    for n in range(13):
        s = arith.sylvester(n)
        assert arith.sylvester_deficit(n) == Fraction(1, s - 1)
        assert math.prod(arith.sylvester_terms(n)) == s - 1
        assert arith.sylvester_product_minus_one(n) == math.prod(t - 1 for t in arith.sylvester_terms(n))
        if n >= 1:
            assert s == arith.sylvester(n - 1) ** 2 - arith.sylvester(n - 1) + 1


def test_lcm_and_denominators():
    assert arith.lcm([4, 6, 10]) == 60
    assert arith.lcm([]) == 1
    assert arith.denominator_lcm([Fraction(1, 2), Fraction(2, 3), Fraction(5, 6)]) == 6
    assert arith.frac_part(Fraction(-1, 3)) == Fraction(2, 3)


def test_bareiss_det_solve_inverse():
    M = [[3, 1, 0], [0, 9, 1], [1, 0, 7]]
    assert arith.det(M) == 190
    inv = arith.inverse(M)
    for i in range(3):
        for j in range(3):
            assert sum(Fraction(M[i][k]) * inv[k][j] for k in range(3)) == (1 if i == j else 0)
    x = arith.solve(M, [[1], [1], [1]])
    assert [r[0] for r in x] == [Fraction(3, 10), Fraction(1, 10), Fraction(1, 10)]


def test_singular_matrix():
    with pytest.raises(SingularMatrixError):
        arith.inverse([[1, 2], [2, 4]])
