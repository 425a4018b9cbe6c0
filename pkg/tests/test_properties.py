import math
import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from oracles import counting_brute, hodge_oracle
from sylvester_cy import arith
from sylvester_cy.families import family_x, loop_family
from sylvester_cy.hodge import counting_sum, diamond
from sylvester_cy.potential import charges, degree_from_charges, gamma, loop, loop_closed_forms, transpose
from sylvester_cy.wps import WeightSystem

PRIMES = [2, 3, 5, 7, 11, 13]


@st.composite
def coprime_sets(draw):
    ps = draw(st.lists(st.sampled_from(PRIMES), min_size=1, max_size=3, unique=True))
    C = [p ** draw(st.integers(1, 2)) for p in ps]
    L = math.lcm(*C)
    d = L * draw(st.integers(1, max(1, 3000 // L)))
    return C, d


@settings(max_examples=200, deadline=None)
@given(coprime_sets())
def test_counting_lemma(case):
    C, d = case
    assert counting_sum(C, d) == 0 == counting_brute(C, d)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(2, 40), min_size=2, max_size=6))
def test_loop_closed_forms_against_inverse(b):
    inv = arith.inverse([[b[i] if j == i else (1 if j == (i + 1) % len(b) else 0) for j in range(len(b))]
                         for i in range(len(b))])
    col, row = loop_closed_forms(b)
    assert tuple(r[-1] for r in inv) == col
    assert tuple(inv[0]) == row
    p = loop(b)
    assert gamma(p) == arith.det(p.matrix)
    assert charges(p) == tuple(sum(r, Fraction(0)) for r in inv)
    assert degree_from_charges(p) == arith.denominator_lcm(charges(p))


def _random_cy(rng):
    # random quasi-smooth CY weight systems among Fermat-type ones: pick 1/b's summing to 1
    known = [(1, 1, 1), (1, 1, 2), (1, 2, 3), (1, 1, 1, 1), (1, 1, 1, 3), (1, 1, 4, 6), (1, 2, 2, 5),
             (1, 1, 2, 4), (1, 1, 1, 1, 1), (1, 1, 1, 1, 2), (1, 1, 1, 3, 3), (1, 1, 2, 2, 2)]
    w = rng.choice(known)
    return w, sum(w)


def test_diamond_symmetries_random():
    rng = random.Random(11)
    for _ in range(15):
        w, d = _random_cy(rng)
        try:
            D = diamond(WeightSystem(w, d))
        except ArithmeticError:
            continue
        assert not D.symmetry_violations()
        assert all(v >= 0 for _, v in D.items())
        if len(w) <= 4:
            assert {k: v for k, v in D.flip().items() if v} == hodge_oracle(w, d)


def test_family_diamond_symmetries_and_mirror():
    for n in (2, 3):
        X1 = diamond(family_x(1, n)[0], "of-mirror")
        X3 = diamond(family_x(3, n)[0], "of-X")
        assert X1.flip().flip() == X1
        assert [v for _, v in X1.items()] == [v for _, v in X3.items()]
        for k in (1, 2, 3):
            D = diamond(family_x(k, n)[0])
            assert not D.symmetry_violations()
            if n % 2:
                assert D.euler() == -diamond(family_x(k, n)[0], "of-mirror").euler()
            else:
                assert D.euler() == diamond(family_x(k, n)[0], "of-mirror").euler()


def test_charges_equal_weights_over_degree():
    for n in range(1, 6):
        for k in (1, 2, 3):
            ws, pot = family_x(k, n)
            assert charges(pot) == tuple(Fraction(a, ws.degree) for a in ws.weights)
    for n in range(2, 9):
        rec = loop_family(n, check_faithful=False)
        assert charges(rec.potential) == tuple(Fraction(a, rec.d) for a in rec.a)


def test_transpose_is_involution():
    for n in (2, 3, 4):
        _, p = family_x(1, n)
        assert transpose(transpose(p)).matrix == p.matrix


def test_sylvester_identities():
    for n in range(13):
        s = arith.sylvester(n)
        assert sum(Fraction(1, arith.sylvester(i)) for i in range(n)) + Fraction(1, s - 1) == 1
        assert math.prod(arith.sylvester_terms(n)) + 1 == s
        if n:
            assert math.gcd(s, arith.sylvester(n - 1)) == 1
