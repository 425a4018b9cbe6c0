import pytest

from oracles import counting_brute, hodge_oracle
from sylvester_cy.exceptions import BudgetExceeded, InputError, PoleError, UnsupportedInputError
from sylvester_cy.families import family_x
from sylvester_cy.hodge import (
    HodgeDiamond,
    betti_sum,
    counting_sum,
    diamond,
    ell_term,
    euler,
    f_c,
    middle_dim,
    s_ell,
    vanishing_hypotheses,
)
from sylvester_cy.wps import WeightSystem


def test_f_c():
    assert f_c(2, 0) == 1
    assert f_c(2, 1) == -1
    assert f_c(7, 14) == 6
    with pytest.raises(InputError):
        f_c(0, 1)


@pytest.mark.parametrize("C,d", [({2}, 2), ({2, 3, 7}, 42), ({3}, 12), ({4, 9, 5}, 360)])
def test_counting_sum(C, d):
    assert counting_sum(C, d) == 0 == counting_brute(C, d)


@pytest.mark.parametrize("C,d", [(set(), 6), ({2, 4}, 8), ({3}, 10), ({1, 2}, 2)])
def test_counting_sum_rejects(C, d):
    with pytest.raises(InputError):
        counting_sum(C, d)


def test_s_ell():
    ws = WeightSystem((3, 2, 1), 6)
    assert [s_ell(ws, ell) for ell in (1, 2, 0)] == [6, 0, 12]
    with pytest.raises(UnsupportedInputError):
        s_ell(WeightSystem((5, 3, 1, 1), 10), 0)


def test_ell_term():
    ws = WeightSystem((42, 28, 12, 1, 1), 84)
    t = ell_term(ws, 2)
    assert t.fixed == (0,)
    assert t.series == ((42, 0),)
    # moving exponents: (56 - 28) + (24 - 12) + (2 - 1) * 2 and (84 - 56 - 28) + ...
    assert t.x_exponent == 28 + 12 + 1 + 1
    assert t.y_exponent == 0 + 48 + 81 + 81
    assert ell_term(ws, 0).series_degree == 0 + 28 + 60 + 82 + 82
    assert (t.x_exponent - t.y_exponent) % 84 == 0


SMALL_CASES = [
    ((1, 1, 1), 3),
    ((1, 1, 1, 1), 4),
    ((1, 1, 1, 1, 1), 5),
    ((3, 2, 1), 6),
    ((5, 3, 1, 1), 10),
    ((3, 3, 3, 1, 1, 1), 12),
    ((21, 14, 6, 1), 42),
    ((6, 4, 1, 1), 12),
    ((33, 22, 6, 5), 66),
    ((42, 28, 12, 1, 1), 84),
]


@pytest.mark.parametrize("weights,d", SMALL_CASES)
def test_diamond_matches_oracle(weights, d):
    D = diamond(WeightSystem(weights, d), "of-mirror")
    assert {k: v for k, v in D.items() if v} == hodge_oracle(weights, d)


def test_known_diamonds():
    E = diamond(WeightSystem((1, 1, 1), 3), "of-X")
    assert all(v == 1 for _, v in E.items())
    Q = diamond(WeightSystem((1, 1, 1, 1, 1), 5), "of-X")
    assert (Q[1, 1], Q[2, 1], Q[3, 0]) == (1, 101, 1)
    K3 = diamond(WeightSystem((1, 1, 1, 1), 4))
    assert (K3[1, 1], K3[2, 0]) == (20, 1)


def test_x12_off_cross():
    D = diamond(WeightSystem((3, 3, 3, 1, 1, 1), 12))
    assert D[1, 2] == 3
    assert (1, 2, 3) in D.off_cross()


def test_orientation_flip():
    ws = WeightSystem((42, 28, 12, 1, 1), 84)
    X = diamond(ws, "of-X")
    M = diamond(ws, "of-mirror")
    assert M.flip() == X
    assert X[1, 1] == 11 and M[1, 1] == 491
    assert euler(X) == -960 and euler(M) == 960


def test_errors():
    with pytest.raises(InputError):
        diamond(WeightSystem((1, 1, 1), 4))
    with pytest.raises(InputError):
        diamond(WeightSystem((1, 1, 1), 3), "sideways")
    with pytest.raises(PoleError):
        diamond(WeightSystem((4, 3, 1, 1, 1), 10))
    with pytest.raises(BudgetExceeded):
        diamond(WeightSystem((903, 602, 258, 42, 1), 1806), max_series=1000)


def test_json_and_render():
    D = diamond(WeightSystem((42, 28, 12, 1, 1), 84))
    obj = D.to_json()
    assert obj["orientation"] == "of-X"
    assert [2, 1, "491"] in obj["entries"]
    assert HodgeDiamond.from_json(obj) == D
    lines = D.render().splitlines()
    assert len(lines) == 7
    assert lines[3].split() == ["1", "491", "491", "1"]
    assert lines[2].split() == ["0", "11", "0"]


def test_betti_sum_paths():
    assert betti_sum(WeightSystem((903, 602, 258, 42, 1), 1806)) == 1008
    assert betti_sum(WeightSystem((42, 28, 12, 1, 1), 84)) == 1008
    # weights not dividing d fall back to the diamond
    assert betti_sum(WeightSystem((5, 3, 1, 1), 10)) == diamond(WeightSystem((5, 3, 1, 1), 10)).total()
    for weights, d in SMALL_CASES:
        ws = WeightSystem(weights, d)
        assert betti_sum(ws) == diamond(ws).total()


def test_middle_dim():
    assert middle_dim(family_x(1, 3)[0]) == 984
    assert middle_dim(family_x(2, 3)[0]) == 504
    assert middle_dim(family_x(3, 3)[0]) == 24
    with pytest.raises(InputError):
        middle_dim(family_x(1, 2)[0])


def test_vanishing_hypotheses():
    assert vanishing_hypotheses(family_x(1, 3)[0])
    assert vanishing_hypotheses(family_x(2, 3)[0])
    assert not vanishing_hypotheses(family_x(3, 3)[0])
    assert not vanishing_hypotheses(WeightSystem((3, 3, 3, 1, 1, 1), 12))
