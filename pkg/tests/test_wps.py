from fractions import Fraction

import pytest

from sylvester_cy.exceptions import InputError
from sylvester_cy.wps import (
    DiagonalAction,
    WeightSystem,
    action_preserves,
    format_weight_system,
    is_calabi_yau,
    monomial_character,
    parse_weight_line,
    read_weight_systems,
    theta,
    well_formed,
)


def test_weight_system_basics():
    ws = WeightSystem((42, 28, 12, 1, 1), 84)
    assert ws.dimension == 3
    assert ws.charges == (Fraction(1, 2), Fraction(1, 3), Fraction(1, 7), Fraction(1, 84), Fraction(1, 84))
    assert not ws.divides_degree or all(84 % a == 0 for a in ws.weights)


@pytest.mark.parametrize("weights,degree", [((1, 1), 2), ((0, 1, 1), 2), ((5, 1, 1), 3)])
def test_weight_system_rejects(weights, degree):
    with pytest.raises(InputError):
        WeightSystem(weights, degree)


@pytest.mark.parametrize("weights,expected", [
    ((5, 3, 1, 1), True),
    ((2, 2, 1), False),
    ((42, 28, 12, 1, 1), True),
    ((3, 3, 3, 1, 1, 1), True),
    ((4, 4, 2, 2), False),
])
def test_well_formed(weights, expected):
    assert well_formed(WeightSystem(weights, sum(weights))) is expected


def test_calabi_yau():
    assert is_calabi_yau(WeightSystem((42, 28, 12, 1, 1), 84))
    assert not is_calabi_yau(WeightSystem((1, 1, 1), 2))
    assert is_calabi_yau(WeightSystem((1743, 1162, 498, 42, 41), 3486))


def test_theta():
    ws = WeightSystem((3, 3, 2, 1, 1), 10)
    assert theta(ws, 0, 0) == 0
    assert theta(ws, 0, 1) == Fraction(3, 10)
    assert theta(WeightSystem((42, 28, 12, 1, 1), 84), 1, 2) == Fraction(2, 3)
    with pytest.raises(InputError):
        theta(ws, 9, 1)
    with pytest.raises(InputError):
        theta(ws, 0, 10)


def test_actions():
    y10 = [(2, 0, 0, 0), (0, 3, 0, 1), (0, 0, 1, 9), (0, 1, 7, 0)]
    assert action_preserves(y10, DiagonalAction(19, (1, 7, 2, 0)))
    assert action_preserves(y10, DiagonalAction.identity(4))
    s11 = [(2, 0, 0, 1), (0, 3, 1, 0), (1, 0, 3, 0), (0, 1, 0, 8)]
    assert action_preserves(s11, DiagonalAction(13, (1, 2, -4, 0)))
    assert not action_preserves(s11, DiagonalAction(13, (1, 0, 0, 0)))
    assert monomial_character((2, 0, 0, 0), DiagonalAction(19, (1, 7, 2, 0))) == 2
    with pytest.raises(InputError):
        action_preserves([(1, 2)], DiagonalAction(5, (1, 1, 1)))


def test_text_format_roundtrip():
    ws = parse_weight_line("84 : 42,28,12,1,1")
    assert ws == WeightSystem((42, 28, 12, 1, 1), 84)
    assert parse_weight_line(format_weight_system(ws)) == ws
    rows = list(read_weight_systems(["# comment\n", "\n", "12 : 3,3,3,1,1,1\n", "junk\n"]))
    assert rows[0] == (3, WeightSystem((3, 3, 3, 1, 1, 1), 12))
    assert rows[1][0] == 4 and isinstance(rows[1][1], InputError)
