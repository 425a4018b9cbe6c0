"""Weight systems of weighted projective hypersurfaces and diagonal actions.

A weight system is the datum (a_0, ..., a_{n+1}; d) of a degree-d
hypersurface in P(a_0, ..., a_{n+1}), of dimension n.  Weights are stored in
the order given; every predicate here is invariant under permuting them.

Quasi-smoothness is not tested combinatorially.  Invertible potentials are
quasi-smooth by construction and the named families are built from them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .exceptions import InputError

__all__ = [
    "WeightSystem",
    "DiagonalAction",
    "well_formed",
    "is_calabi_yau",
    "theta",
    "theta_numerators",
    "action_preserves",
    "monomial_character",
    "parse_weight_line",
    "read_weight_systems",
    "format_weight_system",
]


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple[int, ...]
    degree: int

    def __post_init__(self):
        weights = tuple(int(a) for a in self.weights)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "degree", int(self.degree))
        if len(weights) < 3:
            raise InputError(f"need at least 3 weights, got {len(weights)}")
        if min(weights) < 1:
            raise InputError(f"weights must be positive: {weights}")
        if self.degree < max(weights):
            raise InputError(f"degree {self.degree} is smaller than the largest weight")

    @property
    def dimension(self) -> int:
        return len(self.weights) - 2

    @property
    def charges(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.degree) for a in self.weights)

    def divides_degree(self) -> bool:
        """True when every weight divides the degree."""
        return all(self.degree % a == 0 for a in self.weights)

    def __str__(self):
        return format_weight_system(self)


@dataclass(frozen=True)
class DiagonalAction:
    """mu_order acting by zeta . x_i = zeta^{exponents[i]} x_i."""

    order: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        order = int(self.order)
        if order < 1:
            raise InputError(f"action order must be positive, got {order}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "exponents", tuple(int(e) % order for e in self.exponents))

    @classmethod
    def identity(cls, nvars: int) -> "DiagonalAction":
        return cls(1, (0,) * nvars)


def well_formed(ws: WeightSystem) -> bool:
    """True iff every n+1 of the n+2 weights are coprime."""
    a = ws.weights
    return all(math.gcd(*(a[:i] + a[i + 1:])) == 1 for i in range(len(a)))


def is_calabi_yau(ws: WeightSystem) -> bool:
    return sum(ws.weights) == ws.degree


def theta_numerators(ws: WeightSystem, ell: int) -> tuple[int, ...]:
    """d * frac(ell a_i / d) for every coordinate, as integers in [0, d)."""
    d = ws.degree
    return tuple((ell * a) % d for a in ws.weights)


def theta(ws: WeightSystem, i: int, ell: int) -> Fraction:
    """Fractional part of ell * a_i / d."""
    if not 0 <= i < len(ws.weights):
        raise InputError(f"coordinate index {i} out of range")
    if not 0 <= ell < ws.degree:
        raise InputError(f"ell must lie in [0, {ws.degree}), got {ell}")
    return Fraction((ell * ws.weights[i]) % ws.degree, ws.degree)


def monomial_character(exponent: Sequence[int], action: DiagonalAction) -> int:
    """Residue mod the action order by which a monomial is scaled."""
    if len(exponent) != len(action.exponents):
        raise InputError(
            f"monomial has {len(exponent)} variables, action has {len(action.exponents)}"
        )
    return sum(int(e) * w for e, w in zip(exponent, action.exponents)) % action.order


def action_preserves(polynomial: Sequence[Sequence[int]], action: DiagonalAction) -> bool:
    """True iff all monomials scale by one common character.

    ``polynomial`` is a list of exponent vectors, coefficients being
    irrelevant for diagonal actions.
    """
    if not polynomial:
        raise InputError("polynomial must have at least one monomial")
    chars = {monomial_character(m, action) for m in polynomial}
    return len(chars) == 1


# -- text format ----------------------------------------------------------------
#
#   d : a_0,a_1,...,a_{n+1}      one record per line, '#' starts a comment line

_LINE = re.compile(r"^\s*(\d+)\s*:\s*(\d+(?:\s*,\s*\d+)*)\s*$")


def parse_weight_line(line: str) -> WeightSystem:
    m = _LINE.match(line)
    if m is None:
        raise InputError(f"malformed weight-system line: {line.strip()!r}")
    degree = int(m.group(1))
    weights = tuple(int(x) for x in m.group(2).split(","))
    return WeightSystem(weights, degree)


def read_weight_systems(lines: Iterable[str]) -> Iterator[tuple[int, WeightSystem | InputError]]:
    """Yield (line number, weight system or parse error) for each record.

    Blank lines and '#' comment lines are skipped.  Parse failures are
    yielded rather than raised so a sweep can record them in-stream.
    """
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            yield lineno, parse_weight_line(stripped)
        except InputError as exc:
            yield lineno, exc


def format_weight_system(ws: WeightSystem) -> str:
    return f"{ws.degree} : {','.join(str(a) for a in ws.weights)}"
