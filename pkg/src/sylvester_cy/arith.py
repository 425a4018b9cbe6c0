"""Exact integer and rational helpers.

Python's ``int`` is the arbitrary-precision integer of this package and
``fractions.Fraction`` is the rational type: both are immutable, and
``Fraction`` keeps itself in lowest terms with a positive denominator, so
"the denominator of a charge" is always canonical.

Sylvester's sequence s_0 = 2, s_n = s_{n-1}(s_{n-1} - 1) + 1 is the source
of every weight, degree and index in the package.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

from .exceptions import InputError, SingularMatrixError

__all__ = [
    "Fraction",
    "SYLVESTER_CACHE_CAP",
    "sylvester",
    "sylvester_terms",
    "sylvester_deficit",
    "sylvester_product_minus_one",
    "lcm",
    "denominator_lcm",
    "frac_part",
    "det",
    "solve",
    "inverse",
]

#: Largest index kept in the memo table.  s_n has about 2^(n-1) bits, so the
#: table is cheap to keep; terms past the cap are recomputed on demand.
SYLVESTER_CACHE_CAP = 34

_sylvester_cache: list[int] = [2]
_sylvester_lock = threading.Lock()


def sylvester(n: int) -> int:
    """Return s_n, the n-th term of Sylvester's sequence (s_0 = 2).

    >>> [sylvester(i) for i in range(5)]
    [2, 3, 7, 43, 1807]
    """
    if n < 0:
        raise InputError(f"Sylvester index must be nonnegative, got {n}")
    cache = _sylvester_cache
    if n < len(cache):
        return cache[n]
    with _sylvester_lock:
        s = cache[-1]
        for i in range(len(cache), n + 1):
            s = s * (s - 1) + 1
            if i <= SYLVESTER_CACHE_CAP:
                cache.append(s)
    return s


def sylvester_terms(n: int) -> list[int]:
    """Return [s_0, ..., s_{n-1}]."""
    return [sylvester(i) for i in range(n)]


def sylvester_deficit(n: int) -> Fraction:
    """Return 1 - (1/s_0 + ... + 1/s_{n-1}), which equals 1/(s_n - 1)."""
    if n < 0:
        raise InputError(f"Sylvester index must be nonnegative, got {n}")
    return 1 - sum((Fraction(1, s) for s in sylvester_terms(n)), Fraction(0))


def sylvester_product_minus_one(n: int) -> int:
    """Return (s_0 - 1)(s_1 - 1)...(s_{n-1} - 1); 1 for n = 0."""
    return math.prod(s - 1 for s in sylvester_terms(n))


def lcm(values: Iterable[int]) -> int:
    out = gmpy2.mpz(1)
    for v in values:
        out = gmpy2.lcm(out, v)
    return int(out)


def denominator_lcm(values: Iterable[Fraction]) -> int:
    """Order of a vector of rationals in (Q/Z)^n."""
    return lcm(Fraction(v).denominator for v in values)


def frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


# -- exact linear algebra -----------------------------------------------------
#
# Bareiss fraction-free elimination: every intermediate entry is a minor of
# the input, so integers stay exact and only grow polynomially.


def _bareiss_forward(rows: list[list[int]], n: int) -> int:
    """Eliminate the leading n columns in place; return the determinant."""
    sign = 1
    prev = 1
    width = len(rows[0])
    for k in range(n):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        row_k = rows[k]
        for i in range(k + 1, n):
            row_i = rows[i]
            lead = row_i[k]
            for j in range(k + 1, width):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1]


def _check_square(matrix: Sequence[Sequence[int]]) -> int:
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise InputError("matrix must be square and nonempty")
    return n


def det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix."""
    n = _check_square(matrix)
    rows = [[int(x) for x in row] for row in matrix]
    return _bareiss_forward(rows, n)


def solve(matrix: Sequence[Sequence[int]], rhs: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Solve matrix @ X = rhs exactly; rhs is given as a list of rows."""
    n = _check_square(matrix)
    if len(rhs) != n:
        raise InputError("right-hand side has the wrong number of rows")
    k = len(rhs[0])
    rows = [[int(x) for x in matrix[i]] + [int(x) for x in rhs[i]] for i in range(n)]
    d = _bareiss_forward(rows, n)
    if d == 0:
        raise SingularMatrixError("exponent matrix is singular")
    # After elimination rows[n-1][n-1] == +-d, and det-scaled back
    # substitution divides exactly at every step.
    top = rows[n - 1][n - 1]
    scaled = [[0] * k for _ in range(n)]
    for i in range(n - 1, -1, -1):
        row = rows[i]
        for c in range(k):
            acc = top * row[n + c]
            for j in range(i + 1, n):
                acc -= row[j] * scaled[j][c]
            q, r = divmod(acc, row[i])
            assert r == 0, "fraction-free back substitution lost exactness"
            scaled[i][c] = q
    return [[Fraction(scaled[i][c], top) for c in range(k)] for i in range(n)]


def inverse(matrix: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Exact inverse of an integer matrix as rows of Fractions."""
    n = _check_square(matrix)
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    return solve(matrix, eye)
