"""Slow, independent reference computations used to check the library."""

from collections import defaultdict
from fractions import Fraction
import math


def sylvester_direct(n):
    s = 2
    for _ in range(n):
        s = s * s - s + 1
    return s


def counting_brute(C, d):
    total = 0
    for j in range(d):
        prod = 1
        for c in C:
            prod *= (c - 1) if j % c == 0 else -1
        total += prod
    return total


def hodge_oracle(weights, d):
    """Mirror-side h^{p,q} from the t, tbar expression with rational exponents.

    Each fixed factor (1 - w^{1-q}) / (1 - w^q), w = t*tbar, is expanded as a
    geometric series truncated past every exponent that can still land in the
    diamond; only terms with integer exponents are kept.
    """
    N = len(weights)
    n = N - 2
    cap = Fraction(2 * n + N + 2)
    table = defaultdict(int)
    for ell in range(d):
        # term as {(t exponent, tbar exponent): coeff}
        term = {(Fraction(0), Fraction(0)): 1}
        for a in weights:
            q = Fraction(a, d)
            th = Fraction(ell * a % d, d)
            if th == 0:
                series = defaultdict(int)
                k = 0
                while k * q <= cap:
                    series[k * q] += 1
                    series[k * q + 1 - q] -= 1
                    k += 1
                new = defaultdict(int)
                for (x, y), c in term.items():
                    for e, c2 in series.items():
                        if c2 and e <= cap:
                            new[(x + e, y + e)] += c * c2
                term = new
            else:
                dx = Fraction(1, 2) - q + th - Fraction(1, 2)
                dy = Fraction(1, 2) - q - th + Fraction(1, 2)
                term = {(x + dx, y + dy): c for (x, y), c in term.items()}
        for (x, y), c in term.items():
            if c and x.denominator == 1 and y.denominator == 1 and 0 <= x <= n and 0 <= y <= n:
                table[(int(x), int(y))] += c
    return {k: v for k, v in table.items() if v}


def loop_inverse_oracle(b):
    """Exact inverse of the canonical loop matrix via sympy."""
    import sympy
    N = len(b)
    M = sympy.zeros(N, N)
    for i in range(N):
        M[i, i] = b[i]
        M[i, (i + 1) % N] = 1
    return M.inv()


def lcm_all(xs):
    out = 1
    for x in xs:
        out = math.lcm(out, x)
    return out
