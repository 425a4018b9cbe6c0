"""Named Calabi-Yau hypersurfaces, pairs and indices built from Sylvester's sequence.

Three hypersurface families X_1, X_2, X_3 (of extreme cohomology), a klt pair
of large index and its group-action description, a pair of small mld, the
terminal index, and a loop-potential family whose quotients have enormous
index.  Every constructor checks its defining identities exactly and raises
ConstructionError when one fails.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from gmpy2 import mpz

from .arith import lcm, sylvester, sylvester_product_minus_one, sylvester_terms
from .exceptions import ConstructionError, InputError
from .potential import InvertiblePotential, faithfulness
from .wps import DiagonalAction, WeightSystem, action_preserves, is_calabi_yau

__all__ = [
    "PairDescription",
    "LoopFamilyRecord",
    "family_x",
    "klt_pair_large_index",
    "mld_pair",
    "terminal_index",
    "x1_group_action",
    "x1_potential_monomials",
    "loop_family",
    "loop_faithful",
    "verify_faithfulness_range",
    "stacky_fan_vectors",
    "stacky_fan_check",
    "K3_FIXTURES",
    "betti_sum_closed_form",
    "middle_dim_closed_form",
    "euler_closed_form",
    "CONJECTURES",
]

#: Open conjectures attached to the constructions.  Informational only; nothing
#: in the package treats them as established.
CONJECTURES = {
    "index": "The klt pair of large index has the largest index among klt Calabi-Yau pairs "
             "of dimension n with standard coefficients.",
    "mld": "The mld 1/(s_{n+1}-1) of the small-mld pair is the smallest among klt Calabi-Yau "
           "pairs of dimension n with standard coefficients.",
    "terminal": "The index (s_{n-1}-1)(2s_{n-1}-3) is the largest among terminal, and among "
                "canonical, Calabi-Yau varieties of dimension n.",
    "betti": "2(s_0-1)...(s_n-1) is the largest sum of orbifold Betti numbers for a projective "
             "variety with quotient singularities and trivial canonical class; for odd n the "
             "Euler characteristic lies between -+(s_0-1)...(s_{n-1}-1)(2s_n-6).",
    "loop_faithful": "The cyclic group of order m acts faithfully on H^0(X, K_X) for the loop "
                     "family in every dimension.",
}


@dataclass(frozen=True)
class PairDescription:
    """A klt Calabi-Yau pair (X, D) with standard coefficients.

    ``ambient_weights`` are the weights of the ambient weighted projective
    space (all ones for P^n).  Each component is (label, degree, coefficient).
    The mld is a reported value, not computed here.
    """

    name: str
    ambient_weights: tuple[int, ...]
    components: tuple[tuple[str, int, Fraction], ...]
    index: int
    mld: Fraction | None = None
    mld_source: str = ""
    conjecture: str = ""

    @property
    def dimension(self) -> int:
        return len(self.ambient_weights) - 1

    def canonical_degree(self) -> int:
        return -sum(self.ambient_weights)

    def balance(self) -> Fraction:
        """deg(K_X + D) in units of O(1); zero for a Calabi-Yau pair."""
        return self.canonical_degree() + sum((c * deg for _, deg, c in self.components), Fraction(0))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.dimension,
            "ambient_weights": [str(a) for a in self.ambient_weights],
            "components": [[lab, str(deg), str(c)] for lab, deg, c in self.components],
            "index": str(self.index),
            "mld": None if self.mld is None else str(self.mld),
            "mld_source": self.mld_source,
            "balance": str(self.balance()),
            "conjecture": self.conjecture,
        }


def _standard(c: Fraction) -> bool:
    return c.numerator == c.denominator - 1 and c.denominator >= 1


def _check_pair(pair: PairDescription) -> PairDescription:
    bad = [lab for lab, _, c in pair.components if not _standard(c)]
    if bad:
        raise ConstructionError(f"{pair.name}: non-standard coefficients on {bad}")
    if pair.balance() != 0:
        raise ConstructionError(f"{pair.name}: K_X + D has degree {pair.balance()}, not 0")
    return pair


# -- the three hypersurface families ----------------------------------------------


def family_x(k: int, n: int) -> tuple[WeightSystem, InvertiblePotential]:
    """X_k^{(n)} for k = 1, 2, 3 as (weight system, potential).

    X_1: x_0^{s_0} + ... + x_{n-1}^{s_{n-1}} + x_n^{d-1}x_{n+1} + x_{n+1}^d,  d = 2s_n - 2
    X_2: x_0^{s_0} + ... + x_n^{s_n} + x_{n+1}^d,                            d = s_{n+1} - 1
    X_3: x_0^{s_0} + ... + x_{n-1}^{s_{n-1}} + x_n^{2s_n-3} + x_n x_{n+1}^{2s_n-2},
         d = (s_n - 1)(2s_n - 3)
    """
    if k not in (1, 2, 3):
        raise InputError(f"family index must be 1, 2 or 3, got {k}")
    if n < 1:
        raise InputError(f"dimension must be at least 1, got {n}")
    s = sylvester_terms(n + 2)
    N = n + 2
    rows = [[0] * N for _ in range(N)]
    for i in range(n if k != 2 else n + 1):
        rows[i][i] = s[i]
    if k == 1:
        d = 2 * s[n] - 2
        weights = [d // s[i] for i in range(n)] + [1, 1]
        rows[n][n], rows[n][n + 1] = d - 1, 1
        rows[n + 1][n + 1] = d
    elif k == 2:
        d = s[n + 1] - 1
        weights = [d // s[i] for i in range(n + 1)] + [1]
        rows[n + 1][n + 1] = d
    else:
        d = (s[n] - 1) * (2 * s[n] - 3)
        weights = [d // s[i] for i in range(n)] + [s[n] - 1, s[n] - 2]
        rows[n][n] = 2 * s[n] - 3
        rows[n + 1][n], rows[n + 1][n + 1] = 1, 2 * s[n] - 2
    ws = WeightSystem(tuple(weights), d)
    if not is_calabi_yau(ws):
        raise ConstructionError(f"X_{k}^({n}): weights do not sum to the degree")
    return ws, InvertiblePotential(tuple(tuple(r) for r in rows), ws)


def betti_sum_closed_form(n: int) -> int:
    """2(s_0 - 1)...(s_n - 1), shared by all three families."""
    return 2 * sylvester_product_minus_one(n + 1)


def middle_dim_closed_form(k: int, n: int) -> int:
    if n % 2 == 0:
        raise InputError("middle cohomology closed forms are stated for odd n")
    p = sylvester_product_minus_one(n)
    s_n = sylvester(n)
    return {1: p * (2 * s_n - 4), 2: p * (s_n - 1), 3: 2 * p}[k]


def euler_closed_form(k: int, n: int) -> int:
    """Orbifold Euler characteristic of X_k^{(n)}.

    For even n it equals the Betti sum; for odd n it is -+(s_0-1)...(s_{n-1}-1)(2s_n-6).
    """
    if n % 2 == 0:
        return betti_sum_closed_form(n)
    v = sylvester_product_minus_one(n) * (2 * sylvester(n) - 6)
    return {1: -v, 2: 0, 3: v}[k]


# -- pairs and indices ----------------------------------------------------------------


def klt_pair_large_index(n: int) -> PairDescription:
    """Klt Calabi-Yau pair of index (s_n - 1)(2s_n - 3).

    For n >= 2 the ambient space is P(d, ..., d, d-1, 1) with n-1 copies of d,
    d = 2s_n - 2; for n = 1 it is P^1 with three points.
    """
    if n < 1:
        raise InputError(f"dimension must be at least 1, got {n}")
    s = sylvester_terms(n + 1)
    if n == 1:
        comps = tuple((f"p{i + 1}", 1, c) for i, c in
                      enumerate([Fraction(1, 2), Fraction(2, 3), Fraction(5, 6)]))
        ambient = (1, 1)
    else:
        d = 2 * s[n] - 2
        ambient = (d,) * (n - 1) + (d - 1, 1)
        comps = tuple((f"D{i}", d, Fraction(s[i] - 1, s[i])) for i in range(n))
        comps += ((f"D{n}", d - 1, Fraction(d - 2, d - 1)),)
    # all D_i are multiples of O(1) in the class group, so the index is the
    # lcm of the coefficient denominators
    index = lcm(c.denominator for _, _, c in comps)
    expected = (s[n] - 1) * (2 * s[n] - 3)
    if index != expected:
        raise ConstructionError(f"index {index} differs from (s_n-1)(2s_n-3) = {expected}")
    return _check_pair(PairDescription(
        name=f"klt pair of large index, n={n}",
        ambient_weights=ambient,
        components=comps,
        index=index,
        conjecture=CONJECTURES["index"],
    ))


def mld_pair(n: int) -> PairDescription:
    """(P^n, sum (s_i-1)/s_i H_i + (s_{n+1}-2)/(s_{n+1}-1) H_{n+1}) with mld 1/(s_{n+1}-1)."""
    if n < 1:
        raise InputError(f"dimension must be at least 1, got {n}")
    s = sylvester_terms(n + 2)
    comps = tuple((f"H{i}", 1, Fraction(s[i] - 1, s[i])) for i in range(n + 1))
    comps += ((f"H{n + 1}", 1, Fraction(s[n + 1] - 2, s[n + 1] - 1)),)
    if sum(c for _, _, c in comps) != n + 1:
        raise ConstructionError("coefficients of the small-mld pair do not sum to n+1")
    return _check_pair(PairDescription(
        name=f"small mld pair, n={n}",
        ambient_weights=(1,) * (n + 1),
        components=comps,
        index=lcm(c.denominator for _, _, c in comps),
        mld=Fraction(1, s[n + 1] - 1),
        mld_source="reported: log discrepancy of the last coefficient",
        conjecture=CONJECTURES["mld"],
    ))


def terminal_index(n: int) -> int:
    """Index (s_{n-1} - 1)(2s_{n-1} - 3) of the terminal Calabi-Yau n-fold."""
    if n < 2:
        raise InputError(f"dimension must be at least 2, got {n}")
    s = sylvester(n - 1)
    return (s - 1) * (2 * s - 3)


def x1_potential_monomials(n: int) -> list[tuple[int, ...]]:
    """Exponent vectors of x_0^2 + ... + x_{n-1}^{s_{n-1}} + x_n^{d-1}x_{n+1} + x_{n+1}^d."""
    _, p = family_x(1, n)
    return p.monomials()


def x1_group_action(n: int) -> DiagonalAction:
    """mu_m with m = (s_n-1)(2s_n-3) acting by (d/(2s_0), ..., d/(2s_{n-1}), 0, d/2)."""
    if n < 1:
        raise InputError(f"dimension must be at least 1, got {n}")
    s = sylvester_terms(n + 1)
    d = 2 * s[n] - 2
    m = (s[n] - 1) * (2 * s[n] - 3)
    if any(d % (2 * s[i]) for i in range(n)):
        raise ConstructionError("action exponents are not integral")
    action = DiagonalAction(m, tuple(d // (2 * s[i]) for i in range(n)) + (0, d // 2))
    if not action_preserves(x1_potential_monomials(n), action):
        raise ConstructionError("X_1 equation is not invariant under the group action")
    return action


def stacky_fan_vectors(n: int) -> list[list[int]]:
    """v_i = s_i e_i (i < n), v_n = (d-1) e_n, v_{n+1} = -d(e_0+...+e_{n-1}) - (d-1) e_n."""
    s = sylvester_terms(n + 1)
    d = 2 * s[n] - 2
    vs = []
    for i in range(n):
        v = [0] * (n + 1)
        v[i] = s[i]
        vs.append(v)
    vs.append([0] * n + [d - 1])
    vs.append([-d] * n + [-(d - 1)])
    return vs


def stacky_fan_check(n: int) -> bool:
    """(d/s_0)v_0 + ... + (d/s_{n-1})v_{n-1} + v_n + v_{n+1} == 0, with the
    coefficient vector equal to the weights of X_1^{(n)}."""
    if n < 2:
        raise InputError(f"dimension must be at least 2, got {n}")
    vs = stacky_fan_vectors(n)
    s = sylvester_terms(n + 1)
    d = 2 * s[n] - 2
    coeffs = [d // s[i] for i in range(n)] + [1, 1]
    total = [sum(c * v[j] for c, v in zip(coeffs, vs)) for j in range(n + 1)]
    ws, _ = family_x(1, n)
    return all(t == 0 for t in total) and tuple(coeffs) == ws.weights


# -- K3 fixtures ------------------------------------------------------------------------

#: K3 surfaces in weighted P^3 with purely non-symplectic cyclic actions.
#: Each entry: weights, degree, monomials (exponent vectors), action order and exponents.
K3_FIXTURES = {
    "Y10": dict(weights=(5, 3, 1, 1), degree=10,
                monomials=[(2, 0, 0, 0), (0, 3, 0, 1), (0, 0, 1, 9), (0, 1, 7, 0)],
                order=19, exponents=(1, 7, 2, 0)),
    "S11": dict(weights=(5, 3, 2, 1), degree=11,
                monomials=[(2, 0, 0, 1), (0, 3, 1, 0), (1, 0, 3, 0), (0, 1, 0, 8)],
                order=13, exponents=(1, 2, -4, 0)),
    "S7": dict(weights=(3, 2, 1, 1), degree=7,
               monomials=[(2, 0, 0, 1), (0, 3, 1, 0), (0, 1, 5, 0), (0, 0, 0, 7)],
               order=14, exponents=(1, 1, -3, -2)),
}


# -- the loop family --------------------------------------------------------------------


@dataclass
class LoopFamilyRecord:
    n: int
    r: int
    parity: str
    b: tuple[int, ...]
    a: tuple[int, ...]
    d: int
    m: int
    potential: InvertiblePotential
    loop_cycle: tuple[int, ...]
    checks: dict = field(default_factory=dict)
    transpose_degree: int | None = None

    @property
    def weight_system(self) -> WeightSystem:
        return self.potential.weights

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "parity": self.parity,
            "b": [str(x) for x in self.b],
            "a": [str(x) for x in self.a],
            "d": str(self.d),
            "m": str(self.m),
            "transpose_degree": None if self.transpose_degree is None else str(self.transpose_degree),
            "loop_cycle": list(self.loop_cycle),
            "checks": dict(self.checks),
            "potential": self.potential.to_json(),
            "conjecture": CONJECTURES["loop_faithful"],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _loop_exponents(n: int):
    """Exponents b, degree d and weights a of the loop family, as mpz dicts.

    Odd n = 2r+1 uses variables x_0..x_{2r+2}, all in one loop.  Even n = 2r
    uses x_0^2 plus a loop in x_1..x_{2r+1}.  Empty sums are 0 and empty
    products 1; for n = 2 the degree and b_2 are solved jointly.
    """
    odd = n % 2 == 1
    r = (n - 1) // 2 if odd else n // 2
    s = [mpz(x) for x in sylvester_terms(r + 2)]
    b = {i: s[i] for i in range(r + 1)}

    # bracket(i) = 1 + sum_{k=0}^{i-2} (b_{r-k} - 1) W_k,  W_k = b_{r-k+1} ... b_{r+k+1}
    W = []
    bracket = mpz(1)

    def extend_bracket():
        nonlocal bracket
        k = len(W)
        w = b[r + 1] if k == 0 else b[r - k + 1] * W[-1] * b[r + k + 1]
        W.append(w)
        bracket += (b[r - k] - 1) * w

    top = r if odd else r - 1
    for i in range(1, top + 1):
        while len(W) < i - 1:
            extend_bracket()
        b[r + i] = 1 + (b[r + 1 - i] - 1) ** 2 * bracket

    if odd:
        while len(W) < r:
            extend_bracket()
        # b_1 ... b_{2r} = b_1 * W_{r-1}
        d = (b[0] - 1) ** 2 * b[1] * W[r - 1] + (b[1] - 1) * bracket
        if d % 2 != 1:
            raise ConstructionError(f"n={n}: d is even, (d+1)/2 not integral")
        b[2 * r + 1] = (d + 1) // 2
    elif r == 1:
        # d = (b_1 - 1)^2 + (b_2 - 1) with b_2 = (2d + 1)/3 gives d = 10
        d = mpz(10)
        b[2] = (2 * d + 1) // 3
        if d != (b[1] - 1) ** 2 + (b[2] - 1):
            raise ConstructionError("n=2: joint solution for d and b_2 failed")
    else:
        while len(W) < r - 1:
            extend_bracket()
        d = (b[1] - 1) ** 2 * b[2] * W[r - 2] + (b[2] - 1) * bracket
    if not odd:
        if (2 * d + 1) % 3:
            raise ConstructionError(f"n={n}: (2d+1)/3 not integral")
        b[2 * r] = (2 * d + 1) // 3

    # Weights.  The displayed recursion has denominators s_k; multiplying the
    # bracket by s_{r+1} - 1 = s_0 ... s_r clears them, leaving one exact
    # division by s_{i+1} (odd) or s_{i+2} (even) per step.
    S = s[r + 1] - 1
    pre = [mpz(1)]  # pre[t] = b_{r+1} ... b_{r+t}
    for j in range(r + 1, 2 * r + 1):
        pre.append(pre[-1] * b[j])
    a = {}

    def exact(num, den, what):
        q, rem = gmpy2.f_divmod(num, den)
        if rem:
            raise ConstructionError(f"n={n}: {what} is not an integer")
        return q

    if odd:
        a[2 * r + 1] = a[2 * r + 2] = mpz(1)
        # T = S * sum_{k=0}^{i+1} a_{2r+2-k} (1 - 1/s_k), grown one k at a time
        T = a[2 * r + 2] * (s[0] - 1) * (S // s[0])
        for i in range(0, r):
            k = i + 1
            T += a[2 * r + 2 - k] * (s[k] - 1) * (S // s[k])
            num = a[2 * r - i + 1] + (s[i + 1] - 1) * T * pre[r - i - 1]
            a[2 * r - i] = exact(num, s[i + 1], f"a_{2 * r - i}")
        for i in range(0, r + 1):
            a[i] = d - a[2 * r + 1 - i] * b[2 * r + 1 - i]
        b[2 * r + 2] = d - a[r + 1]
        last = 2 * r + 2
        nxt = {i: 2 * r + 2 - i for i in range(r + 1)}
        nxt.update({r + j: r + 1 - j for j in range(1, r + 2)})
        nxt[2 * r + 2] = r + 1
        start = 0
    else:
        a[2 * r] = a[2 * r + 1] = mpz(1)
        T = a[2 * r + 1] * (s[1] - 1) * (S // s[1])  # k = 1 term
        # the displayed range starts at i = 1, but i = 0 (defining a_{2r-1}) is
        # needed whenever r >= 2
        for i in range(0, r - 1):
            k = i + 2
            T += a[2 * r + 2 - k] * (s[k] - 1) * (S // s[k])
            num = a[2 * r - i] + (s[i + 2] - 1) * T * pre[r - i - 2]
            a[2 * r - 1 - i] = exact(num, s[i + 2], f"a_{2 * r - 1 - i}")
        for i in range(1, r + 1):
            a[i] = d - b[2 * r + 1 - i] * a[2 * r + 1 - i]
        # a_0 = d/2 (the generic formula at i = 0 would reference b_{2r+1})
        a[0] = exact(d, 2, "d/2")
        b[2 * r + 1] = d - a[r + 1]
        last = 2 * r + 1
        nxt = {i: 2 * r + 2 - i for i in range(1, r + 1)}
        nxt.update({r + j: r + 1 - j for j in range(1, r + 1)})
        nxt[2 * r + 1] = r + 1
        start = 1

    cycle = [start]
    while nxt[cycle[-1]] != start:
        cycle.append(nxt[cycle[-1]])
    if sorted(cycle) != list(range(start, last + 1)):
        raise ConstructionError(f"n={n}: loop does not visit every variable once")
    return odd, r, d, b, a, nxt, cycle


def _telescoping_m(odd: bool, r: int, b) -> mpz:
    """The alternating sum defining m: remove b_{r+1}, b_r, b_{r+2}, b_{r-1}, ... in turn."""
    lo = 0 if odd else 1
    hi = 2 * r + 1 if odd else 2 * r
    order = []
    up, down = r + 1, r
    while up <= hi or down >= lo:
        if up <= hi:
            order.append(up)
            up += 1
        if down >= lo:
            order.append(down)
            down -= 1
    # terms T_k = product of indices not yet removed after k removals, built
    # from the empty product outwards
    terms = [mpz(1)]
    for idx in reversed(order):
        terms.append(terms[-1] * b[idx])
    terms.reverse()
    m = mpz(0)
    for k, t in enumerate(terms):
        m += t if k % 2 == 0 else -t
    return m


def loop_family(n: int, check_faithful: bool = True, independent_degree: bool | None = None) -> LoopFamilyRecord:
    """Build the loop family in dimension n and run its consistency checks.

    Checks: every monomial has degree d (homogeneous), sum a_i = d
    (weights_sum), the loop block's own charge degree equals d
    (degree_from_charges), d divides Gamma_loop (gamma_consistent), and
    Gamma_loop/d equals the alternating sum defining m (m_consistent).  Any
    failure raises ConstructionError.  ``faithful`` (d * d^T == Gamma) is
    recorded but is not an error.

    ``independent_degree`` recomputes the loop degree from its exponents
    alone; it is on by default up to n = 16 because beyond that the extra
    gcd dominates.  Without it the degree follows from homogeneity and the
    weights.
    """
    if n < 2:
        raise InputError(f"loop family needs n >= 2, got {n}")
    odd, r, d, b, a, nxt, cycle = _loop_exponents(n)
    nvars = n + 2
    checks = {}

    rows = [[0] * nvars for _ in range(nvars)]
    for i, j in nxt.items():
        rows[i][i] = int(b[i])
        rows[i][j] = 1
    if not odd:
        rows[0][0] = int(b[0])

    homogeneous = True
    for i in range(nvars):
        deg = b[i] * a[i] + (a[nxt[i]] if i in nxt else 0)
        homogeneous &= deg == d
    checks["homogeneous"] = homogeneous
    checks["weights_sum"] = sum(a.values()) == d
    if not homogeneous or not checks["weights_sum"]:
        failed = [k for k, v in checks.items() if not v]
        raise ConstructionError(f"n={n}: failed {failed}")

    loop_b = [b[v] for v in cycle]
    G_loop = mpz(1)
    for x in loop_b:
        G_loop *= x
    G_loop += 1 if len(loop_b) % 2 == 1 else -1

    if independent_degree is None:
        independent_degree = n <= 16
    if independent_degree:
        from .potential import _loop_first_charge_numerator
        num, _ = _loop_first_charge_numerator(loop_b)
        d_loop = G_loop // gmpy2.gcd(G_loop, num)
    else:
        # homogeneity makes the loop charges a_i/d, so their order is
        # d / gcd(d, loop weights); a weight equal to 1 ends the gcd at once
        g = d
        for w in sorted((a[v] for v in cycle), key=lambda x: x.bit_length()):
            g = gmpy2.gcd(g, w)
            if g == 1:
                break
        d_loop = d // g
    checks["degree_from_charges"] = d_loop == d
    checks["gamma_consistent"] = gmpy2.is_divisible(G_loop, d)
    m = gmpy2.divexact(G_loop, d) if checks["gamma_consistent"] else mpz(0)
    checks["m_consistent"] = checks["gamma_consistent"] and _telescoping_m(odd, r, b) == m
    failed = [k for k, v in checks.items() if not v]
    if failed:
        raise ConstructionError(f"n={n}: failed {failed}")

    a_t = tuple(int(a[i]) for i in range(nvars))
    ws = WeightSystem(a_t, int(d))
    pot = InvertiblePotential(tuple(tuple(row) for row in rows), ws)
    G_total = G_loop * (1 if odd else b[0])
    pot._cache["gamma"] = int(G_total)

    record = LoopFamilyRecord(
        n=n, r=r, parity="odd" if odd else "even",
        b=tuple(int(b[i]) for i in range(nvars)),
        a=a_t, d=int(d), m=int(m), potential=pot, loop_cycle=tuple(cycle), checks=checks,
    )
    if check_faithful:
        # expected gcd(Gamma_loop, Gamma_loop q^T): d for odd n, d/2 for even n
        hint = int(d) if odd else int(d) // 2
        sym = faithfulness(pot, with_charges=False, known_divisor=hint)
        record.transpose_degree = sym.transpose_degree
        checks["faithful"] = sym.faithful
    return record


def loop_faithful(n: int) -> tuple[bool, int]:
    """(d * d^T == Gamma, m) for the loop family in dimension n.

    Same test as loop_family(n).checks["faithful"], but it keeps only the
    loop exponents and never builds the matrix, the weights as Python ints
    or the record, so the peak memory is a few copies of Gamma.  m is
    returned as an mpz.
    """
    if n < 2:
        raise InputError(f"loop family needs n >= 2, got {n}")
    from .potential import _loop_transpose_numerator
    odd, r, d, b, a, nxt, cycle = _loop_exponents(n)
    del a, nxt
    beta, G = _loop_transpose_numerator([b[v] for v in cycle])
    del b
    if not gmpy2.is_divisible(G, d):
        raise ConstructionError(f"n={n}: d does not divide Gamma_loop")
    # expected gcd(Gamma_loop, beta): d for odd n, d/2 for even n
    h = d if odd else d // 2
    if gmpy2.is_divisible(beta, h):
        g = h * gmpy2.gcd(gmpy2.divexact(G, h), gmpy2.divexact(beta, h))
    else:
        g = gmpy2.gcd(G, beta)
    del beta
    dT = gmpy2.divexact(G, g)
    if odd:
        ok = d * dT == G
    else:
        # the x_0^2 block is its own transpose: Gamma doubles, d^T -> lcm(2, d^T)
        ok = d * gmpy2.lcm(2, dT) == 2 * G
    return bool(ok), gmpy2.divexact(G, d)


def verify_faithfulness_range(n_max: int, n_min: int = 2, progress=None,
                              keep_m: bool = True) -> list[tuple[int, bool, int | None]]:
    """[(n, d * d^T == Gamma, m)] for n_min <= n <= n_max, in order.

    m has about 2^n bits, so a long sweep should pass ``keep_m=False`` (m is
    then None in the result) and read m from ``progress(n, faithful, m)``,
    which is called after each dimension.
    """
    if n_max < 2 or n_min < 2:
        raise InputError("dimensions start at 2")
    out = []
    for n in range(n_min, n_max + 1):
        ok, m = loop_faithful(n)
        if progress is not None:
            progress(n, ok, m)
        out.append((n, ok, int(m) if keep_m else None))
        del m
    return out
