"""Orbifold Hodge numbers of quasi-smooth Calabi-Yau weighted hypersurfaces.

With t = x^d and tbar = y^d, each term of the Vafa-Batyrev sum becomes

    Q_l(x, y) = x^A y^B * F_l(u),   u = xy,
    A = sum over moving i of (d*theta_i - a_i),
    B = sum over moving i of (d - d*theta_i - a_i),
    F_l(u) = prod over fixed i of (1 - u^(d - a_i)) / (1 - u^(a_i)),

where coordinate i is fixed at l when d | l*a_i.  The coefficient of
x^(pd) y^(qd) in the sum is h^{p,q} of the mirror of X.

F_l depends only on the set of fixed coordinates, so the l's are grouped by
that set and each series is expanded once, densely, in int64 when an a-priori
bound allows and in Python integers otherwise.  Only the n+1 coefficients of
u that complete x^(pd) y^(qd) are read from each term.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .exceptions import BudgetExceeded, InputError, PoleError, UnsupportedInputError
from .wps import WeightSystem, is_calabi_yau

__all__ = [
    "HodgeDiamond",
    "EllTerm",
    "f_c",
    "counting_sum",
    "ell_term",
    "s_ell",
    "betti_sum",
    "diamond",
    "euler",
    "middle_dim",
    "vanishing_hypotheses",
    "ORIENTATIONS",
    "DEFAULT_MAX_SERIES",
]

ORIENTATIONS = ("of-X", "of-mirror")

#: Largest dense series (number of coefficients) diamond() will allocate.
DEFAULT_MAX_SERIES = 60_000_000

_INT64_SAFE = 1 << 62


class HodgeDiamond:
    """Table of h^{p,q}, 0 <= p, q <= n, tagged with the side it describes."""

    def __init__(self, dimension: int, entries, orientation: str = "of-X"):
        if orientation not in ORIENTATIONS:
            raise InputError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
        self.dimension = int(dimension)
        self.orientation = orientation
        n = self.dimension
        table = [[0] * (n + 1) for _ in range(n + 1)]
        if isinstance(entries, dict):
            items = entries.items()
        else:
            items = (((p, q), v) for p, q, v in entries)
        for (p, q), v in items:
            if not (0 <= p <= n and 0 <= q <= n):
                raise InputError(f"entry ({p},{q}) outside a diamond of dimension {n}")
            table[p][q] = int(v)
        self._t = table

    def __getitem__(self, pq) -> int:
        p, q = pq
        return self._t[p][q]

    def __eq__(self, other):
        if not isinstance(other, HodgeDiamond):
            return NotImplemented
        return (self.dimension, self.orientation, self._t) == (other.dimension, other.orientation, other._t)

    def __repr__(self):
        return f"HodgeDiamond(dimension={self.dimension}, orientation={self.orientation!r}, rows={self._t})"

    def items(self):
        n = self.dimension
        for p in range(n + 1):
            for q in range(n + 1):
                yield (p, q), self._t[p][q]

    def flip(self) -> "HodgeDiamond":
        """The diamond of the other side: h^{p,q} -> h^{n-p,q}."""
        n = self.dimension
        other = "of-mirror" if self.orientation == "of-X" else "of-X"
        return HodgeDiamond(n, {(n - p, q): v for (p, q), v in self.items()}, other)

    def oriented(self, orientation: str) -> "HodgeDiamond":
        return self if orientation == self.orientation else self.flip()

    def total(self) -> int:
        """Sum of all entries, i.e. the sum of the orbifold Betti numbers."""
        return sum(v for _, v in self.items())

    def betti(self, k: int) -> int:
        return sum(v for (p, q), v in self.items() if p + q == k)

    def euler(self) -> int:
        return sum((-1) ** (p + q) * v for (p, q), v in self.items())

    def symmetry_violations(self) -> list[tuple[int, int]]:
        """Entries breaking h^{p,q} = h^{q,p} = h^{n-p,n-q}."""
        n = self.dimension
        bad = []
        for (p, q), v in self.items():
            if v != self._t[q][p] or v != self._t[n - p][n - q]:
                bad.append((p, q))
        return bad

    def off_cross(self) -> list[tuple[int, int, int]]:
        """Nonzero entries with p != q and p + q != n."""
        n = self.dimension
        return [(p, q, v) for (p, q), v in self.items() if v and p != q and p + q != n]

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "orientation": self.orientation,
            "entries": [[p, q, str(v)] for (p, q), v in self.items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HodgeDiamond":
        return cls(obj["dimension"], [(p, q, int(v)) for p, q, v in obj["entries"]], obj["orientation"])

    def render(self) -> str:
        """Classical diamond layout, h^{n,n} on top and h^{0,0} at the bottom."""
        n = self.dimension
        rows = []
        for s in range(2 * n, -1, -1):
            rows.append([str(self._t[p][s - p]) for p in range(min(n, s), max(0, s - n) - 1, -1)])
        width = max(len(x) for r in rows for x in r)
        cell = width + 2
        lines = []
        for r in rows:
            pad = (n + 1 - len(r)) * cell // 2
            lines.append(" " * pad + "".join(x.center(cell) for x in r).rstrip())
        return "\n".join(line.rstrip() for line in lines)

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class EllTerm:
    """Q_l(x, y) as a monomial x^A y^B times a product of u-series factors.

    ``series`` holds (stride a_i, top degree d - 2a_i) for each fixed
    coordinate; the factor is (1 - u^(d - a_i)) / (1 - u^(a_i)).
    """

    ell: int
    fixed: tuple[int, ...]
    x_exponent: int
    y_exponent: int
    series: tuple[tuple[int, int], ...]

    @property
    def series_degree(self) -> int:
        return sum(top for _, top in self.series)


# -- root-of-unity sums -------------------------------------------------------------


def f_c(c: int, j: int) -> int:
    """c - 1 if c divides j, else -1."""
    if c < 1:
        raise InputError(f"f_c needs c >= 1, got {c}")
    return c - 1 if j % c == 0 else -1


def _product_sum(cs: Iterable[int], d: int) -> int:
    """sum_{j=0}^{d-1} prod_c f_c(j), for any c's dividing d.

    Expanding prod (c [c|j] - 1) over subsets T gives
    sum_T (-1)^{|C|-|T|} (prod_T c) * d / lcm(T).
    """
    cs = list(cs)
    total = 0
    for r in range(len(cs) + 1):
        for T in itertools.combinations(cs, r):
            L = math.lcm(*T) if T else 1
            total += (-1) ** (len(cs) - r) * math.prod(T) * (d // L)
    return total


def counting_sum(C: Iterable[int], d: int) -> int:
    """sum_{j=0}^{d-1} prod_{c in C} f_c(j) for pairwise coprime c >= 2 dividing d."""
    cs = sorted(set(int(c) for c in C))
    if not cs:
        raise InputError("C must be nonempty")
    if cs[0] < 2:
        raise InputError("elements of C must be at least 2")
    for x, y in itertools.combinations(cs, 2):
        if math.gcd(x, y) != 1:
            raise InputError(f"{x} and {y} are not coprime")
    bad = [c for c in cs if d % c]
    if d < 1 or bad:
        raise InputError(f"d = {d} is not a positive multiple of {bad or cs}")
    return _product_sum(cs, d)


def _require_divisible(ws: WeightSystem):
    d = ws.degree
    if any(d % a for a in ws.weights):
        raise UnsupportedInputError("every weight must divide the degree")


def s_ell(ws: WeightSystem, ell: int) -> int:
    """sum_j prod over fixed i of f_{d/a_i}(j), the l-th term of the Betti sum times d."""
    _require_divisible(ws)
    d = ws.degree
    if not 0 <= ell < d:
        raise InputError(f"ell must lie in [0, {d})")
    return _product_sum([d // a for a in ws.weights if (ell * a) % d == 0], d)


def vanishing_hypotheses(ws: WeightSystem) -> bool:
    """Every a_i divides d and the quotients d/a_i < d are pairwise coprime.

    Under these conditions only l = 0 and l with no fixed coordinate
    contribute, so h^{p,q} vanishes off p = q and p + q = n.
    """
    d = ws.degree
    if any(d % a for a in ws.weights):
        return False
    cs = [d // a for a in ws.weights if a != 1]
    return all(math.gcd(x, y) == 1 for x, y in itertools.combinations(cs, 2))


def betti_sum(ws: WeightSystem, **diamond_kwargs) -> int:
    """Sum of orbifold Betti numbers, H = (1/d) sum_l S_l.

    When every weight divides d, S_l depends only on the fixed set F, and the
    number of l in [0, d) with fixed set exactly F is an inclusion-exclusion
    over supersets, so H costs O(3^(n+2)) big-integer operations whatever
    the size of d.  Otherwise H is summed from the diamond.
    """
    d = ws.degree
    if any(d % a for a in ws.weights):
        return diamond(ws, "of-mirror", **diamond_kwargs).total()
    if not is_calabi_yau(ws):
        raise InputError("betti_sum needs a Calabi-Yau weight system")
    c = [d // a for a in ws.weights]
    N = len(c)
    # count[mask] = #{l : c_i | l for every i in mask}
    lcm_of = {}
    for mask in range(1 << N):
        lcm_of[mask] = math.lcm(*(c[i] for i in range(N) if mask >> i & 1)) if mask else 1
    total = 0
    full = (1 << N) - 1
    for F in range(1 << N):
        # exact count by inclusion-exclusion over supersets of F
        rest = full & ~F
        exact = 0
        sub = rest
        while True:
            U = F | sub
            exact += (-1) ** bin(sub).count("1") * (d // lcm_of[U])
            if sub == 0:
                break
            sub = (sub - 1) & rest
        if exact:
            total += exact * _product_sum([c[i] for i in range(N) if F >> i & 1], d)
    H, rem = divmod(total, d)
    if rem:
        raise ArithmeticError("Betti sum is not an integer")
    return H


# -- the diamond ----------------------------------------------------------------------


def ell_term(ws: WeightSystem, ell: int) -> EllTerm:
    d = ws.degree
    if not 0 <= ell < d:
        raise InputError(f"ell must lie in [0, {d})")
    fixed, series = [], []
    A = B = 0
    for i, a in enumerate(ws.weights):
        th = (ell * a) % d
        if th == 0:
            fixed.append(i)
            series.append((a, d - 2 * a))
        else:
            A += th - a
            B += d - th - a
    return EllTerm(ell, tuple(fixed), A, B, tuple(series))


def _series_bound(d: int, fixed_weights) -> int:
    """Upper bound on |coefficient| met while expanding the fixed-coordinate series."""
    div = [a for a in fixed_weights if d % a == 0]
    nondiv = [a for a in fixed_weights if d % a]
    bound = 1
    for a in div:
        bound *= max(1, (d - a) // a)
    bound *= 2 ** len(nondiv)
    length = sum(d - 2 * a for a in fixed_weights) + sum(nondiv) + 1
    for a in nondiv:
        bound *= -(-length // a)
    return 2 * bound


def _fixed_series(d: int, fixed_weights, max_series: int):
    """Dense coefficients of prod (1 - u^(d-a)) / (1 - u^a) over the fixed weights.

    Factors with a | d are geometric and divided one at a time, so the
    partial results stay polynomials.  The remaining numerators are all
    multiplied in before their denominators are divided out; the quotient
    is a polynomial iff the top sum(a) coefficients of the buffer vanish
    (they are exactly the order of the recurrence), else PoleError.
    """
    for a in fixed_weights:
        if 2 * a > d:
            raise PoleError(f"fixed weight {a} exceeds half the degree {d}")
    div = sorted(a for a in fixed_weights if d % a == 0)
    nondiv = sorted(a for a in fixed_weights if d % a)
    deg = sum(d - 2 * a for a in fixed_weights)
    top, peak = 0, 0
    for a in div:
        peak = max(peak, top + d - a)
        top += d - 2 * a
    length = max(peak, top + sum(d - a for a in nondiv)) + 1
    if length > max_series:
        raise BudgetExceeded(f"series of length {length} exceeds the budget {max_series}")
    dtype = np.int64 if _series_bound(d, fixed_weights) < _INT64_SAFE else object
    buf = np.zeros(length, dtype=dtype)
    buf[0] = 1
    top = 0  # current degree

    def mul(e):
        nonlocal top
        if e == 0:
            buf[:top + 1] = 0
            top = 0
            return
        src = buf[:top + 1].copy()
        buf[e:e + top + 1] -= src
        top += e

    def div_by(a, upto):
        # in-place q_k = c_k + q_{k-a} over buf[:upto]
        seg = buf[:upto]
        rows = upto // a
        if rows:
            main = seg[:rows * a].reshape(rows, a)
            np.cumsum(main, axis=0, out=main)
            rest = upto - rows * a
            if rest and rows:
                seg[rows * a:] += seg[(rows - 1) * a:(rows - 1) * a + rest]

    for a in div:
        mul(d - a)
        div_by(a, top + 1)
        if np.any(buf[top - a + 1:top + 1] != 0):
            raise PoleError(f"(1 - u^{d - a}) / (1 - u^{a}) did not divide exactly")
        top -= a
    for a in nondiv:
        mul(d - a)
    for a in nondiv:
        div_by(a, top + 1)
    if nondiv:
        if np.any(buf[deg + 1:top + 1] != 0):
            raise PoleError(f"fixed-coordinate factors with weights {nondiv} leave a pole")
        top = deg
    return buf[:deg + 1], deg


def _masks(ws: WeightSystem, chunk: int):
    """Fixed-coordinate bitmask for every l in [0, d)."""
    d = ws.degree
    a = np.array(ws.weights, dtype=np.int64)
    bits = np.int64(1) << np.arange(len(a), dtype=np.int64)
    out = np.empty(d, dtype=np.int64)
    for start in range(0, d, chunk):
        ell = np.arange(start, min(d, start + chunk), dtype=np.int64)
        fixed = (ell[:, None] * a[None, :]) % d == 0
        out[start:start + len(ell)] = fixed.astype(np.int64) @ bits
    return out


def diamond(ws: WeightSystem, orientation: str = "of-X", *, max_series: int = DEFAULT_MAX_SERIES,
            chunk: int = 1 << 18) -> HodgeDiamond:
    """Orbifold Hodge diamond of X (or of its mirror) from the l-sum."""
    if orientation not in ORIENTATIONS:
        raise InputError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
    if not is_calabi_yau(ws):
        raise InputError(f"not Calabi-Yau: weights sum to {sum(ws.weights)}, degree {ws.degree}")
    d, n = ws.degree, ws.dimension
    weights = ws.weights
    if d * max(weights) >= _INT64_SAFE or len(weights) > 62:
        raise BudgetExceeded(f"degree {d} is too large for the l-sum")
    if d > max_series:
        raise BudgetExceeded(f"degree {d} exceeds the series budget {max_series}")
    a = np.array(weights, dtype=np.int64)
    N = len(weights)

    table = [[0] * (n + 1) for _ in range(n + 1)]
    masks = _masks(ws, chunk)
    order = np.argsort(masks, kind="stable")
    sorted_masks = masks[order]
    uniq, starts = np.unique(sorted_masks, return_index=True)
    bounds = list(starts) + [d]
    del masks, sorted_masks

    for g, mask in enumerate(uniq.tolist()):
        ells_all = order[bounds[g]:bounds[g + 1]]
        fixed_w = [weights[i] for i in range(N) if mask >> i & 1]
        F, deg = _fixed_series(d, fixed_w, max_series)
        is_obj = F.dtype == object
        fmax = int(np.max(np.abs(F))) if F.size else 0
        for start in range(0, len(ells_all), chunk):
            ell = ells_all[start:start + chunk].astype(np.int64)
            th = (ell[:, None] * a[None, :]) % d
            moving = th != 0
            A = np.where(moving, th - a[None, :], 0).sum(axis=1)
            B = np.where(moving, d - th - a[None, :], 0).sum(axis=1)
            if np.any((A - B) % d):
                raise InputError("x and y exponents disagree mod d; weights are not Calabi-Yau")
            k0 = (-A) % d
            acc_obj = is_obj or fmax * len(ell) >= _INT64_SAFE
            tab = np.zeros((n + 1) * (n + 1), dtype=object if acc_obj else np.int64)
            for t in range(n + 1):
                k = k0 + t * d
                ok = k <= deg
                if not np.any(ok):
                    continue
                kk = k[ok]
                coef = F[kk]
                nz = coef != 0
                if not np.any(nz):
                    continue
                kk, coef = kk[nz], coef[nz]
                p = (A[ok][nz] + kk) // d
                q = (B[ok][nz] + kk) // d
                if np.any((p < 0) | (p > n) | (q < 0) | (q > n)):
                    raise InputError("a term lands outside the diamond; input is not a quasi-smooth CY")
                np.add.at(tab, p * (n + 1) + q, coef)
            for idx in np.nonzero(tab)[0].tolist():
                table[idx // (n + 1)][idx % (n + 1)] += int(tab[idx])
        del F

    if any(v < 0 for row in table for v in row):
        raise ArithmeticError("negative Hodge number")
    mirror = HodgeDiamond(n, {(p, q): table[p][q] for p in range(n + 1) for q in range(n + 1)}, "of-mirror")
    return mirror.oriented(orientation)


def euler(d: HodgeDiamond) -> int:
    return d.euler()


def middle_dim(ws: WeightSystem, **diamond_kwargs) -> int:
    """dim H^n_orb(X) for odd n.

    Under the vanishing hypotheses the whole middle cohomology comes from
    l = 0, so it is S_0 / d; otherwise it is read off the diamond.
    """
    n = ws.dimension
    if n % 2 == 0:
        raise InputError("middle_dim is defined here for odd dimension only")
    if vanishing_hypotheses(ws) and is_calabi_yau(ws):
        S0 = s_ell(ws, 0)
        if S0 % ws.degree:
            raise ArithmeticError("S_0 is not divisible by d")
        return S0 // ws.degree
    return diamond(ws, "of-X", **diamond_kwargs).betti(n)
