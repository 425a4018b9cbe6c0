"""Invertible potentials: exponent matrices, symmetry orders and the BHK transpose.

A potential is stored as its square exponent matrix, one row per monomial.
Every invertible potential is, up to relabelling, a sum of Fermat monomials
x^b, chains x_1^{b_1}x_2 + ... + x_k^{b_k} and loops
x_1^{b_1}x_2 + ... + x_k^{b_k}x_1.  When the matrix decomposes that way the
determinant, charges and transposed charges come from linear recurrences
along each block, which stays cheap even when the exponents have hundreds of
millions of digits.  Anything else falls back to fraction-free elimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import gmpy2

from . import arith
from .exceptions import InputError, SingularMatrixError
from .wps import WeightSystem

__all__ = [
    "Block",
    "InvertiblePotential",
    "SymmetryData",
    "FreenessResult",
    "fermat",
    "loop",
    "chain",
    "block_sum",
    "classify",
    "gamma",
    "charges",
    "degree_from_charges",
    "transpose",
    "transpose_degree",
    "faithfulness",
    "loop_closed_forms",
    "free_in_codim1",
    "DEFAULT_ENUMERATION_BUDGET",
]

DEFAULT_ENUMERATION_BUDGET = 200_000


@dataclass(frozen=True)
class Block:
    """One indecomposable summand.

    ``variables`` lists column indices in cycle/chain order and ``exponents``
    the matching leading exponents: for a loop the rows read
    x_{v_k}^{b_k} x_{v_{k+1}} with indices taken cyclically.  For a chain the
    last variable carries a pure power.
    """

    kind: str  # "fermat", "chain" or "loop"
    variables: tuple[int, ...]
    exponents: tuple[int, ...]


@dataclass(frozen=True)
class InvertiblePotential:
    matrix: tuple[tuple[int, ...], ...]
    weights: WeightSystem | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InputError("exponent matrix must be square and nonempty")
        if any(x < 0 for r in rows for x in r):
            raise InputError("exponents must be nonnegative")
        object.__setattr__(self, "matrix", rows)
        if self.weights is not None:
            if len(self.weights.weights) != n:
                raise InputError(
                    f"{n} variables but {len(self.weights.weights)} weights attached"
                )
            bad = [i for i, row in enumerate(rows) if _row_degree(row, self.weights.weights) != self.weights.degree]
            if bad:
                raise InputError(f"monomials {bad} are not of weighted degree {self.weights.degree}")
        if gamma(self) == 0:
            raise SingularMatrixError("exponent matrix is singular")

    @property
    def nvars(self) -> int:
        return len(self.matrix)

    @property
    def blocks(self) -> tuple[Block, ...] | None:
        """Fermat/chain/loop decomposition, or None if the matrix has another shape."""
        if "blocks" not in self._cache:
            self._cache["blocks"] = classify(self.matrix)
        return self._cache["blocks"]

    def monomials(self) -> list[tuple[int, ...]]:
        return [tuple(r) for r in self.matrix]

    def to_json(self) -> dict:
        out = {
            "variables": self.nvars,
            "monomials": [[str(x) for x in row] for row in self.matrix],
            "weights": None,
            "degree": None,
        }
        if self.weights is not None:
            out["weights"] = [str(a) for a in self.weights.weights]
            out["degree"] = str(self.weights.degree)
        return out


@dataclass(frozen=True)
class SymmetryData:
    gamma: int
    charges: tuple[Fraction, ...] | None
    degree: int
    transpose_degree: int
    sl_order: int
    faithful: bool


@dataclass(frozen=True)
class FreenessResult:
    """Outcome of the codimension-one freeness test.

    ``verdict`` is True, False or None (undecided); ``reason`` says which
    argument produced it.
    """

    verdict: bool | None
    reason: str
    group_order: int | None = None
    witness: int | None = None

    def __bool__(self):
        return self.verdict is True


def _row_degree(row, weights) -> int:
    acc = gmpy2.mpz(0)
    for e, a in zip(row, weights):
        if e:
            acc += gmpy2.mpz(e) * a
    return int(acc)


# -- constructors ---------------------------------------------------------------


def fermat(exponents: Sequence[int], weights: WeightSystem | None = None) -> InvertiblePotential:
    n = len(exponents)
    return InvertiblePotential(
        tuple(tuple(int(exponents[i]) if i == j else 0 for j in range(n)) for i in range(n)),
        weights,
    )


def loop(exponents: Sequence[int], weights: WeightSystem | None = None) -> InvertiblePotential:
    """Canonical loop x_1^{b_1}x_2 + ... + x_n^{b_n}x_1."""
    n = len(exponents)
    if n < 2:
        raise InputError("a loop needs at least two variables")
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = int(exponents[i])
        row[(i + 1) % n] += 1
        rows.append(tuple(row))
    return InvertiblePotential(tuple(rows), weights)


def chain(exponents: Sequence[int], weights: WeightSystem | None = None) -> InvertiblePotential:
    """x_1^{b_1}x_2 + ... + x_{n-1}^{b_{n-1}}x_n + x_n^{b_n}."""
    n = len(exponents)
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = int(exponents[i])
        if i + 1 < n:
            row[i + 1] = 1
        rows.append(tuple(row))
    return InvertiblePotential(tuple(rows), weights)


def block_sum(*parts: InvertiblePotential, weights: WeightSystem | None = None) -> InvertiblePotential:
    """Direct sum in separate variables, in the order given."""
    n = sum(p.nvars for p in parts)
    rows = []
    offset = 0
    for p in parts:
        for r in p.matrix:
            row = [0] * n
            row[offset:offset + p.nvars] = r
            rows.append(tuple(row))
        offset += p.nvars
    return InvertiblePotential(tuple(rows), weights)


# -- classification -------------------------------------------------------------


def classify(matrix: Sequence[Sequence[int]]) -> tuple[Block, ...] | None:
    """Split an exponent matrix into Fermat, chain and loop blocks.

    Each row must be x_i^{b} or x_i^{b} x_j with b >= 2, every variable must
    lead exactly one row, and every variable may be the linear factor of at
    most one row.  Returns None when the matrix does not have this shape.
    """
    n = len(matrix)
    lead = {}
    succ = {}
    for row in matrix:
        nz = [(j, int(e)) for j, e in enumerate(row) if e]
        if len(nz) == 1:
            (i, b), = nz
            nxt = None
        elif len(nz) == 2:
            big = [(j, e) for j, e in nz if e >= 2]
            ones = [(j, e) for j, e in nz if e == 1]
            if len(big) != 1 or len(ones) != 1:
                return None
            (i, b), = big
            nxt = ones[0][0]
        else:
            return None
        if b < 2 or i in lead:
            return None
        lead[i] = b
        succ[i] = nxt
    if len(lead) != n:
        return None
    pred = {}
    for i, j in succ.items():
        if j is None:
            continue
        if j in pred:
            return None
        pred[j] = i

    blocks = []
    seen = set()
    # chains and Fermat terms: start at variables nobody points to
    for i in range(n):
        if i in pred:
            continue
        path = [i]
        while succ[path[-1]] is not None:
            path.append(succ[path[-1]])
        seen.update(path)
        kind = "fermat" if len(path) == 1 else "chain"
        blocks.append(Block(kind, tuple(path), tuple(lead[v] for v in path)))
    for i in range(n):
        if i in seen:
            continue
        cyc = [i]
        while succ[cyc[-1]] != i:
            cyc.append(succ[cyc[-1]])
        seen.update(cyc)
        blocks.append(Block("loop", tuple(cyc), tuple(lead[v] for v in cyc)))
    return tuple(blocks)


# -- block recurrences ----------------------------------------------------------
#
# Charges solve A q = 1.  Along a block each row reads b_k q_k + q_{k+1} = 1,
# so q_{k+1} = 1 - b_k q_k.  For a loop, write q_k = c_k + e_k q_1 and close the
# cycle.  The transposed block has rows b_k q_k + q_{k-1} = 1, i.e. the same
# recurrence run backwards.  Integers only; the caller decides when to reduce.


def _prod(values) -> int:
    acc = gmpy2.mpz(1)
    for v in values:
        acc *= v
    return int(acc)


def _block_gamma(block: Block) -> int:
    p = _prod(block.exponents)
    if block.kind == "loop":
        return p + (1 if len(block.exponents) % 2 == 1 else -1)
    return p


def _loop_charge_numerators(bs: Sequence[int]):
    """Return (numerators, Gamma) with q_k = numerators[k] / Gamma for a canonical loop."""
    N = len(bs)
    b = [gmpy2.mpz(x) for x in bs]
    c = [gmpy2.mpz(0)]
    e = [gmpy2.mpz(1)]
    for k in range(N - 1):
        c.append(1 - b[k] * c[k])
        e.append(-b[k] * e[k])
    # q_1 = 1 - b_N q_N = 1 - b_N c_N - b_N e_N q_1
    den = 1 + b[-1] * e[-1]
    num = 1 - b[-1] * c[-1]
    g = abs(den)
    if den < 0:
        num = -num
    nums = [int(c[k] * g + e[k] * num) for k in range(N)]
    return nums, int(g)


def _loop_first_charge_numerator(bs: Sequence[int]):
    """Gamma * q_1 and Gamma for a canonical loop, via Horner from the end.

    This is the alternating sum (-1)^{N-1} + (-1)^{N-2} b_N + ... + b_2...b_N.
    """
    N = len(bs)
    acc = gmpy2.mpz(0)
    suffix = gmpy2.mpz(1)
    for j in range(N, 0, -1):  # j = N..1, term (-1)^{j-1} b_{j+1}...b_N
        acc += suffix if (j - 1) % 2 == 0 else -suffix
        if j > 1:
            suffix *= bs[j - 1]
    G = suffix * bs[0] + (1 if N % 2 == 1 else -1)
    return acc, G


def _loop_transpose_numerator(bs: Sequence[int]):
    """Gamma * q^T_N and Gamma: the alternating sum of prefix products b_1...b_{j-1}."""
    N = len(bs)
    acc = gmpy2.mpz(0)
    prefix = gmpy2.mpz(1)
    for j in range(1, N + 1):
        acc += prefix if (N - j) % 2 == 0 else -prefix
        prefix *= bs[j - 1]
    G = prefix + (1 if N % 2 == 1 else -1)
    return acc, G


def _block_degree(block: Block, transposed: bool, known_divisor: int | None = None) -> int:
    bs = block.exponents
    if block.kind == "fermat":
        return bs[0]
    if block.kind == "loop":
        # Every b_k is a unit mod Gamma, so all charge numerators share their
        # gcd with Gamma; one of them suffices.
        num, G = (_loop_transpose_numerator if transposed else _loop_first_charge_numerator)(bs)
        h = known_divisor
        if h and gmpy2.is_divisible(G, h) and gmpy2.is_divisible(num, h):
            # gcd(G, num) = h * gcd(G/h, num/h); smaller operands, same answer
            g = h * gmpy2.gcd(gmpy2.divexact(G, h), gmpy2.divexact(num, h))
        else:
            g = gmpy2.gcd(G, num)
        return int(gmpy2.divexact(G, g))
    # chain: q_last = 1/b_last, q_k = (1 - q_{k+1}) / b_k.  Its transpose runs
    # the same recurrence from the other end.
    seq = list(bs) if transposed else list(reversed(bs))
    num, den = gmpy2.mpz(1), gmpy2.mpz(seq[0])
    out = den
    for b in seq[1:]:
        num, den = den - num, den * b
        g = gmpy2.gcd(num, den)
        out = gmpy2.lcm(out, den // g)
    return int(out)


def _block_charges(block: Block) -> list[Fraction]:
    bs = block.exponents
    if block.kind == "fermat":
        return [Fraction(1, bs[0])]
    if block.kind == "loop":
        nums, G = _loop_charge_numerators(bs)
        return [Fraction(x, G) for x in nums]
    q = [Fraction(0)] * len(bs)
    q[-1] = Fraction(1, bs[-1])
    for k in range(len(bs) - 2, -1, -1):
        q[k] = (1 - q[k + 1]) / bs[k]
    return q


# -- public invariants ----------------------------------------------------------


def gamma(p: InvertiblePotential) -> int:
    """|det A|, the order of the diagonal symmetry group."""
    if "gamma" in p._cache:
        return p._cache["gamma"]
    blocks = p.blocks
    if blocks is not None:
        g = _prod(_block_gamma(b) for b in blocks)
    else:
        g = abs(arith.det(p.matrix))
    p._cache["gamma"] = g
    return g


def charges(p: InvertiblePotential) -> tuple[Fraction, ...]:
    """Row sums of A^{-1}: the unique q with A q = (1, ..., 1)."""
    if "charges" in p._cache:
        return p._cache["charges"]
    blocks = p.blocks
    if blocks is not None:
        q = [Fraction(0)] * p.nvars
        for blk in blocks:
            for v, c in zip(blk.variables, _block_charges(blk)):
                q[v] = c
        out = tuple(q)
    else:
        sol = arith.solve(p.matrix, [[1] for _ in range(p.nvars)])
        out = tuple(row[0] for row in sol)
    if p.weights is not None:
        d = p.weights.degree
        if any(q != Fraction(a, d) for q, a in zip(out, p.weights.weights)):
            raise InputError("charges disagree with the attached weights")
    p._cache["charges"] = out
    return out


def degree_from_charges(p: InvertiblePotential) -> int:
    """Order of the charge vector in (Q/Z)^n, the lcm of charge denominators."""
    if "degree" in p._cache:
        return p._cache["degree"]
    if p.weights is not None:
        # Construction checked A (a/d) = 1, so the charges are a_i/d exactly.
        d = gmpy2.mpz(p.weights.degree)
        g = d
        for a in sorted(p.weights.weights, key=int.bit_length):
            g = gmpy2.gcd(g, a)
            if g == 1:
                break
        out = int(d // g)
    elif p.blocks is not None:
        out = arith.lcm(_block_degree(b, transposed=False) for b in p.blocks)
    else:
        out = arith.denominator_lcm(charges(p))
    p._cache["degree"] = out
    return out


def transpose(p: InvertiblePotential) -> InvertiblePotential:
    """BHK transpose: the potential whose exponent matrix is A^T.

    Weights are not carried over; the transpose has its own charges.
    """
    n = p.nvars
    return InvertiblePotential(tuple(tuple(p.matrix[i][j] for i in range(n)) for j in range(n)))


def transpose_degree(p: InvertiblePotential, known_divisor: int | None = None) -> int:
    """d^T, the degree of the transposed potential.

    ``known_divisor`` is an optional guess at gcd(Gamma, Gamma q^T) for loop
    blocks; when it really divides both it is factored out before the gcd,
    which only changes the running time.
    """
    if "dT" in p._cache:
        return p._cache["dT"]
    if p.blocks is not None:
        out = arith.lcm(_block_degree(b, True, known_divisor) for b in p.blocks)
    else:
        out = degree_from_charges(transpose(p))
    p._cache["dT"] = out
    return out


def faithfulness(p: InvertiblePotential, with_charges: bool = True,
                 known_divisor: int | None = None) -> SymmetryData:
    """Symmetry orders and the purely non-symplectic test d * d^T == Gamma.

    ``with_charges=False`` skips building the charge Fractions, which matters
    only for potentials with enormous exponents.  ``known_divisor`` is passed
    to transpose_degree.
    """
    G = gmpy2.mpz(gamma(p))
    d = degree_from_charges(p)
    dT = transpose_degree(p, known_divisor)
    if not (gmpy2.is_divisible(G, d) and gmpy2.is_divisible(G, dT)):
        raise ArithmeticError("degree does not divide the symmetry group order")
    return SymmetryData(
        gamma=int(G),
        charges=charges(p) if with_charges else None,
        degree=d,
        transpose_degree=dT,
        sl_order=int(G // dT),
        faithful=gmpy2.mpz(d) * dT == G,
    )


def loop_closed_forms(b: Sequence[int]) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Last column and first row of the inverse of a canonical loop matrix.

    last column = ((-1)^{n-1}, (-1)^{n-2} b_1, ..., b_1...b_{n-1}) / Gamma
    first row   = (b_2...b_n, -b_3...b_n, ..., (-1)^{n-1}) / Gamma

    Both are checked against the matrix before returning.
    """
    n = len(b)
    if n < 2 or any(int(x) < 2 for x in b):
        raise InputError("loop exponents must number at least two and be >= 2")
    b = [int(x) for x in b]
    G = math.prod(b) + (-1) ** (n + 1)
    col = []
    prefix = 1
    for i in range(n):
        col.append(Fraction((-1) ** (n - 1 - i) * prefix, G))
        prefix *= b[i]
    row = []
    for j in range(n):
        row.append(Fraction((-1) ** j * math.prod(b[j + 1:]), G))
    # A v = e_n and w A = e_1, where A[i][i] = b_i and A[i][i+1] = 1
    for i in range(n):
        got = b[i] * col[i] + col[(i + 1) % n]
        if got != (1 if i == n - 1 else 0):
            raise ArithmeticError("loop column formula failed")
    for j in range(n):
        got = b[j] * row[j] + row[(j - 1) % n]
        if got != (1 if j == 0 else 0):
            raise ArithmeticError("loop row formula failed")
    return tuple(col), tuple(row)


# -- codimension-one freeness ---------------------------------------------------


def _solve_congruences(coeffs, rhs, mod) -> bool:
    """Is there an integer t with coeffs[j] * t == rhs[j] (mod mod) for all j?"""
    t0, m0 = 0, 1  # running solution t == t0 (mod m0)
    for a, r in zip(coeffs, rhs):
        h = math.gcd(a, mod)
        if r % h:
            return False
        m1 = mod // h
        t1 = (r // h) * pow(a // h, -1, m1) % m1
        g = math.gcd(m0, m1)
        if (t1 - t0) % g:
            return False
        k = (t1 - t0) // g * pow(m0 // g, -1, m1 // g) % (m1 // g)
        t0, m0 = t0 + m0 * k, m0 // g * m1
        t0 %= m0
    return True


def _codim1_strata(p: InvertiblePotential) -> list[tuple[int, ...]]:
    """Coordinate sets S whose vanishing locus meets X in a divisor.

    Singletons {i} with W not identically zero on x_i = 0, and pairs {i, j}
    with W identically zero on x_i = x_j = 0 (a linear space inside X).
    """
    n = p.nvars
    rows = p.matrix
    out = []
    for i in range(n):
        if any(r[i] == 0 for r in rows):
            out.append((i,))
    for i in range(n):
        for j in range(i + 1, n):
            if all(r[i] or r[j] for r in rows):
                out.append((i, j))
    return out


def _fixes_stratum(phases, weights, S, mod) -> bool:
    """Does the element with phases u_j/mod act trivially on {x_S = 0}?

    It does iff some theta has theta*a_j == u_j/mod (mod 1) for all j outside S.
    Writing theta = t/(mod*g) with g = gcd of those weights turns this into
    linear congruences in t modulo mod.
    """
    idx = [j for j in range(len(weights)) if j not in S]
    g = 0
    for j in idx:
        g = math.gcd(g, weights[j])
    return _solve_congruences([weights[j] // g for j in idx], [phases[j] for j in idx], mod)


def free_in_codim1(p: InvertiblePotential, budget: int = DEFAULT_ENUMERATION_BUDGET) -> FreenessResult:
    """Does the cyclic loop symmetry group act freely in codimension 1 on X?

    For a pure loop the group is Aut(W)/J of order Gamma/d.  For x_0^{b_0}
    plus a loop it is the subgroup of order Gamma_loop/d inside the image of
    the loop factor.  Loops with dim X >= 3 are free by a structural
    argument; otherwise every nontrivial element is tested against every
    codimension-one coordinate stratum, provided the order fits ``budget``.
    """
    if p.weights is None:
        raise InputError("free_in_codim1 needs attached weights")
    blocks = p.blocks
    dim = p.nvars - 2
    d = p.weights.degree
    weights = p.weights.weights
    if blocks is None:
        return FreenessResult(None, "unsupported: not a Fermat/chain/loop potential")
    loops = [b for b in blocks if b.kind == "loop"]
    others = [b for b in blocks if b.kind != "loop"]
    if len(loops) != 1 or len(others) > 1 or (others and others[0].kind != "fermat"):
        return FreenessResult(None, "unsupported: expected a loop or a Fermat term plus a loop")
    lp = loops[0]
    G_loop = _block_gamma(lp)
    if G_loop % d:
        raise ArithmeticError("degree does not divide the loop group order")
    order = G_loop // d
    if order == 1:
        return FreenessResult(True, "trivial group", 1)
    if dim >= 3:
        tag = "structural: loop, dim >= 3" if not others else "structural: Fermat plus loop, dim >= 3"
        return FreenessResult(True, tag, order)
    if order - 1 > budget:
        return FreenessResult(None, f"undecided: group order {order} exceeds budget {budget}", order)

    # generator: the loop column for the last variable, phases over G_loop
    N = len(lp.exponents)
    col = [0] * p.nvars
    prefix = 1
    for k in range(N):
        col[lp.variables[k]] = (-1) ** (N - 1 - k) * prefix
        prefix *= lp.exponents[k]
    # A^{-1} e_last has entries col/G_loop in cycle order; it generates the loop factor
    step = 1
    if others:
        a0 = weights[others[0].variables[0]]
        step = d // math.gcd(d, a0)
    mod = G_loop
    gen = [(c * step) % mod for c in col]
    strata = _codim1_strata(p)
    for k in range(1, order):
        phases = [(k * c) % mod for c in gen]
        if _fixes_stratum(phases, weights, (), mod):
            raise ArithmeticError(f"element {k} of a group of order {order} acts trivially")
        for S in strata:
            if _fixes_stratum(phases, weights, S, mod):
                return FreenessResult(False, f"element {k} fixes the stratum x_{S} = 0", order, k)
    return FreenessResult(True, "enumeration", order)
