# Loop potentials with huge symmetry groups.
#
# For each dimension n the construction gives exponents b, weights a and a
# degree d such that a loop potential (x_i^{b_i} x_{next(i)}) is
# quasi-homogeneous, and the quotient by a cyclic group of order
# m = Gamma/d acts on the canonical form faithfully when d * d^T = Gamma.
#
# Run: python demos/03_loop_family.py [max dimension, default 20]

import sys
import time

from sylvester_cy.families import loop_family, verify_faithfulness_range
from sylvester_cy.potential import free_in_codim1

for n in (2, 3, 4):
    rec = loop_family(n)
    print(f"n={n}: b={rec.b} a={rec.a} d={rec.d} m={rec.m} d^T={rec.transpose_degree}")
    print("   checks:", rec.checks)
    print("   free in codimension 1:", free_in_codim1(rec.potential))

top = int(sys.argv[1]) if len(sys.argv) > 1 else 20
t0 = time.time()


def show(n, ok, m):
    print(f"  n={n:2d} faithful={ok}  m has {m.bit_length()} bits  ({time.time() - t0:.1f}s)")


print("\nfaithfulness sweep")
verify_faithfulness_range(top, progress=show, keep_m=False)
