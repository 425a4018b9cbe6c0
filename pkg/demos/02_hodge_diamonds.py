# Orbifold Hodge diamonds of the three extremal hypersurfaces.
#
# X_1 and X_3 are mirror to each other, X_2 is self-mirror, and all three
# share the same sum of Betti numbers.  Dimension 4 takes about half a
# minute, mostly for X_3 (degree 6521466).
#
# Run: python demos/02_hodge_diamonds.py [max dimension, default 3]

import sys
import time

from sylvester_cy.families import betti_sum_closed_form, family_x
from sylvester_cy.hodge import betti_sum, diamond
from sylvester_cy.wps import WeightSystem

top = int(sys.argv[1]) if len(sys.argv) > 1 else 3

for n in range(2, top + 1):
    print(f"=== dimension {n}: Betti sum 2(s_0-1)...(s_n-1) = {betti_sum_closed_form(n)}")
    for k in (1, 2, 3):
        ws, _ = family_x(k, n)
        t0 = time.time()
        D = diamond(ws)
        print(f"\nX_{k}: degree {ws.degree}, weights {ws.weights}  ({time.time() - t0:.2f}s)")
        print(D.render())
        print(f"euler {D.euler()}, total {D.total()}")

# the Betti sum does not need the diamond when every weight divides d
ws, _ = family_x(2, 6)
print(f"\nBetti sum of X_2 in dimension 6 (degree {ws.degree}): {betti_sum(ws)}")

# quasi-smooth but with h^{1,2} != 0: the vanishing is special to the families
print("\nX_12 in P(3,3,3,1,1,1):")
print(diamond(WeightSystem((3, 3, 3, 1, 1, 1), 12)).render())
