# Sylvester's sequence and the indices it produces.
#
# Run: python demos/01_sylvester_and_indices.py

from fractions import Fraction

from sylvester_cy.arith import sylvester, sylvester_deficit
from sylvester_cy.families import klt_pair_large_index, mld_pair, terminal_index

# s_0 = 2, s_n = s_{n-1}(s_{n-1} - 1) + 1 grows doubly exponentially
s = [sylvester(n) for n in range(7)]
print("s_0..s_6:", s)

# the reciprocals fall short of 1 by exactly 1/(s_n - 1)
for n in range(1, 6):
    partial = sum(Fraction(1, x) for x in s[:n])
    print(f"  1 - (1/2 + ... + 1/s_{n - 1}) = {1 - partial} = {sylvester_deficit(n)}")

# indices of the extremal pairs and varieties
print("klt pair index, n=1..4:    ", [klt_pair_large_index(n).index for n in range(1, 5)])
print("terminal index, n=2..4:    ", [terminal_index(n) for n in range(2, 5)])
print("small mld pair, n=1..3:    ", [str(mld_pair(n).mld) for n in range(1, 4)])

pair = klt_pair_large_index(2)
print()
print(pair.name, "in P(" + ",".join(map(str, pair.ambient_weights)) + ")")
for label, deg, c in pair.components:
    print(f"  {c} * {label}, degree {deg}")
print("  K + D has degree", pair.balance())
