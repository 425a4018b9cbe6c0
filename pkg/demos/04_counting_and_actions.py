# Root-of-unity sums and diagonal group actions.
#
# Run: python demos/04_counting_and_actions.py

from sylvester_cy.families import K3_FIXTURES, x1_group_action, x1_potential_monomials
from sylvester_cy.hodge import counting_sum, f_c, s_ell
from sylvester_cy.wps import DiagonalAction, WeightSystem, action_preserves

# sum over j of prod f_c(j) vanishes for pairwise coprime c's
print("f_2 on 0..5:", [f_c(2, j) for j in range(6)])
for C, d in [({2}, 2), ({2, 3, 7}, 42), ({4, 9, 5}, 180)]:
    print(f"sum for C={sorted(C)}, d={d}: {counting_sum(C, d)}")

# so only l = 0 and l with nothing fixed survive in the Betti sum of X_2
ws = WeightSystem((3, 2, 1), 6)
print("S_l for the sextic curve in P(3,2,1):", [s_ell(ws, ell) for ell in range(6)])

# mu_m acting on X_1 preserves its equation
for n in (2, 3, 4):
    g = x1_group_action(n)
    print(f"X_1 in dimension {n}: mu_{g.order} with exponents {g.exponents}:",
          action_preserves(x1_potential_monomials(n), g))

for name, fx in K3_FIXTURES.items():
    g = DiagonalAction(fx["order"], fx["exponents"])
    print(f"K3 {name} in P{fx['weights']}: order {g.order} preserved:", action_preserves(fx["monomials"], g))
