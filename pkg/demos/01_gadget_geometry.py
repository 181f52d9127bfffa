"""
The point gadget of a two-variable instance
===========================================

Build the k-Center point set for two adjacent grid variables and look at the
distances that make the construction work.  Everything is exact: coordinates
are Fractions and distances are compared squared.
"""

# %%
from fractions import Fraction

from kcenter_gap.corpus import S1
from kcenter_gap.exact_geometry import squared_distance
from kcenter_gap.gap_verifier import verify_lemmas
from kcenter_gap.reduction import Border, Core, Secondary, build, label_str

kc = build(S1)
print(f"n = {len(kc)} points, k = {kc.k}, r = {kc.params.r}, eps = {kc.params.epsilon}")
for label, p in zip(kc.labels, kc.points):
    print(f"  {label_str(label):>22}  {[str(c) for c in p]}")

# %%
# The two border points of a variable along one axis sit exactly 2r(1+eps)
# apart, and exactly r(1+eps) away from the variable itself.
index = kc.index()
plus = kc.points[index[Border((1, 1), 1, 1)]]
minus = kc.points[index[Border((1, 1), 1, -1)]]
print("dist^2(B+1, B-1) =", squared_distance(plus, minus),
      " (2r(1+eps))^2 =", kc.params.gap_threshold_sq)
anchor = (Fraction(1), Fraction(1))
print("dist^2(a, B+1)   =", squared_distance(anchor, plus),
      " (r(1+eps))^2  =", (kc.params.r * (1 + kc.params.epsilon)) ** 2)

# %%
# The secondary point between the two variables is within 2r of the core
# points: the single >= constraint 1 >= 1 holds.
s = kc.points[index[Secondary((1, 1), (2, 1), 1)]]
for a in S1.variables:
    c = kc.points[index[Core(a, (1, 1))]]
    print(f"dist^2(C_{a}, S) = {squared_distance(c, s)}  < (2r)^2 = {kc.params.threshold_sq}")

# %%
# The full lemma scan.  With d = 2 and delta = 1 the secondary point is also
# close to the border points on the other axis, so the isolation check fails
# with a concrete witness while everything else holds.
print(verify_lemmas(kc, "S1").to_text())
