"""Walkthrough: the Weierstrass/Euclid pipeline for a codim-2 complete intersection.

Starting from (f1, f2), a linear change of coordinates makes f1 a unit times
a Weierstrass polynomial P1 in the first variable; the extended Euclidean
algorithm of P1 and f2 in that variable yields a last remainder r2 free of it,
which after a second change is a unit times a Weierstrass polynomial P2 in
the second variable.  The degrees N1, N2 and the Bezout cofactors a, b with
r2 = a f1 + b f2 are exactly the symbolic data needed to write down the
elementary residue currents for the pair.

Run with: python3 demos/demo_current_recipe.py
"""

from cmlink import Ring, current_recipe

ring = Ring(("x", "y", "z"))
f1 = ring.poly("z^2 - x^2*y")
f2 = ring.poly("x^4 - 2*x*y*z + y^3")

rec = current_recipe(f1, f2)

print("working ring:", rec.ring.header())
print("coordinate change rows (old var i = sum of row * new vars):")
for row in rec.change.matrix:
    print("  ", [str(v) for v in row])

print("\ng1 =", rec.g1)
print("P1 =", rec.p1, f"   (Weierstrass degree N1 = {rec.n1})")
print("\nr2 =", rec.r2)
print("P2 degree N2 =", rec.n2)

print("\nBezout identity r2 = a*g1 + b*g2 holds:",
      rec.a * rec.g1 + rec.b * rec.g2 == rec.r2)
print("r2 free of the first variable:", not rec.r2.involves(0))

print(f"\ngamma = {rec.gamma}, C1 = {rec.c1}, C2 = {rec.c2}")
print("Sylvester determinant / r2 (audit):", rec.sylvester_ratio)
