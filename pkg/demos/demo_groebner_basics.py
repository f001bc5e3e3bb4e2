"""Walkthrough: polynomials, Groebner bases and ideal membership.

Run with: python3 demos/demo_groebner_basics.py
"""

from cmlink import GREVLEX, Ideal, LEX, Ring, ideal_codim, ideal_colon

ring = Ring(("x", "y", "z"))

# The ideal of the monomial curve t -> (t^3, t^4, t^5).
curve = Ideal.from_strings(ring, ["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2"])

print("generators:")
for g in curve.gens:
    print("  ", g)

print("\nreduced Groebner basis (grevlex):")
for g in curve.groebner_basis(GREVLEX):
    print("  ", g)

print("\nreduced Groebner basis (lex):")
for g in curve.groebner_basis(LEX):
    print("  ", g)

probe = ring.poly("x^4 - x*y*z")
print(f"\nis {probe} in the ideal?", curve.contains(probe))
print("is x in the ideal?", curve.contains(ring.poly("x")))

print("\ncodimension of the curve ideal:", ideal_codim(curve))

# Colon ideals: (xy, xz) : (x) = (y, z).
I = Ideal.from_strings(ring, ["x*y", "x*z"])
J = Ideal.from_strings(ring, ["x"])
print("\n(xy, xz) : (x) =", ideal_colon(I, J))
