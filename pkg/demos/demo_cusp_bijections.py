"""Three valuations of one plane, and the canonical bijections between them.

The plane Q[x,y] can be presented as Q[x,y,z]/(z + x^2 + y^3).  Each edge of
the relation's Newton triangle induces an injective well-ordered valuation:
two of them are plain leading-monomial valuations (lex with x or y dominant),
the third reads off exponents in the basis {x^e y^i (x^2+y^3)^j}.  Pairs of
injective valuations always get a canonical bijection between their value
sets: the minimum of one valuation over the fibers of the other.  This script
tabulates those bijections and checks the striking closed forms they satisfy.
"""

from valforge import (CoordinateValuation, IntegerVectorMonoid, LexOrder,
                      PolynomialRing, QQ, check_submultiplicative, groebner,
                      jh_table, normal_form)

R = PolynomialRing(QQ, ["x", "y"], LexOrder(2, priority=[0, 1]))
x, y = R.gens()

# nu_y: lex leading exponent with x dominant, values (x-exp, y-exp)
nu_y = CoordinateValuation(R, IntegerVectorMonoid(2, LexOrder(2)),
                           lambda f: f, lambda m: m,
                           injective=True, well_ordered=True)

# nu_z: rewrite x^2 -> w - y^3 and read exponents of x^e y^i w^j
C = PolynomialRing(QQ, ["x", "y", "w"], LexOrder(3, priority=[0, 2, 1]))
cx, cy, cw = C.gens()
gb = groebner([cx**2 + cy**3 - cw])
nu_z = CoordinateValuation(
    R, IntegerVectorMonoid(2, LexOrder(2)),
    lambda f: normal_form(R.substituted(f, [cx, cy], C), gb),
    lambda m: (2 * m[1] + 3 * m[0], m[2]),
    injective=True, well_ordered=True)

print("values of the generators:")
for name, el in (("x", x), ("y", y), ("x^2+y^3", x**2 + y**3)):
    print("  nu_y(%-7s) = %-8s nu_z(%-7s) = %s"
          % (name, nu_y.evaluate(el), name, nu_z.evaluate(el)))

print("\nbuilding the bijection K from nu_y-values to nu_z-values ...")
# the slice must cover the minimizing representatives: a value (p, q) has a
# representative of y-degree q + 3*(p//2)
monos = [x**p * y**q for p in range(10) for q in range(28)]
table = jh_table(nu_y, nu_z, monos)

print("it satisfies K(2j, i) = (2i, j) and K(2j+1, i) = (2i+3, j):")
lookup = {e.value: e for e in table.entries}
for a in [(0, 1), (2, 0), (2, 3), (3, 1), (5, 2)]:
    e = lookup[a]
    print("  K%-8s = %-8s   common-basis representative: %s"
          % (a, e.image, e.representative))

print("\nevery representative is simultaneously adapted to both valuations:")
e = lookup[(4, 1)]
print("  b = %s" % e.representative)
print("  nu_y(b) = %s   nu_z(b) = %s" % (nu_y.evaluate(e.representative),
                                         nu_z.evaluate(e.representative)))

import dataclasses

Py = IntegerVectorMonoid(2, LexOrder(2))
Pz = IntegerVectorMonoid(2, LexOrder(2))
trusted = dataclasses.replace(
    table, entries=[e for e in table.entries if max(e.value) <= 8])
report = check_submultiplicative(trusted, Py, Pz)
print("\nsub-multiplicativity: K(a + a') <= K(a) + K(a') on %d pairs, "
      "%d strict" % (report.checked, len(report.strict_pairs)))
assert report.holds()
