"""From a tropical edge to a quotient valuation, and from a plane curve to
its adapted basis via fractional-power expansions.

Part 1: the surface z = y^3 - x^2 has a Newton-polytope edge through
(2,0,0)-(0,3,0).  The line through that edge is positivity-compatible and the
ideal is saturated along it, so projecting leading exponents along the line
yields an injective well-ordered valuation of the quotient ring.

Part 2: the sextic (y^2 - x)^3 = 8 x^2 fails that construction (its relevant
edge is not primitive), but expanding its branches in descending fractional
powers still produces an injective valuation: reduce the module basis until
all orders differ mod 1 and multiply by powers of x.
"""

from fractions import Fraction

from valforge import (LexOrder, OrderKey, PolynomialRing, QQ, Subplane,
                      is_prop, newton_polytope, primitive_pairs,
                      reduce_module_basis, root_classes, saturation_check,
                      tropical_valuation)
from valforge.puiseux import CurveValuation, puiseux_expand

R = PolynomialRing(QQ, ["x", "y", "z"], LexOrder(3))
x, y, z = R.gens()
f = z - y**3 + x**2

print("Newton polytope of z - y^3 + x^2:", newton_polytope(f).vertices)
H = Subplane([(2, -3, 0)])
print("edge line is positivity-compatible:", is_prop(H))
print("finite saturation test set:", primitive_pairs(H))
cert = saturation_check([f], H)
print("saturated:", cert.saturated,
      " witness normal:", cert.witnesses[0].normal)

weights = [OrderKey((3, 0)), OrderKey((2, 0)), OrderKey((1, 1))]
nu = tropical_valuation([f], H, weights)
print("\nquotient valuation values (y^k z^l -> (2k, l)):")
for k, l in [(0, 0), (1, 0), (0, 1), (2, 3)]:
    print("  nu(y^%d z^%d) = %s    nu(x y^%d z^%d) = %s"
          % (k, l, nu.evaluate(y**k * z**l),
             k, l, nu.evaluate(x * y**k * z**l)))

print("\n--- the sextic curve ---")
R2 = PolynomialRing(QQ, ["x", "y"], LexOrder(2))
x2, y2 = R2.gens()
g = (y2**2 - x2) ** 3 - 8 * x2**2
branches, irrational = puiseux_expand(g, terms=5)
b = branches[0]
print("one branch class of ramification %d:" % b.e)
print("  Y =", " + ".join("%s x^(%s)" % (c, e) for e, c in b.terms[:4]), "+ ...")
print("root classes:", root_classes(g))

cv = CurveValuation(g)
a = y2**2 - x2
print("orders: ord(x) = %s, ord(y) = %s, ord(y^2 - x) = %s"
      % (cv.ord(x2), cv.ord(y2), cv.ord(a)))

mb = reduce_module_basis(g)
print("reduced module basis orders:", [str(o) for o in mb.orders])
print("pairwise distinct mod 1:", sorted(str(o) for o in mb.orders_mod_1()))
print("adapted basis of the curve algebra: {s_i x^j} for s_i in")
for el in mb.elements:
    print("   ", el)
