"""Partial semigroups as valuation targets: axioms, covers, and projections.

Matrix units compose by (i,j)(j,l) = (i,l) and nothing else; that partial
composition carries total orders satisfying all the compatibility axioms,
including the strict one.  The rank-2 nil-Coxeter semigroup is the standard
counterexample: it is orderable but never strictly.  Every finitely generated
partial semigroup is covered by its admissible generator sequences, and every
projection from an ordered semigroup carves out the partial semigroup of
fiber-minimal elements.
"""

from valforge import (FreeWordMonoid, MatrixGroupoid, WordDegLexOrder,
                      check_axioms, coideal_of_projection, nil_coxeter_w0,
                      universal_cover, well_ordered_submonoid)

M3 = MatrixGroupoid(3, "i")
print("M3 composition: (1,2)(2,3) =", M3.compose((1, 2), (2, 3)),
      "   (1,2)(1,3) =", M3.compose((1, 2), (1, 3)))
rep = check_axioms(M3, 10)
print("M3 axioms: associativity=%s order=%s strict=%s"
      % (rep.associativity, rep.order_compat, rep.strict_property))

W = nil_coxeter_w0(3)
repw = check_axioms(W, 10)
print("\nnil-Coxeter W(3): associativity=%s order=%s strict=%s"
      % (repw.associativity, repw.order_compat, repw.strict_property))
print("  strict-property witness:", repw.strict_witness)

cover, project = universal_cover(W, [("c", 1), ("d", 1)])
seqs = cover.enumerate(50, max_length=3)
print("  universal cover has %d admissible sequences (ordered: %s)"
      % (len(seqs), cover.ordered))

print("\nfiber-minimal elements of the free monoid over the dihedral group:")


def dihedral_image():
    def mul(p, q):
        return tuple(p[q[i]] for i in range(3))
    s, t = (1, 0, 2), (0, 2, 1)

    def image(word):
        acc = (0, 1, 2)
        for g in word:
            acc = mul(acc, (s, t)[g])
        return acc
    return image


F = FreeWordMonoid(["s", "t"], WordDegLexOrder(2, priority=[0, 1]))
table = coideal_of_projection(F, dihedral_image(), 120)
print(" ", sorted("".join("st"[g] for g in w) or "1" for w in table.elements))

print("\nlex well-orderedness of integer submonoids:")
for gens in ([(1, 0), (0, 1)], [(1, -1), (0, 1)], [(0, -1)]):
    res = well_ordered_submonoid(gens, search_bound=4)
    if res.kind == "well_ordered":
        print("  %r -> well-ordered, level witnesses %s"
              % (gens, res.dual_vectors))
    else:
        print("  %r -> descending chain %s ..." % (gens, res.chain[:3]))
