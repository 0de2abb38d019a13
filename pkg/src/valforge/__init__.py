"""valforge: exact-arithmetic valuations on algebras, adapted bases, and
canonical bijections between valuation semigroups.

Everything is pure and immutable after construction; independent queries are
safe to evaluate in parallel.
"""

from .coefficients import QHalf, QQ, QV
from .orderkeys import (DegLexOrder, LexOrder, OrderKey, WeightOrder,
                        WordDegLexOrder)
from .algebra import (Element, FreeAlgebra, PolynomialRing, Presentation,
                      SemigroupAlgebra, parse_polynomial)
from .groebner import GroebnerBasis, RewriteSystem, groebner, normal_form
from .semigroups import (UNDEFINED, AxiomReport, CoverSemigroup,
                         FinitePresentedSemigroup, FreeWordMonoid,
                         IntegerVectorMonoid, KeyVectorMonoid, MatrixGroupoid,
                         OrderedPartialSemigroup, ProductSemigroup,
                         QuantumCone, QuiverPathSemigroup, check_axioms,
                         coideal_of_projection, is_defined, nil_coxeter_w0,
                         universal_cover, well_ordered_submonoid)
from .valuations import (AdaptedBasis, CoordinateValuation, DecoratedValue,
                         StringOperatorFamily, Valuation, injectivity_check,
                         pushforward, quotient_valuation, restrict,
                         ring_monomials, standard_monomial_basis,
                         string_valuation, tame, tautological, tensor,
                         test_generators)
from .jordan_holder import (JHTable, PiecewiseMonoidalRep,
                            check_mutual_inverse, check_submultiplicative,
                            jh_table, jh_value, pmr_build, symplecto_check)
from .quantum import (A2Data, A3Data, DualCanonicalElement, PBWAlgebra,
                      QuantumCell, QuantumPlaneRing, ReducedWord,
                      SkewDerivation, dual_canonical, feigin, nu_lower,
                      nu_upper, q_derivative, quantum_plane_derivation)
from .tropical import (NewtonPolytope, SaturationCertificate, Subplane,
                       is_prop, newton_polytope, primitive_pairs,
                       saturation_check, tropical_valuation)
from .puiseux import (CurveModuleBasis, CurveValuation, PuiseuxBranch,
                      puiseux_expand, reduce_module_basis, root_classes)

__version__ = "0.1.0"
