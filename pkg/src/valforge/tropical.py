"""Injective well-ordered valuations on quotient rings from common subplanes
of tropical varieties: Newton polytopes, the positivity (prop) test, the
saturation certificate, and the induced quotient valuation.

All geometry is exact: convex hulls and supporting hyperplanes go through
rational LP feasibility, lattice quotients through Smith normal form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Element, PolynomialRing, Presentation
from .groebner import groebner, normal_form
from .linalg import (kernel_lattice, lp_feasible, lp_feasible_mixed,
                     quotient_projection, solve_linear)
from .orderkeys import OrderKey, WeightOrder, key_dot
from .semigroups import IntegerVectorMonoid, KeyVectorMonoid
from .valuations import CoordinateValuation


@dataclass
class NewtonPolytope:
    vertices: list

    def __contains__(self, p):
        return tuple(p) in {tuple(v) for v in self.vertices}


def newton_polytope(f):
    """Exact convex-hull vertices of the support."""
    if not f:
        raise ValueError("the zero polynomial has no Newton polytope")
    pts = [tuple(m) for m in f.support()]
    verts = []
    for p in pts:
        others = [q for q in pts if q != p]
        if not others or not _in_hull(p, others):
            verts.append(p)
    verts.sort()
    return NewtonPolytope(verts)


def _in_hull(p, pts):
    """p in conv(pts), decided by LP feasibility."""
    n = len(p)
    A = [[Fraction(q[i]) for q in pts] for i in range(n)]
    A.append([Fraction(1)] * len(pts))
    b = [Fraction(x) for x in p] + [Fraction(1)]
    return lp_feasible(A, b, len(pts)) is not None


@dataclass
class Subplane:
    """Rational subplane through the origin, given by spanning vectors."""

    basis: list
    n: int = 0

    def __post_init__(self):
        self.basis = [tuple(Fraction(x) for x in v) for v in self.basis]
        if self.basis:
            self.n = len(self.basis[0])

    def lattice(self):
        """Basis of the saturated lattice H intersect Z^n."""
        # H = row space of basis; H cap Z^n = kernel of the normal matrix
        normals = _orthogonal_complement(self.basis, self.n)
        return kernel_lattice(normals) if normals else \
            [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]

    def contains(self, v):
        normals = _orthogonal_complement(self.basis, self.n)
        return all(sum(Fraction(r[i]) * v[i] for i in range(self.n)) == 0 for r in normals)


def _orthogonal_complement(vectors, n):
    """Integer basis of {y : y . v = 0 for all v}."""
    if not vectors:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    denoms = 1
    for v in vectors:
        for x in v:
            denoms = denoms * Fraction(x).denominator
    rows = [[int(Fraction(x) * denoms) for x in v] for v in vectors]
    return kernel_lattice(rows)


def is_prop(H: Subplane, n=None):
    """H0 meets the nonnegative orthant exactly in a coordinate face.

    Decided by exact LP: first the coordinates forced to vanish on
    H0 cap R_{>=0}^n, then whether the spanned face lies inside H0.
    """
    n = n or H.n
    normals = _orthogonal_complement(H.basis, n)
    zero_coords = []
    for i in range(n):
        # is there x >= 0 in H0 with x_i = 1?
        A = [[Fraction(r[j]) for j in range(n)] for r in normals]
        b = [Fraction(0)] * len(normals)
        A.append([Fraction(1 if j == i else 0) for j in range(n)])
        b.append(Fraction(1))
        if lp_feasible(A, b, n) is None:
            zero_coords.append(i)
    # the face {x_l = 0, l in zero_coords} must lie inside H0
    for i in range(n):
        if i in zero_coords:
            continue
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        if not H.contains(e):
            return False
    return True


@dataclass
class EdgeWitness:
    pair: tuple          # (u0, v0)
    polynomial: object   # element of the ideal with the edge on its roof
    normal: list         # supporting positive normal


@dataclass
class SaturationCertificate:
    subplane: Subplane
    primitive_pairs: list
    witnesses: list
    saturated: bool
    inconclusive: bool = False
    failures: list = field(default_factory=list)


def primitive_pairs(H: Subplane, bound=6):
    """The finite test set: minimal (u, v) in Z_{>=0}^{2n} with u - v in the
    lattice of H, reduced to primitive difference pairs with disjoint support.

    Enumeration is bounded; Gordan's lemma guarantees the true generating set
    is finite, and the bound is reported when it may have been exceeded.
    """
    lat = H.lattice()
    n = H.n
    dirs = set()
    rng = range(-bound, bound + 1)
    for coeffs in itertools.product(rng, repeat=len(lat)):
        w = tuple(sum(c * lat[k][i] for k, c in enumerate(coeffs)) for i in range(n))
        if all(x == 0 for x in w):
            continue
        g = 0
        for x in w:
            g = _gcd(g, abs(x))
        w = tuple(x // g for x in w)
        dirs.add(w)
    pairs = set()
    for w in dirs:
        u0 = tuple(max(x, 0) for x in w)
        v0 = tuple(max(-x, 0) for x in w)
        if max(max(u0), max(v0)) > bound:
            continue
        pairs.add((min(u0, v0), max(u0, v0)))
    return sorted(pairs)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def edge_on_roof(f, u0, v0):
    """A strictly positive normal supporting supp(f) from above along the
    edge (u0, v0), or None.  LP with c_i >= 1 after scaling."""
    pts = [tuple(m) for m in f.support()]
    if tuple(u0) not in pts or tuple(v0) not in pts:
        return None
    n = len(u0)
    # variables c' >= 0 with c = 1 + c'; constraints:
    #   c . (u0 - v0) = 0;  c . (p - u0) <= 0 for all support points p
    A_eq = [[Fraction(u0[i] - v0[i]) for i in range(n)]]
    b_eq = [-sum(Fraction(u0[i] - v0[i]) for i in range(n))]
    A_ub = []
    b_ub = []
    for p in pts:
        if p == tuple(u0) or p == tuple(v0):
            continue
        row = [Fraction(p[i] - u0[i]) for i in range(n)]
        A_ub.append(row)
        b_ub.append(-sum(row))
    sol = lp_feasible_mixed(A_eq, b_eq, A_ub, b_ub, n)
    if sol is None:
        return None
    return [1 + x for x in sol]


def saturation_check(ideal_generators, H: Subplane, degree_bound=4, pair_bound=6):
    """Edge witnesses for every primitive pair of the subplane.

    Witnesses are searched among monomial multiples of the generators up to
    the degree bound (the principal-ideal criterion is exactly this search
    applied to the single generator).
    """
    pairs = primitive_pairs(H, bound=pair_bound)
    ring = ideal_generators[0].ring
    witnesses = []
    failures = []
    candidates = list(_monomial_multiples(ideal_generators, degree_bound))
    for (u0, v0) in pairs:
        found = None
        for f in candidates:
            normal = edge_on_roof(f, u0, v0)
            if normal is not None:
                found = EdgeWitness((u0, v0), f, normal)
                break
        if found is None:
            failures.append((u0, v0))
        else:
            witnesses.append(found)
    return SaturationCertificate(H, pairs, witnesses,
                                 saturated=not failures, failures=failures)


def _monomial_multiples(gens, degree_bound):
    ring = gens[0].ring
    n = ring.n
    for g in gens:
        yield g
    for g in gens:
        gdeg = max(sum(m) for m in g.support())
        for extra in range(1, max(0, degree_bound - gdeg) + 1):
            for exps in itertools.product(range(extra + 1), repeat=n):
                if sum(exps) != extra:
                    continue
                yield Element(ring, {tuple(exps): ring.field.one}) * g


class PreconditionError(ValueError):
    pass


def tropical_valuation(ideal_generators, H: Subplane, weights,
                       degree_bound=4, force=False, extra_ideal=None,
                       projection=None):
    """The quotient valuation a -> phi(leading exponent of NF(a)).

    weights is the list of OrderKeys defining the order (one per variable);
    it must be constant on H-parallels.  Unless force is set, the prop and
    saturation preconditions are certified first.  extra_ideal extends the
    tropical subideal to a larger quotient; the image then becomes a coideal.

    projection, when given, fixes the quotient coordinates: integer rows that
    vanish on H and span the dual lattice (any two valid choices differ by a
    unimodular change of the value cone).
    """
    ring = ideal_generators[0].ring
    n = ring.n
    if not force:
        if not is_prop(H, n):
            raise PreconditionError("subplane is not prop")
        cert = saturation_check(ideal_generators, H, degree_bound)
        if not cert.saturated:
            raise PreconditionError("ideal is not saturated for this subplane: %r"
                                    % (cert.failures,))
        for g in ideal_generators:
            if not _weight_supports(g, weights):
                raise PreconditionError("weight vector is not in the extended "
                                        "tropical variety of generator %r" % (g,))
    else:
        cert = None
    for v in H.basis:
        s = None
        for j, k in enumerate(weights):
            term = k.scale(v[j])
            s = term if s is None else s + term
        if not s.is_zero():
            raise PreconditionError("weights do not vanish on differences along H")

    order = WeightOrder(weights, priority=list(range(n)))
    work_ring = PolynomialRing(ring.field, ring.names, order)

    def reorder(f):
        return Element(work_ring, dict(f.terms))

    all_gens = [reorder(g) for g in ideal_generators]
    if extra_ideal:
        all_gens += [reorder(g) for g in extra_ideal]
    gb = groebner(all_gens, work_ring)

    lat = H.lattice()
    if projection is not None:
        project, section, rank = _explicit_projection(projection, H, n)
    else:
        project, section, rank = quotient_projection(lat, n)
        project, section = _orient_positive(project, section, rank, n)

    codomain = _QuotientCone(rank, weights, section)

    def transform(f):
        return normal_form(reorder(f), gb)

    nu = CoordinateValuation(ring, codomain, transform,
                             lambda m: project(m),
                             injective=True, well_ordered=True)
    nu.certificate = cert
    nu.projection = project
    nu.section = section
    nu.groebner_basis = gb
    return nu


def _orient_positive(project, section, rank, n):
    """Flip quotient coordinates so the positive orthant maps to mostly
    nonnegative values (a cosmetic unimodular normalization)."""
    ones = tuple(1 for _ in range(n))
    img = project(ones)
    signs = [-1 if c < 0 else 1 for c in img]

    def project2(x):
        return tuple(s * c for s, c in zip(signs, project(x)))

    def section2(c):
        return section(tuple(s * x for s, x in zip(signs, c)))

    return project2, section2


def _explicit_projection(rows, H: Subplane, n):
    """Validate user quotient coordinates: rows vanish on H and the map is
    onto Z^rank (all elementary divisors 1)."""
    from .linalg import smith_normal_form
    rows = [tuple(int(x) for x in r) for r in rows]
    rank = len(rows)
    for h in H.basis:
        for r in rows:
            if sum(Fraction(r[i]) * h[i] for i in range(n)) != 0:
                raise PreconditionError("projection row %r does not vanish on H" % (r,))
    M = [list(r) for r in rows]
    U, S, V = smith_normal_form(M)
    for i in range(rank):
        if abs(S[i][i]) != 1:
            raise PreconditionError("projection is not onto Z^%d" % rank)

    def project(x):
        return tuple(sum(r[i] * x[i] for i in range(n)) for r in rows)

    # section: solve rows . y = c with integer y (exists by surjectivity)
    def section(c):
        sol = solve_linear([list(r) for r in rows], list(c))
        if sol is None:
            raise ValueError("no preimage for %r" % (c,))
        x, _ = sol
        # clear denominators using the lattice kernel if needed
        if all(v.denominator == 1 for v in x):
            return tuple(int(v) for v in x)
        lat = H.lattice()
        for coeffs in itertools.product(range(-6, 7), repeat=len(lat)):
            y = [x[i] + sum(c2 * lat[k][i] for k, c2 in enumerate(coeffs))
                 for i in range(n)]
            if all(v.denominator == 1 for v in y):
                return tuple(int(v) for v in y)
        raise ValueError("no integer preimage found for %r" % (c,))

    return project, section, rank


def _weight_supports(g, weights):
    """The weight functional attains its maximum on >= 2 support points."""
    best = None
    count = 0
    for m in g.support():
        k = key_dot(weights, m)
        if best is None or k > best:
            best, count = k, 1
        elif k == best:
            count += 1
    return count >= 2


class _QuotientCone(IntegerVectorMonoid):
    """Image cone phi(Z_{>=0}^n) with the order pulled back through a section."""

    def __init__(self, rank, weights, section):
        super().__init__(rank, None)
        self.weights = weights
        self.section = section

    def contains(self, a):
        return isinstance(a, tuple) and len(a) == self.n

    def compose(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sort_key(self, a):
        x = self.section(a)
        return key_dot(self.weights, x).levels

    def enumerate(self, limit):
        raise NotImplementedError("quotient cone enumeration is job-specific")
