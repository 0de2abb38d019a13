"""Newton-Puiseux expansion of plane-curve branches over Q and the adapted
module-basis reduction for curve algebras.

Expansions are taken at the large end of the parameter: exponents strictly
decrease along a branch and the order of an element is its top exponent, so
sums valuate by the maximum.  Coefficients stay in Q throughout; conjugacy
classes whose members all need irrational coefficients are reported, never
fabricated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .algebra import Element, PolynomialRing


# polynomials in (x, y) with rational x-exponents: dict (Fraction, int) -> Fraction


def _from_element(f):
    out = {}
    for (i, j), c in f.terms.items():
        out[(Fraction(i), j)] = Fraction(c)
    return out


def _y_degree(g):
    return max(j for (_, j) in g)


def _y_adic(g):
    return min(j for (_, j) in g)


def _coeff_poly(g, j):
    return {i: c for (i, jj), c in g.items() if jj == j}


def _substitute(g, c, gamma):
    """g(x, c x^gamma + y) expanded exactly."""
    out = {}
    binom = {}
    for (i, j), a in g.items():
        for t in range(j + 1):
            key = (j, t)
            if key not in binom:
                b = 1
                for s in range(t):
                    b = b * (j - s) // (s + 1)
                binom[key] = b
            co = a * binom[(j, t)] * (Fraction(c) ** (j - t))
            if not co:
                continue
            mono = (i + gamma * (j - t), t)
            s2 = out.get(mono, Fraction(0)) + co
            if s2:
                out[mono] = s2
            else:
                out.pop(mono, None)
    return out


def _roof_edges(g, bound):
    """Edges of the upper hull of the support in the (y-exp, x-exp) plane,
    giving candidate leading exponents gamma < bound (bound None = no cap).

    Returns a list of (gamma, edge_poly) with edge_poly a dict exponent->coeff
    in the root variable.
    """
    best = {}
    for (i, j), c in g.items():
        if j not in best or i > best[j]:
            best[j] = i
    pts = sorted(best.items())  # (j, i) with j increasing
    # upper concave hull
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (j1, i1), (j2, i2) = hull[-2], hull[-1]
            # slope comparison: keep concave (decreasing slopes)
            if (i2 - i1) * (p[0] - j2) <= (p[1] - i2) * (j2 - j1):
                hull.pop()
            else:
                break
        hull.append(p)
    edges = []
    for (j1, i1), (j2, i2) in zip(hull, hull[1:]):
        gamma = Fraction(i1 - i2, j2 - j1)
        if bound is not None and gamma >= bound:
            continue
        # collect support on the edge line i + gamma j = i1 + gamma j1
        level = i1 + gamma * j1
        poly = {}
        for (i, j), c in g.items():
            if j1 <= j <= j2 and i + gamma * j == level:
                poly[j - j1] = poly.get(j - j1, Fraction(0)) + c
        edges.append((gamma, poly))
    edges.sort(key=lambda e: -e[0])
    return edges


def _rational_roots(poly):
    """Rational roots of a dict exponent->Fraction, with multiplicities, plus
    the degree of the rootless remainder."""
    if not poly:
        return [], 0
    deg = max(poly)
    dens = 1
    for c in poly.values():
        dens = lcm(dens, c.denominator)
    coeffs = [int((poly.get(k, Fraction(0))) * dens) for k in range(deg + 1)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    # strip powers of the variable (roots at 0 do not occur on an edge)
    low = next((k for k, c in enumerate(coeffs) if c), len(coeffs))
    coeffs = coeffs[low:]
    roots = []
    changed = True
    while changed and len(coeffs) > 1:
        changed = False
        a0, an = abs(coeffs[0]), abs(coeffs[-1])
        cands = set()
        for p in _divisors(a0):
            for q in _divisors(an):
                cands.add(Fraction(p, q))
                cands.add(Fraction(-p, q))
        for r in sorted(cands):
            while len(coeffs) > 1 and _peval(coeffs, r) == 0:
                coeffs = _deflate(coeffs, r)
                roots.append(r)
                changed = True
    mult = {}
    for r in roots:
        mult[r] = mult.get(r, 0) + 1
    return sorted(mult.items()), len(coeffs) - 1


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return out


def _peval(coeffs, r):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * r + c
    return acc


def _deflate(coeffs, r):
    out = [Fraction(0)] * (len(coeffs) - 1)
    acc = Fraction(coeffs[-1])
    for k in range(len(coeffs) - 2, -1, -1):
        out[k] = acc
        acc = acc * r + coeffs[k]
    return [Fraction(c) for c in out]


@dataclass
class PuiseuxBranch:
    e: int
    terms: list            # [(exponent, coefficient)], exponents descending
    exact: bool
    multiplicity: int = 1

    def order(self):
        if not self.terms:
            raise ValueError("zero branch has no order")
        return self.terms[0][0]

    def as_strings(self):
        return [(str(e), str(c)) for e, c in self.terms]


@dataclass
class IrrationalClassReport:
    prefix: list
    gamma: Fraction
    minimal_polynomial: dict
    root_count: int


@dataclass
class ExpansionResult:
    branches: list          # rational leaves (all of them, not class reps)
    irrational: list
    degree: int

    def class_partition(self):
        """Group rational leaves into twist classes and account for the
        irrational roots; sizes is None when the accounting is ambiguous."""
        groups = []
        for b in self.branches:
            placed = False
            for grp in groups:
                if _twist_equivalent(grp[0], b):
                    grp.append(b)
                    placed = True
                    break
            if not placed:
                groups.append([b])
        irr_total = sum(r.root_count for r in self.irrational)
        sizes = []
        needed = 0
        for grp in groups:
            e = grp[0].e
            sizes.append(e)
            needed += e - len(grp)
        if needed == irr_total:
            return sizes, groups
        return None, groups


def _twist_equivalent(b1, b2):
    """Same class detection for rational leaves: equal exponents and
    coefficients related by the only rational-valued twist, a sign epsilon
    acting by epsilon^p on the x^(p/e) term."""
    if b1.e != b2.e or b1.exact != b2.exact or len(b1.terms) != len(b2.terms):
        return False
    if [t[0] for t in b1.terms] != [t[0] for t in b2.terms]:
        return False
    for sign in (1, -1):
        if all(c1 * sign ** (int(e * b1.e) % 2) == c2
               for (e, c1), (_, c2) in zip(b1.terms, b2.terms)):
            return True
    return False


class IrrationalCoefficientError(ValueError):
    def __init__(self, reports):
        super().__init__("expansion requires irrational coefficients: %d root(s)"
                         % sum(r.root_count for r in reports))
        self.reports = reports


def expand_roots(f, terms=8, max_terms=256):
    """All rational Puiseux leaves of a squarefree monic-in-y polynomial,
    expanded far enough to separate multiplicities, then to `terms` terms."""
    g0 = _from_element(f)
    d = _y_degree(g0)
    lead = _coeff_poly(g0, d)
    if list(lead.items()) != [(Fraction(0), Fraction(1))]:
        raise ValueError("polynomial must be monic in y with constant lead")
    want = terms
    while want <= max_terms:
        leaves, irrational, unresolved_mult = _expand(g0, want)
        if not unresolved_mult:
            branches = [PuiseuxBranch(_ram(prefix), prefix, exact, mult)
                        for prefix, exact, mult in leaves]
            return ExpansionResult(branches, irrational, d)
        want *= 2
    raise RuntimeError("branches did not separate within %d terms" % max_terms)


def _ram(prefix):
    e = 1
    for exp, _ in prefix:
        e = lcm(e, exp.denominator)
    return e


def _expand(g0, want_terms):
    leaves = []
    irrational = []
    unresolved = []

    def rec(g, bound, prefix, target):
        remaining = target
        k = _y_adic(g)
        if k > 0:
            leaves.append((list(prefix), True, k))
            g = {(i, j - k): c for (i, j), c in g.items()}
            remaining -= k
        if remaining <= 0:
            return
        if len(prefix) >= want_terms:
            unresolved.append((list(prefix), remaining))
            # keep a truncated leaf so callers can still see the direction
            leaves.append((list(prefix), False, remaining))
            return
        for gamma, poly in _roof_edges(g, bound):
            roots, residual_degree = _rational_roots(poly)
            if residual_degree:
                irrational.append(IrrationalClassReport(list(prefix), gamma,
                                                        poly, residual_degree))
            for c, mu in roots:
                g1 = _substitute(g, c, gamma)
                rec(g1, gamma, prefix + [(gamma, c)], mu)

    d = _y_degree(g0)
    rec(g0, None, [], d)
    # unresolved multiplicities > 1 force another pass with more terms
    bad = [u for u in unresolved if u[1] > 1]
    if bad:
        return leaves, irrational, bad
    return leaves, irrational, []


def puiseux_expand(f, terms=8):
    """One representative branch per conjugacy class, plus reports for the
    classes that have no rational member.  Representatives with a positive
    leading coefficient are preferred when the class offers the choice."""
    res = expand_roots(f, terms)
    sizes, groups = res.class_partition()
    reps = []
    for grp in groups:
        pos = [b for b in grp if b.terms and b.terms[0][1] > 0]
        reps.append(pos[0] if pos else grp[0])
    return reps, res.irrational


def root_classes(f, terms=8):
    """Conjugacy class sizes of the Puiseux roots; a single class is the
    gate for an injective well-ordered valuation on the curve."""
    res = expand_roots(f, terms)
    sizes, groups = res.class_partition()
    if sizes is None:
        raise IrrationalCoefficientError(res.irrational)
    return sorted(sizes, reverse=True)


# ---------------------------------------------------------------------------
# truncated series arithmetic (descending exponents)


@dataclass
class TruncatedSeries:
    terms: dict            # exponent -> coefficient, exponents > bound
    bound: object          # Fraction or None (exact)

    def top(self):
        return max(self.terms) if self.terms else None

    def is_reliably_zero(self):
        return not self.terms and self.bound is None

    def order(self):
        t = self.top()
        if t is None:
            if self.bound is None:
                raise ValueError("exact zero has no order")
            raise PrecisionError(self.bound)
        if self.bound is not None and t <= self.bound:
            raise PrecisionError(self.bound)
        return t


class PrecisionError(ArithmeticError):
    def __init__(self, bound):
        super().__init__("series truncated at %s; more branch terms needed" % bound)
        self.bound = bound


def series_add(a, b):
    terms = dict(a.terms)
    for e, c in b.terms.items():
        s = terms.get(e, Fraction(0)) + c
        if s:
            terms[e] = s
        else:
            terms.pop(e, None)
    bound = _max_bound(a.bound, b.bound)
    return TruncatedSeries(_chop(terms, bound), bound)


def series_mul(a, b):
    bound = None
    if a.bound is not None:
        top_b = b.top()
        cand = a.bound + (top_b if top_b is not None else a.bound)
        bound = _max_bound(bound, cand)
        if b.bound is not None:
            bound = _max_bound(bound, a.bound + b.bound)
    if b.bound is not None:
        top_a = a.top()
        cand = b.bound + (top_a if top_a is not None else b.bound)
        bound = _max_bound(bound, cand)
    terms = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            e = e1 + e2
            s = terms.get(e, Fraction(0)) + c1 * c2
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
    return TruncatedSeries(_chop(terms, bound), bound)


def series_scale(a, c):
    c = Fraction(c)
    if not c:
        return TruncatedSeries({}, a.bound)
    return TruncatedSeries({e: c * v for e, v in a.terms.items()}, a.bound)


def _max_bound(b1, b2):
    if b1 is None:
        return b2
    if b2 is None:
        return b1
    return max(b1, b2)


def _chop(terms, bound):
    if bound is None:
        return terms
    return {e: c for e, c in terms.items() if e > bound}


def branch_series(branch: PuiseuxBranch):
    terms = {e: c for e, c in branch.terms}
    if branch.exact:
        return TruncatedSeries(terms, None)
    last = min(terms) if terms else Fraction(0)
    return TruncatedSeries(terms, last)


def evaluate_series(poly_element, x_series, y_series):
    """Image of a polynomial in (x, y) under the series substitution."""
    acc = TruncatedSeries({}, None)
    one = TruncatedSeries({Fraction(0): Fraction(1)}, None)
    powers_x = {0: one}
    powers_y = {0: one}

    def pw(cache, base, n):
        if n not in cache:
            cache[n] = series_mul(pw(cache, base, n - 1), base)
        return cache[n]

    for (i, j), c in poly_element.terms.items():
        t = series_mul(pw(powers_x, x_series, i), pw(powers_y, y_series, j))
        acc = series_add(acc, series_scale(t, c))
    return acc


# ---------------------------------------------------------------------------
# the curve valuation and the module-basis reduction


class SingleClassRequired(ValueError):
    pass


@dataclass
class CurveModuleBasis:
    elements: list     # polynomials in (x, y)
    orders: list       # Fractions

    def orders_mod_1(self):
        return sorted(Fraction(o.numerator % o.denominator, o.denominator)
                      for o in self.orders)


@dataclass
class NegativeOrderWitness:
    element: object
    order: Fraction


class NonTermination(RuntimeError):
    pass


class CurveValuation:
    """ord along one branch, with adaptive precision."""

    def __init__(self, f, terms=8, cap=512, check_classes=True):
        self.f = f
        self.cap = cap
        if check_classes:
            sizes = root_classes(f, terms)
            if len(sizes) != 1:
                raise SingleClassRequired("root classes %r; a single class is "
                                          "required" % (sizes,))
        self._terms = terms
        self._load(terms)

    def _load(self, terms):
        reps, irr = puiseux_expand(self.f, terms)
        if not reps:
            raise IrrationalCoefficientError(irr)
        self.branch = reps[0]
        self._terms = terms

    def ord(self, a):
        while True:
            x_series = TruncatedSeries({Fraction(1): Fraction(1)}, None)
            y_series = branch_series(self.branch)
            img = evaluate_series(a, x_series, y_series)
            if img.is_reliably_zero():
                raise ValueError("element vanishes on the branch; zero in the curve algebra")
            try:
                return img.order()
            except PrecisionError:
                # exact vanishing is decidable by division, so settle it before
                # burning precision on a hopeless refinement
                if _is_multiple(a, self.f):
                    raise ValueError("element is a multiple of the curve "
                                     "polynomial; zero in the curve algebra")
                if self._terms * 2 > self.cap:
                    raise NonTermination("precision cap %d exceeded" % self.cap)
                self._load(self._terms * 2)


def reduce_module_basis(f, iteration_cap=200, terms=8):
    """Reduce 1, Y, ..., Y^(d-1) until the orders are pairwise non-congruent
    mod 1; the adapted basis of the curve algebra is then {s_i x^j}."""
    ring = f.ring
    d = max(j for (_, j) in f.terms)
    cv = CurveValuation(f, terms=terms)
    x = ring.gen(0)
    y = ring.gen(1)
    basis = [y ** i for i in range(d)]
    orders = [cv.ord(b) for b in basis]
    steps = 0
    while True:
        for o, b in zip(orders, basis):
            if o < 0:
                return NegativeOrderWitness(b, o)
        pair = None
        for i in range(d):
            for j in range(d):
                if i != j and orders[i] >= orders[j] and (orders[i] - orders[j]).denominator == 1:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            order_sorted = sorted(range(d), key=lambda t: orders[t])
            return CurveModuleBasis([basis[t] for t in order_sorted],
                                    [orders[t] for t in order_sorted])
        steps += 1
        if steps > iteration_cap:
            raise NonTermination("module reduction exceeded %d steps" % iteration_cap)
        i, j = pair
        k = int(orders[i] - orders[j])
        ci = _leading_series_coeff(cv, basis[i])
        cj = _leading_series_coeff(cv, basis[j])
        basis[i] = basis[i] - (x ** k) * basis[j] * (ci / cj)
        if not basis[i]:
            raise ValueError("module basis degenerated; input not squarefree?")
        orders[i] = cv.ord(basis[i])


def _is_multiple(a, f):
    """a in (f) decided by division in (Q[x])[y]; f is monic in y."""
    d = max(j for (_, j) in f.terms)
    fj = {}
    for (i, j), c in f.terms.items():
        fj.setdefault(j, {})[i] = Fraction(c)
    rem = {}
    for (i, j), c in a.terms.items():
        rem.setdefault(j, {})[i] = Fraction(c)

    def xpoly_mul(p, q):
        out = {}
        for i1, c1 in p.items():
            for i2, c2 in q.items():
                s = out.get(i1 + i2, Fraction(0)) + c1 * c2
                if s:
                    out[i1 + i2] = s
                else:
                    out.pop(i1 + i2, None)
        return out

    def xpoly_sub(p, q):
        out = dict(p)
        for i, c in q.items():
            s = out.get(i, Fraction(0)) - c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return out

    while rem:
        top = max(rem)
        if top < d:
            return False
        lead = rem[top]
        for j, coeffs in fj.items():
            shift = {i: c for i, c in xpoly_mul(lead, coeffs).items()}
            tgt = rem.get(top - d + j, {})
            tgt = xpoly_sub(tgt, shift)
            if tgt:
                rem[top - d + j] = tgt
            else:
                rem.pop(top - d + j, None)
        if top in rem and rem[top]:
            return False
    return True


def _leading_series_coeff(cv, b):
    while True:
        xs = TruncatedSeries({Fraction(1): Fraction(1)}, None)
        ys = branch_series(cv.branch)
        img = evaluate_series(b, xs, ys)
        try:
            o = img.order()
            return img.terms[o]
        except PrecisionError:
            cv._load(cv._terms * 2)
