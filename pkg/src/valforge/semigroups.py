"""Ordered partial semigroups: carriers, partial composition, total orders.

Composition is partially defined; the failure value is the UNDEFINED sentinel,
never an exception.  Elements use plain canonical data (tuples, pairs), so
structural equality is element equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import lp_feasible, solve_linear
from .orderkeys import OrderKey


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()


def is_defined(x):
    return x is not UNDEFINED


class OrderedPartialSemigroup:
    """Base carrier; subclasses implement compose, sort_key, contains."""

    has_unit = False

    def compose(self, a, b):
        raise NotImplementedError

    def sort_key(self, a):
        raise NotImplementedError

    def contains(self, a):
        raise NotImplementedError

    def compare(self, a, b):
        self._check(a)
        self._check(b)
        ka, kb = self.sort_key(a), self.sort_key(b)
        return -1 if ka < kb else (0 if ka == kb else 1)

    def _check(self, a):
        if not self.contains(a):
            raise ValueError("element %r is not in the carrier" % (a,))

    def enumerate(self, limit):
        """First `limit` elements in increasing order, when enumerable."""
        raise NotImplementedError("carrier is not enumerable")

    def element_json(self, a):
        return list(a) if isinstance(a, tuple) else a


# ---------------------------------------------------------------------------


class IntegerVectorMonoid(OrderedPartialSemigroup):
    """Z_{>=0}^n (or a coideal of it) under addition.

    ideal_generators, when given, cut out the complement of the monomial ideal
    they generate: composition is defined iff the sum stays in the coideal.
    """

    has_unit = True

    def __init__(self, n, order, ideal_generators=None):
        self.n = n
        self.order = order
        self.ideal_generators = [tuple(g) for g in (ideal_generators or [])]

    def contains(self, a):
        if not (isinstance(a, tuple) and len(a) == self.n and all(int(x) == x and x >= 0 for x in a)):
            return False
        return not self._in_ideal(a)

    def _in_ideal(self, a):
        return any(all(a[i] >= g[i] for i in range(self.n)) for g in self.ideal_generators)

    def compose(self, a, b):
        self._check(a)
        self._check(b)
        s = tuple(x + y for x, y in zip(a, b))
        return UNDEFINED if self._in_ideal(s) else s

    def sort_key(self, a):
        return self.order.sort_key(a)

    def enumerate(self, limit):
        # grow the box until the leading segment stabilizes; needed because a
        # lex order may fill one axis long before touching the next box layer
        prev = None
        box = 1
        while True:
            cands = [v for v in itertools.product(range(box + 1), repeat=self.n)
                     if not self._in_ideal(v)]
            cands.sort(key=self.sort_key)
            head = cands[:limit]
            if prev == head and (len(cands) >= limit or box > 2 * limit + 4):
                return head
            prev = head
            box += 1


class FreeWordMonoid(OrderedPartialSemigroup):
    """Free monoid on named generators, or a coideal of it.

    Elements are tuples of generator indices.  forbidden_factors lists words
    that generate the cut-out ideal (as contiguous factors).
    """

    has_unit = True

    def __init__(self, names, order, forbidden_factors=None):
        self.names = tuple(names)
        self.order = order
        self.forbidden = [tuple(w) for w in (forbidden_factors or [])]

    def contains(self, a):
        if not (isinstance(a, tuple) and all(0 <= g < len(self.names) for g in a)):
            return False
        return not self._has_forbidden(a)

    def _has_forbidden(self, w):
        for f in self.forbidden:
            lf = len(f)
            if lf and any(w[i:i + lf] == f for i in range(len(w) - lf + 1)):
                return True
        return False

    def compose(self, a, b):
        self._check(a)
        self._check(b)
        s = a + b
        return UNDEFINED if self._has_forbidden(s) else s

    def sort_key(self, a):
        return self.order.sort_key(a)

    def enumerate(self, limit):
        out = []
        length = 0
        extra = 1 + max(self.order.lengths) if hasattr(self.order, "lengths") else 2
        target = None
        while length <= 4 * limit + 4:
            for w in itertools.product(range(len(self.names)), repeat=length):
                if not self._has_forbidden(w):
                    out.append(w)
            length += 1
            if target is None and len(out) >= limit:
                target = length + extra  # one more weight level for safety
            if target is not None and length >= target:
                break
        out.sort(key=self.sort_key)
        return out[:limit]

    def element_json(self, a):
        return [self.names[g] for g in a]


class MatrixGroupoid(OrderedPartialSemigroup):
    """Pairs (i, j), 1 <= i, j <= k, with (i,j)(j,l) = (i,l).

    Two built-in total orders, both ascending in their key:
      variant "i":  key (j - i, -i)
      variant "ii": key (-i, j)
    Both satisfy the strict property; the unit-like sum e_11 + ... + e_kk has
    leading pair (1,1) in both.
    """

    def __init__(self, k, variant="i"):
        self.k = k
        if variant not in ("i", "ii"):
            raise ValueError("variant must be 'i' or 'ii'")
        self.variant = variant

    def contains(self, a):
        return (isinstance(a, tuple) and len(a) == 2
                and 1 <= a[0] <= self.k and 1 <= a[1] <= self.k)

    def compose(self, a, b):
        self._check(a)
        self._check(b)
        if a[1] != b[0]:
            return UNDEFINED
        return (a[0], b[1])

    def sort_key(self, a):
        i, j = a
        return (j - i, -i) if self.variant == "i" else (-i, j)

    def enumerate(self, limit):
        els = sorted(((i, j) for i in range(1, self.k + 1) for j in range(1, self.k + 1)),
                     key=self.sort_key)
        return els[:limit]


class QuiverPathSemigroup(OrderedPartialSemigroup):
    """Paths in a directed graph under concatenation.

    A path is a tuple of vertices (v0, ..., vk), k >= 1; (..., a) and (a, ...)
    compose.  Ordered by image-free deglex on the edge word.
    """

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        self.edges = {tuple(e) for e in edges}
        self._vrank = {v: i for i, v in enumerate(self.vertices)}

    def contains(self, a):
        if not (isinstance(a, tuple) and len(a) >= 2):
            return False
        return all((a[i], a[i + 1]) in self.edges for i in range(len(a) - 1))

    def compose(self, a, b):
        self._check(a)
        self._check(b)
        if a[-1] != b[0]:
            return UNDEFINED
        return a + b[1:]

    def sort_key(self, a):
        return (len(a), tuple(self._vrank[v] for v in a))

    def enumerate(self, limit):
        out = [(u, v) for (u, v) in self.edges]
        frontier = list(out)
        while frontier and len(out) < limit * 4:
            nxt = []
            for p in frontier:
                for (u, v) in self.edges:
                    if p[-1] == u:
                        nxt.append(p + (v,))
            out.extend(nxt)
            frontier = nxt
        out.sort(key=self.sort_key)
        return out[:limit]


class FinitePresentedSemigroup(OrderedPartialSemigroup):
    """Explicit element list (in increasing order) plus a composition table."""

    def __init__(self, elements, table):
        self.elements = list(elements)
        self._rank = {e: i for i, e in enumerate(self.elements)}
        self.table = dict(table)

    def contains(self, a):
        return a in self._rank

    def compose(self, a, b):
        self._check(a)
        self._check(b)
        c = self.table.get((a, b))
        return UNDEFINED if c is None else c

    def sort_key(self, a):
        return self._rank[a]

    def enumerate(self, limit):
        return self.elements[:limit]


class QuantumCone(OrderedPartialSemigroup):
    """Central extension of a submonoid of Z^m by half-integer q-powers.

    Elements are (a, r2) with a the base exponent vector and r2 twice the
    q-exponent.  Multiplication twists by the skew form:
        (a, r2) o (a', r2') = (a + a', r2 + r2' + Lambda(a, a')).
    Base vectors are ordered lexicographically with the first coordinate
    dominant, then by q-power.
    """

    has_unit = True

    def __init__(self, m, skew_form, member=None):
        self.m = m
        self.skew = [[int(x) for x in row] for row in skew_form]
        for k in range(m):
            for l in range(m):
                if self.skew[k][l] != -self.skew[l][k]:
                    raise ValueError("skew form must be antisymmetric")
        self.member = member  # optional base-monoid membership predicate

    def lam(self, a, b):
        return sum(self.skew[k][l] * a[k] * b[l] for k in range(self.m) for l in range(self.m))

    def contains(self, el):
        if not (isinstance(el, tuple) and len(el) == 2):
            return False
        a, r2 = el
        if not (isinstance(a, tuple) and len(a) == self.m and int(r2) == r2):
            return False
        return self.member(a) if self.member else all(x >= 0 for x in a)

    def compose(self, x, y):
        self._check(x)
        self._check(y)
        a, r2 = x
        b, s2 = y
        c = tuple(p + q for p, q in zip(a, b))
        if self.member and not self.member(c):
            return UNDEFINED
        return (c, r2 + s2 + self.lam(a, b))

    def sort_key(self, el):
        a, r2 = el
        return (tuple(a), r2)

    def element_json(self, el):
        a, r2 = el
        return {"base": list(a), "q": "q^{%d/2}" % r2}


class ProductSemigroup(OrderedPartialSemigroup):
    """Lexicographic product; the first factor must be strictly ordered."""

    def __init__(self, P1, P2):
        self.P1, self.P2 = P1, P2

    def contains(self, a):
        return (isinstance(a, tuple) and len(a) == 2
                and self.P1.contains(a[0]) and self.P2.contains(a[1]))

    def compose(self, a, b):
        c1 = self.P1.compose(a[0], b[0])
        c2 = self.P2.compose(a[1], b[1])
        if not is_defined(c1) or not is_defined(c2):
            return UNDEFINED
        return (c1, c2)

    def sort_key(self, a):
        return (self.P1.sort_key(a[0]), self.P2.sort_key(a[1]))


class KeyVectorMonoid(OrderedPartialSemigroup):
    """Vectors of OrderKeys under addition, ordered lexicographically.

    The value carrier for tame valuations.
    """

    has_unit = True

    def __init__(self, n):
        self.n = n

    def contains(self, a):
        return isinstance(a, tuple) and len(a) == self.n and all(isinstance(k, OrderKey) for k in a)

    def compose(self, a, b):
        self._check(a)
        self._check(b)
        return tuple(x + y for x, y in zip(a, b))

    def sort_key(self, a):
        return tuple(k.levels for k in a)

    def element_json(self, a):
        return [[str(v) for v in k.levels] for k in a]


# ---------------------------------------------------------------------------
# built-in instance: the rank-2 nil-Coxeter partial semigroup


def nil_coxeter_w0(m):
    """W_0(m): alternating words in two letters of length <= m, with the two
    words of length m identified; composition is concatenation when the result
    is still alternating of length <= m.  Ordered d_k < c_k < d_{k+1}; the
    order does not satisfy the strict property for m >= 3.
    """

    def word(start, k):
        return tuple((start + i) % 2 for i in range(k))

    # c_k starts with letter 0, d_k with letter 1; c_m == d_m is one element
    elements = []
    for k in range(1, m):
        elements.append(("d", k))
        elements.append(("c", k))
    elements.append(("top", m))

    def to_word(e):
        kind, k = e
        if kind == "c":
            return word(0, k)
        if kind == "d":
            return word(1, k)
        return word(0, m)

    def from_word(w):
        k = len(w)
        if k == m:
            return ("top", m)
        return ("c", k) if w[0] == 0 else ("d", k)

    def alternating(w):
        return all(w[i] != w[i + 1] for i in range(len(w) - 1))

    table = {}
    for a in elements:
        for b in elements:
            w = to_word(a) + to_word(b)
            if len(w) <= m and alternating(w):
                table[(a, b)] = from_word(w)
    return FinitePresentedSemigroup(elements, table)


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class AxiomReport:
    associativity: bool
    associativity_witness: tuple | None
    order_compat: bool
    order_witness: tuple | None
    strict_property: bool
    strict_witness: tuple | None
    mutual_associativity: bool | None = None
    mutual_witness: tuple | None = None
    complete: bool = True

    def all_pass(self):
        ok = self.associativity and self.order_compat and self.strict_property
        if self.mutual_associativity is not None:
            ok = ok and self.mutual_associativity
        return ok


def check_axioms(P, bound, second=None):
    """Exhaustive axiom check over the first `bound` elements.

    Checks associativity in the partial sense (both implication directions),
    order compatibility, the strict property, and optionally mutual
    associativity against a second composition on the same carrier.
    """
    try:
        els = P.enumerate(bound)
    except NotImplementedError:
        raise ValueError("carrier is not enumerable; cannot check axioms")
    # a full listing returns fewer than `bound` elements; otherwise the
    # report only covers a window and is flagged incomplete
    complete = len(els) < bound

    assoc_ok, assoc_wit = True, None
    for a, b, c in itertools.product(els, repeat=3):
        ab = P.compose(a, b)
        bc = P.compose(b, c)
        left = P.compose(ab, c) if is_defined(ab) else UNDEFINED
        right = P.compose(a, bc) if is_defined(bc) else UNDEFINED
        left_def = is_defined(ab) and is_defined(left)
        right_def = is_defined(bc) and is_defined(right)
        if left_def != right_def or (left_def and left != right):
            assoc_ok, assoc_wit = False, (a, b, c)
            break

    order_ok, order_wit = True, None
    strict_ok, strict_wit = True, None
    keyed = [(P.sort_key(e), e) for e in els]
    for (ka, a), (kb, b) in itertools.product(keyed, repeat=2):
        if ka > kb:
            continue
        for (kc, c), (kd, d) in itertools.product(keyed, repeat=2):
            if kc > kd:
                continue
            ac = P.compose(a, c)
            bd = P.compose(b, d)
            if is_defined(ac) and is_defined(bd):
                if P.sort_key(ac) > P.sort_key(bd):
                    if order_ok:
                        order_ok, order_wit = False, (a, b, c, d)
                if (ka < kb or kc < kd) and P.sort_key(ac) >= P.sort_key(bd):
                    if strict_ok:
                        strict_ok, strict_wit = False, (a, b, c, d)
            ca = P.compose(c, a)
            db = P.compose(d, b)
            if is_defined(ca) and is_defined(db):
                if (ka < kb or kc < kd) and P.sort_key(ca) >= P.sort_key(db):
                    if strict_ok:
                        strict_ok, strict_wit = False, (c, d, a, b)
        if not order_ok and not strict_ok:
            break

    mutual_ok, mutual_wit = None, None
    if second is not None:
        mutual_ok = True
        for a, b, c in itertools.product(els, repeat=3):
            ab = P.compose(a, b)
            bc = P.compose(b, c)
            lhs = second(ab, c) if is_defined(ab) else UNDEFINED
            rhs = second(a, bc) if is_defined(bc) else UNDEFINED
            if (is_defined(lhs) != is_defined(rhs)) or (is_defined(lhs) and lhs != rhs):
                mutual_ok, mutual_wit = False, (a, b, c)
                break
            ab2 = second(a, b)
            bc2 = second(b, c)
            lhs = P.compose(ab2, c) if is_defined(ab2) else UNDEFINED
            rhs = P.compose(a, bc2) if is_defined(bc2) else UNDEFINED
            if (is_defined(lhs) != is_defined(rhs)) or (is_defined(lhs) and lhs != rhs):
                mutual_ok, mutual_wit = False, (a, b, c)
                break

    return AxiomReport(assoc_ok, assoc_wit, order_ok, order_wit,
                       strict_ok, strict_wit, mutual_ok, mutual_wit, complete)


# ---------------------------------------------------------------------------
# universal cover


class CoverSemigroup(OrderedPartialSemigroup):
    """Admissible generator sequences of P; composition is concatenation when
    the product stays defined in P.  Ordered by (image, length, lex) when P is
    strictly ordered; otherwise carries no order and `ordered` is False.
    """

    def __init__(self, P, generators, ordered):
        self.P = P
        self.generators = list(generators)
        self._grank = {g: i for i, g in enumerate(self.generators)}
        self.ordered = ordered

    def project(self, seq):
        acc = seq[0]
        for g in seq[1:]:
            acc = self.P.compose(acc, g)
            if not is_defined(acc):
                return UNDEFINED
        return acc

    def contains(self, seq):
        return (isinstance(seq, tuple) and len(seq) >= 1
                and all(g in self._grank for g in seq)
                and is_defined(self.project(seq)))

    def compose(self, a, b):
        self._check(a)
        self._check(b)
        s = a + b
        return s if is_defined(self.project(s)) else UNDEFINED

    def sort_key(self, seq):
        if not self.ordered:
            raise ValueError("cover carries no order (base order is not strict)")
        return (self.P.sort_key(self.project(seq)), len(seq),
                tuple(self._grank[g] for g in seq))

    def enumerate(self, limit, max_length=None):
        out = []
        frontier = [(g,) for g in self.generators if is_defined(self.project((g,)))]
        out.extend(frontier)
        length = 1
        while frontier and (max_length is None or length < max_length):
            nxt = []
            for seq in frontier:
                for g in self.generators:
                    s = seq + (g,)
                    if is_defined(self.project(s)):
                        nxt.append(s)
            out.extend(nxt)
            frontier = nxt
            length += 1
            if max_length is None and len(out) >= 4 * limit:
                break
        if self.ordered:
            out.sort(key=self.sort_key)
        return out[:limit]


def universal_cover(P, generators, strict=None, strict_check_bound=12):
    """The cover by admissible generator sequences, with projection.

    When the base order is strict (declared via `strict`, or checked to the
    given bound) the cover is ordered by the (image, length, lex) triple key;
    otherwise it is built without an order and flagged.
    """
    if strict is None:
        try:
            strict = check_axioms(P, strict_check_bound).strict_property
        except ValueError:
            strict = False
    cover = CoverSemigroup(P, generators, ordered=bool(strict))
    return cover, cover.project


# ---------------------------------------------------------------------------
# fiber-minimal coideal of a projection


@dataclass
class ProjectionCoideal:
    """P(f): elements minimal in their fiber, with the induced partial product."""

    elements: list
    source: OrderedPartialSemigroup
    _members: set = field(default_factory=set)
    bound: int = 0

    def __post_init__(self):
        self._members = set(self.elements)

    def compose(self, a, b):
        if a not in self._members or b not in self._members:
            raise ValueError("element not in P(f) table")
        ab = self.source.compose(a, b)
        if not is_defined(ab) or ab not in self._members:
            return UNDEFINED
        return ab


def coideal_of_projection(P, f, bound):
    """Table of the fiber-minimal elements among the first `bound` of P.

    f maps P-elements to hashable values.  Enumeration is in increasing order,
    so the first element seen in each fiber is its true minimum.
    """
    els = P.enumerate(bound)
    seen = set()
    minimal = []
    for e in els:
        v = f(e)
        if v not in seen:
            seen.add(v)
            minimal.append(e)
    return ProjectionCoideal(minimal, P, bound=bound)


# ---------------------------------------------------------------------------
# well-ordered submonoids of Z^m under lex


@dataclass
class WellOrderedCertificate:
    generators: list
    dual_vectors: list  # per level k: rational y with a_{k+1} >= y . (a_1..a_k)
    tame_linear_witness: list | None  # integer matrix rows, when one exists

    kind = "well_ordered"


@dataclass
class DescendingChain:
    generators: list
    chain: list

    kind = "not_well_ordered"


def well_ordered_submonoid(generators, search_bound=16, witness_bound=6):
    """Decide lex well-orderedness of the monoid generated in Z^m.

    The fiber criterion reduces to exact LP feasibility (Farkas), so the
    verdict is always definite: either affine bounding witnesses per level, or
    an explicit strictly decreasing chain of the requested length.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        return WellOrderedCertificate([], [], None)
    m = len(gens[0])
    s = len(gens)
    duals = []
    for k in range(m):
        # does there exist lam >= 0 with prefix coords 0 and coord k negative?
        # normalize: sum over gens of lam_i * g_i has (k+1)-th coord = -1.
        A = [[gens[i][r] for i in range(s)] for r in range(k)]
        A.append([gens[i][k] for i in range(s)])
        b = [0] * k + [-1]
        ray = lp_feasible(A, b, s)
        if ray is not None:
            # scale to integers, produce the explicit chain
            denom = 1
            for x in ray:
                denom = denom * x.denominator // _gcd(denom, x.denominator)
            lam = [int(x * denom) for x in ray]
            v = tuple(sum(lam[i] * gens[i][r] for i in range(s)) for r in range(m))
            chain = [tuple(t * x for x in v) for t in range(1, search_bound + 1)]
            return DescendingChain(gens, chain)
        # dual vector: y with y . g_i^(1..k) <= g_i[k] for all i
        y = _farkas_dual(gens, k)
        duals.append(y)
    witness = _tame_linear_witness(gens, m, witness_bound)
    return WellOrderedCertificate(gens, duals, witness)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _farkas_dual(gens, k):
    """y in Q^k with y . g^(1..k) <= g[k] for every generator g."""
    s = len(gens)
    # variables: y = yp - ym (k each), slack per generator
    n = 2 * k + s
    A = []
    b = []
    for g in gens:
        row = [Fraction(g[r]) for r in range(k)] + [Fraction(-g[r]) for r in range(k)]
        row += [Fraction(1) if j == len(A) else Fraction(0) for j in range(s)]
        A.append(row)
        b.append(Fraction(g[k]))
    sol = lp_feasible(A, b, n)
    if sol is None:  # cannot happen when the ray LP was infeasible
        raise RuntimeError("Farkas dual missing; inconsistent LP results")
    return [sol[r] - sol[k + r] for r in range(k)]


def _tame_linear_witness(gens, m, bound):
    """Search for integer tame g in GL_m(Z) with g(M) in the nonnegative orthant.

    Tame: g(e_j) = e_j + sum_{i<j} c_ij e_i with c_ij >= 0.  Reported only when
    found; absence is not a verdict.
    """
    pairs = [(i, j) for j in range(m) for i in range(j)]
    for combo in itertools.product(range(bound + 1), repeat=len(pairs)):
        c = {p: v for p, v in zip(pairs, combo)}
        ok = True
        for g in gens:
            img = list(g)
            for (i, j), v in c.items():
                img[i] += v * g[j]
            if any(x < 0 for x in img):
                ok = False
                break
        if ok:
            rows = [[1 if i == j else c.get((i, j), 0) for j in range(m)] for i in range(m)]
            return rows
    return None
