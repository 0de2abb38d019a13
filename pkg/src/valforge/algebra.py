"""Algebras and their elements: commutative polynomial rings, free algebras,
semigroup algebras, all over an exact coefficient field.

An element is a finite map monomial -> nonzero coefficient.  Monomials are
exponent tuples in the commutative case and tuples of generator indices in
the free case; semigroup algebras use the carrier's own canonical elements.
"""

from __future__ import annotations

import re

from fractions import Fraction

from .coefficients import QQ, QV, QHalf
from .semigroups import UNDEFINED, is_defined


class Element:
    """Finite linear combination of monomials; zero coefficients never stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None, _clean=False):
        self.ring = ring
        if _clean:
            self.terms = terms or {}
        else:
            self.terms = {}
            for m, c in (terms or {}).items():
                c = ring.field.coerce(c)
                if c:
                    self.terms[m] = c

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ring), frozenset(self.terms.items())))

    def __add__(self, other):
        other = self.ring.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, self.ring.field.zero) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Element(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.ring, {m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self.ring.coerce(other))

    def __rsub__(self, other):
        return (-self) + self.ring.coerce(other)

    def __mul__(self, other):
        if isinstance(other, Element) and other.ring is self.ring:
            return self.ring.multiply(self, other)
        try:
            c = self.ring.field.coerce(other)
        except TypeError:
            return NotImplemented
        if not c:
            return self.ring.zero()
        return Element(self.ring, {m: x * c for m, x in self.terms.items()}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = self.ring.one()
        for _ in range(int(n)):
            out = out * self
        return out

    def scale(self, c):
        return self * c

    def support(self):
        return self.terms.keys()

    def coefficient(self, m):
        return self.terms.get(m, self.ring.field.zero)

    def leading_monomial(self, order=None):
        order = order or self.ring.order
        if not self.terms:
            raise ValueError("zero element has no leading monomial")
        return max(self.terms, key=order.sort_key)

    def leading_coefficient(self, order=None):
        return self.terms[self.leading_monomial(order)]

    def map_coefficients(self, f):
        return Element(self.ring, {m: f(c) for m, c in self.terms.items()})

    def __repr__(self):
        return self.ring.to_string(self)


class _BaseRing:
    def zero(self):
        return Element(self, {}, _clean=True)

    def one(self):
        return Element(self, {self.unit_monomial(): self.field.one}, _clean=True)

    def coerce(self, x):
        if isinstance(x, Element):
            if x.ring is not self:
                raise TypeError("element of a different ring")
            return x
        c = self.field.coerce(x)
        if not c:
            return self.zero()
        return Element(self, {self.unit_monomial(): c}, _clean=True)

    def element(self, terms):
        return Element(self, terms)

    def multiply(self, f, g):
        out = {}
        for m1, c1 in f.terms.items():
            for m2, c2 in g.terms.items():
                m, extra = self.mono_mul(m1, m2)
                if m is UNDEFINED:
                    continue
                c = c1 * c2
                if extra is not None:
                    c = c * extra
                s = out.get(m, self.field.zero) + c
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Element(self, out, _clean=True)


class PolynomialRing(_BaseRing):
    """Commutative polynomials; monomials are exponent tuples."""

    commutative = True

    def __init__(self, field, names, order):
        self.field = field
        self.names = tuple(names)
        self.n = len(self.names)
        self.order = order

    def unit_monomial(self):
        return (0,) * self.n

    def mono_mul(self, m1, m2):
        return tuple(a + b for a, b in zip(m1, m2)), None

    def gen(self, i):
        e = [0] * self.n
        e[i] = 1
        return Element(self, {tuple(e): self.field.one}, _clean=True)

    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def mono_divides(self, m1, m2):
        return all(a <= b for a, b in zip(m1, m2))

    def mono_div(self, m1, m2):
        return tuple(a - b for a, b in zip(m1, m2))

    def mono_lcm(self, m1, m2):
        return tuple(max(a, b) for a, b in zip(m1, m2))

    def mono_string(self, m):
        parts = []
        for x, e in zip(self.names, m):
            if e == 1:
                parts.append(x)
            elif e:
                parts.append("%s^%d" % (x, e))
        return " ".join(parts) if parts else "1"

    def to_string(self, f):
        if not f.terms:
            return "0"
        items = sorted(f.terms.items(), key=lambda kv: self.order.sort_key(kv[0]), reverse=True)
        return " + ".join("%s * %s" % (self.field.serialize(c), self.mono_string(m))
                          for m, c in items)

    def substituted(self, f, images, target):
        """Image of f under x_i -> images[i] (elements of `target`)."""
        out = target.zero()
        for m, c in f.terms.items():
            t = target.coerce(c)
            for i, e in enumerate(m):
                for _ in range(e):
                    t = t * images[i]
            out = out + t
        return out


class FreeAlgebra(_BaseRing):
    """Free associative algebra; monomials are words (tuples of indices)."""

    commutative = False

    def __init__(self, field, names, order):
        self.field = field
        self.names = tuple(names)
        self.n = len(self.names)
        self.order = order

    def unit_monomial(self):
        return ()

    def mono_mul(self, m1, m2):
        return m1 + m2, None

    def gen(self, i):
        return Element(self, {(i,): self.field.one}, _clean=True)

    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def mono_string(self, w):
        return " ".join(self.names[g] for g in w) if w else "1"

    def to_string(self, f):
        if not f.terms:
            return "0"
        items = sorted(f.terms.items(), key=lambda kv: self.order.sort_key(kv[0]), reverse=True)
        return " + ".join("%s * %s" % (self.field.serialize(c), self.mono_string(m))
                          for m, c in items)

    def bar(self, f):
        """Anti-involution: reverse words, bar the coefficients."""
        return Element(self, {tuple(reversed(m)): self.field.bar(c)
                              for m, c in f.terms.items()})

    def substituted(self, f, images, target):
        out = target.zero()
        for m, c in f.terms.items():
            t = target.coerce(c)
            for g in m:
                t = t * images[g]
            out = out + t
        return out


class SemigroupAlgebra(_BaseRing):
    """Linear span of a partial semigroup; undefined compositions multiply to 0."""

    def __init__(self, field, P):
        self.field = field
        self.P = P
        self.order = _SemigroupOrderAdapter(P)
        self.commutative = False

    def unit_monomial(self):
        raise TypeError("partial semigroups need not have a unit")

    def coerce(self, x):
        if isinstance(x, Element):
            if x.ring is not self:
                raise TypeError("element of a different ring")
            return x
        raise TypeError("cannot coerce scalars into a semigroup algebra")

    def basis_element(self, c):
        self.P._check(c)
        return Element(self, {c: self.field.one}, _clean=True)

    def mono_mul(self, m1, m2):
        prod = self.P.compose(m1, m2)
        if not is_defined(prod):
            return UNDEFINED, None
        return prod, None

    def to_string(self, f):
        if not f.terms:
            return "0"
        items = sorted(f.terms.items(), key=lambda kv: self.order.sort_key(kv[0]), reverse=True)
        return " + ".join("%s * [%s]" % (self.field.serialize(c), m) for m, c in items)


class _SemigroupOrderAdapter:
    def __init__(self, P):
        self.P = P

    def sort_key(self, m):
        return self.P.sort_key(m)


# ---------------------------------------------------------------------------
# presentations


class Presentation:
    """Generators plus either commutative ideal generators or oriented
    rewrite rules (lhs a single word, every rhs monomial strictly below it).
    """

    def __init__(self, ring, ideal_generators=None, rewrite_rules=None):
        self.ring = ring
        self.ideal_generators = list(ideal_generators or [])
        self.rewrite_rules = []
        for lhs, rhs in (rewrite_rules or []):
            rhs = ring.coerce(rhs)
            key = ring.order.sort_key(lhs)
            for m in rhs.support():
                if ring.order.sort_key(m) > key:
                    raise ValueError("rewrite rule increases the order: %r -> %r" % (lhs, rhs))
            self.rewrite_rules.append((tuple(lhs), rhs))


# ---------------------------------------------------------------------------
# strict text grammar: terms `coef * x1^e1 ... xn^en`


def parse_polynomial(ring, text):
    """Parse the strict grammar; round-trips with to_string bit-exactly."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    out = ring.zero()
    for term in _split_terms(text):
        out = out + _parse_term(ring, term)
    return out


def _split_terms(text):
    # split on top-level '+' and binary '-'; unary minus folds into the term,
    # and a sign right after '^' or '*' is part of an exponent/coefficient
    terms, depth, cur, i = [], 0, "", 0
    while i < len(text):
        ch = text[i]
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        prev = cur.rstrip()[-1:] if cur.rstrip() else ""
        if depth == 0 and ch in "+-" and cur.strip() and prev not in ("^", "*", ""):
            terms.append(cur.strip())
            cur = "" if ch == "+" else "-"
        else:
            cur += ch
        i += 1
    if cur.strip():
        terms.append(cur.strip())
    return terms


def _parse_term(ring, term):
    neg = False
    term = term.strip()
    while term.startswith("-"):
        neg = not neg
        term = term[1:].strip()
    parts = []
    for chunk in _split_stars(term):
        parts.extend(p for p in chunk.split() if p) if not chunk.startswith("(") \
            else parts.append(chunk)
    coeff = ring.field.one
    mono_parts = []
    for p in parts:
        qpow = re.fullmatch(r"q\^\{(-?\d+)/2\}", p)
        if re.fullmatch(r"-?\d+(/\d+)?", p):
            coeff = coeff * ring.field.coerce(Fraction(p))
        elif qpow:
            coeff = coeff * _parse_qhalf(ring.field, "(v^%s)" % qpow.group(1))
        elif p.startswith("("):
            coeff = coeff * _parse_qhalf(ring.field, p)
        elif p == "1":
            pass
        else:
            mono_parts.append(p)
    if neg:
        coeff = coeff * ring.field.coerce(-1)
    if isinstance(ring, PolynomialRing):
        exps = [0] * ring.n
        for p in mono_parts:
            name, e = _name_exp(p)
            exps[ring.names.index(name)] += e
        mono = tuple(exps)
    else:
        word = []
        for p in mono_parts:
            name, e = _name_exp(p)
            word.extend([ring.names.index(name)] * e)
        mono = tuple(word)
    return Element(ring, {mono: coeff})


def _split_stars(term):
    """Split on '*' outside parentheses."""
    out, depth, cur = [], 0, ""
    for ch in term:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            if cur.strip():
                out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def _name_exp(p):
    if "^" in p:
        name, e = p.split("^")
        return name.strip(), int(e)
    return p, 1


def _parse_qhalf(field, text):
    # Laurent polynomial in v inside parentheses, e.g. "(1 + -1*v^2)" or "(v^-1)"
    if field is not QV:
        raise ValueError("parenthesised v-coefficients need the QV field")
    inner = text.strip()
    if inner.startswith("(") and inner.endswith(")"):
        inner = inner[1:-1]
    out = QV.zero
    for t in _split_terms(inner):
        neg = False
        t = t.strip()
        while t.startswith("-"):
            neg = not neg
            t = t[1:].strip()
        c = Fraction(1)
        k = 0
        for p in (s.strip() for s in t.split("*")):
            if re.fullmatch(r"\d+(/\d+)?", p):
                c *= Fraction(p)
            elif p == "v":
                k += 1
            elif p.startswith("v^"):
                k += int(p[2:])
            elif p.startswith("q^"):
                k += 2 * int(p[2:])
            elif p == "q":
                k += 2
            else:
                raise ValueError("bad v-term %r" % t)
        term = QHalf(k, (c,))
        out = out + (-term if neg else term)
    return out
