"""Groebner bases under weight orders, commutative normal forms, and bounded
noncommutative rewriting.

The S-pair strategy is fixed (normal strategy: smallest lcm first, ties by
lex) so recomputation is reproducible.  Noncommutative completion is
deliberately out of scope: quotients are handled by user-supplied terminating
rewrite systems with a degree bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Element, PolynomialRing


@dataclass
class GroebnerBasis:
    ring: PolynomialRing
    elements: list          # reduced, monic, sorted by leading monomial
    leading_monomials: list

    def __iter__(self):
        return iter(self.elements)


def _monic(f):
    lc = f.leading_coefficient()
    if lc == f.ring.field.one:
        return f
    inv = f.ring.field.one / lc
    return f * inv


def reduce_poly(f, basis):
    """Full remainder of f modulo the list of polynomials (commutative)."""
    ring = f.ring
    order = ring.order
    rem = ring.zero()
    work = f
    lms = [(g.leading_monomial(), g) for g in basis]
    while work:
        m = work.leading_monomial()
        c = work.terms[m]
        for lm, g in lms:
            if ring.mono_divides(lm, m):
                shift = ring.mono_div(m, lm)
                factor = Element(ring, {shift: c / g.terms[lm]})
                work = work - factor * g
                break
        else:
            rem = rem + Element(ring, {m: c})
            work = work - Element(ring, {m: c})
    return rem


def groebner(generators, ring=None):
    """Reduced Groebner basis (Buchberger, normal strategy)."""
    gens = [g for g in generators if g]
    if not gens:
        raise ValueError("cannot take a Groebner basis of the zero ideal")
    ring = ring or gens[0].ring
    if not getattr(ring, "commutative", False):
        raise ValueError("Groebner bases here are commutative; use a rewrite system")
    order = ring.order

    basis = [_monic(g) for g in gens]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}

    def pair_key(p):
        i, j = p
        lcm = ring.mono_lcm(basis[i].leading_monomial(), basis[j].leading_monomial())
        return (order.sort_key(lcm), lcm)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        fi, fj = basis[i], basis[j]
        mi, mj = fi.leading_monomial(), fj.leading_monomial()
        lcm = ring.mono_lcm(mi, mj)
        # product criterion
        if all(a + b == c for a, b, c in zip(mi, mj, lcm)):
            continue
        s = (Element(ring, {ring.mono_div(lcm, mi): ring.field.one}) * fi
             - Element(ring, {ring.mono_div(lcm, mj): ring.field.one}) * fj)
        r = reduce_poly(s, basis)
        if r:
            r = _monic(r)
            basis.append(r)
            k = len(basis) - 1
            pairs.update((k, t) for t in range(k))

    # minimalize: drop elements whose lead divides by another lead
    basis.sort(key=lambda g: order.sort_key(g.leading_monomial()))
    minimal = []
    for g in basis:
        lm = g.leading_monomial()
        if not any(ring.mono_divides(h.leading_monomial(), lm) for h in minimal):
            minimal.append(g)
    # inter-reduce
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = reduce_poly(g, others)
        if r:
            reduced.append(_monic(r))
    reduced.sort(key=lambda g: order.sort_key(g.leading_monomial()))
    return GroebnerBasis(ring, reduced, [g.leading_monomial() for g in reduced])


def normal_form(f, gb):
    """Unique commutative normal form modulo a Groebner basis."""
    return reduce_poly(f, list(gb))


# ---------------------------------------------------------------------------
# noncommutative rewriting


@dataclass
class RewriteResult:
    element: object
    complete: bool
    steps: int


class RewriteSystem:
    """Oriented word rules lhs -> rhs with rhs strictly below lhs.

    Reduction replaces leftmost occurrences; because every rule decreases the
    word order, it terminates; step_bound is a safety valve whose exhaustion
    is reported, never silently ignored.
    """

    def __init__(self, ring, rules, step_bound=100000):
        self.ring = ring
        self.rules = []
        order = ring.order
        for lhs, rhs in rules:
            lhs = tuple(lhs)
            rhs = ring.coerce(rhs)
            lkey = order.sort_key(lhs)
            for m in rhs.support():
                if order.sort_key(m) >= lkey:
                    raise ValueError("rule does not decrease the order: %r" % (lhs,))
            self.rules.append((lhs, rhs))
        self.step_bound = step_bound

    def _find(self, word):
        for lhs, rhs in self.rules:
            lw = len(lhs)
            for i in range(len(word) - lw + 1):
                if word[i:i + lw] == lhs:
                    return i, lhs, rhs
        return None

    def normal_form(self, f):
        ring = self.ring
        field = ring.field
        done = {}
        work = dict(f.terms)
        steps = 0
        while work:
            if steps >= self.step_bound:
                out = dict(done)
                for m, c in work.items():
                    out[m] = out.get(m, field.zero) + c
                el = Element(ring, out)
                return RewriteResult(el, complete=False, steps=steps)
            # take the largest outstanding word to keep reductions canonical
            m = max(work, key=ring.order.sort_key)
            c = work.pop(m)
            if not c:
                continue
            hit = self._find(m)
            if hit is None:
                s = done.get(m, field.zero) + c
                if s:
                    done[m] = s
                else:
                    done.pop(m, None)
                continue
            i, lhs, rhs = hit
            left, right = m[:i], m[i + len(lhs):]
            for rm, rc in rhs.terms.items():
                new = left + rm + right
                s = work.get(new, field.zero) + c * rc
                if s:
                    work[new] = s
                else:
                    work.pop(new, None)
            steps += 1
        return RewriteResult(Element(ring, done), complete=True, steps=steps)
