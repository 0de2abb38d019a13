"""Weight keys with infinitesimal levels and the monomial orders built from them.

A weight is a fixed-length vector of rationals compared lexicographically:
level 0 is the real part, level k the coefficient of the k-th infinitesimal.
Every term order used in this package reduces to finitely many such levels,
so no symbolic infinitesimal arithmetic is ever needed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


@total_ordering
class OrderKey:
    """Fixed-length rational vector under lexicographic comparison."""

    __slots__ = ("levels",)

    def __init__(self, levels):
        self.levels = tuple(Fraction(v) for v in levels)

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    @classmethod
    def real(cls, value, n=1):
        return cls((Fraction(value),) + (0,) * (n - 1))

    def __len__(self):
        return len(self.levels)

    def __add__(self, other):
        return OrderKey(a + b for a, b in zip(self.levels, other.levels, strict=True))

    def __sub__(self, other):
        return OrderKey(a - b for a, b in zip(self.levels, other.levels, strict=True))

    def __neg__(self):
        return OrderKey(-a for a in self.levels)

    def scale(self, c):
        c = Fraction(c)
        return OrderKey(c * a for a in self.levels)

    def __eq__(self, other):
        return isinstance(other, OrderKey) and self.levels == other.levels

    def __lt__(self, other):
        return self.levels < other.levels

    def __hash__(self):
        return hash(self.levels)

    def is_zero(self):
        return all(v == 0 for v in self.levels)

    def __repr__(self):
        return "OrderKey(%s)" % (", ".join(str(v) for v in self.levels))


def key_dot(keys, exponents):
    """Sum of exponents[i] * keys[i]; the weight of a monomial."""
    n = len(keys[0]) if keys else 1
    acc = OrderKey.zero(n)
    for k, e in zip(keys, exponents, strict=True):
        if e:
            acc = acc + k.scale(e)
    return acc


class MonomialOrder:
    """Total multiplicative order on exponent vectors.

    Subclasses provide sort_key(exps); comparison is tuple comparison of the
    keys, so max()/sorted() work directly on keyed monomials.
    """

    def sort_key(self, exps):
        raise NotImplementedError

    def compare(self, a, b):
        ka, kb = self.sort_key(a), self.sort_key(b)
        return -1 if ka < kb else (0 if ka == kb else 1)

    def max(self, exps_iter):
        return max(exps_iter, key=self.sort_key)


class LexOrder(MonomialOrder):
    """Lexicographic order; priority lists variable indices, dominant first."""

    def __init__(self, nvars, priority=None):
        self.nvars = nvars
        self.priority = tuple(priority) if priority is not None else tuple(range(nvars))

    def sort_key(self, exps):
        return tuple(exps[i] for i in self.priority)


class DegLexOrder(MonomialOrder):
    """Degree first (optionally weighted), lex tie-break by priority."""

    def __init__(self, nvars, priority=None, weights=None):
        self.nvars = nvars
        self.priority = tuple(priority) if priority is not None else tuple(range(nvars))
        self.weights = tuple(weights) if weights is not None else (1,) * nvars

    def sort_key(self, exps):
        deg = sum(w * e for w, e in zip(self.weights, exps))
        return (deg,) + tuple(exps[i] for i in self.priority)


class WeightOrder(MonomialOrder):
    """Order by OrderKey weights, ties broken by lex on a declared priority.

    The tie-break is mandatory: weights with a nontrivial common kernel do not
    give a total order by themselves.
    """

    def __init__(self, keys, priority=None):
        self.keys = tuple(keys)
        self.nvars = len(self.keys)
        self.priority = tuple(priority) if priority is not None else tuple(range(self.nvars))

    def sort_key(self, exps):
        w = key_dot(self.keys, exps)
        return w.levels + tuple(exps[i] for i in self.priority)


class WordDegLexOrder:
    """Generalized deglex on words: weighted length, then letter-by-letter.

    lengths[i] is the (positive integer) length of generator i; priority lists
    generator indices with the dominant generator first.
    """

    def __init__(self, ngens, priority=None, lengths=None):
        self.ngens = ngens
        self.priority = tuple(priority) if priority is not None else tuple(range(ngens))
        self.lengths = tuple(lengths) if lengths is not None else (1,) * ngens
        if any(l <= 0 for l in self.lengths):
            raise ValueError("generator lengths must be positive")
        # rank[g] = position in priority; smaller rank = bigger generator,
        # and bigger generators must come first in the letter tie-break.
        self._rank = {g: r for r, g in enumerate(self.priority)}

    def sort_key(self, word):
        total = sum(self.lengths[g] for g in word)
        # dominant letters should make the word *larger*, so negate the rank
        return (total, tuple(-self._rank[g] for g in word))

    def compare(self, a, b):
        ka, kb = self.sort_key(a), self.sort_key(b)
        return -1 if ka < kb else (0 if ka == kb else 1)

    def max(self, words_iter):
        return max(words_iter, key=self.sort_key)
