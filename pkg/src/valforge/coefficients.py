"""Exact coefficient fields: the rationals and rational functions in v = q^(1/2).

QHalf elements are stored as v^shift * num(v)/den(v) with num, den coprime
polynomials over Q, den monic with nonzero constant term.  This is a canonical
form, so equality is structural.
"""

from __future__ import annotations

from fractions import Fraction

# ---------------------------------------------------------------------------
# dense univariate polynomial helpers over Q (coefficient tuples, low first)


def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    return _ptrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _ptrim(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lb = b[-1]
    while len(a) >= len(b) and _ptrim(a):
        k = len(a) - len(b)
        c = a[-1] / lb
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        a = list(_ptrim(a))
    return _ptrim(q), _ptrim(a)


def _pgcd(a, b):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        lc = a[-1]
        a = tuple(x / lc for x in a)
    return a


class QHalf:
    """Element of Q(v), v = q^(1/2); q-powers are tracked as halves exactly."""

    __slots__ = ("shift", "num", "den")

    def __init__(self, shift=0, num=(Fraction(1),), den=(Fraction(1),), _normalized=False):
        if _normalized:
            self.shift, self.num, self.den = shift, num, den
            return
        num = _ptrim(Fraction(c) for c in num)
        den = _ptrim(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator in Q(v)")
        if not num:
            self.shift, self.num, self.den = 0, (), (Fraction(1),)
            return
        # pull v-powers out of num and den into the shift
        i = 0
        while num[i] == 0:
            i += 1
        j = 0
        while den[j] == 0:
            j += 1
        shift += i - j
        num, den = num[i:], den[j:]
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lc = den[-1]
        if lc != 1:
            num = tuple(x / lc for x in num)
            den = tuple(x / lc for x in den)
        self.shift, self.num, self.den = shift, num, den

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, r):
        r = Fraction(r)
        if r == 0:
            return cls(0, ())
        return cls(0, (r,))

    @classmethod
    def q_power(cls, half_numerator):
        """q^(half_numerator/2) = v^half_numerator."""
        return cls(int(half_numerator), (Fraction(1),))

    @classmethod
    def v_power(cls, k):
        return cls(int(k), (Fraction(1),))

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.shift == 0 and self.num == (Fraction(1),) and self.den == (Fraction(1),)

    def is_laurent(self):
        """True iff the element lies in Q[v, v^-1]."""
        return len(self.den) == 1

    def top_v_degree(self):
        """Highest v-exponent; only defined for Laurent elements."""
        if not self.num:
            raise ValueError("zero has no top degree")
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial in v")
        return self.shift + len(self.num) - 1

    def low_v_degree(self):
        if not self.num:
            raise ValueError("zero has no low degree")
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial in v")
        return self.shift

    def v_coefficient(self, k):
        """Coefficient of v^k; Laurent elements only."""
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial in v")
        i = k - self.shift
        if 0 <= i < len(self.num):
            return self.num[i] / self.den[0]
        return Fraction(0)

    # -- arithmetic ---------------------------------------------------------

    def _parts(self, other):
        if isinstance(other, QHalf):
            return other
        if isinstance(other, (int, Fraction)):
            return QHalf.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._parts(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        s = min(self.shift, other.shift)
        a = (0,) * (self.shift - s) + self.num
        b = (0,) * (other.shift - s) + other.num
        num = _padd(_pmul(a, other.den), _pmul(b, self.den))
        return QHalf(s, num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return QHalf(self.shift, _pneg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        other = self._parts(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._parts(other)
        if other is NotImplemented:
            return NotImplemented
        return QHalf(self.shift + other.shift, _pmul(self.num, other.num),
                     _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._parts(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(v)")
        return QHalf(self.shift - other.shift, _pmul(self.num, other.den),
                     _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return QHalf.from_rational(other) / self

    def __pow__(self, n):
        if n < 0:
            return QHalf.from_rational(1) / self ** (-n)
        out = QHalf.from_rational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self):
        """The involution v -> 1/v."""
        num = tuple(reversed(self.num))
        den = tuple(reversed(self.den))
        shift = -self.shift - (len(self.num) - 1) + (len(self.den) - 1)
        return QHalf(shift, num, den)

    def __eq__(self, other):
        other = self._parts(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.shift, self.num, self.den) == (other.shift, other.num, other.den)

    def __hash__(self):
        return hash((self.shift, self.num, self.den))

    def __repr__(self):
        return "QHalf(%s)" % self.serialize()

    def serialize(self):
        if not self.num:
            return "0"

        def poly_str(c, base_shift=0):
            parts = []
            for i, x in enumerate(c):
                if x == 0:
                    continue
                e = i + base_shift
                if e == 0:
                    parts.append(str(x))
                elif e == 1:
                    parts.append("%s*v" % x if x != 1 else "v")
                else:
                    parts.append("%s*v^%d" % (x, e) if x != 1 else "v^%d" % e)
            return " + ".join(parts) if parts else "0"

        if self.den == (Fraction(1),):
            if len(self.num) == 1 and self.num[0] == 1:
                # pure q-power: report as q^{p/2}
                if self.shift == 0:
                    return "1"
                return "q^{%d/2}" % self.shift
            return "(%s)" % poly_str(self.num, self.shift)
        return "(%s)/(%s)" % (poly_str(self.num, self.shift), poly_str(self.den))


class RationalField:
    """Field tag for plain rationals."""

    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError("cannot coerce %r into QQ" % (x,))

    def bar(self, x):
        return x

    def serialize(self, x):
        return str(x)


class QHalfField:
    """Field tag for Q(v), v = q^(1/2)."""

    name = "QV"

    zero = QHalf(0, ())
    one = QHalf.from_rational(1)

    def coerce(self, x):
        if isinstance(x, QHalf):
            return x
        if isinstance(x, (int, Fraction)):
            return QHalf.from_rational(x)
        raise TypeError("cannot coerce %r into Q(v)" % (x,))

    def bar(self, x):
        return x.bar()

    def serialize(self, x):
        return x.serialize()


QQ = RationalField()
QV = QHalfField()

# handy constants
V = QHalf.v_power(1)
Q = QHalf.v_power(2)
