"""Univariate polynomials over Q and the quotient rings Q[t]/(m(t)).

Polynomials are tuples of Fractions, lowest degree first, without trailing
zeros (the zero polynomial is ``()``).  When m is squarefree, Q[t]/(m) is a
product of number fields; an element that is nonzero but not invertible is a
zero divisor, reported as :class:`ZeroDivisorFound`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Poly = tuple[Fraction, ...]


class ZeroDivisorFound(ArithmeticError):
    """A nonzero non-unit turned up where a field was assumed."""


def poly(coeffs: Iterable) -> Poly:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: Poly) -> int:
    return len(p) - 1


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return poly(out)


def pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pneg(b))


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly(out)


def pscale(a: Poly, c) -> Poly:
    return poly(x * c for x in a)


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = degree(b)
    lead = b[-1]
    quo = [Fraction(0)] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = rem[k + db] / lead
        if c:
            quo[k] = c
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    return poly(quo), poly(rem[:db])


def pmonic(a: Poly) -> Poly:
    return pscale(a, 1 / a[-1]) if a else a


def pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def pxgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    if not r0:
        return (), s0, t0
    inv = 1 / r0[-1]
    return pscale(r0, inv), pscale(s0, inv), pscale(t0, inv)


def pderiv(a: Poly) -> Poly:
    return poly(i * c for i, c in enumerate(a) if i)


def squarefree_part(a: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of a (char 0)."""
    if degree(a) < 1:
        return pmonic(a)
    g = pgcd(a, pderiv(a))
    return pmonic(pdivmod(a, g)[0])


def peval(a: Poly, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


class QuotientRing:
    """Q[t]/(m(t)) for a monic squarefree m of positive degree."""

    def __init__(self, modulus: Sequence):
        m = poly(modulus)
        if degree(m) < 1:
            raise ValueError("modulus must have positive degree")
        m = pmonic(m)
        if degree(pgcd(m, pderiv(m))) > 0:
            raise ValueError("modulus must be squarefree")
        self.modulus: Poly = m
        self.deg = degree(m)

    def __eq__(self, other) -> bool:
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash(self.modulus)

    def __repr__(self) -> str:
        return f"QuotientRing({[str(c) for c in self.modulus]})"

    def reduce(self, p: Poly) -> Poly:
        if len(p) <= self.deg:
            return p
        return pdivmod(p, self.modulus)[1]

    def __call__(self, value) -> "QuotElem":
        if isinstance(value, QuotElem):
            if value.ring != self:
                raise ValueError("element belongs to a different quotient ring")
            return value
        if isinstance(value, (int, Fraction)):
            return QuotElem(self, poly([value]))
        return QuotElem(self, self.reduce(poly(value)))

    @property
    def zero(self) -> "QuotElem":
        return QuotElem(self, ())

    @property
    def one(self) -> "QuotElem":
        return QuotElem(self, (Fraction(1),))

    @property
    def gen(self) -> "QuotElem":
        return self((0, 1))


class QuotElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: QuotientRing, coeffs: Poly):
        self.ring = ring
        self.coeffs = coeffs

    def _lift(self, other) -> "QuotElem":
        if isinstance(other, QuotElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return QuotElem(self.ring, poly([other]))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuotElem(self.ring, padd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return QuotElem(self.ring, pneg(self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuotElem(self.ring, psub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuotElem(self.ring, pscale(self.coeffs, other))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuotElem(self.ring, self.ring.reduce(pmul(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QuotElem":
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.ring.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def inverse(self) -> "QuotElem":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = pxgcd(self.coeffs, self.ring.modulus)
        if degree(g) > 0:
            raise ZeroDivisorFound(f"zero divisor: gcd with modulus has degree {degree(g)}")
        return QuotElem(self.ring, self.ring.reduce(s))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuotElem(self.ring, pscale(self.coeffs, Fraction(1) / other))
        return self * self._lift(other).inverse()

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return bool(self.coeffs) and degree(pgcd(self.coeffs, self.ring.modulus)) == 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.coeffs == poly([other])
        if isinstance(other, QuotElem):
            return self.ring == other.ring and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*t^{k}")
        return " + ".join(terms)
