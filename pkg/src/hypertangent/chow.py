"""Truncated Chow ring of a smooth hypersurface X in P^n.

Classes are polynomials in the hyperplane class h with exact rational
coefficients, truncated above degree dim X = n - 1.  On a degree-d
hypersurface the top power h^(n-1) has degree d, which is all that
:func:`integrate` needs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Union

Number = Union[int, Fraction]


class ChowError(ValueError):
    pass


class ConsistencyError(ArithmeticError):
    """An identity that must hold exactly came out wrong."""


@dataclass(frozen=True)
class ChowElement:
    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ChowError(f"ambient dimension must be positive, got {self.n}")
        # classes above degree dim X = n-1 vanish
        cs = tuple(Fraction(c) for c in self.coeffs)[: self.n]
        cs = cs + (Fraction(0),) * (self.n - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_list(cls, n: int, coeffs: Iterable[Number]) -> "ChowElement":
        return cls(n, tuple(Fraction(c) for c in coeffs))

    @classmethod
    def scalar(cls, n: int, c: Number) -> "ChowElement":
        return cls(n, (Fraction(c),))

    @classmethod
    def one(cls, n: int) -> "ChowElement":
        return cls.scalar(n, 1)

    @classmethod
    def hyperplane(cls, n: int) -> "ChowElement":
        return cls(n, (Fraction(0), Fraction(1)))

    @property
    def top_degree(self) -> int:
        return self.n - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def _check(self, other: "ChowElement") -> None:
        if self.n != other.n:
            raise ChowError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def _coerce(self, other) -> "ChowElement":
        if isinstance(other, ChowElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return ChowElement.scalar(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ChowElement(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ChowElement(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ChowElement":
        if e < 0:
            return invert(self) ** (-e)
        acc = ChowElement.one(self.n)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __truediv__(self, other):
        if isinstance(other, ChowElement):
            return self * invert(other)
        return ChowElement(self.n, tuple(a / Fraction(other) for a in self.coeffs))

    def is_nilpotent(self) -> bool:
        return self.coeffs[0] == 0

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def mul(a: ChowElement, b: ChowElement) -> ChowElement:
    a._check(b)
    n = a.n
    out = [Fraction(0)] * n
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j in range(n - i):
            y = b.coeffs[j]
            if y:
                out[i + j] += x * y
    return ChowElement(n, tuple(out))


def invert(a: ChowElement) -> ChowElement:
    a0 = a.coeffs[0]
    if a0 == 0:
        raise ChowError("element is not a unit: degree-0 coefficient is zero")
    out = [Fraction(0)] * a.n
    out[0] = 1 / a0
    for k in range(1, a.n):
        s = sum((a.coeffs[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
        out[k] = -s / a0
    return ChowElement(a.n, tuple(out))


def exp(a: ChowElement) -> ChowElement:
    """Truncated exponential of a nilpotent class."""
    if not a.is_nilpotent():
        raise ChowError("exp is only defined here for classes without a degree-0 part")
    acc = ChowElement.one(a.n)
    term = ChowElement.one(a.n)
    for k in range(1, a.n):
        term = term * a / k
        acc = acc + term
    return acc


@dataclass(frozen=True)
class CharacteristicData:
    rank: int
    total_chern: ChowElement

    def __post_init__(self):
        if self.total_chern.coeffs[0] != 1:
            raise ChowError("total Chern class must start with 1")

    @property
    def n(self) -> int:
        return self.total_chern.n


def total_chern_tangent(n: int, d: int) -> CharacteristicData:
    """c(T_X) = (1+h)^(n+1) / (1+dh) for a degree-d hypersurface in P^n."""
    if n < 3 or d < 1:
        raise ChowError(f"need n >= 3 and d >= 1, got n={n}, d={d}")
    h = ChowElement.hyperplane(n)
    c = (1 + h) ** (n + 1) * invert(1 + d * h)
    return CharacteristicData(rank=n - 1, total_chern=c)


def power_sums(cd: CharacteristicData) -> list[Fraction]:
    """Coefficients p_k (k = 0..n-1) of the Chern-root power sums.

    p_0 is the rank; for k >= 1 Newton's identities give
    p_k = (-1)^(k-1) k e_k + sum_{i=1}^{k-1} (-1)^(k-1+i) e_{k-i} p_i.
    """
    e = cd.total_chern.coeffs
    top = cd.n - 1
    p = [Fraction(cd.rank)] + [Fraction(0)] * top
    for k in range(1, top + 1):
        s = (-1) ** (k - 1) * k * e[k]
        for i in range(1, k):
            s += (-1) ** (k - 1 + i) * e[k - i] * p[i]
        p[k] = s
    return p


def chern_character(cd: CharacteristicData) -> ChowElement:
    p = power_sums(cd)
    return ChowElement(cd.n, tuple(pk / factorial(k) for k, pk in enumerate(p)))


def dual_character(ch: ChowElement) -> ChowElement:
    """Chern character of the dual bundle: odd degrees change sign."""
    return ChowElement(ch.n, tuple(c if k % 2 == 0 else -c for k, c in enumerate(ch.coeffs)))


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m with B_1 = -1/2."""
    if m == 0:
        return Fraction(1)
    s = sum((comb(m + 1, j) * bernoulli(j) for j in range(m)), Fraction(0))
    return -s / (m + 1)


def todd_class(cd: CharacteristicData) -> ChowElement:
    """Todd class via log td = p_1/2 - sum_k B_2k p_2k / (2k (2k)!), then exp."""
    p = power_sums(cd)
    top = cd.n - 1
    log_td = [Fraction(0)] * cd.n
    if top >= 1:
        log_td[1] = p[1] / 2
    k = 1
    while 2 * k <= top:
        log_td[2 * k] = -bernoulli(2 * k) * p[2 * k] / (2 * k * factorial(2 * k))
        k += 1
    return exp(ChowElement(cd.n, tuple(log_td)))


def integrate(a: ChowElement, d: int) -> Fraction:
    """Degree of the top-dimensional part on a degree-d hypersurface."""
    return d * a.coeffs[a.n - 1]


def chi_end_tangent(n: int, d: int) -> int:
    """Euler characteristic of T_X (x) Omega_X by Hirzebruch-Riemann-Roch."""
    if n < 3 or d < 2:
        raise ChowError(f"need n >= 3 and d >= 2, got n={n}, d={d}")
    cd = total_chern_tangent(n, d)
    ch_t = chern_character(cd)
    chi = integrate(ch_t * dual_character(ch_t) * todd_class(cd), d)
    if chi.denominator != 1:
        raise ConsistencyError(f"non-integral Euler characteristic {chi} for n={n}, d={d}")
    return int(chi)
