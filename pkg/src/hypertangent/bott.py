"""Dimensions h^i(P^n, Omega^j(k)) from Bott's formula."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb


class BottError(ValueError):
    pass


def binom(a: int, b: int) -> int:
    """C(a, b), zero when b < 0 or a < b."""
    if b < 0 or a < b:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class BottQuery:
    n: int
    i: int
    j: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise BottError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.i <= self.n:
            raise BottError(f"cohomological degree i={self.i} outside 0..{self.n}")
        if not 0 <= self.j <= self.n:
            raise BottError(f"form degree j={self.j} outside 0..{self.n}")


def bott_dim(n: int, i: int, j: int, k: int) -> int:
    q = BottQuery(n, i, j, k)
    return _bott(q.n, q.i, q.j, q.k)


def _bott(n: int, i: int, j: int, k: int) -> int:
    if i == 0 and k > j:
        return binom(n + k - j, k) * binom(k - 1, j)
    if i == n and k < j - n:
        return binom(j - k, -k) * binom(-k - 1, n - j)
    if k == 0 and i == j:
        return 1
    return 0


def dims_vector(n: int, j: int, k: int) -> list[int]:
    """[h^0, ..., h^n] of Omega^j(k) on P^n."""
    return [bott_dim(n, i, j, k) for i in range(n + 1)]


def euler_char(n: int, j: int, k: int) -> int:
    return sum((-1) ** i * h for i, h in enumerate(dims_vector(n, j, k)))


def line_bundle_dim(n: int, i: int, k: int) -> int:
    """h^i(P^n, O(k))."""
    return bott_dim(n, i, 0, k)


def tangent_twist_dim(n: int, i: int, k: int) -> int:
    """h^i(P^n, T(k)) through T = Omega^(n-1)(n+1)."""
    return bott_dim(n, i, n - 1, n + 1 + k)
