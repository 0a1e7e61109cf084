"""Symmetric and partially symmetric d-forms on V = Q^(n+1).

A :class:`SymTensor` stores the homogeneous polynomial q(x) = Q(x, ..., x);
its multilinear form Q is the polarization, i.e. the tensor entry at an index
sequence with multiset m is coefficient(m) / multinomial(m).

A :class:`PartialSymTensor` lies in Sym^(d-1) V* (x) V*.  The basis element
``(m, s)`` is P_m (x) e_s^*, where P_m is the polarization of the degree-(d-1)
monomial x^m, so that alpha(u, ..., u, v) = sum c[m, s] u^m v_s.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import factorial, prod
from typing import Iterable, Mapping, Sequence

from . import linalg
from .tables import dim_deformation_space

Mono = tuple[int, ...]
Key = tuple[Mono, int]


@lru_cache(maxsize=None)
def monomials(nvars: int, deg: int) -> tuple[Mono, ...]:
    """Exponent vectors of total degree ``deg``, lexicographically sorted."""
    out = []
    for combo in combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(sorted(out))


def multinomial(m: Mono) -> int:
    return factorial(sum(m)) // prod(factorial(e) for e in m)


@lru_cache(maxsize=None)
def index_sequences(m: Mono) -> tuple[tuple[int, ...], ...]:
    """Distinct orderings of the index multiset of ``m``."""
    base = [i for i, e in enumerate(m) for _ in range(e)]
    return tuple(sorted(set(permutations(base))))


def _add(e: Mono, i: int, by: int = 1) -> Mono:
    return e[:i] + (e[i] + by,) + e[i + 1:]


def _clean(entries: Mapping) -> dict:
    return {k: Fraction(v) for k, v in entries.items() if v != 0}


@dataclass(frozen=True)
class SymTensor:
    n: int
    d: int
    entries: dict[Mono, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", _clean(self.entries))
        for m in self.entries:
            if len(m) != self.n + 1 or sum(m) != self.d or min(m) < 0:
                raise ValueError(f"monomial {m} is not of degree {self.d} in {self.n + 1} variables")

    @property
    def nvars(self) -> int:
        return self.n + 1

    def __add__(self, other: "SymTensor") -> "SymTensor":
        _same_shape(self, other)
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = acc.get(k, 0) + v
        return SymTensor(self.n, self.d, acc)

    def scale(self, c) -> "SymTensor":
        return SymTensor(self.n, self.d, {k: v * c for k, v in self.entries.items()})

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SymTensor) and (self.n, self.d) == (other.n, other.d)
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.n, self.d, tuple(sorted(self.entries.items()))))

    def is_zero(self) -> bool:
        return not self.entries

    def evaluate(self, x: Sequence):
        """q(x) = Q(x, ..., x)."""
        return sum((c * _mono_value(m, x) for m, c in self.entries.items()), 0)

    def gradient(self, x: Sequence) -> list:
        """Partial derivatives of q at x, by direct differentiation."""
        out = []
        for i in range(self.nvars):
            acc = 0
            for m, c in self.entries.items():
                if m[i]:
                    acc = acc + c * m[i] * _mono_value(_add(m, i, -1), x)
            out.append(acc)
        return out


@dataclass(frozen=True)
class PartialSymTensor:
    n: int
    d: int
    entries: dict[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", _clean(self.entries))
        for m, s in self.entries:
            if len(m) != self.n + 1 or sum(m) != self.d - 1 or min(m) < 0:
                raise ValueError(f"monomial {m} is not of degree {self.d - 1} in {self.n + 1} variables")
            if not 0 <= s <= self.n:
                raise ValueError(f"slot {s} outside 0..{self.n}")

    @property
    def nvars(self) -> int:
        return self.n + 1

    def __add__(self, other: "PartialSymTensor") -> "PartialSymTensor":
        _same_shape(self, other)
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = acc.get(k, 0) + v
        return PartialSymTensor(self.n, self.d, acc)

    def scale(self, c) -> "PartialSymTensor":
        return PartialSymTensor(self.n, self.d, {k: v * c for k, v in self.entries.items()})

    def __sub__(self, other: "PartialSymTensor") -> "PartialSymTensor":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PartialSymTensor) and (self.n, self.d) == (other.n, other.d)
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.n, self.d, tuple(sorted(self.entries.items()))))

    def is_zero(self) -> bool:
        return not self.entries

    def last_slot_row(self, u: Sequence) -> list:
        """[alpha(u, ..., u, e_i) for i = 0..n]."""
        row = [0] * self.nvars
        for (m, s), c in self.entries.items():
            row[s] = row[s] + c * _mono_value(m, u)
        return row

    def diagonal(self, u: Sequence):
        """alpha(u, ..., u)."""
        return sum((c * _mono_value(m, u) * u[s] for (m, s), c in self.entries.items()), 0)


def _same_shape(a, b) -> None:
    if type(a) is not type(b) or (a.n, a.d) != (b.n, b.d):
        raise ValueError("tensor shape mismatch")


def _mono_value(m: Mono, x: Sequence):
    acc = 1
    for xi, e in zip(x, m):
        if e:
            acc = xi ** e * acc
    return acc


def _ring_of(args: Iterable[Sequence]):
    ring = None
    for v in args:
        for c in v:
            r = getattr(c, "ring", None)
            if r is not None:
                if ring is not None and r != ring:
                    raise ValueError("arguments live in different coefficient rings")
                ring = r
    return ring


def polarized_eval(t: SymTensor | PartialSymTensor, args: Sequence[Sequence]):
    """Multilinear evaluation T(v_1, ..., v_d)."""
    if len(args) != t.d:
        raise ValueError(f"expected {t.d} arguments, got {len(args)}")
    for v in args:
        if len(v) != t.nvars:
            raise ValueError(f"argument of length {len(v)}, expected {t.nvars}")
    _ring_of(args)
    total = 0
    if isinstance(t, SymTensor):
        for m, c in t.entries.items():
            total = total + Fraction(c, multinomial(m)) * _perm_sum(m, args)
        return total
    head = args[:-1]
    last = args[-1]
    for (m, s), c in t.entries.items():
        if not last[s]:
            continue
        total = total + Fraction(c, multinomial(m)) * _perm_sum(m, head) * last[s]
    return total


def _perm_sum(m: Mono, args: Sequence[Sequence]):
    acc = 0
    for seq in index_sequences(m):
        term = 1
        for v, i in zip(args, seq):
            term = v[i] * term
            if not term:
                break
        acc = acc + term
    return acc


def symmetrize(alpha: PartialSymTensor) -> SymTensor:
    """Image under sym^d, i.e. the polynomial alpha(x, ..., x)."""
    acc: dict[Mono, Fraction] = {}
    for (m, s), c in alpha.entries.items():
        k = _add(m, s)
        acc[k] = acc.get(k, 0) + c
    return SymTensor(alpha.n, alpha.d, acc)


def embed(q: SymTensor) -> PartialSymTensor:
    """Sym^d V* inside Sym^(d-1) V* (x) V*: q(x,...,x,v) = (1/d) v . grad q(x)."""
    acc: dict[Key, Fraction] = {}
    for m, c in q.entries.items():
        for i, e in enumerate(m):
            if e:
                k = (_add(m, i, -1), i)
                acc[k] = acc.get(k, 0) + Fraction(e, q.d) * c
    return PartialSymTensor(q.n, q.d, acc)


def partial_keys(n: int, d: int) -> list[Key]:
    return [(m, s) for m in monomials(n + 1, d - 1) for s in range(n + 1)]


def symmetrization_matrix(n: int, d: int) -> tuple[list[linalg.SparseRow], list[Key], list[Mono]]:
    """Rows indexed by degree-d monomials, columns by (m, slot)."""
    cols = partial_keys(n, d)
    rows_keys = list(monomials(n + 1, d))
    rindex = {m: i for i, m in enumerate(rows_keys)}
    rows: list[linalg.SparseRow] = [{} for _ in rows_keys]
    for j, (m, s) in enumerate(cols):
        rows[rindex[_add(m, s)]][j] = Fraction(1)
    return rows, cols, rows_keys


def to_vector(alpha: PartialSymTensor, index: Mapping[Key, int]) -> linalg.SparseRow:
    return {index[k]: v for k, v in alpha.entries.items()}


def from_vector(n: int, d: int, vec: Mapping[int, Fraction], cols: Sequence[Key]) -> PartialSymTensor:
    return PartialSymTensor(n, d, {cols[j]: v for j, v in vec.items()})


@lru_cache(maxsize=32)
def _basis_cached(n: int, d: int) -> tuple[PartialSymTensor, ...]:
    rows, cols, _ = symmetrization_matrix(n, d)
    null = linalg.nullspace(rows, len(cols))
    return tuple(from_vector(n, d, v, cols) for v in null)


def basis_A(n: int, d: int) -> list[PartialSymTensor]:
    """Basis of the kernel of sym^d on Sym^(d-1) V* (x) V*."""
    if n < 1 or d < 2:
        raise ValueError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    return list(_basis_cached(n, d))


def is_member_A(alpha: PartialSymTensor) -> bool:
    """alpha(v, ..., v, u) = -(d-1) alpha(u, v, ..., v) identically in u, v.

    Coefficients are compared on the monomials u_i v^m'.  The left side is
    sum c[m,s] u_s v^m; the right side expands alpha(u, v, ..., v) with
    P_m(u, v, ..., v) = (1/(d-1)) sum_i m_i u_i v^(m - e_i).
    """
    acc: dict[tuple[int, Mono], Fraction] = {}
    for (m, s), c in alpha.entries.items():
        key = (s, m)
        acc[key] = acc.get(key, 0) + c
        for i, e in enumerate(m):
            if e:
                key = (i, _add(_add(m, i, -1), s))
                acc[key] = acc.get(key, 0) + c * e
    return all(v == 0 for v in acc.values())


def span_rank(tensors: Sequence[PartialSymTensor], n: int, d: int) -> int:
    cols = partial_keys(n, d)
    index = {k: j for j, k in enumerate(cols)}
    return linalg.rank([to_vector(t, index) for t in tensors], len(cols))


def intersect_symd(n: int, d: int) -> int:
    """dim(span(basis_A) cap Sym^d V*) inside Sym^(d-1) V* (x) V*."""
    cols = partial_keys(n, d)
    index = {k: j for j, k in enumerate(cols)}
    a_rows = [to_vector(t, index) for t in basis_A(n, d)]
    s_rows = [to_vector(embed(SymTensor(n, d, {m: 1})), index) for m in monomials(n + 1, d)]
    ra = linalg.rank(a_rows, len(cols))
    rs = linalg.rank(s_rows, len(cols))
    ru = linalg.rank(a_rows + s_rows, len(cols))
    return ra + rs - ru


def expected_dim_A(n: int, d: int) -> int:
    return dim_deformation_space(n, d)


def fermat_tensor(n: int, d: int) -> SymTensor:
    return SymTensor(n, d, {tuple(d if j == i else 0 for j in range(n + 1)): 1 for i in range(n + 1)})


def combine(basis: Sequence[PartialSymTensor], coeffs: Sequence) -> PartialSymTensor:
    if not basis:
        raise ValueError("empty basis")
    acc = PartialSymTensor(basis[0].n, basis[0].d)
    for b, c in zip(basis, coeffs):
        if c:
            acc = acc + b.scale(Fraction(c))
    return acc
