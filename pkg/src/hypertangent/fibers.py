"""Exact points of X and the fiberwise maps phi^alpha.

Points are taken on random rational lines p + s w: restricting q gives a
univariate g(s), and the point has coordinates p + w t in Q[t]/(m(t)) for m
the squarefree part of g.  The line bundle factors of phi^alpha_x are
trivialized by the representative u, so phi^alpha_x becomes the functional
v -> (q + alpha)(u, ..., u, v) on V.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import kernels
from .quotring import (
    QuotElem, QuotientRing, ZeroDivisorFound, degree, padd, pmul, poly, squarefree_part,
)
from . import linalg
from .tensors import PartialSymTensor, SymTensor, basis_A, combine, embed, is_member_A

RETRY_ENV = "HYPERTANGENT_RETRIES"
DEFAULT_RETRIES = 64


class SamplingError(RuntimeError):
    pass


class NotInDeformationSpace(ValueError):
    pass


def retry_budget() -> int:
    raw = os.environ.get(RETRY_ENV)
    if not raw:
        return DEFAULT_RETRIES
    v = int(raw)
    if v < 1:
        raise ValueError(f"{RETRY_ENV} must be positive")
    return v


@dataclass(frozen=True)
class PointOnX:
    ring: QuotientRing
    coords: tuple[QuotElem, ...]
    base: tuple[int, ...] = ()
    direction: tuple[int, ...] = ()

    @property
    def modulus(self):
        return self.ring.modulus


def restrict_to_line(q: SymTensor, p: Sequence, w: Sequence) -> tuple[Fraction, ...]:
    """Coefficients of g(s) = q(p + s w)."""
    g: tuple = ()
    lines = [poly([pi, wi]) for pi, wi in zip(p, w)]
    for m, c in q.entries.items():
        term = poly([c])
        for li, e in zip(lines, m):
            for _ in range(e):
                term = pmul(term, li)
        g = padd(g, term)
    return g


def point_on_line(q: SymTensor, p: Sequence[int], w: Sequence[int]) -> PointOnX:
    g = restrict_to_line(q, p, w)
    if not g:
        raise SamplingError("line lies in the hypersurface")
    if degree(g) < 1:
        raise SamplingError("line misses the hypersurface")
    ring = QuotientRing(squarefree_part(g))
    t = ring.gen
    coords = tuple(ring(pi) + t * wi for pi, wi in zip(p, w))
    return PointOnX(ring, coords, tuple(p), tuple(w))


def sample_point(q: SymTensor, seed: int, retries: int | None = None, spread: int = 3) -> PointOnX:
    """Deterministic in ``seed``; retries degenerate lines up to the budget."""
    if q.is_zero():
        raise ValueError("cannot sample points of the zero form")
    rng = random.Random(seed)
    budget = retries if retries is not None else retry_budget()
    nv = q.nvars
    for _ in range(budget):
        p = [rng.randint(-spread, spread) for _ in range(nv)]
        w = [rng.randint(-spread, spread) for _ in range(nv)]
        if _proportional(p, w):
            continue
        try:
            return point_on_line(q, p, w)
        except SamplingError:
            continue
    raise SamplingError(f"no usable line after {budget} attempts")


def _proportional(p: Sequence[int], w: Sequence[int]) -> bool:
    return all(p[i] * w[j] == p[j] * w[i] for i in range(len(p)) for j in range(i + 1, len(p)))


def phi_row(q: SymTensor, alpha: PartialSymTensor | None, u: PointOnX | Sequence,
            check: bool = True) -> list:
    """[(q + alpha)(u, ..., u, e_i) for i = 0..n]."""
    coords = u.coords if isinstance(u, PointOnX) else u
    total = embed(q)
    if alpha is not None:
        if (alpha.n, alpha.d) != (q.n, q.d):
            raise ValueError("alpha and q have different shapes")
        if check and not is_member_A(alpha):
            raise NotInDeformationSpace("alpha does not satisfy the deformation-space identity")
        total = total + alpha
    if check:
        val = q.evaluate(coords)
        if val != 0:
            raise ValueError("point does not lie on the hypersurface")
    return total.last_slot_row(coords)


@dataclass
class KernelFiber:
    kernel_dim: int
    quotient_dim: int
    kernel_basis: list
    quotient_basis: list
    contains_u: bool

    @property
    def rank_jump(self) -> bool:
        return self.kernel_dim != len(self.kernel_basis[0]) - 1 if self.kernel_basis else True


def _as_unit(x) -> bool:
    if isinstance(x, QuotElem):
        return x.is_unit()
    return x != 0


def kernel_fiber(q: SymTensor, alpha: PartialSymTensor | None, u: PointOnX | Sequence,
                 check: bool = True) -> KernelFiber:
    """Kernel of phi^alpha_x and its quotient by the Euler line <u>.

    Raises :class:`ZeroDivisorFound` when elimination meets a zero divisor
    of the coordinate ring; the caller resamples.
    """
    coords = list(u.coords if isinstance(u, PointOnX) else u)
    row = phi_row(q, alpha, coords, check=check)
    nv = len(row)
    zero = row[0] * 0
    one = zero + 1
    contains_u = sum((ui * ri for ui, ri in zip(coords, row)), zero) == 0

    pivot = None
    for i, r in enumerate(row):
        if r:
            if not _as_unit(r):
                raise ZeroDivisorFound(f"functional entry {i} is a zero divisor")
            pivot = i
            break
    if pivot is None:
        basis = [[one if j == i else zero for j in range(nv)] for i in range(nv)]
    else:
        inv = 1 / row[pivot] if not isinstance(row[pivot], QuotElem) else row[pivot].inverse()
        basis = []
        for j in range(nv):
            if j == pivot:
                continue
            v = [zero] * nv
            v[j] = one
            v[pivot] = -(row[j] * inv)
            basis.append(v)
    free = [j for j in range(nv) if j != pivot]

    # coordinates of u in the kernel basis are its entries off the pivot
    drop = None
    if contains_u:
        for pos, j in enumerate(free):
            if coords[j]:
                if not _as_unit(coords[j]):
                    raise ZeroDivisorFound(f"coordinate {j} of u is a zero divisor")
                drop = pos
                break
        if drop is None:
            raise ZeroDivisorFound("u vanishes off the pivot coordinate")
    quotient = [b for k, b in enumerate(basis) if k != drop]
    return KernelFiber(len(basis), len(quotient), basis, quotient, contains_u)


def jacobian_annihilates(q: SymTensor, u: PointOnX | Sequence, vectors: Sequence[Sequence]) -> bool:
    """Every vector v satisfies sum_i v_i dq/dx_i(u) = 0."""
    coords = u.coords if isinstance(u, PointOnX) else u
    grad = q.gradient(coords)
    for v in vectors:
        s = sum((vi * gi for vi, gi in zip(v, grad)), 0)
        if s != 0:
            return False
    return True


def jacobian_rank(q: SymTensor, u: PointOnX | Sequence) -> int:
    coords = u.coords if isinstance(u, PointOnX) else u
    return 1 if any(g != 0 for g in q.gradient(coords)) else 0


# -- evidence for the open set of good alphas ------------------------------


@dataclass
class FiberSample:
    seed: int
    modulus: tuple[Fraction, ...]
    kernel_dim: int
    quotient_dim: int
    contains_u: bool


@dataclass
class PrimeScan:
    p: int
    status: str
    common_zeros: int = 0
    examples: list = field(default_factory=list)
    note: str = ""


@dataclass
class ScanReport:
    n: int
    d: int
    fibers: list[FiberSample]
    resamples: int
    primes: list[PrimeScan]

    @property
    def all_fibers_good(self) -> bool:
        return all(f.quotient_dim == self.n - 1 and f.contains_u for f in self.fibers)

    @property
    def warnings(self) -> list[PrimeScan]:
        return [s for s in self.primes if s.status == "warning"]


def _mod_p(c: Fraction, p: int) -> int | None:
    if c.denominator % p == 0:
        return None
    return c.numerator * pow(c.denominator, -1, p) % p


def functional_forms(q: SymTensor, alpha: PartialSymTensor | None) -> list[dict]:
    """The n+1 forms x -> (q + alpha)(x, ..., x, e_i) as exponent dicts."""
    total = embed(q) if alpha is None else embed(q) + alpha
    forms: list[dict] = [{} for _ in range(q.nvars)]
    for (m, s), c in total.entries.items():
        forms[s][m] = forms[s].get(m, 0) + c
    return forms


def scan_prime(q: SymTensor, alpha: PartialSymTensor | None, p: int, limit: int = 5) -> PrimeScan:
    if q.d % p == 0:
        return PrimeScan(p, "skipped", note=f"{p} divides the degree; polarization needs 1/{q.d}")
    polys = [dict(q.entries)] + functional_forms(q, alpha)
    reduced = []
    for f in polys:
        g = {}
        for m, c in f.items():
            r = _mod_p(Fraction(c), p)
            if r is None:
                return PrimeScan(p, "skipped", note=f"denominator divisible by {p}")
            if r:
                g[m] = r
        reduced.append(g)
    if not reduced[0]:
        return PrimeScan(p, "skipped", note=f"q vanishes mod {p}")
    count, pts = kernels.projective_common_zeros(reduced, q.nvars, p, limit)
    if count:
        return PrimeScan(p, "warning", count, [list(x) for x in pts],
                         "common zero of q and every phi-form: possible rank jump")
    return PrimeScan(p, "ok", 0, [], f"no common zero among {kernels.projective_point_count(q.nvars, p)} points")


def acirc_scan(q: SymTensor, alpha: PartialSymTensor | None, point_budget: int,
               primes: Sequence[int] = (), seed: int = 0) -> ScanReport:
    """Sampled fibers in characteristic 0 plus exhaustive scans over F_p.

    This is evidence only: a warning means the fiber rank may jump, an empty
    scan supports (but does not certify) alpha lying in the good open set.
    """
    if alpha is not None and not is_member_A(alpha):
        raise NotInDeformationSpace("alpha does not satisfy the deformation-space identity")
    fibers: list[FiberSample] = []
    resamples = 0
    attempt = 0
    limit = point_budget * retry_budget()
    while len(fibers) < point_budget:
        if attempt >= limit:
            raise SamplingError(f"gave up after {attempt} attempts")
        s = seed * 100_003 + attempt
        attempt += 1
        try:
            pt = sample_point(q, s)
            kf = kernel_fiber(q, alpha, pt, check=False)
        except (ZeroDivisorFound, SamplingError):
            resamples += 1
            continue
        fibers.append(FiberSample(s, pt.modulus, kf.kernel_dim, kf.quotient_dim, kf.contains_u))
    scans = [scan_prime(q, alpha, p) for p in primes]
    return ScanReport(q.n, q.d, fibers, resamples, scans)


def degenerate_alpha(q: SymTensor, x0: Sequence) -> PartialSymTensor:
    """An alpha in the deformation space whose functional vanishes at x0.

    Solves alpha(x0, ..., x0, e_i) = -q(x0, ..., x0, e_i) over the basis of
    the deformation space, so the fiber of the kernel jumps at x0.
    """
    if q.evaluate(x0) != 0:
        raise ValueError("x0 must lie on the hypersurface")
    basis = basis_A(q.n, q.d)
    target = [-v for v in embed(q).last_slot_row(x0)]
    cols = [b.last_slot_row(x0) for b in basis]
    rows = [{j: Fraction(c[i]) for j, c in enumerate(cols) if c[i]} for i in range(q.nvars)]
    sol = linalg.solve(rows, target, len(basis))
    if sol is None:
        raise ValueError("no alpha in the deformation space kills the functional at x0")
    return combine(basis, [sol.get(j, 0) for j in range(len(basis))])


def random_alpha(n: int, d: int, seed: int, terms: int = 4, scale: Fraction = Fraction(1, 10)) -> PartialSymTensor:
    """A small random element of the deformation space."""
    rng = random.Random(seed)
    basis = basis_A(n, d)
    coeffs = [0] * len(basis)
    for j in rng.sample(range(len(basis)), min(terms, len(basis))):
        coeffs[j] = scale * rng.choice([-3, -2, -1, 1, 2, 3])
    return combine(basis, coeffs)
