"""Dimension bookkeeping for exact sequences of cohomology groups.

An exact sequence ``0 -> T_1 -> ... -> T_m -> 0`` is turned into linear
constraints ``mult_i * dim(T_i) = r_{i-1} + r_i`` on nonnegative integer
ranks ``r_0 = r_m = 0``.  Several sequences may share term variables; the
whole system is solved by integer interval propagation to a fixed point.
Nothing is guessed: a value is reported only when the constraints force it.

Known dimensions enter through a :class:`FactRegistry`, where each entry
carries a citation.  Chases never accept an uncited number.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .bott import bott_dim

Dim = Union[int, str]


class ChaseError(RuntimeError):
    pass


class UnregisteredFact(ChaseError):
    pass


class InconsistentFacts(ChaseError):
    pass


# -- terms and sequences ---------------------------------------------------


@dataclass(frozen=True)
class SeqTerm:
    """A term of an exact sequence.

    ``dim`` is either a known nonnegative integer or the name of an unknown.
    ``mult`` counts copies for direct sums such as ``F^(n+1)``.
    """

    label: str
    dim: Dim
    mult: int = 1

    def __post_init__(self):
        if isinstance(self.dim, int) and self.dim < 0:
            raise ValueError(f"negative dimension for {self.label}")
        if self.mult < 1:
            raise ValueError(f"multiplicity must be positive for {self.label}")

    @property
    def known(self) -> bool:
        return isinstance(self.dim, int)

    @property
    def var(self) -> str:
        return self.label if self.known else self.dim


@dataclass(frozen=True)
class ExactSequence:
    terms: tuple[SeqTerm, ...]
    name: str = ""

    def __post_init__(self):
        if not self.terms:
            raise ValueError("an exact sequence needs at least one term")

    @classmethod
    def of(cls, *items, name: str = "") -> "ExactSequence":
        """Build from shorthand items.

        An ``int`` is a known term labelled by its value, a ``str`` is an
        unknown, and a ``(label, dim)`` pair is a labelled term.
        """
        terms = []
        for it in items:
            if isinstance(it, SeqTerm):
                terms.append(it)
            elif isinstance(it, int):
                terms.append(SeqTerm(str(it), it))
            elif isinstance(it, str):
                terms.append(SeqTerm(it, it))
            else:
                label, dim = it
                terms.append(SeqTerm(label, dim))
        return cls(tuple(terms), name)

    def __len__(self) -> int:
        return len(self.terms)


def alternating_sum_check(seq: ExactSequence) -> bool:
    """True iff the alternating sum of dimensions vanishes."""
    if not all(t.known for t in seq.terms):
        raise ValueError("alternating_sum_check needs every dimension known")
    return sum((-1) ** i * t.mult * t.dim for i, t in enumerate(seq.terms)) == 0


# -- symbolic bookkeeping for derivation output -----------------------------


def _is_literal(label: str) -> bool:
    try:
        int(label)
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class Affine:
    """``const + sum coeff * symbol`` over known-term labels."""

    const: Fraction = Fraction(0)
    coeffs: tuple[tuple[str, Fraction], ...] = ()

    @classmethod
    def symbol(cls, label: str, value: int) -> "Affine":
        if _is_literal(label):
            return cls(Fraction(value))
        return cls(Fraction(0), ((label, Fraction(1)),))

    def scale(self, c: Fraction) -> "Affine":
        return Affine(self.const * c, tuple((s, v * c) for s, v in self.coeffs))

    def __add__(self, other: "Affine") -> "Affine":
        acc = dict(self.coeffs)
        for s, v in other.coeffs:
            acc[s] = acc.get(s, 0) + v
        return Affine(self.const + other.const, tuple((s, v) for s, v in acc.items() if v))

    def render(self) -> str:
        parts = []
        for s, v in self.coeffs:
            if v == 1:
                parts.append(f"+ {s}")
            elif v == -1:
                parts.append(f"- {s}")
            elif v > 0:
                parts.append(f"+ {v}*{s}")
            else:
                parts.append(f"- {-v}*{s}")
        if self.const or not parts:
            c = self.const
            parts.append(f"+ {c}" if c >= 0 else f"- {-c}")
        text = " ".join(parts)
        if text.startswith("+ "):
            text = text[2:]
        elif text.startswith("- "):
            text = "-" + text[2:]
        return text


# -- solver ----------------------------------------------------------------


@dataclass
class Interval:
    lo: int = 0
    hi: int | None = None

    @property
    def fixed(self) -> bool:
        return self.hi is not None and self.lo == self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {'inf' if self.hi is None else self.hi}]"


def _floordiv(a: int, b: int) -> int:
    return a // b


def _ceildiv(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass
class Solution:
    status: str
    values: dict[str, int]
    intervals: dict[str, Interval]
    derivations: dict[str, str]
    conflict: str | None = None

    @property
    def consistent(self) -> bool:
        return self.status != "inconsistent"

    def value(self, var: str) -> int | None:
        return self.values.get(var)

    def describe(self, var: str) -> str:
        if var in self.derivations:
            return self.derivations[var]
        iv = self.intervals.get(var)
        return f"{var} in {iv}" if iv is not None else f"{var}: not in system"


class DimSystem:
    """Linear integer constraints on nonnegative dimensions and ranks."""

    def __init__(self):
        self._bounds: dict[str, Interval] = {}
        self._symbols: dict[str, Affine] = {}
        self._equations: list[tuple[tuple[int, str], ...]] = []
        self._term_vars: list[str] = []
        self._nseq = 0
        self._conflict: str | None = None

    def _var(self, name: str) -> Interval:
        if name not in self._bounds:
            self._bounds[name] = Interval()
        return self._bounds[name]

    def pin(self, name: str, value: int, symbolic: bool = True) -> None:
        iv = self._var(name)
        if iv.fixed and iv.lo != value:
            self._conflict = self._conflict or f"{name} declared both {iv.lo} and {value}"
            return
        iv.lo = iv.hi = value
        if symbolic and name not in self._symbols:
            self._symbols[name] = Affine.symbol(name, value)

    def equate(self, a: str, b: str) -> None:
        for v in (a, b):
            self._var(v)
            if v not in self._term_vars:
                self._term_vars.append(v)
        self._equations.append(((1, a), (-1, b)))

    def add_sequence(self, seq: ExactSequence) -> list[str]:
        """Add exactness constraints; returns the rank variable names."""
        tag = seq.name or f"seq{self._nseq}"
        self._nseq += 1
        m = len(seq.terms)
        ranks = [f"{tag}.r{k}" for k in range(m + 1)]
        for r in ranks:
            self._var(r)
        self.pin(ranks[0], 0, symbolic=False)
        self.pin(ranks[-1], 0, symbolic=False)
        self._symbols[ranks[0]] = Affine()
        self._symbols[ranks[-1]] = Affine()
        for k, t in enumerate(seq.terms, start=1):
            v = t.var
            if t.known:
                self.pin(v, t.dim)
            else:
                self._var(v)
            if v not in self._term_vars:
                self._term_vars.append(v)
            self._equations.append(((t.mult, v), (-1, ranks[k - 1]), (-1, ranks[k])))
        return ranks

    @property
    def term_vars(self) -> list[str]:
        return list(self._term_vars)

    def _tighten(self, eq) -> bool:
        changed = False
        for j, (cj, xj) in enumerate(eq):
            lo_s, hi_s = 0, 0
            for k, (ck, xk) in enumerate(eq):
                if k == j:
                    continue
                b = self._bounds[xk]
                if ck > 0:
                    lo_s += ck * b.lo
                    hi_s = None if (hi_s is None or b.hi is None) else hi_s + ck * b.hi
                else:
                    lo_s = None if (lo_s is None or b.hi is None) else lo_s + ck * b.hi
                    hi_s = hi_s if hi_s is None else hi_s + ck * b.lo
            # cj * xj = -S
            if cj > 0:
                new_lo = None if hi_s is None else _ceildiv(-hi_s, cj)
                new_hi = None if lo_s is None else _floordiv(-lo_s, cj)
            else:
                new_lo = None if lo_s is None else _ceildiv(lo_s, -cj)
                new_hi = None if hi_s is None else _floordiv(hi_s, -cj)
            b = self._bounds[xj]
            if new_lo is not None and new_lo > b.lo:
                b.lo = new_lo
                changed = True
            if new_hi is not None and (b.hi is None or new_hi < b.hi):
                b.hi = new_hi
                changed = True
            if b.hi is not None and b.lo > b.hi:
                raise InconsistentFacts(f"no nonnegative integer value for {xj}")
        return changed

    def _derive_symbols(self) -> dict[str, Affine]:
        sym = dict(self._symbols)
        progress = True
        while progress:
            progress = False
            for eq in self._equations:
                missing = [(c, x) for c, x in eq if x not in sym]
                if len(missing) != 1:
                    continue
                c, x = missing[0]
                if not self._bounds[x].fixed:
                    continue
                acc = Affine()
                for ck, xk in eq:
                    if xk != x:
                        acc = acc + sym[xk].scale(Fraction(-ck))
                sym[x] = acc.scale(Fraction(1, c))
                progress = True
        for x, b in self._bounds.items():
            if b.fixed and x not in sym:
                sym[x] = Affine(Fraction(b.lo))
        return sym

    def solve(self, max_rounds: int = 10_000) -> Solution:
        if self._conflict:
            return Solution("inconsistent", {}, self._snapshot(), {}, self._conflict)
        try:
            for _ in range(max_rounds):
                changed = False
                for eq in self._equations:
                    changed |= self._tighten(eq)
                if not changed:
                    break
        except InconsistentFacts as exc:
            return Solution("inconsistent", {}, self._snapshot(), {}, str(exc))
        snap = self._snapshot()
        values = {x: b.lo for x, b in snap.items() if b.fixed}
        sym = self._derive_symbols()
        derivations = {}
        for x in self._term_vars:
            if x not in values:
                continue
            expr = sym[x]
            text = f"{x} = {values[x]}"
            rendered = expr.render()
            if expr.coeffs and not (len(expr.coeffs) == 1 and expr.coeffs[0] == (x, 1) and not expr.const):
                numeric = _substitute(expr, {s: self._bounds[s].lo for s, _ in expr.coeffs})
                text = f"{x} = {rendered} = {numeric} = {values[x]}"
            derivations[x] = text
        status = "solved" if all(x in values for x in self._term_vars) else "underdetermined"
        return Solution(status, values, snap, derivations)

    def _snapshot(self) -> dict[str, Interval]:
        return {x: Interval(b.lo, b.hi) for x, b in self._bounds.items()}


def _substitute(expr: Affine, values: dict[str, int]) -> str:
    return Affine(expr.const, tuple((str(values[s]), v) for s, v in expr.coeffs)).render()


def propagate(seq: ExactSequence, extra: Iterable[ExactSequence] = ()) -> Solution:
    """Solve one exact sequence (optionally together with others)."""
    if not any(t.known for t in seq.terms):
        raise ValueError("propagate needs at least one known term")
    sysm = DimSystem()
    sysm.add_sequence(seq)
    for s in extra:
        sysm.add_sequence(s)
    return sysm.solve()


# -- facts -----------------------------------------------------------------


def cohom(i: int, label: str) -> str:
    return f"h^{i}({label})"


@dataclass(frozen=True)
class Fact:
    label: str
    i: int
    dim: int
    citation: str

    @property
    def key(self) -> str:
        return cohom(self.i, self.label)


@dataclass(frozen=True)
class Identification:
    left: str
    right: str
    citation: str


class FactRegistry:
    """Known dimensions h^i(label), each with its citation."""

    def __init__(self):
        self._facts: dict[tuple[str, int], Fact] = {}
        self._idents: list[Identification] = []

    def add(self, label: str, i: int, dim: int, citation: str) -> Fact:
        if not citation or not citation.strip():
            raise UnregisteredFact(f"fact h^{i}({label}) = {dim} has no citation")
        if dim < 0:
            raise ValueError(f"negative dimension for h^{i}({label})")
        old = self._facts.get((label, i))
        if old is not None and old.dim != dim:
            raise InconsistentFacts(
                f"h^{i}({label}): {old.dim} ({old.citation}) vs {dim} ({citation})"
            )
        fact = old or Fact(label, i, dim, citation)
        self._facts[(label, i)] = fact
        return fact

    def identify(self, left: tuple[int, str], right: tuple[int, str], citation: str) -> None:
        """Declare h^i(A) = h^j(B), e.g. a Serre-duality rewrite."""
        if not citation or not citation.strip():
            raise UnregisteredFact("identification without citation")
        self._idents.append(Identification(cohom(*left), cohom(*right), citation))

    def get(self, label: str, i: int) -> Fact | None:
        return self._facts.get((label, i))

    def __contains__(self, key: tuple[str, int]) -> bool:
        return key in self._facts

    def __iter__(self) -> Iterator[Fact]:
        return iter(self._facts.values())

    def __len__(self) -> int:
        return len(self._facts)

    @property
    def identifications(self) -> list[Identification]:
        return list(self._idents)

    def add_bott(self, label: str, n: int, j: int, k: int) -> None:
        """h^i(P^n, Omega^j(k)) for all i."""
        cite = f"Bott formula h^i(P^{n}, Omega^{j}({k}))"
        for i in range(n + 1):
            self.add(label, i, bott_dim(n, i, j, k), cite)

    def add_top_vanishing(self, label: str, dim_x: int, upto: int) -> None:
        for i in range(dim_x + 1, upto + 1):
            self.add(label, i, 0, f"Grothendieck vanishing above dimension {dim_x}")

    def add_flenner(self, label: str, n: int, j: int, k: int) -> None:
        """Vanishing for Omega_X^j(k) on a smooth hypersurface X in P^n, 0 < i < n-1."""
        for i in range(1, n - 1):
            v = flenner_dim(n, i, j, k)
            if v is not None:
                self.add(label, i, v, "Flenner, Satz 8.11 (hypersurface vanishing)")


def flenner_dim(n: int, i: int, j: int, k: int) -> int | None:
    """h^i(X, Omega_X^j(k)) where the hypersurface vanishing theorem decides it."""
    if not 0 < i < n - 1:
        return None
    if k != 0 and i + j != n - 1:
        return 0
    if k == 0 and i + j != n - 1 and i != j:
        return 0
    if k == 0 and i == j and 2 * i != n - 1:
        return 1
    return None


# -- chases ----------------------------------------------------------------


@dataclass
class Chase:
    """A collection of long exact sequences resolved against a registry."""

    registry: FactRegistry
    sequences: list[ExactSequence] = field(default_factory=list)

    def term(self, label: str, i: int, mult: int = 1) -> SeqTerm:
        key = cohom(i, label)
        fact = self.registry.get(label, i)
        if fact is not None:
            return SeqTerm(key, fact.dim, mult)
        return SeqTerm(key, key, mult)

    def sequence(self, name: str, groups: Sequence[tuple[str, int] | tuple[str, int, int]]) -> ExactSequence:
        terms = tuple(self.term(*g) for g in groups)
        seq = ExactSequence(terms, name)
        self.sequences.append(seq)
        return seq

    def les(self, name: str, sub: str, mid: str, quo: str, top: int, mults=(1, 1, 1)) -> ExactSequence:
        """Long exact cohomology sequence of ``0 -> sub -> mid -> quo -> 0``."""
        groups = []
        for i in range(top + 1):
            groups += [(sub, i, mults[0]), (mid, i, mults[1]), (quo, i, mults[2])]
        return self.sequence(name, groups)

    def solve(self) -> Solution:
        sysm = DimSystem()
        for seq in self.sequences:
            sysm.add_sequence(seq)
        for ident in self.registry.identifications:
            sysm.equate(ident.left, ident.right)
        return sysm.solve()


# sheaf labels on P^n and on X
def _tw(k: int) -> str:
    return f"({k})"


def O_P(k: int) -> str:
    return "O_P" + _tw(k)


def O_X(k: int) -> str:
    return "O_X" + _tw(k)


def Om_P(k: int) -> str:
    return "Omega_P" + _tw(k)


def Om_PX(k: int) -> str:
    return "Omega_P|X" + _tw(k)


def Om_X(k: int) -> str:
    return "Omega_X" + _tw(k)


def T_P(k: int) -> str:
    return "T_P" + _tw(k)


def T_PX(k: int) -> str:
    return "T_P" + _tw(k) + "|X"


def End_P(k: int) -> str:
    return "End T_P" + _tw(k)


END_PX = "End T_P|X"
TP_OMX = "T_P|X (x) Omega_X"
TX_OMX = "T_X (x) Omega_X"


def standard_registry(n: int, d: int) -> FactRegistry:
    """Inputs of the hypersurface chases for X of degree d in P^n.

    Bott values for every sheaf on P^n used below, vanishing above dim X,
    the hypersurface vanishing theorem for twisted forms on X, and the
    cited facts: simplicity and rigidity of T_P, stability of T_X.
    """
    reg = FactRegistry()
    # sheaves on P^n
    for k in {0, d, -d, 1 - d, 1, d - n - 1, 2 * d - n - 1}:
        reg.add_bott(Om_P(k), n, 1, k)
    for k in {0, -d, d - n - 1, -n - 1}:
        reg.add_bott(O_P(k), n, 0, k)
    for k in {-d, -2 * d}:
        reg.add_bott(T_P(k), n, n - 1, n + 1 + k)
    # sheaves on X
    for lab in [O_X(0), O_X(d - n - 1), Om_PX(d), Om_PX(2 * d - n - 1), Om_X(d), Om_X(1), Om_X(0),
                Om_X(2 * d - n - 1), T_PX(-d), END_PX, TP_OMX, TX_OMX, "T_X" + _tw(-d)]:
        reg.add_top_vanishing(lab, n - 1, n)
    for k in {d, 1, 0, 2 * d - n - 1}:
        reg.add_flenner(Om_X(k), n, 1, k)
    reg.add(End_P(0), 0, 1, "T_P is simple (Okonek-Schneider-Spindler I.4.1.2)")
    reg.add(End_P(0), 1, 0, "T_P has no infinitesimal deformations (P(T_P) is rigid)")
    reg.add(TX_OMX, 0, 1, "T_X is stable (Peternell-Wisniewski, Cor. 0.3)")
    return reg


def _structure_sheaf(ch: Chase, n: int, d: int) -> None:
    ch.les("restrict O", O_P(-d), O_P(0), O_X(0), n)


def _endT_sequence(ch: Chase, n: int, d: int) -> None:
    ch.les("euler End(-d)", Om_P(-d), Om_P(1 - d), End_P(-d), n, mults=(1, n + 1, 1))


def chase_end_twist(n: int, d: int, reg: FactRegistry | None = None) -> Solution:
    ch = Chase(reg or standard_registry(n, d))
    _endT_sequence(ch, n, d)
    return ch.solve()


def derive_lemma_endT(n: int, d: int, i: int) -> int:
    """h^i(P^n, End T_P(-d)) forced by the twisted Euler sequence; must be 0."""
    if not 0 <= i <= n - 2 or d < 2:
        raise ValueError(f"need 0 <= i <= n-2 and d >= 2, got n={n}, d={d}, i={i}")
    sol = chase_end_twist(n, d)
    v = sol.value(cohom(i, End_P(-d)))
    if v != 0:
        raise ChaseError(f"h^{i}(End T_P(-{d})) not forced to 0 on P^{n}: {sol.describe(cohom(i, End_P(-d)))}")
    return v


def build_h1_chase(n: int, d: int, reg: FactRegistry | None = None) -> Chase:
    """Every sequence used to compute h^1(X, T_X (x) Omega_X)."""
    ch = Chase(reg or standard_registry(n, d))
    _structure_sheaf(ch, n, d)
    ch.les("restrict Omega(d)", Om_P(0), Om_P(d), Om_PX(d), n)
    ch.les("cotangent(d)", O_X(0), Om_PX(d), Om_X(d), n)
    ch.les("restrict T(-d)", T_P(-2 * d), T_P(-d), T_PX(-d), n)
    _endT_sequence(ch, n, d)
    ch.les("euler End", Om_P(0), Om_P(1), End_P(0), n, mults=(1, n + 1, 1))
    ch.les("restrict End", End_P(-d), End_P(0), END_PX, n)
    ch.les("cotangent (x) T_P", T_PX(-d), END_PX, TP_OMX, n)
    ch.les("tangent (x) Omega_X", TX_OMX, TP_OMX, Om_X(d), n)
    return ch


def derive_h1_end(n: int, d: int) -> tuple[int, Solution]:
    """h^1(X, T_X (x) Omega_X) by chase; raises unless the value is forced."""
    if n < 4 or d < 2:
        raise ValueError(f"need n >= 4 and d >= 2, got n={n}, d={d}")
    sol = build_h1_chase(n, d).solve()
    if not sol.consistent:
        raise ChaseError(f"inconsistent chase for n={n}, d={d}: {sol.conflict}")
    key = cohom(1, TX_OMX)
    v = sol.value(key)
    if v is None:
        raise ChaseError(f"{key} not forced for n={n}, d={d}: {sol.describe(key)}")
    return v, sol


def derive_h1_tangent_twist(n: int, d: int) -> int:
    """h^1(X, T_X(-d)) via Serre duality and two restriction sequences."""
    reg = standard_registry(n, d)
    k = 2 * d - n - 1
    reg.identify((1, "T_X" + _tw(-d)), (n - 2, Om_X(k)),
                 f"Serre duality with K_X = O_X({d - n - 1})")
    ch = Chase(reg)
    ch.les("restrict Omega", Om_P(d - n - 1), Om_P(k), Om_PX(k), n)
    ch.les("cotangent", O_X(d - n - 1), Om_PX(k), Om_X(k), n)
    ch.les("restrict O", O_P(-n - 1), O_P(d - n - 1), O_X(d - n - 1), n)
    sol = ch.solve()
    key = cohom(1, "T_X" + _tw(-d))
    v = sol.value(key)
    if v is None:
        raise ChaseError(f"{key} not forced for n={n}, d={d}")
    return v


def derive_h2_vanishing(n: int, d: int) -> int | None:
    """h^2(X, T_X (x) Omega_X) by chase; forced to 0 once n >= 6."""
    ch = build_h1_chase(n, d)
    ch.les("euler (x) Omega_X", Om_X(0), Om_X(1), TP_OMX, n, mults=(1, n + 1, 1))
    sol = ch.solve()
    if not sol.consistent:
        raise ChaseError(f"inconsistent chase for n={n}, d={d}: {sol.conflict}")
    return sol.value(cohom(2, TX_OMX))
