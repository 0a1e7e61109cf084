from math import comb

import pytest
from hypothesis import given, strategies as st

from hypertangent import les
from hypertangent.bott import bott_dim
from hypertangent.les import (
    Chase, ExactSequence, FactRegistry, InconsistentFacts, SeqTerm, UnregisteredFact,
    alternating_sum_check, cohom, derive_h1_end, derive_h1_tangent_twist, derive_h2_vanishing,
    derive_lemma_endT, propagate,
)


def dims_from_ranks(ranks):
    """An exact sequence with image ranks r_0 = 0, r_1, ..., r_m = 0 has dims r_(k-1) + r_k."""
    r = [0] + list(ranks) + [0]
    return [r[k] + r[k + 1] for k in range(len(r) - 1)]


@given(st.lists(st.integers(0, 50), min_size=1, max_size=8), st.data())
def test_hidden_term_is_recovered(ranks, data):
    dims = dims_from_ranks(ranks)
    hide = data.draw(st.integers(0, len(dims) - 1))
    items = [(f"T{k}", "x" if k == hide else v) for k, v in enumerate(dims)]
    if all(isinstance(d, str) for _, d in items):
        return
    sol = propagate(ExactSequence.of(*items))
    assert sol.status == "solved"
    assert sol.value("x") == dims[hide]


@given(st.lists(st.integers(0, 30), min_size=2, max_size=8), st.data())
def test_bounds_contain_truth(ranks, data):
    dims = dims_from_ranks(ranks)
    hidden = data.draw(st.sets(st.integers(0, len(dims) - 1), min_size=2, max_size=len(dims) - 1))
    items = [(f"T{k}", f"x{k}" if k in hidden else v) for k, v in enumerate(dims)]
    sol = propagate(ExactSequence.of(*items))
    assert sol.consistent
    for k in hidden:
        iv = sol.intervals[f"x{k}"]
        assert iv.lo <= dims[k] and (iv.hi is None or dims[k] <= iv.hi)


@given(st.lists(st.integers(0, 30), min_size=1, max_size=8))
def test_alternating_sum_of_exact_sequence(ranks):
    seq = ExactSequence.of(*[(f"T{k}", v) for k, v in enumerate(dims_from_ranks(ranks))])
    assert alternating_sum_check(seq)


def test_short_exact_sequence_derivation():
    sol = propagate(ExactSequence.of(0, ("A", 5), "x", ("B", 2), 0))
    assert sol.value("x") == 7
    assert sol.describe("x") == "x = A + B = 5 + 2 = 7"


def test_underdetermined_and_inconsistent():
    sol = propagate(ExactSequence.of(0, 3, "x", "y", 0))
    assert sol.status == "underdetermined"
    assert sol.intervals["x"].lo == 3 and sol.intervals["x"].hi is None
    assert propagate(ExactSequence.of(0, 3, 1, 0)).status == "inconsistent"


def test_multiplicity_counts_copies():
    seq = ExactSequence((SeqTerm("0", 0), SeqTerm("S", 2), SeqTerm("O^5", 1, mult=5),
                         SeqTerm("Q", "q"), SeqTerm("0", 0)))
    assert propagate(seq).value("q") == 3


def test_bad_inputs():
    with pytest.raises(ValueError):
        ExactSequence(())
    with pytest.raises(ValueError):
        SeqTerm("A", -1)
    with pytest.raises(ValueError):
        propagate(ExactSequence.of("x", "y"))


def test_registry_requires_citations_and_consistency():
    reg = FactRegistry()
    with pytest.raises(UnregisteredFact):
        reg.add("O_X", 0, 1, "")
    reg.add("O_X", 0, 1, "connected")
    reg.add("O_X", 0, 1, "again")
    with pytest.raises(InconsistentFacts):
        reg.add("O_X", 0, 2, "wrong")
    with pytest.raises(UnregisteredFact):
        reg.identify((0, "A"), (1, "B"), " ")


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("k", range(-6, 7))
def test_euler_sequence_les_is_exact(n, k):
    # 0 -> Omega(k) -> O(k-1)^(n+1) -> O(k) -> 0 on P^n, long exact in cohomology
    dims = []
    for i in range(n + 1):
        dims += [bott_dim(n, i, 1, k), (n + 1) * bott_dim(n, i, 0, k - 1), bott_dim(n, i, 0, k)]
    seq = ExactSequence.of(*[(f"t{m}", v) for m, v in enumerate(dims)])
    assert alternating_sum_check(seq)
    assert propagate(seq).consistent


def test_chase_with_bott_facts():
    # h^0(Omega_P^4(3)) from the Euler sequence, using only O(k) facts
    reg = FactRegistry()
    for k in (2, 3):
        for i in range(5):
            reg.add(f"O({k})", i, bott_dim(4, i, 0, k), "Bott")
    reg.add("Om(3)", 1, 0, "Bott")
    ch = Chase(reg)
    ch.les("euler", "Om(3)", "O(2)", "O(3)", 4, mults=(1, 5, 1))
    sol = ch.solve()
    assert sol.value(cohom(0, "Om(3)")) == 5 * comb(6, 2) - comb(7, 3) == bott_dim(4, 0, 1, 3)


@pytest.mark.parametrize("n", range(4, 9))
@pytest.mark.parametrize("d", range(2, 7))
def test_h1_chase_matches_closed_form(n, d):
    v, sol = derive_h1_end(n, d)
    assert v == comb(n + d - 1, d) * (d - 1)
    assert sol.consistent


@pytest.mark.parametrize("n", (4, 5, 6))
@pytest.mark.parametrize("d", (2, 3, 4))
def test_end_tp_twist_vanishes(n, d):
    for i in range(n - 1):
        assert derive_lemma_endT(n, d, i) == 0


@pytest.mark.parametrize("n, d", [(4, 2), (4, 3), (5, 3), (6, 4)])
def test_tangent_twist(n, d):
    assert derive_h1_tangent_twist(n, d) == 1


@pytest.mark.parametrize("n", (6, 7))
@pytest.mark.parametrize("d", (2, 3, 4))
def test_h2_vanishes_for_large_n(n, d):
    assert derive_h2_vanishing(n, d) == 0


def test_h2_chase_threefolds():
    assert [derive_h2_vanishing(4, d) for d in (2, 3, 4)] == [0, 0, 45]
    assert derive_h2_vanishing(4, 6) is None


def test_flenner_cases():
    assert les.flenner_dim(5, 1, 1, 0) == 1
    assert les.flenner_dim(5, 1, 2, 3) == 0
    assert les.flenner_dim(5, 2, 2, 3) is None
    assert les.flenner_dim(5, 0, 1, 1) is None


def test_end_tp_twist_domain():
    with pytest.raises(ValueError):
        derive_lemma_endT(4, 2, 3)


def test_chase_error_when_not_forced():
    reg = FactRegistry()
    reg.add("A", 0, 2, "given")
    ch = Chase(reg)
    ch.sequence("open", [("A", 0), ("B", 0), ("C", 0)])
    assert ch.solve().value(cohom(0, "B")) is None
