from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from hypertangent import chow
from hypertangent.chow import (
    ChowElement, ChowError, CharacteristicData, bernoulli, chern_character, chi_end_tangent,
    dual_character, integrate, invert, power_sums, todd_class, total_chern_tangent,
)


def chi_line_P(n: int, k: int) -> Fraction:
    """chi(P^n, O(k)) = C(n+k, n) read as a polynomial in k."""
    num = 1
    for i in range(1, n + 1):
        num *= k + i
    return Fraction(num, factorial(n))


def chi_line_X(n: int, d: int, k: int) -> Fraction:
    return chi_line_P(n, k) - chi_line_P(n, k - d)


def line_ch(n: int, a: int) -> ChowElement:
    return chow.exp(a * ChowElement.hyperplane(n))


elements = st.integers(3, 7).flatmap(
    lambda n: st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6),
                       min_size=n, max_size=n).map(lambda cs: ChowElement(n, tuple(cs))))


@given(st.integers(3, 7).flatmap(lambda n: st.tuples(*[
    st.lists(st.integers(-9, 9), min_size=n, max_size=n).map(lambda c, n=n: ChowElement(n, tuple(c)))
    for _ in range(3)])))
def test_ring_axioms(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ChowElement(a.n, ())


@given(elements)
def test_unit_inverse(a):
    if a[0] == 0:
        with pytest.raises(ChowError):
            invert(a)
    else:
        assert a * invert(a) == ChowElement.one(a.n)


def test_truncation_and_hyperplane_power():
    h = ChowElement.hyperplane(4)
    assert h ** 3 == ChowElement(4, (0, 0, 0, 1))
    assert h ** 4 == ChowElement(4, ())


def test_dimension_mismatch():
    with pytest.raises(ChowError):
        ChowElement.one(3) * ChowElement.one(4)


def test_bernoulli_values():
    assert [bernoulli(m) for m in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0,
                                                  Fraction(-1, 30), 0, Fraction(1, 42)]
    assert bernoulli(12) == Fraction(-691, 2730)


@given(st.integers(3, 7), st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_newton_identities_split_bundle(n, roots):
    # a direct sum of line bundles O(a_1) + ... has p_k = sum a_i^k
    c = ChowElement.one(n)
    for a in roots:
        c = c * (1 + a * ChowElement.hyperplane(n))
    p = power_sums(CharacteristicData(len(roots), c))
    assert p == [sum(Fraction(a) ** k for a in roots) for k in range(n)]


@given(st.integers(3, 7), st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_chern_character_additive(n, roots):
    c = ChowElement.one(n)
    total = ChowElement(n, ())
    for a in roots:
        c = c * (1 + a * ChowElement.hyperplane(n))
        total = total + line_ch(n, a)
    assert chern_character(CharacteristicData(len(roots), c)) == total


def test_total_chern_small_cases():
    # cubic surface: c(T_X) = 1 + h + 2 h^2 after (1+h)^4/(1+3h)
    c = total_chern_tangent(3, 3).total_chern
    assert c.coeffs == (1, 1, 3)
    # c_top integrates to the topological Euler characteristic: 9 for a cubic surface
    assert integrate(c, 3) == 9
    # a quartic surface has Euler number 24
    assert integrate(total_chern_tangent(3, 4).total_chern, 4) == 24


@pytest.mark.parametrize("n", range(3, 8))
@pytest.mark.parametrize("d", range(1, 8))
def test_hrr_structure_sheaf(n, d):
    td = todd_class(total_chern_tangent(n, d))
    assert integrate(td, d) == chi_line_X(n, d, 0)


@pytest.mark.parametrize("n", range(3, 7))
@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("k", (-3, 0, 2))
def test_hrr_line_bundles(n, d, k):
    td = todd_class(total_chern_tangent(n, d))
    assert integrate(line_ch(n, k) * td, d) == chi_line_X(n, d, k)


@pytest.mark.parametrize("n", range(3, 7))
@pytest.mark.parametrize("d", range(2, 7))
def test_hrr_tangent_and_cotangent(n, d):
    cd = total_chern_tangent(n, d)
    ch_t, td = chern_character(cd), todd_class(cd)
    # Euler sequence and normal sequence, restricted to X
    chi_tp = (n + 1) * chi_line_X(n, d, 1) - chi_line_X(n, d, 0)
    assert integrate(ch_t * td, d) == chi_tp - chi_line_X(n, d, d)
    chi_om = (n + 1) * chi_line_X(n, d, -1) - chi_line_X(n, d, 0) - chi_line_X(n, d, -d)
    assert integrate(dual_character(ch_t) * td, d) == chi_om


def test_todd_low_degrees():
    # td = 1 + c1/2 + (c1^2 + c2)/12 on a surface
    cd = total_chern_tangent(3, 2)
    c = cd.total_chern
    td = todd_class(cd)
    assert td[1] == c[1] / 2
    assert td[2] == (c[1] ** 2 + c[2]) / 12


@pytest.mark.parametrize("d", range(2, 31))
def test_chi_threefold_closed_form(d):
    assert chi_end_tangent(4, d) == Fraction(d * (d - 5) * (13 * d * d - 25 * d + 10), 8)


@pytest.mark.parametrize("d", range(2, 21))
def test_chi_surface_closed_form(d):
    assert chi_end_tangent(3, d) == Fraction(-(7 * d ** 3 - 12 * d * d + 2 * d), 3)


def test_chi_reported_values():
    assert [chi_end_tangent(4, d) for d in range(2, 8)] == [-9, -39, -59, 0, 246, 826]
    assert chi_end_tangent(3, 3) == -29


def test_chi_domain():
    with pytest.raises(ChowError):
        chi_end_tangent(2, 3)
    with pytest.raises(ChowError):
        chi_end_tangent(4, 1)


def test_calabi_yau_serre_symmetry():
    # K_X trivial: chi(End T_X) = 0 in odd dimension
    assert chi_end_tangent(4, 5) == 0
    assert chi_end_tangent(6, 7) == 0
