from fractions import Fraction

from hypothesis import given, strategies as st

from hypertangent import linalg

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def matrices(draw):
    r, c = draw(st.integers(1, 6)), draw(st.integers(1, 6))
    dense = [[draw(entries) if draw(st.booleans()) else Fraction(0) for _ in range(c)] for _ in range(r)]
    return dense, c


def sparse(dense):
    return [{j: v for j, v in enumerate(row) if v} for row in dense]


def apply(dense, vec):
    return [sum((row[j] * vec.get(j, 0) for j in range(len(row))), Fraction(0)) for row in dense]


@given(matrices())
def test_rank_nullity(m):
    dense, c = m
    rows = sparse(dense)
    null = linalg.nullspace(rows, c)
    assert linalg.rank(rows, c) + len(null) == c
    for v in null:
        assert all(x == 0 for x in apply(dense, v))
    assert linalg.rank([{j: x for j, x in v.items()} for v in null], c) == len(null)


@given(matrices())
def test_rank_of_transpose(m):
    dense, c = m
    transpose = [[dense[i][j] for i in range(len(dense))] for j in range(c)]
    assert linalg.rank(sparse(dense), c) == linalg.rank(sparse(transpose), len(dense))


@given(matrices(), st.data())
def test_solve(m, data):
    dense, c = m
    x = {j: data.draw(entries) for j in range(c)}
    rhs = apply(dense, x)
    sol = linalg.solve(sparse(dense), rhs, c)
    assert sol is not None and apply(dense, sol) == rhs


def test_inconsistent_system():
    assert linalg.solve([{0: Fraction(1)}, {0: Fraction(1)}], [1, 2], 1) is None


def test_nullspace_is_deterministic():
    rows = [{0: Fraction(1), 1: Fraction(1), 2: Fraction(1)}]
    assert linalg.nullspace(rows, 3) == linalg.nullspace(rows, 3)
    assert len(linalg.nullspace(rows, 3)) == 2
