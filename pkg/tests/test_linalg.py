import pytest
from hypothesis import given, settings, strategies as st

from gcontact import Scalar
from gcontact.linalg import det, inverse, matmul, nullspace, rank, solve, span_equal

entries = st.builds(Scalar, st.integers(-3, 3), st.integers(-2, 2))
square3 = st.lists(st.lists(entries, min_size=3, max_size=3), min_size=3, max_size=3)


def ident(n):
    return [[Scalar(int(i == j)) for j in range(n)] for i in range(n)]


@settings(max_examples=60)
@given(square3)
def test_inverse_when_nonsingular(a):
    if not det(a):
        with pytest.raises(ZeroDivisionError):
            inverse(a)
        return
    assert matmul(a, inverse(a)) == ident(3)


@settings(max_examples=60)
@given(st.lists(st.lists(entries, min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace_is_kernel_of_full_dimension(rows):
    ker = nullspace(rows, 4)
    assert len(ker) == 4 - rank(rows)
    for v in ker:
        assert all(sum((r[j] * v[j] for j in range(4)), Scalar(0)) == 0 for r in rows)


def test_solve_and_det():
    a = [[Scalar(2), Scalar(1)], [Scalar(1), Scalar(0, 1)]]
    x = solve(a, [Scalar(3), Scalar(1)])
    assert [sum((a[i][j] * x[j] for j in range(2)), Scalar(0)) for i in range(2)] == [Scalar(3), Scalar(1)]
    assert det(a) == Scalar(-1, 2)


def test_span_equal():
    u = [[Scalar(1), Scalar(0)], [Scalar(1), Scalar(1)]]
    v = [[Scalar(0), Scalar(2)], [Scalar(3), Scalar(0)]]
    assert span_equal(u, v, 2)
    assert not span_equal(u[:1], v[:1], 2)
