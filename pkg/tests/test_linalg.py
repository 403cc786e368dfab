from fractions import Fraction

from hypothesis import given, strategies as st

from gcn_cohomology.linalg import SparseRationalMatrix, check_certificate, kernel_and_rank, rank, solve


def dense(rows):
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    cols = [{i: Fraction(rows[i][j]) for i in range(n_rows) if rows[i][j]} for j in range(n_cols)]
    return SparseRationalMatrix(n_rows, cols)


def transpose(m):
    return dense([list(r) for r in zip(*m.to_dense())])


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-2, 2), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_small_examples():
    assert rank(dense([[1, 2], [2, 4]])) == 1
    assert rank(dense([[1, 0], [0, 1]])) == 2
    assert rank(dense([[0, 0], [0, 0]])) == 0
    kernel, r = kernel_and_rank(dense([[1, 2], [2, 4]]))
    assert r == 1 and len(kernel) == 1
    assert dense([[1, 2], [2, 4]]).matvec(kernel[0]) == {}


@given(matrices)
def test_rank_of_transpose(rows):
    m = dense(rows)
    assert rank(m) == rank(transpose(m))


@given(matrices)
def test_kernel_vectors(rows):
    m = dense(rows)
    kernel, r = kernel_and_rank(m)
    assert len(kernel) == m.n_cols - r
    for k in kernel:
        assert m.matvec(k) == {}


@given(matrices, st.data())
def test_solve_consistent_systems(rows, data):
    m = dense(rows)
    x = {j: Fraction(data.draw(st.integers(-3, 3))) for j in range(m.n_cols)}
    b = m.matvec(x)
    res = solve(m, b)
    assert res.feasible
    assert m.matvec(res.solution) == b


@given(matrices, st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_or_certify(rows, rhs):
    m = dense(rows)
    b = {i: Fraction(rhs[i]) for i in range(m.n_rows) if rhs[i]}
    res = solve(m, b)
    if res.feasible:
        assert m.matvec(res.solution) == b
    else:
        assert check_certificate(m, b, res.certificate)


def test_certificate_for_inconsistent_system():
    m = dense([[1], [1]])
    res = solve(m, {0: Fraction(1)})
    assert not res.feasible
    assert check_certificate(m, {0: Fraction(1)}, res.certificate)


def test_compose():
    a = dense([[1, 1], [0, 1]])
    b = dense([[1, -1], [0, 1]])
    assert a.compose(b).to_dense() == [[1, 0], [0, 1]]
