import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perverse_sl2.exactla import (
    FieldError, RREF, ShapeError, coordinates, dump_matrix, echelon_basis, field_of_order,
    inverse, is_irreducible, is_prime, kernel_basis, kron, load_matrix, make_field, rank,
    rowspace_intersect, rowspace_sum, rref, solve,
)
from perverse_sl2.exactla import linalg
from perverse_sl2.exactla.serialize import FormatError

ORDERS = (2, 3, 4, 5, 8, 9, 25)


def matrices(max_rows=6, max_cols=6):
    @st.composite
    def build(draw):
        q = draw(st.sampled_from(ORDERS))
        r = draw(st.integers(0, max_rows))
        c = draw(st.integers(1, max_cols))
        flat = draw(st.lists(st.integers(0, q - 1), min_size=r * c, max_size=r * c))
        return field_of_order(q), np.array(flat, dtype=np.int64).reshape(r, c)
    return build()


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_exhaustive(q):
    F = field_of_order(q)
    a = np.arange(q)[:, None]
    b = np.arange(q)[None, :]
    assert np.array_equal(F.add(a, b), F.add(b, a))
    assert np.array_equal(F.mul(a, b), F.mul(b, a))
    assert np.all(F.add(a, F.neg(a)) == 0)
    nz = np.arange(1, q)
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    c = np.arange(q)[None, None, :]
    lhs = F.mul(a[..., None], F.add(b[..., None], c))
    rhs = F.add(F.mul(a[..., None], b[..., None]), F.mul(a[..., None], c))
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("q", ORDERS)
def test_primitive_element_has_full_order(q):
    F = field_of_order(q)
    powers = {F.power(F.primitive, k) for k in range(q - 1)}
    assert powers == set(range(1, q))


def test_gf9_modulus_and_primitive():
    F = make_field(3, 2)
    assert is_irreducible((2, 2, 1), 3)
    assert F.primitive == 3


def test_frobenius_is_additive_and_multiplicative():
    F = field_of_order(8)
    a = np.arange(8)[:, None]
    b = np.arange(8)[None, :]
    assert np.array_equal(F.frobenius(F.add(a, b)), F.add(F.frobenius(a), F.frobenius(b)))
    assert np.array_equal(F.frobenius(F.mul(a, b)), F.mul(F.frobenius(a), F.frobenius(b)))


def test_bad_fields_rejected():
    assert not is_prime(4)
    with pytest.raises(FieldError):
        make_field(4, 1)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_is_idempotent_and_keeps_rowspace(data):
    F, M = data
    R = rref(F, M)
    assert isinstance(R, RREF)
    again = rref(F, R.R)
    assert np.array_equal(again.R, R.R)
    assert rank(F, np.concatenate([M, R.R[:R.rank]])) == R.rank


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_annihilates_and_has_right_dimension(data):
    F, M = data
    if M.shape[0] == 0:
        return
    K = kernel_basis(F, M)
    assert K.shape[0] == M.shape[0] - rank(F, M)
    if K.shape[0]:
        assert not np.any(F.matmul(K, M))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.integers(0, 2 ** 32))
def test_solve_round_trip(data, seed):
    F, M = data
    if M.shape[0] == 0:
        return
    rng = np.random.default_rng(seed)
    x = F.random(rng, (M.shape[0],))
    b = F.matmul(x[None, :], M)[0]
    y = solve(F, M, b)
    assert y is not None
    assert np.array_equal(F.matmul(y[None, :], M)[0], b)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ORDERS), st.integers(1, 6), st.integers(0, 2 ** 32))
def test_inverse(q, n, seed):
    F = field_of_order(q)
    rng = np.random.default_rng(seed)
    M = F.random(rng, (n, n))
    if rank(F, M) < n:
        with pytest.raises(ZeroDivisionError):
            inverse(F, M)
        return
    assert np.array_equal(F.matmul(M, inverse(F, M)), np.eye(n, dtype=np.int64))


@settings(max_examples=40, deadline=None)
@given(matrices(), matrices())
def test_sum_and_intersection_dimensions(d1, d2):
    F, U = d1
    V = d2[1] % F.q
    if U.shape[1] != V.shape[1]:
        V = np.zeros((V.shape[0], U.shape[1]), dtype=np.int64)
    s = rowspace_sum(F, U, V).shape[0]
    i = rowspace_intersect(F, U, V).shape[0]
    assert s + i == rank(F, U) + rank(F, V)


def test_coordinates_and_kron():
    F = field_of_order(9)
    B = echelon_basis(F, np.array([[1, 2, 0], [0, 1, 5]]))
    v = F.add(F.mul(B[0], 4), F.mul(B[1], 7))
    assert coordinates(F, B, v).tolist() == [[4, 7]]
    with pytest.raises(ValueError):
        coordinates(F, B, np.array([0, 0, 1]))
    A = np.array([[1, 2], [3, 4]]) % 9
    I = np.eye(2, dtype=np.int64)
    K = kron(F, A, I)
    assert K.shape == (4, 4)
    assert np.array_equal(K[:2, :2], np.eye(2, dtype=np.int64) * A[0, 0])
    with pytest.raises(ShapeError):
        rank(F, np.zeros(3))


@pytest.mark.skipif(not linalg.compiled_available(), reason="extension not built")
@pytest.mark.parametrize("seed", [0, 1, 7, 20240611])
@pytest.mark.parametrize("q", ORDERS)
def test_compiled_matches_pure(q, seed):
    F = field_of_order(q)
    rng = np.random.default_rng(seed)
    for shape in [(5, 9), (12, 7), (30, 30), (1, 4)]:
        M = F.random(rng, shape)
        M[: shape[0] // 2] = F.mul(M[: shape[0] // 2], 0) if seed % 2 else M[: shape[0] // 2]
        linalg.set_backend("compiled")
        a = rref(F, M)
        linalg.set_backend("pure")
        b = rref(F, M)
        linalg.set_backend("compiled")
        assert np.array_equal(a.R, b.R) and a.pivots == b.pivots


@pytest.mark.parametrize("q", ORDERS)
def test_matrix_serialization_round_trip(q):
    F = field_of_order(q)
    M = F.random(np.random.default_rng(q), (3, 5))
    buf = dump_matrix(F, M) + dump_matrix(F, M[:1])
    F2, M2, nxt = load_matrix(buf)
    assert F2.q == q and np.array_equal(M2, M)
    _, M3, end = load_matrix(buf, nxt)
    assert end == len(buf) and np.array_equal(M3, M[:1])
    with pytest.raises(FormatError):
        load_matrix(b"XXXX" + buf[4:])
    with pytest.raises(FormatError):
        load_matrix(buf[:20])
