import numpy as np
import pytest
from hypothesis import given, strategies as st

from qkron.oracles import W, dft_matrix
from qkron.tensor import (
    LEFT, RIGHT, ShapeError, constant_tuple, diag_sum, diagonalization_factorize, equal_up_to_diag_phase,
    gkron, is_unitary, kron, max_abs, multiply, read_matrix_text, shuffle_matrix, tuple_inverse,
    tuple_product, write_matrix_text,
)
from util import loop_gkron, random_tuple, random_unitary

H = np.array([[1, 1], [1, -1]], dtype=complex)
dims = st.integers(1, 4)
seeds = st.integers(0, 2 ** 32 - 1)


def random_rect_tuple(rng, length, p, q):
    return rng.normal(size=(length, p, q)) + 1j * rng.normal(size=(length, p, q))


def test_worked_example_right():
    got = gkron(RIGHT, [H, np.eye(2)], [H, H])
    want = [[1, 1, 1, 1], [1, -1, 0, 0], [1, 1, -1, -1], [0, 0, 1, -1]]
    assert np.array_equal(got, want)


def test_worked_example_left():
    got = gkron(LEFT, [H, np.eye(2)], [H, H])
    want = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 0, -1, 0], [0, 1, 0, -1]]
    assert np.array_equal(got, want)


def test_worked_example_factorization_multiplies_back():
    factors = diagonalization_factorize(RIGHT, [H, np.eye(2)], [H, H])
    assert np.array_equal(multiply(factors), gkron(RIGHT, [H, np.eye(2)], [H, H]))


def test_kron_identity_cases():
    c = np.arange(4).reshape(2, 2)
    assert np.array_equal(kron(RIGHT, np.eye(2), c), diag_sum([c, c]))
    assert np.array_equal(kron(RIGHT, H, np.eye(1)), H)
    assert np.array_equal(kron(LEFT, H, c), np.kron(c, H))


def test_kron_matches_constant_gkron():
    assert np.array_equal(kron(RIGHT, H, H), gkron(RIGHT, constant_tuple(H, 2), constant_tuple(H, 2)))
    assert np.array_equal(kron(LEFT, H, H), gkron(LEFT, constant_tuple(H, 2), constant_tuple(H, 2)))


@given(k=dims, p=dims, q=dims, l=dims, seed=seeds, side=st.sampled_from([LEFT, RIGHT]))
def test_gkron_matches_loop_oracle(k, p, q, l, seed, side):
    rng = np.random.default_rng(seed)
    a = random_rect_tuple(rng, k, p, q)
    c = random_rect_tuple(rng, q, k, l)
    assert max_abs(gkron(side, a, c) - loop_gkron(side, a, c)) < 1e-12


@given(k=dims, p=dims, q=dims, l=dims, seed=seeds, side=st.sampled_from([LEFT, RIGHT]))
def test_diagonalization_factors_multiply_to_gkron(k, p, q, l, seed, side):
    rng = np.random.default_rng(seed)
    a = random_rect_tuple(rng, k, p, q)
    c = random_rect_tuple(rng, q, k, l)
    assert max_abs(multiply(diagonalization_factorize(side, a, c)) - gkron(side, a, c)) < 1e-12


@given(k=dims, p=dims, q=dims, l=dims, seed=seeds)
def test_right_equals_shuffled_left(k, p, q, l, seed):
    rng = np.random.default_rng(seed)
    a = random_rect_tuple(rng, k, p, q)
    c = random_rect_tuple(rng, q, k, l)
    via_left = shuffle_matrix(p, k) @ gkron(LEFT, a, c) @ shuffle_matrix(l, q)
    assert max_abs(gkron(RIGHT, a, c) - via_left) < 1e-12


@given(m=st.integers(2, 4), n=st.integers(2, 4), seed=seeds)
def test_separation_law(m, n, seed):
    rng = np.random.default_rng(seed)
    a, c = random_tuple(rng, m, n), random_tuple(rng, m, n)
    d, e = random_tuple(rng, n, m), random_tuple(rng, n, m)
    lhs = gkron(RIGHT, tuple_product(a, c), tuple_product(d, e))
    rhs = (gkron(RIGHT, a, constant_tuple(np.eye(m), n))
           @ gkron(RIGHT, c, d)
           @ gkron(RIGHT, constant_tuple(np.eye(n), m), e))
    assert max_abs(lhs - rhs) < 1e-12


@given(m=st.integers(1, 4), n=st.integers(1, 4), seed=seeds)
def test_inverse_law_and_unitarity(m, n, seed):
    rng = np.random.default_rng(seed)
    a, c = random_tuple(rng, m, n), random_tuple(rng, n, m)
    g = gkron(RIGHT, a, c)
    assert is_unitary(g, 1e-12)
    inv = gkron(LEFT, tuple_inverse(c), tuple_inverse(a))
    assert max_abs(inv @ g - np.eye(m * n)) < 1e-12
    inv_l = gkron(RIGHT, tuple_inverse(c), tuple_inverse(a))
    assert max_abs(inv_l @ gkron(LEFT, a, c) - np.eye(m * n)) < 1e-12


def test_gkron_shape_mismatch():
    with pytest.raises(ShapeError):
        gkron(RIGHT, [H, H], [H, H, H])
    with pytest.raises(ValueError):
        gkron("middle", [H, H], [H, H])


def test_scalar_factorization():
    a = np.array([[[2.0]]])
    c = np.array([[[3.0]]])
    assert multiply(diagonalization_factorize(RIGHT, a, c))[0, 0] == 6.0


def test_shuffle_cases():
    assert np.array_equal(shuffle_matrix(1, 5), np.eye(5))
    p = shuffle_matrix(2, 2)
    assert [int(np.argmax(p[:, j])) for j in range(4)] == [0, 2, 1, 3]


@given(m=st.integers(1, 6), n=st.integers(1, 6))
def test_shuffle_inverse_is_transpose(m, n):
    p = shuffle_matrix(m, n)
    assert np.array_equal(p @ shuffle_matrix(n, m), np.eye(m * n))
    assert np.array_equal(p.T, shuffle_matrix(n, m))
    assert is_unitary(p)


def test_shuffle_defining_formula():
    m, n = 3, 4
    p = shuffle_matrix(m, n)
    for d in range(m):
        for e in range(n):
            for d2 in range(n):
                for e2 in range(m):
                    assert p[d * n + e, d2 * m + e2] == float(d == e2 and d2 == e)


def test_diag_sum():
    z = np.diag([1, -1])
    assert np.array_equal(diag_sum([np.eye(2), np.eye(2)]), np.eye(4))
    d = diag_sum([W, z])
    assert np.array_equal(d[:2, :2], W) and np.array_equal(d[2:, 2:], z)
    assert not d[:2, 2:].any() and not d[2:, :2].any()
    c = np.arange(9).reshape(3, 3)
    assert np.array_equal(diag_sum([c] * 4), kron(RIGHT, np.eye(4), c))


def test_is_unitary():
    assert is_unitary(np.eye(8), 1e-12)
    assert is_unitary(W)
    assert not is_unitary(np.array([[1, 1], [0, 1]]))
    with pytest.raises(ShapeError):
        is_unitary(np.ones((2, 3)))


def test_phase_extraction():
    f = dft_matrix(4)
    assert np.allclose(equal_up_to_diag_phase(f, f), 1)
    phi = np.array([1j, -1, 1, 1j])
    assert np.allclose(equal_up_to_diag_phase(np.diag(phi) @ f, f), phi)
    assert equal_up_to_diag_phase(f[[1, 0, 2, 3]], f) is None


def test_phase_extraction_zero_row_rule():
    f = np.diag([1.0, 0.0])
    assert np.allclose(equal_up_to_diag_phase(f, f), [1, 1])
    assert equal_up_to_diag_phase(np.eye(2), f) is None


@given(n=st.integers(1, 6), seed=seeds)
def test_phase_extraction_recovers_random_phases(n, seed):
    rng = np.random.default_rng(seed)
    f = random_unitary(rng, n)
    phi = np.exp(2j * np.pi * rng.random(n))
    got = equal_up_to_diag_phase(phi[:, None] * f, f)
    assert got is not None and np.allclose(got, phi, atol=1e-12)
    assert np.allclose(equal_up_to_diag_phase(f, f), 1)


@given(r=st.integers(1, 5), c=st.integers(1, 5), seed=seeds)
def test_matrix_text_round_trip(r, c, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(r, c)) + 1j * rng.normal(size=(r, c))
    assert np.array_equal(read_matrix_text(write_matrix_text(m)), m)


def test_matrix_text_rejects_bad_documents():
    with pytest.raises(ValueError):
        read_matrix_text("2 2\n1,0 0,0\n")
    with pytest.raises(ValueError):
        read_matrix_text("")
