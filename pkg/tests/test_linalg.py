import numpy as np
import pytest

from discrim import linalg as la
from discrim.errors import ContractError, ShapeError

from conftest import random_hermitian


def kron_oracle(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for ia in range(ra):
        for ja in range(ca):
            for ib in range(rb):
                for jb in range(cb):
                    out[ia * rb + ib, ja * cb + jb] = a[ia, ja] * b[ib, jb]
    return out


def test_tensor_identity():
    assert np.array_equal(la.tensor(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_basis_projectors():
    m = la.tensor(la.projector(la.ket("0")), la.projector(la.ket("1")))
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    assert np.array_equal(m, expected)


def test_tensor_matches_index_oracle(rng):
    for _ in range(20):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
        assert np.allclose(la.tensor(a, b), kron_oracle(a, b), atol=1e-15)


def test_tensor_associative_exact(rng):
    a, b, c = (rng.integers(-5, 6, size=(2, 2)) for _ in range(3))
    assert np.array_equal(la.tensor(la.tensor(a, b), c), la.tensor(a, la.tensor(b, c)))


def test_partial_trace_product_state(rng):
    a = random_hermitian(rng, 2)
    b = random_hermitian(rng, 3)
    got = la.partial_trace(np.kron(a, b), [2, 3], keep=[0])
    assert np.allclose(got, np.trace(b) * a)
    got = la.partial_trace(np.kron(a, b), [2, 3], keep=[1])
    assert np.allclose(got, np.trace(a) * b)


def test_partial_trace_bell_state():
    bell = (la.ket("00") + la.ket("11")) / np.sqrt(2)
    assert np.allclose(la.partial_trace(la.projector(bell), [2, 2], keep=[0]), np.eye(2) / 2)


def test_partial_trace_matches_index_sum(rng):
    m = random_hermitian(rng, 4)
    keep0 = np.array([[sum(m[2 * i + k, 2 * j + k] for k in range(2)) for j in range(2)]
                      for i in range(2)])
    keep1 = np.array([[sum(m[2 * k + i, 2 * k + j] for k in range(2)) for j in range(2)]
                      for i in range(2)])
    assert np.allclose(la.partial_trace(m, [2, 2], keep=[0]), keep0)
    assert np.allclose(la.partial_trace(m, [2, 2], keep=[1]), keep1)


def test_partial_trace_three_factors(rng):
    a, b, c = random_hermitian(rng, 2), random_hermitian(rng, 3), random_hermitian(rng, 2)
    m = la.tensor(a, b, c)
    assert np.allclose(la.partial_trace(m, [2, 3, 2], keep=[0, 2]),
                       np.trace(b) * np.kron(a, c))


def test_partial_trace_all_factors_is_trace(rng):
    m = random_hermitian(rng, 6)
    assert np.isclose(la.partial_trace(m, [2, 3], keep=[])[0, 0], np.trace(m))


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ShapeError):
        la.partial_trace(np.eye(4), [2, 3], keep=[0])


def test_hermitian_eig_diagonal():
    w, _ = la.hermitian_eig(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1, 2, 3])


def test_hermitian_eig_pauli_x():
    w, _ = la.hermitian_eig([[0, 1], [1, 0]])
    assert np.allclose(w, [-1, 1])


def test_hermitian_eig_block_from_overlap_operator():
    # characteristic polynomial x^2 - 2x + 1/2
    w, _ = la.hermitian_eig([[0.5, -0.5], [-0.5, 1.5]])
    assert np.allclose(w, [1 - 1 / np.sqrt(2), 1 + 1 / np.sqrt(2)], atol=1e-15)


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(ContractError):
        la.hermitian_eig([[0, 1], [0, 0]])


def test_hermitian_eig_reconstruction_invariant(rng):
    for _ in range(1000):
        d = int(rng.integers(1, 65))
        m = random_hermitian(rng, d)
        w, v = la.hermitian_eig(m)
        assert np.all(np.diff(w) >= 0)
        assert np.max(np.abs((v * w) @ v.conj().T - m)) < 1e-9
        assert np.max(np.abs(v.conj().T @ v - np.eye(d))) < 1e-9


def test_trace_norm_examples():
    assert la.trace_norm(np.diag([1.0, -1.0])) == pytest.approx(2)
    diff = la.projector(la.ket("0")) - la.projector(la.ket("+"))
    assert la.trace_norm(diff) == pytest.approx(np.sqrt(2), abs=1e-14)
    assert la.trace_norm(np.zeros((3, 3))) == 0


def test_trace_norm_non_hermitian_uses_singular_values():
    assert la.trace_norm([[0, 2], [0, 0]]) == pytest.approx(2)


def test_trace_norm_requires_square():
    with pytest.raises(ShapeError):
        la.trace_norm(np.zeros((2, 3)))


def test_trace_norm_dominates_trace(rng):
    for _ in range(300):
        m = random_hermitian(rng, int(rng.integers(1, 9)))
        assert la.trace_norm(m) >= abs(np.trace(m)) - 1e-12


def test_min_eigenvalue_examples():
    assert la.min_eigenvalue(np.eye(4)) == pytest.approx(1)
    assert la.min_eigenvalue(np.diag([0.0, 1.0])) == 0
    p = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0.5, -0.5], [0, 0, -0.5, 1.5]])
    assert la.min_eigenvalue(p) == pytest.approx(1 - 1 / np.sqrt(2), abs=1e-15)


def test_min_eigenvalue_stable_under_identity_tensor(rng):
    for _ in range(100):
        m = random_hermitian(rng, int(rng.integers(1, 6)))
        k = int(rng.integers(1, 4))
        assert abs(la.min_eigenvalue(np.kron(m, np.eye(k))) - la.min_eigenvalue(m)) < 1e-9


def test_state_vector_norm_check():
    la.state_vector([1, 0])
    with pytest.raises(ContractError):
        la.state_vector([1, 1])


def test_ket_labels():
    assert np.allclose(la.ket("1+"), [0, 0, 1 / np.sqrt(2), 1 / np.sqrt(2)])
    with pytest.raises(ValueError):
        la.ket("2")
