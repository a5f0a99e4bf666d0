import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrev import densemath as dm
from qrev.errors import DimensionMismatch, NonHermitian, NotPSD

import oracles


def random_hermitian(seed, n):
    g = np.random.default_rng(seed).normal(size=(n, n, 2)) @ [1, 1j]
    return g + g.conj().T


def test_eig_identity():
    w, v = dm.eig_hermitian(np.eye(2))
    assert np.allclose(w, [1, 1])
    assert np.abs(v.conj().T @ v - np.eye(2)).max() < 1e-12


def test_eig_pauli_x():
    w, v = dm.eig_hermitian([[0, 1], [1, 0]])
    assert np.allclose(w, [1, -1])
    s = 1 / np.sqrt(2)
    assert np.abs(v[:, 0] - [s, s]).max() < 1e-12
    assert np.abs(v[:, 1] - [s, -s]).max() < 1e-12


def test_eig_random_4x4_reconstructs(rng):
    h = random_hermitian(1, 4)
    e = dm.eig_hermitian(h)
    assert np.abs(e.reconstruct() - h).max() <= 1e-9
    assert np.allclose(e.eigenvalues, np.linalg.eigvalsh(h)[::-1], atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 32))
def test_eig_roundtrip_property(seed, n):
    h = random_hermitian(seed, n)
    w, v = e = dm.eig_hermitian(h)
    assert np.abs(e.reconstruct() - h).max() <= 1e-9 * max(1.0, np.abs(h).max())
    assert np.abs(v.conj().T @ v - np.eye(n)).max() <= 1e-10
    assert np.all(np.diff(w) <= 0)
    for k in range(n):
        col = v[:, k]
        lead = col[np.argmax(np.abs(col) >= np.abs(col).max() * (1 - 1e-10))]
        assert abs(lead.imag) < 1e-12 and lead.real > 0


def test_eig_is_deterministic():
    h = random_hermitian(7, 6)
    a, b = dm.eig_hermitian(h), dm.eig_hermitian(h.copy())
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_eig_64():
    h = random_hermitian(3, 64)
    e = dm.eig_hermitian(h)
    assert np.abs(e.reconstruct() - h).max() <= 1e-9 * np.abs(h).max()


def test_eig_rejects_non_hermitian():
    with pytest.raises(NonHermitian):
        dm.eig_hermitian([[0, 1], [0, 0]])
    with pytest.raises(DimensionMismatch):
        dm.eig_hermitian(np.zeros((2, 3)))


def test_matfun_sqrt_diag():
    assert np.allclose(dm.matfun_on_support(np.diag([4.0, 0.0]), np.sqrt), np.diag([2, 0]))


def test_matfun_inverse_sqrt_is_pseudo_inverse():
    out = dm.matfun_on_support(np.diag([4.0, 0.0]), lambda x: x ** -0.5)
    assert np.allclose(out, np.diag([0.5, 0]))


def test_matfun_log2_maximally_mixed():
    assert np.allclose(dm.matfun_on_support(np.eye(2) / 2, np.log2), -np.eye(2))


def test_matfun_rejects_indefinite():
    with pytest.raises(NotPSD):
        dm.matfun_on_support(np.diag([1.0, -0.1]), np.sqrt)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 8), rank=st.integers(1, 8))
def test_matfun_sqrt_squares_back(seed, n, rank):
    g = np.random.default_rng(seed).normal(size=(n, min(rank, n), 2)) @ [1, 1j]
    m = g @ g.conj().T
    s = dm.matfun_on_support(m, np.sqrt)
    assert np.abs(s @ s - m).max() <= 1e-8 * max(1.0, np.abs(m).max())


def test_kron_identity_and_blocks():
    assert np.array_equal(dm.kron(np.eye(2), np.eye(2)), np.eye(4))
    x = np.array([[0, 1], [1, 0]])
    out = dm.kron(np.diag([1, 0]), x)
    assert np.array_equal(out[:2, :2], x)
    assert not out[2:, :].any() and not out[:, 2:].any()


def test_kron_against_index_oracle(rng):
    for da, db in [(2, 2), (2, 3), (3, 3)]:
        a = rng.normal(size=(da, da)) + 1j * rng.normal(size=(da, da))
        b = rng.normal(size=(db, db)) + 1j * rng.normal(size=(db, db))
        out = dm.kron(a, b)
        for i in range(da):
            for j in range(da):
                assert np.allclose(out[i * db:(i + 1) * db, j * db:(j + 1) * db], a[i, j] * b)
        c = rng.normal(size=(da, da))
        d = rng.normal(size=(db, db))
        assert np.allclose(dm.kron(a, b) @ dm.kron(c, d), dm.kron(a @ c, b @ d))
        e = rng.normal(size=(2, 2))
        assert np.allclose(dm.kron(dm.kron(a, b), e), dm.kron(a, dm.kron(b, e)))


def test_partial_trace_bell():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    m = np.outer(phi, phi)
    assert np.allclose(dm.partial_trace(m, [2, 2], keep=[1]), np.eye(2) / 2)
    assert np.allclose(dm.partial_trace(m, [2, 2], keep=[0]), np.eye(2) / 2)


def test_partial_trace_product(rng):
    rho = np.diag([0.3, 0.7])
    sigma = 2.0 * np.diag([0.1, 0.5, 0.4])
    out = dm.partial_trace(np.kron(rho, sigma), [2, 3], keep=[0])
    assert np.allclose(out, rho * np.trace(sigma))


def test_partial_trace_matches_loop_oracle(rng):
    dims = [2, 3, 2]
    n = int(np.prod(dims))
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    for keep in ([0], [1], [2], [0, 2], [1, 2], [0, 1, 2], []):
        assert np.allclose(dm.partial_trace(m, dims, keep), oracles.ptrace_loops(m, dims, keep))
    # keep order does not matter, kept factors stay in original order
    assert np.allclose(dm.partial_trace(m, dims, [2, 0]), dm.partial_trace(m, dims, [0, 2]))


def test_partial_trace_keep_all_then_trace(rng):
    m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    kept = dm.partial_trace(m, [2, 3], keep=[0, 1])
    assert np.allclose(kept, m)
    for keep in ([0], [1]):
        assert abs(np.trace(dm.partial_trace(m, [2, 3], keep)) - np.trace(m)) <= 1e-10


def test_partial_trace_dimension_errors():
    with pytest.raises(DimensionMismatch):
        dm.partial_trace(np.eye(6), [2, 2], keep=[0])
    with pytest.raises(DimensionMismatch):
        dm.partial_trace(np.eye(4), [2, 2], keep=[2])
