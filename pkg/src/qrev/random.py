"""Random states, isometries, channels and correctable instances.

Every function takes a ``numpy.random.Generator`` so that test corpora are
reproducible from a seed.
"""
from __future__ import annotations

import numpy as np

from .channel import QuantumChannel, from_kraus
from .qstate import CodeSubspace, DensityOperator


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def random_isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    q, r = np.linalg.qr(ginibre(rng, rows, cols))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    return random_isometry(rng, dim, dim)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = ginibre(rng, dim, dim)
    return 0.5 * (g + g.conj().T)


def random_density(rng: np.random.Generator, dim: int, rank: int | None = None) -> DensityOperator:
    g = ginibre(rng, dim, rank or dim)
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real)


def random_pure(rng: np.random.Generator, dim: int) -> DensityOperator:
    return random_density(rng, dim, rank=1)


def random_code(rng: np.random.Generator, ambient_dim: int, logical_dim: int) -> CodeSubspace:
    return CodeSubspace(random_isometry(rng, ambient_dim, logical_dim))


def random_kraus(rng: np.random.Generator, in_dim: int, out_dim: int, rank: int) -> list[np.ndarray]:
    if out_dim * rank < in_dim:
        raise ValueError(f"{rank} Kraus operators of shape {out_dim}x{in_dim} cannot be trace preserving")
    v = random_isometry(rng, out_dim * rank, in_dim).reshape(out_dim, rank, in_dim)
    return [v[:, k, :] for k in range(rank)]


def random_channel(
    rng: np.random.Generator, in_dim: int, out_dim: int | None = None, rank: int = 2
) -> QuantumChannel:
    """Random CPTP map; ``rank`` is raised to ceil(in_dim / out_dim) if needed."""
    out_dim = out_dim or in_dim
    rank = max(rank, -(-in_dim // out_dim))
    return from_kraus(random_kraus(rng, in_dim, out_dim, rank))


def remix_kraus(rng: np.random.Generator, ops, size: int | None = None) -> list[np.ndarray]:
    """F_j = sum_k u_jk E_k for a random isometry u (same channel, different Kraus set)."""
    n = len(ops)
    u = random_isometry(rng, size or n, n)
    return [sum(u[j, k] * ops[k] for k in range(n)) for j in range(u.shape[0])]


def correctable_channel(
    rng: np.random.Generator,
    code: CodeSubspace,
    out_dim: int,
    n_errors: int = 2,
) -> QuantumChannel:
    """A random channel that is perfectly correctable on ``code``.

    The Stinespring isometry sends the code basis vector ``|c_i>`` to
    ``sum_k sqrt(q_k) W|i, k> (x) |k>`` with ``W`` a random isometry from
    ``logical (x) syndrome`` into the output, so the environment output is the
    same for every code state.  Vectors orthogonal to the code go to random
    orthonormal vectors outside the span of the code images, which makes the
    channel generically not correctable on the full input space.
    """
    d, k = code.ambient_dim, code.logical_dim
    if out_dim < k * n_errors:
        raise ValueError("out_dim must be at least logical_dim * n_errors")
    q = rng.dirichlet(np.ones(n_errors))
    w = random_isometry(rng, out_dim, k * n_errors).reshape(out_dim, k, n_errors)
    big = out_dim * n_errors
    images = np.zeros((big, k), dtype=complex)
    for i in range(k):
        col = np.zeros((out_dim, n_errors), dtype=complex)
        for e in range(n_errors):
            col[:, e] = np.sqrt(q[e]) * w[:, i, e]
        images[:, i] = col.reshape(-1)
    # orthonormal completion of the code basis in H_A
    full = np.linalg.qr(np.concatenate([code.isometry, ginibre(rng, d, d - k)], axis=1))[0]
    full[:, :k] = code.isometry
    comp_in = full[:, k:]
    if d > k:
        if big < d:
            raise ValueError("output (x) environment too small for the complement")
        outside = ginibre(rng, big, d - k)
        outside -= images @ (images.conj().T @ outside)
        comp_out = np.linalg.qr(outside)[0]
        v = images @ code.isometry.conj().T + comp_out @ comp_in.conj().T
    else:
        v = images @ code.isometry.conj().T
    t = v.reshape(out_dim, n_errors, d)
    return from_kraus([t[:, e, :] for e in range(n_errors)])
