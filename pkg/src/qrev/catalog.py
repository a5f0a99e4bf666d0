"""Standard channels and codes used throughout the tests and demos."""
from __future__ import annotations

from functools import reduce

import numpy as np

from .channel import QuantumChannel, from_kraus
from .qstate import CodeSubspace, DensityOperator

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, X, Y, Z)


def kron_all(*ops) -> np.ndarray:
    return reduce(np.kron, ops)


def basis_vector(dim: int, index: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[index] = 1.0
    return e


def identity_channel(dim: int) -> QuantumChannel:
    return from_kraus([np.eye(dim)])


def unitary_channel(u) -> QuantumChannel:
    return from_kraus([np.asarray(u, dtype=complex)])


def replacement_channel(in_dim: int, rho0: DensityOperator) -> QuantumChannel:
    """Constant channel: trace the input, prepare rho0."""
    w, v = rho0.eig
    ops = []
    for lam, vec in zip(w, v.T):
        if lam <= 0.0:
            continue
        for j in range(in_dim):
            ops.append(np.sqrt(lam) * np.outer(vec, basis_vector(in_dim, j)))
    return from_kraus(ops)


def reset_channel(dim: int = 2) -> QuantumChannel:
    """Reset to |0>, with Kraus operators |0><j|."""
    return from_kraus([np.outer(basis_vector(dim, 0), basis_vector(dim, j)) for j in range(dim)])


def dephasing_channel(p: float = 0.5) -> QuantumChannel:
    """Qubit dephasing with Kraus {sqrt(1-p) I, sqrt(p) Z}."""
    return from_kraus([np.sqrt(1.0 - p) * I2, np.sqrt(p) * Z])


def depolarizing_channel(p: float = 1.0) -> QuantumChannel:
    """Qubit depolarizing rho -> (1 - p) rho + p I/2, written with four Pauli Kraus operators."""
    w0 = np.sqrt(1.0 - 3.0 * p / 4.0)
    w = np.sqrt(p / 4.0)
    return from_kraus([w0 * I2, w * X, w * Y, w * Z])


def bit_flip_code() -> CodeSubspace:
    """Three-qubit repetition code |0> -> |000>, |1> -> |111>."""
    return CodeSubspace.from_basis([basis_vector(8, 0), basis_vector(8, 7)])


def single_bit_flip_channel(p: float = 0.3) -> QuantumChannel:
    """At most one of three qubits flips: Kraus {sqrt(1-p) III, sqrt(p/3) XII, sqrt(p/3) IXI, sqrt(p/3) IIX}."""
    q = np.sqrt(p / 3.0)
    return from_kraus(
        [
            np.sqrt(1.0 - p) * kron_all(I2, I2, I2),
            q * kron_all(X, I2, I2),
            q * kron_all(I2, X, I2),
            q * kron_all(I2, I2, X),
        ]
    )


def embed_channel(in_dim: int, out_dims=(None, None), which: int = 0) -> QuantumChannel:
    """Isometric channel |psi> -> |psi> (x) |0> (which=0) or |0> (x) |psi> (which=1)."""
    other = out_dims[1 - which] or in_dim
    zero = basis_vector(other, 0).reshape(-1, 1)
    eye = np.eye(in_dim)
    v = np.kron(eye, zero) if which == 0 else np.kron(zero, eye)
    return from_kraus([v])
