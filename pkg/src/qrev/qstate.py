"""Density operators, purifications and code subspaces."""
from __future__ import annotations

import numpy as np

from . import densemath as dm
from .errors import DimensionMismatch, InvalidCode, InvalidState, NonHermitian

__all__ = [
    "DensityOperator",
    "PurifiedState",
    "CodeSubspace",
    "purify",
    "encode",
    "faithful_code_state",
    "pure_state",
    "maximally_mixed",
]

TRACE_TOL = 1e-10
PURIFY_TOL = 1e-9
ISOMETRY_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


class DensityOperator:
    """A validated density matrix.

    The matrix is checked for hermiticity (1e-10 relative), unit trace
    (1e-10) and positivity (min eigenvalue >= -1e-9 * max eigenvalue).  The
    eigendecomposition used for the positivity test is kept on ``eig`` so that
    entropies and purifications do not diagonalize again.
    """

    __slots__ = ("matrix", "eig")

    def __init__(self, matrix):
        m = dm.as_matrix(matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"density matrix must be square, got {m.shape}")
        try:
            eig = dm.eig_hermitian(m)
        except NonHermitian as exc:
            raise InvalidState(str(exc)) from None
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidState(f"trace is {tr.real:.12g}, expected 1")
        w = eig.eigenvalues
        if w[-1] < -dm.PSD_TOL * max(w[0], 0.0):
            raise InvalidState(f"not positive semidefinite (min eigenvalue {w[-1]:.3e})")
        self.matrix = _frozen(0.5 * (m + dm.dagger(m)))
        self.eig = eig

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eig.eigenvalues

    def support_projector(self) -> np.ndarray:
        return dm.support_projector(self.matrix, eig=self.eig)

    def rank(self) -> int:
        w = self.eig.eigenvalues
        return int(np.sum(w > dm.SUPPORT_EPS * w[0]))

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __repr__(self):
        return f"DensityOperator(dim={self.dim}, rank={self.rank()})"


def pure_state(psi) -> DensityOperator:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    return DensityOperator(np.outer(psi, psi.conj()))


def maximally_mixed(dim: int) -> DensityOperator:
    return DensityOperator(np.eye(dim) / dim)


class PurifiedState:
    """Pure state on reference (first factor) tensor system (second factor)."""

    __slots__ = ("ref_dim", "sys_dim", "vector")

    def __init__(self, ref_dim: int, sys_dim: int, vector):
        vec = np.asarray(vector, dtype=complex).reshape(-1)
        if vec.size != ref_dim * sys_dim:
            raise DimensionMismatch(
                f"vector of length {vec.size} does not fit {ref_dim} x {sys_dim}"
            )
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > TRACE_TOL:
            raise InvalidState(f"purification has norm {norm:.12g}")
        self.ref_dim = int(ref_dim)
        self.sys_dim = int(sys_dim)
        self.vector = _frozen(vec)

    def amplitudes(self) -> np.ndarray:
        """Amplitudes as a (ref_dim, sys_dim) array."""
        return self.vector.reshape(self.ref_dim, self.sys_dim)

    def projector(self) -> np.ndarray:
        return np.outer(self.vector, self.vector.conj())

    def reduced_system(self) -> np.ndarray:
        psi = self.amplitudes()
        return psi.T @ psi.conj()

    def reduced_reference(self) -> np.ndarray:
        psi = self.amplitudes()
        return psi @ dm.dagger(psi)

    def with_reference_isometry(self, u) -> "PurifiedState":
        """Apply an isometry on the reference factor (another purification of the same state)."""
        u = dm.as_matrix(u)
        if u.shape[1] != self.ref_dim:
            raise DimensionMismatch("isometry does not act on the reference factor")
        return PurifiedState(u.shape[0], self.sys_dim, (u @ self.amplitudes()).reshape(-1))


def purify(rho: DensityOperator) -> PurifiedState:
    """Purification sum_i sqrt(p_i) |v_i> (x) |v_i>, reference factor first.

    ``p_i, v_i`` is the eigendecomposition of ``rho`` under the phase
    convention of :func:`qrev.densemath.eig_hermitian`; the same eigenvectors
    label both factors.  For degenerate spectra the basis is whatever the
    Jacobi solver returns, so the result is deterministic but not canonical.
    """
    w, v = rho.eig
    p = np.sqrt(np.clip(w, 0.0, None))
    p = p / np.linalg.norm(p)
    # psi[r, a] = sum_i sqrt(p_i) v_i[r] v_i[a]
    psi = (v * p) @ v.T
    state = PurifiedState(rho.dim, rho.dim, psi.reshape(-1))
    dev = dm.max_norm(state.reduced_system() - rho.matrix)
    if dev > PURIFY_TOL:
        raise InvalidState(f"purification does not reproduce the state (deviation {dev:.3e})")
    return state


class CodeSubspace:
    """Code space K_A given by an isometry V from the logical space into H_A."""

    __slots__ = ("isometry",)

    def __init__(self, isometry):
        v = dm.as_matrix(isometry)
        n, k = v.shape
        if k < 1 or k > n:
            raise InvalidCode(f"isometry shape {v.shape} must be ambient_dim x logical_dim with k <= n")
        dev = dm.max_norm(dm.dagger(v) @ v - np.eye(k))
        if dev > ISOMETRY_TOL:
            raise InvalidCode(f"V^dag V deviates from the identity by {dev:.3e}")
        self.isometry = _frozen(v)

    @classmethod
    def from_basis(cls, vectors) -> "CodeSubspace":
        """Code spanned by the given (orthonormal) ambient vectors."""
        cols = [np.asarray(x, dtype=complex).reshape(-1) for x in vectors]
        return cls(np.stack(cols, axis=1))

    @classmethod
    def full_space(cls, dim: int) -> "CodeSubspace":
        return cls(np.eye(dim))

    @property
    def ambient_dim(self) -> int:
        return self.isometry.shape[0]

    @property
    def logical_dim(self) -> int:
        return self.isometry.shape[1]

    @property
    def projector(self) -> np.ndarray:
        v = self.isometry
        return v @ dm.dagger(v)

    def basis_states(self) -> list[DensityOperator]:
        v = self.isometry
        return [pure_state(v[:, i]) for i in range(self.logical_dim)]

    def __repr__(self):
        return f"CodeSubspace(ambient_dim={self.ambient_dim}, logical_dim={self.logical_dim})"


def encode(code: CodeSubspace, rho_x: DensityOperator) -> DensityOperator:
    """rho_A = V rho_X V^dag."""
    if rho_x.dim != code.logical_dim:
        raise DimensionMismatch(
            f"logical state has dim {rho_x.dim}, code expects {code.logical_dim}"
        )
    v = code.isometry
    return DensityOperator(v @ rho_x.matrix @ dm.dagger(v))


def faithful_code_state(code: CodeSubspace) -> DensityOperator:
    """Maximally mixed state on the code, V V^dag / k."""
    return DensityOperator(code.projector / code.logical_dim)
