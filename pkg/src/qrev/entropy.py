"""Entropic functionals, in bits.

Finite results are plain floats.  A relative entropy whose first argument is
not supported inside the support of the second is reported as the
``INFINITE`` sentinel, which orders above every float but refuses arithmetic.
"""
from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from . import densemath as dm
from .channel import QuantumChannel, extended_output
from .errors import DimensionMismatch
from .qstate import DensityOperator, purify

__all__ = [
    "INFINITE",
    "EntropyValue",
    "is_finite",
    "entropy_of_spectrum",
    "vn_entropy",
    "relative_entropy",
    "mutual_information",
    "channel_mutual_information",
    "coherent_information",
    "entanglement_fidelity",
    "joint_output",
]

SUPPORT_VIOLATION_TOL = 1e-9


class _Infinite:
    """+infinity for relative entropies; comparable, never summable."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("qrev.INFINITE")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __float__(self):
        raise TypeError("the infinite relative entropy has no float value")

    def __bool__(self):
        return True


INFINITE = _Infinite()
EntropyValue = Union[float, _Infinite]


def is_finite(value: EntropyValue) -> bool:
    return value is not INFINITE


def entropy_of_spectrum(w) -> float:
    """-sum p log2 p over the support of a spectrum (0 log 0 = 0)."""
    w = np.asarray(w, dtype=float)
    if not w.size or w.max() <= 0.0:
        return 0.0
    p = w[w > dm.SUPPORT_EPS * w.max()]
    return float(-np.sum(p * np.log2(p)))


def _entropy_of_matrix(m: np.ndarray) -> float:
    return entropy_of_spectrum(dm.eigvals_hermitian(m))


def vn_entropy(rho: DensityOperator) -> float:
    return entropy_of_spectrum(rho.eigenvalues)


def relative_entropy(rho: DensityOperator, sigma: DensityOperator) -> EntropyValue:
    """D(rho || sigma) = Tr[rho (log2 rho - log2 sigma)].

    Returns ``INFINITE`` when the compression of ``rho`` onto the kernel of
    ``sigma`` has max-norm above 1e-9.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions differ: {rho.dim} vs {sigma.dim}")
    w, v = sigma.eig
    p_sigma = sigma.support_projector()
    q = np.eye(sigma.dim) - p_sigma
    if dm.max_norm(q @ rho.matrix @ q) > SUPPORT_VIOLATION_TOL:
        return INFINITE
    mask = w > dm.SUPPORT_EPS * w[0]
    # Tr[rho log sigma] = sum_j log2(s_j) <s_j|rho|s_j> over the support of sigma
    vs = v[:, mask]
    weights = np.real(np.einsum("ij,ik,kj->j", vs.conj(), rho.matrix, vs))
    cross = float(np.sum(weights * np.log2(w[mask])))
    return -vn_entropy(rho) - cross


def _split(dims: Sequence[int], total: int) -> tuple[int, int]:
    if len(dims) != 2:
        raise DimensionMismatch("a bipartition needs exactly two factor dimensions")
    dx, dy = (int(x) for x in dims)
    if dx * dy != total:
        raise DimensionMismatch(f"dims ({dx}, {dy}) do not factor dimension {total}")
    return dx, dy


def _mutual_information_matrix(m: np.ndarray, dx: int, dy: int) -> float:
    hx = _entropy_of_matrix(dm.partial_trace(m, [dx, dy], keep=[0]))
    hy = _entropy_of_matrix(dm.partial_trace(m, [dx, dy], keep=[1]))
    hxy = _entropy_of_matrix(m)
    return hx + hy - hxy


def mutual_information(rho_xy: DensityOperator, dims: Sequence[int]) -> float:
    """I(X;Y) = H(X) + H(Y) - H(XY)."""
    dx, dy = _split(dims, rho_xy.dim)
    hx = _entropy_of_matrix(dm.partial_trace(rho_xy.matrix, [dx, dy], keep=[0]))
    hy = _entropy_of_matrix(dm.partial_trace(rho_xy.matrix, [dx, dy], keep=[1]))
    return hx + hy - vn_entropy(rho_xy)


def _check_input(rho: DensityOperator, ch: QuantumChannel) -> None:
    if rho.dim != ch.in_dim:
        raise DimensionMismatch(f"state has dim {rho.dim}, channel expects {ch.in_dim}")


def joint_output(rho: DensityOperator, ch: QuantumChannel) -> np.ndarray:
    """rho_RB = (I_R (x) E)(|Phi_rho><Phi_rho|) as a matrix."""
    _check_input(rho, ch)
    return extended_output(ch, purify(rho))


def channel_mutual_information(rho: DensityOperator, ch: QuantumChannel) -> float:
    """I(rho, E) = I(R;B) of the channel output on a purification of rho."""
    rho_rb = joint_output(rho, ch)
    return _mutual_information_matrix(rho_rb, rho.dim, ch.out_dim)


def coherent_information(rho: DensityOperator, ch: QuantumChannel) -> float:
    """I_c(rho, E) = H(B) - H(RB)."""
    rho_rb = joint_output(rho, ch)
    hb = _entropy_of_matrix(dm.partial_trace(rho_rb, [rho.dim, ch.out_dim], keep=[1]))
    return hb - _entropy_of_matrix(rho_rb)


def entanglement_fidelity(rho: DensityOperator, ch: QuantumChannel) -> float:
    """<Phi_rho| (I (x) E)(|Phi_rho><Phi_rho|) |Phi_rho>."""
    _check_input(rho, ch)
    if ch.out_dim != ch.in_dim:
        raise DimensionMismatch("entanglement fidelity needs a channel with out_dim == in_dim")
    state = purify(rho)
    rho_rb = extended_output(ch, state)
    phi = state.vector
    return float(np.real(phi.conj() @ rho_rb @ phi))
