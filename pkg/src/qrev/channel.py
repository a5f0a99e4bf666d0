"""Quantum channels in the normalized Choi representation.

The canonical data of a channel ``E: L(H_A) -> L(H_B)`` with ``d = dim H_A``
and ``m = dim H_B`` is

    M(E) = (1/d) sum_ij |i><j| (x) E(|i><j|),

a ``(d*m) x (d*m)`` PSD matrix with ``Tr_B M = I_R / d`` (reference factor
first).  The ``(i, j)`` block of ``M`` is ``E(|i><j|) / d``, so the channel
acts as ``E(X) = d * Tr_R[(X^T (x) I_B) M]``.

A Kraus operator ``E_k`` corresponds to the vector
``(I (x) E_k)|Phi> = vec(E_k) / sqrt(d)`` where ``vec`` stacks the columns of
``E_k`` (column ``i`` occupies entries ``i*m .. i*m + m - 1``).
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from . import densemath as dm
from .errors import DimensionMismatch, NotCompletelyPositive, NotTracePreserving
from .qstate import DensityOperator, PurifiedState

__all__ = [
    "QuantumChannel",
    "from_kraus",
    "from_choi",
    "to_kraus",
    "choi_from_kraus",
    "apply",
    "apply_operator",
    "apply_extended",
    "to_stinespring",
    "from_stinespring",
    "complement",
    "dual",
    "compose",
    "marginal",
    "tensor",
    "mixture",
]

KRAUS_TP_TOL = 1e-8
CHOI_TOL = 1e-9


def _vec(e: np.ndarray) -> np.ndarray:
    return e.T.reshape(-1)


def _unvec(v: np.ndarray, in_dim: int, out_dim: int) -> np.ndarray:
    return v.reshape(in_dim, out_dim).T


def choi_from_kraus(ops: Sequence[np.ndarray]) -> np.ndarray:
    d = ops[0].shape[1]
    vecs = np.stack([_vec(e) for e in ops], axis=1) / np.sqrt(d)
    return vecs @ dm.dagger(vecs)


def _tp_deviation(ops: Sequence[np.ndarray]) -> float:
    d = ops[0].shape[1]
    total = sum(dm.dagger(e) @ e for e in ops)
    return dm.max_norm(total - np.eye(d))


def _kraus_from_choi(choi: np.ndarray, in_dim: int, out_dim: int) -> tuple[np.ndarray, ...]:
    w, v = dm.eig_hermitian(choi)
    keep = w > dm.SUPPORT_EPS * w[0]
    return tuple(
        np.sqrt(in_dim * lam) * _unvec(v[:, k], in_dim, out_dim)
        for k, lam in zip(np.flatnonzero(keep), w[keep])
    )


class QuantumChannel:
    """A validated CPTP map with its normalized Choi matrix and a Kraus set.

    Build instances with :func:`from_kraus` or :func:`from_choi`.  The Kraus
    set is fixed at construction: the operators that were passed in, or the
    spectral Kraus operators of the Choi matrix.
    """

    __slots__ = ("in_dim", "out_dim", "choi", "kraus")

    def __init__(self, in_dim: int, out_dim: int, choi: np.ndarray, kraus: Sequence[np.ndarray]):
        self.in_dim = int(in_dim)
        self.out_dim = int(out_dim)
        choi = np.array(choi, dtype=complex)
        choi.setflags(write=False)
        self.choi = choi
        frozen = []
        for e in kraus:
            e = np.array(e, dtype=complex)
            e.setflags(write=False)
            frozen.append(e)
        self.kraus = tuple(frozen)

    @property
    def kraus_rank(self) -> int:
        return len(self.kraus)

    def choi_blocks(self) -> np.ndarray:
        """Choi matrix as a 4-index array ``[i, b, j, b']``."""
        d, m = self.in_dim, self.out_dim
        return self.choi.reshape(d, m, d, m)

    def __call__(self, rho):
        return apply(self, rho)

    def __repr__(self):
        return f"QuantumChannel(in_dim={self.in_dim}, out_dim={self.out_dim}, kraus_rank={self.kraus_rank})"


def from_kraus(ops: Sequence) -> QuantumChannel:
    """Channel rho -> sum_k E_k rho E_k^dag.

    Raises ``NotTracePreserving`` when ``|sum_k E_k^dag E_k - I|_max > 1e-8``.
    """
    ops = [dm.as_matrix(e) for e in ops]
    if not ops:
        raise DimensionMismatch("at least one Kraus operator is required")
    shape = ops[0].shape
    if any(e.shape != shape for e in ops):
        raise DimensionMismatch(f"Kraus operators have mismatched shapes {[e.shape for e in ops]}")
    dev = _tp_deviation(ops)
    if dev > KRAUS_TP_TOL:
        raise NotTracePreserving(f"sum_k E_k^dag E_k deviates from I by {dev:.3e}", dev)
    out_dim, in_dim = shape
    return QuantumChannel(in_dim, out_dim, choi_from_kraus(ops), ops)


def from_choi(choi, in_dim: int, out_dim: int | None = None) -> QuantumChannel:
    """Channel from a normalized Choi matrix (``Tr_B M = I/d``).

    Kraus operators are extracted from the spectral decomposition with
    eigenvalues at or below ``1e-10 * lambda_max`` dropped; trace
    preservation is checked again on the truncated set.
    """
    choi = dm.as_matrix(choi)
    n = choi.shape[0]
    if choi.shape != (n, n) or n % in_dim:
        raise DimensionMismatch(f"Choi matrix of shape {choi.shape} does not fit in_dim={in_dim}")
    if out_dim is None:
        out_dim = n // in_dim
    if in_dim * out_dim != n:
        raise DimensionMismatch(f"Choi matrix of shape {choi.shape} does not fit {in_dim} -> {out_dim}")
    choi = 0.5 * (choi + dm.dagger(choi))
    w = dm.eigvals_hermitian(choi)
    if w[-1] < -CHOI_TOL:
        raise NotCompletelyPositive(f"Choi matrix has eigenvalue {w[-1]:.3e}")
    marg = dm.partial_trace(choi, [in_dim, out_dim], keep=[0])
    dev = dm.max_norm(marg - np.eye(in_dim) / in_dim)
    if dev > CHOI_TOL:
        raise NotTracePreserving(f"Tr_B of the Choi matrix deviates from I/d by {dev:.3e}", dev)
    kraus = _kraus_from_choi(choi, in_dim, out_dim)
    dev = _tp_deviation(kraus)
    if dev > KRAUS_TP_TOL:
        raise NotTracePreserving(f"truncated Kraus set deviates from TP by {dev:.3e}", dev)
    return QuantumChannel(in_dim, out_dim, choi, kraus)


def to_kraus(ch: QuantumChannel) -> list[np.ndarray]:
    """Spectral Kraus operators E_k = sqrt(d * lambda_k) unvec(v_k) of the Choi matrix."""
    return list(_kraus_from_choi(ch.choi, ch.in_dim, ch.out_dim))


def apply_operator(ch: QuantumChannel, x) -> np.ndarray:
    """Linear extension of the channel to an arbitrary operator on H_A."""
    x = dm.as_matrix(x)
    if x.shape != (ch.in_dim, ch.in_dim):
        raise DimensionMismatch(f"operator of shape {x.shape} does not match in_dim={ch.in_dim}")
    return ch.in_dim * np.einsum("ij,ibjc->bc", x, ch.choi_blocks())


def apply(ch: QuantumChannel, rho: DensityOperator) -> DensityOperator:
    """E(rho) = d * Tr_R[(rho^T (x) I_B) M]."""
    if rho.dim != ch.in_dim:
        raise DimensionMismatch(f"state has dim {rho.dim}, channel expects {ch.in_dim}")
    return DensityOperator(apply_operator(ch, rho.matrix))


def extended_output(ch: QuantumChannel, state: PurifiedState) -> np.ndarray:
    if state.sys_dim != ch.in_dim:
        raise DimensionMismatch(f"system factor has dim {state.sys_dim}, channel expects {ch.in_dim}")
    psi = state.amplitudes()
    r, m = state.ref_dim, ch.out_dim
    out = ch.in_dim * np.einsum("ri,sj,ibjc->rbsc", psi, psi.conj(), ch.choi_blocks())
    return out.reshape(r * m, r * m)


def apply_extended(ch: QuantumChannel, state: PurifiedState) -> DensityOperator:
    """Joint output (I_R (x) E)(|psi><psi|) on H_R (x) H_B."""
    return DensityOperator(extended_output(ch, state))


def to_stinespring(ch: QuantumChannel) -> np.ndarray:
    """Isometry V|i> = sum_l E_l|i> (x) |l>, output factor first, environment second.

    Uses the channel's Kraus set, so ``env_dim == ch.kraus_rank``.
    """
    k = np.stack(ch.kraus, axis=0)  # [l, b, i]
    return np.transpose(k, (1, 0, 2)).reshape(ch.out_dim * ch.kraus_rank, ch.in_dim)


def from_stinespring(v, out_dims: Sequence[int] | None = None) -> QuantumChannel:
    """The isometric channel rho -> V rho V^dag (a single Kraus operator)."""
    v = dm.as_matrix(v)
    if out_dims is not None and int(np.prod(out_dims)) != v.shape[0]:
        raise DimensionMismatch(f"out_dims {tuple(out_dims)} do not factor {v.shape[0]}")
    return from_kraus([v])


def complement(ch: QuantumChannel) -> QuantumChannel:
    """Channel into the environment: rho -> sum_kl Tr[rho E_k^dag E_l] |l><k|.

    Its Kraus operators are F_b = (<b| (x) I_E) V, one per output basis vector.
    """
    k = np.stack(ch.kraus, axis=0)  # [l, b, i]
    return from_kraus([k[:, b, :] for b in range(ch.out_dim)])


def dual(ch: QuantumChannel) -> Callable[[np.ndarray], np.ndarray]:
    """Heisenberg-picture map Y -> sum_k E_k^dag Y E_k."""
    kraus = ch.kraus

    def adjoint(y):
        y = dm.as_matrix(y)
        if y.shape != (ch.out_dim, ch.out_dim):
            raise DimensionMismatch(f"observable of shape {y.shape} does not match out_dim={ch.out_dim}")
        return sum(dm.dagger(e) @ y @ e for e in kraus)

    return adjoint


def compose(later: QuantumChannel, earlier: QuantumChannel) -> QuantumChannel:
    """``later`` after ``earlier``."""
    if later.in_dim != earlier.out_dim:
        raise DimensionMismatch(
            f"cannot compose: earlier outputs dim {earlier.out_dim}, later expects {later.in_dim}"
        )
    return from_kraus([f @ e for f in later.kraus for e in earlier.kraus])


def marginal(ch: QuantumChannel, out_dims: Sequence[int], keep: int) -> QuantumChannel:
    """Post-compose with the partial trace over one factor of a bipartite output.

    ``out_dims = (d_B, d_C)``; ``keep=0`` returns E_B = Tr_C E_BC and
    ``keep=1`` returns E_C = Tr_B E_BC.
    """
    db, dc = (int(x) for x in out_dims)
    if db * dc != ch.out_dim:
        raise DimensionMismatch(f"out_dims ({db}, {dc}) do not factor out_dim={ch.out_dim}")
    if keep not in (0, 1):
        raise ValueError("keep must be 0 (first factor) or 1 (second factor)")
    ops = []
    for e in ch.kraus:
        t = e.reshape(db, dc, ch.in_dim)
        if keep == 0:
            ops.extend(t[:, c, :] for c in range(dc))
        else:
            ops.extend(t[b, :, :] for b in range(db))
    return from_kraus(ops)


def tensor(first: QuantumChannel, second: QuantumChannel) -> QuantumChannel:
    return from_kraus([np.kron(a, b) for a in first.kraus for b in second.kraus])


def mixture(first: QuantumChannel, second: QuantumChannel, t: float) -> QuantumChannel:
    """Convex combination t * first + (1 - t) * second."""
    if (first.in_dim, first.out_dim) != (second.in_dim, second.out_dim):
        raise DimensionMismatch("channels in a mixture must share dimensions")
    if not 0.0 <= t <= 1.0:
        raise ValueError("mixing weight must lie in [0, 1]")
    ops = [np.sqrt(t) * e for e in first.kraus] + [np.sqrt(1.0 - t) * e for e in second.kraus]
    return from_kraus(ops)
