"""Dense complex-matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The one piece
that is not delegated to numpy is the Hermitian eigensolver: a cyclic complex
Jacobi method using a round-robin pair ordering, so that every rotation of a
round acts on disjoint index pairs and the whole round is applied as one
unitary.  Results carry a fixed phase convention which makes purifications
and Kraus extractions reproducible bit for bit.
"""
from __future__ import annotations

from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NonHermitian, NotPSD

__all__ = [
    "HERMITIAN_TOL",
    "PSD_TOL",
    "SUPPORT_EPS",
    "HermitianEigen",
    "as_matrix",
    "eig_hermitian",
    "eigvals_hermitian",
    "matfun_on_support",
    "support_projector",
    "kron",
    "partial_trace",
    "dagger",
    "max_norm",
]

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-9
SUPPORT_EPS = 1e-10

JACOBI_MAX_SWEEPS = 100
JACOBI_TOL = 1e-13


class HermitianEigen(NamedTuple):
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def max_norm(m) -> float:
    a = np.asarray(m)
    return float(np.max(np.abs(a))) if a.size else 0.0


def _check_hermitian(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got {m.shape}")
    scale = max_norm(m)
    dev = max_norm(m - dagger(m))
    if dev > HERMITIAN_TOL * scale:
        raise NonHermitian(f"matrix is not Hermitian (|m - m^dag|_max = {dev:.3e})")
    return 0.5 * (m + dagger(m))


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # circle-method tournament; a padded dummy player (index n) sits out
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for i in range(size // 2):
            a, b = players[i], players[size - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


_SCHEDULES: dict[int, list] = {}


def _schedule(n: int):
    if n not in _SCHEDULES:
        _SCHEDULES[n] = _round_robin(n)
    return _SCHEDULES[n]


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _jacobi(h: np.ndarray, max_sweeps: int = JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=complex)
    target = JACOBI_TOL * np.linalg.norm(h)
    if n < 2 or _offdiag_norm(a) <= target:
        return np.real(np.diag(a)).copy(), v
    schedule = _schedule(n)
    for _ in range(max_sweeps):
        for p, q in schedule:
            apq = a[p, q]
            r = np.abs(apq)
            active = r > 0.0
            if not np.any(active):
                continue
            p, q, apq, r = p[active], q[active], apq[active], r[active]
            phase = apq / r
            tau = (np.real(a[q, q]) - np.real(a[p, p])) / (2.0 * r)
            sign = np.where(tau >= 0.0, 1.0, -1.0)
            t = sign / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # J = diag(1, conj(phase)) @ [[c, s], [-s, c]] on each (p, q) pair
            j = np.eye(n, dtype=complex)
            j[p, p] = c
            j[p, q] = s
            j[q, p] = -s * np.conj(phase)
            j[q, q] = c * np.conj(phase)
            a = dagger(j) @ a @ j
            a[p, q] = 0.0
            a[q, p] = 0.0
            a = 0.5 * (a + dagger(a))
            v = v @ j
        if _offdiag_norm(a) <= target:
            return np.real(np.diag(a)).copy(), v
    raise NoConvergence(f"Jacobi iteration did not converge within {max_sweeps} sweeps")


def _fix_phases(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        mags = np.abs(col)
        # first entry within rounding of the largest magnitude
        idx = int(np.argmax(mags >= mags.max() * (1.0 - 1e-10)))
        z = col[idx]
        if z != 0:
            v[:, k] = col * (np.conj(z) / abs(z))
    return v


def eig_hermitian(m) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues come back in descending order (stable with respect to the
    Jacobi output order on ties).  Each eigenvector is rotated so that its
    first largest-magnitude entry is real and nonnegative.

    Raises
    ------
    NonHermitian
        if ``|m - m^dag|_max`` exceeds ``1e-10 * |m|_max``.
    NoConvergence
        if the Jacobi sweep budget is exhausted.
    """
    h = _check_hermitian(as_matrix(m))
    w, v = _jacobi(h)
    order = np.argsort(-w, kind="stable")
    return HermitianEigen(w[order], _fix_phases(v[:, order]))


def eigvals_hermitian(m) -> np.ndarray:
    return eig_hermitian(m).eigenvalues


def _support_mask(w: np.ndarray) -> np.ndarray:
    top = w.max() if w.size else 0.0
    if top <= 0.0:
        return np.zeros(w.shape, dtype=bool)
    return w > SUPPORT_EPS * top


def _check_psd(w: np.ndarray) -> None:
    if not w.size:
        return
    top = max(float(w.max()), 0.0)
    if w.min() < -PSD_TOL * top:
        raise NotPSD(f"matrix is not positive semidefinite (min eigenvalue {w.min():.3e})")


def matfun_on_support(m, f: Callable[[np.ndarray], np.ndarray], eig: HermitianEigen | None = None) -> np.ndarray:
    """Apply ``f`` to the eigenvalues of a PSD matrix on its support.

    Eigenvalues at or below ``SUPPORT_EPS * lambda_max`` are treated as kernel
    and mapped to zero, so ``x ** -0.5`` yields the pseudo-inverse square root.
    A precomputed decomposition of ``m`` may be passed as ``eig``.
    """
    if eig is None:
        eig = eig_hermitian(m)
    w, v = eig
    _check_psd(w)
    mask = _support_mask(w)
    vs = v[:, mask]
    fw = np.asarray(f(w[mask]), dtype=float)
    out = (vs * fw) @ dagger(vs)
    return 0.5 * (out + dagger(out))


def support_projector(m, eig: HermitianEigen | None = None) -> np.ndarray:
    if eig is None:
        eig = eig_hermitian(m)
    w, v = eig
    vs = v[:, _support_mask(w)]
    return vs @ dagger(vs)


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Reduced operator on the factors listed in ``keep``.

    ``dims`` gives the tensor factor dimensions in order; kept factors stay in
    their original order regardless of the order of ``keep``.
    """
    a = as_matrix(m)
    dims = [int(x) for x in dims]
    n = len(dims)
    total = int(np.prod(dims)) if dims else 1
    if a.shape != (total, total):
        raise DimensionMismatch(f"dims {dims} do not factor a matrix of shape {a.shape}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise DimensionMismatch(f"keep indices {keep} out of range for {n} factors")
    t = a.reshape(dims + dims)
    row = list(range(n))
    col = [n + i if i in keep else i for i in range(n)]
    out_idx = keep + [n + k for k in keep]
    reduced = np.einsum(t, row + col, out_idx)
    kd = int(np.prod([dims[k] for k in keep])) if keep else 1
    return reduced.reshape(kd, kd)
