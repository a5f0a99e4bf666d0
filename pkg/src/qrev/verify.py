"""Reversibility, vanishing and Knill-Laflamme checks, Petz recovery, and the
two-party tradeoff.

Every checker returns a :class:`CheckReport`.  Three routes decide whether a
channel is perfectly correctable on a code:

* ``check_reversible``: mutual-information deficit on the maximally mixed
  code state, corroborated by the entanglement fidelity of the Petz recovery;
* ``check_kl``: the Knill-Laflamme condition on the Kraus operators;
* ``petz_fidelity``: entanglement fidelity of ``R_sigma o E`` directly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import densemath as dm
from .catalog import identity_channel
from .channel import (
    QuantumChannel,
    apply_operator,
    compose,
    from_kraus,
    marginal,
)
from .entropy import channel_mutual_information, entanglement_fidelity
from .errors import DimensionMismatch
from .qstate import CodeSubspace, DensityOperator, encode, faithful_code_state

__all__ = [
    "DEFAULT_TOL",
    "CheckReport",
    "KLMatrix",
    "petz_recovery",
    "petz_fidelity",
    "check_reversible",
    "check_vanishing",
    "check_kl",
    "check_tradeoff",
    "is_pure_state_channel",
]

DEFAULT_TOL = 1e-7


@dataclass(frozen=True)
class CheckReport:
    verdict: str
    method: str
    tolerance: float
    quantities: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "tolerance": self.tolerance,
            "quantities": dict(self.quantities),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def __str__(self):
        lines = [f"{self.method}: {self.verdict.upper()} (tol={self.tolerance:g})"]
        lines += [f"  {k} = {v:.12g}" for k, v in self.quantities.items()]
        return "\n".join(lines)


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


@dataclass(frozen=True)
class KLMatrix:
    """c_kl = Tr[P E_k^dag E_l P] / dim(K_A) and residuals |P E_k^dag E_l P - c_kl P|_max."""

    entries: np.ndarray
    residuals: np.ndarray

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max()) if self.residuals.size else 0.0


def _check_code(ch: QuantumChannel, code: CodeSubspace) -> None:
    if code.ambient_dim != ch.in_dim:
        raise DimensionMismatch(
            f"code lives in dimension {code.ambient_dim}, channel input is {ch.in_dim}"
        )


def petz_recovery(ch: QuantumChannel, sigma: DensityOperator) -> QuantumChannel:
    """Petz map R_sigma(tau) = sigma^1/2 E*(E(sigma)^-1/2 tau E(sigma)^-1/2) sigma^1/2.

    The formula only covers operators supported on supp E(sigma).  Off that
    support the map is completed by discarding the input and preparing
    ``sigma``, which keeps it trace preserving.  Kraus operators:
    ``sigma^1/2 E_k^dag E(sigma)^-1/2`` plus ``sqrt(s_i)|s_i><b_j|`` for the
    eigenpairs of sigma and a basis ``b_j`` of ker E(sigma).
    """
    if sigma.dim != ch.in_dim:
        raise DimensionMismatch(f"sigma has dim {sigma.dim}, channel expects {ch.in_dim}")
    out = apply_operator(ch, sigma.matrix)
    out = 0.5 * (out + dm.dagger(out))
    out_eig = dm.eig_hermitian(out)
    inv_sqrt = dm.matfun_on_support(out, lambda x: x ** -0.5, eig=out_eig)
    sqrt_sigma = dm.matfun_on_support(sigma.matrix, np.sqrt, eig=sigma.eig)
    ops = [sqrt_sigma @ dm.dagger(e) @ inv_sqrt for e in ch.kraus]
    w, v = out_eig
    kernel = v[:, ~(w > dm.SUPPORT_EPS * w[0])]
    if kernel.shape[1]:
        sw, sv = sigma.eig
        for lam, s in zip(sw, sv.T):
            if lam > dm.SUPPORT_EPS * sw[0]:
                for b in kernel.T:
                    ops.append(np.sqrt(lam) * np.outer(s, b.conj()))
    return from_kraus(ops)


def petz_fidelity(ch: QuantumChannel, code: CodeSubspace) -> float:
    """F_e(rho*, R o E) for rho* the maximally mixed code state and R its Petz map."""
    rho = faithful_code_state(code)
    return entanglement_fidelity(rho, compose(petz_recovery(ch, rho), ch))


def check_reversible(
    ch: QuantumChannel,
    code: CodeSubspace,
    tol: float = DEFAULT_TOL,
    samples: int = 0,
    rng: np.random.Generator | None = None,
) -> CheckReport:
    """Decide reversibility on S(K_A) from I(rho*, I) - I(rho*, E) with rho* = P/k.

    Quantities: ``I_identity``, ``I_channel``, ``deficit``, ``petz_fidelity``,
    ``petz_infidelity``, ``sampled_max_deficit``.  The Petz corroboration is
    always evaluated so the key set does not depend on the verdict; the
    verdict is the deficit test alone.  With ``samples > 0`` the deficit is
    also evaluated on that many random code states and the worst one must
    pass too.
    """
    _check_code(ch, code)
    rho = faithful_code_state(code)
    i_id = channel_mutual_information(rho, identity_channel(ch.in_dim))
    i_ch = channel_mutual_information(rho, ch)
    deficit = i_id - i_ch
    fe = entanglement_fidelity(rho, compose(petz_recovery(ch, rho), ch))
    worst = 0.0
    if samples:
        rng = rng or np.random.default_rng()
        from .random import random_density

        ident = identity_channel(ch.in_dim)
        for _ in range(samples):
            r = encode(code, random_density(rng, code.logical_dim))
            gap = channel_mutual_information(r, ident) - channel_mutual_information(r, ch)
            worst = max(worst, abs(gap))
    ok = abs(deficit) <= tol and worst <= tol
    return CheckReport(
        _verdict(ok),
        "reversible",
        tol,
        {
            "I_identity": i_id,
            "I_channel": i_ch,
            "deficit": deficit,
            "petz_fidelity": fe,
            "petz_infidelity": 1.0 - fe,
            "sampled_max_deficit": worst,
        },
    )


def check_vanishing(ch: QuantumChannel, code: CodeSubspace, tol: float = DEFAULT_TOL) -> CheckReport:
    """Decide whether E is constant on S(K_A) from I(rho*, E) <= tol.

    The constant-output witness max_i |E(V|i><i|V^dag) - E(rho*)|_max must
    also stay below sqrt(tol) for a pass.  Quantities: ``I_channel``,
    ``constant_output_deviation``.
    """
    _check_code(ch, code)
    rho = faithful_code_state(code)
    i_ch = channel_mutual_information(rho, ch)
    ref = apply_operator(ch, rho.matrix)
    dev = max(dm.max_norm(apply_operator(ch, psi.matrix) - ref) for psi in code.basis_states())
    ok = i_ch <= tol and dev <= np.sqrt(tol)
    return CheckReport(
        _verdict(ok),
        "vanishing",
        tol,
        {"I_channel": i_ch, "constant_output_deviation": dev},
    )


def kl_matrix(kraus: Sequence[np.ndarray], code: CodeSubspace) -> KLMatrix:
    # work in the code basis: V^dag E_k^dag E_l V = c_kl I_k  <=>  P E_k^dag E_l P = c_kl P
    v = code.isometry
    k = code.logical_dim
    p = code.projector
    ev = [e @ v for e in kraus]
    n = len(ev)
    entries = np.zeros((n, n), dtype=complex)
    residuals = np.zeros((n, n))
    for a in range(n):
        for b in range(n):
            block = v @ (dm.dagger(ev[a]) @ ev[b]) @ dm.dagger(v)
            c = np.trace(block) / k
            entries[a, b] = c
            residuals[a, b] = dm.max_norm(block - c * p)
    return KLMatrix(entries, residuals)


def check_kl(
    ch: QuantumChannel,
    code: CodeSubspace,
    tol: float = DEFAULT_TOL,
    kraus: Sequence[np.ndarray] | None = None,
) -> tuple[CheckReport, KLMatrix]:
    """Knill-Laflamme test P E_k^dag E_l P = c_kl P for every Kraus pair.

    Uses the channel's Kraus set unless ``kraus`` is given.  Quantities:
    ``max_residual``, ``kraus_count``, ``trace_c``, ``hermiticity_deviation``.
    """
    _check_code(ch, code)
    ops = list(ch.kraus if kraus is None else kraus)
    kl = kl_matrix(ops, code)
    c = kl.entries
    report = CheckReport(
        _verdict(kl.max_residual <= tol),
        "knill-laflamme",
        tol,
        {
            "max_residual": kl.max_residual,
            "kraus_count": float(len(ops)),
            "trace_c": float(np.real(np.trace(c))),
            "hermiticity_deviation": dm.max_norm(c - dm.dagger(c)),
        },
    )
    return report, kl


def is_pure_state_channel(ch: QuantumChannel, code: CodeSubspace, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Purity probe: every code basis state and every (|i> + |j>)/sqrt2 must map to a pure state.

    This is a heuristic; it returns the verdict and the smallest purity seen.
    """
    v = code.isometry
    k = code.logical_dim
    probes = [v[:, i] for i in range(k)]
    probes += [(v[:, i] + v[:, j]) / np.sqrt(2.0) for i in range(k) for j in range(i + 1, k)]
    worst = 1.0
    for psi in probes:
        out = apply_operator(ch, np.outer(psi, psi.conj()))
        worst = min(worst, float(np.real(np.trace(out @ out))))
    return worst >= 1.0 - tol, worst


def check_tradeoff(
    ch_bc: QuantumChannel,
    out_dims: Sequence[int],
    code: CodeSubspace,
    tol: float = DEFAULT_TOL,
) -> CheckReport:
    """Two-party tradeoff I(rho*, I) >= I(rho*, E_B) + I(rho*, E_C) and its consequences.

    Asserted (verdict is the conjunction):

    * the inequality, ``slack >= -tol``;
    * E_B reversible on the code implies E_C vanishing, and symmetrically;
    * when ch_bc is a pure state channel on the code (purity probe, flagged
      by ``pure_state_channel_heuristic``) and reversible there, the equality
      ``|slack| <= tol`` and the two-way equivalence E_B reversible iff E_C
      vanishing.
    """
    if len(out_dims) != 2 or out_dims[0] * out_dims[1] != ch_bc.out_dim:
        raise DimensionMismatch(f"out_dims {tuple(out_dims)} do not factor out_dim={ch_bc.out_dim}")
    _check_code(ch_bc, code)
    e_b = marginal(ch_bc, out_dims, keep=0)
    e_c = marginal(ch_bc, out_dims, keep=1)
    rho = faithful_code_state(code)
    i_id = channel_mutual_information(rho, identity_channel(ch_bc.in_dim))
    i_b = channel_mutual_information(rho, e_b)
    i_c = channel_mutual_information(rho, e_c)
    slack = i_id - i_b - i_c

    rev_b = check_reversible(e_b, code, tol).passed
    rev_c = check_reversible(e_c, code, tol).passed
    van_b = check_vanishing(e_b, code, tol).passed
    van_c = check_vanishing(e_c, code, tol).passed
    rev_bc = check_reversible(ch_bc, code, tol).passed
    pure, min_purity = is_pure_state_channel(ch_bc, code, tol)

    conditions = [slack >= -tol, (not rev_b) or van_c, (not rev_c) or van_b]
    if pure and rev_bc:
        conditions += [abs(slack) <= tol, rev_b == van_c, rev_c == van_b]
    return CheckReport(
        _verdict(all(conditions)),
        "tradeoff",
        tol,
        {
            "I_identity": i_id,
            "I_B": i_b,
            "I_C": i_c,
            "slack": slack,
            "reversible_B": float(rev_b),
            "vanishing_C": float(van_c),
            "reversible_C": float(rev_c),
            "vanishing_B": float(van_b),
            "reversible_BC": float(rev_bc),
            "pure_state_channel_heuristic": float(pure),
            "min_output_purity": min_purity,
        },
    )
