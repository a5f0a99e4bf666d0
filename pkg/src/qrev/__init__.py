"""Perfect error-correction checks for finite-dimensional quantum channels.

Reversibility of a channel on a code subspace is decided three ways: by the
mutual-information deficit on a faithful code state, by explicit Petz
recovery, and by the Knill-Laflamme condition on the Kraus operators.
"""
from .channel import (
    QuantumChannel,
    apply,
    apply_extended,
    complement,
    compose,
    dual,
    from_choi,
    from_kraus,
    marginal,
    to_kraus,
    to_stinespring,
)
from .entropy import (
    INFINITE,
    channel_mutual_information,
    coherent_information,
    entanglement_fidelity,
    mutual_information,
    relative_entropy,
    vn_entropy,
)
from .errors import (
    DimensionMismatch,
    InvalidCode,
    InvalidState,
    NoConvergence,
    NonHermitian,
    NotCompletelyPositive,
    NotPSD,
    NotTracePreserving,
    ParseError,
    QrevError,
)
from .qstate import (
    CodeSubspace,
    DensityOperator,
    PurifiedState,
    encode,
    faithful_code_state,
    maximally_mixed,
    pure_state,
    purify,
)
from .verify import (
    CheckReport,
    KLMatrix,
    check_kl,
    check_reversible,
    check_tradeoff,
    check_vanishing,
    petz_recovery,
)

__version__ = "0.1.0"
