"""Time-energy cost of quantum channels.

Computes the minimal evolution-time cost of a channel given in Kraus
form, certified two ways (an interior-point solve and a supergradient
ascent), plus closed forms for recognized families, Monte-Carlo
oracles, and minimal-cost unitary dilations.
"""

from .channel import (
    KrausChannel,
    channel_from_json,
    channel_to_json,
    make_depolarizing,
    make_projector_channel,
    make_random_channel,
)
from .cost import (
    BarrierFailure,
    CostResult,
    HermitianPencil,
    SdpProblem,
    SolverConfig,
    SolverDisagreement,
    build_sdp,
    cost,
    cost_alpha_identity,
    cost_projector,
    fidelity_from_cost,
    hermitian_parts,
    heuristic_upper_bound,
    lower_bound,
    objective,
    phase_optimize,
    solve_sdp,
    solve_supergradient,
)
from .dilation import (
    DilationResult,
    GramMismatch,
    choi_dilation,
    extension_channel,
    optimal_extension,
    unitary_from_json,
    unitary_max_norm,
    unitary_to_json,
)
from .matops import hermitian_eig, is_unitary, kron, partial_trace_first, psd_sqrt
from .oracle import (
    OracleEstimate,
    fidelity_pure_vs_state,
    oracle_cost,
    oracle_fidelity,
)

__version__ = "0.1.0"

__all__ = [
    "BarrierFailure",
    "CostResult",
    "DilationResult",
    "GramMismatch",
    "HermitianPencil",
    "KrausChannel",
    "OracleEstimate",
    "SdpProblem",
    "SolverConfig",
    "SolverDisagreement",
    "build_sdp",
    "channel_from_json",
    "channel_to_json",
    "choi_dilation",
    "cost",
    "cost_alpha_identity",
    "cost_projector",
    "extension_channel",
    "fidelity_from_cost",
    "fidelity_pure_vs_state",
    "hermitian_eig",
    "hermitian_parts",
    "heuristic_upper_bound",
    "is_unitary",
    "kron",
    "lower_bound",
    "make_depolarizing",
    "make_projector_channel",
    "make_random_channel",
    "objective",
    "optimal_extension",
    "oracle_cost",
    "oracle_fidelity",
    "partial_trace_first",
    "phase_optimize",
    "psd_sqrt",
    "solve_sdp",
    "solve_supergradient",
    "unitary_from_json",
    "unitary_max_norm",
    "unitary_to_json",
]
