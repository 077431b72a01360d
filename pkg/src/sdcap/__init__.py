"""Numerics for superdense coding over noisy shared entanglement.

The package builds bipartite resource states, measures what they are worth
to a sender (coherent information, mutual information, rate per qubit),
constructs the scrambled encoding whose Holevo quantity meets the bound,
and searches over local channels on the sender share for rate gains.
"""

from .exceptions import (
    DegenerateSenderEntropy,
    DimensionError,
    DomainError,
    InvariantViolation,
    NotHermitianError,
    ToolkitError,
)
from .linalg import (
    dagger,
    hermitian_eigen,
    hermitian_eigenvalues,
    partial_trace,
    partial_transpose,
    tensor,
)
from .states import (
    BipartiteState,
    load_state,
    max_entangled,
    power,
    product,
    random_state,
    save_state,
    singlet,
    state_from_json,
    state_to_json,
    tiles_bound_entangled,
    werner_like,
)
from .measures import (
    Ensemble,
    coherent_info,
    entropy,
    holevo,
    i_sd,
    mutual_info,
    shannon_bits,
)
from .channels import (
    ChannelParams,
    KrausChannel,
    channel_from_json,
    channel_to_json,
    compose,
    dephasing_channel,
    depolarizing_qubit,
    discard_channel,
    extremal_qubit_params,
    from_params,
    identity_angles,
    identity_channel,
    isometry_from_angles,
    load_channel,
    param_count,
    save_channel,
    trace_out_channel,
    unitary_channel,
)
from .encoding import (
    ScramblingSet,
    encode_ensemble,
    gell_mann_basis,
    rate_per_qubit,
    verify_achievability,
    weyl_set,
)
from .criteria import is_ppt, reduction_criterion
from .capacity import (
    CapacityReport,
    OptBudget,
    STUDY_BUDGET,
    StudyReport,
    TrialRecord,
    bennett_example,
    gain_control,
    objective_cd,
    objective_csd,
    optimize,
    report_to_dict,
    report_to_json,
    sampling_study,
    study_summary_dict,
    study_to_csv,
    study_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteState",
    "CapacityReport",
    "ChannelParams",
    "DegenerateSenderEntropy",
    "DimensionError",
    "DomainError",
    "Ensemble",
    "InvariantViolation",
    "KrausChannel",
    "NotHermitianError",
    "OptBudget",
    "STUDY_BUDGET",
    "ScramblingSet",
    "StudyReport",
    "ToolkitError",
    "TrialRecord",
    "bennett_example",
    "channel_from_json",
    "channel_to_json",
    "coherent_info",
    "compose",
    "dagger",
    "dephasing_channel",
    "depolarizing_qubit",
    "discard_channel",
    "encode_ensemble",
    "entropy",
    "extremal_qubit_params",
    "from_params",
    "gain_control",
    "gell_mann_basis",
    "hermitian_eigen",
    "hermitian_eigenvalues",
    "holevo",
    "i_sd",
    "identity_angles",
    "identity_channel",
    "is_ppt",
    "isometry_from_angles",
    "load_channel",
    "load_state",
    "max_entangled",
    "mutual_info",
    "objective_cd",
    "objective_csd",
    "optimize",
    "param_count",
    "partial_trace",
    "partial_transpose",
    "power",
    "product",
    "random_state",
    "rate_per_qubit",
    "reduction_criterion",
    "report_to_dict",
    "report_to_json",
    "sampling_study",
    "save_channel",
    "save_state",
    "shannon_bits",
    "singlet",
    "state_from_json",
    "state_to_json",
    "study_summary_dict",
    "study_to_csv",
    "study_to_json",
    "tensor",
    "tiles_bound_entangled",
    "trace_out_channel",
    "unitary_channel",
    "verify_achievability",
    "weyl_set",
    "werner_like",
]
