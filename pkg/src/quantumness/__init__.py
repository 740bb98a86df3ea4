"""Quantumness of single-qubit multiparameter estimation models.

Information matrices (Q, D, J), the quantumness measure R, the scalar
precision bounds C_S / C_R / C_Z / C_H and the renormalized Holevo--SLD
gap, with diagonal-weight optimization and model sweeps.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundsReport,
    Branch,
    DiagOptimum,
    ModelClass,
    UnsupportedModelError,
    bounds_report,
    bures_weight,
    c_rld,
    c_sld,
    c_z,
    classification_for_model,
    classify,
    delta_c,
    diag_weight,
    holevo,
    identity_weight,
    normalize_weight,
    optimize_delta_c_diag,
    random_weight_sweep,
    report_for_model,
    sample_random_weight,
)
from .infogeo import (
    InfoMatrices,
    PureLimitError,
    RldUndefinedError,
    SingularModelError,
    info_matrices,
    model_information,
    pure_state_matrices,
    quantumness,
    quantumness_det_ratio,
    reparametrize,
    rld_operators,
    sld_operators,
)
from .models import (
    MODELS,
    DomainError,
    IntegrationError,
    Model,
    ModelControls,
    bloch_vector,
    density_from_bloch,
    evaluate,
    finite_diff_derivatives,
    get_model,
    lindblad_integrate,
    pure_state,
)
from .smallmat import (
    SingularMatrixError,
    herm_eig,
    inverse,
    largest_abs_eig,
    psd_sqrt,
    trace_norm,
)

__all__ = [
    "__version__",
    "BoundsReport",
    "Branch",
    "DiagOptimum",
    "DomainError",
    "InfoMatrices",
    "IntegrationError",
    "MODELS",
    "Model",
    "ModelClass",
    "ModelControls",
    "PureLimitError",
    "RldUndefinedError",
    "SingularMatrixError",
    "SingularModelError",
    "UnsupportedModelError",
    "bloch_vector",
    "bounds_report",
    "bures_weight",
    "c_rld",
    "c_sld",
    "c_z",
    "classification_for_model",
    "classify",
    "delta_c",
    "density_from_bloch",
    "diag_weight",
    "evaluate",
    "finite_diff_derivatives",
    "get_model",
    "herm_eig",
    "holevo",
    "identity_weight",
    "info_matrices",
    "inverse",
    "largest_abs_eig",
    "lindblad_integrate",
    "model_information",
    "normalize_weight",
    "optimize_delta_c_diag",
    "psd_sqrt",
    "pure_state",
    "pure_state_matrices",
    "quantumness",
    "quantumness_det_ratio",
    "random_weight_sweep",
    "reparametrize",
    "report_for_model",
    "rld_operators",
    "sample_random_weight",
    "sld_operators",
    "trace_norm",
]
