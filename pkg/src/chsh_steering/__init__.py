"""Steering test for two-setting, two-outcome correlations with a trusted
quantum side, plus an LP membership oracle and a model of the
split-single-photon homodyne experiment."""

from ._accel import NUMBA_ENABLED
from .correlation_model import (
    ConstraintError,
    CorrelationSet,
    EBasisVector,
    Marginals,
    correlation_set_from_json_dict,
    correlations_from_matrix,
    extremal_correlations,
    from_e_basis,
    matrix_from_correlations,
    matrix_from_extremal,
    to_e_basis,
)
from .homodyne_experiment import (
    ExperimentReport,
    ExperimentSettings,
    HomodyneSetting,
    MonteCarloCorrelations,
    SinglePhotonState,
    adjudicate,
    adjudicate_reported,
    analytic_correlations,
    experiment_correlations,
    gamma,
    homodyne_effects,
    homodyne_pdf,
    monte_carlo_correlations,
    standard_settings,
    state_density,
)
from .lhs_oracle import (
    LhsAtom,
    LhsModel,
    MembershipResult,
    NotAMemberError,
    boundary_band,
    decompose,
    lp_membership,
    lp_membership_batch,
    model_correlations,
)
from .qubit_core import (
    MeasurementPair,
    PureQubitState,
    born_probability,
    ellipse_point,
    maximally_entangled,
    mub_circle_point,
    projector_from_params,
    quantum_correlator,
)
from .simplex import OracleError, SimplexResult, lp_feasibility, solve_lp
from .steering_witness import (
    WitnessReport,
    chsh_values,
    f_value,
    full_report,
    pair_inequalities,
    steering_inequality,
)
from .violation_search import (
    AliceAngles,
    angle_correlations,
    closed_form_lhs,
    maximize_over_angles,
    state_scan,
)

__version__ = "0.1.0"

__all__ = [
    "AliceAngles",
    "ConstraintError",
    "CorrelationSet",
    "EBasisVector",
    "ExperimentReport",
    "ExperimentSettings",
    "HomodyneSetting",
    "LhsAtom",
    "LhsModel",
    "Marginals",
    "MeasurementPair",
    "MembershipResult",
    "MonteCarloCorrelations",
    "NotAMemberError",
    "NUMBA_ENABLED",
    "OracleError",
    "PureQubitState",
    "SimplexResult",
    "SinglePhotonState",
    "WitnessReport",
    "adjudicate",
    "adjudicate_reported",
    "analytic_correlations",
    "angle_correlations",
    "born_probability",
    "boundary_band",
    "chsh_values",
    "closed_form_lhs",
    "correlation_set_from_json_dict",
    "correlations_from_matrix",
    "decompose",
    "ellipse_point",
    "experiment_correlations",
    "extremal_correlations",
    "f_value",
    "from_e_basis",
    "full_report",
    "gamma",
    "homodyne_effects",
    "homodyne_pdf",
    "lp_feasibility",
    "lp_membership",
    "lp_membership_batch",
    "matrix_from_correlations",
    "matrix_from_extremal",
    "maximally_entangled",
    "maximize_over_angles",
    "model_correlations",
    "monte_carlo_correlations",
    "mub_circle_point",
    "pair_inequalities",
    "projector_from_params",
    "quantum_correlator",
    "solve_lp",
    "standard_settings",
    "state_density",
    "state_scan",
    "steering_inequality",
    "to_e_basis",
]
