"""Mass-capacity verification lab for radial asymptotically flat metrics.

Computes boundary capacities, ADM masses and boundary geometry of
conformally flat rotationally symmetric metrics, tests the critical
area-normalized capacitor condition, and numerically exercises the
mass-capacity inequalities, their equality cases, the static-vacuum
rigidity pipeline and the boundary criteria for positive mass.
"""

__version__ = "0.1.0"

from .capacity import (
    CapacityMethod,
    CapacitySolution,
    GridSpec,
    capacity_from_expansion,
    capacity_quadrature,
    capacity_variational,
)
from .conformal import (
    AlphaBranch,
    ConformalState,
    alpha_branch,
    conformal_mass,
    conformal_transform,
    equality_reconstruction,
    hm_condition,
    reconstruct_from_state,
    transformed_boundary,
    verify_pmt_hypotheses,
)
from .critical import (
    CriticalityReport,
    Verdict,
    check_scalar_mean_hypothesis,
    evaluate_theorem1,
    fit_lambda,
    overdetermined_solution,
)
from .errors import (
    AlphaOutOfRange,
    CheckFailure,
    DegenerateHorizon,
    DivergentIntegral,
    EqualityGapExceeded,
    FluxDrift,
    MassCapError,
    NegativeScalarCurvature,
    NonConvergence,
    NonPositiveConformalFactor,
    NotStatic,
    NumericsError,
    ScenarioParseError,
    SlowDecay,
    ZeroMeanCurvature,
)
from .fillin import (
    ConicalFillIn,
    DiracCheck,
    conical_fillin,
    dirac_eigenvalue_check,
    euclidean_gauss_identity,
)
from .geometry import (
    BoundaryGeometry,
    RadialMetric,
    adm_mass,
    boundary_geometry,
    round_sphere_boundary,
    scalar_curvature,
    sphere_volume,
)
from .profiles import (
    ConformalProfile,
    PerturbedProfile,
    RadialFunction,
    SchwarzschildProfile,
    TabulatedProfile,
)
from .schwarzschild import (
    SchwarzschildData,
    SchwarzschildReport,
    capacity_potential,
    photon_sphere_radius,
    schwarzschild_report,
    static_potential,
)
from .static_vacuum import (
    RigidityReport,
    StaticResiduals,
    StaticTriple,
    lemma1_normal_derivative,
    rigidity_pipeline,
    smarr_integral,
    static_residuals,
)
