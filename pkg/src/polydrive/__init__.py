"""Simulation library for a two-level atom driven by a polychromatic field,
its Rydberg-blockade multi-atom extension and the Lambda-system variant,
with exact closed-form population solutions validated against adaptive
integration of the Schroedinger and Lindblad equations.
"""

from .analytic import (
    LambdaPopulations,
    TwoLevelPopulations,
    bell_population,
    lambda_limit,
    lambda_populations,
    two_level,
    two_level_limit,
    w_limit,
    w_population,
)
from .drive import (
    DriveParams,
    RatioClass,
    RatioKind,
    StabilizationWindow,
    branch_index,
    classify,
    envelope,
    envelope_dirichlet,
    phase_integral,
    stabilization_windows,
)
from .dynamics import (
    IntegratorConfig,
    Trajectory,
    integrate_lindblad,
    integrate_schrodinger,
    population_series,
)
from .errors import (
    DimensionMismatchError,
    IntegrationError,
    NearSingularError,
    NotHermitianError,
    PolydriveError,
    UnknownLabelError,
    UnknownScenarioError,
    ValidationError,
)
from .linalg import (
    DensityMatrix,
    Operator,
    StateVector,
    apply,
    dagger,
    expectation,
    hermitian_eigenvalues,
    tensor,
)
from .models import (
    LindbladChannel,
    RydbergParams,
    TimeDependentModel,
    effective_w_model,
    lambda_model,
    rydberg_model,
    two_level_model,
)
from .scenarios import (
    BUILTIN_IDS,
    ScanPoint,
    ScanSpec,
    Scenario,
    ScenarioResult,
    builtin,
    run,
    scan,
)
from .verify import CheckResult, run_suite

__version__ = "0.1.0"
