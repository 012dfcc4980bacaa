"""Uncertainty-driven allocation of motion sensors over spatial and temporal scale."""

__version__ = "0.1.0"

from .errors import ConfigError, DomainError, GridMismatchError, SpectrumHoleError  # noqa: E402
from .uncertainty_core import (  # noqa: E402
    GridSpec,
    Logon,
    ScalarField,
    UncertaintyWeights,
    Weights1D,
    equilibrium_1d,
    evaluate_field,
    global_minimum,
    joint_uncertainty_1d,
    spatiotemporal_uncertainty,
    uncertainty_gradient,
)
from .optimal_sets import (  # noqa: E402
    Curve,
    SpeedPrior,
    asymptotes,
    blend_optimal_set,
    conserved_quantity,
    expected_speed,
    integral_optimal_set,
    local_optimal_set,
    orthogonality_residual,
)
from .sensitivity_maps import (  # noqa: E402
    AdaptationConfig,
    RegimeLabel,
    adaptation_change_map,
    equivalence_contours,
    max_sensitivity_set,
    preference_field,
    regime_classify,
    sensitivity_map,
)
from .stochastic_tuning import (  # noqa: E402
    SensorPopulation,
    SimulationConfig,
    init_population,
    population_density,
    run_simulation,
    step_population,
)
from .foundations import (  # noqa: E402
    SamplerKernel,
    cosine_expansion,
    discrete_entropy,
    emulate_sampler,
    independence_bound,
    max_entropy_check,
)
