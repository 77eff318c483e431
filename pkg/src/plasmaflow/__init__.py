"""New-plasma fraction kinetics for therapeutic plasma exchange on an ECMO circuit.

Two families of models are provided for VA and VV ECMO with the exchange
device ports in the typical or switched orientation: algebraic delay
equations (:func:`simulate_ade`) and delay differential equations stepped by
forward Euler (:func:`simulate_dde`).
"""

from .ade import AdeState, ade_step, new_ade_state, simulate_ade
from .analytic import (
    fraction_old_remaining,
    lumped_beta,
    lumped_solution,
    native_volume,
    plasma_volumes_processed,
)
from .dde import DdeState, dde_rhs, dde_step, new_dde_state, simulate_dde
from .errors import *  # noqa: F401,F403
from .experiments import (
    DEFAULT_ALPHAS,
    ComparisonReport,
    SensitivityReport,
    SweepReport,
    compare_models,
    percent_difference,
    sensitivity_analysis,
    simulate,
    sweep_alpha,
)
from .history import HistoryBuffer, new_history
from .kinetics import (
    NOMINAL,
    DerivedQuantities,
    EcmoMode,
    ModelConfiguration,
    ModelKind,
    ModelParameters,
    PortMode,
    all_configurations,
    derive_quantities,
    validate_parameters,
)
from .timeseries import TimeSeries

__version__ = "0.1.0"
