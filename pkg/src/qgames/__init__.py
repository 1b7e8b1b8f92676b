"""Quantum-coin strategies in classical games."""
from .classical import (
    BimatrixGame,
    ClassicalEnvironment,
    FiniteSampleSpace,
    RandomVariable,
    ce_polytope_is_singleton,
    ce_polytope_optimize,
    expected_payoffs,
    is_correlated_equilibrium,
    is_nash_in_environment,
    pure_nash_equilibria,
    strategies_equivalent,
)
from .equilibrium import (
    ThetaProfile,
    classical_feasible,
    optimize_theta,
    quantum_feasible,
    reduced_maximize,
    reduced_objective,
    verify_equilibrium,
)
from .private_info import (
    PayoffStructure,
    PrivateInfoGame,
    associated_game,
    behavioral_payoff,
    extension_refute,
    is_balanced,
    kuhn_check,
    quantum_behavioral_game,
)
from .quantum import (
    BELL,
    JointOutcomeDistribution,
    Pure,
    SpecialUnitary,
    TwoQubitState,
    apply_pair,
    is_classical,
    outcome_distribution,
    rotation,
)
from .scenarios import AirlineParameters, airline, cats_dogs, welfare_report

__version__ = "0.1.0"
