"""Two-field correlator currents and local-symmetry invariants for 1D
Schrodinger problems: exact piecewise scattering, generalized balance-law
residuals, SU(N) decomposition checks, and a Crank-Nicolson co-evolution
harness."""

from .grids import ComplexField, Grid, derivative, numerov_integrate
from .potentials import (
    PotentialProfile,
    SymmetryDomain,
    SymmetryTransform,
    check_local_symmetry,
    find_equality_domain,
    transform_profile,
)
from .scattering import (
    FitResult,
    ScatteringSolution,
    SecondSolution,
    fit_combination,
    second_solution,
    solve_scattering,
)
from .currents import (
    ConstancyReport,
    CurrentSeries,
    ScenarioResult,
    constancy,
    current_J12,
    current_Jchi,
    current_Q,
    run_fig1_scenario,
    standard_current,
    stationary_residual,
)
from .sun import (
    DecompositionResult,
    SUNBasisSet,
    build_basis,
    commutator_check,
    decompose,
    pair_count,
)
from .evolution import (
    EvolutionState,
    ResidualReport,
    continuity_residual,
    initial_gaussian,
    pairwise_residual_suite,
    propagate,
)
from .scenario import Scenario, ScenarioError, parse_scenario

__version__ = "0.1.0"
