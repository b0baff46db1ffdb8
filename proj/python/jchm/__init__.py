"""Mean-field phase diagrams of the multiphoton Jaynes-Cummings-Hubbard lattice."""

from ._core import (
    BracketError,
    Branch,
    HilbertSpace,
    IndeterminateError,
    InvalidParameter,
    MeanFieldSolution,
    ModelParams,
    NonConvergence,
    PhasePoint,
    Side,
    asymptotic_slope,
    build_l_diag,
    build_mean_field,
    build_space,
    classify_point,
    energy_at_psi,
    energy_scan,
    lowest_sector,
    minimize_over_psi,
    refine_boundary,
    run_grid,
    sector_energy,
    sector_ground_energy,
    smallest_eigpair,
    solve_sector_crossing,
    solve_sector_zero,
    strong_coupling_boundary,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
