"""Temporal clustering solvers: exact-k, bicriteria, greedy set cover,
median/means greedy, a brute-force oracle and instance generators."""

from ._tclust import (
    BudgetExceededError,
    Instance,
    TclustError,
    check_solution,
    gen_sat3,
    gen_setcover,
    gen_walkers,
    oracle_feasible,
    oracle_opt_k,
    oracle_opt_r,
    run_cli,
    solve_bicriteria,
    solve_exact_k,
    solve_median_greedy,
    solve_median_r0,
    solve_rds_greedy,
)

__all__ = [
    "BudgetExceededError",
    "Instance",
    "TclustError",
    "check_solution",
    "gen_sat3",
    "gen_setcover",
    "gen_walkers",
    "oracle_feasible",
    "oracle_opt_k",
    "oracle_opt_r",
    "run_cli",
    "solve_bicriteria",
    "solve_exact_k",
    "solve_median_greedy",
    "solve_median_r0",
    "solve_rds_greedy",
]
