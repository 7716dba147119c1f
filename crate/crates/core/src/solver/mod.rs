//! Exact computation of the c-self domination number.
//!
//! Two independent routes: [`solve_brute`] enumerates every `{0, 1, c}`
//! labeling, and [`solve_structural`] runs a branch-and-bound over the set
//! of ONE-labeled (dominating) vertices. The classical invariants are
//! specializations of the same search.

mod brute;
mod classical;
mod grid;
mod structural;

use std::time::Instant;

use serde::Serialize;

pub use brute::solve_brute_with;
pub use classical::{
    differential, differential_by_subsets, domination_number, roman_brute,
    roman_domination_number, total_domination_number,
};
pub use grid::{grid_oracle, grid_oracle_with};
pub use structural::solve_structural_with;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sdf::{CParam, SdfAssignment, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Structural,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub optimum: Weight,
    /// Absent exactly when the optimum is infinite.
    pub witness: Option<SdfAssignment>,
    pub nodes_explored: u64,
    pub method: Method,
}

/// Size guards and budgets shared by the solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub brute_max_n: usize,
    pub structural_max_n: usize,
    pub grid_max_n: usize,
    pub differential_max_n: usize,
    /// Abort the structural search with [`Error::Timeout`] past this instant.
    pub deadline: Option<Instant>,
    /// Test fixture: over-prunes the structural search so that self-checks
    /// can demonstrate they catch a broken bound.
    #[doc(hidden)]
    pub inject_pruning_fault: bool,
}

/// Hard ceiling for brute force; its lookup table has `2^n` entries.
pub const BRUTE_HARD_MAX_N: usize = 24;
/// Hard ceiling for the structural search, which packs vertex sets in `u128`.
pub const STRUCTURAL_HARD_MAX_N: usize = 128;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            brute_max_n: 16,
            structural_max_n: STRUCTURAL_HARD_MAX_N,
            grid_max_n: 8,
            differential_max_n: 20,
            deadline: None,
            inject_pruning_fault: false,
        }
    }
}

pub(crate) fn guard(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::Guard { what, n, limit })
    } else {
        Ok(())
    }
}

/// Exhaustive search over all `{0, 1, c}` labelings (`{0, 1}` when `c` is
/// 1 or infinite), with the default size guard of 16 vertices.
pub fn solve_brute(g: &Graph, c: CParam) -> Result<SolveResult> {
    solve_brute_with(g, c, &SolverConfig::default())
}

/// Branch-and-bound search with the default guard of 128 vertices.
pub fn solve_structural(g: &Graph, c: CParam) -> Result<SolveResult> {
    solve_structural_with(g, c, &SolverConfig::default())
}
