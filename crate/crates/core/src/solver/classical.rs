//! Domination, total domination, Roman domination and the differential,
//! each read off the c-self domination number, plus independent oracles for
//! the Roman number and the differential.

use super::{guard, solve_structural, SolverConfig, BRUTE_HARD_MAX_N};
use crate::error::Result;
use crate::graph::Graph;
use crate::sdf::{CParam, Weight};

fn integral(w: Weight) -> Option<u64> {
    let r = w.finite()?;
    debug_assert!(r.is_integer());
    Some(*r.numer() as u64)
}

/// `γ(G) = γ^1(G)`.
pub fn domination_number(g: &Graph) -> Result<u64> {
    let r = solve_structural(g, CParam::one())?;
    Ok(integral(r.optimum).expect("every graph has a dominating set"))
}

/// `γ_t(G) = γ^inf(G)`; `None` when `G` has an isolated vertex.
pub fn total_domination_number(g: &Graph) -> Result<Option<u64>> {
    Ok(integral(solve_structural(g, CParam::Infinity)?.optimum))
}

/// `γ_R(G) = 2 γ^{1/2}(G)`.
pub fn roman_domination_number(g: &Graph) -> Result<u64> {
    let half = CParam::Finite { s: 1, t: 2 };
    let r = solve_structural(g, half)?.optimum.finite().expect("finite c");
    let twice = r * 2;
    debug_assert!(twice.is_integer());
    Ok(*twice.numer() as u64)
}

/// Minimum weight of a `{0, 1, 2}` labeling in which every 0 has a
/// neighbor labeled 2, by exhaustive enumeration.
pub fn roman_brute(g: &Graph, cfg: &SolverConfig) -> Result<u64> {
    let n = g.order();
    guard("Roman brute force", n, cfg.brute_max_n.min(BRUTE_HARD_MAX_N))?;
    let adj: Vec<u64> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut best = 2 * n as u64;
    for twos in 0..=full {
        let mut reach = 0u64;
        for (v, &a) in adj.iter().enumerate() {
            if twos >> v & 1 == 1 {
                reach |= a;
            }
        }
        let rest = full & !twos;
        let mut ones = rest;
        loop {
            let zeros = rest & !ones;
            if zeros & !reach == 0 {
                best = best.min(2 * twos.count_ones() as u64 + ones.count_ones() as u64);
            }
            if ones == 0 {
                break;
            }
            ones = (ones - 1) & rest;
        }
    }
    Ok(best)
}

/// `∂(G) = |V| - γ_R(G)`.
pub fn differential(g: &Graph) -> Result<i64> {
    Ok(g.order() as i64 - roman_domination_number(g)? as i64)
}

/// `∂(G) = max over X ⊆ V of |N(X) \ X| - |X|`, by subset enumeration.
pub fn differential_by_subsets(g: &Graph, cfg: &SolverConfig) -> Result<i64> {
    let n = g.order();
    guard("differential oracle", n, cfg.differential_max_n.min(BRUTE_HARD_MAX_N))?;
    let adj: Vec<u64> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let size = 1usize << n;
    let mut reach = vec![0u64; size];
    let mut best = 0i64;
    for x in 1..size {
        let low = x.trailing_zeros() as usize;
        reach[x] = reach[x & (x - 1)] | adj[low];
        let x64 = x as u64;
        let value = (reach[x] & !x64).count_ones() as i64 - x64.count_ones() as i64;
        best = best.max(value);
    }
    Ok(best)
}
