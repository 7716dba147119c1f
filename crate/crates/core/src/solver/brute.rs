use super::{guard, Method, SolveResult, SolverConfig, BRUTE_HARD_MAX_N};
use crate::error::Result;
use crate::graph::Graph;
use crate::sdf::{CParam, Rational, SdfAssignment, Weight};

/// Enumerates every labeling and keeps the first one of minimum weight.
///
/// ONE and C sets are walked as bitmasks: the ONE set in ascending order and,
/// for each, every C set among the remaining vertices. When `c` is 1 the C
/// label duplicates ONE and is skipped; under `c = inf` it does not exist.
pub fn solve_brute_with(g: &Graph, c: CParam, cfg: &SolverConfig) -> Result<SolveResult> {
    let n = g.order();
    guard("brute force", n, cfg.brute_max_n.min(BRUTE_HARD_MAX_N))?;

    let adj: Vec<u64> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let size = 1usize << n;
    let mut dom = vec![0u64; size];
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        dom[mask] = dom[mask & (mask - 1)] | adj[low];
    }

    let full = (size - 1) as u64;
    let (one_cost, c_cost, use_c) = match c {
        CParam::Finite { s, t } => (t as u64, s as u64, s != t),
        CParam::Infinity => (1, 0, false),
    };
    let one_self = c.one_is_self_sufficient();
    let c_strong = c.c_dominates();

    let mut best: Option<(u64, u64, u64)> = None;
    let mut nodes = 0u64;
    for ones in 0..=full {
        let rest = full & !ones;
        let mut cs = if use_c { rest } else { 0 };
        loop {
            nodes += 1;
            let strong = ones | if c_strong { cs } else { 0 };
            let selfish = cs | if one_self { ones } else { 0 };
            if selfish | dom[strong as usize] == full {
                let cost = one_cost * ones.count_ones() as u64 + c_cost * cs.count_ones() as u64;
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, ones, cs));
                }
            }
            if cs == 0 {
                break;
            }
            cs = (cs - 1) & rest;
        }
    }

    let denom = c.denominator() as i64;
    Ok(match best {
        Some((cost, ones, cs)) => SolveResult {
            optimum: Weight::Finite(Rational::new(cost as i64, denom)),
            witness: Some(SdfAssignment::from_masks(n, ones as u128, cs as u128)),
            nodes_explored: nodes,
            method: Method::Brute,
        },
        None => SolveResult {
            optimum: Weight::Infinite,
            witness: None,
            nodes_explored: nodes,
            method: Method::Brute,
        },
    })
}
