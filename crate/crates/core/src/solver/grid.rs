//! Minimum c-SDF weight over an arbitrary finite value grid.
//!
//! Used to check that values beyond `{0, 1, c}` never lower the optimum.

use super::{guard, SolverConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sdf::{CParam, Rational, Weight};

pub fn grid_oracle(g: &Graph, c: CParam, grid: &[Rational]) -> Result<Weight> {
    grid_oracle_with(g, c, grid, &SolverConfig::default())
}

pub fn grid_oracle_with(
    g: &Graph,
    c: CParam,
    grid: &[Rational],
    cfg: &SolverConfig,
) -> Result<Weight> {
    let n = g.order();
    guard("grid oracle", n, cfg.grid_max_n)?;
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    let mut values: Vec<Rational> = grid.to_vec();
    values.sort();
    values.dedup();
    if values.first().is_some_and(|v| *v < zero) {
        return Err(Error::param("grid values must be non-negative"));
    }
    let mut required = vec![zero, one];
    required.extend(c.value());
    for r in required {
        if values.binary_search(&r).is_err() {
            return Err(Error::param(format!(
                "grid must contain 0, 1 and c; {} is missing",
                crate::sdf::fmt_rational(&r)
            )));
        }
    }

    let nbrs: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u)).collect();
    let mut labels = vec![zero; n];
    let mut best: Option<Rational> = None;
    search(0, zero, &values, &nbrs, c, &mut labels, &mut best);
    Ok(best.map_or(Weight::Infinite, Weight::Finite))
}

fn satisfied(u: usize, labels: &[Rational], nbrs: &[Vec<usize>], c: CParam) -> bool {
    let self_ok = c.value().is_some_and(|cv| labels[u] >= cv);
    self_ok || nbrs[u].iter().any(|&v| labels[v] >= Rational::from_integer(1))
}

fn search(
    depth: usize,
    partial: Rational,
    values: &[Rational],
    nbrs: &[Vec<usize>],
    c: CParam,
    labels: &mut [Rational],
    best: &mut Option<Rational>,
) {
    if best.is_some_and(|b| partial >= b) {
        return;
    }
    if depth == labels.len() {
        if (0..labels.len()).all(|u| satisfied(u, labels, nbrs, c)) {
            *best = Some(partial);
        }
        return;
    }
    for &v in values {
        labels[depth] = v;
        search(depth + 1, partial + v, values, nbrs, c, labels, best);
    }
    labels[depth] = Rational::from_integer(0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_brute;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn single_vertex_takes_cheapest_self_value() {
        let c = CParam::ratio(1, 2).unwrap();
        let w = grid_oracle(&Graph::empty(1), c, &[q(0, 1), q(1, 2), q(3, 4), q(1, 1)]).unwrap();
        assert_eq!(w, Weight::Finite(q(1, 2)));
    }

    #[test]
    fn base_grid_matches_brute() {
        for (g, c) in [
            (Graph::cycle(5), CParam::ratio(1, 2).unwrap()),
            (Graph::path(4), CParam::ratio(2, 3).unwrap()),
            (Graph::star(3), CParam::ratio(3, 2).unwrap()),
            (Graph::path(3), CParam::Infinity),
            (Graph::empty(2), CParam::Infinity),
        ] {
            let mut grid = vec![q(0, 1), q(1, 1)];
            grid.extend(c.value());
            assert_eq!(grid_oracle(&g, c, &grid).unwrap(), solve_brute(&g, c).unwrap().optimum);
        }
    }

    #[test]
    fn rejects_bad_grids() {
        let c = CParam::ratio(2, 3).unwrap();
        let g = Graph::path(2);
        assert!(grid_oracle(&g, c, &[q(0, 1), q(1, 1)]).is_err());
        assert!(grid_oracle(&g, c, &[q(0, 1), q(2, 3)]).is_err());
        assert!(grid_oracle(&g, c, &[q(-1, 1), q(0, 1), q(2, 3), q(1, 1)]).is_err());
        assert!(grid_oracle(&Graph::empty(9), c, &[q(0, 1), q(2, 3), q(1, 1)]).is_err());
    }
}
