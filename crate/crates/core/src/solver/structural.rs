//! Branch-and-bound over dominating vertices.
//!
//! Costs are kept as integers in units of `1/t`: a ONE costs `t`, a C costs
//! `s`. Four regimes share one search:
//!
//! * `c < 1`: ONE vertices cover their closed neighborhood; any vertex left
//!   uncovered takes C, which covers only itself.
//! * `c = 1`: plain dominating set.
//! * `1 < c < inf`: `D` = ONE ∪ C must dominate every vertex outside C, so
//!   a vertex of `D` with no neighbor in `D` pays for C.
//! * `c = inf`: total dominating set.
//!
//! The search repeatedly takes the uncovered vertex with the fewest ways to
//! be covered and branches on each of them, excluding earlier siblings from
//! later branches so every vertex set is reached once. Iterative deepening
//! caps the number of dominating vertices; a greedy labeling seeds the
//! incumbent and only strict improvements replace it.

use std::time::Instant;

use super::{guard, Method, SolveResult, SolverConfig, STRUCTURAL_HARD_MAX_N};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sdf::{CParam, Rational, SdfAssignment, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    Light,
    Unit,
    Heavy,
    Total,
}

#[derive(Debug, Clone, Copy)]
struct State {
    ones: u128,
    cs: u128,
    sat: u128,
    excluded: u128,
    cost: u64,
    picks: usize,
}

struct Search<'a> {
    n: usize,
    full: u128,
    open: &'a [u128],
    closed: Vec<u128>,
    /// Vertices by descending degree, ties by ascending id.
    order: Vec<usize>,
    regime: Regime,
    one_cost: u64,
    c_cost: u64,
    best_cost: u64,
    best_ones: u128,
    best_cs: u128,
    nodes: u64,
    pick_limit: usize,
    deadline: Option<Instant>,
    fault: bool,
}

#[inline]
fn bit(v: usize) -> u128 {
    1u128 << v
}

#[inline]
fn pop(m: u128) -> u64 {
    m.count_ones() as u64
}

fn ids(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

impl Search<'_> {
    /// Vertex set a new ONE at `v` satisfies.
    fn cover(&self, v: usize) -> u128 {
        match self.regime {
            Regime::Light | Regime::Unit => self.closed[v],
            Regime::Heavy | Regime::Total => self.open[v],
        }
    }

    /// Vertices that could still join the dominating set and cover `u`.
    fn candidates(&self, st: &State, u: usize) -> u128 {
        let pool = match self.regime {
            Regime::Light | Regime::Unit => self.closed[u],
            Regime::Heavy | Regime::Total => self.open[u],
        };
        pool & !st.excluded & !st.ones & !st.cs
    }

    fn lower_bound(&self, st: &State, unsat: u128) -> Option<u64> {
        let u = pop(unsat);
        if u == 0 {
            return Some(0);
        }
        let free = self.full & !st.excluded & !st.ones & !st.cs;
        let max_cover = ids(free).map(|v| pop(self.cover(v) & unsat)).max().unwrap_or(0);
        let room = (self.pick_limit - st.picks) as u64;
        match self.regime {
            Regime::Light => {
                let (t, s) = (self.one_cost, self.c_cost);
                let mut lb = u * s;
                if max_cover > 0 {
                    let most = room.min(u.div_ceil(max_cover));
                    for j in 1..=most {
                        lb = lb.min(j * t + u.saturating_sub(j * max_cover) * s);
                    }
                }
                Some(lb)
            }
            Regime::Unit | Regime::Total => {
                if max_cover == 0 {
                    return None;
                }
                let need = u.div_ceil(max_cover);
                (need <= room).then_some(need * self.one_cost)
            }
            Regime::Heavy => {
                // Every remaining move covers at most Δ + 1 vertices and costs
                // at least min(t, s - t): a join as ONE or C, or an upgrade.
                let span = self.closed.iter().map(|&m| pop(m)).max().unwrap_or(1).max(1);
                let step = self.one_cost.min(self.c_cost - self.one_cost);
                Some(u.div_ceil(span) * step)
            }
        }
    }

    /// The uncovered vertex with the fewest candidates, ties by lowest id.
    fn branch_vertex(&self, st: &State, unsat: u128) -> usize {
        ids(unsat)
            .min_by_key(|&u| (pop(self.candidates(st, u)), u))
            .expect("unsat is non-empty")
    }

    fn record(&mut self, st: &State) {
        if st.cost < self.best_cost {
            self.best_cost = st.cost;
            self.best_ones = st.ones;
            self.best_cs = st.cs;
        }
    }

    fn dfs(&mut self, mut st: State) -> Result<()> {
        if self.nodes & 0x3ff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Error::Timeout);
                }
            }
        }
        self.nodes += 1;

        let unsat = self.full & !st.sat;
        if unsat == 0 {
            self.record(&st);
            return Ok(());
        }
        let Some(lb) = self.lower_bound(&st, unsat) else {
            return Ok(());
        };
        let slack = if self.fault { self.one_cost } else { 0 };
        if st.cost + lb + slack >= self.best_cost {
            return Ok(());
        }

        let u = self.branch_vertex(&st, unsat);
        let cands = self.candidates(&st, u);
        if st.picks < self.pick_limit {
            for idx in 0..self.order.len() {
                let v = self.order[idx];
                if cands & bit(v) == 0 {
                    continue;
                }
                let child = State {
                    ones: st.ones | bit(v),
                    sat: st.sat | self.cover(v),
                    cost: st.cost + self.one_cost,
                    picks: st.picks + 1,
                    ..st
                };
                self.dfs(child)?;
                st.excluded |= bit(v);
            }
        }

        match self.regime {
            Regime::Light => {
                let child = State {
                    cs: st.cs | bit(u),
                    sat: st.sat | bit(u),
                    excluded: st.excluded | self.closed[u],
                    cost: st.cost + self.c_cost,
                    ..st
                };
                self.dfs(child)?;
            }
            Regime::Heavy if st.ones & bit(u) != 0 => {
                let child = State {
                    ones: st.ones & !bit(u),
                    cs: st.cs | bit(u),
                    sat: st.sat | bit(u),
                    excluded: st.excluded | self.open[u],
                    cost: st.cost + self.c_cost - self.one_cost,
                    ..st
                };
                self.dfs(child)?;
            }
            Regime::Heavy if st.excluded & bit(u) == 0 && st.picks < self.pick_limit => {
                let child = State {
                    cs: st.cs | bit(u),
                    sat: st.sat | bit(u) | self.open[u],
                    excluded: st.excluded | self.open[u],
                    cost: st.cost + self.c_cost,
                    picks: st.picks + 1,
                    ..st
                };
                self.dfs(child)?;
            }
            _ => {}
        }
        Ok(())
    }

    /// Greedy labeling used as the first incumbent.
    fn greedy(&self) -> Option<(u64, u128, u128)> {
        let pick_max = |covered: u128, pool: &dyn Fn(usize) -> u128| -> Option<usize> {
            let mut best: Option<(u64, usize)> = None;
            for &v in &self.order {
                let gain = pop(pool(v) & !covered);
                if gain > 0 && best.is_none_or(|(g, _)| gain > g) {
                    best = Some((gain, v));
                }
            }
            best.map(|(_, v)| v)
        };
        let closed = |v: usize| self.closed[v];
        let open = |v: usize| self.open[v];

        // Greedy dominating set over closed neighborhoods, keeping every prefix.
        let mut prefix = vec![(0u128, 0u128)];
        let (mut ones, mut covered) = (0u128, 0u128);
        while covered != self.full {
            let v = pick_max(covered, &closed).expect("closed neighborhoods cover everything");
            ones |= bit(v);
            covered |= self.closed[v];
            prefix.push((ones, covered));
        }

        match self.regime {
            Regime::Light => prefix
                .iter()
                .map(|&(ones, covered)| {
                    let cs = self.full & !covered;
                    (pop(ones) * self.one_cost + pop(cs) * self.c_cost, ones, cs)
                })
                .min_by_key(|&(cost, _, _)| cost),
            Regime::Unit => Some((pop(ones) * self.one_cost, ones, 0)),
            Regime::Heavy | Regime::Total => {
                let mut options = Vec::new();
                if self.regime == Regime::Heavy {
                    let lonely: u128 = ids(ones).filter(|&v| self.open[v] & ones == 0).fold(0, |m, v| m | bit(v));
                    let cost = pop(ones) * self.one_cost + pop(lonely) * (self.c_cost - self.one_cost);
                    options.push((cost, ones & !lonely, lonely));
                }
                if self.open.iter().all(|&m| m != 0) {
                    let (mut d, mut covered) = (0u128, 0u128);
                    while covered != self.full {
                        let v = pick_max(covered, &open).expect("no isolated vertices");
                        d |= bit(v);
                        covered |= self.open[v];
                    }
                    options.push((pop(d) * self.one_cost, d, 0));
                }
                options.into_iter().min_by_key(|&(cost, _, _)| cost)
            }
        }
    }
}

/// Exact `γ^c` by branch-and-bound; see the module docs for the search.
pub fn solve_structural_with(g: &Graph, c: CParam, cfg: &SolverConfig) -> Result<SolveResult> {
    let n = g.order();
    guard("structural search", n, cfg.structural_max_n.min(STRUCTURAL_HARD_MAX_N))?;
    let open = g.masks128().expect("order checked against the u128 limit");

    let (regime, one_cost, c_cost) = match c {
        CParam::Finite { s, t } if s < t => (Regime::Light, t as u64, s as u64),
        CParam::Finite { s, t } if s == t => (Regime::Unit, 1, 1),
        CParam::Finite { s, t } => (Regime::Heavy, t as u64, s as u64),
        CParam::Infinity => (Regime::Total, 1, 0),
    };
    let denom = match regime {
        Regime::Light | Regime::Heavy => c.denominator() as i64,
        Regime::Unit | Regime::Total => 1,
    };
    let finish = |cost: u64, ones: u128, cs: u128, nodes: u64| SolveResult {
        optimum: Weight::Finite(Rational::new(cost as i64, denom)),
        witness: Some(SdfAssignment::from_masks(n, ones, cs)),
        nodes_explored: nodes,
        method: Method::Structural,
    };

    if regime == Regime::Total && open.contains(&0) {
        return Ok(SolveResult {
            optimum: Weight::Infinite,
            witness: None,
            nodes_explored: 0,
            method: Method::Structural,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(open[v].count_ones()), v));
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut search = Search {
        n,
        full,
        open: &open,
        closed: (0..n).map(|v| open[v] | bit(v)).collect(),
        order,
        regime,
        one_cost,
        c_cost,
        best_cost: u64::MAX,
        best_ones: 0,
        best_cs: 0,
        nodes: 0,
        pick_limit: 0,
        deadline: cfg.deadline,
        fault: cfg.inject_pruning_fault,
    };
    if n == 0 {
        return Ok(finish(0, 0, 0, 0));
    }
    let (cost, ones, cs) = search.greedy().expect("a greedy labeling exists");
    search.best_cost = cost;
    search.best_ones = ones;
    search.best_cs = cs;

    let root = State { ones: 0, cs: 0, sat: 0, excluded: 0, cost: 0, picks: 0 };
    for limit in 0..=search.n {
        search.pick_limit = limit;
        search.dfs(root)?;
        // Any labeling with more dominating vertices costs at least this much.
        if search.best_cost <= (limit as u64 + 1) * one_cost {
            break;
        }
    }
    Ok(finish(search.best_cost, search.best_ones, search.best_cs, search.nodes))
}
