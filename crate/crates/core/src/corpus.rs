//! Graph collections for oracle sweeps: every graph up to isomorphism on a
//! few vertices, and seeded G(n,p) samples.

use std::collections::HashSet;

use crate::graph::{generate_gnp, Graph};
use crate::rng::{derive_seed, Seed};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Adjacency bits over pairs `(i, j)`, `i < j`, relabeled by `perm`.
fn code(adj: &[u32], perm: &[usize]) -> u64 {
    let n = adj.len();
    let mut c = 0u64;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[perm[i]] >> perm[j] & 1 == 1 {
                c |= 1 << k;
            }
            k += 1;
        }
    }
    c
}

fn canonical(adj: &[u32], perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| code(adj, p)).max().unwrap_or(0)
}

fn from_code(n: usize, c: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if c >> k & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).expect("codes only name valid pairs")
}

/// One representative of every isomorphism class on exactly `n` vertices,
/// for `n <= 8`.
///
/// Classes on `n` vertices are obtained by attaching a new vertex to each
/// class on `n - 1` vertices in every possible way, then deduplicating by
/// the maximal adjacency code over all relabelings.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "the catalog is limited to eight vertices");
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut codes = Vec::new();
    for smaller in nonisomorphic_graphs(n - 1) {
        let base: Vec<u32> = (0..n - 1)
            .map(|u| smaller.neighbors(u).iter().fold(0u32, |m, &v| m | 1 << v))
            .collect();
        for attach in 0u32..1 << (n - 1) {
            let mut adj = base.clone();
            adj.push(attach);
            for (u, row) in adj.iter_mut().enumerate().take(n - 1) {
                if attach >> u & 1 == 1 {
                    *row |= 1 << (n - 1);
                }
            }
            let c = canonical(&adj, &perms);
            if seen.insert(c) {
                codes.push(c);
            }
        }
    }
    codes.sort_unstable();
    codes.into_iter().map(|c| from_code(n, c)).collect()
}

/// Every isomorphism class with `1..=max_n` vertices.
pub fn catalog(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(nonisomorphic_graphs).collect()
}

/// `count` samples of G(n,p), cycling `n` over `orders` and `p` over `ps`;
/// sample `k` uses the seed derived from `(seed, k)`.
pub fn random_graphs(count: usize, orders: &[usize], ps: &[f64], seed: Seed) -> Vec<Graph> {
    (0..count)
        .map(|k| {
            let n = orders[k % orders.len()];
            let p = ps[(k / orders.len()) % ps.len()];
            generate_gnp(n, p, derive_seed(seed, k as u64)).expect("corpus parameters are valid")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_values() {
        // Unlabeled graphs on 0..=6 vertices: 1, 1, 2, 4, 11, 34, 156.
        let counts: Vec<usize> = (0..=6).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        assert_eq!(catalog(6).len(), 208);
    }

    #[test]
    fn random_corpus_is_reproducible() {
        let a = random_graphs(30, &[5, 6, 7, 8], &[0.2, 0.5, 0.8], Seed(9));
        let b = random_graphs(30, &[5, 6, 7, 8], &[0.2, 0.5, 0.8], Seed(9));
        assert_eq!(a, b);
        assert_eq!(a[0].order(), 5);
        assert_eq!(a[5].order(), 6);
    }
}
