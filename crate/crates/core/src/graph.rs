//! Undirected simple graphs, the edge-list text format, and seeded G(n,p).

use std::fmt;

use crate::error::{Error, Result};
use crate::rng::{Seed, SplitMix64};

/// Largest order stored with fixed-width bitset rows.
pub const BITSET_MAX_N: usize = 512;

const WORDS: usize = BITSET_MAX_N / 64;

type Row = [u64; WORDS];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Adjacency {
    Bits(Vec<Row>),
    Lists(Vec<Vec<usize>>),
}

/// An undirected simple graph on vertices `0..n`.
///
/// Immutable once built. Rows are bitsets for `n <= 512` and sorted
/// neighbor lists above that.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Adjacency,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let adj = if n <= BITSET_MAX_N {
            Adjacency::Bits(vec![[0; WORDS]; n])
        } else {
            Adjacency::Lists(vec![Vec::new(); n])
        };
        Graph { n, adj }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::param(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::param(format!("self-loop at vertex {u}")));
            }
            g.insert(u, v);
        }
        g.finish();
        Ok(g)
    }

    fn insert(&mut self, u: usize, v: usize) {
        match &mut self.adj {
            Adjacency::Bits(rows) => {
                rows[u][v / 64] |= 1 << (v % 64);
                rows[v][u / 64] |= 1 << (u % 64);
            }
            Adjacency::Lists(lists) => {
                lists[u].push(v);
                lists[v].push(u);
            }
        }
    }

    fn finish(&mut self) {
        if let Adjacency::Lists(lists) = &mut self.adj {
            for l in lists.iter_mut() {
                l.sort_unstable();
                l.dedup();
            }
        }
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph edges are in range")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are in range")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are in range")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
            .expect("star edges are in range")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        match &self.adj {
            Adjacency::Bits(rows) => rows[u][v / 64] >> (v % 64) & 1 == 1,
            Adjacency::Lists(lists) => lists[u].binary_search(&v).is_ok(),
        }
    }

    pub fn degree(&self, u: usize) -> usize {
        match &self.adj {
            Adjacency::Bits(rows) => rows[u].iter().map(|w| w.count_ones() as usize).sum(),
            Adjacency::Lists(lists) => lists[u].len(),
        }
    }

    /// Neighbors of `u` in ascending order.
    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        match &self.adj {
            Adjacency::Bits(rows) => bits_to_ids(&rows[u]),
            Adjacency::Lists(lists) => lists[u].clone(),
        }
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Degree-0 vertices.
    pub fn isolated(&self) -> Vec<usize> {
        (0..self.n).filter(|&u| self.degree(u) == 0).collect()
    }

    /// Open neighborhood of `u` as a 128-bit mask, or `None` when the graph
    /// has more than 128 vertices.
    pub fn neighbor_mask128(&self, u: usize) -> Option<u128> {
        if self.n > 128 {
            return None;
        }
        match &self.adj {
            Adjacency::Bits(rows) => Some(rows[u][0] as u128 | (rows[u][1] as u128) << 64),
            Adjacency::Lists(_) => unreachable!("orders up to 512 use bitset rows"),
        }
    }

    /// All open-neighborhood masks, for graphs of order at most 128.
    pub fn masks128(&self) -> Option<Vec<u128>> {
        (0..self.n).map(|u| self.neighbor_mask128(u)).collect()
    }

    /// Vertices with at least one neighbor in `set`.
    ///
    /// A member of `set` is reported only when it has a neighbor in `set`
    /// itself. Ids outside `0..n` are ignored.
    pub fn dominated_by(&self, set: &[usize]) -> Vec<usize> {
        match &self.adj {
            Adjacency::Bits(rows) => {
                let mut acc = [0u64; WORDS];
                for &s in set.iter().filter(|&&s| s < self.n) {
                    for (a, w) in acc.iter_mut().zip(rows[s].iter()) {
                        *a |= *w;
                    }
                }
                bits_to_ids(&acc)
            }
            Adjacency::Lists(lists) => {
                let mut hit = vec![false; self.n];
                for &s in set.iter().filter(|&&s| s < self.n) {
                    for &v in &lists[s] {
                        hit[v] = true;
                    }
                }
                (0..self.n).filter(|&v| hit[v]).collect()
            }
        }
    }

    /// Canonical edge-list rendering: header, then edges sorted by `(min, max)`.
    pub fn render(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list format: `"n m"` followed by exactly `m` lines
    /// `"u v"`. Blank trailing lines are tolerated.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing header line \"n m\""))?;
        let nums = parse_pair(hline, header, "header")?;
        let (n, m) = nums;

        let mut edges = Vec::with_capacity(m);
        for k in 0..m {
            let (line, text) = lines.next().ok_or_else(|| {
                parse_err(hline + k + 1, format!("expected {m} edge lines, found {k}"))
            })?;
            let (u, v) = parse_pair(line, text, "edge")?;
            if u >= n || v >= n {
                return Err(parse_err(
                    line,
                    format!("vertex id out of range: ({u}, {v}) with n = {n}"),
                ));
            }
            if u == v {
                return Err(parse_err(line, format!("self-loop at vertex {u}")));
            }
            edges.push((u, v));
        }
        for (line, text) in lines {
            if !text.trim().is_empty() {
                return Err(parse_err(line, "unexpected content after the last edge line"));
            }
        }
        Graph::from_edges(n, edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::str::FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse(s)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_pair(line: usize, text: &str, what: &str) -> Result<(usize, usize)> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(
            line,
            format!("{what} line must hold two integers, found {} tokens", toks.len()),
        ));
    }
    let num = |tok: &str| {
        tok.parse::<usize>()
            .map_err(|_| parse_err(line, format!("non-integer token {tok:?} in {what} line")))
    };
    Ok((num(toks[0])?, num(toks[1])?))
}

fn bits_to_ids(row: &Row) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in row.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            out.push(wi * 64 + b);
            w &= w - 1;
        }
    }
    out
}

/// Samples G(n,p): one uniform draw per pair `(i, j)`, `i < j`, in
/// lexicographic order; the edge is present iff the draw is below `p`.
pub fn generate_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("G(n,p) needs n >= 1"));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::param(format!("edge probability {p} is not in (0, 1)")));
    }
    let mut rng = SplitMix64::new(seed);
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.next_f64() < p {
                g.insert(i, j);
            }
        }
    }
    g.finish();
    Ok(g)
}
