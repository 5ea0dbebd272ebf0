//! Conflict graphs: representation, canonical topologies and structural queries.
//!
//! Vertices are links, numbered `0..n`. Paper-style figures and DIMACS files
//! use 1-based ids; the conversion happens only in [`dimacs`] and in the
//! fixed topologies below.

mod chordal;
mod cliques;
pub mod dimacs;

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::rng::Stream;

pub use chordal::{is_chordal, lex_bfs_order};
pub use cliques::{chordless_4cycles, maximal_cliques, Cycle4};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Undirected interference graph with per-vertex neighbor bitsets.
#[derive(Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    adj: Vec<FixedBitSet>,
}

impl fmt::Debug for ConflictGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConflictGraph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

impl ConflictGraph {
    /// Edgeless graph on `n >= 1` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Parameter("graph needs at least one vertex".into()));
        }
        Ok(Self {
            adj: vec![FixedBitSet::with_capacity(n); n],
        })
    }

    /// Builds a graph from 0-based edges. Repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts `{u, v}`; returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let fresh = !self.adj[u].contains(v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(fresh)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            out.extend(self.adj[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn complement(&self) -> Self {
        let n = self.n();
        let mut adj = Vec::with_capacity(n);
        for v in 0..n {
            let mut row = self.adj[v].clone();
            row.toggle_range(..);
            row.set(v, false);
            adj.push(row);
        }
        Self { adj }
    }

    /// Returns `true` if `vertices` are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(k, &u)| vertices[k + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Returns `true` if no two of `vertices` are adjacent.
    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(k, &u)| vertices[k + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Subgraph induced by `vertices` (sorted, unique). Vertex `k` of the
    /// result is `vertices[k]` of `self`.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut adj = vec![FixedBitSet::with_capacity(vertices.len()); vertices.len()];
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[a].insert(b);
                }
            }
        }
        Self { adj }
    }

    /// Applies `perm`: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n(), "permutation length must equal n");
        let mut adj = vec![FixedBitSet::with_capacity(self.n()); self.n()];
        for (u, v) in self.edges() {
            adj[perm[u]].insert(perm[v]);
            adj[perm[v]].insert(perm[u]);
        }
        Self { adj }
    }
}

/// Vertex subset, kept sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region(Vec<usize>);

impl Region {
    /// Sorts and deduplicates. Panics on an empty input.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty(), "a region must be nonempty");
        vertices.sort_unstable();
        vertices.dedup();
        Self(vertices)
    }

    pub fn singleton(v: usize) -> Self {
        Self(vec![v])
    }

    /// Builds a region from 1-based ids, as printed in figures.
    pub fn one_based(ids: &[usize]) -> Self {
        Self::new(ids.iter().map(|&v| v - 1).collect())
    }

    #[inline]
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }

    pub fn is_proper_subset(&self, other: &Region) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    /// Intersection, or `None` when it is empty.
    pub fn intersection(&self, other: &Region) -> Option<Region> {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        (!out.is_empty()).then_some(Region(out))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Topology families understood by [`generate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Topology {
    Complete { n: usize },
    /// 4-neighbor lattice, row-major ids.
    Grid { rows: usize, cols: usize },
    Ring { n: usize },
    /// `n` uniform points in `[0, side]^2`, joined when at distance `<= radius`.
    RandomGeometric { n: usize, side: f64, radius: f64 },
    /// Eight-link example used to illustrate the clique algorithm.
    Fig8,
    /// Six-vertex chordal example.
    Chordal6,
}

impl Topology {
    /// Short label used in CSV output.
    pub fn label(&self) -> String {
        match self {
            Topology::Complete { n } => format!("complete{n}"),
            Topology::Grid { rows, cols } => format!("grid{rows}x{cols}"),
            Topology::Ring { n } => format!("ring{n}"),
            Topology::RandomGeometric { n, .. } => format!("rgg{n}"),
            Topology::Fig8 => "fig8".into(),
            Topology::Chordal6 => "chordal6".into(),
        }
    }
}

const FIG8_EDGES: [(usize, usize); 12] = [
    (1, 2),
    (2, 8),
    (8, 7),
    (2, 3),
    (3, 7),
    (2, 7),
    (3, 4),
    (3, 5),
    (3, 6),
    (5, 6),
    (6, 7),
    (5, 7),
];

const CHORDAL6_EDGES: [(usize, usize); 9] = [
    (1, 2),
    (1, 4),
    (4, 5),
    (2, 5),
    (1, 5),
    (5, 6),
    (3, 6),
    (2, 3),
    (3, 5),
];

fn one_based_graph(n: usize, edges: &[(usize, usize)]) -> ConflictGraph {
    let shifted: Vec<_> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    ConflictGraph::from_edges(n, &shifted).expect("fixed topology is well formed")
}

/// Builds the named topology. `seed` only matters for random families.
pub fn generate(kind: &Topology, seed: u64) -> Result<ConflictGraph, GraphError> {
    match *kind {
        Topology::Complete { n } => {
            let mut g = ConflictGraph::new(n)?;
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v)?;
                }
            }
            Ok(g)
        }
        Topology::Grid { rows, cols } => {
            if rows == 0 || cols == 0 {
                return Err(GraphError::Parameter("grid needs rows, cols >= 1".into()));
            }
            let mut g = ConflictGraph::new(rows * cols)?;
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        g.add_edge(v, v + 1)?;
                    }
                    if r + 1 < rows {
                        g.add_edge(v, v + cols)?;
                    }
                }
            }
            Ok(g)
        }
        Topology::Ring { n } => {
            let mut g = ConflictGraph::new(n)?;
            if n >= 2 {
                for v in 0..n {
                    let w = (v + 1) % n;
                    if v != w {
                        g.add_edge(v, w)?;
                    }
                }
            }
            Ok(g)
        }
        Topology::RandomGeometric { n, side, radius } => {
            if !(radius >= 0.0) || !radius.is_finite() {
                return Err(GraphError::Parameter(format!("radius must be >= 0, got {radius}")));
            }
            if !(side > 0.0) || !side.is_finite() {
                return Err(GraphError::Parameter(format!("side must be > 0, got {side}")));
            }
            let mut g = ConflictGraph::new(n)?;
            let mut rng = Stream::new(seed);
            let pts: Vec<(f64, f64)> = (0..n)
                .map(|_| {
                    let x = rng.unit() * side;
                    let y = rng.unit() * side;
                    (x, y)
                })
                .collect();
            let r2 = radius * radius;
            for u in 0..n {
                for v in u + 1..n {
                    let dx = pts[u].0 - pts[v].0;
                    let dy = pts[u].1 - pts[v].1;
                    if dx * dx + dy * dy <= r2 {
                        g.add_edge(u, v)?;
                    }
                }
            }
            Ok(g)
        }
        Topology::Fig8 => Ok(one_based_graph(8, &FIG8_EDGES)),
        Topology::Chordal6 => Ok(one_based_graph(6, &CHORDAL6_EDGES)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_three_is_triangle() {
        let g = generate(&Topology::Complete { n: 3 }, 0).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn grid_is_row_major_lattice() {
        let g = generate(&Topology::Grid { rows: 2, cols: 3 }, 0).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (4, 5)]);
        let g = generate(&Topology::Grid { rows: 4, cols: 4 }, 0).unwrap();
        assert_eq!(g.edge_count(), 24);
    }

    #[test]
    fn ring_small_cases() {
        assert_eq!(generate(&Topology::Ring { n: 1 }, 0).unwrap().edge_count(), 0);
        assert_eq!(generate(&Topology::Ring { n: 2 }, 0).unwrap().edge_count(), 1);
        assert_eq!(generate(&Topology::Ring { n: 5 }, 0).unwrap().edge_count(), 5);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            generate(&Topology::Complete { n: 0 }, 0),
            Err(GraphError::Parameter(_))
        ));
        let bad = Topology::RandomGeometric { n: 5, side: 3.0, radius: -0.1 };
        assert!(matches!(generate(&bad, 0), Err(GraphError::Parameter(_))));
        assert!(ConflictGraph::from_edges(2, &[(0, 0)]).is_err());
        assert!(ConflictGraph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn random_geometric_is_deterministic() {
        let kind = Topology::RandomGeometric { n: 20, side: 3.0, radius: 0.8 };
        let a = generate(&kind, 11).unwrap();
        let b = generate(&kind, 11).unwrap();
        let c = generate(&kind, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn random_geometric_radius_extremes() {
        let empty = generate(&Topology::RandomGeometric { n: 6, side: 3.0, radius: 0.0 }, 1).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = generate(&Topology::RandomGeometric { n: 6, side: 3.0, radius: 5.0 }, 1).unwrap();
        assert_eq!(full.edge_count(), 15);
    }

    #[test]
    fn adjacency_symmetric_without_loops() {
        let g = generate(&Topology::Fig8, 0).unwrap();
        for u in 0..g.n() {
            assert!(!g.has_edge(u, u));
            for v in g.neighbors(u) {
                assert!(g.has_edge(v, u));
            }
        }
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn region_set_ops() {
        let a = Region::new(vec![3, 1, 2, 1]);
        assert_eq!(a.vertices(), &[1, 2, 3]);
        let b = Region::new(vec![2, 3]);
        assert!(b.is_proper_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.intersection(&b), Some(b.clone()));
        assert_eq!(b.intersection(&Region::singleton(0)), None);
        assert_eq!(a.to_string(), "{1,2,3}");
    }

    #[test]
    fn complement_and_induced() {
        let g = generate(&Topology::Ring { n: 4 }, 0).unwrap();
        let h = g.complement();
        assert_eq!(h.edges(), vec![(0, 2), (1, 3)]);
        let sub = g.induced(&[0, 1, 2]);
        assert_eq!(sub.edges(), vec![(0, 1), (1, 2)]);
    }
}
