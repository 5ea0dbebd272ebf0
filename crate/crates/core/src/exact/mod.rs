//! Brute-force ground truth for the Gibbs distribution over schedules.
//!
//! `p(x) ∝ exp(Σ_i v_i x_i)` over independent sets `x` of the conflict
//! graph. Everything here enumerates independent sets, so graphs are capped
//! at [`MAX_EXACT_N`] links.

mod simplex;

use thiserror::Error;

use crate::fugacity::Fugacities;
use crate::graph::{maximal_cliques, ConflictGraph};

pub use simplex::{minimize_covering, LpOutcome};

/// Largest graph accepted by the enumeration-based routines.
pub const MAX_EXACT_N: usize = 30;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("graph has {n} links; exact enumeration is limited to {max}")]
    TooLarge { n: usize, max: usize },
    #[error("{expected} fugacities expected, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("linear program failed: {0}")]
    Lp(String),
}

fn guard(g: &ConflictGraph) -> Result<(), ExactError> {
    if g.n() > MAX_EXACT_N {
        return Err(ExactError::TooLarge {
            n: g.n(),
            max: MAX_EXACT_N,
        });
    }
    Ok(())
}

fn adjacency_masks(g: &ConflictGraph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u64, |m, w| m | (1 << w)))
        .collect()
}

/// Depth-first enumeration of independent sets as bit masks (bit `i` =
/// link `i`). Each set is produced once; the empty set comes first.
#[derive(Debug, Clone)]
pub struct IndependentSets {
    adj: Vec<u64>,
    // (set, vertices adjacent to the set, next candidate vertex)
    stack: Vec<(u64, u64, usize)>,
}

impl Iterator for IndependentSets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let (set, blocked, start) = self.stack.pop()?;
        for v in (start..self.adj.len()).rev() {
            if blocked & (1 << v) == 0 {
                self.stack.push((set | (1 << v), blocked | self.adj[v], v + 1));
            }
        }
        Some(set)
    }
}

pub fn enumerate_independent_sets(g: &ConflictGraph) -> Result<IndependentSets, ExactError> {
    guard(g)?;
    Ok(IndependentSets {
        adj: adjacency_masks(g),
        stack: vec![(0, 0, 0)],
    })
}

/// Partition function and exact link marginals.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSummary {
    pub log_z: f64,
    /// `p_i(1)`, the long-run service rate of link `i`.
    pub marginals: Vec<f64>,
}

/// Running log-sum-exp over set weights; rescales whenever the maximum grows.
struct Accumulator {
    max: f64,
    z: f64,
    per_link: Vec<f64>,
}

impl Accumulator {
    fn add(&mut self, set: u64, w: f64) {
        if w > self.max {
            let f = (self.max - w).exp();
            self.z *= f;
            for a in &mut self.per_link {
                *a *= f;
            }
            self.max = w;
        }
        let e = (w - self.max).exp();
        self.z += e;
        let mut bits = set;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            self.per_link[i] += e;
            bits &= bits - 1;
        }
    }
}

fn walk(adj: &[u64], v: &[f64], set: u64, blocked: u64, start: usize, w: f64, acc: &mut Accumulator) {
    acc.add(set, w);
    for k in start..adj.len() {
        if blocked & (1 << k) == 0 {
            walk(adj, v, set | (1 << k), blocked | adj[k], k + 1, w + v[k], acc);
        }
    }
}

pub fn exact_marginals(g: &ConflictGraph, v: &Fugacities) -> Result<ExactSummary, ExactError> {
    guard(g)?;
    if v.len() != g.n() {
        return Err(ExactError::LengthMismatch {
            expected: g.n(),
            got: v.len(),
        });
    }
    let adj: Vec<u64> = adjacency_masks(g)
        .into_iter()
        .enumerate()
        .map(|(k, m)| m | (1 << k))
        .collect();
    let mut acc = Accumulator {
        max: 0.0,
        z: 0.0,
        per_link: vec![0.0; g.n()],
    };
    walk(&adj, v.as_slice(), 0, 0, 0, 0.0, &mut acc);
    Ok(ExactSummary {
        log_z: acc.max + acc.z.ln(),
        marginals: acc.per_link.iter().map(|a| a / acc.z).collect(),
    })
}

/// Largest `s` such that `s·1` lies in the convex hull of the independent
/// sets, i.e. `1 / χ_f(G)`.
///
/// Solves the covering LP `min Σ x_I` s.t. `Σ_{I ∋ v} x_I ≥ 1`, `x ≥ 0`, whose
/// columns are the maximal independent sets (maximal cliques of the
/// complement).
pub fn max_symmetric_rate(g: &ConflictGraph) -> Result<f64, ExactError> {
    Ok(1.0 / fractional_chromatic_number(g)?)
}

pub fn fractional_chromatic_number(g: &ConflictGraph) -> Result<f64, ExactError> {
    guard(g)?;
    let columns = maximal_cliques(&g.complement());
    let n = g.n();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|v| columns.iter().map(|c| if c.contains(v) { 1.0 } else { 0.0 }).collect())
        .collect();
    match minimize_covering(&a, &vec![1.0; n], &vec![1.0; columns.len()]) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        other => Err(ExactError::Lp(format!("{other:?}"))),
    }
}
