//! Region-approximated fugacities.
//!
//! Every method follows the same recipe: each region `r` contributes, for
//! each of its vertices `i`, the ratio `ρ_{r,i} = b_r(x^i) / b_r(0)` of its
//! optimal regional distribution, and the log-fugacity is
//! `v_i = Σ_{r ∋ i} c_r ln ρ_{r,i}` ([`combine_raf`]). Clique regions have the
//! closed-form distribution `b_r(x^i) = s_i`, `b_r(0) = 1 − Σ_{j∈r} s_j`;
//! chordless 4-cycles use the maximum-entropy distribution from [`cycle4`].

pub mod cycle4;
mod entropy;

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{ConflictGraph, Cycle4, Region};
use crate::regions::{local_collection, Method, RegionCollection};

pub use cycle4::{
    cycle4_homogeneous_rate, cycle4_marginals, cycle4_maxent_oracle, cycle4_ratio_closed,
    cycle4_ratio_homogeneous, cycle4_schedule_probs, CYCLE4_SCHEDULES,
};
pub use entropy::{region_entropy, RegionDistribution};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FugacityError {
    #[error("invalid service rates: {0}")]
    InvalidRates(String),
    #[error("infeasible rates: region {region} has 1 - Σ s = {slack:.6e} <= 0")]
    InfeasibleRates { region: Region, slack: f64 },
    #[error("4-cycle {region} has no distribution with the requested marginals")]
    InfeasibleCycle { region: Region },
    #[error("degenerate denominator in the 4-cycle closed form")]
    DegenerateDenominator,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("Newton solve did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("missing ratio for vertex {vertex} in region {region}")]
    MissingRatio { region: Region, vertex: usize },
    #[error("region {0} is neither a clique nor a chordless 4-cycle")]
    UnsupportedRegion(Region),
}

/// Target service rates, each strictly inside `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ServiceRates(Vec<f64>);

impl ServiceRates {
    pub fn new(s: Vec<f64>) -> Result<Self, FugacityError> {
        if s.is_empty() {
            return Err(FugacityError::InvalidRates("empty rate vector".into()));
        }
        if let Some((i, x)) = s.iter().enumerate().find(|(_, &x)| !(x > 0.0 && x < 1.0)) {
            return Err(FugacityError::InvalidRates(format!(
                "rate of link {i} is {x}, expected 0 < s < 1"
            )));
        }
        Ok(Self(s))
    }

    pub fn uniform(n: usize, s: f64) -> Result<Self, FugacityError> {
        Self::new(vec![s; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `1 − Σ_{j∈r} s_j`.
    pub fn slack(&self, r: &Region) -> f64 {
        1.0 - r.iter().map(|j| self.0[j]).sum::<f64>()
    }
}

/// Log-fugacities `v_i` (natural log).
#[derive(Debug, Clone, PartialEq)]
pub struct Fugacities(Vec<f64>);

impl Fugacities {
    pub fn new(v: Vec<f64>) -> Result<Self, FugacityError> {
        if let Some((i, x)) = v.iter().enumerate().find(|(_, x)| !x.is_finite()) {
            return Err(FugacityError::Domain(format!("log-fugacity of link {i} is {x}")));
        }
        Ok(Self(v))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// `ρ_{r,i}` for each (region, member vertex).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RegionRatios {
    map: HashMap<(Region, usize), f64>,
}

impl RegionRatios {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, region: Region, vertex: usize, ratio: f64) {
        self.map.insert((region, vertex), ratio);
    }

    pub fn get(&self, region: &Region, vertex: usize) -> Option<f64> {
        // Tuple keys need an owned probe.
        self.map.get(&(region.clone(), vertex)).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

fn check_len(collection_n: usize, s: &ServiceRates) -> Result<(), FugacityError> {
    if collection_n != s.len() {
        return Err(FugacityError::InvalidRates(format!(
            "{} rates for a graph with {} links",
            s.len(),
            collection_n
        )));
    }
    Ok(())
}

fn feasible_slack(r: &Region, s: &ServiceRates) -> Result<f64, FugacityError> {
    let slack = s.slack(r);
    if slack <= 0.0 {
        return Err(FugacityError::InfeasibleRates {
            region: r.clone(),
            slack,
        });
    }
    Ok(slack)
}

/// Clique-region fugacities:
/// `v_i = ln s_i − Σ_{r ∋ i} c_r ln(1 − Σ_{j∈r} s_j)`.
///
/// Every region of `collection` is treated as a clique.
pub fn clique_raf(collection: &RegionCollection, s: &ServiceRates) -> Result<Fugacities, FugacityError> {
    check_len(collection.n(), s)?;
    let mut v: Vec<f64> = s.as_slice().iter().map(|x| x.ln()).collect();
    for (r, c) in collection.iter() {
        let slack = feasible_slack(r, s)?;
        let term = c as f64 * slack.ln();
        for i in r.iter() {
            v[i] -= term;
        }
    }
    Fugacities::new(v)
}

/// Bethe fugacities in closed form:
/// `e^{v_i} = s_i (1 − s_i)^{d_i − 1} / Π_{j ∈ N_i} (1 − s_i − s_j)`.
pub fn bethe_raf(g: &ConflictGraph, s: &ServiceRates) -> Result<Fugacities, FugacityError> {
    check_len(g.n(), s)?;
    let s_ = s.as_slice();
    let mut v = Vec::with_capacity(g.n());
    for i in 0..g.n() {
        let d = g.degree(i) as f64;
        let mut vi = s_[i].ln() + (d - 1.0) * (1.0 - s_[i]).ln();
        for j in g.neighbors(i) {
            let slack = 1.0 - s_[i] - s_[j];
            if slack <= 0.0 {
                return Err(FugacityError::InfeasibleRates {
                    region: Region::new(vec![i, j]),
                    slack,
                });
            }
            vi -= slack.ln();
        }
        v.push(vi);
    }
    Fugacities::new(v)
}

/// Ratios `ρ_{r,i} = s_i / (1 − Σ_{j∈r} s_j)` of the unique feasible
/// distribution on a clique region.
pub fn clique_ratios(
    regions: impl IntoIterator<Item = Region>,
    s: &ServiceRates,
) -> Result<RegionRatios, FugacityError> {
    let mut ratios = RegionRatios::new();
    for r in regions {
        let slack = feasible_slack(&r, s)?;
        for i in r.iter() {
            ratios.insert(r.clone(), i, s.as_slice()[i] / slack);
        }
    }
    Ok(ratios)
}

/// `v_i = Σ_{r ∋ i} c_r ln ρ_{r,i}`.
pub fn combine_raf(collection: &RegionCollection, ratios: &RegionRatios) -> Result<Fugacities, FugacityError> {
    let mut v = vec![0.0; collection.n()];
    for (r, c) in collection.iter() {
        for i in r.iter() {
            let rho = ratios.get(r, i).ok_or_else(|| FugacityError::MissingRatio {
                region: r.clone(),
                vertex: i,
            })?;
            v[i] += c as f64 * rho.ln();
        }
    }
    Fugacities::new(v)
}

/// Closed form and Newton oracle disagreed (or the closed form was
/// degenerate) on a 4-cycle region; the oracle's value was used.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle4Fallback {
    pub region: Region,
    pub vertex: usize,
    pub closed: Option<f64>,
    pub oracle: f64,
}

/// Agreement required between the 4-cycle closed form and the oracle
/// before the closed form is trusted.
pub const CYCLE4_MISMATCH_TOL: f64 = 1e-6;

/// Ratios for a 4-cycle region, one per vertex of `cycle.order()`.
pub fn cycle4_region_ratios(
    cycle: &Cycle4,
    s: &ServiceRates,
    fallbacks: &mut Vec<Cycle4Fallback>,
) -> Result<[f64; 4], FugacityError> {
    let order = cycle.order();
    let rates = order.map(|v| s.as_slice()[v]);
    let oracle = cycle4_maxent_oracle(rates).map_err(|e| match e {
        FugacityError::NoConvergence { .. } => FugacityError::InfeasibleCycle {
            region: cycle.region().clone(),
        },
        other => other,
    })?;
    let mut out = [0.0; 4];
    for k in 0..4 {
        let closed = cycle4_ratio_closed(
            rates[k],
            rates[(k + 1) % 4],
            rates[(k + 3) % 4],
            rates[(k + 2) % 4],
        )
        .ok();
        out[k] = match closed {
            Some(c) if (c - oracle[k]).abs() <= CYCLE4_MISMATCH_TOL => c,
            _ => {
                fallbacks.push(Cycle4Fallback {
                    region: cycle.region().clone(),
                    vertex: order[k],
                    closed,
                    oracle: oracle[k],
                });
                oracle[k]
            }
        };
    }
    Ok(out)
}

/// Ratios for every region of a clique-plus-4-cycle collection, together
/// with the 4-cycle regions where the closed form was overruled.
pub fn cycle4_ratios(
    g: &ConflictGraph,
    collection: &RegionCollection,
    s: &ServiceRates,
) -> Result<(RegionRatios, Vec<Cycle4Fallback>), FugacityError> {
    check_len(collection.n(), s)?;
    let mut ratios = RegionRatios::new();
    let mut fallbacks = Vec::new();
    for r in collection.regions() {
        if g.is_clique(r.vertices()) {
            let slack = feasible_slack(r, s)?;
            for i in r.iter() {
                ratios.insert(r.clone(), i, s.as_slice()[i] / slack);
            }
        } else if let Some(cycle) = Cycle4::from_vertices(g, r) {
            let rho = cycle4_region_ratios(&cycle, s, &mut fallbacks)?;
            for (k, v) in cycle.order().into_iter().enumerate() {
                ratios.insert(r.clone(), v, rho[k]);
            }
        } else {
            return Err(FugacityError::UnsupportedRegion(r.clone()));
        }
    }
    Ok((ratios, fallbacks))
}

/// Clique-plus-4-cycle fugacities.
pub fn cycle4_raf(
    g: &ConflictGraph,
    collection: &RegionCollection,
    s: &ServiceRates,
) -> Result<Fugacities, FugacityError> {
    let (ratios, _) = cycle4_ratios(g, collection, s)?;
    combine_raf(collection, &ratios)
}

/// Fugacities of `collection`, dispatching on its method.
pub fn collection_raf(
    g: &ConflictGraph,
    collection: &RegionCollection,
    s: &ServiceRates,
) -> Result<Fugacities, FugacityError> {
    match collection.method() {
        Method::Bethe | Method::Clique => clique_raf(collection, s),
        Method::Cycle4 => cycle4_raf(g, collection, s),
    }
}

/// Builds the collection for `method` and returns its fugacities.
pub fn raf(g: &ConflictGraph, method: Method, s: &ServiceRates) -> Result<Fugacities, FugacityError> {
    match method {
        Method::Bethe => bethe_raf(g, s),
        _ => collection_raf(g, &crate::regions::build_collection(g, method), s),
    }
}

/// Fugacity of a single link computed from its own neighborhood only.
pub fn local_raf(g: &ConflictGraph, v: usize, method: Method, s: &ServiceRates) -> Result<f64, FugacityError> {
    check_len(g.n(), s)?;
    let local = local_collection(g, v, method);
    let ratios = match method {
        Method::Bethe | Method::Clique => clique_ratios(local.regions().iter().cloned(), s)?,
        Method::Cycle4 => cycle4_ratios(g, &local, s)?.0,
    };
    let mut acc = 0.0;
    for k in local.containing(v) {
        let r = local.region(k);
        let rho = ratios.get(r, v).ok_or_else(|| FugacityError::MissingRatio {
            region: r.clone(),
            vertex: v,
        })?;
        acc += local.counting(k) as f64 * rho.ln();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Topology};
    use crate::regions::build_collection;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rates_validation() {
        assert!(ServiceRates::new(vec![0.2, 1.0]).is_err());
        assert!(ServiceRates::new(vec![0.0]).is_err());
        assert!(ServiceRates::new(vec![f64::NAN]).is_err());
        assert!(ServiceRates::new(vec![]).is_err());
        assert!(Fugacities::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn complete_graph_closed_form() {
        let g = generate(&Topology::Complete { n: 4 }, 0).unwrap();
        let s = ServiceRates::new(vec![0.1, 0.2, 0.15, 0.3]).unwrap();
        let v = clique_raf(&build_collection(&g, Method::Clique), &s).unwrap();
        let total: f64 = s.as_slice().iter().sum();
        for i in 0..4 {
            assert!(close(v.as_slice()[i], (s.as_slice()[i] / (1.0 - total)).ln(), 1e-15));
        }
    }

    #[test]
    fn isolated_vertex() {
        let g = ConflictGraph::new(1).unwrap();
        let s = ServiceRates::uniform(1, 0.3).unwrap();
        let want = (0.3f64 / 0.7).ln();
        for m in Method::ALL {
            assert!(close(raf(&g, m, &s).unwrap().as_slice()[0], want, 1e-15), "{m}");
        }
    }

    #[test]
    fn fig8_vertex_two_worked_example() {
        let g = generate(&Topology::Fig8, 0).unwrap();
        let rates: Vec<f64> = vec![0.11, 0.13, 0.07, 0.09, 0.12, 0.05, 0.1, 0.08];
        let s = ServiceRates::new(rates.clone()).unwrap();
        let v = clique_raf(&build_collection(&g, Method::Clique), &s).unwrap();
        let p = |k: usize| rates[k - 1];
        let want = p(2) * (1.0 - p(2) - p(7)) * (1.0 - p(2))
            / ((1.0 - p(1) - p(2)) * (1.0 - p(2) - p(7) - p(8)) * (1.0 - p(2) - p(3) - p(7)));
        assert!(close(v.as_slice()[1].exp(), want, 1e-14));
        let local = local_raf(&g, 1, Method::Clique, &s).unwrap();
        assert!(close(local, v.as_slice()[1], 1e-14));
    }

    #[test]
    fn k2_bethe() {
        let g = generate(&Topology::Complete { n: 2 }, 0).unwrap();
        let s = ServiceRates::uniform(2, 0.25).unwrap();
        let v = bethe_raf(&g, &s).unwrap();
        for x in v.as_slice() {
            assert!(close(x.exp(), 0.5, 1e-15));
        }
    }

    #[test]
    fn bethe_degree_zero() {
        let g = ConflictGraph::from_edges(3, &[(0, 1)]).unwrap();
        let s = ServiceRates::new(vec![0.2, 0.3, 0.4]).unwrap();
        let v = bethe_raf(&g, &s).unwrap();
        assert!(close(v.as_slice()[2].exp(), 0.4 / 0.6, 1e-15));
    }

    #[test]
    fn bethe_closed_form_matches_collection() {
        let g = generate(&Topology::Fig8, 0).unwrap();
        let s = ServiceRates::new(vec![0.11, 0.13, 0.07, 0.09, 0.12, 0.05, 0.1, 0.08]).unwrap();
        let a = bethe_raf(&g, &s).unwrap();
        let b = clique_raf(&build_collection(&g, Method::Bethe), &s).unwrap();
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            assert!(close(*x, *y, 1e-13));
        }
    }

    #[test]
    fn infeasible_triangle_is_named() {
        let g = generate(&Topology::Complete { n: 3 }, 0).unwrap();
        let s = ServiceRates::uniform(3, 0.4).unwrap();
        let err = clique_raf(&build_collection(&g, Method::Clique), &s).unwrap_err();
        assert_eq!(
            err,
            FugacityError::InfeasibleRates {
                region: Region::new(vec![0, 1, 2]),
                slack: 1.0 - 3.0 * 0.4
            }
        );
        let s = ServiceRates::uniform(3, 0.6).unwrap();
        assert!(matches!(bethe_raf(&g, &s), Err(FugacityError::InfeasibleRates { .. })));
    }

    #[test]
    fn combine_single_region() {
        let c = RegionCollection::from_parts(2, Method::Clique, vec![
            (Region::singleton(0), 1),
            (Region::singleton(1), 1),
        ]);
        let mut ratios = RegionRatios::new();
        ratios.insert(Region::singleton(0), 0, 2.0);
        assert_eq!(
            combine_raf(&c, &ratios).unwrap_err(),
            FugacityError::MissingRatio {
                region: Region::singleton(1),
                vertex: 1
            }
        );
        ratios.insert(Region::singleton(1), 1, 0.5);
        let v = combine_raf(&c, &ratios).unwrap();
        assert_eq!(v.as_slice(), &[2f64.ln(), 0.5f64.ln()]);
    }

    #[test]
    fn grid_cycle4_matches_corollary() {
        let g = generate(&Topology::Grid { rows: 4, cols: 4 }, 0).unwrap();
        let c = build_collection(&g, Method::Cycle4);
        for &s in &[0.1, 0.25, 0.35, 0.45] {
            let rates = ServiceRates::uniform(16, s).unwrap();
            let (ratios, fallbacks) = cycle4_ratios(&g, &c, &rates).unwrap();
            assert!(fallbacks.is_empty());
            let v = combine_raf(&c, &ratios).unwrap();
            let root = -1.0 + 4.0 * s + (1.0 - 4.0 * s + 8.0 * s * s).sqrt();
            for i in 0..16 {
                let want = match g.degree(i) {
                    4 => root.powi(4) / (16.0 * (1.0 - s) * s.powi(3)),
                    3 => root.powi(2) / (4.0 * s * (1.0 - 2.0 * s)),
                    2 => root / (2.0 - 4.0 * s),
                    _ => unreachable!(),
                };
                let got = v.as_slice()[i].exp();
                assert!(close(got, want, 1e-12 * want), "s={s} i={i} {got} vs {want}");
            }
        }
    }

    #[test]
    fn cycle4_without_cycles_equals_clique() {
        let g = generate(&Topology::Complete { n: 5 }, 0).unwrap();
        let s = ServiceRates::new(vec![0.1, 0.15, 0.2, 0.05, 0.12]).unwrap();
        let a = cycle4_raf(&g, &build_collection(&g, Method::Cycle4), &s).unwrap();
        let b = clique_raf(&build_collection(&g, Method::Clique), &s).unwrap();
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            assert!(close(*x, *y, 1e-14));
        }
    }

    #[test]
    fn infeasible_cycle_is_named() {
        let g = generate(&Topology::Ring { n: 4 }, 0).unwrap();
        let s = ServiceRates::new(vec![0.6, 0.45, 0.3, 0.2]).unwrap();
        let err = cycle4_raf(&g, &build_collection(&g, Method::Cycle4), &s).unwrap_err();
        // s_0 + s_1 > 1, so no distribution on the square has these marginals.
        assert_eq!(
            err,
            FugacityError::InfeasibleCycle {
                region: Region::new(vec![0, 1, 2, 3])
            }
        );
    }

    #[test]
    fn local_matches_global_on_random_graphs() {
        for seed in 0..10 {
            let g = generate(&Topology::RandomGeometric { n: 20, side: 3.0, radius: 0.8 }, seed).unwrap();
            let s = ServiceRates::uniform(20, 0.08).unwrap();
            for m in Method::ALL {
                let global = raf(&g, m, &s).unwrap();
                for i in 0..20 {
                    let local = local_raf(&g, i, m, &s).unwrap();
                    assert!(
                        close(local, global.as_slice()[i], 1e-12),
                        "seed {seed} method {m} vertex {i}: {local} vs {}",
                        global.as_slice()[i]
                    );
                }
            }
        }
    }
}
