use crate::graph::{ConflictGraph, Cycle4, Region};

use super::cycle4::{cycle4_schedule_probs, CYCLE4_SCHEDULES};
use super::{FugacityError, ServiceRates};

/// Distribution over local schedules of a region. A schedule is a bit mask
/// over the region's vertices in sorted order (bit `k` = `vertices()[k]`).
#[derive(Debug, Clone, PartialEq)]
pub struct RegionDistribution {
    region: Region,
    probs: Vec<(u64, f64)>,
}

impl RegionDistribution {
    pub fn new(region: Region, probs: Vec<(u64, f64)>) -> Result<Self, FugacityError> {
        if region.len() > 63 {
            return Err(FugacityError::Domain("region too large for a schedule mask".into()));
        }
        let limit = 1u64 << region.len();
        let mut total = 0.0;
        for &(x, p) in &probs {
            if x >= limit {
                return Err(FugacityError::Domain(format!("schedule {x:#b} outside region {region}")));
            }
            if !(p >= 0.0) {
                return Err(FugacityError::Domain(format!("negative probability {p}")));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(FugacityError::Domain(format!("probabilities sum to {total}")));
        }
        Ok(Self { region, probs })
    }

    /// `b_r(0) = 1 − Σ s_j`, `b_r(x^i) = s_i`: the only distribution on a
    /// clique with the given singleton marginals.
    pub fn clique(region: Region, s: &ServiceRates) -> Result<Self, FugacityError> {
        let slack = s.slack(&region);
        if slack < 0.0 {
            return Err(FugacityError::InfeasibleRates { region, slack });
        }
        let mut probs = vec![(0u64, slack)];
        probs.extend(region.iter().enumerate().map(|(k, v)| (1u64 << k, s.as_slice()[v])));
        Self::new(region, probs)
    }

    /// Product-form distribution on a chordless 4-cycle with ratios
    /// `lambda[k]` for vertex `cycle.order()[k]`.
    pub fn cycle4(cycle: &Cycle4, lambda: [f64; 4]) -> Result<Self, FugacityError> {
        let region = cycle.region().clone();
        let order = cycle.order();
        let bit = |pos: usize| 1u64 << region.vertices().iter().position(|&v| v == order[pos]).unwrap();
        let probs = CYCLE4_SCHEDULES
            .iter()
            .zip(cycle4_schedule_probs(lambda))
            .map(|(&mask, p)| {
                let local = (0..4).filter(|k| mask & (1 << k) != 0).map(bit).fold(0, |a, b| a | b);
                (local, p)
            })
            .collect();
        Self::new(region, probs)
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn probs(&self) -> &[(u64, f64)] {
        &self.probs
    }

    /// Probability that vertex `v` of the region is active.
    pub fn marginal(&self, v: usize) -> Option<f64> {
        let k = self.region.vertices().iter().position(|&w| w == v)?;
        Some(self.probs.iter().filter(|(x, _)| x & (1 << k) != 0).map(|(_, p)| p).sum())
    }

    /// `true` if every schedule with positive mass is independent in `g`.
    pub fn is_locally_feasible(&self, g: &ConflictGraph) -> bool {
        self.probs.iter().filter(|(_, p)| *p > 0.0).all(|&(x, _)| {
            let active: Vec<usize> = self
                .region
                .iter()
                .enumerate()
                .filter(|(k, _)| x & (1 << k) != 0)
                .map(|(_, v)| v)
                .collect();
            g.is_independent(&active)
        })
    }
}

/// `−Σ b ln b`, with `0 ln 0 = 0`.
pub fn region_entropy(d: &RegionDistribution) -> f64 {
    -d.probs
        .iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|(_, p)| p * p.ln())
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fugacity::cycle4_maxent_oracle;
    use crate::graph::{generate, Topology};

    #[test]
    fn uniform_and_point_mass() {
        let r = Region::new(vec![0, 1]);
        let u = RegionDistribution::new(r.clone(), vec![(0, 1.0 / 3.0), (1, 1.0 / 3.0), (2, 1.0 / 3.0)]).unwrap();
        assert!((region_entropy(&u) - 3f64.ln()).abs() < 1e-15);
        let point = RegionDistribution::new(r, vec![(0, 1.0), (1, 0.0)]).unwrap();
        assert_eq!(region_entropy(&point), 0.0);
    }

    #[test]
    fn rejects_bad_distributions() {
        let r = Region::new(vec![0, 1]);
        assert!(RegionDistribution::new(r.clone(), vec![(0, 0.5)]).is_err());
        assert!(RegionDistribution::new(r.clone(), vec![(0, 1.5), (1, -0.5)]).is_err());
        assert!(RegionDistribution::new(r, vec![(4, 1.0)]).is_err());
    }

    #[test]
    fn clique_distribution_marginals() {
        let g = generate(&Topology::Complete { n: 3 }, 0).unwrap();
        let s = ServiceRates::new(vec![0.2, 0.3, 0.1]).unwrap();
        let d = RegionDistribution::clique(Region::new(vec![0, 1, 2]), &s).unwrap();
        assert!((d.marginal(1).unwrap() - 0.3).abs() < 1e-15);
        assert!(d.is_locally_feasible(&g));
    }

    #[test]
    fn maxent_beats_diagonal_free_distribution() {
        let g = generate(&Topology::Ring { n: 4 }, 0).unwrap();
        let cycle = crate::graph::chordless_4cycles(&g).remove(0);
        let lambda = cycle4_maxent_oracle([0.25; 4]).unwrap();
        let maxent = RegionDistribution::cycle4(&cycle, lambda).unwrap();
        assert!(maxent.is_locally_feasible(&g));
        for v in 0..4 {
            assert!((maxent.marginal(v).unwrap() - 0.25).abs() < 1e-12);
        }
        // Same marginals, no diagonal pairs: each singleton at 1/4.
        let no_pairs = RegionDistribution::new(
            cycle.region().clone(),
            (0..4).map(|k| (1u64 << k, 0.25)).collect(),
        )
        .unwrap();
        assert!(region_entropy(&maxent) > region_entropy(&no_pairs) + 1e-3);
    }
}
