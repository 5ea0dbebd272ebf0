//! Slotted Basic-CSMA chain.
//!
//! Each slot one link, chosen uniformly, updates. If a neighbor was active in
//! the previous slot it must stay silent; otherwise it transmits with
//! probability `e^{v_i} / (1 + e^{v_i})`. The stationary law is the Gibbs
//! distribution `p(x) ∝ exp(Σ v_i x_i)` over independent sets.

use std::collections::HashMap;
use std::io::{self, Write};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::fugacity::Fugacities;
use crate::graph::ConflictGraph;
use crate::rng::Stream;

#[derive(Debug, Error)]
pub enum SamplerError {
    #[error("need slots > burn_in, got slots = {slots}, burn_in = {burn_in}")]
    NoSamples { slots: u64, burn_in: u64 },
    #[error("{expected} fugacities expected, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("state visit counts need n <= 64, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Active links at a given slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleState {
    pub active: FixedBitSet,
    pub slot: u64,
}

impl ScheduleState {
    pub fn idle(n: usize) -> Self {
        Self {
            active: FixedBitSet::with_capacity(n),
            slot: 0,
        }
    }

    pub fn is_feasible(&self, g: &ConflictGraph) -> bool {
        self.active
            .ones()
            .all(|i| g.neighbor_set(i).is_disjoint(&self.active))
    }

    /// Lowercase hexadecimal of `Σ_{i active} 2^i`, without leading zeros.
    pub fn hex(&self) -> String {
        let blocks = self.active.as_slice();
        let mut out = String::new();
        for (k, b) in blocks.iter().enumerate().rev() {
            if out.is_empty() {
                if *b != 0 || k == 0 {
                    out.push_str(&format!("{b:x}"));
                }
            } else {
                out.push_str(&format!("{:0width$x}", b, width = usize::BITS as usize / 4));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn mask(&self) -> u64 {
        self.active.ones().fold(0u64, |m, i| m | (1 << i))
    }
}

/// `e^v / (1 + e^v)` without overflow.
#[inline]
pub fn activation_probability(v: f64) -> f64 {
    if v >= 0.0 {
        1.0 / (1.0 + (-v).exp())
    } else {
        let e = v.exp();
        e / (1.0 + e)
    }
}

/// One slot of the chain; the activation probability is recomputed from `v`.
pub fn step(g: &ConflictGraph, v: &Fugacities, state: &ScheduleState, rng: &mut Stream) -> ScheduleState {
    let mut next = state.clone();
    let i = rng.index(g.n());
    update(g, i, activation_probability(v.as_slice()[i]), &mut next.active, rng);
    next.slot += 1;
    next
}

#[inline]
fn update(g: &ConflictGraph, i: usize, p: f64, active: &mut FixedBitSet, rng: &mut Stream) {
    let busy = !g.neighbor_set(i).is_disjoint(active);
    // Draw even when busy so the stream position depends only on the slot.
    let u = rng.unit();
    active.set(i, !busy && u < p);
}

/// Runs the chain from the idle state and hands every post-burn-in state
/// to `visit`.
fn run<F: FnMut(u64, &FixedBitSet)>(
    g: &ConflictGraph,
    v: &Fugacities,
    slots: u64,
    burn_in: u64,
    seed: u64,
    mut visit: F,
) -> Result<(), SamplerError> {
    if slots <= burn_in {
        return Err(SamplerError::NoSamples { slots, burn_in });
    }
    if v.len() != g.n() {
        return Err(SamplerError::LengthMismatch {
            expected: g.n(),
            got: v.len(),
        });
    }
    let probs: Vec<f64> = v.as_slice().iter().map(|&x| activation_probability(x)).collect();
    let mut rng = Stream::new(seed);
    let mut active = FixedBitSet::with_capacity(g.n());
    for t in 0..slots {
        let i = rng.index(g.n());
        update(g, i, probs[i], &mut active, &mut rng);
        debug_assert!(active.ones().all(|k| g.neighbor_set(k).is_disjoint(&active)));
        if t >= burn_in {
            visit(t, &active);
        }
    }
    Ok(())
}

/// Fraction of the slots after `burn_in` in which each link is active.
pub fn simulate(
    g: &ConflictGraph,
    v: &Fugacities,
    slots: u64,
    burn_in: u64,
    seed: u64,
) -> Result<Vec<f64>, SamplerError> {
    let mut counts = vec![0u64; g.n()];
    run(g, v, slots, burn_in, seed, |_, active| {
        for i in active.ones() {
            counts[i] += 1;
        }
    })?;
    let total = (slots - burn_in) as f64;
    Ok(counts.into_iter().map(|c| c as f64 / total).collect())
}

/// Like [`simulate`], also writing `t <slot> <active-hex>` for every counted
/// slot.
pub fn simulate_traced<W: Write>(
    g: &ConflictGraph,
    v: &Fugacities,
    slots: u64,
    burn_in: u64,
    seed: u64,
    trace: &mut W,
) -> Result<Vec<f64>, SamplerError> {
    let mut counts = vec![0u64; g.n()];
    let mut io_err = None;
    run(g, v, slots, burn_in, seed, |t, active| {
        for i in active.ones() {
            counts[i] += 1;
        }
        if io_err.is_none() {
            let state = ScheduleState {
                active: active.clone(),
                slot: t,
            };
            if let Err(e) = writeln!(trace, "t {} {}", t, state.hex()) {
                io_err = Some(e);
            }
        }
    })?;
    if let Some(e) = io_err {
        return Err(e.into());
    }
    let total = (slots - burn_in) as f64;
    Ok(counts.into_iter().map(|c| c as f64 / total).collect())
}

/// Visit counts of every state (as a bit mask) after `burn_in`.
pub fn state_visits(
    g: &ConflictGraph,
    v: &Fugacities,
    slots: u64,
    burn_in: u64,
    seed: u64,
) -> Result<HashMap<u64, u64>, SamplerError> {
    if g.n() > 64 {
        return Err(SamplerError::TooLarge(g.n()));
    }
    let mut visits = HashMap::new();
    run(g, v, slots, burn_in, seed, |_, active| {
        let state = ScheduleState {
            active: active.clone(),
            slot: 0,
        };
        *visits.entry(state.mask()).or_insert(0) += 1;
    })?;
    Ok(visits)
}
