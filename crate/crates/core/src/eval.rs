//! Approximation error of the fugacity methods.
//!
//! For a symmetric target `s^t = load · s_max · 1`, where `s_max` is the
//! largest supportable symmetric rate, each method's fugacities are pushed
//! through an oracle (exact enumeration or simulation) to get the achieved
//! rates `s^a`. The error is `max_i |s^t_i − s^a_i|`, reported also as a
//! percentage of `max_i s^t_i`.

use std::io::{self, Write};

use thiserror::Error;

use crate::exact::{exact_marginals, max_symmetric_rate, ExactError};
use crate::fugacity::{raf, FugacityError, ServiceRates};
use crate::graph::{generate, ConflictGraph, GraphError, Topology};
use crate::io::fmt_sig;
use crate::regions::Method;
use crate::sampler::{simulate, SamplerError};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("length mismatch: {target} targets, {achieved} achieved rates")]
    LengthMismatch { target: usize, achieved: usize },
    #[error("load must lie in (0, 1], got {0}")]
    Load(f64),
    #[error("no feasible rows to average")]
    NothingFeasible,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Fugacity(#[from] FugacityError),
}

/// `max_i |target_i − achieved_i|`.
pub fn approx_error(target: &[f64], achieved: &[f64]) -> Result<f64, EvalError> {
    if target.len() != achieved.len() {
        return Err(EvalError::LengthMismatch {
            target: target.len(),
            achieved: achieved.len(),
        });
    }
    Ok(target
        .iter()
        .zip(achieved)
        .fold(0.0f64, |m, (t, a)| m.max((t - a).abs())))
}

/// Where achieved rates come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oracle {
    Exact,
    /// Simulation; row `k` of a sweep uses seed `seed + k`.
    Sampler { slots: u64, burn_in: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RowStatus {
    Ok,
    /// The method rejected the target rates.
    Infeasible,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub topology: String,
    pub n: usize,
    pub seed: u64,
    pub method: Method,
    pub load: f64,
    /// `None` when the row is infeasible.
    pub error_abs: Option<f64>,
    pub error_pct: Option<f64>,
    pub status: RowStatus,
}

/// Achieved rates for `v` under `oracle`.
fn achieved(
    g: &ConflictGraph,
    v: &crate::fugacity::Fugacities,
    oracle: Oracle,
    row: u64,
) -> Result<Vec<f64>, EvalError> {
    Ok(match oracle {
        Oracle::Exact => exact_marginals(g, v)?.marginals,
        Oracle::Sampler { slots, burn_in, seed } => simulate(g, v, slots, burn_in, seed.wrapping_add(row))?,
    })
}

fn rate_rejected(e: &FugacityError) -> bool {
    matches!(
        e,
        FugacityError::InfeasibleRates { .. }
            | FugacityError::InfeasibleCycle { .. }
            | FugacityError::InvalidRates(_)
            | FugacityError::NoConvergence { .. }
    )
}

/// Error rows for every `(method, load)` pair, sorted by topology, method
/// and load. Rates a method rejects yield an `infeasible` row.
pub fn sweep(
    g: &ConflictGraph,
    topology: &str,
    seed: u64,
    methods: &[Method],
    loads: &[f64],
    oracle: Oracle,
) -> Result<Vec<ErrorRow>, EvalError> {
    if let Some(&bad) = loads.iter().find(|&&l| !(l > 0.0 && l <= 1.0)) {
        return Err(EvalError::Load(bad));
    }
    let s_max = max_symmetric_rate(g)?;
    let mut rows = Vec::with_capacity(methods.len() * loads.len());
    let mut k = 0u64;
    for &method in methods {
        for &load in loads {
            let level = load * s_max;
            let outcome = ServiceRates::uniform(g.n(), level).and_then(|s| raf(g, method, &s));
            let mut row = ErrorRow {
                topology: topology.to_string(),
                n: g.n(),
                seed,
                method,
                load,
                error_abs: None,
                error_pct: None,
                status: RowStatus::Infeasible,
            };
            match outcome {
                Ok(v) => {
                    let got = achieved(g, &v, oracle, k)?;
                    let err = approx_error(&vec![level; g.n()], &got)?;
                    row.error_abs = Some(err);
                    row.error_pct = Some(100.0 * err / level);
                    row.status = RowStatus::Ok;
                }
                Err(e) if rate_rejected(&e) => {}
                Err(e) => return Err(e.into()),
            }
            rows.push(row);
            k += 1;
        }
    }
    rows.sort_by(|a, b| {
        a.topology
            .cmp(&b.topology)
            .then(a.method.cmp(&b.method))
            .then(a.load.total_cmp(&b.load))
    });
    Ok(rows)
}

/// Random geometric graphs on a side-3 square with radius 0.8.
pub const RANDOM_SIDE: f64 = 3.0;
pub const RANDOM_RADIUS: f64 = 0.8;

/// One row per (seed, method) over `count` random geometric graphs with seeds
/// `base_seed..base_seed + count`, exact oracle.
pub fn random_rows(
    count: usize,
    n: usize,
    load: f64,
    methods: &[Method],
    base_seed: u64,
) -> Result<Vec<ErrorRow>, EvalError> {
    let mut rows = Vec::new();
    for k in 0..count as u64 {
        let seed = base_seed + k;
        let kind = Topology::RandomGeometric {
            n,
            side: RANDOM_SIDE,
            radius: RANDOM_RADIUS,
        };
        let g = generate(&kind, seed)?;
        rows.extend(sweep(&g, &kind.label(), seed, methods, &[load], Oracle::Exact)?);
    }
    rows.sort_by(|a, b| a.method.cmp(&b.method).then(a.seed.cmp(&b.seed)));
    Ok(rows)
}

/// Mean `error_pct` of the feasible rows for `method`.
pub fn mean_error_pct(rows: &[ErrorRow], method: Method) -> Result<f64, EvalError> {
    let vals: Vec<f64> = rows
        .iter()
        .filter(|r| r.method == method)
        .filter_map(|r| r.error_pct)
        .collect();
    if vals.is_empty() {
        return Err(EvalError::NothingFeasible);
    }
    Ok(vals.iter().sum::<f64>() / vals.len() as f64)
}

/// Mean percentage error of `method` over `count` random geometric graphs.
pub fn random_average(count: usize, n: usize, load: f64, method: Method, base_seed: u64) -> Result<f64, EvalError> {
    mean_error_pct(&random_rows(count, n, load, &[method], base_seed)?, method)
}

pub const CSV_HEADER: &str = "topology,n,seed,method,load,error_abs,error_pct,status";

/// CSV with [`CSV_HEADER`]; reals carry 10 significant digits and the
/// error fields of infeasible rows are empty.
pub fn write_csv<W: Write>(rows: &[ErrorRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    let opt = |x: Option<f64>| x.map(|v| fmt_sig(v, 10)).unwrap_or_default();
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.topology,
            r.n,
            r.seed,
            r.method,
            fmt_sig(r.load, 10),
            opt(r.error_abs),
            opt(r.error_pct),
            r.status.as_str()
        )?;
    }
    Ok(())
}

pub fn csv_string(rows: &[ErrorRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_metric() {
        assert_eq!(approx_error(&[0.3, 0.3], &[0.3, 0.3]).unwrap(), 0.0);
        assert!((approx_error(&[0.3, 0.3], &[0.25, 0.32]).unwrap() - 0.05).abs() < 1e-15);
        assert!(approx_error(&[0.3], &[0.3, 0.1]).is_err());
    }

    #[test]
    fn chordal_clique_rows_are_exact() {
        let g = generate(&Topology::Chordal6, 0).unwrap();
        let rows = sweep(&g, "chordal6", 0, &[Method::Clique], &[0.3, 0.5, 0.7, 0.9], Oracle::Exact).unwrap();
        assert_eq!(rows.len(), 4);
        for r in rows {
            assert_eq!(r.status, RowStatus::Ok);
            assert!(r.error_pct.unwrap() < 1e-7);
        }
    }

    #[test]
    fn complete_graph_at_full_load() {
        let g = generate(&Topology::Complete { n: 5 }, 0).unwrap();
        let rows = sweep(&g, "complete5", 0, &[Method::Bethe, Method::Clique], &[1.0], Oracle::Exact).unwrap();
        // s = 1/5 exhausts the clique: clique fugacities are undefined.
        assert_eq!(rows[1].method, Method::Clique);
        assert_eq!(rows[1].status, RowStatus::Infeasible);
        assert_eq!(rows[0].status, RowStatus::Ok);
    }

    #[test]
    fn sweep_rejects_bad_loads() {
        let g = generate(&Topology::Complete { n: 2 }, 0).unwrap();
        assert!(matches!(
            sweep(&g, "k2", 0, &[Method::Bethe], &[0.0], Oracle::Exact),
            Err(EvalError::Load(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let rows = vec![
            ErrorRow {
                topology: "grid4x4".into(),
                n: 16,
                seed: 0,
                method: Method::Bethe,
                load: 0.7,
                error_abs: Some(0.0775),
                error_pct: Some(22.142857142857142),
                status: RowStatus::Ok,
            },
            ErrorRow {
                topology: "grid4x4".into(),
                n: 16,
                seed: 0,
                method: Method::Clique,
                load: 1.0,
                error_abs: None,
                error_pct: None,
                status: RowStatus::Infeasible,
            },
        ];
        assert_eq!(
            csv_string(&rows),
            "topology,n,seed,method,load,error_abs,error_pct,status\n\
             grid4x4,16,0,bethe,0.7,0.0775,22.14285714,ok\n\
             grid4x4,16,0,clique,1,,,infeasible\n"
        );
    }

    #[test]
    fn single_random_graph_average_is_its_row() {
        let rows = random_rows(1, 12, 0.6, &[Method::Clique], 4).unwrap();
        let mean = random_average(1, 12, 0.6, Method::Clique, 4).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(Some(mean), rows[0].error_pct);
    }
}
