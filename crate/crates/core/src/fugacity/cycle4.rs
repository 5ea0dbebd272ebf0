//! Maximum-entropy distributions on a chordless 4-cycle.
//!
//! Positions `0-1-2-3-0` go around the cycle, so `(0, 2)` and `(1, 3)` are
//! the diagonals. The locally feasible schedules are the empty schedule, the
//! four singletons and the two diagonal pairs. With only singleton marginals
//! constrained, the entropy maximizer has product form
//! `b(x) ∝ Π λ_k^{x_k}`, so `b(x^k) / b(0) = λ_k`.

use nalgebra::{Matrix4, Vector4};

use super::FugacityError;

/// `b(x^i) / b(0)` in closed form.
///
/// `si` is the rate of the vertex itself, `sa` and `sb` those of its two
/// cycle neighbors and `sd` that of the opposite (diagonal) vertex.
pub fn cycle4_ratio_closed(si: f64, sa: f64, sb: f64, sd: f64) -> Result<f64, FugacityError> {
    let den = 2.0 * (si + sa - 1.0) * (si + sb - 1.0);
    if den == 0.0 {
        return Err(FugacityError::DegenerateDenominator);
    }
    let a = si * (sa + sb - sd - 1.0) + sa * (sb + sd - 1.0) + (sb - 1.0) * (sd - 1.0);
    let disc = a * a + 4.0 * si * sd * (si + sd - 1.0) * (sa + sb - 1.0);
    if disc < 0.0 {
        return Err(FugacityError::Domain(format!(
            "negative discriminant {disc:.3e} in the 4-cycle closed form"
        )));
    }
    let rest = -2.0 * si * si - si * (sa + sb + sd - 3.0) - sa * sb - sa * sd + sa - sb * sd + sb + sd - 1.0;
    Ok((disc.sqrt() + rest) / den)
}

/// Homogeneous case `s_k = s`: `λ = (−1 + 4s + √(1 − 4s + 8s²)) / (2 − 4s)`.
pub fn cycle4_ratio_homogeneous(s: f64) -> Result<f64, FugacityError> {
    if !(s > 0.0 && s < 0.5) {
        return Err(FugacityError::Domain(format!(
            "homogeneous 4-cycle rate must lie in (0, 1/2), got {s}"
        )));
    }
    Ok((-1.0 + 4.0 * s + (1.0 - 4.0 * s + 8.0 * s * s).sqrt()) / (2.0 - 4.0 * s))
}

/// Forward map of the homogeneous case: `s = (λ² + λ) / (1 + 2λ² + 4λ)`.
pub fn cycle4_homogeneous_rate(lambda: f64) -> f64 {
    (lambda * lambda + lambda) / (1.0 + 2.0 * lambda * lambda + 4.0 * lambda)
}

/// Probabilities of the seven feasible schedules under `b ∝ Π e^{θ_k x_k}`,
/// in the order `0, e0, e1, e2, e3, e0+e2, e1+e3`.
fn schedule_probs(theta: &[f64; 4]) -> [f64; 7] {
    let logw = [
        0.0,
        theta[0],
        theta[1],
        theta[2],
        theta[3],
        theta[0] + theta[2],
        theta[1] + theta[3],
    ];
    let max = logw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w = logw.map(|x| (x - max).exp());
    let z: f64 = w.iter().sum();
    w.map(|x| x / z)
}

/// Singleton marginals of the product-form distribution with ratios `lambda`.
pub fn cycle4_marginals(lambda: [f64; 4]) -> [f64; 4] {
    marginals_from_probs(&schedule_probs(&lambda.map(f64::ln)))
}

fn marginals_from_probs(p: &[f64; 7]) -> [f64; 4] {
    [p[1] + p[5], p[2] + p[6], p[3] + p[5], p[4] + p[6]]
}

/// Probability vector over the seven feasible schedules (same order as the
/// internal parameterization) for ratios `lambda`.
pub fn cycle4_schedule_probs(lambda: [f64; 4]) -> [f64; 7] {
    schedule_probs(&lambda.map(f64::ln))
}

/// Local schedules in the order used by [`cycle4_schedule_probs`], as bit
/// masks over cycle positions.
pub const CYCLE4_SCHEDULES: [u32; 7] = [0b0000, 0b0001, 0b0010, 0b0100, 0b1000, 0b0101, 0b1010];

const MAX_ITERS: usize = 200;
const TOL: f64 = 1e-12;
const CLIP: (f64, f64) = (1e-6, 1e6);
const MAX_STEP: f64 = 2.0;
const POLISH_STEPS: usize = 3;

fn residual(theta: &[f64; 4], s: &[f64; 4]) -> ([f64; 4], f64) {
    let m = marginals_from_probs(&schedule_probs(theta));
    let r = [m[0] - s[0], m[1] - s[1], m[2] - s[2], m[3] - s[3]];
    let norm = r.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    (r, norm)
}

fn dual(theta: &[f64; 4], s: &[f64; 4]) -> f64 {
    let logw = [
        0.0,
        theta[0],
        theta[1],
        theta[2],
        theta[3],
        theta[0] + theta[2],
        theta[1] + theta[3],
    ];
    let max = logw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_z = max + logw.iter().map(|x| (x - max).exp()).sum::<f64>().ln();
    log_z - (0..4).map(|k| s[k] * theta[k]).sum::<f64>()
}

/// Solves for the product-form ratios whose marginals equal `s`, by damped
/// Newton iteration on `θ = ln λ`.
///
/// Starts from `λ_k = s_k / (1 − Σ s)` clipped to `[1e-6, 1e6]`, caps each
/// step at 2 in `θ`, halves it until the dual objective decreases enough,
/// and stops once `‖marginals − s‖_∞ < 1e-12`, after up to three more
/// full steps while the residual still shrinks. Failure to converge within
/// 200 iterations means no such distribution exists (or it is numerically
/// out of reach).
pub fn cycle4_maxent_oracle(s: [f64; 4]) -> Result<[f64; 4], FugacityError> {
    if s.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
        return Err(FugacityError::InvalidRates(format!(
            "4-cycle rates must lie in (0, 1), got {s:?}"
        )));
    }
    let slack = 1.0 - s.iter().sum::<f64>();
    let mut theta = s.map(|x| {
        let guess = if slack > 0.0 { x / slack } else { CLIP.0 };
        guess.clamp(CLIP.0, CLIP.1).ln()
    });
    let (mut r, mut norm) = residual(&theta, &s);
    let mut polish = 0;
    for _ in 0..MAX_ITERS {
        if norm < TOL {
            // Near the feasibility boundary λ is very sensitive to the
            // marginals, so keep going while Newton still makes progress.
            polish += 1;
            if polish > POLISH_STEPS {
                break;
            }
        }
        let p = schedule_probs(&theta);
        let m = marginals_from_probs(&p);
        // Covariance of the sufficient statistics.
        let mut jac = Matrix4::<f64>::zeros();
        for k in 0..4 {
            for l in 0..4 {
                let joint = if k == l {
                    m[k]
                } else if (k + 2) % 4 == l {
                    if k % 2 == 0 {
                        p[5]
                    } else {
                        p[6]
                    }
                } else {
                    0.0
                };
                jac[(k, l)] = joint - m[k] * m[l];
            }
        }
        let rhs = -Vector4::new(r[0], r[1], r[2], r[3]);
        let Some(mut step) = jac.lu().solve(&rhs) else {
            break;
        };
        // Far from the solution the Jacobian is nearly singular and full
        // Newton steps overshoot into a saturated corner.
        let longest = step.amax();
        if longest > MAX_STEP {
            step *= MAX_STEP / longest;
        }
        // Armijo backtracking on the convex dual `ln Z(θ) − s·θ`, whose
        // gradient is the residual and whose Hessian is `jac`.
        let f0 = dual(&theta, &s);
        let slope: f64 = (0..4).map(|k| r[k] * step[k]).sum();
        let mut t = 1.0;
        let mut improved = false;
        while t > 1e-12 {
            let trial = [
                theta[0] + t * step[0],
                theta[1] + t * step[1],
                theta[2] + t * step[2],
                theta[3] + t * step[3],
            ];
            if trial.iter().all(|x| x.is_finite()) {
                let (tr, tn) = residual(&trial, &s);
                let ft = dual(&trial, &s);
                let accept = if polish > 0 {
                    tn < norm
                } else {
                    ft <= f0 + 1e-4 * t * slope || tn < norm
                };
                if accept {
                    theta = trial;
                    r = tr;
                    norm = tn;
                    improved = true;
                    break;
                }
            }
            if polish > 0 {
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    if norm < TOL {
        return Ok(theta.map(f64::exp));
    }
    Err(FugacityError::NoConvergence {
        iterations: MAX_ITERS,
        residual: norm,
    })
}
