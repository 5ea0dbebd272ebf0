//! The maximum-entropy distribution on a chordless 4-cycle: closed form,
//! Newton solve and the entropy it maximizes.
//!
//! ```text
//! cargo run --example maxent_cycle
//! ```

use csma_raf::fugacity::{
    cycle4_marginals, cycle4_maxent_oracle, cycle4_ratio_closed, cycle4_schedule_probs, CYCLE4_SCHEDULES,
};

fn entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|x| x * x.ln()).sum::<f64>()
}

fn main() {
    // Rates around the cycle 0-1-2-3-0.
    let s = [0.20, 0.25, 0.30, 0.15];
    let lambda = cycle4_maxent_oracle(s).expect("feasible rates");
    println!("rates {s:?}");
    for k in 0..4 {
        let closed = cycle4_ratio_closed(s[k], s[(k + 1) % 4], s[(k + 3) % 4], s[(k + 2) % 4]).expect("feasible");
        println!("  position {k}: Newton λ = {:.12}, closed form {closed:.12}", lambda[k]);
    }
    println!("  marginals of the solution: {:?}", cycle4_marginals(lambda));

    let p = cycle4_schedule_probs(lambda);
    println!("\nschedule  probability");
    for (mask, q) in CYCLE4_SCHEDULES.iter().zip(&p) {
        println!("  {mask:04b}    {q:.6}");
    }

    // Shifting mass between single-link schedules, the diagonal pairs and
    // the idle schedule keeps every marginal but lowers the entropy.
    let mut q = p;
    let eps = 0.01;
    q[0] -= eps;
    q[1] += eps;
    q[3] += eps;
    q[5] -= eps;
    println!("\nentropy: maximizer {:.6}, perturbed {:.6}", entropy(&p), entropy(&q));
}
