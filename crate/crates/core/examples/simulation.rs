//! Runs the slotted CSMA chain and compares empirical service rates with
//! the exact Gibbs marginals.
//!
//! ```text
//! cargo run --release --example simulation [slots]
//! ```

use csma_raf::exact::{exact_marginals, max_symmetric_rate};
use csma_raf::fugacity::{raf, ServiceRates};
use csma_raf::graph::{generate, Topology};
use csma_raf::regions::Method;
use csma_raf::sampler::{simulate, simulate_traced};

fn main() {
    let slots: u64 = std::env::args().nth(1).map_or(2_000_000, |a| a.parse().expect("slots must be an integer"));
    let g = generate(&Topology::Fig8, 0).expect("fixed topology");
    let s = 0.6 * max_symmetric_rate(&g).expect("small graph");
    let v = raf(&g, Method::Clique, &ServiceRates::uniform(g.n(), s).expect("feasible")).expect("feasible");

    let exact = exact_marginals(&g, &v).expect("small graph").marginals;
    let empirical = simulate(&g, &v, slots, slots / 100, 1).expect("slots > burn-in");
    println!("fig8, clique fugacities for s = {s:.4}, {slots} slots");
    println!("link   target   exact    simulated");
    for i in 0..g.n() {
        println!("{i:4}   {s:.4}   {:.4}   {:.4}", exact[i], empirical[i]);
    }

    // The trace lists the active set of every slot as a hex bit mask.
    let mut trace = Vec::new();
    simulate_traced(&g, &v, 8, 0, 1, &mut trace).expect("in-memory trace");
    print!("\nfirst slots:\n{}", String::from_utf8(trace).expect("ascii"));
}
