//! Clique-based fugacities are exact on chordal graphs and approximate
//! elsewhere.
//!
//! ```text
//! cargo run --example clique_fugacities
//! ```

use csma_raf::exact::{exact_marginals, max_symmetric_rate};
use csma_raf::fugacity::{bethe_raf, clique_raf, ServiceRates};
use csma_raf::graph::{generate, Topology};
use csma_raf::regions::{build_collection, Method};

fn main() {
    for kind in [Topology::Chordal6, Topology::Fig8, Topology::Complete { n: 5 }] {
        let g = generate(&kind, 0).expect("fixed topology");
        let target = 0.7 * max_symmetric_rate(&g).expect("small graph");
        let s = ServiceRates::uniform(g.n(), target).expect("feasible rate");
        let clique = clique_raf(&build_collection(&g, Method::Clique), &s).expect("feasible rate");
        let bethe = bethe_raf(&g, &s).expect("feasible rate");
        println!("{} at s = {target:.4}", kind.label());
        for (name, v) in [("clique", &clique), ("bethe", &bethe)] {
            let got = exact_marginals(&g, v).expect("small graph").marginals;
            let worst = got.iter().map(|x| (x - target).abs()).fold(0.0, f64::max);
            let vs: Vec<String> = v.as_slice().iter().map(|x| format!("{x:.3}")).collect();
            println!("  {name:6} v = [{}]  max |s - s_achieved| = {worst:.2e}", vs.join(", "));
        }
    }

    // On a complete graph the single clique gives v_i = ln(s_i / (1 - Σ s)).
    let g = generate(&Topology::Complete { n: 3 }, 0).expect("fixed topology");
    let s = ServiceRates::new(vec![0.1, 0.2, 0.3]).expect("valid rates");
    let v = clique_raf(&build_collection(&g, Method::Clique), &s).expect("feasible");
    println!("\ncomplete3, s = (0.1, 0.2, 0.3): v = {:?}", v.as_slice());
    println!("  ln(s_i / 0.4)          = {:?}", s.as_slice().iter().map(|x| (x / 0.4f64).ln()).collect::<Vec<_>>());
}
