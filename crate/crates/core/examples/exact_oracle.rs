//! Exact service rates by enumerating independent sets, and the largest
//! symmetric rate a graph supports.
//!
//! ```text
//! cargo run --example exact_oracle
//! ```

use csma_raf::exact::{enumerate_independent_sets, exact_marginals, fractional_chromatic_number};
use csma_raf::fugacity::Fugacities;
use csma_raf::graph::{generate, ConflictGraph, Topology};

fn main() {
    let path = ConflictGraph::from_edges(3, &[(0, 1), (1, 2)]).expect("valid edges");
    let sets: Vec<String> = enumerate_independent_sets(&path)
        .expect("small graph")
        .map(|m| format!("{m:03b}"))
        .collect();
    println!("path3 schedules: {}", sets.join(" "));
    let e = exact_marginals(&path, &Fugacities::zeros(3)).expect("small graph");
    println!("v = 0: Z = {:.1}, rates = {:?}", e.log_z.exp(), e.marginals);

    let e = exact_marginals(&path, &Fugacities::new(vec![1.0, 0.0, -1.0]).expect("finite")).expect("small graph");
    println!("v = (1, 0, -1): rates = {:?}", e.marginals);

    println!();
    for kind in [
        Topology::Complete { n: 4 },
        Topology::Ring { n: 5 },
        Topology::Ring { n: 7 },
        Topology::Grid { rows: 4, cols: 4 },
        Topology::Fig8,
    ] {
        let g = generate(&kind, 0).expect("fixed topology");
        let chi = fractional_chromatic_number(&g).expect("small graph");
        let count = enumerate_independent_sets(&g).expect("small graph").count();
        println!("{:10} {count:5} schedules, fractional chromatic number {chi:.4}, max symmetric rate {:.4}", kind.label(), 1.0 / chi);
    }
}
