//! Builds each topology family and prints its cliques, chordless 4-cycles
//! and DIMACS encoding.
//!
//! ```text
//! cargo run --example topologies
//! ```

use csma_raf::graph::dimacs::to_dimacs_string;
use csma_raf::graph::{chordless_4cycles, generate, is_chordal, maximal_cliques, Topology};

fn main() {
    let kinds = [
        Topology::Complete { n: 5 },
        Topology::Ring { n: 5 },
        Topology::Grid { rows: 3, cols: 3 },
        Topology::Fig8,
        Topology::Chordal6,
        Topology::RandomGeometric {
            n: 12,
            side: 3.0,
            radius: 0.8,
        },
    ];
    for kind in &kinds {
        let g = generate(kind, 7).expect("valid parameters");
        let cliques: Vec<String> = maximal_cliques(&g).iter().map(|r| r.to_string()).collect();
        let cycles: Vec<String> = chordless_4cycles(&g).iter().map(|c| c.region().to_string()).collect();
        println!("{}: n={} m={} chordal={}", kind.label(), g.n(), g.edge_count(), is_chordal(&g));
        println!("  maximal cliques: {}", cliques.join(" "));
        if !cycles.is_empty() {
            println!("  chordless 4-cycles: {}", cycles.join(" "));
        }
    }

    // Vertex ids are 0-based in the library and 1-based in DIMACS files.
    let g = generate(&Topology::Chordal6, 0).expect("fixed topology");
    print!("\n{}", to_dimacs_string(&g));
}
