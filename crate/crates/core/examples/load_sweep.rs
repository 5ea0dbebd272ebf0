//! Approximation error of every method across loads, as CSV.
//!
//! ```text
//! cargo run --release --example load_sweep > sweep.csv
//! ```

use csma_raf::eval::{sweep, write_csv, Oracle};
use csma_raf::graph::{generate, Topology};
use csma_raf::regions::Method;

fn main() {
    let loads = [0.1, 0.3, 0.5, 0.7, 0.9];
    let mut rows = Vec::new();
    for kind in [
        Topology::Chordal6,
        Topology::Fig8,
        Topology::Grid { rows: 4, cols: 4 },
        Topology::Ring { n: 8 },
        Topology::Complete { n: 5 },
    ] {
        let g = generate(&kind, 0).expect("fixed topology");
        rows.extend(sweep(&g, &kind.label(), 0, &Method::ALL, &loads, Oracle::Exact).expect("small graph"));
    }
    write_csv(&rows, std::io::stdout().lock()).expect("stdout");
}
