//! The 4x4 grid, where adding chordless 4-cycles removes most of the Bethe
//! error.
//!
//! ```text
//! cargo run --example grid_cycle4 [load]
//! ```

use csma_raf::exact::{exact_marginals, max_symmetric_rate};
use csma_raf::fugacity::{cycle4_ratio_homogeneous, raf, ServiceRates};
use csma_raf::graph::{generate, Topology};
use csma_raf::regions::Method;

fn main() {
    let load: f64 = std::env::args().nth(1).map_or(0.7, |a| a.parse().expect("load must be a number"));
    let g = generate(&Topology::Grid { rows: 4, cols: 4 }, 0).expect("valid grid");
    let s = load * max_symmetric_rate(&g).expect("small graph");
    let rates = ServiceRates::uniform(g.n(), s).expect("feasible rate");
    println!("grid4x4, load {load}, target s = {s}");
    for m in Method::ALL {
        let v = raf(&g, m, &rates).expect("feasible rate");
        let got = exact_marginals(&g, &v).expect("small graph").marginals;
        let worst = got.iter().map(|x| (x - s).abs()).fold(0.0, f64::max);
        println!("  {m:7} error {:6.2}%", 100.0 * worst / s);
    }

    // Closed forms for the homogeneous grid: corner, border and interior
    // links, with root = -1 + 4s + sqrt(1 - 4s + 8s^2).
    let root = -1.0 + 4.0 * s + (1.0 - 4.0 * s + 8.0 * s * s).sqrt();
    let v = raf(&g, Method::Cycle4, &rates).expect("feasible rate");
    println!("\ncycle4 fugacities vs closed forms (square ratio λ = {:.6}):", cycle4_ratio_homogeneous(s).expect("s < 1/2"));
    for (link, degree) in [(0, 2), (1, 3), (5, 4)] {
        let want = match degree {
            2 => root / (2.0 - 4.0 * s),
            3 => root.powi(2) / (4.0 * s * (1.0 - 2.0 * s)),
            _ => root.powi(4) / (16.0 * (1.0 - s) * s.powi(3)),
        };
        println!("  link {link} (degree {degree}): exp(v) = {:.12}  closed form {want:.12}", v.as_slice()[link].exp());
    }
}
