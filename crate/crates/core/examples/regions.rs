//! Region collections and their counting numbers.
//!
//! ```text
//! cargo run --example regions
//! ```

use csma_raf::graph::{generate, Topology};
use csma_raf::regions::{build_collection, cvm_levels, local_collection, validate, Method};

fn main() {
    // Link 1 of the eight-link example (link 2 in 1-based numbering) sits in
    // three maximal cliques; their intersections give the lower levels.
    let fig8 = generate(&Topology::Fig8, 0).expect("fixed topology");
    let local = local_collection(&fig8, 1, Method::Clique);
    println!("fig8, regions seen by link 1:");
    print!("{}", local.dump());
    let maximal: Vec<_> = local.regions().iter().filter(|r| local.strict_supersets_of(local.index_of(r).unwrap()).is_empty()).cloned().collect();
    for (l, level) in cvm_levels(&maximal).iter().enumerate() {
        let names: Vec<String> = level.iter().map(|r| r.to_string()).collect();
        println!("  level {l}: {}", names.join(" "));
    }

    // On a grid every interior link sees four squares (c = 1), four edges
    // (c = -1) and itself (c = 1).
    let grid = generate(&Topology::Grid { rows: 4, cols: 4 }, 0).expect("valid grid");
    let c = build_collection(&grid, Method::Cycle4);
    println!("\ngrid4x4 cycle4, regions containing link 5:");
    for k in c.containing(5) {
        println!("  {} c={}", c.region(k), c.counting(k));
    }

    for m in Method::ALL {
        let c = build_collection(&fig8, m);
        let report = validate(&c, &fig8);
        println!("fig8 {m}: {} regions, valid = {}", c.len(), report.is_valid());
    }
}
