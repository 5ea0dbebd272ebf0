//! Mean error over random geometric graphs (n points in a 3 x 3 square,
//! linked within distance 0.8).
//!
//! ```text
//! cargo run --release --example random_table [count] [n] [load]
//! ```

use csma_raf::eval::{mean_error_pct, random_rows};
use csma_raf::regions::Method;

fn main() {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map_or(30, |a| a.parse().expect("count"));
    let n: usize = args.next().map_or(20, |a| a.parse().expect("n"));
    let load: f64 = args.next().map_or(0.8, |a| a.parse().expect("load"));

    let rows = random_rows(count, n, load, &Method::ALL, 0).expect("graphs within the exact-oracle limit");
    println!("{count} random graphs, n = {n}, load = {load}");
    for m in Method::ALL {
        match mean_error_pct(&rows, m) {
            Ok(mean) => println!("  {m:7} mean error {mean:6.2}%"),
            Err(e) => println!("  {m:7} {e}"),
        }
    }
    let worst = rows
        .iter()
        .filter_map(|r| r.error_pct.map(|e| (e, r)))
        .max_by(|a, b| a.0.total_cmp(&b.0));
    if let Some((e, r)) = worst {
        println!("  worst row: seed {} {} {e:.2}%", r.seed, r.method);
    }
}
