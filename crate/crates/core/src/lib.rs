//! Region-approximated fugacities for CSMA scheduling.
//!
//! Given a conflict graph and target per-link service rates, this crate
//! computes CSMA fugacities from region-based free-energy approximations
//! (Bethe, clique/Kikuchi, clique plus chordless 4-cycles) and measures how
//! close they come to the targets, either exactly by enumerating independent
//! sets or by simulating the slotted CSMA chain.
//!
//! ```
//! use csma_raf::graph::{generate, Topology};
//! use csma_raf::regions::{build_collection, Method};
//! use csma_raf::fugacity::{clique_raf, ServiceRates};
//! use csma_raf::exact::exact_marginals;
//!
//! let g = generate(&Topology::Chordal6, 0).unwrap();
//! let regions = build_collection(&g, Method::Clique);
//! let s = ServiceRates::uniform(g.n(), 0.2).unwrap();
//! let v = clique_raf(&regions, &s).unwrap();
//! let exact = exact_marginals(&g, &v).unwrap();
//! assert!(exact.marginals.iter().all(|m| (m - 0.2).abs() < 1e-9));
//! ```

pub mod eval;
pub mod exact;
pub mod fugacity;
pub mod graph;
pub mod io;
pub mod regions;
pub mod rng;
pub mod sampler;
