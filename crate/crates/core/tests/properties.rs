//! Invariants checked against brute-force oracles on small random graphs.

use std::collections::BTreeSet;

use proptest::prelude::*;

use csma_raf::exact::{exact_marginals, max_symmetric_rate};
use csma_raf::fugacity::{
    bethe_raf, clique_raf, clique_ratios, combine_raf, cycle4_schedule_probs, cycle4_maxent_oracle, raf, Fugacities,
    ServiceRates, CYCLE4_SCHEDULES,
};
use csma_raf::graph::dimacs::{parse_dimacs, to_dimacs_string};
use csma_raf::graph::{chordless_4cycles, generate, is_chordal, maximal_cliques, ConflictGraph, Region, Topology};
use csma_raf::regions::{build_collection, cvm_closure, validate, Method};

fn graph_from_bits(n: usize, bits: &[bool]) -> ConflictGraph {
    let mut g = ConflictGraph::new(n).unwrap();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = ConflictGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn is_clique_mask(g: &ConflictGraph, mask: u32) -> bool {
    let vs: Vec<usize> = (0..g.n()).filter(|&v| mask & (1 << v) != 0).collect();
    g.is_clique(&vs)
}

fn brute_maximal_cliques(g: &ConflictGraph) -> BTreeSet<Vec<usize>> {
    let n = g.n();
    let cliques: Vec<u32> = (1u32..1 << n).filter(|&m| is_clique_mask(g, m)).collect();
    cliques
        .iter()
        .filter(|&&m| !cliques.iter().any(|&o| o != m && o & m == m))
        .map(|&m| (0..n).filter(|&v| m & (1 << v) != 0).collect())
        .collect()
}

/// Induced 4-cycles by checking every 4-subset for exactly the cycle edge
/// pattern: four edges, every vertex of degree two.
fn brute_chordless_4cycles(g: &ConflictGraph) -> BTreeSet<Vec<usize>> {
    let n = g.n();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let vs = [a, b, c, d];
                    let deg: Vec<usize> = vs
                        .iter()
                        .map(|&x| vs.iter().filter(|&&y| g.has_edge(x, y)).count())
                        .collect();
                    if deg.iter().all(|&k| k == 2) {
                        out.insert(vs.to_vec());
                    }
                }
            }
        }
    }
    out
}

/// Chordal iff vertices can be removed one at a time, each simplicial in
/// what is left.
fn brute_chordal(g: &ConflictGraph) -> bool {
    let mut alive: Vec<usize> = (0..g.n()).collect();
    while !alive.is_empty() {
        let pos = alive.iter().position(|&v| {
            let nb: Vec<usize> = alive.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            g.is_clique(&nb)
        });
        match pos {
            Some(p) => {
                alive.remove(p);
            }
            None => return false,
        }
    }
    true
}

/// Marginals by filtering all `2^n` subsets.
fn naive_marginals(g: &ConflictGraph, v: &[f64]) -> Vec<f64> {
    let n = g.n();
    let edges = g.edges();
    let mut z = 0.0;
    let mut m = vec![0.0; n];
    for mask in 0u32..1 << n {
        if edges.iter().any(|&(a, b)| mask & (1 << a) != 0 && mask & (1 << b) != 0) {
            continue;
        }
        let w: f64 = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| v[i]).sum::<f64>().exp();
        z += w;
        for (i, mi) in m.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *mi += w;
            }
        }
    }
    m.iter().map(|x| x / z).collect()
}

/// Random chordal graph: each new vertex is joined to a clique of earlier
/// ones, so it is simplicial when added.
fn chordal_from_choices(n: usize, picks: &[(usize, u32)]) -> ConflictGraph {
    let mut g = ConflictGraph::new(n).unwrap();
    for v in 1..n {
        let (anchor, mask) = picks[v];
        let anchor = anchor % v;
        let mut clique = vec![anchor];
        let nb: Vec<usize> = g.neighbors(anchor).filter(|&w| w < v).collect();
        for (k, &w) in nb.iter().enumerate() {
            if mask & (1 << k) != 0 && clique.iter().all(|&c| g.has_edge(c, w)) {
                clique.push(w);
            }
        }
        for w in clique {
            g.add_edge(w, v).unwrap();
        }
    }
    g
}

fn has_triangle(g: &ConflictGraph) -> bool {
    g.edges()
        .iter()
        .any(|&(u, v)| g.neighbors(u).any(|w| w != v && g.has_edge(v, w)))
}

fn uniform_target(g: &ConflictGraph, load: f64) -> ServiceRates {
    ServiceRates::uniform(g.n(), load * max_symmetric_rate(g).unwrap()).unwrap()
}

fn entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|x| x * x.ln()).sum::<f64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn maximal_cliques_match_subset_enumeration(g in arb_graph(12)) {
        let got: BTreeSet<Vec<usize>> = maximal_cliques(&g).iter().map(|r| r.vertices().to_vec()).collect();
        prop_assert_eq!(got, brute_maximal_cliques(&g));
    }

    #[test]
    fn chordless_cycles_match_subset_enumeration(g in arb_graph(12)) {
        let got: BTreeSet<Vec<usize>> = chordless_4cycles(&g).iter().map(|c| c.region().vertices().to_vec()).collect();
        prop_assert_eq!(got, brute_chordless_4cycles(&g));
    }

    #[test]
    fn chordality_matches_elimination(g in arb_graph(10)) {
        prop_assert_eq!(is_chordal(&g), brute_chordal(&g));
    }

    #[test]
    fn exact_matches_naive(g in arb_graph(12), seed in proptest::collection::vec(-3.0f64..3.0, 12)) {
        let v = Fugacities::new(seed[..g.n()].to_vec()).unwrap();
        let exact = exact_marginals(&g, &v).unwrap();
        for (a, b) in exact.marginals.iter().zip(naive_marginals(&g, v.as_slice())) {
            prop_assert!((a - b).abs() < 1e-12, "{} vs {}", a, b);
        }
    }

    #[test]
    fn raising_a_fugacity_helps_it_and_not_its_neighbors(
        g in arb_graph(9),
        base in proptest::collection::vec(-2.0f64..2.0, 9),
        pick in 0usize..9,
        bump in 0.05f64..2.0,
    ) {
        let i = pick % g.n();
        let v = base[..g.n()].to_vec();
        let mut w = v.clone();
        w[i] += bump;
        let before = exact_marginals(&g, &Fugacities::new(v).unwrap()).unwrap().marginals;
        let after = exact_marginals(&g, &Fugacities::new(w).unwrap()).unwrap().marginals;
        prop_assert!(after[i] > before[i]);
        for j in g.neighbors(i) {
            prop_assert!(after[j] <= before[j] + 1e-15);
        }
    }

    #[test]
    fn fugacities_are_permutation_equivariant(
        g in arb_graph(10),
        perm_keys in proptest::collection::vec(any::<u32>(), 10),
        rates in proptest::collection::vec(0.2f64..1.0, 10),
    ) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&k| perm_keys[k]);
        let h = g.relabel(&perm);
        let smax = max_symmetric_rate(&g).unwrap();
        let s: Vec<f64> = rates[..n].iter().map(|r| r * 0.8 * smax).collect();
        let mut s_h = vec![0.0; n];
        for (old, &new) in perm.iter().enumerate() {
            s_h[new] = s[old];
        }
        for m in Method::ALL {
            let a = raf(&g, m, &ServiceRates::new(s.clone()).unwrap());
            let b = raf(&h, m, &ServiceRates::new(s_h.clone()).unwrap());
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    for (old, &new) in perm.iter().enumerate() {
                        prop_assert!((a.as_slice()[old] - b.as_slice()[new]).abs() < 1e-12);
                    }
                }
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
            }
        }
    }

    #[test]
    fn combiner_reproduces_clique_formula(g in arb_graph(12), rates in proptest::collection::vec(0.05f64..1.0, 12)) {
        let c = build_collection(&g, Method::Clique);
        let smax = max_symmetric_rate(&g).unwrap();
        let s = ServiceRates::new(rates[..g.n()].iter().map(|r| r * 0.9 * smax).collect()).unwrap();
        let ratios = clique_ratios(c.regions().iter().cloned(), &s).unwrap();
        let a = combine_raf(&c, &ratios).unwrap();
        let b = clique_raf(&c, &s).unwrap();
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            prop_assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn clique_fugacities_are_exact_on_chordal_graphs(
        n in 1usize..12,
        picks in proptest::collection::vec((any::<usize>(), any::<u32>()), 12),
        load in 0.05f64..0.95,
    ) {
        let g = chordal_from_choices(n, &picks);
        prop_assert!(is_chordal(&g));
        let s = uniform_target(&g, load);
        let v = clique_raf(&build_collection(&g, Method::Clique), &s).unwrap();
        let got = exact_marginals(&g, &v).unwrap().marginals;
        for (a, b) in got.iter().zip(s.as_slice()) {
            prop_assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
        }
    }

    #[test]
    fn bethe_equals_clique_without_triangles(g in arb_graph(12), load in 0.05f64..0.95) {
        prop_assume!(!has_triangle(&g));
        let s = uniform_target(&g, load);
        let a = bethe_raf(&g, &s).unwrap();
        let b = clique_raf(&build_collection(&g, Method::Clique), &s).unwrap();
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn closure_is_idempotent(g in arb_graph(12)) {
        let once = cvm_closure(&maximal_cliques(&g));
        prop_assert_eq!(cvm_closure(&once), once);
    }

    #[test]
    fn collections_are_valid(g in arb_graph(12)) {
        for m in Method::ALL {
            let c = build_collection(&g, m);
            let report = validate(&c, &g);
            prop_assert!(report.is_valid(), "{:?}: {:?}", m, report.violations);
        }
    }

    #[test]
    fn dimacs_round_trips(g in arb_graph(16)) {
        prop_assert_eq!(parse_dimacs(&to_dimacs_string(&g)).unwrap(), g);
    }

    #[test]
    fn maxent_beats_every_same_marginal_perturbation(
        s in proptest::array::uniform4(0.02f64..0.45),
        e1 in -1.0f64..1.0,
        e2 in -1.0f64..1.0,
    ) {
        prop_assume!((0..4).all(|k| s[k] + s[(k + 1) % 4] < 0.95));
        let lambda = cycle4_maxent_oracle(s).unwrap();
        let p = cycle4_schedule_probs(lambda);
        // Null space of (normalization, four marginals) over the seven
        // schedules: trade singles for the diagonal pair and the empty set.
        let d1 = [1.0, -1.0, 0.0, -1.0, 0.0, 1.0, 0.0];
        let d2 = [1.0, 0.0, -1.0, 0.0, -1.0, 0.0, 1.0];
        let q: Vec<f64> = (0..7).map(|k| p[k] + 0.01 * (e1 * d1[k] + e2 * d2[k])).collect();
        prop_assume!(q.iter().all(|&x| x >= 0.0));
        prop_assume!(e1.abs() + e2.abs() > 1e-3);
        for (v, _) in s.iter().enumerate() {
            let marginal: f64 = CYCLE4_SCHEDULES.iter().zip(&q).filter(|(m, _)| *m & (1 << v) != 0).map(|(_, x)| x).sum();
            prop_assert!((marginal - s[v]).abs() < 1e-12);
        }
        prop_assert!(entropy(&p) > entropy(&q));
    }
}

#[test]
fn random_geometric_collections_are_valid() {
    for seed in 0..30 {
        let g = generate(&Topology::RandomGeometric { n: 20, side: 3.0, radius: 0.8 }, seed).unwrap();
        for m in Method::ALL {
            let report = validate(&build_collection(&g, m), &g);
            assert!(report.is_valid(), "seed {seed} {m}: {:?}", report.violations);
        }
    }
}

#[test]
fn fig8_is_not_chordal_but_chordal6_is() {
    let fig8 = generate(&Topology::Fig8, 0).unwrap();
    let chordal6 = generate(&Topology::Chordal6, 0).unwrap();
    assert_eq!(is_chordal(&fig8), brute_chordal(&fig8));
    assert!(is_chordal(&chordal6) && brute_chordal(&chordal6));
    let four = generate(&Topology::Ring { n: 4 }, 0).unwrap();
    assert!(!is_chordal(&four));
    assert_eq!(
        chordless_4cycles(&four).iter().map(|c| c.region().clone()).collect::<Vec<_>>(),
        vec![Region::new(vec![0, 1, 2, 3])]
    );
}
