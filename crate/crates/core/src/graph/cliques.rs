use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use super::{ConflictGraph, Region};

/// All inclusion-maximal cliques, sorted. Isolated vertices come back as
/// singleton cliques.
///
/// Bron–Kerbosch with Tomita pivoting: the pivot is the vertex of `P ∪ X`
/// with the most neighbors in `P`.
pub fn maximal_cliques(g: &ConflictGraph) -> Vec<Region> {
    let n = g.n();
    let mut out = Vec::new();
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let mut r = Vec::new();
    expand(g, &mut r, p, x, &mut out);
    out.sort();
    out
}

fn expand(
    g: &ConflictGraph,
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Region>,
) {
    if p.is_clear() {
        if x.is_clear() && !r.is_empty() {
            out.push(Region::new(r.clone()));
        }
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| g.neighbor_set(u).intersection(&p).count())
        .expect("P is nonempty");
    let mut candidates = p.clone();
    candidates.difference_with(g.neighbor_set(pivot));
    for v in candidates.ones() {
        let nv = g.neighbor_set(v);
        let mut p_next = p.clone();
        p_next.intersect_with(nv);
        let mut x_next = x.clone();
        x_next.intersect_with(nv);
        r.push(v);
        expand(g, r, p_next, x_next, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// Induced (chordless) 4-cycle together with its cyclic vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle4 {
    region: Region,
    /// `order[k]` is adjacent to `order[k ± 1 mod 4]`; `order[k]` and
    /// `order[k + 2]` are the non-adjacent diagonal.
    order: [usize; 4],
}

impl Cycle4 {
    /// Recovers the cycle structure of `vertices` in `g`, or `None` when the
    /// induced subgraph is not exactly a 4-cycle.
    pub fn from_vertices(g: &ConflictGraph, vertices: &Region) -> Option<Self> {
        let vs = vertices.vertices();
        if vs.len() != 4 {
            return None;
        }
        let a = vs[0];
        let diag: Vec<usize> = vs[1..].iter().copied().filter(|&v| !g.has_edge(a, v)).collect();
        if diag.len() != 1 {
            return None;
        }
        let c = diag[0];
        let rest: Vec<usize> = vs[1..].iter().copied().filter(|&v| v != c).collect();
        let (b, d) = (rest[0], rest[1]);
        let ok = g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && g.has_edge(d, a)
            && !g.has_edge(b, d);
        ok.then(|| Self {
            region: vertices.clone(),
            order: [a, b, c, d],
        })
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn order(&self) -> [usize; 4] {
        self.order
    }

    fn position(&self, v: usize) -> usize {
        self.order
            .iter()
            .position(|&w| w == v)
            .unwrap_or_else(|| panic!("vertex {v} is not on the cycle {}", self.region))
    }

    /// The two cycle neighbors of `v`.
    pub fn neighbors_of(&self, v: usize) -> (usize, usize) {
        let k = self.position(v);
        (self.order[(k + 1) % 4], self.order[(k + 3) % 4])
    }

    pub fn diagonal_of(&self, v: usize) -> usize {
        self.order[(self.position(v) + 2) % 4]
    }
}

/// Every chordless 4-cycle, deduplicated and sorted by vertex set.
///
/// For each non-adjacent pair `(u, w)` and each non-adjacent pair `{v, x}`
/// of their common neighbors, `u-v-w-x` is an induced 4-cycle.
pub fn chordless_4cycles(g: &ConflictGraph) -> Vec<Cycle4> {
    let n = g.n();
    let mut found: BTreeMap<Region, Cycle4> = BTreeMap::new();
    for u in 0..n {
        for w in u + 1..n {
            if g.has_edge(u, w) {
                continue;
            }
            let common: Vec<usize> = g.neighbor_set(u).intersection(g.neighbor_set(w)).collect();
            for (k, &v) in common.iter().enumerate() {
                for &x in &common[k + 1..] {
                    if g.has_edge(v, x) {
                        continue;
                    }
                    let region = Region::new(vec![u, v, w, x]);
                    found.entry(region.clone()).or_insert(Cycle4 {
                        region,
                        order: [u, v, w, x],
                    });
                }
            }
        }
    }
    found.into_values().collect()
}
