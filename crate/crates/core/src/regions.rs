//! Region collections with counting numbers.
//!
//! A collection is valid when every vertex is covered and, for every vertex
//! `i`, the counting numbers of the regions containing `i` sum to one. The
//! Bethe and clique collections additionally satisfy the Kikuchi condition:
//! for every region `r`, the counting numbers of all regions `q ⊇ r` sum to
//! one.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::graph::{chordless_4cycles, maximal_cliques, ConflictGraph, Region};

/// Which family of regions a collection is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Edges and vertices.
    Bethe,
    /// Maximal cliques closed under intersection.
    Clique,
    /// Chordless 4-cycles and their edges on top of the clique collection.
    Cycle4,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Bethe, Method::Clique, Method::Cycle4];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Bethe => "bethe",
            Method::Clique => "clique",
            Method::Cycle4 => "cycle4",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bethe" => Ok(Method::Bethe),
            "clique" => Ok(Method::Clique),
            "cycle4" => Ok(Method::Cycle4),
            other => Err(format!("unknown method `{other}` (expected bethe, clique or cycle4)")),
        }
    }
}

/// Regions with integer counting numbers and their strict containment
/// relation. Regions are ordered by decreasing size, then lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionCollection {
    method: Method,
    n: usize,
    regions: Vec<Region>,
    counting: Vec<i64>,
    supersets: Vec<Vec<usize>>,
}

fn size_desc(a: &Region, b: &Region) -> std::cmp::Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

fn strict_supersets(regions: &[Region]) -> Vec<Vec<usize>> {
    regions
        .iter()
        .map(|r| {
            regions
                .iter()
                .enumerate()
                .filter(|(_, q)| r.is_proper_subset(q))
                .map(|(k, _)| k)
                .collect()
        })
        .collect()
}

impl RegionCollection {
    /// Assembles a collection from explicit regions and counting numbers,
    /// without checking any axiom. Duplicate regions keep the last count.
    pub fn from_parts(n: usize, method: Method, parts: Vec<(Region, i64)>) -> Self {
        let mut map: HashMap<Region, i64> = HashMap::new();
        for (r, c) in parts {
            map.insert(r, c);
        }
        let mut pairs: Vec<(Region, i64)> = map.into_iter().collect();
        pairs.sort_by(|a, b| size_desc(&a.0, &b.0));
        let (regions, counting): (Vec<Region>, Vec<i64>) = pairs.into_iter().unzip();
        let supersets = strict_supersets(&regions);
        Self {
            method,
            n,
            regions,
            counting,
            supersets,
        }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Number of graph vertices the collection refers to.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region(&self, idx: usize) -> &Region {
        &self.regions[idx]
    }

    pub fn counting(&self, idx: usize) -> i64 {
        self.counting[idx]
    }

    pub fn counting_of(&self, r: &Region) -> Option<i64> {
        self.index_of(r).map(|k| self.counting[k])
    }

    pub fn index_of(&self, r: &Region) -> Option<usize> {
        self.regions.iter().position(|q| q == r)
    }

    /// Indices of the regions strictly containing region `idx`.
    pub fn strict_supersets_of(&self, idx: usize) -> &[usize] {
        &self.supersets[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Region, i64)> + '_ {
        self.regions.iter().zip(self.counting.iter().copied())
    }

    /// Indices of the regions that contain vertex `v`.
    pub fn containing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.regions
            .iter()
            .enumerate()
            .filter(move |(_, r)| r.contains(v))
            .map(|(k, _)| k)
    }

    /// Debug dump, one `region <v1,v2,...> c=<int>` line per region.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (r, c) in self.iter() {
            let ids: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("region <{}> c={}\n", ids.join(","), c));
        }
        out
    }
}

/// Intersection closure of `maximal`, level by level.
///
/// Level `l + 1` holds the nonempty intersections of a level-`l` region
/// with a distinct region from levels `0..=l`. Regions already produced at an
/// earlier level are dropped, and so are regions strictly contained in
/// another region of the same new level. Stops at the first empty level.
pub fn cvm_levels(maximal: &[Region]) -> Vec<Vec<Region>> {
    let mut levels: Vec<Vec<Region>> = vec![dedup_sorted(maximal.to_vec())];
    let mut seen: BTreeSet<Region> = levels[0].iter().cloned().collect();
    loop {
        let current = levels.last().expect("at least one level");
        let mut next: BTreeSet<Region> = BTreeSet::new();
        for q1 in current {
            for q2 in levels.iter().flatten() {
                if q1 == q2 {
                    continue;
                }
                if let Some(r) = q1.intersection(q2) {
                    if !seen.contains(&r) {
                        next.insert(r);
                    }
                }
            }
        }
        let kept: Vec<Region> = next
            .iter()
            .filter(|r| !next.iter().any(|q| r.is_proper_subset(q)))
            .cloned()
            .collect();
        if kept.is_empty() {
            break;
        }
        seen.extend(kept.iter().cloned());
        levels.push(kept);
    }
    levels
}

fn dedup_sorted(mut v: Vec<Region>) -> Vec<Region> {
    v.sort();
    v.dedup();
    v
}

/// All regions produced by [`cvm_levels`], sorted.
pub fn cvm_closure(maximal: &[Region]) -> Vec<Region> {
    dedup_sorted(cvm_levels(maximal).into_iter().flatten().collect())
}

/// Maximal regions get `c = 1`; every other region gets one minus the sum
/// over its strict supersets, processed in decreasing size.
pub fn assign_counting_numbers(n: usize, method: Method, regions: Vec<Region>) -> RegionCollection {
    let mut regions = dedup_sorted(regions);
    regions.sort_by(size_desc);
    let supersets = strict_supersets(&regions);
    let mut counting = vec![0i64; regions.len()];
    for k in 0..regions.len() {
        // Strict supersets are strictly larger and so already assigned.
        counting[k] = 1 - supersets[k].iter().map(|&q| counting[q]).sum::<i64>();
    }
    RegionCollection {
        method,
        n,
        regions,
        counting,
        supersets,
    }
}

fn with_singletons(mut regions: Vec<Region>, vertices: impl IntoIterator<Item = usize>) -> Vec<Region> {
    regions.extend(vertices.into_iter().map(Region::singleton));
    regions
}

/// Adds a 4-cycle and its four edges. An edge of a 4-cycle that lies inside
/// a larger clique is not produced by the clique closure, but it is a clique
/// region of its own and the cycle's overlap with the rest of the collection
/// goes through it.
fn push_cycle(rs: &mut Vec<Region>, order: [usize; 4]) {
    for k in 0..4 {
        rs.push(Region::new(vec![order[k], order[(k + 1) % 4]]));
    }
    rs.push(Region::new(order.to_vec()));
}

/// Builds the collection for `method` over the whole graph.
///
/// Bethe: edges and singletons. Clique: intersection closure of the maximal
/// cliques, plus singletons. Cycle4: the clique collection plus every
/// chordless 4-cycle together with its edges.
pub fn build_collection(g: &ConflictGraph, method: Method) -> RegionCollection {
    let n = g.n();
    let regions = match method {
        Method::Bethe => g
            .edges()
            .into_iter()
            .map(|(u, v)| Region::new(vec![u, v]))
            .collect(),
        Method::Clique => cvm_closure(&maximal_cliques(g)),
        Method::Cycle4 => {
            let mut rs = cvm_closure(&maximal_cliques(g));
            for c in chordless_4cycles(g) {
                push_cycle(&mut rs, c.order());
            }
            rs
        }
    };
    assign_counting_numbers(n, method, with_singletons(regions, 0..n))
}

/// Builds the regions containing `v` from `v`'s neighborhood alone: the
/// one-hop induced subgraph for Bethe and cliques, two hops for 4-cycles.
/// Counting numbers are assigned within this local collection.
pub fn local_collection(g: &ConflictGraph, v: usize, method: Method) -> RegionCollection {
    let n = g.n();
    let mut one_hop: Vec<usize> = g.neighbors(v).collect();
    one_hop.push(v);
    one_hop.sort_unstable();
    let lift = |local: &Region, map: &[usize]| Region::new(local.iter().map(|k| map[k]).collect());

    let local_cliques = || {
        let h = g.induced(&one_hop);
        let at_v: Vec<Region> = maximal_cliques(&h)
            .iter()
            .map(|r| lift(r, &one_hop))
            .filter(|r| r.contains(v))
            .collect();
        cvm_closure(&at_v)
    };

    let regions = match method {
        Method::Bethe => g.neighbors(v).map(|w| Region::new(vec![v, w])).collect(),
        Method::Clique => local_cliques(),
        Method::Cycle4 => {
            let mut two_hop: BTreeSet<usize> = one_hop.iter().copied().collect();
            for &w in &one_hop {
                two_hop.extend(g.neighbors(w));
            }
            let two_hop: Vec<usize> = two_hop.into_iter().collect();
            let h = g.induced(&two_hop);
            let mut rs = local_cliques();
            for c in chordless_4cycles(&h) {
                let order = c.order().map(|k| two_hop[k]);
                if order.contains(&v) {
                    push_cycle(&mut rs, order);
                }
            }
            rs.retain(|r| r.contains(v));
            rs
        }
    };
    assign_counting_numbers(n, method, with_singletons(regions, [v]))
}

/// A broken axiom found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Region mentions a vertex outside the graph.
    OutOfRange { region: Region },
    Uncovered { vertex: usize },
    MissingSingleton { vertex: usize },
    /// Counting numbers of the regions containing `vertex` sum to `sum != 1`.
    CountingSum { vertex: usize, sum: i64 },
    /// Counting numbers of the supersets of `region` (itself included) sum to `sum != 1`.
    Kikuchi { region: Region, sum: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Per-vertex `Σ_{r ∋ i} c_r`.
    pub vertex_sums: Vec<i64>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(c: &RegionCollection, g: &ConflictGraph) -> ValidationReport {
    let n = g.n();
    let mut violations = Vec::new();
    for r in c.regions() {
        if r.iter().any(|v| v >= n) {
            violations.push(Violation::OutOfRange { region: r.clone() });
        }
    }
    let mut vertex_sums = vec![0i64; n];
    let mut covered = vec![false; n];
    let mut singleton = vec![false; n];
    for (r, cr) in c.iter() {
        for v in r.iter().filter(|&v| v < n) {
            vertex_sums[v] += cr;
            covered[v] = true;
        }
        if r.len() == 1 && r.vertices()[0] < n {
            singleton[r.vertices()[0]] = true;
        }
    }
    for v in 0..n {
        if !covered[v] {
            violations.push(Violation::Uncovered { vertex: v });
        }
        if !singleton[v] {
            violations.push(Violation::MissingSingleton { vertex: v });
        }
        if vertex_sums[v] != 1 {
            violations.push(Violation::CountingSum {
                vertex: v,
                sum: vertex_sums[v],
            });
        }
    }
    if matches!(c.method(), Method::Bethe | Method::Clique) {
        for k in 0..c.len() {
            let sum = c.counting(k)
                + c.strict_supersets_of(k)
                    .iter()
                    .map(|&q| c.counting(q))
                    .sum::<i64>();
            if sum != 1 {
                violations.push(Violation::Kikuchi {
                    region: c.region(k).clone(),
                    sum,
                });
            }
        }
    }
    ValidationReport {
        vertex_sums,
        violations,
    }
}
