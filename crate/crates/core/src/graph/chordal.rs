use super::ConflictGraph;

/// Lexicographic breadth-first search order (partition refinement).
///
/// The reverse of the returned order is a perfect elimination ordering
/// exactly when the graph is chordal.
pub fn lex_bfs_order(g: &ConflictGraph) -> Vec<usize> {
    let n = g.n();
    // Ordered partition of unvisited vertices; the first class is taken next.
    let mut classes: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut order = Vec::with_capacity(n);
    while let Some(first) = classes.first_mut() {
        let v = first.remove(0);
        if first.is_empty() {
            classes.remove(0);
        }
        order.push(v);
        let nv = g.neighbor_set(v);
        let mut refined = Vec::with_capacity(classes.len() + 1);
        for class in classes.drain(..) {
            let (inside, outside): (Vec<usize>, Vec<usize>) =
                class.into_iter().partition(|&w| nv.contains(w));
            if !inside.is_empty() {
                refined.push(inside);
            }
            if !outside.is_empty() {
                refined.push(outside);
            }
        }
        classes = refined;
    }
    order
}

/// Chordality test: LexBFS, then check that the reversed visit order is a
/// perfect elimination ordering.
pub fn is_chordal(g: &ConflictGraph) -> bool {
    let order = lex_bfs_order(g);
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    // Eliminating in reverse LexBFS order, each vertex's neighbors visited
    // earlier must form a clique. It suffices to check that the latest such
    // neighbor `p` is adjacent to all the others.
    for &v in &order {
        let earlier: Vec<usize> = g.neighbors(v).filter(|&w| pos[w] < pos[v]).collect();
        let Some(&parent) = earlier.iter().max_by_key(|&&w| pos[w]) else {
            continue;
        };
        if earlier.iter().any(|&w| w != parent && !g.has_edge(w, parent)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Topology};

    #[test]
    fn known_examples() {
        assert!(is_chordal(&generate(&Topology::Chordal6, 0).unwrap()));
        assert!(!is_chordal(&generate(&Topology::Grid { rows: 2, cols: 2 }, 0).unwrap()));
        for n in 1..8 {
            assert!(is_chordal(&generate(&Topology::Complete { n }, 0).unwrap()));
        }
        assert!(!is_chordal(&generate(&Topology::Ring { n: 5 }, 0).unwrap()));
        assert!(is_chordal(&generate(&Topology::Ring { n: 3 }, 0).unwrap()));
    }

    #[test]
    fn lex_bfs_visits_everything_once() {
        let g = generate(&Topology::Grid { rows: 3, cols: 4 }, 0).unwrap();
        let mut order = lex_bfs_order(&g);
        order.sort_unstable();
        assert_eq!(order, (0..12).collect::<Vec<_>>());
    }
}
