//! Transitive orientation by implication classes.
//!
//! Each round takes an edge still in the working set, grows its implication
//! class under the forcing rule (orienting `ab` forces `ab'` when `b b'` is not
//! an edge of the working set, and `a'b` when `a a'` is not), and removes the
//! class. The graph is a comparability graph iff no class ever contains both
//! directions of an edge; the chosen classes together form a transitive
//! orientation.

use crate::graph::{Graph, Orientation};

/// A transitive orientation of `g`, or `None` if `g` is not a comparability
/// graph. The result is checked for transitivity before it is returned.
pub fn transitive_orient(g: &Graph) -> Option<Orientation> {
    let m = g.m();
    let mut alive = vec![true; m];
    let mut forward = vec![true; m];
    let mut stamp = vec![usize::MAX; m];
    let mut class_dir = vec![false; m];
    let live = |alive: &[bool], x: usize, y: usize| g.edge_id(x, y).is_some_and(|e| alive[e]);

    for start in 0..m {
        if !alive[start] {
            continue;
        }
        let mut members = Vec::new();
        let mut stack = Vec::new();
        let mut add = |x: usize,
                       y: usize,
                       members: &mut Vec<usize>,
                       stack: &mut Vec<(usize, usize)>|
         -> bool {
            let e = g.edge_id(x, y).expect("arc on an edge");
            let dir = x < y;
            if stamp[e] == start {
                return class_dir[e] == dir;
            }
            stamp[e] = start;
            class_dir[e] = dir;
            members.push(e);
            stack.push((x, y));
            true
        };
        let (u, v) = g.edges()[start];
        add(u, v, &mut members, &mut stack);
        while let Some((x, y)) = stack.pop() {
            for &y2 in g.neighbors(x) {
                if y2 != y
                    && live(&alive, x, y2)
                    && !live(&alive, y, y2)
                    && !add(x, y2, &mut members, &mut stack)
                {
                    return None;
                }
            }
            for &x2 in g.neighbors(y) {
                if x2 != x
                    && live(&alive, x2, y)
                    && !live(&alive, x, x2)
                    && !add(x2, y, &mut members, &mut stack)
                {
                    return None;
                }
            }
        }
        for e in members {
            alive[e] = false;
            forward[e] = class_dir[e];
        }
    }
    let o = Orientation::from_forward(g, forward).expect("one entry per edge");
    is_transitive(g, &o).then_some(o)
}

/// Whether `a→b` and `b→c` always come with `a→c`.
pub fn is_transitive(g: &Graph, o: &Orientation) -> bool {
    (0..g.n()).all(|b| {
        let ins: Vec<usize> = g
            .neighbors(b)
            .iter()
            .copied()
            .filter(|&a| o.has_arc(g, a, b))
            .collect();
        let outs: Vec<usize> = g
            .neighbors(b)
            .iter()
            .copied()
            .filter(|&c| o.has_arc(g, b, c))
            .collect();
        ins.iter()
            .all(|&a| outs.iter().all(|&c| o.has_arc(g, a, c)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::p4::{check_orientation, OrientationClass};

    #[test]
    fn c4_and_c6_are_comparability() {
        for k in [4, 6, 8] {
            let g = Graph::cycle(k);
            let o = transitive_orient(&g).unwrap();
            assert!(is_transitive(&g, &o));
            assert!(check_orientation(&g, &o, OrientationClass::Coalition).is_ok());
        }
    }

    #[test]
    fn odd_cycles_are_not() {
        for k in [5, 7, 9] {
            assert!(transitive_orient(&Graph::cycle(k)).is_none());
        }
    }

    #[test]
    fn complete_graph_is_a_total_order() {
        let g = Graph::complete(5);
        let o = transitive_orient(&g).unwrap();
        let mut outs: Vec<usize> = (0..5).map(|v| o.out_degree(&g, v)).collect();
        outs.sort_unstable();
        assert_eq!(outs, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn net_is_not_comparability_but_its_deletion_is() {
        let net = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 2), (4, 5)]).unwrap();
        assert!(transitive_orient(&net).is_none());
        let (minus, _) = net.delete_vertex(5);
        let o = transitive_orient(&minus).unwrap();
        assert!(check_orientation(&minus, &o, OrientationClass::Coalition).is_ok());
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(3..=6);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let brute = (0u32..1 << g.m()).any(|mask| {
                let f = (0..g.m()).map(|e| mask >> e & 1 == 1).collect();
                is_transitive(&g, &Orientation::from_forward(&g, f).unwrap())
            });
            assert_eq!(transitive_orient(&g).is_some(), brute, "{:?}", g.edges());
        }
    }
}
