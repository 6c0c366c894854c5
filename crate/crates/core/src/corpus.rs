//! Test graph sources: exhaustive small enumerations and seeded random
//! generators for the hereditary classes.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn adjacency_bits(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> u64 {
    // bit index of pair (i, j), i < j, in upper-triangle row order
    let mut bits = 0u64;
    for &(u, v) in edges {
        let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
        let idx = a * n - a * (a + 1) / 2 + (b - a - 1);
        bits |= 1 << idx;
    }
    bits
}

/// A labeling-independent key for graphs with at most 11 vertices: the
/// minimum adjacency bitmask over relabelings that list vertices by
/// non-increasing degree.
pub fn canonical_key(g: &Graph) -> (usize, u64) {
    let n = g.n();
    assert!(n <= 11, "canonical_key supports at most 11 vertices");
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    // slots of equal degree form blocks that are permuted independently
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &by_degree {
        match blocks.last_mut() {
            Some(b) if g.degree(b[0]) == g.degree(v) => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = vec![0usize; n];
    fn rec(
        blocks: &mut [Vec<usize>],
        bi: usize,
        offset: usize,
        perm: &mut Vec<usize>,
        g: &Graph,
        best: &mut u64,
    ) {
        if bi == blocks.len() {
            *best = (*best).min(adjacency_bits(g.n(), g.edges(), perm));
            return;
        }
        let len = blocks[bi].len();
        permute(&mut blocks[bi].clone(), 0, &mut |order: &[usize]| {
            for (i, &v) in order.iter().enumerate() {
                perm[v] = offset + i;
            }
            rec(blocks, bi + 1, offset + len, perm, g, best);
        });
    }
    fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, f);
            items.swap(k, i);
        }
    }
    rec(&mut blocks, 0, 0, &mut perm, g, &mut best);
    (n, best)
}

/// All connected graphs on `n` vertices up to isomorphism, each extended
/// from a connected graph on `n - 1` vertices by a new vertex.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let prev = k - 1;
            for mask in 1u32..(1 << prev) {
                let mut edges = g.edges().to_vec();
                edges.extend((0..prev).filter(|&v| mask >> v & 1 == 1).map(|v| (v, prev)));
                let h = Graph::from_edges(k, &edges).expect("simple");
                if seen.insert(canonical_key(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

/// AHU encoding of the tree rooted at `root`.
fn rooted_code(t: &Graph, root: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t
        .neighbors(root)
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| rooted_code(t, c, root))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Canonical string of a tree: the smaller AHU code over its centers.
pub fn tree_code(t: &Graph) -> String {
    let n = t.n();
    if n == 1 {
        return "()".into();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= leaves.len();
        let mut next = Vec::new();
        for &l in &leaves {
            deg[l] = 0;
            for &u in t.neighbors(l) {
                if deg[u] > 0 {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        leaves = next;
    }
    leaves
        .iter()
        .map(|&c| rooted_code(t, c, usize::MAX))
        .min()
        .expect("a tree has a center")
}

/// All trees on `n` vertices up to isomorphism.
pub fn trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..k - 1 {
                let mut edges = t.edges().to_vec();
                edges.push((v, k - 1));
                let h = Graph::from_edges(k, &edges).expect("tree");
                if seen.insert(tree_code(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

/// One growth step of the pendant/twin generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Growth {
    Pendant(usize),
    TrueTwin(usize),
    FalseTwin(usize),
}

/// The graph with one new vertex attached by `step`.
pub fn grow(g: &Graph, step: Growth) -> Graph {
    let new = g.n();
    let mut edges = g.edges().to_vec();
    match step {
        Growth::Pendant(v) => edges.push((v, new)),
        Growth::TrueTwin(v) => {
            edges.extend(g.neighbors(v).iter().map(|&u| (u, new)));
            edges.push((v, new));
        }
        Growth::FalseTwin(v) => edges.extend(g.neighbors(v).iter().map(|&u| (u, new))),
    }
    Graph::from_edges(new + 1, &edges).expect("simple")
}

fn random_step(rng: &mut impl Rng, g: &Graph) -> Growth {
    let v = rng.gen_range(0..g.n());
    match rng.gen_range(0..3) {
        0 => Growth::Pendant(v),
        1 => Growth::TrueTwin(v),
        _ => Growth::FalseTwin(v),
    }
}

/// A connected distance-hereditary graph on `n` vertices grown from `K2` by
/// random pendant and twin steps.
pub fn random_distance_hereditary(rng: &mut impl Rng, n: usize) -> Graph {
    let mut g = Graph::empty(1);
    while g.n() < n {
        let step = if g.n() == 1 {
            Growth::Pendant(0)
        } else {
            random_step(rng, &g)
        };
        g = grow(&g, step);
    }
    g
}

fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&w| g.has_edge(u, w)))
}

/// Like [`random_distance_hereditary`] but a false twin is only added when
/// the copied neighborhood is a clique, so no `C4` or gem appears.
pub fn random_ptolemaic(rng: &mut impl Rng, n: usize) -> Graph {
    let mut g = Graph::empty(1);
    while g.n() < n {
        let step = if g.n() == 1 {
            Growth::Pendant(0)
        } else {
            random_step(rng, &g)
        };
        if let Growth::FalseTwin(v) = step {
            if !is_clique(&g, g.neighbors(v)) {
                continue;
            }
        }
        g = grow(&g, step);
    }
    g
}

/// A random ptolemaic graph grown only through steps that keep `keep`
/// true. Gives up on a step after `tries` rejected candidates and returns
/// what it has.
pub fn random_ptolemaic_where(
    rng: &mut impl Rng,
    n: usize,
    tries: usize,
    keep: impl Fn(&Graph) -> bool,
) -> Graph {
    let mut g = Graph::empty(1);
    while g.n() < n {
        let mut grown = None;
        for _ in 0..tries {
            let step = if g.n() == 1 {
                Growth::Pendant(0)
            } else {
                random_step(rng, &g)
            };
            if let Growth::FalseTwin(v) = step {
                if !is_clique(&g, g.neighbors(v)) {
                    continue;
                }
            }
            let h = grow(&g, step);
            if keep(&h) {
                grown = Some(h);
                break;
            }
        }
        match grown {
            Some(h) => g = h,
            None => break,
        }
    }
    g
}

/// Uniform random graph with `n` vertices and `m` distinct edges.
pub fn random_gnm(rng: &mut impl Rng, n: usize, m: usize) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    assert!(m <= total, "too many edges for {n} vertices");
    let mut chosen = HashSet::with_capacity(m);
    while chosen.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            chosen.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = chosen.into_iter().collect();
    edges.sort_unstable();
    Graph::from_edges(n, &edges).expect("simple")
}

/// Relabels vertices by a random permutation.
pub fn shuffled(rng: &mut impl Rng, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.n(), &edges).expect("simple")
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{is_distance_hereditary, is_ptolemaic};

    #[test]
    fn connected_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn canonical_key_ignores_labels() {
        let mut rng = seeded(3);
        for _ in 0..30 {
            let g = random_gnm(&mut rng, 7, 9);
            assert_eq!(canonical_key(&g), canonical_key(&shuffled(&mut rng, &g)));
        }
        assert_ne!(
            canonical_key(&Graph::path(5)),
            canonical_key(&Graph::star(4))
        );
    }

    #[test]
    fn generators_stay_in_class() {
        let mut rng = seeded(9);
        for _ in 0..50 {
            let n = rng.gen_range(1..15);
            let g = random_distance_hereditary(&mut rng, n);
            assert_eq!(g.n(), n);
            assert!(g.is_connected());
            assert!(is_distance_hereditary(&g));
            let p = random_ptolemaic(&mut rng, n);
            assert!(p.is_connected());
            assert!(is_ptolemaic(&p), "{:?}", p.edges());
        }
    }

    #[test]
    fn generators_are_reproducible() {
        let a = random_distance_hereditary(&mut seeded(5), 12);
        let b = random_distance_hereditary(&mut seeded(5), 12);
        assert_eq!(a, b);
        let g = random_gnm(&mut seeded(1), 30, 100);
        assert_eq!(g.m(), 100);
    }
}
