//! Backtracking induced-subgraph search for small fixed patterns.

use serde::{Deserialize, Serialize};

use super::patterns::Pattern;
use crate::graph::Graph;

/// An induced copy of a pattern: `embedding[i]` is the host vertex playing
/// pattern vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternMatch {
    pub pattern: String,
    pub embedding: Vec<usize>,
}

/// Finds an induced copy of `p` in `g`, matching pattern vertices in
/// [`default_order`] and trying host candidates in increasing id.
pub fn find_induced(g: &Graph, p: &Pattern) -> Option<PatternMatch> {
    find_induced_with_order(g, p, &default_order(&p.graph))
}

/// Highest-degree vertex first, then breadth-first by id.
pub fn default_order(pg: &Graph) -> Vec<usize> {
    let k = pg.n();
    if k == 0 {
        return Vec::new();
    }
    let start = (0..k)
        .max_by_key(|&v| (pg.degree(v), std::cmp::Reverse(v)))
        .unwrap();
    bfs_order(pg, start)
}

/// Breadth-first order from `start`, neighbors by id, then any unreached
/// vertices by id.
pub fn bfs_order(pg: &Graph, start: usize) -> Vec<usize> {
    let k = pg.n();
    let mut seen = vec![false; k];
    let mut order = vec![start];
    seen[start] = true;
    let mut head = 0;
    loop {
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in pg.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
        match (0..k).find(|&v| !seen[v]) {
            Some(v) => {
                seen[v] = true;
                order.push(v);
            }
            None => break,
        }
    }
    order
}

/// Like [`find_induced`] with an explicit matching order. The first match
/// found is the lexicographically least one when embeddings are read in
/// `order`.
pub fn find_induced_with_order(g: &Graph, p: &Pattern, order: &[usize]) -> Option<PatternMatch> {
    let mut found = None;
    search(g, p, order, &mut |emb| {
        found = Some(emb.to_vec());
        false
    });
    found.map(|embedding| PatternMatch {
        pattern: p.name.clone(),
        embedding,
    })
}

/// Calls `visit` for each induced copy (as a pattern-indexed embedding) until
/// it returns `false`.
pub fn for_each_induced(g: &Graph, p: &Pattern, mut visit: impl FnMut(&[usize]) -> bool) {
    let order = default_order(&p.graph);
    search(g, p, &order, &mut visit);
}

fn search(g: &Graph, p: &Pattern, order: &[usize], visit: &mut dyn FnMut(&[usize]) -> bool) {
    let pg = &p.graph;
    let k = pg.n();
    assert_eq!(order.len(), k, "order must list every pattern vertex");
    if k > g.n() {
        return;
    }
    if k == 0 {
        visit(&[]);
        return;
    }
    let mut position = vec![usize::MAX; k];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // anchor[i]: an earlier-matched pattern neighbor of order[i]
    let anchor: Vec<Option<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| pg.neighbors(v).iter().copied().find(|&u| position[u] < i))
        .collect();
    let mut state = State {
        g,
        pg,
        order,
        anchor: &anchor,
        emb: vec![usize::MAX; k],
        used: vec![false; g.n()],
    };
    state.extend(0, visit);
}

struct State<'a> {
    g: &'a Graph,
    pg: &'a Graph,
    order: &'a [usize],
    anchor: &'a [Option<usize>],
    emb: Vec<usize>,
    used: Vec<bool>,
}

impl State<'_> {
    /// Returns `false` once the visitor asks to stop.
    fn extend(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.emb);
        }
        let pv = self.order[depth];
        let need = self.pg.degree(pv);
        let candidates: Vec<usize> = match self.anchor[depth] {
            Some(pa) => self.g.neighbors(self.emb[pa]).to_vec(),
            None => (0..self.g.n()).collect(),
        };
        for h in candidates {
            if self.used[h] || self.g.degree(h) < need {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&pu| self.pg.has_edge(pv, pu) == self.g.has_edge(h, self.emb[pu]));
            if !consistent {
                continue;
            }
            self.emb[pv] = h;
            self.used[h] = true;
            let go_on = self.extend(depth + 1, visit);
            self.used[h] = false;
            self.emb[pv] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Whether `m` is an induced copy of `p` in `g`.
pub fn is_induced_copy(g: &Graph, p: &Pattern, m: &PatternMatch) -> bool {
    let k = p.graph.n();
    if m.embedding.len() != k || m.embedding.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in &m.embedding {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| p.graph.has_edge(i, j) == g.has_edge(m.embedding[i], m.embedding[j]))
    })
}

/// Isomorphism test by induced search between equal-size graphs.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let p = Pattern {
        name: "iso".into(),
        graph: a.clone(),
    };
    find_induced(b, &p).is_some()
}

#[cfg(test)]
mod tests {
    use super::super::patterns::*;
    use super::*;

    /// Exhaustive: every injective map of pattern vertices into host vertices.
    fn brute_has_induced(g: &Graph, p: &Pattern) -> bool {
        let k = p.graph.n();
        let mut emb = vec![0usize; k];
        fn rec(g: &Graph, p: &Pattern, emb: &mut Vec<usize>, i: usize) -> bool {
            let k = p.graph.n();
            if i == k {
                return (0..k).all(|x| {
                    (x + 1..k).all(|y| p.graph.has_edge(x, y) == g.has_edge(emb[x], emb[y]))
                });
            }
            for h in 0..g.n() {
                if emb[..i].contains(&h) {
                    continue;
                }
                emb[i] = h;
                if rec(g, p, emb, i + 1) {
                    return true;
                }
            }
            false
        }
        k <= g.n() && rec(g, p, &mut emb, 0)
    }

    #[test]
    fn house_in_house_is_identity_up_to_automorphism() {
        let h = house();
        let m = find_induced(&h.graph, &h).unwrap();
        assert!(is_induced_copy(&h.graph, &h, &m));
        let ident: Vec<usize> = (0..5).collect();
        let m2 = find_induced_with_order(&h.graph, &h, &ident).unwrap();
        assert_eq!(m2.embedding, ident);
    }

    #[test]
    fn domino_not_in_c6() {
        assert!(find_induced(&Graph::cycle(6), &domino()).is_none());
    }

    #[test]
    fn prism_is_gem_free() {
        let g = Graph::from_edges(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 5),
                (2, 4),
            ],
        )
        .unwrap();
        assert!(find_induced(&g, &gem()).is_none());
        assert!(!brute_has_induced(&g, &gem()));
    }

    #[test]
    fn agrees_with_brute_force_on_small_hosts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let pats = [
            gem(),
            house(),
            cycle(4),
            cycle(5),
            a_graph(),
            n_graph(),
            path(4),
        ];
        for _ in 0..60 {
            let n = rng.gen_range(4..=7);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.45) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            for p in &pats {
                let fast = find_induced(&g, p);
                assert_eq!(
                    fast.is_some(),
                    brute_has_induced(&g, p),
                    "{} in {:?}",
                    p.name,
                    g.edges()
                );
                if let Some(m) = fast {
                    assert!(is_induced_copy(&g, p, &m));
                }
            }
        }
    }

    #[test]
    fn isomorphism_checks() {
        let c6 = Graph::cycle(6);
        let relabeled =
            Graph::from_edges(6, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 5), (5, 0)]).unwrap();
        assert!(are_isomorphic(&c6, &relabeled));
        assert!(!are_isomorphic(&c6, &Graph::path(6)));
    }

    #[test]
    fn enumerates_all_copies() {
        let mut count = 0;
        for_each_induced(&Graph::cycle(5), &path(4), |_| {
            count += 1;
            true
        });
        // 5 P4s, each matched in 2 directions
        assert_eq!(count, 10);
    }
}
