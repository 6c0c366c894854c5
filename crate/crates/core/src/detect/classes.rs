//! Hereditary class tests: holes, chordality, distance-hereditary pruning,
//! ptolemaic graphs, and the `T_k` / `H_k` families.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::patterns::{self, h_k, hk_vertex, t_k, HkVariant, Pattern};
use super::search::{bfs_order, find_induced, find_induced_with_order, PatternMatch};
use crate::graph::Graph;

/// Finds a chordless cycle on at least five vertices.
///
/// For every middle edge `bc` and every `a` hanging off `b` only, a BFS from
/// `a` through vertices outside `N[b] ∪ N[c]` looks for the nearest `d`
/// hanging off `c` only. The BFS path closes a hole with `a b c d`.
pub fn find_hole(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut mark = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    let mut dist = vec![usize::MAX; n];
    for &(x, y) in g.edges() {
        for (b, c) in [(x, y), (y, x)] {
            // 1 = N[b] or N[c]; 2 = end candidate on c's side
            for v in mark.iter_mut() {
                *v = 0;
            }
            mark[b] = 1;
            mark[c] = 1;
            for &v in g.neighbors(b) {
                mark[v] = 1;
            }
            for &v in g.neighbors(c) {
                if mark[v] == 0 {
                    mark[v] = 2;
                }
            }
            for &a in g.neighbors(b) {
                if a == c || g.has_edge(a, c) {
                    continue;
                }
                if let Some(cycle) = hole_from(g, a, b, c, &mark, &mut parent, &mut dist) {
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn hole_from(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
    mark: &[u8],
    parent: &mut [usize],
    dist: &mut [usize],
) -> Option<Vec<usize>> {
    let mut touched = vec![a];
    dist[a] = 0;
    let mut queue = VecDeque::from([a]);
    let mut hit = None;
    'bfs: while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] != usize::MAX {
                continue;
            }
            match mark[v] {
                0 => {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    touched.push(v);
                    queue.push_back(v);
                }
                2 if !g.has_edge(v, a) => {
                    parent[v] = u;
                    dist[v] = dist[u] + 1;
                    touched.push(v);
                    hit = Some(v);
                    break 'bfs;
                }
                _ => {}
            }
        }
    }
    let result = hit.map(|d| {
        let mut back = vec![d];
        let mut cur = d;
        while cur != a {
            cur = parent[cur];
            back.push(cur);
        }
        // back runs d .. a; cycle is a b c d ... (back to a)
        let mut cycle = vec![a, b, c];
        cycle.extend(back[..back.len() - 1].iter().copied());
        cycle
    });
    for v in touched {
        dist[v] = usize::MAX;
        parent[v] = usize::MAX;
    }
    result
}

/// Whether `cycle` is a chordless cycle of `g` (length at least 4).
pub fn is_chordless_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 || cycle.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in cycle {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.has_edge(cycle[i], cycle[j]) == consecutive
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    /// A perfect elimination order.
    Chordal(Vec<usize>),
    /// A chordless cycle on at least four vertices.
    Cycle(Vec<usize>),
}

/// Maximum cardinality search plus an elimination-order check; on failure a
/// chordless cycle is extracted.
pub fn chordality(g: &Graph) -> Chordality {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut buckets: Vec<Vec<usize>> = vec![(0..n).rev().collect()];
    let mut visit = Vec::with_capacity(n);
    let mut top = 0usize;
    while visit.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !numbered[v] && weight[v] == top => break v,
                Some(_) => {}
                None => top -= 1,
            }
        };
        numbered[v] = true;
        visit.push(v);
        for &u in g.neighbors(v) {
            if !numbered[u] {
                weight[u] += 1;
                if buckets.len() <= weight[u] {
                    buckets.push(Vec::new());
                }
                buckets[weight[u]].push(u);
                top = top.max(weight[u]);
            }
        }
    }
    // elimination order is the reverse visit order
    let peo: Vec<usize> = visit.into_iter().rev().collect();
    let mut pos = vec![0usize; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &peo {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u] > pos[v])
            .collect();
        let Some(&p) = later.iter().min_by_key(|&&u| pos[u]) else {
            continue;
        };
        if later.iter().any(|&u| u != p && !g.has_edge(p, u)) {
            return Chordality::Cycle(
                chordless_cycle(g).expect("failed elimination check implies a cycle"),
            );
        }
    }
    Chordality::Chordal(peo)
}

pub fn is_chordal(g: &Graph) -> bool {
    matches!(chordality(g), Chordality::Chordal(_))
}

/// Some chordless cycle of length at least 4: for each vertex `v` with
/// non-adjacent neighbors `u`, `w`, the shortest `u`-`w` path avoiding the
/// rest of `N[v]` closes one.
fn chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    for v in 0..n {
        let nb = g.neighbors(v);
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if g.has_edge(u, w) {
                    continue;
                }
                blocked.iter_mut().for_each(|x| *x = false);
                blocked[v] = true;
                for &x in nb {
                    if x != u && x != w {
                        blocked[x] = true;
                    }
                }
                if let Some(path) = shortest_path(g, u, w, &blocked) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path(g: &Graph, s: usize, t: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if parent[v] != usize::MAX || blocked[v] {
                continue;
            }
            parent[v] = u;
            if v == t {
                let mut path = vec![t];
                let mut cur = t;
                while cur != s {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(v);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PruneRule {
    Pendant,
    TrueTwin,
    FalseTwin,
}

/// One deletion: `vertex` is removed as a pendant of, or twin of, `partner`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneStep {
    pub vertex: usize,
    pub rule: PruneRule,
    pub partner: usize,
}

/// Deletions that shrink each component to a single vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruningSequence {
    pub steps: Vec<PruneStep>,
    pub survivors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceHereditary {
    Yes(PruningSequence),
    /// Pruning got stuck. `witness` is a house, gem, domino or hole when
    /// requested.
    No {
        stuck: Vec<usize>,
        witness: Option<PatternMatch>,
    },
}

/// Repeatedly deletes pendant vertices and twins. A graph is
/// distance-hereditary exactly when this leaves one vertex per component.
pub fn prune_pendants_and_twins(g: &Graph) -> (Vec<PruneStep>, Vec<bool>) {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut steps = Vec::new();
    let live_neighbor =
        |alive: &[bool], v: usize| g.neighbors(v).iter().copied().find(|&u| alive[u]);

    let delete = |v: usize, alive: &mut Vec<bool>, deg: &mut Vec<usize>, queue: &mut Vec<usize>| {
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    queue.push(u);
                }
            }
        }
    };

    let mut queue: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    loop {
        let mut changed = false;
        while let Some(v) = queue.pop() {
            if !alive[v] || deg[v] != 1 {
                continue;
            }
            let p = live_neighbor(&alive, v).expect("degree one");
            if deg[p] == 1 {
                // a lone edge: keep the smaller id
                if v < p {
                    continue;
                }
            }
            steps.push(PruneStep {
                vertex: v,
                rule: PruneRule::Pendant,
                partner: p,
            });
            delete(v, &mut alive, &mut deg, &mut queue);
            changed = true;
        }
        // twins stay twins when other vertices are deleted, so one pass per
        // round over the classes is sound
        let mut open: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut closed: HashMap<Vec<usize>, usize> = HashMap::new();
        for v in 0..n {
            if !alive[v] || deg[v] == 0 {
                continue;
            }
            let mut nb: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| alive[u])
                .collect();
            if let Some(&keep) = open.get(&nb) {
                steps.push(PruneStep {
                    vertex: v,
                    rule: PruneRule::FalseTwin,
                    partner: keep,
                });
                delete(v, &mut alive, &mut deg, &mut queue);
                changed = true;
                continue;
            }
            open.insert(nb.clone(), v);
            let at = nb.partition_point(|&u| u < v);
            nb.insert(at, v);
            match closed.get(&nb) {
                Some(&keep) if alive[keep] => {
                    steps.push(PruneStep {
                        vertex: v,
                        rule: PruneRule::TrueTwin,
                        partner: keep,
                    });
                    delete(v, &mut alive, &mut deg, &mut queue);
                    changed = true;
                }
                _ => {
                    closed.insert(nb, v);
                }
            }
        }
        if !changed {
            break;
        }
    }
    (steps, alive)
}

/// Distance-hereditary test with a pruning certificate or, on request, a
/// forbidden induced subgraph.
pub fn distance_hereditary(g: &Graph, want_witness: bool) -> DistanceHereditary {
    let (steps, alive) = prune_pendants_and_twins(g);
    let left: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    let done = left
        .iter()
        .all(|&v| g.neighbors(v).iter().all(|&u| !alive[u]));
    if done {
        return DistanceHereditary::Yes(PruningSequence {
            steps,
            survivors: left,
        });
    }
    let stuck: Vec<usize> = left
        .into_iter()
        .filter(|&v| g.neighbors(v).iter().any(|&u| alive[u]))
        .collect();
    let witness = want_witness.then(|| dh_witness(g, &stuck)).flatten();
    DistanceHereditary::No { stuck, witness }
}

pub fn is_distance_hereditary(g: &Graph) -> bool {
    matches!(distance_hereditary(g, false), DistanceHereditary::Yes(_))
}

/// Searches the pruned core for a house, gem, domino or hole.
fn dh_witness(g: &Graph, core: &[usize]) -> Option<PatternMatch> {
    let (h, map) = g.induced_subgraph(core).ok()?;
    let lift = |m: PatternMatch| PatternMatch {
        pattern: m.pattern,
        embedding: m.embedding.iter().map(|&v| map[v]).collect(),
    };
    for p in [patterns::house(), patterns::gem(), patterns::domino()] {
        if let Some(m) = find_induced(&h, &p) {
            return Some(lift(m));
        }
    }
    find_hole(&h).map(|cycle| {
        lift(PatternMatch {
            pattern: format!("C{}", cycle.len()),
            embedding: cycle,
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ptolemaic {
    Yes(PruningSequence),
    No(Option<PatternMatch>),
}

/// Ptolemaic means distance-hereditary and chordal; equivalently free of
/// gems and of holes of every length including `C4`.
pub fn ptolemaic(g: &Graph, want_witness: bool) -> Ptolemaic {
    match distance_hereditary(g, want_witness) {
        DistanceHereditary::Yes(seq) => match chordality(g) {
            Chordality::Chordal(_) => Ptolemaic::Yes(seq),
            Chordality::Cycle(c) => Ptolemaic::No(want_witness.then(|| PatternMatch {
                pattern: format!("C{}", c.len()),
                embedding: c,
            })),
        },
        DistanceHereditary::No { witness, .. } => {
            Ptolemaic::No(witness.map(|m| match m.pattern.as_str() {
                // house and domino both start with a C4
                "house" | "domino" => PatternMatch {
                    pattern: "C4".into(),
                    embedding: m.embedding[..4].to_vec(),
                },
                _ => m,
            }))
        }
    }
}

pub fn is_ptolemaic(g: &Graph) -> bool {
    matches!(ptolemaic(g, false), Ptolemaic::Yes(_))
}

/// A pendant vertex or a twin pair present in the current graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prunable {
    pub rule: PruneRule,
    /// The pendant alone, or the twin pair in increasing order.
    pub vertices: Vec<usize>,
}

/// Every pendant and every twin pair, pendants first.
pub fn twins_and_pendants(g: &Graph) -> Vec<Prunable> {
    let mut out: Vec<Prunable> = (0..g.n())
        .filter(|&v| g.degree(v) == 1)
        .map(|v| Prunable {
            rule: PruneRule::Pendant,
            vertices: vec![v],
        })
        .collect();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let nu = g.neighbors(u).iter().filter(|&&x| x != v);
            let nv = g.neighbors(v).iter().filter(|&&x| x != u);
            if nu.eq(nv) {
                let rule = if g.has_edge(u, v) {
                    PruneRule::TrueTwin
                } else {
                    PruneRule::FalseTwin
                };
                out.push(Prunable {
                    rule,
                    vertices: vec![u, v],
                });
            }
        }
    }
    out
}

/// Largest `k` for which `T_k` fits in `n` vertices.
pub fn max_tk_index(n: usize) -> usize {
    n.saturating_sub(6) / 2
}

/// First induced `T_k` over `k = 1..=max_tk_index(n)`.
pub fn find_tk(g: &Graph) -> Option<(usize, PatternMatch)> {
    (1..=max_tk_index(g.n())).find_map(|k| {
        let p = t_k(k).expect("k >= 1");
        find_induced(g, &p).map(|m| (k, m))
    })
}

/// Largest `k` for which `H_k` fits in `n` vertices.
pub fn max_hk_index(n: usize) -> usize {
    n.saturating_sub(3) / 3
}

/// Induced `H_k` searched with `v_k` matched first.
pub fn find_hk(g: &Graph, k: usize, variant: HkVariant) -> Option<PatternMatch> {
    let p = h_k(k, variant).ok()?;
    find_hk_pattern(g, &p, k)
}

fn find_hk_pattern(g: &Graph, p: &Pattern, k: usize) -> Option<PatternMatch> {
    let order = bfs_order(&p.graph, hk_vertex(k, 0));
    find_induced_with_order(g, p, &order)
}

/// An embedding of `H_k` or `H_k^-` with `k` as large as possible. Each
/// family is nested, so the scan per variant stops at the first miss. On a
/// tie the full variant wins.
pub fn find_max_hk(g: &Graph) -> Option<(usize, HkVariant, PatternMatch)> {
    let h1 = find_hk(g, 1, HkVariant::Full)?;
    let mut best = (1, HkVariant::Full, h1);
    for variant in [HkVariant::Full, HkVariant::Minus] {
        for k in 2..=max_hk_index(g.n()) {
            match find_hk(g, k, variant) {
                Some(m) => {
                    if k > best.0 {
                        best = (k, variant, m);
                    }
                }
                None => break,
            }
        }
    }
    Some(best)
}
