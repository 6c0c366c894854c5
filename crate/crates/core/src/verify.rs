//! Certificate checks that share no code with the producers.
//!
//! Everything here is recomputed from adjacency queries on the base graph:
//! its own P4 scan, its own cycle detection, its own constraint predicate.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::constraint::{ArcVar, ConstraintKind, Refutation};
use crate::detect::{by_name, PatternMatch};
use crate::graph::Graph;
use crate::p4::OrientationClass;
use crate::recognize::{Certificate, Decision, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("arc {0:?} is not an edge")]
    NotAnEdge((usize, usize)),
    #[error("edge {0:?} is directed twice or not at all")]
    EdgeCoverage((usize, usize)),
    #[error("directed cycle through {0:?}")]
    Cyclic(Vec<usize>),
    #[error("P4 {0:?} violates the class condition")]
    BadP4([usize; 4]),
    #[error("walk is not closed or has even length")]
    WalkShape,
    #[error("variable {0:?} is not an end-edge")]
    NotEndEdge(ArcVar),
    #[error("hop {0:?} -> {1:?} is not a constraint edge")]
    BadHop(ArcVar, ArcVar),
    #[error("cycle {0:?} is not a directed cycle of the claimed arcs")]
    BadCycle(Vec<usize>),
    #[error("unknown pattern '{0}'")]
    UnknownPattern(String),
    #[error("embedding of '{0}' is not an induced copy")]
    BadEmbedding(String),
    #[error("bipartition data is malformed: {0}")]
    BadBipartition(String),
    #[error("refuted prefixes do not cover every flip vector")]
    IncompleteCover,
    #[error("certificate kind does not match the decision")]
    DecisionMismatch,
    #[error("not transitive at {0:?}")]
    NotTransitive([usize; 3]),
}

/// Induced P4s `a-b-c-d` with `a < d`, from adjacency queries only.
fn p4s(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for b in 0..g.n() {
        for &c in g.neighbors(b) {
            for &a in g.neighbors(b) {
                if a == c || g.has_edge(a, c) {
                    continue;
                }
                for &d in g.neighbors(c) {
                    if d <= a || d == b || g.has_edge(d, b) || g.has_edge(d, a) {
                        continue;
                    }
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

fn find_cycle(n: usize, succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    // 0 unvisited, 1 on stack, 2 done
    let mut color = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if color[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        color[s] = 1;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if *next < succ[u].len() {
                let v = succ[u][*next];
                *next += 1;
                match color[v] {
                    0 => {
                        color[v] = 1;
                        parent[v] = u;
                        stack.push((v, 0));
                    }
                    1 => {
                        let mut cycle = vec![v];
                        let mut cur = u;
                        while cur != v {
                            cycle.push(cur);
                            cur = parent[cur];
                        }
                        cycle[1..].reverse();
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                color[u] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Checks a full orientation given as arcs: one arc per edge, then the
/// class condition.
pub fn verify_orientation(
    g: &Graph,
    arcs: &[(usize, usize)],
    class: OrientationClass,
) -> Result<(), VerifyError> {
    let mut dir: HashSet<(usize, usize)> = HashSet::with_capacity(arcs.len());
    for &(x, y) in arcs {
        if x >= g.n() || y >= g.n() || !g.has_edge(x, y) {
            return Err(VerifyError::NotAnEdge((x, y)));
        }
        if dir.contains(&(y, x)) || !dir.insert((x, y)) {
            return Err(VerifyError::EdgeCoverage((x.min(y), x.max(y))));
        }
    }
    if dir.len() != g.m() {
        let missing = g
            .edges()
            .iter()
            .find(|&&(u, v)| !dir.contains(&(u, v)) && !dir.contains(&(v, u)))
            .copied()
            .unwrap_or((0, 0));
        return Err(VerifyError::EdgeCoverage(missing));
    }
    if class != OrientationClass::GeneralizedOpposition {
        let mut succ = vec![Vec::new(); g.n()];
        for &(x, y) in arcs {
            succ[x].push(y);
        }
        if let Some(c) = find_cycle(g.n(), &succ) {
            return Err(VerifyError::Cyclic(c));
        }
    }
    for [a, b, c, d] in p4s(g) {
        let ab = dir.contains(&(a, b));
        let dc = dir.contains(&(d, c));
        let ok = match class {
            OrientationClass::Coalition => ab != dc,
            _ => ab == dc,
        };
        if !ok {
            return Err(VerifyError::BadP4([a, b, c, d]));
        }
    }
    Ok(())
}

/// Checks that an orientation given as arcs is transitive.
pub fn verify_transitive(g: &Graph, arcs: &[(usize, usize)]) -> Result<(), VerifyError> {
    let dir: HashSet<(usize, usize)> = arcs.iter().copied().collect();
    for &(a, b) in arcs {
        for &c in g.neighbors(b) {
            if dir.contains(&(b, c)) && !dir.contains(&(a, c)) {
                return Err(VerifyError::NotTransitive([a, b, c]));
            }
        }
    }
    Ok(())
}

/// Whether `{x, y}` is the first or last edge of some induced P4.
fn is_end_edge(g: &Graph, x: usize, y: usize) -> bool {
    if x >= g.n() || y >= g.n() || !g.has_edge(x, y) {
        return false;
    }
    [(x, y), (y, x)].iter().any(|&(a, b)| {
        g.neighbors(b).iter().any(|&c| {
            c != a
                && !g.has_edge(a, c)
                && g.neighbors(c)
                    .iter()
                    .any(|&d| d != b && d != a && !g.has_edge(d, b) && !g.has_edge(d, a))
        })
    })
}

fn is_induced_path(g: &Graph, [a, b, c, d]: [usize; 4]) -> bool {
    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
    distinct
        && g.has_edge(a, b)
        && g.has_edge(b, c)
        && g.has_edge(c, d)
        && !g.has_edge(a, c)
        && !g.has_edge(a, d)
        && !g.has_edge(b, d)
}

/// The adjacency predicate of the constraint graphs, straight from the
/// definition.
pub fn constraint_adjacent(g: &Graph, kind: ConstraintKind, p: ArcVar, q: ArcVar) -> bool {
    if p.tail == q.head && p.head == q.tail {
        return true;
    }
    let (x, y, u, v) = (p.tail, p.head, q.tail, q.head);
    match kind {
        ConstraintKind::Opposition => {
            is_induced_path(g, [x, y, u, v]) || is_induced_path(g, [u, v, x, y])
        }
        ConstraintKind::Coalition => {
            is_induced_path(g, [x, y, v, u]) || is_induced_path(g, [v, u, x, y])
        }
    }
}

/// Checks a closed walk of odd length in the constraint graph.
pub fn verify_odd_walk(
    g: &Graph,
    kind: ConstraintKind,
    walk: &[ArcVar],
) -> Result<(), VerifyError> {
    if walk.len() < 2 || walk.first() != walk.last() || (walk.len() - 1) % 2 == 0 {
        return Err(VerifyError::WalkShape);
    }
    for &v in walk {
        if !is_end_edge(g, v.tail, v.head) {
            return Err(VerifyError::NotEndEdge(v));
        }
    }
    for w in walk.windows(2) {
        if !constraint_adjacent(g, kind, w[0], w[1]) {
            return Err(VerifyError::BadHop(w[0], w[1]));
        }
    }
    Ok(())
}

/// Checks an induced copy of the named pattern.
pub fn verify_pattern(g: &Graph, m: &PatternMatch) -> Result<(), VerifyError> {
    let p = by_name(&m.pattern).map_err(|_| VerifyError::UnknownPattern(m.pattern.clone()))?;
    let k = p.graph.n();
    let bad = || VerifyError::BadEmbedding(m.pattern.clone());
    if m.embedding.len() != k || m.embedding.iter().any(|&v| v >= g.n()) {
        return Err(bad());
    }
    let distinct: HashSet<usize> = m.embedding.iter().copied().collect();
    if distinct.len() != k {
        return Err(bad());
    }
    for i in 0..k {
        for j in i + 1..k {
            if p.graph.has_edge(i, j) != g.has_edge(m.embedding[i], m.embedding[j]) {
                return Err(bad());
            }
        }
    }
    Ok(())
}

/// Rejection certificate for the flip search: a proper 2-colouring of the
/// constraint graph with its components, plus refuted flip prefixes.
pub fn verify_flip_exhaustion(
    g: &Graph,
    kind: ConstraintKind,
    vars: &[ArcVar],
    side: &[bool],
    component: &[usize],
    refutations: &[Refutation],
) -> Result<(), VerifyError> {
    let bad = |s: &str| VerifyError::BadBipartition(s.to_string());
    if side.len() != vars.len() || component.len() != vars.len() {
        return Err(bad("length mismatch"));
    }
    // the variable set must be exactly the ordered end-edge pairs
    let index: HashMap<ArcVar, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    if index.len() != vars.len() {
        return Err(bad("duplicate variable"));
    }
    let mut expected = HashSet::new();
    let quads = p4s(g);
    for &[a, b, c, d] in &quads {
        for (x, y) in [(a, b), (b, a), (c, d), (d, c)] {
            expected.insert(ArcVar { tail: x, head: y });
        }
    }
    if expected.len() != vars.len() || !vars.iter().all(|v| expected.contains(v)) {
        return Err(bad("variables are not the end-edge pairs"));
    }
    // constraint edges regenerated per P4
    let mut adj = vec![Vec::new(); vars.len()];
    let mut link = |p: ArcVar, q: ArcVar| {
        let (i, j) = (index[&p], index[&q]);
        adj[i].push(j);
        adj[j].push(i);
    };
    let var = |tail, head| ArcVar { tail, head };
    for v in vars {
        if v.tail < v.head {
            link(*v, var(v.head, v.tail));
        }
    }
    for &[a, b, c, d] in &quads {
        match kind {
            ConstraintKind::Opposition => {
                link(var(a, b), var(c, d));
                link(var(b, a), var(d, c));
            }
            ConstraintKind::Coalition => {
                link(var(a, b), var(d, c));
                link(var(b, a), var(c, d));
            }
        }
    }
    for i in 0..vars.len() {
        for &j in &adj[i] {
            if side[i] == side[j] {
                return Err(bad("adjacent variables share a side"));
            }
            if component[i] != component[j] {
                return Err(bad("adjacent variables in different components"));
            }
        }
    }
    let c = component.iter().map(|&x| x + 1).max().unwrap_or(0);
    // every label must be one connected class
    let mut seen = vec![false; vars.len()];
    let mut labels_seen = vec![false; c];
    for s in 0..vars.len() {
        if seen[s] {
            continue;
        }
        if std::mem::replace(&mut labels_seen[component[s]], true) {
            return Err(bad("component label spans several components"));
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    if labels_seen.iter().any(|&b| !b) {
        return Err(bad("unused component label"));
    }
    if c == 0 {
        // no constraints: D(A) is empty and acyclic
        return Err(VerifyError::IncompleteCover);
    }
    // prefix cover of all vectors with the first bit false
    let mut mass: u128 = 0;
    for (i, r) in refutations.iter().enumerate() {
        if r.prefix.is_empty() || r.prefix.len() > c || r.prefix[0] {
            return Err(VerifyError::IncompleteCover);
        }
        for (j, other) in refutations.iter().enumerate() {
            if i != j && other.prefix.len() <= r.prefix.len() && r.prefix.starts_with(&other.prefix)
            {
                return Err(VerifyError::IncompleteCover);
            }
        }
        let free = (c - r.prefix.len()) as u32;
        if free >= 127 {
            return Err(VerifyError::IncompleteCover);
        }
        mass += 1u128 << free;
        // the cycle must use only arcs forced under this prefix
        let k = r.cycle.len();
        if k < 3 || r.cycle.iter().collect::<HashSet<_>>().len() != k {
            return Err(VerifyError::BadCycle(r.cycle.clone()));
        }
        for t in 0..k {
            let arc = var(r.cycle[t], r.cycle[(t + 1) % k]);
            let forced = index.get(&arc).is_some_and(|&i| {
                let comp = component[i];
                comp < r.prefix.len() && side[i] != r.prefix[comp]
            });
            if !forced {
                return Err(VerifyError::BadCycle(r.cycle.clone()));
            }
        }
    }
    if c > 127 || mass != 1u128 << (c - 1) {
        return Err(VerifyError::IncompleteCover);
    }
    Ok(())
}

/// Re-checks the certificate of a verdict against its decision.
pub fn verify_verdict(g: &Graph, v: &Verdict) -> Result<(), VerifyError> {
    let kind = match v.class {
        OrientationClass::Coalition => ConstraintKind::Coalition,
        _ => ConstraintKind::Opposition,
    };
    let shape = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(VerifyError::DecisionMismatch)
        }
    };
    match (&v.certificate, v.decision) {
        (Certificate::Orientation { arcs }, Decision::Member) => {
            verify_orientation(g, arcs, v.class)
        }
        (Certificate::OddWalk(w), Decision::NonMember) => verify_odd_walk(g, kind, &w.walk),
        (Certificate::FlipExhaustion(f), Decision::NonMember) => {
            shape(v.class != OrientationClass::GeneralizedOpposition)?;
            verify_flip_exhaustion(g, kind, &f.vars, &f.side, &f.component, &f.refutations)
        }
        (Certificate::Pattern(m), Decision::NonMember) => {
            // only the net-like obstruction on distance-hereditary inputs is
            // used as a rejection certificate
            shape(
                v.class == OrientationClass::Coalition
                    && m.pattern == "N"
                    && is_distance_hereditary(g),
            )?;
            verify_pattern(g, m)
        }
        (Certificate::None, Decision::Undecided) => Ok(()),
        _ => Err(VerifyError::DecisionMismatch),
    }?;
    if let Some(w) = &v.witness {
        verify_pattern(g, w)?;
    }
    Ok(())
}

/// Definitional distance-hereditary test for small graphs: no house, gem,
/// domino, or hole, by exhaustive vertex subsets.
fn is_distance_hereditary(g: &Graph) -> bool {
    if g.n() > 12 {
        // too large for the subset scan
        return replay_pruning(g);
    }
    (0u32..1 << g.n()).all(|mask| {
        let vs: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        !is_small_obstruction(g, &vs)
    })
}

fn is_small_obstruction(g: &Graph, vs: &[usize]) -> bool {
    let k = vs.len();
    if k < 5 {
        return false;
    }
    let deg: Vec<usize> = vs
        .iter()
        .map(|&u| vs.iter().filter(|&&w| g.has_edge(u, w)).count())
        .collect();
    let edges: usize = deg.iter().sum::<usize>() / 2;
    let mut sorted = deg.clone();
    sorted.sort_unstable();
    // a connected 2-regular set is a hole
    let hole = deg.iter().all(|&d| d == 2) && connected(g, vs);
    let gem = k == 5 && edges == 7 && sorted == [2, 2, 3, 3, 4];
    let house = k == 5
        && edges == 6
        && sorted == [2, 2, 2, 3, 3]
        && connected(g, vs)
        && has_triangle(g, vs);
    let domino = k == 6
        && edges == 7
        && sorted == [2, 2, 2, 2, 3, 3]
        && connected(g, vs)
        && !has_triangle(g, vs);
    hole || gem || house || domino
}

fn connected(g: &Graph, vs: &[usize]) -> bool {
    let mut seen = vec![vs[0]];
    let mut i = 0;
    while i < seen.len() {
        let u = seen[i];
        i += 1;
        for &w in vs {
            if g.has_edge(u, w) && !seen.contains(&w) {
                seen.push(w);
            }
        }
    }
    seen.len() == vs.len()
}

fn has_triangle(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().enumerate().any(|(i, &a)| {
        vs[i + 1..].iter().enumerate().any(|(j, &b)| {
            g.has_edge(a, b)
                && vs[i + 1 + j + 1..]
                    .iter()
                    .any(|&c| g.has_edge(a, c) && g.has_edge(b, c))
        })
    })
}

/// Pendant and twin deletion by direct neighborhood comparison; succeeds
/// when only isolated vertices remain.
fn replay_pruning(g: &Graph) -> bool {
    let mut live: Vec<usize> = (0..g.n()).collect();
    loop {
        let nbs: Vec<Vec<usize>> = live
            .iter()
            .map(|&v| live.iter().copied().filter(|&u| g.has_edge(u, v)).collect())
            .collect();
        let pendant = (0..live.len()).find(|&i| nbs[i].len() == 1);
        let twin = || {
            (0..live.len()).find_map(|i| {
                (i + 1..live.len()).find_map(|j| {
                    let (u, w) = (live[i], live[j]);
                    let a: Vec<usize> = nbs[i].iter().copied().filter(|&x| x != w).collect();
                    let b: Vec<usize> = nbs[j].iter().copied().filter(|&x| x != u).collect();
                    (a == b && (!a.is_empty() || g.has_edge(u, w))).then_some(j)
                })
            })
        };
        match pendant.or_else(twin) {
            Some(i) => {
                live.remove(i);
            }
            None => return nbs.iter().all(|nb| nb.is_empty()),
        }
    }
}
