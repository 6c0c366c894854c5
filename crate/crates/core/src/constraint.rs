//! Auxiliary constraint graphs over end-edge orientations.
//!
//! For every end-edge `{x, y}` of an induced P4 there are two variables,
//! `(x, y)` and `(y, x)`, one per direction. Two variables are joined when they
//! cannot both hold: the two directions of one edge, and for the opposition
//! kind `(x,y) ~ (u,v)` whenever `xyuv` or `uvxy` is an induced P4, for the
//! coalition kind whenever `xyvu` or `vuxy` is. A 2-colouring picks one side
//! `A`; directing `x -> y` for every `(x, y) ∈ A` satisfies every P4.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Orientation, PartialOrientation};
use crate::p4::{end_edges_of, induced_p4s, P4};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintKind {
    Opposition,
    Coalition,
}

/// One direction `tail -> head` of an end-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcVar {
    pub tail: usize,
    pub head: usize,
}

impl ArcVar {
    pub fn swapped(self) -> Self {
        ArcVar {
            tail: self.head,
            head: self.tail,
        }
    }
}

/// `O(G)` or `C(G)` for a base graph.
///
/// Variable `2t` is `(u, v)` and `2t + 1` is `(v, u)` for the `t`-th end-edge
/// `u < v`, so a variable's negation is `i ^ 1`.
#[derive(Clone, Debug)]
pub struct ConstraintGraph {
    kind: ConstraintKind,
    vars: Vec<ArcVar>,
    index: HashMap<(usize, usize), usize>,
    adj: Vec<Vec<usize>>,
    p4_count: usize,
    base_n: usize,
}

impl ConstraintGraph {
    pub fn build(g: &Graph, kind: ConstraintKind) -> Self {
        let p4s = induced_p4s(g);
        Self::from_p4s(g, kind, &p4s)
    }

    /// Builds from a precomputed P4 list of `g`.
    pub fn from_p4s(g: &Graph, kind: ConstraintKind, p4s: &[P4]) -> Self {
        let ends = end_edges_of(p4s);
        let mut vars = Vec::with_capacity(2 * ends.len());
        let mut index = HashMap::with_capacity(2 * ends.len());
        for &(u, v) in &ends {
            index.insert((u, v), vars.len());
            vars.push(ArcVar { tail: u, head: v });
            index.insert((v, u), vars.len());
            vars.push(ArcVar { tail: v, head: u });
        }
        let mut adj = vec![Vec::new(); vars.len()];
        for i in (0..vars.len()).step_by(2) {
            adj[i].push(i + 1);
            adj[i + 1].push(i);
        }
        let mut link = |x: (usize, usize), y: (usize, usize)| {
            let (i, j) = (index[&x], index[&y]);
            adj[i].push(j);
            adj[j].push(i);
        };
        for p in p4s {
            let P4 { a, b, c, d } = *p;
            match kind {
                ConstraintKind::Opposition => {
                    link((a, b), (c, d));
                    link((b, a), (d, c));
                }
                ConstraintKind::Coalition => {
                    link((a, b), (d, c));
                    link((b, a), (c, d));
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        ConstraintGraph {
            kind,
            vars,
            index,
            adj,
            p4_count: p4s.len(),
            base_n: g.n(),
        }
    }

    pub fn kind(&self) -> ConstraintKind {
        self.kind
    }

    pub fn vars(&self) -> &[ArcVar] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var_index(&self, tail: usize, head: usize) -> Option<usize> {
        self.index.get(&(tail, head)).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn p4_count(&self) -> usize {
        self.p4_count
    }

    pub fn base_n(&self) -> usize {
        self.base_n
    }

    /// The constraint graph as a plain [`Graph`] whose vertex labels read
    /// `xy` (or `x,y` when a label is longer than one character).
    pub fn to_graph(&self, base: &Graph) -> Graph {
        let short = base.labels().iter().all(|l| l.chars().count() == 1);
        let labels = self
            .vars
            .iter()
            .map(|v| {
                if short {
                    format!("{}{}", base.label(v.tail), base.label(v.head))
                } else {
                    format!("{},{}", base.label(v.tail), base.label(v.head))
                }
            })
            .collect();
        let mut edges = Vec::new();
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::with_labels(labels, &edges).expect("constraint graph is simple")
    }

    /// DOT rendering; with a bipartition, side `A` vertices are filled.
    pub fn to_dot(&self, base: &Graph, sides: Option<&Bipartition>) -> String {
        let h = self.to_graph(base);
        let highlight: Option<Vec<usize>> =
            sides.map(|b| (0..self.len()).filter(|&i| b.side[i]).collect());
        let mut dot = crate::io::emit_dot(&h, None, highlight.as_deref());
        if let Some(b) = sides {
            let mut note = String::new();
            let _ = writeln!(note, "  // {} component(s); filled = side A", b.components);
            dot.insert_str(dot.find('\n').map(|i| i + 1).unwrap_or(0), &note);
        }
        dot
    }
}

/// A proper 2-colouring of a constraint graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    /// `true` = side A.
    pub side: Vec<bool>,
    pub component: Vec<usize>,
    pub components: usize,
}

/// A closed walk `w[0], ..., w[k] = w[0]` with `k` odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddWalkCertificate {
    pub walk: Vec<ArcVar>,
}

impl OddWalkCertificate {
    pub fn hops(&self) -> usize {
        self.walk.len().saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoColoring {
    Bipartite(Bipartition),
    OddWalk(OddWalkCertificate),
}

/// BFS 2-colouring. Components are numbered in order of their smallest
/// variable; the smallest variable of each component is on side A.
pub fn bipartition_or_odd_walk(cg: &ConstraintGraph) -> TwoColoring {
    let n = cg.len();
    let mut side = vec![false; n];
    let mut component = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut comps = 0;
    for s in 0..n {
        if component[s] != usize::MAX {
            continue;
        }
        component[s] = comps;
        side[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in cg.neighbors(u) {
                if component[v] == usize::MAX {
                    component[v] = comps;
                    side[v] = !side[u];
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                } else if side[v] == side[u] {
                    return TwoColoring::OddWalk(odd_walk(cg, &parent, &depth, u, v));
                }
            }
        }
        comps += 1;
    }
    TwoColoring::Bipartite(Bipartition {
        side,
        component,
        components: comps,
    })
}

fn odd_walk(
    cg: &ConstraintGraph,
    parent: &[usize],
    depth: &[usize],
    u: usize,
    v: usize,
) -> OddWalkCertificate {
    let (mut x, mut y) = (u, v);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    // left: u .. lca, right: v .. lca; walk lca .. u, v .. lca
    right.pop();
    let mut walk: Vec<usize> = left.into_iter().rev().collect();
    walk.extend(right);
    walk.push(walk[0]);
    OddWalkCertificate {
        walk: walk.into_iter().map(|i| cg.vars()[i]).collect(),
    }
}

/// The partial orientation `D(A)`: each variable on the chosen side directs
/// its edge. `flips[c]` swaps the roles of A and B in component `c`.
pub fn forced_orientation(
    g: &Graph,
    cg: &ConstraintGraph,
    b: &Bipartition,
    flips: &[bool],
) -> PartialOrientation {
    let mut p = PartialOrientation::new(g);
    for (i, var) in cg.vars().iter().enumerate() {
        if b.side[i] != flips[b.component[i]] {
            p.direct(g, var.tail, var.head)
                .expect("a bipartition puts (x,y) and (y,x) on different sides");
        }
    }
    p
}

/// A directed cycle `v0 -> v1 -> ... -> v(k-1) -> v0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedCycleCertificate {
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acyclicity {
    /// A topological order of all vertices.
    Acyclic(Vec<usize>),
    Cyclic(DirectedCycleCertificate),
}

/// Some directed cycle of the directed part, if any.
pub fn directed_cycle(g: &Graph, p: &PartialOrientation) -> Option<Vec<usize>> {
    match is_acyclic(g, p) {
        Acyclicity::Acyclic(_) => None,
        Acyclicity::Cyclic(c) => Some(c.cycle),
    }
}

/// Kahn's algorithm with smallest-id tie-breaking; on failure a cycle is
/// extracted from the unsorted remainder.
pub fn is_acyclic(g: &Graph, p: &PartialOrientation) -> Acyclicity {
    let succ = p.successors(g);
    let n = g.n();
    let mut indeg = vec![0usize; n];
    for list in &succ {
        for &y in list {
            indeg[y] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &y in &succ[v] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                heap.push(Reverse(y));
            }
        }
    }
    if order.len() == n {
        return Acyclicity::Acyclic(order);
    }
    // Every remaining vertex has a remaining predecessor; walk backwards.
    let mut pred = vec![usize::MAX; n];
    for x in 0..n {
        if indeg[x] == 0 {
            continue;
        }
        for &y in &succ[x] {
            if indeg[y] > 0 && pred[y] == usize::MAX {
                pred[y] = x;
            }
        }
    }
    let start = (0..n).find(|&v| indeg[v] > 0).unwrap();
    let mut seen = vec![usize::MAX; n];
    let mut v = start;
    let mut trail = Vec::new();
    while seen[v] == usize::MAX {
        seen[v] = trail.len();
        trail.push(v);
        v = pred[v];
    }
    let mut cycle = trail[seen[v]..].to_vec();
    cycle.reverse();
    Acyclicity::Cyclic(DirectedCycleCertificate { cycle })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    #[error("partial orientation has a directed cycle {0:?}")]
    Cyclic(Vec<usize>),
}

/// Completes an acyclic partial orientation along its smallest-id
/// topological order.
pub fn extend_acyclic(g: &Graph, p: &PartialOrientation) -> Result<Orientation, ExtendError> {
    match is_acyclic(g, p) {
        Acyclicity::Acyclic(order) => Ok(Orientation::from_order(g, &order)),
        Acyclicity::Cyclic(c) => Err(ExtendError::Cyclic(c.cycle)),
    }
}

/// Completes a partial orientation without regard to cycles: undirected
/// edges go from the smaller to the larger id.
pub fn complete_by_id(g: &Graph, p: &PartialOrientation) -> Orientation {
    let forward = (0..g.m())
        .map(|e| p.edge_direction(e).unwrap_or(true))
        .collect();
    Orientation::from_forward(g, forward).expect("one entry per edge")
}

/// A pruned branch of the flip search: every flip vector extending `prefix`
/// yields a `D(A)` containing `cycle`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub prefix: Vec<bool>,
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlipSearch {
    Found {
        flips: Vec<bool>,
        forced: PartialOrientation,
        tried: u64,
    },
    /// The refuted prefixes cover every flip vector with `flips[0] = false`;
    /// the others are their global reversals.
    Exhausted {
        refutations: Vec<Refutation>,
        tried: u64,
    },
    CapExceeded {
        tried: u64,
    },
}

/// Searches flip vectors for an acyclic `D(A)`.
///
/// Components are assigned in index order with component 0 fixed (reversing
/// every arc preserves acyclicity). A branch is cut as soon as the arcs of
/// the assigned components close a directed cycle. `cap` bounds the number
/// of visited branches.
pub fn search_acyclic_flips(
    g: &Graph,
    cg: &ConstraintGraph,
    b: &Bipartition,
    cap: u64,
) -> FlipSearch {
    let c = b.components;
    if c == 0 {
        return FlipSearch::Found {
            flips: Vec::new(),
            forced: PartialOrientation::new(g),
            tried: 1,
        };
    }
    // arcs[comp][flip]
    let mut arcs = vec![[Vec::new(), Vec::new()]; c];
    for (i, var) in cg.vars().iter().enumerate() {
        let comp = b.component[i];
        let flip = usize::from(!b.side[i]);
        arcs[comp][flip].push((var.tail, var.head));
    }
    let mut state = Search {
        g,
        arcs: &arcs,
        cap,
        tried: 0,
        prefix: Vec::with_capacity(c),
        refutations: Vec::new(),
    };
    match state.descend() {
        Step::Found => {
            let flips = state.prefix.clone();
            let forced = forced_orientation(g, cg, b, &flips);
            FlipSearch::Found {
                flips,
                forced,
                tried: state.tried,
            }
        }
        Step::Refuted => FlipSearch::Exhausted {
            refutations: state.refutations,
            tried: state.tried,
        },
        Step::Cap => FlipSearch::CapExceeded { tried: state.tried },
    }
}

enum Step {
    Found,
    Refuted,
    Cap,
}

struct Search<'a> {
    g: &'a Graph,
    arcs: &'a [[Vec<(usize, usize)>; 2]],
    cap: u64,
    tried: u64,
    prefix: Vec<bool>,
    refutations: Vec<Refutation>,
}

impl Search<'_> {
    fn descend(&mut self) -> Step {
        let choices: &[bool] = if self.prefix.is_empty() {
            &[false]
        } else {
            &[false, true]
        };
        for &flip in choices {
            self.tried += 1;
            if self.tried > self.cap {
                return Step::Cap;
            }
            self.prefix.push(flip);
            let mut p = PartialOrientation::new(self.g);
            for (comp, &f) in self.prefix.iter().enumerate() {
                for &(x, y) in &self.arcs[comp][usize::from(f)] {
                    p.direct(self.g, x, y)
                        .expect("components direct disjoint edges");
                }
            }
            match directed_cycle(self.g, &p) {
                Some(cycle) => self.refutations.push(Refutation {
                    prefix: self.prefix.clone(),
                    cycle,
                }),
                None if self.prefix.len() == self.arcs.len() => return Step::Found,
                None => match self.descend() {
                    Step::Refuted => {}
                    other => return other,
                },
            }
            self.prefix.pop();
        }
        Step::Refuted
    }
}
