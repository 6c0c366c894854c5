//! Immutable simple undirected graphs and edge orientations.
//!
//! Vertices are dense ids `0..n`. Every vertex keeps a sorted neighbor list, and
//! every undirected edge `{u, v}` with `u < v` has a stable index into
//! [`Graph::edges`]. Orientations are stored per edge index.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("label list has {got} entries, expected {n}")]
    LabelCount { got: usize, n: usize },
    #[error("duplicate vertex {0} in vertex set")]
    DuplicateVertex(usize),
    #[error("{x} and {y} are not adjacent")]
    NotAnEdge { x: usize, y: usize },
    #[error("orientation covers {got} edges, graph has {m}")]
    OrientationSize { got: usize, m: usize },
    #[error("edge {{{x}, {y}}} directed both ways")]
    ConflictingDirection { x: usize, y: usize },
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    adj_edge: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either direction)
    /// are collapsed; self-loops and out-of-range ids are errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    pub fn with_labels(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in norm.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        let (adj, adj_edge): (Vec<Vec<usize>>, Vec<Vec<usize>>) = adj
            .into_iter()
            .map(|mut list: Vec<(usize, usize)>| {
                list.sort_unstable();
                list.into_iter().unzip()
            })
            .unzip();
        let g = Graph {
            adj,
            adj_edge,
            edges: norm,
            labels,
        };
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, &[]).expect("edgeless graph is valid")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges).expect("star is simple")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Index of the edge `{u, v}` in [`Graph::edges`], if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n() || v >= self.n() {
            return None;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a]
            .binary_search(&b)
            .ok()
            .map(|pos| self.adj_edge[a][pos])
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn relabeled(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n() {
            return Err(GraphError::LabelCount {
                got: labels.len(),
                n: self.n(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn complement(&self) -> Self {
        let n = self.n();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Self::with_labels(self.labels.clone(), &edges).expect("complement is simple")
    }

    /// Sorted common neighbors of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS distances from `root`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// The subgraph induced by `vertices`. Vertex `i` of the result is
    /// `vertices[i]` of `self`; that map is returned alongside.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let n = self.n();
        let mut local = vec![usize::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if local[v] != usize::MAX {
                return Err(GraphError::DuplicateVertex(v));
            }
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let sub = Graph::with_labels(labels, &edges)?;
        Ok((sub, vertices.to_vec()))
    }

    /// `self` with vertex `v` removed.
    pub fn delete_vertex(&self, v: usize) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep).expect("ids in range")
    }
}

/// A full orientation: every edge of the base graph gets exactly one direction.
///
/// `forward[e]` is true when edge `e = (u, v)`, `u < v`, is directed `u -> v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orientation {
    forward: Vec<bool>,
}

impl Orientation {
    pub fn from_forward(g: &Graph, forward: Vec<bool>) -> Result<Self, GraphError> {
        if forward.len() != g.m() {
            return Err(GraphError::OrientationSize {
                got: forward.len(),
                m: g.m(),
            });
        }
        Ok(Orientation { forward })
    }

    /// Orients `u -> v` whenever `position[u] < position[v]`.
    pub fn from_positions(g: &Graph, position: &[usize]) -> Self {
        let forward = g
            .edges()
            .iter()
            .map(|&(u, v)| position[u] < position[v])
            .collect();
        Orientation { forward }
    }

    /// Orients along a linear order given as a vertex sequence.
    pub fn from_order(g: &Graph, order: &[usize]) -> Self {
        let mut position = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        Self::from_positions(g, &position)
    }

    /// Builds an orientation from an explicit arc list covering every edge once.
    pub fn from_arcs(g: &Graph, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut dir = vec![None; g.m()];
        for &(x, y) in arcs {
            let e = g.edge_id(x, y).ok_or(GraphError::NotAnEdge { x, y })?;
            let fwd = x < y;
            match dir[e] {
                Some(prev) if prev != fwd => return Err(GraphError::ConflictingDirection { x, y }),
                _ => dir[e] = Some(fwd),
            }
        }
        let got = dir.iter().filter(|d| d.is_some()).count();
        if got != g.m() {
            return Err(GraphError::OrientationSize { got, m: g.m() });
        }
        Ok(Orientation {
            forward: dir.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// The arc for edge `e` as `(tail, head)`.
    pub fn arc(&self, g: &Graph, e: usize) -> (usize, usize) {
        let (u, v) = g.edges()[e];
        if self.forward[e] {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// True iff `{x, y}` is an edge directed `x -> y`.
    pub fn has_arc(&self, g: &Graph, x: usize, y: usize) -> bool {
        match g.edge_id(x, y) {
            Some(e) => self.forward[e] == (x < y),
            None => false,
        }
    }

    pub fn arcs(&self, g: &Graph) -> Vec<(usize, usize)> {
        (0..g.m()).map(|e| self.arc(g, e)).collect()
    }

    pub fn reversed(&self) -> Self {
        Orientation {
            forward: self.forward.iter().map(|f| !f).collect(),
        }
    }

    pub fn out_degree(&self, g: &Graph, v: usize) -> usize {
        g.neighbors(v)
            .iter()
            .filter(|&&w| self.has_arc(g, v, w))
            .count()
    }

    pub fn in_degree(&self, g: &Graph, v: usize) -> usize {
        g.degree(v) - self.out_degree(g, v)
    }

    pub fn to_partial(&self) -> PartialOrientation {
        PartialOrientation {
            dir: self.forward.iter().map(|&f| Some(f)).collect(),
        }
    }
}

/// Directions for a subset of the edges of a base graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialOrientation {
    dir: Vec<Option<bool>>,
}

impl PartialOrientation {
    pub fn new(g: &Graph) -> Self {
        PartialOrientation {
            dir: vec![None; g.m()],
        }
    }

    /// Directs `x -> y`. Re-directing an edge the same way is a no-op; the
    /// opposite direction is an error.
    pub fn direct(&mut self, g: &Graph, x: usize, y: usize) -> Result<(), GraphError> {
        let e = g.edge_id(x, y).ok_or(GraphError::NotAnEdge { x, y })?;
        let fwd = x < y;
        match self.dir[e] {
            Some(prev) if prev != fwd => Err(GraphError::ConflictingDirection { x, y }),
            _ => {
                self.dir[e] = Some(fwd);
                Ok(())
            }
        }
    }

    pub fn edge_direction(&self, e: usize) -> Option<bool> {
        self.dir[e]
    }

    /// `Some(true)` if `x -> y`, `Some(false)` if `y -> x`, `None` if undirected.
    pub fn direction(&self, g: &Graph, x: usize, y: usize) -> Option<bool> {
        let e = g.edge_id(x, y)?;
        self.dir[e].map(|f| f == (x < y))
    }

    pub fn has_arc(&self, g: &Graph, x: usize, y: usize) -> bool {
        self.direction(g, x, y) == Some(true)
    }

    pub fn directed_count(&self) -> usize {
        self.dir.iter().filter(|d| d.is_some()).count()
    }

    pub fn arcs(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
            .iter()
            .zip(&self.dir)
            .filter_map(|(&(u, v), d)| d.map(|f| if f { (u, v) } else { (v, u) }))
            .collect()
    }

    /// Converts to a full orientation if every edge is directed.
    pub fn to_orientation(&self) -> Option<Orientation> {
        self.dir
            .iter()
            .copied()
            .collect::<Option<Vec<bool>>>()
            .map(|forward| Orientation { forward })
    }

    /// Out-neighbors in the directed part, per vertex.
    pub fn successors(&self, g: &Graph) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); g.n()];
        for (x, y) in self.arcs(g) {
            out[x].push(y);
        }
        for list in &mut out {
            list.sort_unstable();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_collapse_and_loops_fail() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(
            Graph::from_edges(2, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let g = Graph::from_edges(5, &[(4, 0), (2, 0), (3, 1), (0, 1)]).unwrap();
        for u in 0..g.n() {
            assert!(g.neighbors(u).windows(2).all(|w| w[0] < w[1]));
            for &v in g.neighbors(u) {
                assert!(g.neighbors(v).contains(&u));
                let e = g.edge_id(u, v).unwrap();
                assert_eq!(g.edges()[e], (u.min(v), u.max(v)));
            }
        }
    }

    #[test]
    fn c5_minus_vertex_is_p4() {
        let c5 = Graph::cycle(5);
        let (sub, map) = c5.induced_subgraph(&[0, 1, 2, 3]).unwrap();
        assert_eq!(map, vec![0, 1, 2, 3]);
        assert_eq!(sub.edges(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn induced_subgraph_on_all_vertices_is_identity() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let all: Vec<_> = (0..4).collect();
        assert_eq!(g.induced_subgraph(&all).unwrap().0, g);
    }

    #[test]
    fn induced_subgraph_rejects_bad_ids() {
        let g = Graph::path(3);
        assert!(g.induced_subgraph(&[0, 7]).is_err());
        assert!(g.induced_subgraph(&[0, 0]).is_err());
    }

    #[test]
    fn orientation_from_order_and_reverse() {
        let g = Graph::path(3);
        let o = Orientation::from_order(&g, &[2, 0, 1]);
        assert!(o.has_arc(&g, 0, 1));
        assert!(o.has_arc(&g, 2, 1));
        let r = o.reversed();
        assert!(r.has_arc(&g, 1, 0));
        assert_eq!(o.out_degree(&g, 1), 0);
        assert_eq!(o.in_degree(&g, 1), 2);
    }

    #[test]
    fn from_arcs_requires_every_edge_once() {
        let g = Graph::path(3);
        assert!(Orientation::from_arcs(&g, &[(0, 1)]).is_err());
        assert!(Orientation::from_arcs(&g, &[(0, 1), (1, 0), (1, 2)]).is_err());
        let o = Orientation::from_arcs(&g, &[(1, 0), (1, 2)]).unwrap();
        assert_eq!(o.arcs(&g), vec![(1, 0), (1, 2)]);
    }

    #[test]
    fn partial_orientation_conflicts() {
        let g = Graph::path(3);
        let mut p = PartialOrientation::new(&g);
        p.direct(&g, 1, 0).unwrap();
        p.direct(&g, 1, 0).unwrap();
        assert!(p.direct(&g, 0, 1).is_err());
        assert!(p.direct(&g, 0, 2).is_err());
        assert_eq!(p.direction(&g, 0, 1), Some(false));
        assert_eq!(p.directed_count(), 1);
        assert!(p.to_orientation().is_none());
    }
}
