//! Induced P4s, their oriented types, and BFS-layer types in ptolemaic graphs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Orientation};

/// A chordless path `a - b - c - d`, stored with `a < d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct P4 {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl P4 {
    /// Canonicalizes the path order so that the first end-vertex is smaller.
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        if a < d {
            P4 { a, b, c, d }
        } else {
            P4 {
                a: d,
                b: c,
                c: b,
                d: a,
            }
        }
    }

    pub fn vertices(&self) -> [usize; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn end_edges(&self) -> [(usize, usize); 2] {
        [(self.a, self.b), (self.c, self.d)]
    }

    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let [a, b, c, d] = self.vertices();
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        distinct
            && g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && !g.has_edge(a, c)
            && !g.has_edge(a, d)
            && !g.has_edge(b, d)
    }
}

/// All induced P4s of `g`, each once, sorted.
///
/// Walks every mid-edge `bc` and pairs `a ∈ N(b) \ N[c]` with
/// `d ∈ N(c) \ N[b]`, `ad ∉ E`.
pub fn induced_p4s(g: &Graph) -> Vec<P4> {
    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        for (b, c) in [(u, v), (v, u)] {
            for &a in g.neighbors(b) {
                if a == c || g.has_edge(a, c) {
                    continue;
                }
                for &d in g.neighbors(c) {
                    // each path is met from both mid-edge directions
                    if d <= a || d == b || g.has_edge(d, b) || g.has_edge(a, d) {
                        continue;
                    }
                    out.push(P4 { a, b, c, d });
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Edges that are the first or last edge of some induced P4, as `(u, v)`
/// with `u < v`, sorted.
pub fn end_edges(g: &Graph) -> Vec<(usize, usize)> {
    end_edges_of(&induced_p4s(g))
}

pub fn end_edges_of(p4s: &[P4]) -> Vec<(usize, usize)> {
    let set: BTreeSet<(usize, usize)> = p4s
        .iter()
        .flat_map(|p| p.end_edges())
        .map(|(x, y)| (x.min(y), x.max(y)))
        .collect();
    set.into_iter().collect()
}

/// The four oriented-P4 types.
///
/// Reading the path so that the mid-edge points forward (`b -> c`):
/// type 0 has `a -> b`, `d -> c`; type 1 has `b -> a`, `c -> d`;
/// type 2 has `a -> b`, `c -> d`. Type 3 has both end-edges aligned with each
/// other and the mid-edge against them (`a -> b`, `c -> b`, `c -> d`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum P4Type {
    Zero,
    One,
    Two,
    Three,
}

impl P4Type {
    pub fn as_u8(self) -> u8 {
        match self {
            P4Type::Zero => 0,
            P4Type::One => 1,
            P4Type::Two => 2,
            P4Type::Three => 3,
        }
    }

    /// End-edges in opposition (types 0 and 1).
    pub fn is_opposed(self) -> bool {
        matches!(self, P4Type::Zero | P4Type::One)
    }

    /// End-edges pointing the same way along the path (types 2 and 3).
    pub fn is_aligned(self) -> bool {
        !self.is_opposed()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum P4Error {
    #[error("{0:?} is not an induced P4 of the base graph")]
    NotInduced(P4),
}

pub fn p4_type(g: &Graph, p: &P4, o: &Orientation) -> Result<P4Type, P4Error> {
    if !p.is_induced_in(g) {
        return Err(P4Error::NotInduced(*p));
    }
    Ok(p4_type_unchecked(g, p, o))
}

/// Same as [`p4_type`] without re-checking that `p` is induced.
pub fn p4_type_unchecked(g: &Graph, p: &P4, o: &Orientation) -> P4Type {
    let [a, b, c, d] = if o.has_arc(g, p.b, p.c) {
        p.vertices()
    } else {
        [p.d, p.c, p.b, p.a]
    };
    match (o.has_arc(g, a, b), o.has_arc(g, c, d)) {
        (true, false) => P4Type::Zero,
        (false, true) => P4Type::One,
        (true, true) => P4Type::Two,
        (false, false) => P4Type::Three,
    }
}

/// Orientation classes checked by [`check_orientation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrientationClass {
    /// Acyclic, every P4 of type 0 or 1.
    Opposition,
    /// Every P4 of type 0 or 1; cycles allowed.
    GeneralizedOpposition,
    /// Acyclic, every P4 of type 2 or 3.
    Coalition,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrientationDefect {
    #[error("orientation has a directed cycle through {0:?}")]
    Cyclic(Vec<usize>),
    #[error("P4 {p4:?} has type {}", kind.as_u8())]
    BadP4 { p4: P4, kind: P4Type },
    #[error("orientation length {got} does not match {m} edges")]
    WrongSize { got: usize, m: usize },
}

/// The membership predicate for orientation classes: acyclicity where
/// required plus the per-P4 type condition.
pub fn check_orientation(
    g: &Graph,
    o: &Orientation,
    class: OrientationClass,
) -> Result<(), OrientationDefect> {
    if o.len() != g.m() {
        return Err(OrientationDefect::WrongSize {
            got: o.len(),
            m: g.m(),
        });
    }
    if class != OrientationClass::GeneralizedOpposition {
        if let Some(cycle) = crate::constraint::directed_cycle(g, &o.to_partial()) {
            return Err(OrientationDefect::Cyclic(cycle));
        }
    }
    for p in induced_p4s(g) {
        let kind = p4_type_unchecked(g, &p, o);
        let ok = match class {
            OrientationClass::Coalition => kind.is_aligned(),
            _ => kind.is_opposed(),
        };
        if !ok {
            return Err(OrientationDefect::BadP4 { p4: p, kind });
        }
    }
    Ok(())
}

/// BFS layers `N_i(root)` of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub root: usize,
    pub layer: Vec<usize>,
}

impl LayerDecomposition {
    pub fn depth(&self) -> usize {
        self.layer.iter().copied().max().unwrap_or(0)
    }

    /// Vertices of layer `i`, sorted.
    pub fn members(&self, i: usize) -> Vec<usize> {
        (0..self.layer.len())
            .filter(|&v| self.layer[v] == i)
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayerError {
    #[error("vertex {vertex} is not reachable from root {root}")]
    Disconnected { root: usize, vertex: usize },
    #[error("root {0} out of range")]
    BadRoot(usize),
}

pub fn layer_decompose(g: &Graph, root: usize) -> Result<LayerDecomposition, LayerError> {
    if root >= g.n() {
        return Err(LayerError::BadRoot(root));
    }
    let dist = g.bfs_distances(root);
    let mut layer = Vec::with_capacity(g.n());
    for (v, d) in dist.into_iter().enumerate() {
        match d {
            Some(d) => layer.push(d),
            None => return Err(LayerError::Disconnected { root, vertex: v }),
        }
    }
    Ok(LayerDecomposition { root, layer })
}

/// How a P4 sits across consecutive BFS layers of a ptolemaic graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LayerType {
    /// `a, b, c, d` in layers `i, i+1, i+2, i+3`.
    A,
    /// `b, c` in `i`; `a, d` in `i+1`.
    B,
    /// `b` in `i`; `a, c` in `i+1`; `d` in `i+2`.
    C,
    /// `a, b` in `i`; `c` in `i+1`; `d` in `i+2`.
    D,
    /// `a, b, c` in `i`; `d` in `i+1`.
    E,
}

/// A layer type together with the path order matching its role labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayerClass {
    pub kind: LayerType,
    /// `[a, b, c, d]` as in the type's description.
    pub path: [usize; 4],
    /// The base layer index `i`.
    pub base: usize,
}

/// Classifies `p` against the layering. Returns `None` when no type fits,
/// which cannot happen in a ptolemaic graph.
pub fn classify_layer_type(p: &P4, layers: &LayerDecomposition) -> Option<LayerClass> {
    let fwd = p.vertices();
    let rev = [p.d, p.c, p.b, p.a];
    for path in [fwd, rev] {
        let [la, lb, lc, ld] = path.map(|v| layers.layer[v]);
        let kind = if lb == la + 1 && lc == la + 2 && ld == la + 3 {
            Some((LayerType::A, la))
        } else if lb == lc && la == lb + 1 && ld == lb + 1 {
            Some((LayerType::B, lb))
        } else if la == lb + 1 && lc == lb + 1 && ld == lb + 2 {
            Some((LayerType::C, lb))
        } else if la == lb && lc == la + 1 && ld == la + 2 {
            Some((LayerType::D, la))
        } else if la == lb && lb == lc && ld == la + 1 {
            Some((LayerType::E, la))
        } else {
            None
        };
        if let Some((kind, base)) = kind {
            return Some(LayerClass { kind, path, base });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_edge_list;

    fn orient(g: &Graph, arcs: &[(usize, usize)]) -> Orientation {
        Orientation::from_arcs(g, arcs).unwrap()
    }

    fn brute_p4s(g: &Graph) -> Vec<P4> {
        let n = g.n();
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let p = P4 { a, b, c, d };
                        if p.is_induced_in(g) {
                            out.insert(P4::new(a, b, c, d));
                        }
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn p4_itself_and_c5() {
        assert_eq!(induced_p4s(&Graph::path(4)), vec![P4::new(0, 1, 2, 3)]);
        let c5 = Graph::cycle(5);
        assert_eq!(induced_p4s(&c5).len(), 5);
        assert_eq!(induced_p4s(&c5), brute_p4s(&c5));
    }

    #[test]
    fn c4_has_no_end_edges() {
        assert!(end_edges(&Graph::cycle(4)).is_empty());
        assert_eq!(end_edges(&Graph::path(4)), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn figure_two_end_edges_are_triangle_edges() {
        let g = parse_edge_list("1 3\n3 5\n5 1\n2 4\n4 6\n6 2\n1 4\n3 6\n5 2\n").unwrap();
        let id = |s: &str| g.labels().iter().position(|l| l == s).unwrap();
        let mut tri: Vec<(usize, usize)> = [
            ("1", "3"),
            ("3", "5"),
            ("5", "1"),
            ("2", "4"),
            ("4", "6"),
            ("6", "2"),
        ]
        .iter()
        .map(|&(x, y)| (id(x).min(id(y)), id(x).max(id(y))))
        .collect();
        tri.sort();
        assert_eq!(end_edges(&g), tri);
        for p in induced_p4s(&g) {
            let (b, c) = (p.b.min(p.c), p.b.max(p.c));
            assert!(!tri.contains(&(b, c)), "mid-edge must be a matching edge");
        }
    }

    #[test]
    fn h1_end_edges_cover_all_edges() {
        // v0'' v0' v1 v1' v1'' path plus v0 on v1
        let h1 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        assert_eq!(end_edges(&h1).len(), 5);
        assert_eq!(induced_p4s(&h1).len(), 4);
    }

    #[test]
    fn figure_one_types() {
        let g = Graph::path(4);
        assert_eq!(
            p4_type(
                &g,
                &P4::new(0, 1, 2, 3),
                &orient(&g, &[(0, 1), (1, 2), (3, 2)])
            )
            .unwrap(),
            P4Type::Zero
        );
        assert_eq!(
            p4_type(
                &g,
                &P4::new(0, 1, 2, 3),
                &orient(&g, &[(1, 0), (1, 2), (2, 3)])
            )
            .unwrap(),
            P4Type::One
        );
        assert_eq!(
            p4_type(
                &g,
                &P4::new(0, 1, 2, 3),
                &orient(&g, &[(0, 1), (1, 2), (2, 3)])
            )
            .unwrap(),
            P4Type::Two
        );
        assert_eq!(
            p4_type(
                &g,
                &P4::new(0, 1, 2, 3),
                &orient(&g, &[(0, 1), (2, 1), (2, 3)])
            )
            .unwrap(),
            P4Type::Three
        );
    }

    #[test]
    fn type_is_independent_of_path_reading() {
        let g = Graph::path(4);
        for mask in 0..8u32 {
            let fwd: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
            let o = Orientation::from_forward(&g, fwd).unwrap();
            let t1 = p4_type_unchecked(
                &g,
                &P4 {
                    a: 0,
                    b: 1,
                    c: 2,
                    d: 3,
                },
                &o,
            );
            let t2 = p4_type_unchecked(
                &g,
                &P4 {
                    a: 3,
                    b: 2,
                    c: 1,
                    d: 0,
                },
                &o,
            );
            assert_eq!(t1, t2);
        }
    }

    #[test]
    fn type_rejects_non_induced() {
        let g = Graph::cycle(4);
        let o = Orientation::from_order(&g, &[0, 1, 2, 3]);
        assert!(p4_type(&g, &P4::new(0, 1, 2, 3), &o).is_err());
    }

    #[test]
    fn layers_of_p5_and_c5() {
        let p5 = Graph::path(5);
        let l = layer_decompose(&p5, 2).unwrap();
        assert_eq!(l.members(0), vec![2]);
        assert_eq!(l.members(1), vec![1, 3]);
        assert_eq!(l.members(2), vec![0, 4]);
        let c5 = Graph::cycle(5);
        for w in 0..5 {
            let l = layer_decompose(&c5, w).unwrap();
            let sizes: Vec<_> = (0..=l.depth()).map(|i| l.members(i).len()).collect();
            assert_eq!(sizes, vec![1, 2, 2]);
        }
        let two = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(
            layer_decompose(&two, 0),
            Err(LayerError::Disconnected { root: 0, vertex: 2 })
        );
    }

    #[test]
    fn layer_types_of_simple_shapes() {
        // type A on a path rooted at an end
        let p4 = Graph::path(4);
        let l = layer_decompose(&p4, 0).unwrap();
        let c = classify_layer_type(&P4::new(0, 1, 2, 3), &l).unwrap();
        assert_eq!((c.kind, c.base, c.path), (LayerType::A, 0, [0, 1, 2, 3]));
        // type B: edge 1-2 in layer 1 of root 0, ends 3,4 in layer 2
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]).unwrap();
        let l = layer_decompose(&g, 0).unwrap();
        let c = classify_layer_type(&P4::new(3, 1, 2, 4), &l).unwrap();
        assert_eq!((c.kind, c.base), (LayerType::B, 1));
    }

    #[test]
    fn h1_rooted_at_v1_gives_type_c() {
        // ids: 0=v0'', 1=v0', 2=v1, 3=v1', 4=v1'', 5=v0
        let h1 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        let l = layer_decompose(&h1, 2).unwrap();
        assert_eq!(l.members(1), vec![1, 3, 5]);
        assert_eq!(l.members(2), vec![0, 4]);
        let c = classify_layer_type(&P4::new(0, 1, 2, 5), &l).unwrap();
        assert_eq!(c.kind, LayerType::C);
        assert_eq!(c.base, 0);
        assert_eq!(c.path, [5, 2, 1, 0]);
    }
}
