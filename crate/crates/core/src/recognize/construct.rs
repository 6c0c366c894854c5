//! Layered construction of opposition orientations for ptolemaic graphs.
//!
//! Each component is rooted at a vertex `w` and split into BFS layers. Edges
//! between layers `i` and `i+1` point outward when `i mod 4` is 0 or 1 and
//! inward otherwise. A P4 whose end-edge lies inside one layer gets that
//! end-edge opposed to its other end-edge. Free edges are completed along a
//! topological order.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::constraint::{
    bipartition_or_odd_walk, directed_cycle, extend_acyclic, search_acyclic_flips, ConstraintGraph,
    ConstraintKind, FlipSearch, TwoColoring,
};
use crate::detect::{find_induced, find_max_hk, hk_vertex, is_ptolemaic, patterns, HkVariant};
use crate::graph::{Graph, Orientation, PartialOrientation};
use crate::p4::{
    check_orientation, classify_layer_type, induced_p4s, layer_decompose, LayerType,
    OrientationClass, OrientationDefect, P4,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("graph is not ptolemaic")]
    NotPtolemaic,
    #[error("P4 {0:?} fits no layer type")]
    Unclassified(P4),
    #[error("edge {edge:?} gets opposite directions from P4s {first:?} and {second:?}")]
    Conflict {
        edge: (usize, usize),
        first: P4,
        second: P4,
    },
    #[error("forced arcs close a directed cycle {0:?}")]
    ForcedCycle(Vec<usize>),
    #[error("constructed orientation fails the check: {0}")]
    Verification(OrientationDefect),
    #[error("P5-free component {0:?} has no acyclic flip vector")]
    NoFlip(Vec<usize>),
    #[error("flip search on P5-free component {0:?} exceeded its cap")]
    CapExceeded(Vec<usize>),
}

/// How the root of one component was chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum RootChoice {
    /// `v_k` of a largest induced `H_k` / `H_k^-`.
    Gadget {
        k: usize,
        variant: HkVariant,
        root: usize,
    },
    /// Middle vertex of an induced `P5`.
    PathMiddle { root: usize },
    /// The component has no induced `P5`; solved by flip search.
    FlipSearch,
    /// Single vertex or no P4 at all; any acyclic orientation works.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub orientation: Orientation,
    /// One entry per component, in order of smallest vertex.
    pub roots: Vec<RootChoice>,
}

/// Builds and verifies an opposition orientation of a ptolemaic graph that
/// is an opposition graph.
pub fn ptolemaic_opposition_orient(
    g: &Graph,
    flip_cap: u64,
) -> Result<Construction, ConstructError> {
    if !is_ptolemaic(g) {
        return Err(ConstructError::NotPtolemaic);
    }
    let mut arcs = Vec::with_capacity(g.m());
    let mut roots = Vec::new();
    for comp in g.components() {
        let (h, map) = g
            .induced_subgraph(&comp)
            .expect("component vertices are valid");
        let (o, root) = orient_component(&h, flip_cap, &map)?;
        roots.push(root);
        arcs.extend(o.arcs(&h).into_iter().map(|(x, y)| (map[x], map[y])));
    }
    let orientation = Orientation::from_arcs(g, &arcs).expect("components partition the edges");
    check_orientation(g, &orientation, OrientationClass::Opposition)
        .map_err(ConstructError::Verification)?;
    Ok(Construction { orientation, roots })
}

fn lift(p: P4, map: &[usize]) -> P4 {
    P4::new(map[p.a], map[p.b], map[p.c], map[p.d])
}

fn orient_component(
    h: &Graph,
    flip_cap: u64,
    map: &[usize],
) -> Result<(Orientation, RootChoice), ConstructError> {
    let p4s = induced_p4s(h);
    if p4s.is_empty() {
        let o = Orientation::from_order(h, &(0..h.n()).collect::<Vec<_>>());
        return Ok((o, RootChoice::Trivial));
    }
    let choice = if let Some((k, variant, m)) = find_max_hk(h) {
        RootChoice::Gadget {
            k,
            variant,
            root: m.embedding[hk_vertex(k, 0)],
        }
    } else if let Some(m) = find_induced(h, &patterns::path(5)) {
        RootChoice::PathMiddle {
            root: m.embedding[2],
        }
    } else {
        let o = flip_search_component(h, flip_cap, map)?;
        return Ok((o, RootChoice::FlipSearch));
    };
    let w = match choice {
        RootChoice::Gadget { root, .. } | RootChoice::PathMiddle { root } => root,
        _ => unreachable!(),
    };
    let o = layered_orientation(h, w, &p4s).map_err(|e| lift_error(e, map))?;
    let lifted = |root: usize| map[root];
    let choice = match choice {
        RootChoice::Gadget { k, variant, root } => RootChoice::Gadget {
            k,
            variant,
            root: lifted(root),
        },
        RootChoice::PathMiddle { root } => RootChoice::PathMiddle { root: lifted(root) },
        other => other,
    };
    Ok((o, choice))
}

fn lift_error(e: ConstructError, map: &[usize]) -> ConstructError {
    match e {
        ConstructError::Unclassified(p) => ConstructError::Unclassified(lift(p, map)),
        ConstructError::Conflict {
            edge,
            first,
            second,
        } => ConstructError::Conflict {
            edge: (map[edge.0], map[edge.1]),
            first: lift(first, map),
            second: lift(second, map),
        },
        ConstructError::ForcedCycle(c) => {
            ConstructError::ForcedCycle(c.iter().map(|&v| map[v]).collect())
        }
        ConstructError::Verification(OrientationDefect::BadP4 { p4, kind }) => {
            ConstructError::Verification(OrientationDefect::BadP4 {
                p4: lift(p4, map),
                kind,
            })
        }
        ConstructError::Verification(OrientationDefect::Cyclic(c)) => ConstructError::Verification(
            OrientationDefect::Cyclic(c.iter().map(|&v| map[v]).collect()),
        ),
        other => other,
    }
}

/// The layer rule plus the type D/E end-edge rule, rooted at `w`, on a
/// connected graph.
pub fn layered_orientation(h: &Graph, w: usize, p4s: &[P4]) -> Result<Orientation, ConstructError> {
    let layers = layer_decompose(h, w).expect("component is connected");
    let mut forced = PartialOrientation::new(h);
    for &(u, v) in h.edges() {
        let (lu, lv) = (layers.layer[u], layers.layer[v]);
        if lu == lv {
            continue;
        }
        let (inner, outer, i) = if lu < lv { (u, v, lu) } else { (v, u, lv) };
        let (x, y) = if i % 4 <= 1 {
            (inner, outer)
        } else {
            (outer, inner)
        };
        forced.direct(h, x, y).expect("each edge directed once");
    }
    let mut setter: HashMap<usize, P4> = HashMap::new();
    for &p in p4s {
        let class = classify_layer_type(&p, &layers).ok_or(ConstructError::Unclassified(p))?;
        if !matches!(class.kind, LayerType::D | LayerType::E) {
            continue;
        }
        let [a, b, c, d] = class.path;
        // c→d forces b→a, d→c forces a→b
        let (x, y) = if forced.has_arc(h, c, d) {
            (b, a)
        } else {
            (a, b)
        };
        let e = h.edge_id(a, b).expect("end-edge");
        match forced.direction(h, x, y) {
            Some(true) => {}
            Some(false) => {
                return Err(ConstructError::Conflict {
                    edge: (a.min(b), a.max(b)),
                    first: setter[&e],
                    second: p,
                })
            }
            None => {
                forced.direct(h, x, y).expect("undirected edge");
                setter.insert(e, p);
            }
        }
    }
    if let Some(cycle) = directed_cycle(h, &forced) {
        return Err(ConstructError::ForcedCycle(cycle));
    }
    let o = extend_acyclic(h, &forced).expect("checked acyclic");
    check_orientation(h, &o, OrientationClass::Opposition).map_err(ConstructError::Verification)?;
    Ok(o)
}

fn flip_search_component(
    h: &Graph,
    cap: u64,
    map: &[usize],
) -> Result<Orientation, ConstructError> {
    let cg = ConstraintGraph::build(h, ConstraintKind::Opposition);
    let vertices = || map.to_vec();
    let b = match bipartition_or_odd_walk(&cg) {
        TwoColoring::Bipartite(b) => b,
        TwoColoring::OddWalk(_) => return Err(ConstructError::NoFlip(vertices())),
    };
    match search_acyclic_flips(h, &cg, &b, cap) {
        FlipSearch::Found { forced, .. } => {
            Ok(extend_acyclic(h, &forced).expect("search returns acyclic arcs"))
        }
        FlipSearch::Exhausted { .. } => Err(ConstructError::NoFlip(vertices())),
        FlipSearch::CapExceeded { .. } => Err(ConstructError::CapExceeded(vertices())),
    }
}

/// A twin deletion: `removed` was a twin of `kept` when it was deleted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwinRemoval {
    pub removed: usize,
    pub kept: usize,
}

/// Deletes twins one at a time until the remaining graph is ptolemaic or has
/// no twins. Returns the surviving vertices and the deletions in order.
pub fn reduce_twins_to_ptolemaic(g: &Graph) -> (Vec<usize>, Vec<TwinRemoval>) {
    let mut alive: Vec<usize> = (0..g.n()).collect();
    let mut removals = Vec::new();
    loop {
        let (h, _) = g.induced_subgraph(&alive).expect("subset");
        if is_ptolemaic(&h) {
            break;
        }
        let Some((u, v)) = first_twins(&h) else {
            break;
        };
        removals.push(TwinRemoval {
            removed: alive[v],
            kept: alive[u],
        });
        alive.remove(v);
    }
    (alive, removals)
}

/// Some twin pair `(kept, removed)` of `h`, found by grouping neighborhoods.
fn first_twins(h: &Graph) -> Option<(usize, usize)> {
    let mut open: HashMap<&[usize], usize> = HashMap::new();
    let mut closed: HashMap<Vec<usize>, usize> = HashMap::new();
    for v in 0..h.n() {
        let nb = h.neighbors(v);
        if !nb.is_empty() {
            if let Some(&u) = open.get(nb) {
                return Some((u, v));
            }
            open.insert(nb, v);
        }
        let mut cl = nb.to_vec();
        cl.insert(cl.partition_point(|&x| x < v), v);
        if let Some(&u) = closed.get(&cl) {
            return Some((u, v));
        }
        closed.insert(cl, v);
    }
    None
}

/// Extends an opposition orientation of `g - removed` to `g` by placing each
/// deleted twin right after its partner in a topological order.
pub fn reinsert_twins(
    g: &Graph,
    core: &[usize],
    core_orientation: &Orientation,
    removals: &[TwinRemoval],
) -> Orientation {
    let (h, map) = g.induced_subgraph(core).expect("subset");
    let p = core_orientation.to_partial();
    let order = match crate::constraint::is_acyclic(&h, &p) {
        crate::constraint::Acyclicity::Acyclic(order) => order,
        crate::constraint::Acyclicity::Cyclic(_) => panic!("core orientation must be acyclic"),
    };
    let mut order: Vec<usize> = order.into_iter().map(|v| map[v]).collect();
    for r in removals.iter().rev() {
        let at = order
            .iter()
            .position(|&v| v == r.kept)
            .expect("partner present");
        order.insert(at + 1, r.removed);
    }
    Orientation::from_order(g, &order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{h_k, t_k};
    use crate::oracle::oracle_opposition;

    const CAP: u64 = 1 << 20;

    #[test]
    fn h1_rooted_at_v1_is_a_source() {
        let p = h_k(1, HkVariant::Full).unwrap();
        let c = ptolemaic_opposition_orient(&p.graph, CAP).unwrap();
        let v1 = p.role("v1").unwrap();
        assert_eq!(
            c.roots,
            vec![RootChoice::Gadget {
                k: 1,
                variant: HkVariant::Full,
                root: v1
            }]
        );
        assert_eq!(c.orientation.out_degree(&p.graph, v1), 3);
        assert_eq!(c.orientation.in_degree(&p.graph, v1), 0);
    }

    #[test]
    fn hk_family_is_constructible() {
        for k in 1..=4 {
            for var in [HkVariant::Full, HkVariant::Minus] {
                let p = h_k(k, var).unwrap();
                let c = ptolemaic_opposition_orient(&p.graph, CAP).unwrap();
                match c.roots[0] {
                    RootChoice::Gadget { k: kk, root, .. } => {
                        assert_eq!(kk, k);
                        assert_eq!(p.graph.label(root), format!("v{k}"));
                    }
                    ref other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn p5_uses_middle_vertex() {
        let g = Graph::path(5);
        let c = ptolemaic_opposition_orient(&g, CAP).unwrap();
        assert_eq!(c.roots, vec![RootChoice::PathMiddle { root: 2 }]);
    }

    #[test]
    fn small_cases_and_components() {
        let c = ptolemaic_opposition_orient(&Graph::empty(3), CAP).unwrap();
        assert_eq!(c.roots.len(), 3);
        let two_paths =
            Graph::from_edges(9, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7), (7, 8)])
                .unwrap();
        let c = ptolemaic_opposition_orient(&two_paths, CAP).unwrap();
        assert_eq!(c.roots[0], RootChoice::FlipSearch);
        assert!(matches!(c.roots[1], RootChoice::PathMiddle { .. }));
    }

    #[test]
    fn rejects_non_ptolemaic() {
        assert_eq!(
            ptolemaic_opposition_orient(&Graph::cycle(4), CAP).unwrap_err(),
            ConstructError::NotPtolemaic
        );
    }

    #[test]
    fn non_member_fails_loudly() {
        let t1 = t_k(1).unwrap().graph;
        assert!(!oracle_opposition(&t1, false).unwrap().member);
        assert!(ptolemaic_opposition_orient(&t1, CAP).is_err());
    }

    #[test]
    fn twin_reduction_round_trip() {
        // C4 with a pendant on each corner, plus a false twin of corner 0
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
                (8, 1),
                (8, 3),
                (8, 4),
            ],
        )
        .unwrap();
        let (core, removals) = reduce_twins_to_ptolemaic(&g);
        assert_eq!(
            removals,
            vec![TwinRemoval {
                removed: 8,
                kept: 0
            }]
        );
        assert_eq!(core.len(), 8);
    }
}
