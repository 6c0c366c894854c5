//! Decision procedures returning verdicts with checkable certificates.

pub mod construct;

use serde::{Deserialize, Serialize};

use crate::constraint::{
    bipartition_or_odd_walk, complete_by_id, extend_acyclic, forced_orientation,
    search_acyclic_flips, ArcVar, Bipartition, ConstraintGraph, ConstraintKind, FlipSearch,
    OddWalkCertificate, Refutation, TwoColoring,
};
use crate::detect::{
    distance_hereditary, find_hole, find_induced, find_tk, patterns, DistanceHereditary,
    PatternMatch,
};
use crate::graph::{Graph, Orientation};
use crate::p4::OrientationClass;
use crate::transitive::transitive_orient;

pub use construct::{
    ptolemaic_opposition_orient, reduce_twins_to_ptolemaic, reinsert_twins, ConstructError,
    Construction, RootChoice, TwinRemoval,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_FLIP_CAP: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Member,
    NonMember,
    Undecided,
}

/// Which route produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Two-colouring of the constraint graph, no acyclicity involved.
    AuxBipartiteness,
    /// The constraint graph has an odd closed walk.
    AuxOddWalk,
    /// Distance-hereditary input: layered construction per component.
    DistanceHereditaryConstruction,
    /// Distance-hereditary input: twins deleted down to a ptolemaic core,
    /// constructed there, then reinserted.
    DistanceHereditaryTwinReduction,
    /// Distance-hereditary input: orientation found by flip search.
    DistanceHereditaryFlipSearch,
    /// Gem- and house-free input: any side of the bipartition works.
    GemHouseFreeBipartition,
    /// Gem-, house- and hole-free input: any side of the bipartition works.
    GemHouseHoleFreeBipartition,
    /// Distance-hereditary input: transitive orientation.
    DistanceHereditaryComparability,
    /// Distance-hereditary input containing the net-like obstruction `N`.
    ForbiddenN,
    /// Search over per-component side choices.
    FlipSearch,
}

/// The certificate attached to a verdict; serialized as `{kind, data}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "kebab-case")]
pub enum Certificate {
    /// One `(tail, head)` arc per edge.
    Orientation {
        arcs: Vec<(usize, usize)>,
    },
    OddWalk(OddWalkCertificate),
    /// Every flip vector yields a directed cycle.
    FlipExhaustion(FlipExhaustion),
    Pattern(PatternMatch),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipExhaustion {
    pub vars: Vec<ArcVar>,
    /// `true` = side A.
    pub side: Vec<bool>,
    pub component: Vec<usize>,
    pub refutations: Vec<Refutation>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub p4_count: usize,
    pub aux_vertices: usize,
    pub aux_components: Option<usize>,
    pub flips_tried: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub schema_version: u32,
    pub class: OrientationClass,
    pub decision: Decision,
    pub method: Method,
    pub certificate: Certificate,
    /// A forbidden induced subgraph, when requested and found.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<PatternMatch>,
    pub stats: Stats,
}

impl Verdict {
    pub fn orientation(&self, g: &Graph) -> Option<Orientation> {
        match &self.certificate {
            Certificate::Orientation { arcs } => Orientation::from_arcs(g, arcs).ok(),
            _ => None,
        }
    }

    pub fn is_member(&self) -> bool {
        self.decision == Decision::Member
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecognizeOptions {
    pub flip_cap: u64,
    /// Also look for a forbidden induced subgraph on rejection.
    pub want_witness: bool,
    /// Try the structural shortcuts before the generic search.
    pub fast_paths: bool,
}

impl Default for RecognizeOptions {
    fn default() -> Self {
        RecognizeOptions {
            flip_cap: DEFAULT_FLIP_CAP,
            want_witness: false,
            fast_paths: true,
        }
    }
}

struct Aux {
    cg: ConstraintGraph,
    coloring: TwoColoring,
}

impl Aux {
    fn new(g: &Graph, kind: ConstraintKind) -> Self {
        let cg = ConstraintGraph::build(g, kind);
        let coloring = bipartition_or_odd_walk(&cg);
        Aux { cg, coloring }
    }

    fn stats(&self) -> Stats {
        Stats {
            p4_count: self.cg.p4_count(),
            aux_vertices: self.cg.len(),
            aux_components: match &self.coloring {
                TwoColoring::Bipartite(b) => Some(b.components),
                TwoColoring::OddWalk(_) => None,
            },
            flips_tried: 0,
        }
    }
}

fn verdict(
    class: OrientationClass,
    decision: Decision,
    method: Method,
    certificate: Certificate,
    stats: Stats,
) -> Verdict {
    Verdict {
        schema_version: SCHEMA_VERSION,
        class,
        decision,
        method,
        certificate,
        witness: None,
        stats,
    }
}

fn member(
    class: OrientationClass,
    method: Method,
    g: &Graph,
    o: &Orientation,
    stats: Stats,
) -> Verdict {
    verdict(
        class,
        Decision::Member,
        method,
        Certificate::Orientation { arcs: o.arcs(g) },
        stats,
    )
}

fn odd_walk_rejection(
    class: OrientationClass,
    method: Method,
    w: OddWalkCertificate,
    stats: Stats,
) -> Verdict {
    verdict(
        class,
        Decision::NonMember,
        method,
        Certificate::OddWalk(w),
        stats,
    )
}

/// Dispatches on the class.
pub fn recognize(g: &Graph, class: OrientationClass, opts: &RecognizeOptions) -> Verdict {
    match class {
        OrientationClass::Opposition => recognize_opposition(g, opts),
        OrientationClass::GeneralizedOpposition => recognize_generalized_opposition(g),
        OrientationClass::Coalition => recognize_coalition(g, opts),
    }
}

/// Member iff the opposition constraint graph is bipartite. The certificate
/// orients end-edges by one side and the other edges by id; it may contain
/// cycles.
pub fn recognize_generalized_opposition(g: &Graph) -> Verdict {
    let class = OrientationClass::GeneralizedOpposition;
    let aux = Aux::new(g, ConstraintKind::Opposition);
    let stats = aux.stats();
    match aux.coloring {
        TwoColoring::Bipartite(b) => {
            let flips = vec![false; b.components];
            let o = complete_by_id(g, &forced_orientation(g, &aux.cg, &b, &flips));
            member(class, Method::AuxBipartiteness, g, &o, stats)
        }
        TwoColoring::OddWalk(w) => odd_walk_rejection(class, Method::AuxOddWalk, w, stats),
    }
}

fn is_gem_house_free(g: &Graph) -> bool {
    find_induced(g, &patterns::gem()).is_none() && find_induced(g, &patterns::house()).is_none()
}

/// Structural shortcuts first (distance-hereditary, then gem- and
/// house-free), then the generic flip search.
pub fn recognize_opposition(g: &Graph, opts: &RecognizeOptions) -> Verdict {
    let mut v = if !opts.fast_paths {
        recognize_opposition_generic(g, opts)
    } else if matches!(distance_hereditary(g, false), DistanceHereditary::Yes(_)) {
        recognize_opposition_distance_hereditary(g, opts)
    } else if is_gem_house_free(g) {
        recognize_opposition_gem_house_free(g, opts)
    } else {
        recognize_opposition_generic(g, opts)
    };
    if opts.want_witness && v.decision == Decision::NonMember && v.witness.is_none() {
        v.witness = opposition_witness(g);
    }
    v
}

/// Searches the known minimal non-opposition graphs and odd holes.
pub fn opposition_witness(g: &Graph) -> Option<PatternMatch> {
    if let Some((_, m)) = find_tk(g) {
        return Some(m);
    }
    for p in [
        patterns::a_graph(),
        patterns::g1(),
        patterns::g2(),
        patterns::cycle(5),
    ] {
        if let Some(m) = find_induced(g, &p) {
            return Some(m);
        }
    }
    None
}

/// Bipartiteness, then flip search for an acyclic `D(A)`.
pub fn recognize_opposition_generic(g: &Graph, opts: &RecognizeOptions) -> Verdict {
    flip_search_route(
        g,
        OrientationClass::Opposition,
        ConstraintKind::Opposition,
        opts,
    )
}

fn flip_search_route(
    g: &Graph,
    class: OrientationClass,
    kind: ConstraintKind,
    opts: &RecognizeOptions,
) -> Verdict {
    let aux = Aux::new(g, kind);
    let mut stats = aux.stats();
    let b = match aux.coloring {
        TwoColoring::Bipartite(b) => b,
        TwoColoring::OddWalk(w) => return odd_walk_rejection(class, Method::AuxOddWalk, w, stats),
    };
    match search_acyclic_flips(g, &aux.cg, &b, opts.flip_cap) {
        FlipSearch::Found { forced, tried, .. } => {
            stats.flips_tried = tried;
            let o = extend_acyclic(g, &forced).expect("search returns acyclic arcs");
            member(class, Method::FlipSearch, g, &o, stats)
        }
        FlipSearch::Exhausted { refutations, tried } => {
            stats.flips_tried = tried;
            let cert = FlipExhaustion {
                vars: aux.cg.vars().to_vec(),
                side: b.side,
                component: b.component,
                refutations,
            };
            verdict(
                class,
                Decision::NonMember,
                Method::FlipSearch,
                Certificate::FlipExhaustion(cert),
                stats,
            )
        }
        FlipSearch::CapExceeded { tried } => {
            stats.flips_tried = tried;
            verdict(
                class,
                Decision::Undecided,
                Method::FlipSearch,
                Certificate::None,
                stats,
            )
        }
    }
}

/// For gem- and house-free graphs every side of a bipartition of the
/// opposition constraint graph gives an acyclic partial orientation. Other
/// inputs are passed to [`recognize_opposition_generic`].
pub fn recognize_opposition_gem_house_free(g: &Graph, opts: &RecognizeOptions) -> Verdict {
    if !is_gem_house_free(g) {
        return recognize_opposition_generic(g, opts);
    }
    any_side_route(
        g,
        OrientationClass::Opposition,
        ConstraintKind::Opposition,
        Method::GemHouseFreeBipartition,
        opts,
    )
}

fn any_side_route(
    g: &Graph,
    class: OrientationClass,
    kind: ConstraintKind,
    method: Method,
    opts: &RecognizeOptions,
) -> Verdict {
    let aux = Aux::new(g, kind);
    let mut stats = aux.stats();
    match aux.coloring {
        TwoColoring::Bipartite(b) => {
            stats.flips_tried = 1;
            match orient_from_side(g, &aux.cg, &b) {
                Some(o) => member(class, method, g, &o, stats),
                // only reachable if the shortcut were wrong; fall back
                None => flip_search_route(g, class, kind, opts),
            }
        }
        TwoColoring::OddWalk(w) => odd_walk_rejection(class, method, w, stats),
    }
}

fn orient_from_side(g: &Graph, cg: &ConstraintGraph, b: &Bipartition) -> Option<Orientation> {
    let flips = vec![false; b.components];
    extend_acyclic(g, &forced_orientation(g, cg, b, &flips)).ok()
}

/// Distance-hereditary route: decided by bipartiteness. Members are
/// oriented by the layered construction (after twin deletion if the graph
/// is not ptolemaic), with flip search as a fallback.
pub fn recognize_opposition_distance_hereditary(g: &Graph, opts: &RecognizeOptions) -> Verdict {
    if !matches!(distance_hereditary(g, false), DistanceHereditary::Yes(_)) {
        return recognize_opposition(g, opts);
    }
    let class = OrientationClass::Opposition;
    let aux = Aux::new(g, ConstraintKind::Opposition);
    let stats = aux.stats();
    if let TwoColoring::OddWalk(w) = aux.coloring {
        let mut v = odd_walk_rejection(class, Method::AuxOddWalk, w, stats);
        if opts.want_witness {
            v.witness = opposition_witness(g);
        }
        return v;
    }
    let (core, removals) = reduce_twins_to_ptolemaic(g);
    if removals.is_empty() {
        if let Ok(c) = ptolemaic_opposition_orient(g, opts.flip_cap) {
            return member(
                class,
                Method::DistanceHereditaryConstruction,
                g,
                &c.orientation,
                stats,
            );
        }
    } else {
        let (h, _) = g.induced_subgraph(&core).expect("subset");
        if let Ok(c) = ptolemaic_opposition_orient(&h, opts.flip_cap) {
            let o = reinsert_twins(g, &core, &c.orientation, &removals);
            if crate::p4::check_orientation(g, &o, class).is_ok() {
                return member(class, Method::DistanceHereditaryTwinReduction, g, &o, stats);
            }
        }
    }
    let mut v = flip_search_route(g, class, ConstraintKind::Opposition, opts);
    if v.method == Method::FlipSearch {
        v.method = Method::DistanceHereditaryFlipSearch;
    }
    v
}

/// Shortcuts: distance-hereditary inputs via comparability, gem-, house-
/// and hole-free inputs via any bipartition side; otherwise flip search.
pub fn recognize_coalition(g: &Graph, opts: &RecognizeOptions) -> Verdict {
    if !opts.fast_paths {
        return flip_search_route(
            g,
            OrientationClass::Coalition,
            ConstraintKind::Coalition,
            opts,
        );
    }
    if matches!(distance_hereditary(g, false), DistanceHereditary::Yes(_)) {
        return recognize_coalition_distance_hereditary(g, opts);
    }
    if is_gem_house_free(g) && find_hole(g).is_none() {
        return any_side_route(
            g,
            OrientationClass::Coalition,
            ConstraintKind::Coalition,
            Method::GemHouseHoleFreeBipartition,
            opts,
        );
    }
    flip_search_route(
        g,
        OrientationClass::Coalition,
        ConstraintKind::Coalition,
        opts,
    )
}

/// Distance-hereditary coalition graphs are exactly the `N`-free ones, and
/// exactly the comparability graphs.
pub fn recognize_coalition_distance_hereditary(g: &Graph, opts: &RecognizeOptions) -> Verdict {
    if !matches!(distance_hereditary(g, false), DistanceHereditary::Yes(_)) {
        return recognize_coalition(g, opts);
    }
    let class = OrientationClass::Coalition;
    let p4_count = crate::p4::induced_p4s(g).len();
    let stats = Stats {
        p4_count,
        ..Stats::default()
    };
    if let Some(m) = find_induced(g, &patterns::n_graph()) {
        return verdict(
            class,
            Decision::NonMember,
            Method::ForbiddenN,
            Certificate::Pattern(m),
            stats,
        );
    }
    match transitive_orient(g) {
        Some(o) => member(class, Method::DistanceHereditaryComparability, g, &o, stats),
        // N-free distance-hereditary graphs are comparability graphs, so this
        // only guards against a wrong shortcut
        None => flip_search_route(g, class, ConstraintKind::Coalition, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{h_k, t_k, HkVariant};
    use crate::verify;

    fn prism() -> Graph {
        Graph::from_edges(
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
        .unwrap()
    }

    fn check(g: &Graph, v: &Verdict) {
        let kind = match v.class {
            OrientationClass::Coalition => ConstraintKind::Coalition,
            _ => ConstraintKind::Opposition,
        };
        match &v.certificate {
            Certificate::Orientation { arcs } => {
                verify::verify_orientation(g, arcs, v.class).unwrap()
            }
            Certificate::OddWalk(w) => verify::verify_odd_walk(g, kind, &w.walk).unwrap(),
            Certificate::FlipExhaustion(f) => verify::verify_flip_exhaustion(
                g,
                kind,
                &f.vars,
                &f.side,
                &f.component,
                &f.refutations,
            )
            .unwrap(),
            Certificate::Pattern(m) => verify::verify_pattern(g, m).unwrap(),
            Certificate::None => assert_eq!(v.decision, Decision::Undecided),
        }
    }

    #[test]
    fn prism_is_generalized_but_not_opposition() {
        let g = prism();
        let opts = RecognizeOptions::default();
        let gen = recognize_generalized_opposition(&g);
        assert!(gen.is_member());
        check(&g, &gen);
        let opp = recognize_opposition(&g, &opts);
        assert_eq!(opp.decision, Decision::NonMember);
        assert_eq!(opp.method, Method::FlipSearch);
        check(&g, &opp);
    }

    #[test]
    fn c5_rejections() {
        let g = Graph::cycle(5);
        let v = recognize_generalized_opposition(&g);
        assert_eq!(v.method, Method::AuxOddWalk);
        check(&g, &v);
        let v = recognize_opposition(&g, &RecognizeOptions::default());
        assert_eq!(v.decision, Decision::NonMember);
        check(&g, &v);
    }

    #[test]
    fn split_graph_member() {
        let mut e = Graph::complete(4).edges().to_vec();
        e.push((0, 4));
        let g = Graph::from_edges(5, &e).unwrap();
        let v = recognize_opposition(&g, &RecognizeOptions::default());
        assert!(v.is_member());
        check(&g, &v);
    }

    #[test]
    fn t1_and_witness() {
        let g = t_k(1).unwrap().graph;
        let opts = RecognizeOptions {
            want_witness: true,
            ..Default::default()
        };
        let v = recognize_opposition(&g, &opts);
        assert_eq!(v.decision, Decision::NonMember);
        check(&g, &v);
        assert_eq!(v.witness.as_ref().unwrap().pattern, "T1");
    }

    #[test]
    fn coalition_cases() {
        let opts = RecognizeOptions::default();
        let net = patterns::n_graph().graph;
        let v = recognize_coalition(&net, &opts);
        assert_eq!(
            (v.decision, v.method),
            (Decision::NonMember, Method::ForbiddenN)
        );
        check(&net, &v);
        let c6 = Graph::cycle(6);
        let v = recognize_coalition(&c6, &opts);
        assert!(v.is_member());
        check(&c6, &v);
        let h1 = h_k(1, HkVariant::Full).unwrap().graph;
        let v = recognize_coalition(&h1, &opts);
        assert!(v.is_member());
        check(&h1, &v);
        let c5 = Graph::cycle(5);
        let v = recognize_coalition(&c5, &opts);
        check(&c5, &v);
    }

    #[test]
    fn h2_constructed() {
        let g = h_k(2, HkVariant::Full).unwrap().graph;
        let v = recognize_opposition(&g, &RecognizeOptions::default());
        assert_eq!(v.method, Method::DistanceHereditaryConstruction);
        check(&g, &v);
    }

    #[test]
    fn undecided_on_zero_cap() {
        let g = prism();
        let opts = RecognizeOptions {
            flip_cap: 0,
            ..Default::default()
        };
        let v = recognize_opposition(&g, &opts);
        assert_eq!(v.decision, Decision::Undecided);
        check(&g, &v);
    }

    #[test]
    fn verdict_json_shape() {
        let v = recognize_opposition(&Graph::path(4), &RecognizeOptions::default());
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["class"], "opposition");
        assert_eq!(json["decision"], "member");
        assert_eq!(json["certificate"]["kind"], "orientation");
        assert_eq!(json["stats"]["p4_count"], 1);
        let back: Verdict = serde_json::from_value(json).unwrap();
        assert_eq!(back, v);
    }
}
