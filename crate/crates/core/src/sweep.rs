//! Corpus sweeps: recognizer against oracle, and the structural
//! equivalences on trees and distance-hereditary graphs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::constraint::{bipartition_or_odd_walk, ConstraintGraph, ConstraintKind, TwoColoring};
use crate::corpus;
use crate::detect::{find_induced, find_tk, patterns};
use crate::graph::Graph;
use crate::io::to_graph6;
use crate::oracle::{oracle_coalition, oracle_opposition, MAX_ORDER_VERTICES};
use crate::p4::OrientationClass;
use crate::recognize::{
    ptolemaic_opposition_orient, recognize, recognize_opposition, Decision, RecognizeOptions,
};
use crate::transitive::transitive_orient;
use crate::verify::{verify_orientation, verify_verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub graph6: String,
    pub detail: String,
}

/// Counts per named outcome plus every failing graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub graphs: usize,
    pub tallies: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl SweepReport {
    fn count(&mut self, key: impl Into<String>) {
        *self.tallies.entry(key.into()).or_default() += 1;
    }

    fn fail(&mut self, g: &Graph, detail: impl Into<String>) {
        self.failures.push(Failure {
            graph6: to_graph6(g),
            detail: detail.into(),
        });
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    /// Plain-text table, one tally per line.
    pub fn render(&self) -> String {
        let mut out = format!("graphs: {}\n", self.graphs);
        for (k, v) in &self.tallies {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out.push_str(&format!("failures: {}\n", self.failures.len()));
        for f in &self.failures {
            out.push_str(&format!("  {}  {}\n", f.graph6, f.detail));
        }
        out
    }
}

fn class_name(c: OrientationClass) -> &'static str {
    match c {
        OrientationClass::Opposition => "opposition",
        OrientationClass::GeneralizedOpposition => "generalized-opposition",
        OrientationClass::Coalition => "coalition",
    }
}

/// `None` when the graph is beyond the oracle's caps.
fn oracle_member(g: &Graph, class: OrientationClass) -> Option<bool> {
    let r = match class {
        OrientationClass::Opposition => oracle_opposition(g, false),
        OrientationClass::Coalition => oracle_coalition(g, false),
        OrientationClass::GeneralizedOpposition => crate::oracle::oracle_generalized_opposition(g),
    };
    r.ok().map(|r| r.member)
}

fn bipartite(g: &Graph, kind: ConstraintKind) -> bool {
    matches!(
        bipartition_or_odd_walk(&ConstraintGraph::build(g, kind)),
        TwoColoring::Bipartite(_)
    )
}

/// Recognizer verdicts (certificates re-verified) against the oracle.
pub fn oracle_agreement<'a>(
    graphs: impl IntoIterator<Item = &'a Graph>,
    classes: &[OrientationClass],
    opts: &RecognizeOptions,
) -> SweepReport {
    let mut rep = SweepReport::default();
    for g in graphs {
        rep.graphs += 1;
        for &class in classes {
            let name = class_name(class);
            let v = recognize(g, class, opts);
            if let Err(e) = verify_verdict(g, &v) {
                rep.fail(g, format!("{name}: certificate rejected: {e}"));
                continue;
            }
            let Some(truth) = oracle_member(g, class) else {
                rep.count(format!("{name} oracle skipped"));
                continue;
            };
            match (v.decision, truth) {
                (Decision::Member, true) => rep.count(format!("{name} member")),
                (Decision::NonMember, false) => rep.count(format!("{name} non-member")),
                (Decision::Undecided, _) => rep.fail(g, format!("{name}: undecided")),
                (d, t) => rep.fail(g, format!("{name}: recognizer {d:?}, oracle member={t}")),
            }
        }
    }
    rep
}

/// On (gem, house)-free graphs, bipartiteness of the opposition constraint
/// graph matches oracle opposition membership.
pub fn gem_house_free_equivalence<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> SweepReport {
    let mut rep = SweepReport::default();
    for g in graphs {
        if find_induced(g, &patterns::gem()).is_some()
            || find_induced(g, &patterns::house()).is_some()
        {
            continue;
        }
        rep.graphs += 1;
        let bip = bipartite(g, ConstraintKind::Opposition);
        let Some(truth) = oracle_member(g, OrientationClass::Opposition) else {
            rep.count("oracle skipped");
            continue;
        };
        if bip == truth {
            rep.count(if truth { "member" } else { "non-member" });
        } else {
            rep.fail(g, format!("bipartite={bip}, oracle={truth}"));
        }
    }
    rep
}

/// Trees: the opposition verdict holds exactly when no `T_k` is induced.
pub fn tree_equivalence(max_n: usize, opts: &RecognizeOptions) -> SweepReport {
    let mut rep = SweepReport::default();
    for n in 1..=max_n {
        for t in corpus::trees(n) {
            rep.graphs += 1;
            let v = recognize_opposition(&t, opts);
            if let Err(e) = verify_verdict(&t, &v) {
                rep.fail(&t, format!("certificate rejected: {e}"));
                continue;
            }
            let tk_free = find_tk(&t).is_none();
            let member = v.decision == Decision::Member;
            if member == tk_free {
                rep.count(if member { "member" } else { "non-member" });
            } else {
                rep.fail(&t, format!("verdict {:?}, T_k-free={tk_free}", v.decision));
            }
        }
    }
    rep
}

fn opposition_obstruction_free(g: &Graph) -> bool {
    find_tk(g).is_none()
        && [patterns::a_graph(), patterns::g1(), patterns::g2()]
            .iter()
            .all(|p| find_induced(g, p).is_none())
}

/// Seeded random distance-hereditary graphs: both equivalence chains, with
/// the oracle where the vertex count allows.
pub fn distance_hereditary_chains(seed: u64, count: usize, max_n: usize) -> SweepReport {
    let mut rng = corpus::seeded(seed);
    let mut rep = SweepReport::default();
    for _ in 0..count {
        let n = rand::Rng::gen_range(&mut rng, 1..=max_n);
        let g = corpus::random_distance_hereditary(&mut rng, n);
        rep.graphs += 1;
        let with_oracle = n <= MAX_ORDER_VERTICES;

        let o_bip = bipartite(&g, ConstraintKind::Opposition);
        let free = opposition_obstruction_free(&g);
        if o_bip != free {
            rep.fail(
                &g,
                format!("opposition: bipartite={o_bip}, obstruction-free={free}"),
            );
        } else if with_oracle && oracle_member(&g, OrientationClass::Opposition) != Some(o_bip) {
            rep.fail(
                &g,
                format!("opposition: bipartite={o_bip} disagrees with oracle"),
            );
        } else {
            rep.count(if o_bip {
                "opposition member"
            } else {
                "opposition non-member"
            });
        }

        let c_bip = bipartite(&g, ConstraintKind::Coalition);
        let n_free = find_induced(&g, &patterns::n_graph()).is_none();
        let comparability = transitive_orient(&g);
        if let Some(o) = &comparability {
            if let Err(e) = verify_orientation(&g, &o.arcs(&g), OrientationClass::Coalition) {
                rep.fail(
                    &g,
                    format!("transitive orientation is not a coalition orientation: {e}"),
                );
                continue;
            }
        }
        let trans = comparability.is_some();
        if c_bip != n_free || n_free != trans {
            rep.fail(
                &g,
                format!("coalition: bipartite={c_bip}, N-free={n_free}, comparability={trans}"),
            );
        } else if with_oracle && oracle_member(&g, OrientationClass::Coalition) != Some(c_bip) {
            rep.fail(
                &g,
                format!("coalition: bipartite={c_bip} disagrees with oracle"),
            );
        } else {
            rep.count(if c_bip {
                "coalition member"
            } else {
                "coalition non-member"
            });
        }
        if with_oracle {
            rep.count("oracle-checked");
        }
    }
    rep
}

/// Seeded random ptolemaic opposition graphs: the layered construction must
/// succeed and pass the independent check.
pub fn ptolemaic_construction(seed: u64, count: usize, max_n: usize, flip_cap: u64) -> SweepReport {
    let mut rng = corpus::seeded(seed);
    let mut rep = SweepReport::default();
    for _ in 0..count {
        let n = rand::Rng::gen_range(&mut rng, 1..=max_n);
        let g = corpus::random_ptolemaic_where(&mut rng, n, 32, |h| {
            bipartite(h, ConstraintKind::Opposition)
        });
        rep.graphs += 1;
        if !opposition_obstruction_free(&g) {
            rep.fail(&g, "generator produced an obstruction");
            continue;
        }
        match ptolemaic_opposition_orient(&g, flip_cap) {
            Ok(c) => {
                match verify_orientation(&g, &c.orientation.arcs(&g), OrientationClass::Opposition)
                {
                    Ok(()) => {
                        for r in &c.roots {
                            let key = match r {
                                crate::recognize::RootChoice::Gadget { .. } => "root: gadget",
                                crate::recognize::RootChoice::PathMiddle { .. } => {
                                    "root: path middle"
                                }
                                crate::recognize::RootChoice::FlipSearch => "root: flip search",
                                crate::recognize::RootChoice::Trivial => "root: trivial",
                            };
                            rep.count(key);
                        }
                        rep.count("constructed");
                    }
                    Err(e) => rep.fail(&g, format!("verifier rejected construction: {e}")),
                }
            }
            Err(e) => rep.fail(&g, format!("construction failed: {e}")),
        }
    }
    rep
}
