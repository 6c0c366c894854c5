//! Human-readable rendering of verdicts and certificates. Vertices are
//! printed by label.

use std::fmt::Write as _;

use oppo_core::constraint::ArcVar;
use oppo_core::detect::{by_name, PatternMatch};
use oppo_core::oracle::OracleResult;
use oppo_core::recognize::{Certificate, Decision, Verdict};
use oppo_core::Graph;

pub fn decision_name(d: Decision) -> &'static str {
    match d {
        Decision::Member => "member",
        Decision::NonMember => "non-member",
        Decision::Undecided => "undecided",
    }
}

/// The kebab-case name serde uses, so human and JSON output agree.
pub fn kebab<T: serde::Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(serde_json::Value::String(s)) => s,
        _ => "?".into(),
    }
}

fn short_labels(g: &Graph) -> bool {
    g.labels().iter().all(|l| l.chars().count() == 1)
}

pub fn var_name(g: &Graph, v: ArcVar) -> String {
    if short_labels(g) {
        format!("{}{}", g.label(v.tail), g.label(v.head))
    } else {
        format!("{},{}", g.label(v.tail), g.label(v.head))
    }
}

pub fn arc_line(g: &Graph, (x, y): (usize, usize)) -> String {
    format!("{} -> {}", g.label(x), g.label(y))
}

fn cycle_line(g: &Graph, cycle: &[usize]) -> String {
    let mut parts: Vec<&str> = cycle.iter().map(|&v| g.label(v)).collect();
    if let Some(&first) = parts.first() {
        parts.push(first);
    }
    parts.join(" -> ")
}

/// `role=label` pairs, using the catalog's role names when known.
pub fn pattern_line(g: &Graph, m: &PatternMatch) -> String {
    let roles: Vec<String> = match by_name(&m.pattern) {
        Ok(p) => p.graph.labels().to_vec(),
        Err(_) => (0..m.embedding.len()).map(|i| i.to_string()).collect(),
    };
    let pairs: Vec<String> = m
        .embedding
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            format!(
                "{}={}",
                roles.get(i).map_or("?", |s| s.as_str()),
                g.label(v)
            )
        })
        .collect();
    format!("induced {}: {}", m.pattern, pairs.join(" "))
}

pub fn verdict(g: &Graph, v: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "class: {}", kebab(&v.class));
    let _ = writeln!(out, "decision: {}", decision_name(v.decision));
    let _ = writeln!(out, "method: {}", kebab(&v.method));
    let s = &v.stats;
    let comps = s.aux_components.map_or("-".to_string(), |c| c.to_string());
    let _ = writeln!(
        out,
        "stats: {} P4s, {} constraint vertices, {} components, {} flip vectors tried",
        s.p4_count, s.aux_vertices, comps, s.flips_tried
    );
    match &v.certificate {
        Certificate::Orientation { arcs } => {
            let _ = writeln!(out, "orientation ({} arcs):", arcs.len());
            for &a in arcs {
                let _ = writeln!(out, "  {}", arc_line(g, a));
            }
        }
        Certificate::OddWalk(w) => {
            let _ = writeln!(
                out,
                "odd closed walk in the constraint graph ({} hops):",
                w.hops()
            );
            let names: Vec<String> = w.walk.iter().map(|&x| var_name(g, x)).collect();
            let _ = writeln!(out, "  {}", names.join(" - "));
        }
        Certificate::FlipExhaustion(f) => {
            let comps = f.component.iter().max().map_or(0, |&c| c + 1);
            let _ = writeln!(
                out,
                "no acyclic flip vector over {} components; {} refuted prefixes:",
                comps,
                f.refutations.len()
            );
            for r in &f.refutations {
                let bits: String = r
                    .prefix
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect();
                let _ = writeln!(out, "  {bits}: {}", cycle_line(g, &r.cycle));
            }
        }
        Certificate::Pattern(m) => {
            let _ = writeln!(out, "certificate: {}", pattern_line(g, m));
        }
        Certificate::None => {
            let _ = writeln!(out, "no certificate: flip search cap reached");
        }
    }
    if let Some(m) = &v.witness {
        let _ = writeln!(out, "witness: {}", pattern_line(g, m));
    }
    out
}

pub fn oracle(g: &Graph, r: &OracleResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "member: {}", if r.member { "yes" } else { "no" });
    if let Some(order) = &r.witness_order {
        let labels: Vec<&str> = order.iter().map(|&v| g.label(v)).collect();
        let _ = writeln!(out, "order: {}", labels.join(" < "));
    }
    if let Some(a) = &r.witness_assignment {
        let arcs: Vec<String> = a.iter().map(|&x| arc_line(g, x)).collect();
        let _ = writeln!(out, "end-edges: {}", arcs.join(", "));
    }
    if let Some(all) = &r.all_solutions {
        let _ = writeln!(out, "solutions: {}", all.len());
        for a in all {
            let arcs: Vec<String> = a.iter().map(|&x| arc_line(g, x)).collect();
            let _ = writeln!(out, "  {}", arcs.join(", "));
        }
    }
    out
}
