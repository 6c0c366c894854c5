//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails. Built with `harness = false`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use oppo_core::constraint::{
    bipartition_or_odd_walk, ConstraintGraph, ConstraintKind, TwoColoring,
};
use oppo_core::detect::{are_isomorphic, h_k, hk_vertex, patterns, t_k, HkVariant};
use oppo_core::io::parse_graph6;
use oppo_core::oracle::{oracle_coalition, oracle_generalized_opposition, oracle_opposition};
use oppo_core::p4::OrientationClass::{self, Coalition, GeneralizedOpposition, Opposition};
use oppo_core::recognize::{
    ptolemaic_opposition_orient, recognize, Certificate, Decision, RecognizeOptions, Verdict,
    DEFAULT_FLIP_CAP,
};
use oppo_core::verify::{verify_odd_walk, verify_verdict};
use oppo_core::{corpus, sweep, Graph};

const CORPUS: &str = include_str!("data/connected_n1-7.g6");
const SEED: u64 = 2024;

type Outcome = Result<String, String>;

struct Gate {
    failed: usize,
    total: usize,
}

impl Gate {
    fn run(&mut self, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        self.total += 1;
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let took = t.elapsed();
        let r = match r {
            Ok(_) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            r => r,
        };
        match r {
            Ok(detail) => println!("PASS  {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                self.failed += 1;
                println!("FAIL  {name}: {why} [{took:.2?}]");
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_graphs() -> Vec<Graph> {
    CORPUS
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_graph6(l).expect("corpus line decodes"))
        .collect()
}

fn checked(g: &Graph, class: OrientationClass) -> Result<Verdict, String> {
    let v = recognize(g, class, &RecognizeOptions::default());
    verify_verdict(g, &v).map_err(|e| format!("certificate rejected: {e}"))?;
    Ok(v)
}

fn oracle(g: &Graph, class: OrientationClass) -> bool {
    match class {
        Opposition => oracle_opposition(g, false),
        Coalition => oracle_coalition(g, false),
        GeneralizedOpposition => oracle_generalized_opposition(g),
    }
    .expect("within oracle caps")
    .member
}

fn c5() -> Outcome {
    let g = Graph::cycle(5);
    let v = checked(&g, GeneralizedOpposition)?;
    ensure(v.decision == Decision::NonMember, || {
        format!("decision {:?}", v.decision)
    })?;
    let Certificate::OddWalk(w) = &v.certificate else {
        return Err("no odd walk certificate".into());
    };
    verify_odd_walk(&g, ConstraintKind::Opposition, &w.walk).map_err(|e| e.to_string())?;
    ensure(!oracle(&g, GeneralizedOpposition), || {
        "oracle accepts C5".into()
    })?;
    Ok(format!(
        "non-member, odd walk of {} hops verified",
        w.hops()
    ))
}

fn co_c6() -> Outcome {
    let g = Graph::cycle(6).complement();
    let cg = ConstraintGraph::build(&g, ConstraintKind::Opposition);
    ensure(cg.len() == 12, || {
        format!("constraint graph has {} vertices", cg.len())
    })?;
    ensure(
        matches!(bipartition_or_odd_walk(&cg), TwoColoring::Bipartite(_)),
        || "constraint graph not bipartite".into(),
    )?;
    let gen = checked(&g, GeneralizedOpposition)?;
    ensure(gen.decision == Decision::Member, || {
        "generalized: not member".into()
    })?;
    let opp = checked(&g, Opposition)?;
    ensure(opp.decision == Decision::NonMember, || {
        format!("opposition: {:?}", opp.decision)
    })?;
    ensure(
        oracle(&g, GeneralizedOpposition) && !oracle(&g, Opposition),
        || "oracle disagrees".into(),
    )?;
    Ok("12 constraint vertices, bipartite; generalized member, opposition non-member".into())
}

fn each_deletion(g: &Graph, class: OrientationClass) -> Result<(), String> {
    for v in 0..g.n() {
        let (h, _) = g.delete_vertex(v);
        let verdict = checked(&h, class)?;
        ensure(verdict.decision == Decision::Member, || {
            format!("deleting {v}: {:?}", verdict.decision)
        })?;
        ensure(oracle(&h, class), || {
            format!("deleting {v}: oracle rejects")
        })?;
    }
    Ok(())
}

fn graph_n() -> Outcome {
    let g = patterns::n_graph().graph;
    let v = checked(&g, Coalition)?;
    ensure(v.decision == Decision::NonMember, || {
        format!("decision {:?}", v.decision)
    })?;
    ensure(!oracle(&g, Coalition), || "oracle accepts N".into())?;
    let cg = ConstraintGraph::build(&g, ConstraintKind::Coalition).to_graph(&g);
    ensure(are_isomorphic(&cg, &Graph::cycle(6).complement()), || {
        format!(
            "constraint graph {:?} is not the complement of C6",
            cg.edges()
        )
    })?;
    each_deletion(&g, Coalition)?;
    Ok("non-member; constraint graph is the complement of C6; all 6 deletions are members".into())
}

fn minimal_non_opposition() -> Outcome {
    let mut names = Vec::new();
    for p in [
        t_k(1).expect("k = 1"),
        patterns::a_graph(),
        patterns::g1(),
        patterns::g2(),
    ] {
        let g = &p.graph;
        let v = checked(g, Opposition)?;
        ensure(v.decision == Decision::NonMember, || {
            format!("{}: {:?}", p.name, v.decision)
        })?;
        ensure(!oracle(g, Opposition), || {
            format!("{}: oracle accepts", p.name)
        })?;
        each_deletion(g, Opposition).map_err(|e| format!("{}: {e}", p.name))?;
        names.push(format!("{}({})", p.name, g.n()));
    }
    Ok(format!(
        "{} rejected, every deletion accepted, oracle agrees",
        names.join(" ")
    ))
}

fn gadgets_have_two_orientations() -> Outcome {
    let mut out = Vec::new();
    for k in 1..=2 {
        let p = h_k(k, HkVariant::Full).expect("k >= 1");
        let g = &p.graph;
        let root = hk_vertex(k, 0);
        ensure(p.role(&format!("v{k}")) == Some(root), || {
            format!("{}: v{k} role mismatch", p.name)
        })?;
        let sols = oracle_opposition(g, true)
            .map_err(|e| e.to_string())?
            .all_solutions
            .expect("requested");
        ensure(sols.len() == 2, || {
            format!("{}: {} assignments", p.name, sols.len())
        })?;
        let reversed: Vec<(usize, usize)> = sols[0].iter().map(|&(x, y)| (y, x)).collect();
        let mut r = reversed.clone();
        r.sort_by_key(|&(x, y)| (x.min(y), x.max(y)));
        ensure(r == sols[1], || {
            format!("{}: assignments are not mutual reverses", p.name)
        })?;
        let source_in = |s: &[(usize, usize)]| {
            s.iter().any(|&(x, _)| x == root) && s.iter().all(|&(_, y)| y != root)
        };
        ensure(sols.iter().any(|s| source_in(s)), || {
            format!("{}: v{k} is never a source", p.name)
        })?;

        let c = ptolemaic_opposition_orient(g, DEFAULT_FLIP_CAP).map_err(|e| e.to_string())?;
        let restricted: Vec<(usize, usize)> = sols[0]
            .iter()
            .map(|&(x, y)| {
                if c.orientation.has_arc(g, x, y) {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        let mut restricted_sorted = restricted.clone();
        restricted_sorted.sort_by_key(|&(x, y)| (x.min(y), x.max(y)));
        ensure(sols.contains(&restricted_sorted), || {
            format!(
                "{}: construction gives {restricted:?}, not an oracle solution",
                p.name
            )
        })?;
        ensure(c.orientation.in_degree(g, root) == 0, || {
            format!("{}: v{k} not a source", p.name)
        })?;
        out.push(format!(
            "{}: 2 reverse assignments, construction matches one",
            p.name
        ));
    }
    Ok(out.join("; "))
}

fn oracle_equivalence(graphs: &[Graph]) -> Outcome {
    let rep = sweep::oracle_agreement(
        graphs,
        &[Opposition, GeneralizedOpposition, Coalition],
        &RecognizeOptions::default(),
    );
    report(&rep, 996)
}

fn report(rep: &sweep::SweepReport, expect_graphs: usize) -> Outcome {
    ensure(rep.graphs == expect_graphs, || {
        format!("swept {} graphs, expected {expect_graphs}", rep.graphs)
    })?;
    if !rep.is_clean() {
        return Err(rep.render().replace('\n', "; "));
    }
    ensure(!rep.tallies.keys().any(|k| k.contains("skipped")), || {
        "some graphs were not oracle-checked".into()
    })?;
    let tallies: Vec<String> = rep
        .tallies
        .iter()
        .map(|(k, v)| format!("{k} {v}"))
        .collect();
    Ok(format!(
        "{} graphs, 0 failures ({})",
        rep.graphs,
        tallies.join(", ")
    ))
}

fn gem_house_free(graphs: &[Graph]) -> Outcome {
    let rep = sweep::gem_house_free_equivalence(graphs);
    ensure(rep.graphs > 0, || "no gem/house-free graphs".into())?;
    report(&rep, rep.graphs)
}

fn distance_hereditary() -> Outcome {
    let rep = sweep::distance_hereditary_chains(SEED, 1000, 12);
    report(&rep, 1000)
}

fn trees() -> Outcome {
    let rep = sweep::tree_equivalence(12, &RecognizeOptions::default());
    let expected: usize = (1..=12).map(|n| corpus::trees(n).len()).sum();
    report(&rep, expected)
}

fn ptolemaic() -> Outcome {
    let rep = sweep::ptolemaic_construction(SEED, 500, 40, DEFAULT_FLIP_CAP);
    ensure(rep.tallies.get("constructed") == Some(&500), || {
        format!("constructed {:?} of 500", rep.tallies.get("constructed"))
    })?;
    report(&rep, 500)
}

/// Best of `reps` timings of building `O(G)` and 2-colouring it.
fn aux_time(g: &Graph, reps: usize) -> (Duration, usize) {
    let mut best = Duration::MAX;
    let mut size = 0;
    for _ in 0..reps {
        let t = Instant::now();
        let cg = ConstraintGraph::build(g, ConstraintKind::Opposition);
        let col = bipartition_or_odd_walk(&cg);
        best = best.min(t.elapsed());
        size = cg.edge_count();
        std::hint::black_box(col);
    }
    (best, size)
}

/// Random graphs of edge density about 1/2, so the number of induced P4s
/// (and so the constraint graph) grows like `m^2`, the worst case.
fn dense_graph(m: usize, seed: u64) -> Graph {
    let mut n = 2;
    while n * (n - 1) / 2 < 2 * m {
        n += 1;
    }
    corpus::random_gnm(&mut corpus::seeded(seed), n, m)
}

fn complexity() -> Outcome {
    let g = dense_graph(2000, SEED);
    let (big, edges) = aux_time(&g, 1);
    ensure(big < Duration::from_secs(10), || {
        format!("m = 2000 took {big:?}")
    })?;
    let series = [250, 500, 1000, 2000];
    let times: Vec<Duration> = series
        .iter()
        .map(|&m| aux_time(&dense_graph(m, SEED + m as u64), 5).0)
        .collect();
    let mut ratios = Vec::new();
    for w in times.windows(2) {
        let r = w[1].as_secs_f64() / w[0].as_secs_f64().max(1e-9);
        ratios.push(r);
    }
    let worst = ratios.iter().cloned().fold(0.0, f64::max);
    ensure(worst <= 8.0, || {
        format!("doubling ratios {ratios:.2?} exceed 8 (quadratic with 2x slack)")
    })?;
    Ok(format!(
        "m = 2000 (n = {}, {edges} constraint edges) in {big:.2?}; doubling ratios {ratios:.2?}",
        g.n()
    ))
}

fn certificates(graphs: &[Graph]) -> Outcome {
    let mut by_kind: BTreeMap<&str, usize> = BTreeMap::new();
    let mut pool: Vec<Graph> = graphs.to_vec();
    pool.extend((1..=10).flat_map(corpus::trees));
    let mut rng = corpus::seeded(SEED);
    for n in 1..=60 {
        pool.push(corpus::random_distance_hereditary(&mut rng, n % 14 + 1));
        pool.push(corpus::random_gnm(&mut rng, 9, (n % 20) + 8));
    }
    for p in patterns::catalog() {
        pool.push(p.graph);
    }
    let variants = [
        RecognizeOptions {
            want_witness: true,
            ..RecognizeOptions::default()
        },
        RecognizeOptions {
            want_witness: true,
            fast_paths: false,
            ..RecognizeOptions::default()
        },
    ];
    let mut total = 0;
    for g in &pool {
        for opts in &variants {
            for class in [Opposition, GeneralizedOpposition, Coalition] {
                let v = recognize(g, class, opts);
                verify_verdict(g, &v)
                    .map_err(|e| format!("{} {:?}: {e}", oppo_core::io::to_graph6(g), class))?;
                total += 1;
                let kind = match &v.certificate {
                    Certificate::Orientation { .. } => "orientation",
                    Certificate::OddWalk(_) => "odd walk",
                    Certificate::FlipExhaustion(_) => "cycle cover",
                    Certificate::Pattern(_) => "pattern",
                    Certificate::None => "none",
                };
                *by_kind.entry(kind).or_default() += 1;
                if v.witness.is_some() {
                    *by_kind.entry("witness").or_default() += 1;
                }
            }
        }
    }
    for kind in [
        "orientation",
        "odd walk",
        "cycle cover",
        "pattern",
        "witness",
    ] {
        ensure(by_kind.contains_key(kind), || {
            format!("no {kind} certificate was exercised")
        })?;
    }
    ensure(!by_kind.contains_key("none"), || {
        "some verdict was undecided".into()
    })?;
    let counts: Vec<String> = by_kind.iter().map(|(k, v)| format!("{k} {v}")).collect();
    Ok(format!(
        "{total} verdicts re-verified ({})",
        counts.join(", ")
    ))
}

fn main() -> ExitCode {
    let mut gate = Gate {
        failed: 0,
        total: 0,
    };
    let graphs = corpus_graphs();
    let secs = Duration::from_secs;

    gate.run(
        "C5 has an odd walk and no generalized orientation",
        secs(1),
        c5,
    );
    gate.run("complement of C6", secs(1), co_c6);
    gate.run("graph N is a minimal non-coalition graph", secs(1), graph_n);
    gate.run(
        "T1, A, G1, G2 are minimal non-opposition graphs",
        secs(30),
        minimal_non_opposition,
    );
    gate.run(
        "H1 and H2 have exactly two opposition assignments",
        secs(10),
        gadgets_have_two_orientations,
    );
    gate.run(
        "recognizers match the oracle on all connected n <= 7",
        secs(600),
        || oracle_equivalence(&graphs),
    );
    gate.run("gem/house-free: bipartite iff opposition", secs(60), || {
        gem_house_free(&graphs)
    });
    gate.run(
        "distance-hereditary equivalence chains",
        secs(120),
        distance_hereditary,
    );
    gate.run("trees n <= 12: member iff T_k-free", secs(60), trees);
    gate.run(
        "ptolemaic construction on 500 graphs n <= 40",
        secs(300),
        ptolemaic,
    );
    gate.run("constraint graph scaling", secs(60), complexity);
    gate.run("every certificate re-verifies", secs(120), || {
        certificates(&graphs)
    });

    println!(
        "{} of {} criteria passed",
        gate.total - gate.failed,
        gate.total
    );
    if gate.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
