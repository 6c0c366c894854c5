//! `oppo`: recognize opposition, generalized opposition and coalition
//! graphs from the command line.
//!
//! Exit codes: 0 member (or success), 1 non-member, 2 undecided,
//! 3 sweep or oracle disagreement, 10 usage or parse error, 11 a produced
//! certificate failed its own check.

mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oppo_core::constraint::{
    bipartition_or_odd_walk, ConstraintGraph, ConstraintKind, TwoColoring,
};
use oppo_core::detect::is_ptolemaic;
use oppo_core::io::{emit_dot, to_graph6};
use oppo_core::oracle::{
    oracle_coalition, oracle_generalized_opposition, oracle_opposition, OracleResult,
};
use oppo_core::p4::OrientationClass;
use oppo_core::recognize::{
    ptolemaic_opposition_orient, recognize, Decision, RecognizeOptions, Verdict, DEFAULT_FLIP_CAP,
};
use oppo_core::verify::{verify_orientation, verify_verdict};
use oppo_core::{corpus, sweep, Graph};

use input::Format;

const EXIT_MEMBER: u8 = 0;
const EXIT_NON_MEMBER: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_DISAGREE: u8 = 3;
const EXIT_USAGE: u8 = 10;
const EXIT_SELF_CHECK: u8 = 11;

#[derive(Parser)]
#[command(
    name = "oppo",
    version,
    about = "Opposition and coalition graph recognition with certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership and print the certificate.
    Recognize(RecognizeArgs),
    /// Print a verified orientation of a member.
    Orient(OrientArgs),
    /// Print the constraint graph of the end-edge directions.
    Aux(AuxArgs),
    /// Check the recognizers over a corpus of graphs.
    Sweep(SweepArgs),
    /// Decide membership by exhaustive search (small graphs only).
    Oracle(OracleArgs),
    /// Print small graphs as graph6, one per line.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input file; stdin when omitted or `-`.
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Opposition,
    GeneralizedOpposition,
    Coalition,
}

impl From<Class> for OrientationClass {
    fn from(c: Class) -> Self {
        match c {
            Class::Opposition => OrientationClass::Opposition,
            Class::GeneralizedOpposition => OrientationClass::GeneralizedOpposition,
            Class::Coalition => OrientationClass::Coalition,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Json,
    Dot,
}

fn flip_cap_arg() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(1..)
}

#[derive(Args)]
struct RecognizeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    class: Class,
    #[arg(long, value_enum, default_value_t = Output::Human)]
    output: Output,
    /// Branch budget for the flip search.
    #[arg(long, env = "OPPO_FLIP_CAP", default_value_t = DEFAULT_FLIP_CAP, value_parser = flip_cap_arg())]
    flip_cap: u64,
    /// On rejection, also look for a forbidden induced subgraph.
    #[arg(long)]
    witness: bool,
    /// Cross-check against exhaustive search.
    #[arg(long)]
    oracle: bool,
    /// Skip the structural shortcuts.
    #[arg(long)]
    no_fast_paths: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientMethod {
    Auto,
    /// Layered construction; used when the graph is ptolemaic.
    Ptolemaic,
    /// Constraint graph plus flip search, no shortcuts.
    Generic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientOutput {
    Dot,
    Arcs,
    Json,
}

#[derive(Args)]
struct OrientArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    class: Class,
    #[arg(long, value_enum, default_value_t = OrientMethod::Auto)]
    method: OrientMethod,
    #[arg(long, value_enum, default_value_t = OrientOutput::Dot)]
    output: OrientOutput,
    #[arg(long, env = "OPPO_FLIP_CAP", default_value_t = DEFAULT_FLIP_CAP, value_parser = flip_cap_arg())]
    flip_cap: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Opposition,
    Coalition,
}

#[derive(Args)]
struct AuxArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    kind: Kind,
    /// Fill one side of a bipartition, or print an odd closed walk.
    #[arg(long)]
    check_bipartite: bool,
    #[arg(long, value_enum, default_value_t = Output::Dot)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Generator {
    /// graph6 stream from the input (stdin by default), checked against the oracle.
    Connected,
    /// All trees up to `--max-n`: verdict versus `T_k`-freeness.
    Trees,
    /// Random distance-hereditary graphs: bipartiteness versus the obstructions.
    DistanceHereditary,
    /// Random ptolemaic opposition graphs: the layered construction.
    Ptolemaic,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    generator: Generator,
    /// graph6 stream for `--generator connected`.
    input: Option<PathBuf>,
    /// Restrict `connected` to one class; all three by default.
    #[arg(long, value_enum)]
    class: Option<Class>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "OPPO_FLIP_CAP", default_value_t = DEFAULT_FLIP_CAP, value_parser = flip_cap_arg())]
    flip_cap: u64,
    #[arg(long, value_enum, default_value_t = Output::Human)]
    output: Output,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    class: Class,
    /// List every valid end-edge assignment.
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value_t = Output::Human)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumKind {
    Connected,
    Trees,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    kind: EnumKind,
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value_t = 1)]
    min_n: usize,
}

/// Failure carrying its exit code.
struct Fail(u8, String);

type Run = Result<u8, Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Recognize(a) => cmd_recognize(a),
        Command::Orient(a) => cmd_orient(a),
        Command::Aux(a) => cmd_aux(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Enumerate(a) => cmd_enumerate(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn load(a: &InputArgs) -> Result<input::Input, Fail> {
    input::read(a.input.as_deref(), a.format).map_err(usage)
}

fn decision_code(d: Decision) -> u8 {
    match d {
        Decision::Member => EXIT_MEMBER,
        Decision::NonMember => EXIT_NON_MEMBER,
        Decision::Undecided => EXIT_UNDECIDED,
    }
}

fn json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("report types serialize")
}

fn run_oracle(g: &Graph, class: OrientationClass, all: bool) -> Result<OracleResult, String> {
    match class {
        OrientationClass::Opposition => oracle_opposition(g, all),
        OrientationClass::Coalition => oracle_coalition(g, all),
        OrientationClass::GeneralizedOpposition => oracle_generalized_opposition(g),
    }
    .map_err(|e| e.to_string())
}

fn self_check(g: &Graph, v: &Verdict) -> Result<(), Fail> {
    verify_verdict(g, v).map_err(|e| {
        Fail(
            EXIT_SELF_CHECK,
            format!("certificate failed its check: {e}"),
        )
    })
}

/// Verdict as DOT: the orientation of a member, otherwise the graph with
/// the witness (if any) filled.
fn verdict_dot(g: &Graph, v: &Verdict) -> String {
    if let Some(o) = v.orientation(g) {
        return emit_dot(g, Some(&o), None);
    }
    let marked = match (&v.certificate, &v.witness) {
        (_, Some(m)) => Some(m.embedding.clone()),
        (oppo_core::recognize::Certificate::Pattern(m), None) => Some(m.embedding.clone()),
        _ => None,
    };
    emit_dot(g, None, marked.as_deref())
}

/// Runs over every graph of the input; the exit code is the largest one.
fn cmd_recognize(a: RecognizeArgs) -> Run {
    let inp = load(&a.input)?;
    let class: OrientationClass = a.class.into();
    let opts = RecognizeOptions {
        flip_cap: a.flip_cap,
        want_witness: a.witness,
        fast_paths: !a.no_fast_paths,
    };
    let many = inp.graphs.len() > 1;
    let mut code = EXIT_MEMBER;
    for (i, g) in inp.graphs.iter().enumerate() {
        let v = recognize(g, class, &opts);
        self_check(g, &v)?;
        match a.output {
            Output::Json => println!("{}", json(&v)),
            Output::Dot => print!("{}", verdict_dot(g, &v)),
            Output::Human => {
                if many {
                    println!("== {} #{} ({})", inp.name, i + 1, to_graph6(g));
                }
                print!("{}", report::verdict(g, &v));
            }
        }
        let mut this = decision_code(v.decision);
        if a.oracle {
            match run_oracle(g, class, false) {
                Ok(r) => {
                    let agrees = match v.decision {
                        Decision::Member => r.member,
                        Decision::NonMember => !r.member,
                        Decision::Undecided => true,
                    };
                    let line = format!(
                        "oracle: {} ({})",
                        if r.member { "member" } else { "non-member" },
                        if agrees { "agrees" } else { "DISAGREES" }
                    );
                    if a.output == Output::Human {
                        println!("{line}");
                    } else {
                        eprintln!("{line}");
                    }
                    if !agrees {
                        this = EXIT_DISAGREE;
                    }
                }
                Err(e) => eprintln!("oracle skipped: {e}"),
            }
        }
        code = code.max(this);
    }
    Ok(code)
}

fn cmd_orient(a: OrientArgs) -> Run {
    let inp = load(&a.input)?;
    let g = single(&inp)?;
    let class: OrientationClass = a.class.into();
    let opts = RecognizeOptions {
        flip_cap: a.flip_cap,
        want_witness: true,
        fast_paths: a.method != OrientMethod::Generic,
    };

    if a.method == OrientMethod::Ptolemaic {
        if class != OrientationClass::Opposition {
            eprintln!("note: --method ptolemaic applies to the opposition class only; using auto");
        } else if !is_ptolemaic(g) {
            eprintln!("note: graph is not ptolemaic; using auto");
        } else if let Ok(c) = ptolemaic_opposition_orient(g, a.flip_cap) {
            let arcs = c.orientation.arcs(g);
            verify_orientation(g, &arcs, class).map_err(|e| {
                Fail(
                    EXIT_SELF_CHECK,
                    format!("constructed orientation failed its check: {e}"),
                )
            })?;
            match a.output {
                OrientOutput::Dot => print!("{}", emit_dot(g, Some(&c.orientation), None)),
                OrientOutput::Arcs => print_arcs(g, &arcs),
                OrientOutput::Json => println!(
                    "{}",
                    json(&serde_json::json!({ "arcs": arcs, "roots": c.roots }))
                ),
            }
            return Ok(EXIT_MEMBER);
        }
        // construction failed: the recognizer below supplies the certificate
    }

    let v = recognize(g, class, &opts);
    self_check(g, &v)?;
    if a.output == OrientOutput::Json {
        println!("{}", json(&v));
        return Ok(decision_code(v.decision));
    }
    match v.orientation(g) {
        Some(o) if v.is_member() => {
            match a.output {
                OrientOutput::Dot => print!("{}", emit_dot(g, Some(&o), None)),
                _ => print_arcs(g, &o.arcs(g)),
            }
            Ok(EXIT_MEMBER)
        }
        _ => {
            print!("{}", report::verdict(g, &v));
            Ok(decision_code(v.decision))
        }
    }
}

fn print_arcs(g: &Graph, arcs: &[(usize, usize)]) {
    for &(x, y) in arcs {
        println!("{} {}", g.label(x), g.label(y));
    }
}

fn single(inp: &input::Input) -> Result<&Graph, Fail> {
    match inp.graphs.as_slice() {
        [g] => Ok(g),
        gs => Err(usage(format!(
            "{}: expected one graph, found {}",
            inp.name,
            gs.len()
        ))),
    }
}

fn cmd_aux(a: AuxArgs) -> Run {
    let inp = load(&a.input)?;
    let g = single(&inp)?;
    let kind = match a.kind {
        Kind::Opposition => ConstraintKind::Opposition,
        Kind::Coalition => ConstraintKind::Coalition,
    };
    let cg = ConstraintGraph::build(g, kind);
    let coloring = a.check_bipartite.then(|| bipartition_or_odd_walk(&cg));
    let h = cg.to_graph(g);
    match a.output {
        Output::Dot => match &coloring {
            Some(TwoColoring::Bipartite(b)) => print!("{}", cg.to_dot(g, Some(b))),
            Some(TwoColoring::OddWalk(w)) => {
                let on_walk: Vec<usize> = w
                    .walk
                    .iter()
                    .filter_map(|&x| cg.var_index(x.tail, x.head))
                    .collect();
                let mut dot = emit_dot(&h, None, Some(&on_walk));
                let names: Vec<String> = w.walk.iter().map(|&x| report::var_name(g, x)).collect();
                let note = format!(
                    "  // odd closed walk ({} hops): {}\n",
                    w.hops(),
                    names.join(" - ")
                );
                dot.insert_str(dot.find('\n').map_or(0, |i| i + 1), &note);
                print!("{dot}");
            }
            None => print!("{}", cg.to_dot(g, None)),
        },
        Output::Json => {
            let mut doc = serde_json::json!({
                "kind": report::kebab(&kind),
                "vars": h.labels(),
                "edges": h.edges(),
            });
            match &coloring {
                Some(TwoColoring::Bipartite(b)) => {
                    doc["bipartition"] = serde_json::to_value(b).expect("serializes")
                }
                Some(TwoColoring::OddWalk(w)) => {
                    doc["odd_walk"] = serde_json::to_value(w).expect("serializes")
                }
                None => {}
            }
            println!("{}", json(&doc));
        }
        Output::Human => {
            println!("{} vertices, {} edges, {} P4s", h.n(), h.m(), cg.p4_count());
            for (u, v) in h.edges() {
                println!("  {} - {}", h.label(*u), h.label(*v));
            }
            match &coloring {
                Some(TwoColoring::Bipartite(b)) => {
                    let side_a: Vec<&str> = (0..h.n())
                        .filter(|&i| b.side[i])
                        .map(|i| h.label(i))
                        .collect();
                    println!(
                        "bipartite, {} components; side A: {}",
                        b.components,
                        side_a.join(" ")
                    );
                }
                Some(TwoColoring::OddWalk(w)) => {
                    let names: Vec<String> =
                        w.walk.iter().map(|&x| report::var_name(g, x)).collect();
                    println!(
                        "not bipartite; odd closed walk ({} hops): {}",
                        w.hops(),
                        names.join(" - ")
                    );
                }
                None => {}
            }
        }
    }
    Ok(match coloring {
        Some(TwoColoring::OddWalk(_)) => EXIT_NON_MEMBER,
        _ => EXIT_MEMBER,
    })
}

fn cmd_sweep(a: SweepArgs) -> Run {
    let opts = RecognizeOptions {
        flip_cap: a.flip_cap,
        ..RecognizeOptions::default()
    };
    let rep = match a.generator {
        Generator::Connected => {
            let inp = input::read(a.input.as_deref(), Format::Graph6).map_err(usage)?;
            let classes: Vec<OrientationClass> = match a.class {
                Some(c) => vec![c.into()],
                None => vec![
                    OrientationClass::Opposition,
                    OrientationClass::GeneralizedOpposition,
                    OrientationClass::Coalition,
                ],
            };
            sweep::oracle_agreement(&inp.graphs, &classes, &opts)
        }
        Generator::Trees => sweep::tree_equivalence(a.max_n.unwrap_or(10), &opts),
        Generator::DistanceHereditary => {
            sweep::distance_hereditary_chains(a.seed, a.count.unwrap_or(1000), a.max_n.unwrap_or(9))
        }
        Generator::Ptolemaic => sweep::ptolemaic_construction(
            a.seed,
            a.count.unwrap_or(500),
            a.max_n.unwrap_or(40),
            a.flip_cap,
        ),
    };
    match a.output {
        Output::Json => println!("{}", json(&rep)),
        _ => print!("{}", rep.render()),
    }
    Ok(if rep.is_clean() {
        EXIT_MEMBER
    } else {
        EXIT_DISAGREE
    })
}

fn cmd_oracle(a: OracleArgs) -> Run {
    let inp = load(&a.input)?;
    let g = single(&inp)?;
    let r = run_oracle(g, a.class.into(), a.all).map_err(usage)?;
    match a.output {
        Output::Json => println!("{}", json(&r)),
        _ => print!("{}", report::oracle(g, &r)),
    }
    Ok(if r.member {
        EXIT_MEMBER
    } else {
        EXIT_NON_MEMBER
    })
}

/// Largest order accepted for `--kind connected`; the isomorphism filter
/// is exhaustive within degree classes.
const MAX_ENUMERATE_CONNECTED: usize = 8;

fn cmd_enumerate(a: EnumerateArgs) -> Run {
    if a.kind == EnumKind::Connected && a.max_n > MAX_ENUMERATE_CONNECTED {
        return Err(usage(format!(
            "--max-n {} is above {MAX_ENUMERATE_CONNECTED} for connected graphs",
            a.max_n
        )));
    }
    for n in a.min_n.max(1)..=a.max_n {
        let graphs = match a.kind {
            EnumKind::Connected => corpus::connected_graphs(n),
            EnumKind::Trees => corpus::trees(n),
        };
        for g in graphs {
            println!("{}", to_graph6(&g));
        }
    }
    Ok(EXIT_MEMBER)
}
