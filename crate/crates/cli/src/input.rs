//! Reading graphs from files or stdin.

use std::io::Read;
use std::path::Path;

use clap::ValueEnum;
use oppo_core::io::{parse_edge_list, parse_graph6};
use oppo_core::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Auto,
    Edgelist,
    Graph6,
}

pub struct Input {
    /// Path as given, or `<stdin>`.
    pub name: String,
    pub graphs: Vec<Graph>,
}

fn by_extension(path: &Path) -> Option<Format> {
    match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
        "g6" | "graph6" => Some(Format::Graph6),
        "el" | "edges" | "edgelist" => Some(Format::Edgelist),
        _ => None,
    }
}

/// A first line that is one token and decodes as graph6 means graph6.
/// Anything else is read as an edge list.
fn by_content(text: &str) -> Format {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    match first {
        Some(l) if l.split_whitespace().count() == 1 && parse_graph6(l).is_ok() => Format::Graph6,
        _ => Format::Edgelist,
    }
}

/// Reads `path` (stdin when absent or `-`). A graph6 input may hold one
/// graph per line; an edge list is a single graph.
pub fn read(path: Option<&Path>, format: Format) -> Result<Input, String> {
    let (name, text) = match path {
        Some(p) if p != Path::new("-") => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            (p.display().to_string(), text)
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| format!("<stdin>: {e}"))?;
            ("<stdin>".to_string(), text)
        }
    };
    let format = match format {
        Format::Auto => path
            .and_then(by_extension)
            .unwrap_or_else(|| by_content(&text)),
        f => f,
    };
    let graphs = match format {
        Format::Graph6 => parse_graph6_stream(&text).map_err(|e| format!("{name}: {e}"))?,
        _ => vec![parse_edge_list(&text).map_err(|e| format!("{name}: {e}"))?],
    };
    Ok(Input { name, graphs })
}

pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_graph6(line).map_err(|e| format!("line {}: {e}", i + 1))?);
    }
    if out.is_empty() {
        return Err("no graph6 lines".into());
    }
    Ok(out)
}
