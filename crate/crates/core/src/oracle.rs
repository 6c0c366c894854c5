//! Brute-force ground truth for small graphs.
//!
//! Kept deliberately naive: its own P4 scan over ordered 4-tuples, every
//! vertex permutation as a candidate linear order, and every end-edge
//! assignment for the generalized class. Nothing here reuses the fast code.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

/// Largest vertex count accepted by the permutation oracles.
pub const MAX_ORDER_VERTICES: usize = 9;
/// Largest end-edge count accepted by the generalized oracle.
pub const MAX_END_EDGES: usize = 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle refuses {n} vertices (cap {cap})")]
    TooManyVertices { n: usize, cap: usize },
    #[error("oracle refuses {t} end-edges (cap {cap})")]
    TooManyEndEdges { t: usize, cap: usize },
}

/// One direction per end-edge: `(tail, head)` pairs sorted by undirected edge.
pub type EndEdgeAssignment = Vec<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub member: bool,
    /// A valid linear order (order oracles only).
    pub witness_order: Option<Vec<usize>>,
    /// A valid end-edge assignment.
    pub witness_assignment: Option<EndEdgeAssignment>,
    /// Every distinct valid end-edge assignment, when requested.
    pub all_solutions: Option<Vec<EndEdgeAssignment>>,
}

/// Induced P4s as ordered quadruples `(a, b, c, d)` with `a < d`, found by
/// checking all six pairs of every 4-tuple.
pub fn brute_p4s(g: &Graph) -> Vec<[usize; 4]> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in a + 1..n {
                    if a == b || a == c || b == c || b == d || c == d {
                        continue;
                    }
                    if g.has_edge(a, b)
                        && g.has_edge(b, c)
                        && g.has_edge(c, d)
                        && !g.has_edge(a, c)
                        && !g.has_edge(a, d)
                        && !g.has_edge(b, d)
                    {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn brute_end_edges(p4s: &[[usize; 4]]) -> Vec<(usize, usize)> {
    let set: BTreeSet<(usize, usize)> = p4s
        .iter()
        .flat_map(|&[a, b, c, d]| [(a.min(b), a.max(b)), (c.min(d), c.max(d))])
        .collect();
    set.into_iter().collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// `a < b` iff `d < c`.
    Opposition,
    /// `a < b` iff `c < d`.
    Coalition,
}

fn order_ok(rule: Rule, pos: &[usize], p4s: &[[usize; 4]]) -> bool {
    p4s.iter().all(|&[a, b, c, d]| {
        let ab = pos[a] < pos[b];
        match rule {
            Rule::Opposition => ab == (pos[d] < pos[c]),
            Rule::Coalition => ab == (pos[c] < pos[d]),
        }
    })
}

fn assignment_from_order(pos: &[usize], ends: &[(usize, usize)]) -> EndEdgeAssignment {
    ends.iter()
        .map(|&(u, v)| if pos[u] < pos[v] { (u, v) } else { (v, u) })
        .collect()
}

fn order_oracle(g: &Graph, rule: Rule, enumerate_all: bool) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if n > MAX_ORDER_VERTICES {
        return Err(OracleError::TooManyVertices {
            n,
            cap: MAX_ORDER_VERTICES,
        });
    }
    let p4s = brute_p4s(g);
    let ends = brute_end_edges(&p4s);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    let mut witness = None;
    let mut solutions = BTreeSet::new();

    // Heap's algorithm, iterative form
    let mut counters = vec![0usize; n];
    let mut check = |perm: &[usize], pos: &[usize]| -> bool {
        if order_ok(rule, pos, &p4s) {
            if witness.is_none() {
                witness = Some(perm.to_vec());
            }
            if !enumerate_all {
                return true;
            }
            solutions.insert(assignment_from_order(pos, &ends));
        }
        false
    };
    let mut done = check(&perm, &pos);
    let mut i = 1;
    while !done && i < n {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(j, i);
            pos[perm[j]] = j;
            pos[perm[i]] = i;
            done = check(&perm, &pos);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    let witness_assignment = witness.as_ref().map(|order: &Vec<usize>| {
        let mut p = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            p[v] = k;
        }
        assignment_from_order(&p, &ends)
    });
    Ok(OracleResult {
        member: witness.is_some(),
        witness_order: witness,
        witness_assignment,
        all_solutions: enumerate_all.then(|| solutions.into_iter().collect()),
    })
}

/// Tries every linear order; member iff one satisfies `a < b ⟺ d < c` on
/// every induced P4 `abcd`. With `enumerate_all`, collects the distinct
/// end-edge restrictions of all valid orders.
pub fn oracle_opposition(g: &Graph, enumerate_all: bool) -> Result<OracleResult, OracleError> {
    order_oracle(g, Rule::Opposition, enumerate_all)
}

/// Like [`oracle_opposition`] with the rule `a < b ⟺ c < d`.
pub fn oracle_coalition(g: &Graph, enumerate_all: bool) -> Result<OracleResult, OracleError> {
    order_oracle(g, Rule::Coalition, enumerate_all)
}

/// Tries every direction assignment of the end-edges; member iff one makes
/// every induced P4 have both end-edges toward or both away from its middle.
pub fn oracle_generalized_opposition(g: &Graph) -> Result<OracleResult, OracleError> {
    let p4s = brute_p4s(g);
    let ends = brute_end_edges(&p4s);
    let t = ends.len();
    if t > MAX_END_EDGES {
        return Err(OracleError::TooManyEndEdges {
            t,
            cap: MAX_END_EDGES,
        });
    }
    let idx = |u: usize, v: usize| ends.binary_search(&(u.min(v), u.max(v))).expect("end-edge");
    // (index of ab, a is the smaller end, index of cd, d is the smaller end)
    let cons: Vec<(usize, bool, usize, bool)> = p4s
        .iter()
        .map(|&[a, b, c, d]| (idx(a, b), a < b, idx(c, d), d < c))
        .collect();
    for mask in 0u64..(1u64 << t) {
        // bit set: the edge points from its smaller to its larger end
        let fwd = |e: usize| mask >> e & 1 == 1;
        // a→b iff d→c
        let good = cons
            .iter()
            .all(|&(e1, a_small, e2, d_small)| (fwd(e1) == a_small) == (fwd(e2) == d_small));
        if good {
            let assignment = ends
                .iter()
                .enumerate()
                .map(|(e, &(u, v))| if fwd(e) { (u, v) } else { (v, u) })
                .collect();
            return Ok(OracleResult {
                member: true,
                witness_order: None,
                witness_assignment: Some(assignment),
                all_solutions: None,
            });
        }
    }
    Ok(OracleResult {
        member: false,
        witness_order: None,
        witness_assignment: None,
        all_solutions: None,
    })
}
