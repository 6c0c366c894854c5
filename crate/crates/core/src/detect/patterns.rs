//! Named small graphs: the forbidden configurations and gadget families.
//!
//! Every pattern is connected and its vertex ids are numbered so that each
//! vertex after the first has an earlier neighbor.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// A named graph whose vertex labels are role labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub graph: Graph,
}

impl Pattern {
    pub fn new(name: impl Into<String>, n: usize, edges: &[(usize, usize)]) -> Self {
        Pattern {
            name: name.into(),
            graph: Graph::from_edges(n, edges).expect("catalog patterns are simple"),
        }
    }

    fn with_roles(name: impl Into<String>, roles: Vec<String>, edges: &[(usize, usize)]) -> Self {
        Pattern {
            name: name.into(),
            graph: Graph::with_labels(roles, edges).expect("catalog patterns are simple"),
        }
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    /// Id of the vertex with role label `role`.
    pub fn role(&self, role: &str) -> Option<usize> {
        self.graph.labels().iter().position(|l| l == role)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("family index must be at least {min}, got {got}")]
    IndexTooSmall { min: usize, got: usize },
    #[error("unknown pattern '{0}'")]
    Unknown(String),
}

/// `P4 0-1-2-3` plus a vertex 4 adjacent to all of it.
pub fn gem() -> Pattern {
    Pattern::new(
        "gem",
        5,
        &[(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)],
    )
}

/// Complement of P5: square 0-1-2-3 with roof 4 on 0 and 1.
pub fn house() -> Pattern {
    Pattern::new(
        "house",
        5,
        &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)],
    )
}

/// C6 with one chord between opposite vertices.
pub fn domino() -> Pattern {
    Pattern::new(
        "domino",
        6,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)],
    )
}

pub fn cycle(k: usize) -> Pattern {
    let g = Graph::cycle(k);
    Pattern::new(format!("C{k}"), k, g.edges())
}

pub fn path(k: usize) -> Pattern {
    let g = Graph::path(k);
    Pattern::new(format!("P{k}"), k, g.edges())
}

/// Square 1-2-5-4 (ids 1,2,3,4 here) with a pendant on each of two adjacent
/// corners: path 0-1-2-3 plus 1-4-5-2.
pub fn a_graph() -> Pattern {
    Pattern::new("A", 6, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (5, 2)])
}

/// Path 0..5, vertex 6 on 2 and 3, then path 6-7-8.
pub fn g1() -> Pattern {
    Pattern::new(
        "G1",
        9,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (2, 6),
            (3, 6),
            (6, 7),
            (7, 8),
        ],
    )
}

/// Path 0..5, vertices 6 and 7 both on 2 and 3, then 7-8.
pub fn g2() -> Pattern {
    Pattern::new(
        "G2",
        9,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (2, 6),
            (3, 6),
            (2, 7),
            (3, 7),
            (7, 8),
        ],
    )
}

/// Triangle 1-2-4 with pendants 0 on 1, 3 on 2, 5 on 4.
pub fn n_graph() -> Pattern {
    Pattern::with_roles(
        "N",
        ["1", "2", "3", "4", "5", "6"].map(String::from).to_vec(),
        &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 2), (4, 5)],
    )
}

/// The tree `T_k`: a path on `2k + 4` vertices with one pendant on its
/// third vertex (role `1`) and one on its `(2k+2)`-th vertex (role `2k`).
pub fn t_k(k: usize) -> Result<Pattern, PatternError> {
    if k < 1 {
        return Err(PatternError::IndexTooSmall { min: 1, got: k });
    }
    let spine = 2 * k + 4;
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
    edges.push((2, spine));
    edges.push((2 * k + 1, spine + 1));
    let mut roles: Vec<String> = (0..spine + 2).map(|i| format!("s{i}")).collect();
    // spine positions 2..=2k+1 carry the labels 1..=2k
    for (j, role) in roles.iter_mut().enumerate().take(2 * k + 2).skip(2) {
        *role = (j - 1).to_string();
    }
    roles[spine] = "p1".into();
    roles[spine + 1] = format!("p{}", 2 * k);
    Ok(Pattern::with_roles(format!("T{k}"), roles, &edges))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HkVariant {
    Full,
    Minus,
}

/// Vertex id of role `v_i` (`tier` 0), `v_i'` (1) or `v_i''` (2) in
/// [`h_k`]. Ids are laid out `v_0, v_0', v_0'', v_1, v_1', v_1'', ...`.
pub fn hk_vertex(i: usize, tier: usize) -> usize {
    3 * i + tier
}

/// `H_k` or `H_k^-`.
///
/// `H_1` is the path `v_0'' v_0' v_1 v_1' v_1''` plus `v_0` on `v_1`.
/// `H_{j+1}` adds `v_{j+1}` joined to `N[v_j]` (minus `v_0` for the
/// `Minus` variant), `v_{j+1}'` on `v_{j+1}` and `v_{j+1}''` on `v_{j+1}'`.
pub fn h_k(k: usize, variant: HkVariant) -> Result<Pattern, PatternError> {
    if k < 1 {
        return Err(PatternError::IndexTooSmall { min: 1, got: k });
    }
    let v = |i| hk_vertex(i, 0);
    let v1 = |i| hk_vertex(i, 1);
    let v2 = |i| hk_vertex(i, 2);
    let n = 3 * k + 3;
    let mut adj = vec![vec![false; n]; n];
    let add = |adj: &mut Vec<Vec<bool>>, x: usize, y: usize| {
        adj[x][y] = true;
        adj[y][x] = true;
    };
    add(&mut adj, v2(0), v1(0));
    add(&mut adj, v1(0), v(1));
    add(&mut adj, v(1), v1(1));
    add(&mut adj, v1(1), v2(1));
    add(&mut adj, v(0), v(1));
    for j in 1..k {
        let prev = v(j);
        let new = v(j + 1);
        let mut closed: Vec<usize> = (0..3 * j + 3).filter(|&x| adj[prev][x]).collect();
        closed.push(prev);
        for x in closed {
            if variant == HkVariant::Minus && x == v(0) {
                continue;
            }
            add(&mut adj, new, x);
        }
        add(&mut adj, new, v1(j + 1));
        add(&mut adj, v1(j + 1), v2(j + 1));
    }
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if adj[x][y] {
                edges.push((x, y));
            }
        }
    }
    let roles = (0..n)
        .map(|id| {
            let (i, tier) = (id / 3, id % 3);
            format!("v{i}{}", "'".repeat(tier))
        })
        .collect();
    let name = match variant {
        HkVariant::Full => format!("H{k}"),
        HkVariant::Minus if k == 1 => "H1".to_string(),
        HkVariant::Minus => format!("H{k}-"),
    };
    Ok(Pattern::with_roles(name, roles, &edges))
}

/// Looks a pattern up by name: `gem`, `house`, `domino`, `A`, `G1`, `G2`, `N`,
/// `C<k>`, `P<k>`, `T<k>`, `H<k>`, `H<k>-`.
pub fn by_name(name: &str) -> Result<Pattern, PatternError> {
    let unknown = || PatternError::Unknown(name.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    match name {
        "gem" => Ok(gem()),
        "house" => Ok(house()),
        "domino" => Ok(domino()),
        "A" => Ok(a_graph()),
        "G1" => Ok(g1()),
        "G2" => Ok(g2()),
        "N" => Ok(n_graph()),
        _ => {
            if let Some(rest) = name.strip_prefix('C') {
                let k = num(rest)?;
                if k < 3 {
                    return Err(unknown());
                }
                Ok(cycle(k))
            } else if let Some(rest) = name.strip_prefix('P') {
                let k = num(rest)?;
                if k < 1 {
                    return Err(unknown());
                }
                Ok(path(k))
            } else if let Some(rest) = name.strip_prefix('T') {
                t_k(num(rest)?)
            } else if let Some(rest) = name.strip_prefix('H') {
                match rest.strip_suffix('-') {
                    Some(k) => h_k(num(k)?, HkVariant::Minus),
                    None => h_k(num(rest)?, HkVariant::Full),
                }
            } else {
                Err(unknown())
            }
        }
    }
}

/// The fixed-size catalog entries.
pub fn catalog() -> Vec<Pattern> {
    vec![
        gem(),
        house(),
        domino(),
        cycle(4),
        cycle(5),
        a_graph(),
        g1(),
        g2(),
        n_graph(),
    ]
}
