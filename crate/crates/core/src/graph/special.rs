//! The obstruction graphs `G_k`, `B_k`, `H_k` and a handful of named small
//! graphs.
//!
//! Vertices of the special graphs are the subsets of `{1, .., k}` of size one
//! or two. Canonical order: singletons `{1}, .., {k}` first, then the pairs
//! in lexicographic order `{1,2}, {1,3}, .., {k-1,k}`. A label `(i, i)`
//! denotes the singleton `{i}`.

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialKind {
    /// Intersection graph of all 1- and 2-subsets.
    G,
    /// `G_k` without pair-pair edges (bipartite).
    B,
    /// `G_k` minus the three pair-pair edges among `{1,2}, {1,3}, {2,3}`.
    H,
}

impl std::str::FromStr for SpecialKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" | "g" => Ok(SpecialKind::G),
            "B" | "b" => Ok(SpecialKind::B),
            "H" | "h" => Ok(SpecialKind::H),
            _ => Err(Error::InvalidParameter(format!("unknown special graph {s:?}"))),
        }
    }
}

/// Subset labels in canonical vertex order.
pub fn special_vertex_labels(k: usize) -> Vec<(usize, usize)> {
    let mut labels: Vec<(usize, usize)> = (1..=k).map(|i| (i, i)).collect();
    for i in 1..=k {
        for j in i + 1..=k {
            labels.push((i, j));
        }
    }
    labels
}

/// Canonical index of the vertex for subset `{i, j}` (`i == j` for a
/// singleton), 1-based labels.
pub fn special_vertex_index(k: usize, i: usize, j: usize) -> Option<usize> {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    if i == 0 || j > k {
        return None;
    }
    if i == j {
        return Some(i - 1);
    }
    // pairs (a, b) with a < i come first: sum_{a<i} (k - a)
    let before: usize = (1..i).map(|a| k - a).sum();
    Some(k + before + (j - i - 1))
}

fn meets(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

pub fn make_special_graph(kind: SpecialKind, k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("special graphs need k >= 3, got {k}")));
    }
    if kind == SpecialKind::H && k < 4 {
        return Err(Error::InvalidParameter(format!("H_k needs k >= 4, got {k}")));
    }
    let labels = special_vertex_labels(k);
    let mut g = Graph::empty(labels.len());
    for (u, &a) in labels.iter().enumerate() {
        for (v, &b) in labels.iter().enumerate().skip(u + 1) {
            let a_pair = a.0 != a.1;
            let b_pair = b.0 != b.1;
            if kind == SpecialKind::B && a_pair && b_pair {
                continue;
            }
            if meets(a, b) {
                g.add_edge(u, v)?;
            }
        }
    }
    if kind == SpecialKind::H {
        let p12 = special_vertex_index(k, 1, 2).unwrap();
        let p13 = special_vertex_index(k, 1, 3).unwrap();
        let p23 = special_vertex_index(k, 2, 3).unwrap();
        g.remove_edge(p12, p13);
        g.remove_edge(p12, p23);
        g.remove_edge(p13, p23);
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasicKind {
    Complete,
    Cycle,
    Path,
    /// `K_n` without the edge `{0, 1}`.
    CompleteMinusEdge,
    /// Triangular prism on 6 vertices: triangles `{0,2,4}`, `{1,3,5}` and the
    /// matching `i ~ i+3`; this is the complement of the cycle `C_6`.
    Prism,
    Empty,
}

impl std::str::FromStr for BasicKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "complete" => BasicKind::Complete,
            "cycle" => BasicKind::Cycle,
            "path" => BasicKind::Path,
            "complete_minus_edge" => BasicKind::CompleteMinusEdge,
            "prism" => BasicKind::Prism,
            "empty" => BasicKind::Empty,
            _ => return Err(Error::InvalidParameter(format!("unknown graph kind {s:?}"))),
        })
    }
}

pub fn make_basic(kind: BasicKind, n: usize) -> Result<Graph> {
    let bad = |msg: &str| Err(Error::InvalidParameter(format!("{kind:?} with n = {n}: {msg}")));
    match kind {
        BasicKind::Complete => Ok(Graph::complete(n)),
        BasicKind::Empty => Ok(Graph::empty(n)),
        BasicKind::Path => {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edges(n, &edges)
        }
        BasicKind::Cycle => {
            if n < 3 {
                return bad("cycles need n >= 3");
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(n, &edges)
        }
        BasicKind::CompleteMinusEdge => {
            if n < 2 {
                return bad("need n >= 2");
            }
            let mut g = Graph::complete(n);
            g.remove_edge(0, 1);
            Ok(g)
        }
        BasicKind::Prism => {
            if n != 6 {
                return bad("the prism has exactly 6 vertices");
            }
            Graph::from_edges(
                6,
                &[(0, 2), (2, 4), (0, 4), (1, 3), (3, 5), (1, 5), (0, 3), (1, 4), (2, 5)],
            )
        }
    }
}
