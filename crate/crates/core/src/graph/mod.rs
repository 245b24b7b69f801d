//! Finite simple graphs, vertex partitions and the basic predicates used by
//! every other module.

mod cts;
mod induced;
mod planarity;
mod special;

pub use cts::{membership_cts, CTS_MAX_VERTICES};
pub use induced::{contains_induced, contains_induced_until, INDUCED_MAX_PATTERN};
pub use planarity::{is_outerplanar, is_planar, outerplanar_cyclic_order};
pub use special::{
    make_basic, make_special_graph, special_vertex_index, special_vertex_labels, BasicKind, SpecialKind,
};

use std::fmt;

use crate::error::{parse_err, Error, Result};

const WORD: usize = 64;

/// A finite simple graph on the vertex set `{0, .., n-1}`.
///
/// Adjacency is stored as one bitset row per vertex, so edge queries are O(1)
/// and the small exhaustive searches can work on whole rows at once.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph {
            n,
            words,
            rows: vec![0; words * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v, true);
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        self.set(u, v, true);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n && u != v {
            self.set(u, v, false);
        }
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        let (wu, bu) = (u * self.words + v / WORD, v % WORD);
        let (wv, bv) = (v * self.words + u / WORD, u % WORD);
        if on {
            self.rows[wu] |= 1 << bu;
            self.rows[wv] |= 1 << bv;
        } else {
            self.rows[wu] &= !(1 << bu);
            self.rows[wv] &= !(1 << bv);
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Raw bitset row of `u` (`words_per_row` words).
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(wi, &w)| BitIter {
            word: w,
            base: wi * WORD,
        })
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set(u, v, true);
                }
            }
        }
        g
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.set(a, b, true);
                }
            }
        }
        g
    }

    /// Image of the graph under the vertex map `perm` (vertex `v` becomes
    /// `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set(perm[u], perm[v], true);
        }
        Ok(g)
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &u)| vertices[a + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &u)| vertices[a + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Is `self` a spanning subgraph of `other` (same vertex count, every
    /// edge of `self` present in `other`)?
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = vec![];
            while let Some(u) = stack.pop() {
                members.push(u);
                for v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Proper 2-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            stack.push(v);
                        }
                        Some(sv) if sv == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Serialize to the text format: `n m` then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let nums = parse_usizes(header, ln)?;
        let [n, m] = nums[..] else {
            return Err(parse_err(ln, "header must be `n m`"));
        };
        let mut g = Graph::empty(n);
        let mut count = 0;
        for (ln, line) in lines {
            let nums = parse_usizes(line, ln)?;
            let [u, v] = nums[..] else {
                return Err(parse_err(ln, "edge line must be `u v`"));
            };
            if u >= n || v >= n || u == v {
                return Err(parse_err(ln, format!("invalid edge {u} {v}")));
            }
            if g.has_edge(u, v) {
                return Err(parse_err(ln, format!("duplicate edge {u} {v}")));
            }
            g.set(u, v, true);
            count += 1;
        }
        if count != m {
            return Err(parse_err(1, format!("header announces {m} edges, found {count}")));
        }
        Ok(g)
    }
}

fn parse_usizes(line: &str, ln: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|e| parse_err(ln, format!("{t:?}: {e}"))))
        .collect()
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

struct BitIter {
    word: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let t = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + t)
    }
}

/// A partition of `{0, .., n-1}` into disjoint, possibly empty, parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexPartition {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for part in &parts {
            for &v in part {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} outside 0..{n}")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("vertex {v} in two parts")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("vertex {v} not covered")));
        }
        Ok(VertexPartition { n, parts })
    }

    pub fn singletons(n: usize) -> Self {
        VertexPartition {
            n,
            parts: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// Partition whose part `b` is `{v : labels[v] == b}` for `b < count`.
    pub fn from_labels(labels: &[usize], count: usize) -> Result<Self> {
        let mut parts = vec![Vec::new(); count];
        for (v, &b) in labels.iter().enumerate() {
            if b >= count {
                return Err(Error::InvalidPartition(format!("label {b} >= {count}")));
            }
            parts[b].push(v);
        }
        Ok(VertexPartition { n: labels.len(), parts })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut lab = vec![0; self.n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                lab[v] = i;
            }
        }
        lab
    }

    pub fn all_cliques(&self, g: &Graph) -> bool {
        self.parts.iter().all(|p| g.is_clique(p))
    }
}

/// One vertex per part; parts `i != j` adjacent iff some edge of `g` joins
/// them. Empty parts become isolated vertices.
pub fn quotient(g: &Graph, p: &VertexPartition) -> Result<Graph> {
    if p.vertex_count() != g.vertex_count() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.vertex_count(),
            g.vertex_count()
        )));
    }
    let labels = p.labels();
    let mut q = Graph::empty(p.len());
    for (u, v) in g.edges() {
        let (a, b) = (labels[u], labels[v]);
        if a != b {
            q.set(a, b, true);
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 4), (2, 3)]).unwrap();
        let t = g.to_text();
        assert_eq!(t, "5 3\n0 1\n1 4\n2 3\n");
        assert_eq!(Graph::parse_text(&t).unwrap(), g);
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(Graph::parse_text("3 1\n0 0\n").is_err());
        assert!(Graph::parse_text("3 2\n0 1\n").is_err());
        assert!(Graph::parse_text("3 1\n0 x\n").is_err());
        assert!(Graph::parse_text("").is_err());
    }

    #[test]
    fn wide_graphs_use_multiple_words() {
        let mut g = Graph::empty(200);
        g.add_edge(3, 170).unwrap();
        g.add_edge(199, 0).unwrap();
        assert!(g.has_edge(170, 3));
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![199]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.complement().edge_count(), 200 * 199 / 2 - 2);
    }

    #[test]
    fn complement_of_empty_is_complete() {
        assert_eq!(Graph::empty(3).complement(), Graph::complete(3));
    }

    #[test]
    fn quotient_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(quotient(&k4, &VertexPartition::singletons(4)).unwrap(), k4);
        let p = VertexPartition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(quotient(&k4, &p).unwrap(), Graph::complete(2));
        let with_empty = VertexPartition::new(4, vec![vec![0, 1, 2, 3], vec![]]).unwrap();
        assert_eq!(quotient(&k4, &with_empty).unwrap(), Graph::empty(2));
    }

    #[test]
    fn partition_validation() {
        assert!(VertexPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1, 2], vec![]]).is_ok());
    }
}
