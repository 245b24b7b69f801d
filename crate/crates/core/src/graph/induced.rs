use std::time::Instant;

use super::Graph;
use crate::error::{Error, Result};

/// Largest pattern for which [`contains_induced`] runs its exact search.
pub const INDUCED_MAX_PATTERN: usize = 15;

/// Find an injective map `phi` from `V(h)` into `V(g)` with
/// `uv ∈ E(h) ⇔ phi(u)phi(v) ∈ E(g)`.
///
/// Backtracking over pattern vertices (most-constrained first) with bitset
/// candidate filtering. Exact for patterns up to [`INDUCED_MAX_PATTERN`]
/// vertices; larger patterns are refused.
pub fn contains_induced(h: &Graph, g: &Graph) -> Result<Option<Vec<usize>>> {
    Ok(contains_induced_until(h, g, None)?.expect("no deadline"))
}

/// [`contains_induced`] with a cooperative deadline; `Ok(None)` means the
/// deadline passed before the search finished.
pub fn contains_induced_until(h: &Graph, g: &Graph, deadline: Option<Instant>) -> Result<Option<Option<Vec<usize>>>> {
    let nh = h.vertex_count();
    let ng = g.vertex_count();
    if nh > INDUCED_MAX_PATTERN {
        return Err(Error::EnvelopeExceeded {
            op: "contains_induced",
            detail: format!("pattern has {nh} vertices, limit {INDUCED_MAX_PATTERN}"),
        });
    }
    if nh > ng || (nh == ng && h.edge_count() != g.edge_count()) {
        return Ok(Some(None));
    }
    if nh == 0 {
        return Ok(Some(Some(vec![])));
    }

    let order = search_order(h);
    let words = g.words_per_row();
    let mut all = vec![0u64; words];
    for v in 0..ng {
        all[v / 64] |= 1 << (v % 64);
    }
    let hdeg: Vec<usize> = (0..nh).map(|u| h.degree(u)).collect();
    let gdeg: Vec<usize> = (0..ng).map(|v| g.degree(v)).collect();

    let mut search = Search {
        h,
        g,
        order: &order,
        hdeg: &hdeg,
        gdeg: &gdeg,
        all: &all,
        map: vec![usize::MAX; nh],
        used: vec![0u64; words],
        deadline,
        nodes: 0,
        timed_out: false,
    };
    let found = search.extend(0);
    Ok(if search.timed_out {
        None
    } else if found {
        Some(Some(search.map))
    } else {
        Some(None)
    })
}

fn search_order(h: &Graph) -> Vec<usize> {
    let n = h.vertex_count();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&u| !placed[u])
            .max_by_key(|&u| {
                let links = order.iter().filter(|&&w| h.has_edge(u, w)).count();
                (links, h.degree(u), std::cmp::Reverse(u))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Search<'a> {
    h: &'a Graph,
    g: &'a Graph,
    order: &'a [usize],
    hdeg: &'a [usize],
    gdeg: &'a [usize],
    all: &'a [u64],
    map: Vec<usize>,
    used: Vec<u64>,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes % 4096 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
        }
        if self.timed_out {
            return false;
        }
        let u = self.order[depth];
        let nh = self.h.vertex_count();
        let ng = self.g.vertex_count();
        let mut cand: Vec<u64> = self.all.iter().zip(&self.used).map(|(a, b)| a & !b).collect();
        for &w in &self.order[..depth] {
            let gw = self.map[w];
            let row = self.g.row(gw);
            if self.h.has_edge(u, w) {
                cand.iter_mut().zip(row).for_each(|(c, r)| *c &= r);
            } else {
                cand.iter_mut().zip(row).for_each(|(c, r)| *c &= !r);
            }
        }
        for (wi, word) in cand.into_iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let v = wi * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                if self.gdeg[v] < self.hdeg[u] || (ng - 1 - self.gdeg[v]) < (nh - 1 - self.hdeg[u]) {
                    continue;
                }
                self.map[u] = v;
                self.used[v / 64] |= 1 << (v % 64);
                if self.extend(depth + 1) {
                    return true;
                }
                self.used[v / 64] &= !(1 << (v % 64));
                self.map[u] = usize::MAX;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_basic, make_special_graph, BasicKind, SpecialKind};

    fn is_induced_embedding(h: &Graph, g: &Graph, map: &[usize]) -> bool {
        let mut seen = std::collections::HashSet::new();
        map.iter().all(|v| seen.insert(*v))
            && (0..h.vertex_count())
                .all(|u| (u + 1..h.vertex_count()).all(|w| h.has_edge(u, w) == g.has_edge(map[u], map[w])))
    }

    #[test]
    fn k2_in_k3() {
        let m = contains_induced(&Graph::complete(2), &Graph::complete(3))
            .unwrap()
            .unwrap();
        assert!(is_induced_embedding(&Graph::complete(2), &Graph::complete(3), &m));
    }

    #[test]
    fn b5_is_not_induced_in_g5() {
        let b5 = make_special_graph(SpecialKind::B, 5).unwrap();
        let g5 = make_special_graph(SpecialKind::G, 5).unwrap();
        assert!(b5.is_subgraph_of(&g5));
        assert_eq!(contains_induced(&b5, &g5).unwrap(), None);
    }

    #[test]
    fn c6_embeds_in_b3() {
        let c6 = make_basic(BasicKind::Cycle, 6).unwrap();
        let b3 = make_special_graph(SpecialKind::B, 3).unwrap();
        let m = contains_induced(&c6, &b3).unwrap().unwrap();
        assert!(is_induced_embedding(&c6, &b3, &m));
    }

    #[test]
    fn g5_in_itself_and_in_g6() {
        let g5 = make_special_graph(SpecialKind::G, 5).unwrap();
        let g6 = make_special_graph(SpecialKind::G, 6).unwrap();
        let m = contains_induced(&g5, &g5).unwrap().unwrap();
        assert!(is_induced_embedding(&g5, &g5, &m));
        let m = contains_induced(&g5, &g6).unwrap().unwrap();
        assert!(is_induced_embedding(&g5, &g6, &m));
    }

    #[test]
    fn induced_path_not_in_complete() {
        let p3 = make_basic(BasicKind::Path, 3).unwrap();
        assert_eq!(contains_induced(&p3, &Graph::complete(6)).unwrap(), None);
        assert_eq!(
            contains_induced(&Graph::complete(4), &Graph::complete(3)).unwrap(),
            None
        );
    }

    #[test]
    fn refuses_large_patterns() {
        let big = Graph::empty(16);
        assert!(matches!(
            contains_induced(&big, &big),
            Err(Error::EnvelopeExceeded { .. })
        ));
    }
}
