use num_traits::{One, Zero};

use super::WitnessAssignment;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graphon::StepGraphon;

/// Largest block count handled by [`is_constructible`] (blocks are kept in a
/// 64-bit domain mask).
pub const CONSTRUCTIBLE_MAX_BLOCKS: usize = 64;

/// A block assignment with `psi > 0`, i.e. value 0 only on non-edges and
/// value 1 only on edges, or `None` if the graph is not constructible.
///
/// Exact backtracking over block assignments. Vertices are assigned in
/// descending degree order; after each assignment the remaining vertices'
/// block domains are filtered and the search backs up as soon as one empties.
/// Two blocks that are still unused and interchangeable (swapping them is an
/// automorphism of the zero/one/fractional pattern) are not both tried.
/// Worst case `k^n` nodes.
pub fn is_constructible(g: &Graph, w: &StepGraphon) -> Result<Option<WitnessAssignment>> {
    let n = g.vertex_count();
    let k = w.block_count();
    if k > CONSTRUCTIBLE_MAX_BLOCKS {
        return Err(Error::EnvelopeExceeded {
            op: "is_constructible",
            detail: format!("{k} blocks, limit {CONSTRUCTIBLE_MAX_BLOCKS}"),
        });
    }
    if n == 0 {
        return Ok(Some(WitnessAssignment { blocks: vec![] }));
    }
    // allowed_edge[b]: blocks c with W(b, c) > 0; allowed_non[b]: W(b, c) < 1
    let mut allowed_edge = vec![0u64; k];
    let mut allowed_non = vec![0u64; k];
    for b in 0..k {
        for c in 0..k {
            if !w.value(b, c).is_zero() {
                allowed_edge[b] |= 1 << c;
            }
            if !w.value(b, c).is_one() {
                allowed_non[b] |= 1 << c;
            }
        }
    }
    let class = |b: usize, c: usize| (allowed_edge[b] >> c & 1, allowed_non[b] >> c & 1);
    // twin[b] has bit c set for c < b when transposing b and c preserves
    // the class pattern
    let twin: Vec<u64> = (0..k)
        .map(|b| {
            (0..b)
                .filter(|&c| {
                    class(b, b) == class(c, c)
                        && (0..k).filter(|&x| x != b && x != c).all(|x| class(b, x) == class(c, x))
                })
                .fold(0u64, |m, c| m | 1 << c)
        })
        .collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut search = Search {
        g,
        order,
        allowed_edge,
        allowed_non,
        twin,
        assign: vec![usize::MAX; n],
        domains: vec![vec![full; n]],
        used: 0,
    };
    Ok(search.run(0).then(|| WitnessAssignment { blocks: search.assign }))
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    allowed_edge: Vec<u64>,
    allowed_non: Vec<u64>,
    twin: Vec<u64>,
    assign: Vec<usize>,
    /// domain stack: `domains[d][v]` before assigning `order[d]`
    domains: Vec<Vec<u64>>,
    used: u64,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let mut dom = self.domains[depth][v];
        while dom != 0 {
            let b = dom.trailing_zeros() as usize;
            dom &= dom - 1;
            if self.used >> b & 1 == 0 && self.twin[b] & !self.used != 0 {
                continue;
            }
            let mut next = self.domains[depth].clone();
            let mut dead = false;
            for &u in &self.order[depth + 1..] {
                next[u] &= if self.g.has_edge(u, v) {
                    self.allowed_edge[b]
                } else {
                    self.allowed_non[b]
                };
                if next[u] == 0 {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            let was_used = self.used;
            self.used |= 1 << b;
            self.assign[v] = b;
            self.domains.push(next);
            if self.run(depth + 1) {
                return true;
            }
            self.domains.pop();
            self.used = was_used;
            self.assign[v] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_special_graph, SpecialKind};
    use crate::graphon::{make_wka, make_wstar, t_ind_exact};
    use crate::sampling::psi_blocks;
    use crate::Rational;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn complete_graph_in_wka() {
        let w = make_wka(4, &r(1, 2)).unwrap();
        let a = is_constructible(&Graph::complete(15), &w).unwrap().unwrap();
        assert!(psi_blocks(&Graph::complete(15), &w, a.blocks()).unwrap() > Rational::zero());
    }

    #[test]
    fn g5_is_not_constructible_from_wka() {
        let g5 = make_special_graph(SpecialKind::G, 5).unwrap();
        for a in [r(0, 1), r(1, 4), r(1, 2)] {
            assert_eq!(is_constructible(&g5, &make_wka(4, &a).unwrap()).unwrap(), None);
        }
    }

    #[test]
    fn b5_from_two_empty_groups() {
        let b5 = make_special_graph(SpecialKind::B, 5).unwrap();
        let w = make_wstar(4, 2).unwrap();
        let a = is_constructible(&b5, &w).unwrap().unwrap();
        assert!(psi_blocks(&b5, &w, a.blocks()).unwrap() > Rational::zero());
    }

    #[test]
    fn agrees_with_positive_density_on_small_graphs() {
        let ws = [
            make_wka(2, &r(1, 3)).unwrap(),
            make_wstar(3, 1).unwrap(),
            make_wstar(2, 0).unwrap(),
        ];
        for w in &ws {
            for mask in 0..1u64 << 10 {
                let g = crate::graphon::mask_to_graph(5, mask);
                let positive = t_ind_exact(&g, w).unwrap() > Rational::zero();
                assert_eq!(is_constructible(&g, w).unwrap().is_some(), positive, "{g:?}");
            }
        }
    }
}
