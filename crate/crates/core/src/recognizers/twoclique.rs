use std::collections::VecDeque;

use super::{Certificate, ClassEvidence, Verdict};
use crate::graph::Graph;

/// Disjoint union of at most two cliques (equivalently, the complement is
/// complete bipartite, one side possibly empty).
pub fn is_two_clique(g: &Graph) -> ClassEvidence {
    const METHOD: &str = "components-are-cliques";
    let comps = g.components();
    if comps.len() > 2 {
        let t = [comps[0][0], comps[1][0], comps[2][0]];
        return ClassEvidence::new(Verdict::NonMember, Certificate::IndependentTriple(t), METHOD);
    }
    for comp in &comps {
        if let Some(path) = induced_path_in(g, comp) {
            return ClassEvidence::new(Verdict::NonMember, Certificate::InducedPath(path), METHOD);
        }
    }
    let mut it = comps.into_iter();
    let first = it.next().unwrap_or_default();
    let second = it.next().unwrap_or_default();
    ClassEvidence::new(Verdict::Member, Certificate::CliquePair { first, second }, METHOD)
}

/// An induced `P_3` inside a connected vertex set that is not a clique: the
/// first three vertices of a shortest path between two non-adjacent
/// vertices.
fn induced_path_in(g: &Graph, comp: &[usize]) -> Option<[usize; 3]> {
    let (s, t) = comp
        .iter()
        .flat_map(|&u| comp.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| u < v && !g.has_edge(u, v))?;
    let mut prev = vec![usize::MAX; g.vertex_count()];
    prev[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![t];
    while *path.last().unwrap() != s {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    Some([path[0], path[1], path[2]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_basic, BasicKind};

    #[test]
    fn examples() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let e = is_two_clique(&g);
        assert_eq!(e.verdict, Verdict::Member);
        assert_eq!(e.certificate.check(&g), Some(true));

        for g in [
            make_basic(BasicKind::Path, 3).unwrap(),
            make_basic(BasicKind::Cycle, 4).unwrap(),
            Graph::empty(3),
        ] {
            let e = is_two_clique(&g);
            assert_eq!(e.verdict, Verdict::NonMember, "{g:?}");
            assert_eq!(e.certificate.check(&g), Some(true));
        }
        assert_eq!(is_two_clique(&Graph::empty(0)).verdict, Verdict::Member);
        assert_eq!(is_two_clique(&Graph::empty(2)).verdict, Verdict::Member);
    }

    #[test]
    fn agrees_with_complement_complete_bipartite() {
        for n in 0..=5usize {
            let pairs = n * n.saturating_sub(1) / 2;
            for mask in 0..1u64 << pairs {
                let g = crate::graphon::mask_to_graph(n, mask);
                let c = g.complement();
                // complete bipartite with a possibly empty side
                let expected = (0..1u32 << n).any(|side| {
                    (0..n).all(|u| (u + 1..n).all(|v| c.has_edge(u, v) == ((side >> u & 1) != (side >> v & 1))))
                });
                let e = is_two_clique(&g);
                assert_eq!(e.verdict == Verdict::Member, expected, "{g:?}");
                assert_eq!(e.certificate.check(&g), Some(true));
            }
        }
    }
}
