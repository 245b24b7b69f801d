use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;

use super::{compact_quotient, Certificate, ClassEvidence, Verdict};
use crate::error::{Error, Result};
use crate::graph::{membership_cts, Graph, VertexPartition, CTS_MAX_VERTICES};
use crate::rng::SeedSpec;

/// Largest graph on which [`find_clique_cover_with`] searches all set
/// partitions.
pub const EXHAUSTIVE_COVER_MAX_VERTICES: usize = 12;

/// What the quotient of a clique covering must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverTarget {
    PlanarQuotient,
    OuterplanarQuotient,
    /// At most `k` non-empty parts.
    MaxParts(usize),
}

impl fmt::Display for CoverTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverTarget::PlanarQuotient => f.write_str("planar"),
            CoverTarget::OuterplanarQuotient => f.write_str("outerplanar"),
            CoverTarget::MaxParts(k) => write!(f, "max-parts:{k}"),
        }
    }
}

impl std::str::FromStr for CoverTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "planar" => Ok(CoverTarget::PlanarQuotient),
            "outerplanar" => Ok(CoverTarget::OuterplanarQuotient),
            _ => s
                .strip_prefix("max-parts:")
                .and_then(|k| k.parse().ok())
                .map(CoverTarget::MaxParts)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown cover target {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoverOptions {
    /// Partition tried before any search (for instance the blocks that
    /// generated a sampled graph).
    pub hint: Option<VertexPartition>,
    /// Give up with an unknown verdict once this instant passes.
    pub deadline: Option<Instant>,
    /// Random vertex orders tried by the greedy heuristic on large graphs.
    pub restarts: usize,
    pub seed: SeedSpec,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            hint: None,
            deadline: None,
            restarts: 16,
            seed: SeedSpec::new(0),
        }
    }
}

fn member(partition: VertexPartition, target: CoverTarget, method: &str) -> ClassEvidence {
    ClassEvidence::new(Verdict::Member, Certificate::CliqueCover { partition, target }, method)
}

/// Search for a partition of `g` into cliques whose quotient satisfies
/// `target`.
///
/// The hint is tried first. Graphs with at most
/// [`EXHAUSTIVE_COVER_MAX_VERTICES`] vertices are then searched exhaustively
/// (set partitions in restricted-growth order, abandoning a branch as soon as
/// a part stops being a clique or the partial quotient fails the target; both
/// properties are inherited by subgraphs), so failure there is a proof that no
/// such covering exists. Larger graphs get a few clique-partition attempts
/// and greedy passes, and failure is reported as unknown.
pub fn find_clique_cover_with(g: &Graph, target: CoverTarget, opts: &CoverOptions) -> ClassEvidence {
    let n = g.vertex_count();
    if let Some(hint) = &opts.hint {
        if hint.vertex_count() == n && hint.all_cliques(g) && target.accepts(&compact_quotient(g, hint)) {
            return member(hint.clone(), target, "hint");
        }
    }
    if n <= EXHAUSTIVE_COVER_MAX_VERTICES {
        return exhaustive(g, target, opts.deadline);
    }
    heuristic(g, target, opts)
}

struct Exhaustive {
    rows: Vec<u64>,
    target: CoverTarget,
    parts: Vec<u64>,
    /// quotient adjacency between parts
    qadj: Vec<u64>,
    labels: Vec<usize>,
    examined: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl Exhaustive {
    fn quotient_ok(&self) -> bool {
        let k = self.parts.len();
        if let CoverTarget::MaxParts(m) = self.target {
            return k <= m;
        }
        let mut q = Graph::empty(k);
        for a in 0..k {
            for b in a + 1..k {
                if self.qadj[a] >> b & 1 == 1 {
                    q.add_edge(a, b).expect("distinct parts");
                }
            }
        }
        self.target.accepts(&q)
    }

    fn place(&mut self, v: usize) -> bool {
        let n = self.rows.len();
        if v == n {
            return true;
        }
        self.examined += 1;
        if self.examined % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
        }
        if self.timed_out {
            return false;
        }
        let row = self.rows[v];
        let k = self.parts.len();
        for p in 0..=k {
            let fresh = p == k;
            if !fresh && row & self.parts[p] != self.parts[p] {
                continue;
            }
            if fresh {
                self.parts.push(0);
                self.qadj.push(0);
            }
            let saved = self.qadj.clone();
            let mut grew = fresh;
            for q in 0..self.parts.len() {
                if q != p && row & self.parts[q] != 0 && self.qadj[p] >> q & 1 == 0 {
                    self.qadj[p] |= 1 << q;
                    self.qadj[q] |= 1 << p;
                    grew = true;
                }
            }
            self.parts[p] |= 1 << v;
            self.labels[v] = p;
            if (!grew || self.quotient_ok()) && self.place(v + 1) {
                return true;
            }
            self.parts[p] &= !(1 << v);
            self.qadj = saved;
            if fresh {
                self.parts.pop();
                self.qadj.pop();
            }
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

fn exhaustive(g: &Graph, target: CoverTarget, deadline: Option<Instant>) -> ClassEvidence {
    const METHOD: &str = "exhaustive-partition-search";
    let n = g.vertex_count();
    let mut search = Exhaustive {
        rows: (0..n).map(|v| g.row(v)[0]).collect(),
        target,
        parts: Vec::new(),
        qadj: Vec::new(),
        labels: vec![0; n],
        examined: 0,
        deadline,
        timed_out: false,
    };
    if search.place(0) {
        let p = VertexPartition::from_labels(&search.labels, search.parts.len()).expect("labels in range");
        return member(p, target, METHOD);
    }
    if search.timed_out {
        return ClassEvidence::unknown(format!("{METHOD}: deadline reached"));
    }
    ClassEvidence::new(
        Verdict::NonMember,
        Certificate::ExhaustiveSearch {
            examined: search.examined,
        },
        METHOD,
    )
}

fn heuristic(g: &Graph, target: CoverTarget, opts: &CoverOptions) -> ClassEvidence {
    let n = g.vertex_count();
    // any partition into this many cliques has an acceptable quotient
    let small = match target {
        CoverTarget::PlanarQuotient => 4,
        CoverTarget::OuterplanarQuotient => 3,
        CoverTarget::MaxParts(k) => k,
    };
    if n <= CTS_MAX_VERTICES {
        if let Ok(Some(p)) = membership_cts(g, small, small) {
            return member(p, target, "clique-partition");
        }
    }
    let mut orders: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    orders.push(by_degree);
    let mut rng = opts.seed.stream(0);
    for _ in 0..opts.restarts {
        let mut o: Vec<usize> = (0..n).collect();
        o.shuffle(&mut rng);
        orders.push(o);
    }
    for order in orders {
        if opts.deadline.is_some_and(|d| Instant::now() >= d) {
            return ClassEvidence::unknown("greedy-clique-merging: deadline reached");
        }
        if let Some(p) = greedy(g, target, &order) {
            return member(p, target, "greedy-clique-merging");
        }
    }
    ClassEvidence::unknown("greedy-clique-merging: no covering found")
}

/// Put each vertex into the first part it completes to a clique without
/// breaking the target, opening a new part when none fits.
fn greedy(g: &Graph, target: CoverTarget, order: &[usize]) -> Option<VertexPartition> {
    let n = g.vertex_count();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut label = vec![usize::MAX; n];
    let mut q = Graph::empty(0);
    for &v in order {
        let touched: Vec<usize> = {
            let mut t: Vec<usize> = g
                .neighbors(v)
                .filter(|&u| label[u] != usize::MAX)
                .map(|u| label[u])
                .collect();
            t.sort_unstable();
            t.dedup();
            t
        };
        let mut placed = false;
        for p in 0..parts.len() {
            if !parts[p].iter().all(|&u| g.has_edge(u, v)) {
                continue;
            }
            let mut q2 = q.clone();
            for &t in &touched {
                if t != p {
                    q2.add_edge(p, t).expect("distinct parts");
                }
            }
            if q2 == q || target.accepts(&q2) {
                parts[p].push(v);
                label[v] = p;
                q = q2;
                placed = true;
                break;
            }
        }
        if !placed {
            let p = parts.len();
            let mut q2 = Graph::empty(p + 1);
            for (a, b) in q.edges() {
                q2.add_edge(a, b).expect("existing edge");
            }
            for &t in &touched {
                q2.add_edge(p, t).expect("distinct parts");
            }
            if !target.accepts(&q2) {
                return None;
            }
            parts.push(vec![v]);
            label[v] = p;
            q = q2;
        }
    }
    VertexPartition::new(n, parts).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_outerplanar, make_basic, make_special_graph, BasicKind, SpecialKind};

    #[test]
    fn k5_minus_edge_is_its_own_planar_cover() {
        let g = make_basic(BasicKind::CompleteMinusEdge, 5).unwrap();
        let e = find_clique_cover_with(&g, CoverTarget::PlanarQuotient, &CoverOptions::default());
        assert_eq!(e.verdict, Verdict::Member);
        assert_eq!(e.certificate.check(&g), Some(true));
    }

    #[test]
    fn g4_has_no_outerplanar_cover() {
        let g4 = make_special_graph(SpecialKind::G, 4).unwrap();
        let e = find_clique_cover_with(&g4, CoverTarget::OuterplanarQuotient, &CoverOptions::default());
        assert_eq!(e.verdict, Verdict::NonMember);
        assert!(matches!(e.certificate, Certificate::ExhaustiveSearch { .. }));
        let e = find_clique_cover_with(&g4, CoverTarget::PlanarQuotient, &CoverOptions::default());
        assert_eq!(e.verdict, Verdict::Member);
    }

    #[test]
    fn max_parts_matches_clique_partition_number() {
        let c6 = make_basic(BasicKind::Cycle, 6).unwrap();
        assert_eq!(
            find_clique_cover_with(&c6, CoverTarget::MaxParts(3), &CoverOptions::default()).verdict,
            Verdict::Member
        );
        assert_eq!(
            find_clique_cover_with(&c6, CoverTarget::MaxParts(2), &CoverOptions::default()).verdict,
            Verdict::NonMember
        );
    }

    #[test]
    fn hint_is_used_when_valid() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (1, 2)]).unwrap();
        let hint = VertexPartition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let opts = CoverOptions {
            hint: Some(hint.clone()),
            ..CoverOptions::default()
        };
        let e = find_clique_cover_with(&g, CoverTarget::OuterplanarQuotient, &opts);
        assert_eq!(e.method, "hint");
        assert_eq!(
            e.certificate,
            Certificate::CliqueCover {
                partition: hint,
                target: CoverTarget::OuterplanarQuotient
            }
        );
    }

    #[test]
    fn greedy_on_disjoint_cliques() {
        let mut g = Graph::empty(30);
        for c in 0..3 {
            for u in 0..10 {
                for v in u + 1..10 {
                    g.add_edge(c * 10 + u, c * 10 + v).unwrap();
                }
            }
        }
        g.add_edge(0, 10).unwrap();
        let e = find_clique_cover_with(&g, CoverTarget::OuterplanarQuotient, &CoverOptions::default());
        assert_eq!(e.verdict, Verdict::Member);
        assert_eq!(e.certificate.check(&g), Some(true));
        if let Certificate::CliqueCover { partition, .. } = &e.certificate {
            assert!(is_outerplanar(&compact_quotient(&g, partition)));
        }
    }

    #[test]
    fn target_parsing() {
        assert_eq!("planar".parse::<CoverTarget>().unwrap(), CoverTarget::PlanarQuotient);
        assert_eq!("max-parts:3".parse::<CoverTarget>().unwrap(), CoverTarget::MaxParts(3));
        assert!("nope".parse::<CoverTarget>().is_err());
    }
}
