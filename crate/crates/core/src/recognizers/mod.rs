//! Evidence for membership in the two-clique, comparability,
//! incomparability, string and outer-string classes.
//!
//! Verdicts are three-valued. Member and non-member verdicts carry a
//! certificate that [`Certificate::check`] re-verifies against the graph,
//! except for exhaustive-search refutations, which are reported as such.

mod classify;
mod comparability;
mod cover;
mod twoclique;

pub use classify::{classify_outerstring, classify_string, ClassifyOptions};
pub use comparability::{forcing_successors, is_comparability, is_incomparability, is_transitive_orientation};
pub use cover::{find_clique_cover_with, CoverOptions, CoverTarget, EXHAUSTIVE_COVER_MAX_VERTICES};
pub use twoclique::is_two_clique;

use std::fmt;

use crate::graph::{is_outerplanar, is_planar, quotient, Graph, VertexPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Member,
    NonMember,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Member => "member",
            Verdict::NonMember => "non-member",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    None,
    /// The vertex set split into two cliques with no edges between them.
    CliquePair {
        first: Vec<usize>,
        second: Vec<usize>,
    },
    /// `a - b - c` with `ac` missing.
    InducedPath([usize; 3]),
    /// Three pairwise non-adjacent vertices.
    IndependentTriple([usize; 3]),
    /// Every edge oriented once; `(a, b)` means `a -> b`.
    Orientation(Vec<(usize, usize)>),
    /// Arcs `e_0, .., e_m` where each `e_{i+1}` is forced by `e_i` in every
    /// transitive orientation and `e_m` is `e_0` reversed.
    ForcingCycle(Vec<(usize, usize)>),
    /// Clique parts whose quotient satisfies the target.
    CliqueCover {
        partition: VertexPartition,
        target: CoverTarget,
    },
    /// An induced copy of a named forbidden graph: vertex `i` of the pattern
    /// maps to `embedding[i]`.
    InducedCopy {
        name: String,
        pattern: Graph,
        embedding: Vec<usize>,
    },
    /// Every candidate was examined without success. Not independently
    /// checkable.
    ExhaustiveSearch {
        examined: u64,
    },
    /// The inner certificate refers to the complement of the graph.
    Complement(Box<Certificate>),
}

impl Certificate {
    /// Re-verify the certificate against `g`: `Some(true)` if it holds,
    /// `Some(false)` if it does not, `None` if it cannot be checked.
    pub fn check(&self, g: &Graph) -> Option<bool> {
        let n = g.vertex_count();
        let in_range = |vs: &[usize]| vs.iter().all(|&v| v < n);
        Some(match self {
            Certificate::None => return None,
            Certificate::ExhaustiveSearch { .. } => return None,
            Certificate::Complement(inner) => return inner.check(&g.complement()),
            Certificate::CliquePair { first, second } => {
                let mut all: Vec<usize> = first.iter().chain(second).copied().collect();
                all.sort_unstable();
                all == (0..n).collect::<Vec<_>>()
                    && g.is_clique(first)
                    && g.is_clique(second)
                    && first.iter().all(|&u| second.iter().all(|&v| !g.has_edge(u, v)))
            }
            Certificate::InducedPath([a, b, c]) => {
                in_range(&[*a, *b, *c]) && a != c && g.has_edge(*a, *b) && g.has_edge(*b, *c) && !g.has_edge(*a, *c)
            }
            Certificate::IndependentTriple(t) => {
                in_range(t) && t[0] != t[1] && t[1] != t[2] && t[0] != t[2] && g.is_independent(t)
            }
            Certificate::Orientation(arcs) => is_transitive_orientation(g, arcs),
            Certificate::ForcingCycle(arcs) => {
                arcs.len() >= 2
                    && arcs.iter().all(|&(a, b)| a < n && b < n && g.has_edge(a, b))
                    && arcs.first().map(|&(a, b)| (b, a)) == arcs.last().copied()
                    && arcs.windows(2).all(|w| forcing_successors(g, w[0]).contains(&w[1]))
            }
            Certificate::CliqueCover { partition, target } => {
                partition.vertex_count() == n
                    && partition.all_cliques(g)
                    && target.accepts(&compact_quotient(g, partition))
            }
            Certificate::InducedCopy { pattern, embedding, .. } => {
                let mut seen = std::collections::HashSet::new();
                embedding.len() == pattern.vertex_count()
                    && in_range(embedding)
                    && embedding.iter().all(|v| seen.insert(*v))
                    && (0..embedding.len()).all(|i| {
                        (i + 1..embedding.len())
                            .all(|j| pattern.has_edge(i, j) == g.has_edge(embedding[i], embedding[j]))
                    })
            }
        })
    }
}

/// Quotient over the non-empty parts only.
pub(crate) fn compact_quotient(g: &Graph, p: &VertexPartition) -> Graph {
    let parts: Vec<Vec<usize>> = p.parts().iter().filter(|x| !x.is_empty()).cloned().collect();
    let compact = VertexPartition::new(g.vertex_count(), parts).expect("same cover without empty parts");
    quotient(g, &compact).expect("partition matches graph")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassEvidence {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub method: String,
}

impl ClassEvidence {
    pub(crate) fn new(verdict: Verdict, certificate: Certificate, method: impl Into<String>) -> Self {
        ClassEvidence {
            verdict,
            certificate,
            method: method.into(),
        }
    }

    pub(crate) fn unknown(method: impl Into<String>) -> Self {
        ClassEvidence::new(Verdict::Unknown, Certificate::None, method)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: impl IntoIterator<Item = usize>) -> fmt::Result {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    write!(f, "{}", v.join(" "))
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::None => writeln!(f, "certificate none"),
            Certificate::CliquePair { first, second } => {
                write!(f, "clique ")?;
                write_list(f, first.iter().copied())?;
                write!(f, "\nclique ")?;
                write_list(f, second.iter().copied())?;
                writeln!(f)
            }
            Certificate::InducedPath([a, b, c]) => writeln!(f, "induced-path {a} {b} {c}"),
            Certificate::IndependentTriple([a, b, c]) => writeln!(f, "independent-triple {a} {b} {c}"),
            Certificate::Orientation(arcs) => {
                for (a, b) in arcs {
                    writeln!(f, "arc {a} {b}")?;
                }
                Ok(())
            }
            Certificate::ForcingCycle(arcs) => {
                for (a, b) in arcs {
                    writeln!(f, "forced {a} {b}")?;
                }
                Ok(())
            }
            Certificate::CliqueCover { partition, target } => {
                writeln!(f, "cover-target {target}")?;
                for part in partition.parts() {
                    write!(f, "part ")?;
                    write_list(f, part.iter().copied())?;
                    writeln!(f)?;
                }
                Ok(())
            }
            Certificate::InducedCopy { name, embedding, .. } => {
                write!(f, "induced-copy {name} ")?;
                write_list(f, embedding.iter().copied())?;
                writeln!(f)
            }
            Certificate::ExhaustiveSearch { examined } => writeln!(f, "exhaustive-search {examined}"),
            Certificate::Complement(inner) => {
                writeln!(f, "of-complement")?;
                inner.fmt(f)
            }
        }
    }
}

/// Text form: `verdict V`, `method M`, then the certificate lines.
impl fmt::Display for ClassEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict {}", self.verdict)?;
        writeln!(f, "method {}", self.method)?;
        self.certificate.fmt(f)
    }
}

impl CoverTarget {
    pub fn accepts(&self, quotient: &Graph) -> bool {
        match *self {
            CoverTarget::PlanarQuotient => is_planar(quotient),
            CoverTarget::OuterplanarQuotient => is_outerplanar(quotient),
            CoverTarget::MaxParts(k) => quotient.vertex_count() <= k,
        }
    }
}
