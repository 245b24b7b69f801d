use std::time::Instant;

use super::{find_clique_cover_with, Certificate, ClassEvidence, CoverOptions, CoverTarget, Verdict};
use crate::graph::{contains_induced_until, make_special_graph, Graph, SpecialKind};

#[derive(Debug, Clone, Default)]
pub struct ClassifyOptions {
    pub cover: CoverOptions,
    /// Deadline for the forbidden induced subgraph searches.
    pub deadline: Option<Instant>,
}

/// String graphs: member if a clique covering with planar quotient is found,
/// non-member if `G_5`, `B_5` or `H_5` occurs as an induced subgraph,
/// otherwise unknown.
pub fn classify_string(g: &Graph, opts: &ClassifyOptions) -> ClassEvidence {
    classify(g, opts, CoverTarget::PlanarQuotient, 5)
}

/// Outer-string graphs: the same with an outerplanar quotient and the
/// obstructions `G_4`, `B_4`, `H_4`.
pub fn classify_outerstring(g: &Graph, opts: &ClassifyOptions) -> ClassEvidence {
    classify(g, opts, CoverTarget::OuterplanarQuotient, 4)
}

fn classify(g: &Graph, opts: &ClassifyOptions, target: CoverTarget, k: usize) -> ClassEvidence {
    let cover = find_clique_cover_with(g, target, &opts.cover);
    if cover.verdict == Verdict::Member {
        return ClassEvidence::new(
            Verdict::Member,
            cover.certificate,
            format!("{target} clique covering ({})", cover.method),
        );
    }
    let mut timed_out = false;
    for kind in [SpecialKind::G, SpecialKind::B, SpecialKind::H] {
        let pattern = make_special_graph(kind, k).expect("k >= 4");
        match contains_induced_until(&pattern, g, opts.deadline) {
            Ok(Some(Some(embedding))) => {
                return ClassEvidence::new(
                    Verdict::NonMember,
                    Certificate::InducedCopy {
                        name: format!("{kind:?}_{k}"),
                        pattern,
                        embedding,
                    },
                    "forbidden induced subgraph",
                )
            }
            Ok(Some(None)) => {}
            Ok(None) => timed_out = true,
            Err(_) => unreachable!("patterns have at most 15 vertices"),
        }
    }
    let why = if timed_out {
        "deadline reached in the forbidden subgraph search"
    } else {
        "no covering found and no forbidden induced subgraph"
    };
    ClassEvidence::unknown(format!("{target} clique covering / forbidden subgraphs: {why}"))
}
