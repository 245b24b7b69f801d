//! Explicit witnessing assignments showing that a graphon in `R_r` with a
//! forbidden local configuration constructs one of `G_{r+1}`, `B_{r+1}`,
//! `H_{r+1}` (or `B_3` when `r = 2`).

use num_traits::{One, Zero};

use super::{psi_blocks, WitnessAssignment};
use crate::error::{Error, Result};
use crate::graph::{make_special_graph, special_vertex_index, Graph, SpecialKind};
use crate::graphon::{group_of_blocks, is_in_rk, StepGraphon};

/// The configurations for which a standard witness exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// Two groups each contain a block with diagonal value 0; witnesses
    /// `B_{r+1}` (singletons on one such block, pairs on the other).
    TwoEmptyDiagonals,
    /// Some group contains a block with diagonal value 0; witnesses
    /// `G_{r+1}`.
    EmptyDiagonal,
    /// Some group contains blocks `x, y, z` with `W(x,y) = W(y,z) = 1` and
    /// `W(x,z) = 0`; witnesses `G_{r+1}`.
    NonTransitiveOnes,
    /// Some group contains three blocks with diagonal 1 and mutual value 0;
    /// witnesses `G_{r+1}`.
    ThreeCliqueParts,
    /// Two groups each contain two blocks with diagonal 1 and mutual value
    /// 0; witnesses `H_{r+1}` for `r >= 3` and `B_3` for `r = 2`.
    TwoSplitGroups,
}

impl std::str::FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "two-empty-diagonals" => Claim::TwoEmptyDiagonals,
            "empty-diagonal" => Claim::EmptyDiagonal,
            "non-transitive-ones" => Claim::NonTransitiveOnes,
            "three-clique-parts" => Claim::ThreeCliqueParts,
            "two-split-groups" => Claim::TwoSplitGroups,
            _ => return Err(Error::InvalidParameter(format!("unknown configuration {s:?}"))),
        })
    }
}

struct Groups<'a> {
    w: &'a StepGraphon,
    members: Vec<Vec<usize>>,
}

impl Groups<'_> {
    fn one(&self, a: usize, b: usize) -> bool {
        self.w.value(a, b).is_one()
    }

    fn zero(&self, a: usize, b: usize) -> bool {
        self.w.value(a, b).is_zero()
    }

    fn empty_diagonal(&self, g: usize) -> Option<usize> {
        self.members[g].iter().copied().find(|&b| self.zero(b, b))
    }

    fn full_diagonal(&self, g: usize) -> Option<usize> {
        self.members[g].iter().copied().find(|&b| self.one(b, b))
    }

    /// Two blocks with diagonal 1 and value 0 between them.
    fn split(&self, g: usize) -> Option<(usize, usize)> {
        let m = &self.members[g];
        m.iter().find_map(|&a| {
            m.iter()
                .copied()
                .find(|&b| self.one(a, a) && self.one(b, b) && self.zero(a, b))
                .map(|b| (a, b))
        })
    }

    fn three_parts(&self, g: usize) -> Option<[usize; 3]> {
        let m = &self.members[g];
        for &a in m {
            for &b in m {
                for &c in m {
                    let d = [a, b, c];
                    if d.iter().all(|&x| self.one(x, x)) && self.zero(a, b) && self.zero(a, c) && self.zero(b, c) {
                        return Some(d);
                    }
                }
            }
        }
        None
    }

    fn broken_triangle(&self, g: usize) -> Option<[usize; 3]> {
        let m = &self.members[g];
        for &x in m {
            for &y in m {
                for &z in m {
                    if self.one(x, y) && self.one(y, z) && self.zero(x, z) {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    /// A diagonal-1 block in every group not in `skip`, in group order.
    fn clique_blocks(&self, skip: &[usize]) -> Result<Vec<usize>> {
        (0..self.members.len())
            .filter(|g| !skip.contains(g))
            .map(|g| {
                self.full_diagonal(g)
                    .ok_or_else(|| Error::MissingStructure(format!("group {g} has no block with diagonal value 1")))
            })
            .collect()
    }
}

/// The obstruction graph for `claim` together with the block assignment
/// that realizes it from `w`, after checking that `w` lies in `R_r` and
/// exhibits the configuration. The assignment is re-checked to have
/// `psi > 0` before it is returned.
pub fn standard_witness(claim: Claim, r: usize, w: &StepGraphon) -> Result<(Graph, WitnessAssignment)> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!(
            "standard witnesses need r >= 2, got {r}"
        )));
    }
    if !is_in_rk(w, r) {
        return Err(Error::MissingStructure(format!("the graphon is not in R_{r}")));
    }
    let labels = group_of_blocks(w, r).expect("checked by is_in_rk");
    let mut members = vec![Vec::new(); r];
    for (b, &g) in labels.iter().enumerate() {
        members[g].push(b);
    }
    let groups = Groups { w, members };
    let k = r + 1;
    let idx = |i: usize, j: usize| special_vertex_index(k, i, j).expect("label in range");
    // V_l = {{l+1, j} : j <= l+1} for l >= 3 (U_l for l >= 2)
    let star = |l: usize| (1..=l + 1).map(move |j| idx(l + 1, j));

    let (graph, blocks) = match claim {
        Claim::TwoEmptyDiagonals => {
            let found: Vec<(usize, usize)> = (0..r)
                .filter_map(|g| groups.empty_diagonal(g).map(|b| (g, b)))
                .take(2)
                .collect();
            let [(_, x), (_, y)] = found[..] else {
                return Err(Error::MissingStructure(
                    "fewer than two groups contain a block with diagonal value 0".into(),
                ));
            };
            let g = make_special_graph(SpecialKind::B, k)?;
            let blocks = (0..g.vertex_count()).map(|v| if v < k { x } else { y }).collect();
            (g, blocks)
        }
        Claim::EmptyDiagonal | Claim::ThreeCliqueParts => {
            let (g1, first) = if claim == Claim::EmptyDiagonal {
                (0..r)
                    .find_map(|g| groups.empty_diagonal(g).map(|z| (g, [z; 3])))
                    .ok_or_else(|| Error::MissingStructure("no block with diagonal value 0".into()))?
            } else {
                (0..r)
                    .find_map(|g| groups.three_parts(g).map(|d| (g, d)))
                    .ok_or_else(|| Error::MissingStructure("no group with three disjoint clique parts".into()))?
            };
            let others = groups.clique_blocks(&[g1])?;
            let g = make_special_graph(SpecialKind::G, k)?;
            let mut blocks = vec![usize::MAX; g.vertex_count()];
            for i in 1..=3 {
                blocks[idx(i, i)] = first[i - 1];
            }
            for (i, j) in [(1, 2), (1, 3), (2, 3)] {
                blocks[idx(i, j)] = others[0];
            }
            for l in 3..=r {
                for v in star(l) {
                    blocks[v] = others[l - 2];
                }
            }
            (g, blocks)
        }
        Claim::NonTransitiveOnes => {
            let (g1, [x, y, z]) = (0..r)
                .find_map(|g| groups.broken_triangle(g).map(|t| (g, t)))
                .ok_or_else(|| Error::MissingStructure("the value-1 relation is transitive in every group".into()))?;
            let others = groups.clique_blocks(&[g1])?;
            let g = make_special_graph(SpecialKind::G, k)?;
            let mut blocks = vec![usize::MAX; g.vertex_count()];
            blocks[idx(1, 1)] = x;
            blocks[idx(1, 2)] = y;
            blocks[idx(2, 2)] = z;
            for l in 2..=r {
                for v in star(l) {
                    blocks[v] = others[l - 2];
                }
            }
            (g, blocks)
        }
        Claim::TwoSplitGroups => {
            let found: Vec<(usize, (usize, usize))> =
                (0..r).filter_map(|g| groups.split(g).map(|s| (g, s))).take(2).collect();
            let [(g1, (a1, a2)), (g2, (b1, b2))] = found[..] else {
                return Err(Error::MissingStructure(
                    "fewer than two groups split into two clique parts".into(),
                ));
            };
            let others = groups.clique_blocks(&[g1, g2])?;
            let g = if r == 2 {
                make_special_graph(SpecialKind::B, 3)?
            } else {
                make_special_graph(SpecialKind::H, k)?
            };
            let mut blocks = vec![usize::MAX; g.vertex_count()];
            blocks[idx(1, 1)] = a1;
            blocks[idx(1, 3)] = a1;
            blocks[idx(2, 3)] = a2;
            blocks[idx(2, 2)] = b1;
            blocks[idx(1, 2)] = b1;
            blocks[idx(3, 3)] = b2;
            for l in 3..=r {
                for v in star(l) {
                    blocks[v] = others[l - 3];
                }
            }
            (g, blocks)
        }
    };
    debug_assert!(blocks.iter().all(|&b| b != usize::MAX));
    if psi_blocks(&graph, w, &blocks)?.is_zero() {
        return Err(Error::MissingStructure(format!(
            "assignment for {claim:?} has psi = 0; the graphon does not exhibit the configuration"
        )));
    }
    Ok((graph, WitnessAssignment::new(blocks, w)?))
}
