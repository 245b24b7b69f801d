//! W-random graphs, the integrand `psi`, constructibility from step graphons
//! and the standard witnessing assignments for the obstruction graphs.

mod constructible;
mod witness;

pub use constructible::is_constructible;
pub use witness::{standard_witness, Claim};

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPartition};
use crate::graphon::{BlockSampler, StepGraphon};
use crate::rng::SeedSpec;
use crate::Rational;

/// A block index for every vertex. Since a step graphon is constant on
/// blocks, a point `x_v` of a witnessing vector only matters through its
/// block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessAssignment {
    blocks: Vec<usize>,
}

impl WitnessAssignment {
    pub fn new(blocks: Vec<usize>, w: &StepGraphon) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|&&b| b >= w.block_count()) {
            return Err(Error::InvalidParameter(format!(
                "block {b} out of range for a {}-block graphon",
                w.block_count()
            )));
        }
        Ok(WitnessAssignment { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.len()
    }

    /// Vertices grouped by block (one part per block, possibly empty).
    pub fn partition(&self, block_count: usize) -> VertexPartition {
        VertexPartition::from_labels(&self.blocks, block_count).expect("blocks validated at construction")
    }

    /// One block index per line.
    pub fn to_text(&self) -> String {
        self.blocks.iter().map(|b| format!("{b}\n")).collect()
    }
}

/// `G(n, W)`: latent uniforms pick the blocks and every pair becomes an edge
/// independently with probability `W` of its blocks.
///
/// Stream 0 of `seed` supplies the `n` latent words; stream `i + 1` supplies
/// the coin flips for pairs `(i, j)`, `j > i`, in increasing `j`. Rows are
/// generated in parallel; the output does not depend on scheduling.
pub fn sample_w_random(w: &StepGraphon, n: usize, seed: SeedSpec) -> (Graph, WitnessAssignment) {
    let sampler = BlockSampler::new(w);
    let mut latent = seed.stream(0);
    let blocks: Vec<usize> = (0..n).map(|_| sampler.block(latent.next_u64())).collect();
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed.stream(i as u64 + 1);
            (i + 1..n)
                .filter(|&j| sampler.edge(blocks[i], blocks[j], rng.next_u64()))
                .collect()
        })
        .collect();
    let mut g = Graph::empty(n);
    for (i, row) in rows.into_iter().enumerate() {
        for j in row {
            g.add_edge(i, j).expect("valid pair");
        }
    }
    (g, WitnessAssignment { blocks })
}

/// `psi` evaluated at block level: the product over pairs of `W` (edges) or
/// `1 - W` (non-edges).
pub fn psi_blocks(g: &Graph, w: &StepGraphon, blocks: &[usize]) -> Result<Rational> {
    let n = g.vertex_count();
    if blocks.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{} blocks for {n} vertices",
            blocks.len()
        )));
    }
    if let Some(b) = blocks.iter().find(|&&b| b >= w.block_count()) {
        return Err(Error::InvalidParameter(format!("block {b} out of range")));
    }
    let mut prod = Rational::one();
    for u in 0..n {
        for v in u + 1..n {
            let x = w.value(blocks[u], blocks[v]);
            if g.has_edge(u, v) {
                prod *= x;
            } else {
                prod *= Rational::one() - x;
            }
            if prod.is_zero() {
                return Ok(prod);
            }
        }
    }
    Ok(prod)
}

/// `psi(x_1, .., x_n)` for points in `[0, 1]`; each `f64` is converted
/// exactly to a rational before the block lookup, so the result is exact.
pub fn psi(g: &Graph, w: &StepGraphon, points: &[f64]) -> Result<Rational> {
    let blocks = points
        .iter()
        .map(|&x| {
            let q =
                Rational::from_float(x).ok_or_else(|| Error::InvalidParameter(format!("point {x} is not finite")))?;
            w.block_of(&q)
        })
        .collect::<Result<Vec<_>>>()?;
    psi_blocks(g, w, &blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphon::{make_constant, make_wka};

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn single_vertex_sample() {
        let w = make_wka(4, &r(1, 2)).unwrap();
        let (g, a) = sample_w_random(&w, 1, SeedSpec::new(3));
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        assert_eq!(a.vertex_count(), 1);
    }

    #[test]
    fn constant_one_gives_complete_graph() {
        let (g, _) = sample_w_random(&make_constant(&Rational::one()).unwrap(), 6, SeedSpec::new(9));
        assert_eq!(g, Graph::complete(6));
    }

    #[test]
    fn sampling_is_deterministic() {
        let w = make_wka(3, &r(1, 3)).unwrap();
        let a = sample_w_random(&w, 80, SeedSpec::new(42));
        let b = sample_w_random(&w, 80, SeedSpec::new(42));
        let c = sample_w_random(&w, 80, SeedSpec::new(43));
        assert_eq!(a.0.to_text(), b.0.to_text());
        assert_eq!(a.1, b.1);
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn psi_examples() {
        let w = make_wka(4, &r(1, 2)).unwrap();
        assert_eq!(psi(&Graph::empty(1), &w, &[0.3]).unwrap(), Rational::one());
        assert_eq!(psi(&Graph::complete(2), &w, &[0.01, 0.02]).unwrap(), Rational::one());
        assert_eq!(psi(&Graph::empty(2), &w, &[0.01, 0.01]).unwrap(), Rational::zero());
        assert_eq!(psi(&Graph::complete(2), &w, &[0.01, 0.9]).unwrap(), r(1, 2));
        assert!(psi(&Graph::empty(1), &w, &[1.5]).is_err());
        assert!(psi(&Graph::empty(2), &w, &[0.5]).is_err());
    }
}
