use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ratio, StepGraphon};
use crate::error::{Error, Result};
use crate::Rational;

/// For each block, the index `g` of the equal interval
/// `[g/k, (g+1)/k)` containing it, or `None` when the blocks do not refine
/// the `k` equal intervals.
pub fn group_of_blocks(w: &StepGraphon, k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return None;
    }
    let kk = Rational::from_integer(BigInt::from(k));
    let mut start = Rational::zero();
    let mut groups = Vec::with_capacity(w.block_count());
    for (p, end) in w.measures().iter().zip(w.boundaries()) {
        // group of the block's left end; the block must end inside it
        let g = (&start * &kk).floor().to_integer();
        let g: usize = g.try_into().ok()?;
        let group_end = Rational::from_integer(BigInt::from(g + 1)) / &kk;
        if end > group_end {
            return None;
        }
        groups.push(g);
        start += p;
    }
    Some(groups)
}

/// Membership in `R_k`: value 1/2 between different equal intervals and a
/// value in `{0, 1}` on every block inside one interval.
pub fn is_in_rk(w: &StepGraphon, k: usize) -> bool {
    let Some(groups) = group_of_blocks(w, k) else {
        return false;
    };
    let half = ratio(1, 2);
    let n = w.block_count();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let v = w.value(i, j);
            if groups[i] == groups[j] {
                v.is_zero() || v.is_one()
            } else {
                *v == half
            }
        })
    })
}

/// `R_infinity` holds only the constant graphon 1/2 (in any block
/// presentation).
pub fn is_in_r_infinity(w: &StepGraphon) -> bool {
    let half = ratio(1, 2);
    w.values().iter().flatten().all(|v| *v == half)
}

/// Classes of the relation "value 1" on the given blocks when it is an
/// equivalence relation, i.e. when the restriction of `w` is a disjoint
/// clique graphon. Parts list block indices in increasing order and are
/// ordered by their smallest block.
///
/// Errors when the restriction takes a value other than 0 or 1.
pub fn disjoint_clique_parts(w: &StepGraphon, group: &[usize]) -> Result<Option<Vec<Vec<usize>>>> {
    let mut blocks = group.to_vec();
    blocks.sort_unstable();
    blocks.dedup();
    if let Some(&b) = blocks.iter().find(|&&b| b >= w.block_count()) {
        return Err(Error::InvalidParameter(format!("block {b} out of range")));
    }
    for &a in &blocks {
        for &b in &blocks {
            let v = w.value(a, b);
            if !(v.is_zero() || v.is_one()) {
                return Err(Error::InvalidGraphon(format!(
                    "value {v} between blocks {a} and {b} is not 0 or 1"
                )));
            }
        }
    }
    let one = |a: usize, b: usize| w.value(a, b).is_one();
    if blocks.iter().any(|&a| !one(a, a)) {
        return Ok(None);
    }
    for &a in &blocks {
        for &b in &blocks {
            for &c in &blocks {
                if one(a, b) && one(b, c) && !one(a, c) {
                    return Ok(None);
                }
            }
        }
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &b in &blocks {
        match parts.iter_mut().find(|p| one(p[0], b)) {
            Some(p) => p.push(b),
            None => parts.push(vec![b]),
        }
    }
    Ok(Some(parts))
}
