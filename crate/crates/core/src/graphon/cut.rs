//! Bounds on the cut distance between two step graphons.
//!
//! Lower bound: the induced counting lemma gives, for every graph `F` on `n`
//! vertices and every measure-preserving rearrangement,
//! `|t_ind(F, U) - t_ind(F, W)| <= C(n, 2) * ||U - W||_cut`, because `t_ind`
//! is an integral of a product of `C(n, 2)` factors, each `W` or `1 - W`, and
//! replacing the factors one at a time changes the integral by at most the
//! cut norm each time. Hence
//! `delta_cut(U, W) >= max_F |t_ind(F, U) - t_ind(F, W)| / C(|V(F)|, 2)`
//! over all `F` with `2 <= |V(F)| <= m`. The constant `C(n, 2)` is smaller
//! than `4 n^2`, so this bound dominates the one with the `4 n^2` constant.
//!
//! Upper bound: every overlay of the two block sequences on `[0, 1]` is a
//! coupling, so the cut norm of the difference under that overlay bounds
//! `delta_cut` from above. The family searched keeps the first graphon's
//! blocks in order and places the second graphon's blocks in every possible
//! order (all permutations, when affordable). On the common refinement the
//! difference is a step function and its cut norm is attained by unions of
//! cells, so it is computed exactly by enumerating row sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::density::{density_fingerprint, permutations};
use super::StepGraphon;
use crate::error::{Error, Result};
use crate::Rational;

/// Budget, in elementary column updates, for the overlay search. The search
/// tries every permutation of the second graphon's blocks while
/// `k2! * 2^cells * cells` stays within it and otherwise only the identity
/// overlay.
pub const OVERLAY_WORK_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutBounds {
    pub lower: Rational,
    pub upper: Rational,
    /// Block order of the second graphon in the best overlay found.
    pub best_order: Vec<usize>,
    /// Whether every block order was searched (false: identity only).
    pub all_orders: bool,
}

impl CutBounds {
    pub fn lower_f64(&self) -> f64 {
        self.lower.to_f64().unwrap_or(0.0)
    }

    pub fn upper_f64(&self) -> f64 {
        self.upper.to_f64().unwrap_or(f64::INFINITY)
    }
}

pub fn cut_distance_bounds(w1: &StepGraphon, w2: &StepGraphon, m: usize) -> Result<CutBounds> {
    let lower = if m >= 2 {
        let f1 = density_fingerprint(w1, m)?;
        let f2 = density_fingerprint(w2, m)?;
        f1.entries
            .iter()
            .zip(&f2.entries)
            .filter(|(a, _)| a.vertices >= 2)
            .map(|(a, b)| {
                let pairs = (a.vertices * (a.vertices - 1) / 2) as i64;
                (&a.density - &b.density).abs() / Rational::from_integer(BigInt::from(pairs))
            })
            .max()
            .unwrap_or_else(Rational::zero)
    } else {
        Rational::zero()
    };

    let k2 = w2.block_count();
    let cells = w1.block_count() + k2 - 1;
    let per_overlay = (1u64 << cells.min(63)).saturating_mul(cells as u64);
    if cells > 30 || per_overlay > OVERLAY_WORK_BUDGET {
        return Err(Error::EnvelopeExceeded {
            op: "cut_distance_bounds",
            detail: format!("common refinement may have {cells} cells"),
        });
    }
    let factorial: u64 = (1..=k2 as u64)
        .try_fold(1u64, |a, b| a.checked_mul(b))
        .unwrap_or(u64::MAX);
    let all_orders = factorial.saturating_mul(per_overlay) <= OVERLAY_WORK_BUDGET;
    let orders = if all_orders {
        permutations(k2)
    } else {
        vec![(0..k2).collect()]
    };

    let mut best: Option<(Rational, Vec<usize>)> = None;
    for order in orders {
        let norm = overlay_cut_norm(w1, w2, &order);
        if best.as_ref().is_none_or(|(b, _)| norm < *b) {
            let done = norm.is_zero();
            best = Some((norm, order));
            if done {
                break;
            }
        }
    }
    let (upper, best_order) = best.expect("at least one order");
    debug_assert!(lower <= upper);
    Ok(CutBounds {
        lower,
        upper,
        best_order,
        all_orders,
    })
}

/// Cut norm of `w1 - w2'` where `w2'` lays out `w2`'s blocks in `order`.
fn overlay_cut_norm(w1: &StepGraphon, w2: &StepGraphon, order: &[usize]) -> Rational {
    // cells of the common refinement: (measure, block of w1, block of w2)
    let mut cells: Vec<(Rational, usize, usize)> = Vec::new();
    let (mut i, mut j) = (0, 0);
    let mut rem1 = w1.measures()[0].clone();
    let mut rem2 = w2.measures()[order[0]].clone();
    loop {
        let step = rem1.clone().min(rem2.clone());
        cells.push((step.clone(), i, order[j]));
        rem1 -= &step;
        rem2 -= &step;
        if rem1.is_zero() {
            i += 1;
            if i == w1.block_count() {
                break;
            }
            rem1 = w1.measures()[i].clone();
        }
        if rem2.is_zero() {
            j += 1;
            rem2 = w2.measures()[order[j]].clone();
        }
    }

    let l = cells.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.0.denom()));
    let e = w1
        .values()
        .iter()
        .chain(w2.values())
        .flatten()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scale = |x: &Rational, s: &BigInt| (x * Rational::from_integer(s.clone())).to_integer();
    let mu: Vec<BigInt> = cells.iter().map(|c| scale(&c.0, &l)).collect();
    let r = cells.len();
    let mut a = vec![vec![BigInt::zero(); r]; r];
    let mut max_abs = BigInt::zero();
    for c in 0..r {
        for d in 0..r {
            let diff = w1.value(cells[c].1, cells[d].1) - w2.value(cells[c].2, cells[d].2);
            a[c][d] = &mu[c] * &mu[d] * scale(&diff, &e);
            max_abs = max_abs.max(a[c][d].abs());
        }
    }
    let denom = &l * &l * &e;
    let bound = max_abs * BigInt::from((r * r) as u64);
    let numer = if bound.bits() < 126 {
        let a: Vec<Vec<i128>> = a
            .iter()
            .map(|row| row.iter().map(|x| x.to_i128().unwrap()).collect())
            .collect();
        BigInt::from(max_rect_sum(&a))
    } else {
        max_rect_sum(&a)
    };
    Rational::new(numer, denom)
}

/// `max_{S, T} |sum_{c in S, d in T} a[c][d]|` over subsets of indices,
/// walking all row sets `S` in Gray-code order and taking the best column
/// set for each.
fn max_rect_sum<T>(a: &[Vec<T>]) -> T
where
    T: Clone + Zero + Signed + PartialOrd + std::ops::AddAssign + std::ops::SubAssign,
{
    let r = a.len();
    let mut col = vec![T::zero(); r];
    let mut in_set = vec![false; r];
    let mut best = T::zero();
    for step in 1u64..(1u64 << r) {
        let c = step.trailing_zeros() as usize;
        in_set[c] = !in_set[c];
        for d in 0..r {
            if in_set[c] {
                col[d] += a[c][d].clone();
            } else {
                col[d] -= a[c][d].clone();
            }
        }
        let (mut pos, mut neg) = (T::zero(), T::zero());
        for x in &col {
            if x.is_positive() {
                pos += x.clone();
            } else {
                neg -= x.clone();
            }
        }
        if pos > best {
            best = pos;
        }
        if neg > best {
            best = neg;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphon::{make_wka, make_wstar, ratio};

    #[test]
    fn identical_inputs_give_zero() {
        let w = make_wka(4, &ratio(1, 3)).unwrap();
        let b = cut_distance_bounds(&w, &w, 3).unwrap();
        assert!(b.lower.is_zero() && b.upper.is_zero());
    }

    #[test]
    fn flip_pair_has_zero_upper_bound() {
        let b = cut_distance_bounds(
            &make_wka(4, &ratio(1, 3)).unwrap(),
            &make_wka(4, &ratio(2, 3)).unwrap(),
            2,
        )
        .unwrap();
        assert!(b.upper.is_zero());
        assert!(b.all_orders);
    }

    #[test]
    fn different_densities_give_positive_lower_bound() {
        let b = cut_distance_bounds(
            &make_wka(4, &ratio(1, 4)).unwrap(),
            &make_wka(4, &ratio(1, 2)).unwrap(),
            2,
        )
        .unwrap();
        // edge densities 77/128 and 76/128, one pair in K_2
        assert_eq!(b.lower, ratio(1, 128));
        assert!(b.lower <= b.upper);
    }

    #[test]
    fn rect_sum_brute_force() {
        let a = vec![vec![1i128, -2, 3], vec![-4, 5, -6], vec![7, -8, 9]];
        let mut best = 0;
        for s in 0..8 {
            for t in 0..8 {
                let mut sum = 0;
                for c in 0..3 {
                    for d in 0..3 {
                        if s >> c & 1 == 1 && t >> d & 1 == 1 {
                            sum += a[c][d];
                        }
                    }
                }
                best = best.max(i128::abs(sum));
            }
        }
        assert_eq!(max_rect_sum(&a), best);
    }

    #[test]
    fn constant_versus_wstar() {
        // |1/2 - W*_{2,0}| is 1/2 on the diagonal blocks: cut norm 1/4 with
        // S = T = one block is 1/8, and S = T = all gives 1/4
        let c = crate::graphon::make_constant(&ratio(1, 2)).unwrap();
        let b = cut_distance_bounds(&c, &make_wstar(2, 0).unwrap(), 3).unwrap();
        assert_eq!(b.upper, ratio(1, 4));
        assert!(b.lower > Rational::zero() && b.lower <= b.upper);
    }
}
