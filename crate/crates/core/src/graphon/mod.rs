//! Step graphons with exact rational block measures and values.
//!
//! A step graphon on `k` blocks splits `[0, 1)` into consecutive intervals
//! `I_0, .., I_{k-1}` of the given measures and is constant on every
//! `I_i x I_j`, diagonal blocks included.

mod cut;
mod density;
mod structure;

pub use cut::{cut_distance_bounds, CutBounds};
pub use density::{
    density_fingerprint, edge_density, entropy, t_ind_exact, t_ind_mc, DensityFingerprint, FingerprintEntry,
    McEstimate, FINGERPRINT_MAX_SIZE, TIND_EXACT_MAX_ASSIGNMENTS,
};
#[allow(unused_imports)]
pub(crate) use density::{graph_classes, mask_to_graph, permutations};
pub use structure::{disjoint_clique_parts, group_of_blocks, is_in_r_infinity, is_in_rk};

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{parse_err, Error, Result};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepGraphon {
    measures: Vec<Rational>,
    values: Vec<Vec<Rational>>,
}

impl StepGraphon {
    pub fn new(measures: Vec<Rational>, values: Vec<Vec<Rational>>) -> Result<Self> {
        let k = measures.len();
        if k == 0 {
            return Err(Error::InvalidGraphon("no blocks".into()));
        }
        if let Some(i) = measures.iter().position(|p| p <= &Rational::zero()) {
            return Err(Error::InvalidGraphon(format!("block {i} has non-positive measure")));
        }
        let total: Rational = measures.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidGraphon(format!("measures sum to {total}, not 1")));
        }
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidGraphon(format!("value matrix must be {k} x {k}")));
        }
        for i in 0..k {
            for j in 0..k {
                let v = &values[i][j];
                if v < &Rational::zero() || v > &Rational::one() {
                    return Err(Error::InvalidGraphon(format!("value ({i}, {j}) = {v} outside [0, 1]")));
                }
                if values[j][i] != *v {
                    return Err(Error::InvalidGraphon(format!(
                        "values ({i}, {j}) and ({j}, {i}) differ"
                    )));
                }
            }
        }
        Ok(StepGraphon { measures, values })
    }

    pub fn block_count(&self) -> usize {
        self.measures.len()
    }

    pub fn measures(&self) -> &[Rational] {
        &self.measures
    }

    pub fn value(&self, i: usize, j: usize) -> &Rational {
        &self.values[i][j]
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    /// Right end points of the block intervals; the last one is 1.
    pub fn boundaries(&self) -> Vec<Rational> {
        let mut acc = Rational::zero();
        self.measures
            .iter()
            .map(|p| {
                acc += p;
                acc.clone()
            })
            .collect()
    }

    /// Block containing `x`; intervals are half-open and `x = 1` belongs to
    /// the last block.
    pub fn block_of(&self, x: &Rational) -> Result<usize> {
        if x < &Rational::zero() || x > &Rational::one() {
            return Err(Error::InvalidParameter(format!("point {x} outside [0, 1]")));
        }
        let b = self.boundaries();
        Ok(b.iter().position(|c| x < c).unwrap_or(b.len() - 1))
    }

    /// Text form: `k`, then the measures, then `k` rows of values.
    pub fn to_text(&self) -> String {
        let join = |row: &[Rational]| row.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
        let mut s = format!("{}\n{}\n", self.block_count(), join(&self.measures));
        for row in &self.values {
            let _ = writeln!(s, "{}", join(row));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<StepGraphon> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, head) = lines.next().ok_or_else(|| parse_err(1, "missing block count"))?;
        let k: usize = head.parse().map_err(|e| parse_err(ln, format!("block count: {e}")))?;
        let mut row = |what: &str| -> Result<Vec<Rational>> {
            let (ln, line) = lines.next().ok_or_else(|| parse_err(ln, format!("missing {what}")))?;
            let vals = line
                .split_whitespace()
                .map(|t| parse_rational(t).ok_or_else(|| parse_err(ln, format!("bad rational {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != k {
                return Err(parse_err(
                    ln,
                    format!("{what}: expected {k} entries, got {}", vals.len()),
                ));
            }
            Ok(vals)
        };
        let measures = row("measures")?;
        let values = (0..k).map(|_| row("value row")).collect::<Result<Vec<_>>>()?;
        StepGraphon::new(measures, values)
    }
}

/// Parse `p/q` or an integer.
pub fn parse_rational(t: &str) -> Option<Rational> {
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => t.trim().parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub(crate) fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn half() -> Rational {
    ratio(1, 2)
}

/// `W*_{k,s}`: `k` equal blocks, value 1/2 across blocks, diagonal value 1 on
/// the first `s` blocks and 0 on the rest.
pub fn make_wstar(k: usize, s: usize) -> Result<StepGraphon> {
    if k == 0 || s > k {
        return Err(Error::InvalidParameter(format!(
            "W*_(k,s) needs 1 <= k and s <= k, got k={k}, s={s}"
        )));
    }
    let p = ratio(1, k as i64);
    let values = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match (i == j, i < s) {
                    (false, _) => half(),
                    (true, true) => Rational::one(),
                    (true, false) => Rational::zero(),
                })
                .collect()
        })
        .collect();
    StepGraphon::new(vec![p; k], values)
}

/// `W^k_a`: `W*_{k,k}` with its first block split at `a/k` into two cliques
/// that do not see each other. Blocks: `a/k`, `(1-a)/k`, then `k-1` blocks of
/// `1/k`. For `a` in `{0, 1}` the split disappears and this is `W*_{k,k}`.
pub fn make_wka(k: usize, a: &Rational) -> Result<StepGraphon> {
    if k == 0 {
        return Err(Error::InvalidParameter("W^k_a needs k >= 1".into()));
    }
    if a < &Rational::zero() || a > &Rational::one() {
        return Err(Error::InvalidParameter(format!("a = {a} outside [0, 1]")));
    }
    if a.is_zero() || a.is_one() {
        return make_wstar(k, k);
    }
    let kk = Rational::from_integer(BigInt::from(k));
    let mut measures = vec![a / &kk, (Rational::one() - a) / &kk];
    measures.extend(std::iter::repeat_n(Rational::one() / &kk, k - 1));
    let group = |b: usize| b.saturating_sub(1);
    let n = k + 1;
    let values = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if group(i) != group(j) {
                        half()
                    } else if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    StepGraphon::new(measures, values)
}

pub fn make_constant(c: &Rational) -> Result<StepGraphon> {
    StepGraphon::new(vec![Rational::one()], vec![vec![c.clone()]])
}

/// Maps uniform 64-bit words to blocks and coin flips without floating point:
/// a word `r` lands in block `i` iff `t_{i-1} <= r < t_i` with
/// `t_i = ceil(c_i 2^64)` for the cumulative measure `c_i`, and an edge with
/// value `w` is present iff `r < ceil(w 2^64)`.
#[derive(Debug, Clone)]
pub(crate) struct BlockSampler {
    thresholds: Vec<u128>,
    edge_thresholds: Vec<Vec<u128>>,
    values_f64: Vec<Vec<f64>>,
}

fn scaled_ceil(q: &Rational) -> u128 {
    let scaled = q.numer() << 64usize;
    let den = q.denom();
    let c = (scaled + den - BigInt::one()) / den;
    c.to_u128().expect("value in [0, 1]")
}

impl BlockSampler {
    pub(crate) fn new(w: &StepGraphon) -> Self {
        let thresholds = w.boundaries().iter().map(scaled_ceil).collect();
        let edge_thresholds = w.values.iter().map(|r| r.iter().map(scaled_ceil).collect()).collect();
        let values_f64 = w
            .values
            .iter()
            .map(|r| r.iter().map(|v| v.to_f64().unwrap()).collect())
            .collect();
        BlockSampler {
            thresholds,
            edge_thresholds,
            values_f64,
        }
    }

    pub(crate) fn block(&self, r: u64) -> usize {
        let r = r as u128;
        self.thresholds
            .iter()
            .position(|&t| r < t)
            .unwrap_or(self.thresholds.len() - 1)
    }

    pub(crate) fn edge(&self, a: usize, b: usize, r: u64) -> bool {
        (r as u128) < self.edge_thresholds[a][b]
    }

    pub(crate) fn value_f64(&self, a: usize, b: usize) -> f64 {
        self.values_f64[a][b]
    }
}
