use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use super::{BlockSampler, StepGraphon};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SeedSpec;
use crate::Rational;

/// Largest number of block assignments `k^n` that [`t_ind_exact`] will
/// enumerate (`6^9`).
pub const TIND_EXACT_MAX_ASSIGNMENTS: u64 = 10_077_696;

/// Largest graph order covered by [`density_fingerprint`].
pub const FINGERPRINT_MAX_SIZE: usize = 5;

fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// `sum_{i,j} p_i p_j h(w_ij)` with the binary entropy `h` in bits and
/// `h(0) = h(1) = 0`.
pub fn entropy(w: &StepGraphon) -> f64 {
    let k = w.block_count();
    let p: Vec<f64> = w.measures().iter().map(|x| x.to_f64().unwrap()).collect();
    let mut total = 0.0;
    for i in 0..k {
        for j in 0..k {
            total += p[i] * p[j] * binary_entropy(w.value(i, j).to_f64().unwrap());
        }
    }
    total
}

pub fn edge_density(w: &StepGraphon) -> Rational {
    let k = w.block_count();
    let mut total = Rational::zero();
    for i in 0..k {
        for j in 0..k {
            total += &w.measures()[i] * &w.measures()[j] * w.value(i, j);
        }
    }
    total
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a Rational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Integer data for exact enumeration: `measures[i] = p_i * d`,
/// `on[i][j] = w_ij * e`, `off[i][j] = (1 - w_ij) * e`.
struct Scaled {
    measures: Vec<BigUint>,
    on: Vec<Vec<BigUint>>,
    off: Vec<Vec<BigUint>>,
    d: BigUint,
    e: BigUint,
}

impl Scaled {
    fn new(w: &StepGraphon) -> Self {
        let d = lcm_of_denominators(w.measures().iter());
        let e = lcm_of_denominators(w.values().iter().flatten());
        let to_int = |x: &Rational, m: &BigInt| (x * Rational::from_integer(m.clone())).to_integer();
        let measures = w
            .measures()
            .iter()
            .map(|p| to_int(p, &d).to_biguint().unwrap())
            .collect();
        let on: Vec<Vec<BigUint>> = w
            .values()
            .iter()
            .map(|r| r.iter().map(|v| to_int(v, &e).to_biguint().unwrap()).collect())
            .collect();
        let e = e.to_biguint().unwrap();
        let off = on.iter().map(|r| r.iter().map(|v| &e - v).collect()).collect();
        Scaled {
            measures,
            on,
            off,
            d: d.to_biguint().unwrap(),
            e,
        }
    }
}

trait Num: Clone + Zero + One + std::ops::Mul<Output = Self> + std::ops::AddAssign {}
impl Num for u128 {}
impl Num for BigUint {}

struct Enumeration<'a, T> {
    g: &'a Graph,
    measures: Vec<T>,
    on: Vec<Vec<T>>,
    off: Vec<Vec<T>>,
    assign: Vec<usize>,
    sum: T,
}

impl<T: Num> Enumeration<'_, T> {
    fn run(&mut self, depth: usize, partial: T) {
        let n = self.g.vertex_count();
        if depth == n {
            self.sum += partial;
            return;
        }
        for b in 0..self.measures.len() {
            let mut f = partial.clone() * self.measures[b].clone();
            for u in 0..depth {
                let a = self.assign[u];
                let factor = if self.g.has_edge(u, depth) {
                    &self.on[a][b]
                } else {
                    &self.off[a][b]
                };
                if factor.is_zero() {
                    f = T::zero();
                    break;
                }
                f = f * factor.clone();
            }
            if f.is_zero() {
                continue;
            }
            self.assign[depth] = b;
            self.run(depth + 1, f);
        }
    }
}

fn enumerate<T: Num>(g: &Graph, s: &Scaled, conv: impl Fn(&BigUint) -> T) -> T {
    let mut e = Enumeration {
        g,
        measures: s.measures.iter().map(&conv).collect(),
        on: s.on.iter().map(|r| r.iter().map(&conv).collect()).collect(),
        off: s.off.iter().map(|r| r.iter().map(&conv).collect()).collect(),
        assign: vec![0; g.vertex_count()],
        sum: T::zero(),
    };
    e.run(0, T::one());
    e.sum
}

/// Exact induced density `t_ind(g, w)`: the sum over all block assignments
/// `phi` of `prod_v p_phi(v) * prod_{uv in E} w * prod_{uv not in E} (1 - w)`.
///
/// Refuses when `k^n` exceeds [`TIND_EXACT_MAX_ASSIGNMENTS`]; use
/// [`t_ind_mc`] there.
pub fn t_ind_exact(g: &Graph, w: &StepGraphon) -> Result<Rational> {
    let n = g.vertex_count();
    let k = w.block_count();
    let count = (k as u64).checked_pow(n as u32);
    if count.is_none_or(|c| c > TIND_EXACT_MAX_ASSIGNMENTS) {
        return Err(Error::EnvelopeExceeded {
            op: "t_ind_exact",
            detail: format!(
                "{k}^{n} block assignments exceed {TIND_EXACT_MAX_ASSIGNMENTS}; use the Monte Carlo estimator"
            ),
        });
    }
    let s = Scaled::new(w);
    let pairs = (n * n.saturating_sub(1) / 2) as u32;
    let denom = s.d.pow(n as u32) * s.e.pow(pairs);
    // every partial product and the total are at most `denom`
    let numer = if denom.bits() <= 127 {
        BigUint::from(enumerate::<u128>(g, &s, |x| x.to_u128().unwrap()))
    } else {
        enumerate::<BigUint>(g, &s, |x| x.clone())
    };
    Ok(Rational::new(BigInt::from(numer), BigInt::from(denom)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Standard error of the mean (sample standard deviation over
    /// `sqrt(trials)`); 0 for a single trial.
    pub stderr: f64,
    pub trials: u64,
}

/// Monte Carlo estimate of `t_ind(g, w)`: the mean of `psi` over `trials`
/// independent uniform points in `[0, 1]^n`, drawn from stream 0 of `seed`.
pub fn t_ind_mc(g: &Graph, w: &StepGraphon, trials: u64, seed: SeedSpec) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("t_ind_mc needs at least one trial".into()));
    }
    let n = g.vertex_count();
    let sampler = BlockSampler::new(w);
    let mut rng = seed.stream(0);
    let mut blocks = vec![0; n];
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        for b in blocks.iter_mut() {
            *b = sampler.block(rng.next_u64());
        }
        let mut psi = 1.0;
        'pairs: for u in 0..n {
            for v in u + 1..n {
                let x = sampler.value_f64(blocks[u], blocks[v]);
                psi *= if g.has_edge(u, v) { x } else { 1.0 - x };
                if psi == 0.0 {
                    break 'pairs;
                }
            }
        }
        sum += psi;
        sum_sq += psi * psi;
    }
    let t = trials as f64;
    let mean = sum / t;
    let stderr = if trials > 1 {
        let var = ((sum_sq - t * mean * mean) / (t - 1.0)).max(0.0);
        (var / t).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate { mean, stderr, trials })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FingerprintEntry {
    pub vertices: usize,
    /// Canonical form: the smallest edge mask over all relabellings, where
    /// bit `idx` stands for the `idx`-th pair `(u, v)`, `u < v`, in
    /// lexicographic order.
    pub code: u64,
    /// Number of labelled graphs on `vertices` vertices in the class.
    pub labeled_count: u64,
    pub density: Rational,
}

impl FingerprintEntry {
    pub fn graph(&self) -> Graph {
        mask_to_graph(self.vertices, self.code)
    }
}

/// Exact induced densities of every isomorphism class with at most
/// `max_size` vertices, ordered by vertex count and canonical code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityFingerprint {
    pub max_size: usize,
    pub entries: Vec<FingerprintEntry>,
}

impl DensityFingerprint {
    /// Entries at which the two fingerprints differ, as
    /// `(vertices, code, self density, other density)`.
    pub fn differences<'a>(&'a self, other: &'a DensityFingerprint) -> Vec<(usize, u64, &'a Rational, &'a Rational)> {
        self.entries
            .iter()
            .zip(&other.entries)
            .filter(|(a, b)| a.density != b.density)
            .map(|(a, b)| (a.vertices, a.code, &a.density, &b.density))
            .collect()
    }
}

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![usize::MAX; n]; n];
    let mut c = 0;
    for u in 0..n {
        for v in u + 1..n {
            idx[u][v] = c;
            idx[v][u] = c;
            c += 1;
        }
    }
    idx
}

pub(crate) fn mask_to_graph(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut c = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> c & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            c += 1;
        }
    }
    g
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Isomorphism classes of graphs on `n <= 5` vertices as
/// `(canonical code, labelled count)`, sorted by code.
pub(crate) fn graph_classes(n: usize) -> Vec<(u64, u64)> {
    let idx = pair_index(n);
    let pairs = n * n.saturating_sub(1) / 2;
    let perms = permutations(n);
    let mut counts = std::collections::BTreeMap::new();
    for mask in 0..1u64 << pairs {
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u64;
                for u in 0..n {
                    for v in u + 1..n {
                        if mask >> idx[u][v] & 1 == 1 {
                            m |= 1 << idx[p[u]][p[v]];
                        }
                    }
                }
                m
            })
            .min()
            .unwrap();
        *counts.entry(canon).or_insert(0u64) += 1;
    }
    counts.into_iter().collect()
}

pub fn density_fingerprint(w: &StepGraphon, max_size: usize) -> Result<DensityFingerprint> {
    if max_size > FINGERPRINT_MAX_SIZE {
        return Err(Error::EnvelopeExceeded {
            op: "density_fingerprint",
            detail: format!("max size {max_size}, limit {FINGERPRINT_MAX_SIZE}"),
        });
    }
    let classes: Vec<(usize, u64, u64)> = (1..=max_size)
        .flat_map(|n| graph_classes(n).into_iter().map(move |(c, k)| (n, c, k)))
        .collect();
    let entries = classes
        .into_par_iter()
        .map(|(n, code, labeled_count)| {
            Ok(FingerprintEntry {
                vertices: n,
                code,
                labeled_count,
                density: t_ind_exact(&mask_to_graph(n, code), w)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DensityFingerprint { max_size, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphon::{make_constant, make_wka, make_wstar, ratio};

    #[test]
    fn entropy_examples() {
        assert!((entropy(&make_constant(&ratio(1, 2)).unwrap()) - 1.0).abs() < 1e-12);
        assert!((entropy(&make_wka(4, &ratio(1, 2)).unwrap()) - 0.75).abs() < 1e-12);
        assert!((entropy(&make_wstar(3, 1).unwrap()) - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(entropy(&make_constant(&Rational::one()).unwrap()), 0.0);
    }

    #[test]
    fn density_examples() {
        assert_eq!(edge_density(&make_wka(4, &ratio(1, 2)).unwrap()), ratio(19, 32));
        assert_eq!(edge_density(&make_wka(3, &ratio(1, 2)).unwrap()), ratio(11, 18));
        assert_eq!(edge_density(&make_wka(4, &ratio(1, 4)).unwrap()), ratio(77, 128));
    }

    #[test]
    fn tind_examples() {
        let half = make_constant(&ratio(1, 2)).unwrap();
        assert_eq!(t_ind_exact(&Graph::empty(1), &half).unwrap(), Rational::one());
        assert_eq!(t_ind_exact(&Graph::complete(2), &half).unwrap(), ratio(1, 2));
        let w22 = make_wstar(2, 2).unwrap();
        assert_eq!(t_ind_exact(&Graph::complete(3), &w22).unwrap(), ratio(7, 16));
    }

    #[test]
    fn tind_refuses_outside_envelope() {
        let w = make_wstar(7, 3).unwrap();
        assert!(matches!(
            t_ind_exact(&Graph::empty(9), &w),
            Err(Error::EnvelopeExceeded { .. })
        ));
    }

    fn naive(g: &Graph, w: &StepGraphon) -> Rational {
        let n = g.vertex_count();
        let k = w.block_count();
        let mut total = Rational::zero();
        for code in 0..k.pow(n as u32) {
            let phi: Vec<usize> = (0..n).map(|v| code / k.pow(v as u32) % k).collect();
            let mut term: Rational = phi.iter().map(|&b| w.measures()[b].clone()).product();
            for u in 0..n {
                for v in u + 1..n {
                    let x = w.value(phi[u], phi[v]);
                    term *= if g.has_edge(u, v) {
                        x.clone()
                    } else {
                        Rational::one() - x
                    };
                }
            }
            total += term;
        }
        total
    }

    #[test]
    fn integer_paths_agree_with_rational_enumeration() {
        // 1/1000003 forces the BigUint path at n = 6
        for w in [
            make_wka(3, &ratio(1, 1_000_003)).unwrap(),
            make_wka(3, &ratio(2, 5)).unwrap(),
        ] {
            for g in [
                Graph::complete(6),
                crate::graph::make_basic(crate::graph::BasicKind::Cycle, 6).unwrap(),
                Graph::empty(3),
            ] {
                assert_eq!(t_ind_exact(&g, &w).unwrap(), naive(&g, &w));
            }
        }
    }

    #[test]
    fn mc_single_vertex_is_exact() {
        let w = make_wka(4, &ratio(1, 3)).unwrap();
        let est = t_ind_mc(&Graph::empty(1), &w, 10, SeedSpec::new(1)).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.stderr, 0.0);
        assert!(t_ind_mc(&Graph::empty(1), &w, 0, SeedSpec::new(1)).is_err());
    }

    #[test]
    fn class_counts() {
        let total = |n: usize| graph_classes(n).iter().map(|c| c.1).sum::<u64>();
        assert_eq!(graph_classes(3).len(), 4);
        assert_eq!(graph_classes(4).len(), 11);
        assert_eq!(graph_classes(5).len(), 34);
        assert_eq!(total(5), 1024);
    }

    #[test]
    fn constant_one_fingerprint() {
        let fp = density_fingerprint(&make_constant(&Rational::one()).unwrap(), 4).unwrap();
        for e in &fp.entries {
            let complete = e.graph().edge_count() == e.vertices * (e.vertices - 1) / 2;
            assert_eq!(e.density, if complete { Rational::one() } else { Rational::zero() });
        }
    }
}
