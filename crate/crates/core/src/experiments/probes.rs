use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use rand::distr::weighted::WeightedIndex;
use rand::RngExt;
use rayon::prelude::*;
use statrs::function::factorial::ln_binomial;

use super::{mean_stderr, ExperimentReport, GraphonSpec, Histogram, RowKind, Value};
use crate::error::{Error, Result};
use crate::graphon::{cut_distance_bounds, density_fingerprint, edge_density, make_wka, StepGraphon};
use crate::rng::SeedSpec;
use crate::sampling::sample_w_random;
use crate::Rational;

fn check_trials(n: usize, trials: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("probe needs n >= 2, got {n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("probe needs at least one trial".into()));
    }
    Ok(())
}

/// Edge density of `G(n, W)` averaged over `trials` samples, next to the
/// exact edge density of `W`.
pub fn run_density_probe(spec: &GraphonSpec, n: usize, trials: u64, seed: SeedSpec) -> Result<ExperimentReport> {
    check_trials(n, trials)?;
    let w = spec.build()?;
    let pairs = (n * (n - 1) / 2) as f64;
    let densities: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| sample_w_random(&w, n, seed.for_trial(t)).0.edge_count() as f64 / pairs)
        .collect();
    let (mean, se) = mean_stderr(&densities);

    let mut r = ExperimentReport::new("density");
    r.param("graphon", spec);
    r.param("n", n);
    r.param("trials", trials);
    r.param("seed", seed.master);
    r.row("mean edge density", RowKind::Observed, Value::Float(mean), Some(se));
    let exact = edge_density(&w);
    r.row(
        "graphon edge density",
        RowKind::Exact,
        Value::Exact(exact.clone()),
        None,
    );
    if let Some(class) = spec.conjectured_class() {
        r.row(
            format!("{class} edge density limit"),
            RowKind::ConjecturedReference,
            Value::Exact(exact),
            None,
        );
    }
    Ok(r)
}

/// Distinct values of the degree function `x -> int W(x, y) dy` with the
/// measure of the set where each is taken, ordered by value.
pub fn degree_atoms(w: &StepGraphon) -> Vec<(Rational, Rational)> {
    let mu = w.measures();
    let mut atoms: BTreeMap<Rational, Rational> = BTreeMap::new();
    for i in 0..w.block_count() {
        let d: Rational = (0..w.block_count()).map(|j| &mu[j] * w.value(i, j)).sum();
        *atoms.entry(d).or_insert_with(Rational::zero) += &mu[i];
    }
    atoms.into_iter().collect()
}

/// Normalized degrees `deg(v) / n` of `G(n, W)`: their histogram and, for
/// each atom of the degree function of `W`, the share of vertices within
/// `bin_width` of it.
pub fn run_degree_probe(
    spec: &GraphonSpec,
    n: usize,
    trials: u64,
    seed: SeedSpec,
    bin_width: f64,
) -> Result<ExperimentReport> {
    check_trials(n, trials)?;
    if !(bin_width > 0.0 && bin_width < 1.0) {
        return Err(Error::InvalidParameter(format!("bin width {bin_width} outside (0, 1)")));
    }
    let w = spec.build()?;
    let atoms = degree_atoms(&w);
    let atom_f: Vec<f64> = atoms.iter().map(|(a, _)| a.to_f64().unwrap()).collect();
    let degrees: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (g, _) = sample_w_random(&w, n, seed.for_trial(t));
            (0..n).map(|v| g.degree(v) as f64 / n as f64).collect()
        })
        .collect();
    let near = |x: f64, a: f64| (x - a).abs() <= bin_width;

    let mut r = ExperimentReport::new("degrees");
    r.param("graphon", spec);
    r.param("n", n);
    r.param("trials", trials);
    r.param("seed", seed.master);
    r.param("bin_width", bin_width);
    let class = spec.conjectured_class();
    for ((atom, weight), &a) in atoms.iter().zip(&atom_f) {
        let shares: Vec<f64> = degrees
            .iter()
            .map(|d| d.iter().filter(|&&x| near(x, a)).count() as f64 / n as f64)
            .collect();
        let (m, se) = mean_stderr(&shares);
        r.row(
            format!("mass near {atom}"),
            RowKind::Observed,
            Value::Float(m),
            Some(se),
        );
        r.row(
            format!("atom {atom} weight"),
            RowKind::Exact,
            Value::Exact(weight.clone()),
            None,
        );
        if let Some(c) = class {
            r.row(
                format!("{c} atom {atom} weight"),
                RowKind::ConjecturedReference,
                Value::Exact(weight.clone()),
                None,
            );
        }
    }
    let outside: Vec<f64> = degrees
        .iter()
        .map(|d| d.iter().filter(|&&x| !atom_f.iter().any(|&a| near(x, a))).count() as f64 / n as f64)
        .collect();
    let (m, se) = mean_stderr(&outside);
    r.row(
        "mass away from every atom",
        RowKind::Observed,
        Value::Float(m),
        Some(se),
    );
    let hist = Histogram::from_values(degrees.iter().flatten().copied(), 0.0, 1.0, bin_width);
    for (i, mass) in hist.masses.iter().enumerate() {
        // rounding hides float noise such as 0.15000000000000002 in the labels
        let edge = |j: usize| (j as f64 * bin_width * 1e9).round() / 1e9;
        r.row(
            format!("histogram {}..{}", edge(i), edge(i + 1)),
            RowKind::Observed,
            Value::Float(*mass),
            None,
        );
    }
    r.histogram = Some(hist);
    Ok(r)
}

/// How a uniform two-clique graph on `n` vertices is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ensemble {
    /// Uniform over labelled graphs.
    Labeled,
    /// Uniform over isomorphism classes, i.e. over the smaller part size.
    Unlabeled,
}

impl std::str::FromStr for Ensemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "labeled" | "labelled" => Ok(Ensemble::Labeled),
            "unlabeled" | "unlabelled" => Ok(Ensemble::Unlabeled),
            _ => Err(Error::InvalidParameter(format!(
                "ensemble {s:?}: expected labeled or unlabeled"
            ))),
        }
    }
}

impl std::fmt::Display for Ensemble {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ensemble::Labeled => "labeled",
            Ensemble::Unlabeled => "unlabeled",
        })
    }
}

/// Natural log of the number of graphs in the ensemble whose smaller clique
/// has `k` vertices, for `k = 0..=n/2`.
///
/// A labelled two-clique graph with both cliques non-empty is its vertex
/// split `{S, V \ S}`, counted once per unordered split: `C(n, k)` graphs for
/// `k < n/2` and `C(n, n/2) / 2` for `k = n/2`. `k = 0` is `K_n` alone. In
/// the unlabelled ensemble every `k` is one graph.
pub fn twoclique_weights(n: usize, ensemble: Ensemble) -> Vec<f64> {
    (0..=n / 2)
        .map(|k| match ensemble {
            Ensemble::Unlabeled => 0.0,
            Ensemble::Labeled if k == 0 => 0.0,
            Ensemble::Labeled if 2 * k == n => ln_binomial(n as u64, k as u64) - std::f64::consts::LN_2,
            Ensemble::Labeled => ln_binomial(n as u64, k as u64),
        })
        .collect()
}

/// Samples the smaller-clique fraction `k / n` of uniform two-clique graphs
/// and compares its distribution with the two candidate limits: all mass at
/// `1/2`, or uniform on `(0, 1/2)`.
pub fn run_twoclique_limit_probe(
    n: usize,
    trials: u64,
    seed: SeedSpec,
    ensemble: Ensemble,
) -> Result<ExperimentReport> {
    check_trials(n, trials)?;
    let logw = twoclique_weights(n, ensemble);
    let top = logw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = logw.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = weights.iter().sum();
    let dist = WeightedIndex::new(&weights).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = seed.stream(0);
    let mut fractions: Vec<f64> = (0..trials).map(|_| rng.sample(&dist) as f64 / n as f64).collect();

    let mut r = ExperimentReport::new("twoclique");
    r.param("n", n);
    r.param("trials", trials);
    r.param("seed", seed.master);
    r.param("ensemble", ensemble);
    let (m, se) = mean_stderr(&fractions);
    r.row(
        "mean smaller-clique fraction",
        RowKind::Observed,
        Value::Float(m),
        Some(se),
    );
    let exact_mean: f64 = weights
        .iter()
        .enumerate()
        .map(|(k, w)| w * k as f64 / n as f64)
        .sum::<f64>()
        / total;
    r.row(
        "ensemble mean smaller-clique fraction",
        RowKind::Exact,
        Value::Float(exact_mean),
        None,
    );
    let zero = fractions.iter().filter(|&&x| x == 0.0).count() as f64 / trials as f64;
    r.row(
        "share with a single clique",
        RowKind::Observed,
        Value::Float(zero),
        None,
    );

    fractions.sort_by(f64::total_cmp);
    let to_point = fractions.iter().map(|x| 0.5 - x).sum::<f64>() / trials as f64;
    let to_uniform = wasserstein_to_uniform_half(&fractions);
    r.row("point mass at 1/2: mean", RowKind::Candidate, Value::Float(0.5), None);
    r.row(
        "uniform on (0, 1/2): mean",
        RowKind::Candidate,
        Value::Float(0.25),
        None,
    );
    r.row(
        "wasserstein distance to point mass at 1/2",
        RowKind::Observed,
        Value::Float(to_point),
        None,
    );
    r.row(
        "wasserstein distance to uniform on (0, 1/2)",
        RowKind::Observed,
        Value::Float(to_uniform),
        None,
    );
    let closer = if to_point <= to_uniform {
        "point mass at 1/2"
    } else {
        "uniform on (0, 1/2)"
    };
    r.row("closer candidate", RowKind::Verdict, Value::Text(closer.into()), None);

    let hist = Histogram::from_values(fractions.iter().copied(), 0.0, 0.5, 0.05);
    for (i, mass) in hist.masses.iter().enumerate() {
        let lo = i as f64 * 0.05;
        r.row(
            format!("histogram {lo:.2}..{:.2}", lo + 0.05),
            RowKind::Observed,
            Value::Float(*mass),
            None,
        );
    }
    r.histogram = Some(hist);
    Ok(r)
}

/// `int_0^{1/2} |F(x) - 2x| dx` for the empirical distribution function `F`
/// of the sorted sample `xs` in `[0, 1/2]`.
fn wasserstein_to_uniform_half(xs: &[f64]) -> f64 {
    // |c - 2x| integrated over [a, b]
    let piece = |c: f64, a: f64, b: f64| {
        let g = |x: f64| {
            if x <= c / 2.0 {
                c * x - x * x
            } else {
                c * c / 2.0 - c * x + x * x
            }
        };
        let m = (c / 2.0).clamp(a, b);
        (g(m) - g(a)).abs() + (g(b) - g(m)).abs()
    };
    let n = xs.len() as f64;
    let mut total = 0.0;
    let mut prev = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        total += piece(i as f64 / n, prev, x);
        prev = x;
    }
    total + piece(1.0, prev, 0.5)
}

/// Compares `W^k_a` with `W^k_b` through their induced-density fingerprints
/// on at most `m` vertices and bounds on their cut distance. The verdict is
/// `equivalent-evidence` only when the fingerprints agree exactly and some
/// overlay of the two step functions coincides.
pub fn run_equivalence_probe(k: usize, a: &Rational, b: &Rational, m: usize) -> Result<ExperimentReport> {
    let w1 = make_wka(k, a)?;
    let w2 = make_wka(k, b)?;
    let f1 = density_fingerprint(&w1, m)?;
    let f2 = density_fingerprint(&w2, m)?;
    let diffs = f1.differences(&f2);
    let bounds = cut_distance_bounds(&w1, &w2, m)?;

    let mut r = ExperimentReport::new("equiv");
    r.param("k", k);
    r.param("a", a);
    r.param("b", b);
    r.param("m", m);
    r.row(
        "edge density of first",
        RowKind::Exact,
        Value::Exact(edge_density(&w1)),
        None,
    );
    r.row(
        "edge density of second",
        RowKind::Exact,
        Value::Exact(edge_density(&w2)),
        None,
    );
    r.row(
        "fingerprint classes compared",
        RowKind::Exact,
        Value::Count(f1.entries.len() as u64),
        None,
    );
    r.row(
        "fingerprint classes differing",
        RowKind::Exact,
        Value::Count(diffs.len() as u64),
        None,
    );
    r.row(
        "cut distance lower bound",
        RowKind::Exact,
        Value::Exact(bounds.lower.clone()),
        None,
    );
    r.row(
        "cut distance upper bound",
        RowKind::Exact,
        Value::Exact(bounds.upper.clone()),
        None,
    );
    r.row(
        "all block orders searched",
        RowKind::Exact,
        Value::Text(bounds.all_orders.to_string()),
        None,
    );
    let (verdict, reason) = match diffs.first() {
        Some((2, ..)) => ("distinguished", "edge density".to_string()),
        Some((v, code, ..)) => (
            "distinguished",
            format!("induced density of class {code} on {v} vertices"),
        ),
        None if bounds.upper.is_zero() => (
            "equivalent-evidence",
            "fingerprints equal and an overlay coincides".into(),
        ),
        None => (
            "inconclusive",
            "fingerprints equal but no coinciding overlay found".into(),
        ),
    };
    r.row("verdict", RowKind::Verdict, Value::Text(verdict.into()), None);
    r.row("reason", RowKind::Verdict, Value::Text(reason), None);
    Ok(r)
}
