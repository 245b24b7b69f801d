use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{ExperimentReport, RowKind, Value};
use crate::error::{Error, Result};
use crate::graph::{membership_cts, Graph};
use crate::graphon::mask_to_graph;
use crate::recognizers::{is_incomparability, is_two_clique, Verdict};
use crate::Rational;

/// Largest vertex count a census enumerates (`2^21` labelled graphs).
pub const CENSUS_MAX_VERTICES: usize = 7;

/// Graph classes with an exact membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CensusClass {
    Incomparability,
    TwoClique,
    /// Vertex set splits into `s` cliques and `t - s` independent sets.
    Cts {
        t: usize,
        s: usize,
    },
}

impl CensusClass {
    pub fn contains(&self, g: &Graph) -> bool {
        match *self {
            CensusClass::Incomparability => is_incomparability(g).verdict == Verdict::Member,
            CensusClass::TwoClique => is_two_clique(g).verdict == Verdict::Member,
            CensusClass::Cts { t, s } => matches!(membership_cts(g, t, s), Ok(Some(_))),
        }
    }

    /// Limit of `log2(count) / C(n, 2)`: `1 - 1/t` for a class whose largest
    /// contained `C(t, s)` has `t` parts, and `0` when no such `t >= 1` exists.
    pub fn limiting_exponent(&self) -> Rational {
        let q = |p: usize, d: usize| Rational::new(BigInt::from(p), BigInt::from(d));
        match *self {
            CensusClass::Incomparability => q(1, 2),
            CensusClass::TwoClique => q(0, 1),
            CensusClass::Cts { t: 0, .. } => q(0, 1),
            CensusClass::Cts { t, .. } => q(t - 1, t),
        }
    }
}

impl fmt::Display for CensusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusClass::Incomparability => f.write_str("incomparability"),
            CensusClass::TwoClique => f.write_str("twoclique"),
            CensusClass::Cts { t, s } => write!(f, "C({t},{s})"),
        }
    }
}

impl FromStr for CensusClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let name = s.trim();
        match name.to_ascii_lowercase().as_str() {
            "incomparability" => return Ok(CensusClass::Incomparability),
            "twoclique" | "two-clique" => return Ok(CensusClass::TwoClique),
            "string" | "outer-string" | "outerstring" => {
                return Err(Error::InvalidParameter(format!(
                    "no census for {name} graphs: membership has no exact polynomial test and the \
                     recognizers only return partial evidence, so counts would be unreliable"
                )))
            }
            _ => {}
        }
        let inner = name
            .strip_prefix("C(")
            .or_else(|| name.strip_prefix("c("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| {
                Error::InvalidParameter(format!("class {name:?}: expected incomparability, twoclique or C(t,s)"))
            })?;
        let (t, s) = inner
            .split_once(',')
            .and_then(|(t, s)| Some((t.trim().parse().ok()?, s.trim().parse().ok()?)))
            .ok_or_else(|| Error::InvalidParameter(format!("class {name:?}: expected C(t,s) with integers")))?;
        if s > t {
            return Err(Error::InvalidParameter(format!("C(t,s) needs s <= t, got {name}")));
        }
        Ok(CensusClass::Cts { t, s })
    }
}

/// Number of labelled graphs on `{0, .., n-1}` in the class.
pub(crate) fn count_labeled(class: CensusClass, n: usize) -> u64 {
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u64 << pairs)
        .into_par_iter()
        .filter(|&mask| class.contains(&mask_to_graph(n, mask)))
        .count() as u64
}

/// Labelled counts of the class for `n = 1..=n_max` with the normalized
/// exponent `log2(count) / C(n, 2)` for `n >= 2`.
pub fn run_speed_census(class: CensusClass, n_max: usize) -> Result<ExperimentReport> {
    if n_max > CENSUS_MAX_VERTICES {
        return Err(Error::EnvelopeExceeded {
            op: "run_speed_census",
            detail: format!("n_max = {n_max} > {CENSUS_MAX_VERTICES}"),
        });
    }
    let mut r = ExperimentReport::new("speed");
    r.param("class", class);
    r.param("n_max", n_max);
    for n in 1..=n_max {
        let count = count_labeled(class, n);
        let pairs = n * (n - 1) / 2;
        r.row(format!("count n={n}"), RowKind::Exact, Value::Count(count), None);
        r.row(
            format!("all labeled graphs n={n}"),
            RowKind::Exact,
            Value::Count(1u64 << pairs),
            None,
        );
        if n >= 2 {
            let e = if count == 0 {
                f64::NEG_INFINITY
            } else {
                (count as f64).log2() / pairs as f64
            };
            r.row(format!("exponent n={n}"), RowKind::Exact, Value::Float(e), None);
        }
    }
    r.row(
        "limiting exponent",
        RowKind::Exact,
        Value::Exact(class.limiting_exponent()),
        None,
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_classes() {
        assert_eq!(
            "incomparability".parse::<CensusClass>().unwrap(),
            CensusClass::Incomparability
        );
        assert_eq!(
            "C(3, 1)".parse::<CensusClass>().unwrap(),
            CensusClass::Cts { t: 3, s: 1 }
        );
        assert_eq!(CensusClass::Cts { t: 2, s: 0 }.to_string(), "C(2,0)");
        let err = "string".parse::<CensusClass>().unwrap_err().to_string();
        assert!(err.contains("no census"));
        assert!("C(1,2)".parse::<CensusClass>().is_err());
    }

    #[test]
    fn bipartite_pairs() {
        let r = run_speed_census(CensusClass::Cts { t: 2, s: 0 }, 2).unwrap();
        assert_eq!(r.value_f64("count n=2"), Some(2.0));
        assert_eq!(r.value_f64("exponent n=2"), Some(1.0));
        assert!(run_speed_census(CensusClass::TwoClique, 8).is_err());
    }
}
