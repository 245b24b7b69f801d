//! Seeded probes that sample W-random graphs, count small labelled graphs
//! in a class, or compare step graphons, and write the outcome as an
//! [`ExperimentReport`].
//!
//! Trial `t` of a probe with master seed `s` uses `SeedSpec::new(s).for_trial(t)`.
//! Trials run in parallel and are aggregated in trial order, so a report is
//! a function of its parameter record alone.

mod census;
mod probes;

pub use census::{run_speed_census, CensusClass, CENSUS_MAX_VERTICES};
pub use probes::{
    degree_atoms, run_degree_probe, run_density_probe, run_equivalence_probe, run_twoclique_limit_probe,
    twoclique_weights, Ensemble,
};

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use num_traits::ToPrimitive;

use crate::error::{parse_err, Error, Result};
use crate::graphon::{make_constant, make_wka, make_wstar, parse_rational, StepGraphon};
use crate::Rational;

/// What a report row holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowKind {
    /// Measured on sampled data.
    Observed,
    /// Computed exactly from the inputs.
    Exact,
    /// A limiting value that is conjectured, not proved, for the class the
    /// probe stands in for.
    ConjecturedReference,
    /// One of several competing predictions.
    Candidate,
    Verdict,
}

impl RowKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowKind::Observed => "observed",
            RowKind::Exact => "exact",
            RowKind::ConjecturedReference => "conjectured reference",
            RowKind::Candidate => "candidate",
            RowKind::Verdict => "verdict",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Count(u64),
    Exact(Rational),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Float(x) => Some(*x),
            Value::Count(c) => Some(*c as f64),
            Value::Exact(q) => q.to_f64(),
            Value::Text(_) => None,
        }
    }
}

/// `f64` values use Rust's shortest round-trip formatting, which does not
/// depend on the locale.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Float(x) => write!(f, "{x}"),
            Value::Count(c) => write!(f, "{c}"),
            Value::Exact(q) => write!(f, "{q}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub statistic: String,
    pub kind: RowKind,
    pub value: Value,
    pub stderr: Option<f64>,
}

/// Equal-width histogram of values in `[lo, lo + width * masses.len()]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub width: f64,
    pub masses: Vec<f64>,
}

impl Histogram {
    fn from_values(values: impl IntoIterator<Item = f64>, lo: f64, hi: f64, width: f64) -> Self {
        let bins = (((hi - lo) / width).ceil() as usize).max(1);
        let mut counts = vec![0u64; bins];
        let mut total = 0u64;
        for x in values {
            let b = (((x - lo) / width).floor().max(0.0) as usize).min(bins - 1);
            counts[b] += 1;
            total += 1;
        }
        let masses = counts.iter().map(|&c| c as f64 / total.max(1) as f64).collect();
        Histogram { lo, width, masses }
    }

    pub fn to_svg(&self, title: &str) -> String {
        let (w, h, pad) = (640.0, 320.0, 30.0);
        let top = self.masses.iter().cloned().fold(0.0f64, f64::max).max(1e-12);
        let bar = (w - 2.0 * pad) / self.masses.len() as f64;
        let mut s = String::new();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        )
        .unwrap();
        writeln!(s, r#"<text x="{pad}" y="20" font-size="14">{title}</text>"#).unwrap();
        for (i, m) in self.masses.iter().enumerate() {
            let bh = (h - 2.0 * pad - 10.0) * m / top;
            let x = pad + i as f64 * bar;
            let y = h - pad - bh;
            writeln!(
                s,
                r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{bh:.2}" fill="steelblue"><title>{:.4}..{:.4}: {m}</title></rect>"#,
                (bar - 1.0).max(0.5),
                self.lo + i as f64 * self.width,
                self.lo + (i + 1) as f64 * self.width
            )
            .unwrap();
        }
        let hi = self.lo + self.width * self.masses.len() as f64;
        writeln!(
            s,
            r#"<line x1="{pad}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#,
            h - pad,
            w - pad
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{pad}" y="{}" font-size="12">{}</text>"#,
            h - 10.0,
            self.lo
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{hi}</text>"#,
            w - pad,
            h - 10.0
        )
        .unwrap();
        s.push_str("</svg>\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub experiment: String,
    /// Ordered `(name, value)` pairs that determine the result rows.
    pub parameters: Vec<(String, String)>,
    pub rows: Vec<ReportRow>,
    pub histogram: Option<Histogram>,
    /// Seconds since the Unix epoch at which the report was produced.
    pub emitted_at: u64,
}

impl ExperimentReport {
    pub(crate) fn new(experiment: &str) -> Self {
        ExperimentReport {
            experiment: experiment.to_string(),
            parameters: Vec::new(),
            rows: Vec::new(),
            histogram: None,
            emitted_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub(crate) fn param(&mut self, name: &str, value: impl fmt::Display) {
        self.parameters.push((name.to_string(), value.to_string()));
    }

    pub(crate) fn row(&mut self, statistic: impl Into<String>, kind: RowKind, value: Value, stderr: Option<f64>) {
        self.rows.push(ReportRow {
            statistic: statistic.into(),
            kind,
            value,
            stderr,
        });
    }

    /// First row with the given statistic name.
    pub fn get(&self, statistic: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.statistic == statistic)
    }

    pub fn value_f64(&self, statistic: &str) -> Option<f64> {
        self.get(statistic).and_then(|r| r.value.as_f64())
    }

    /// CSV with columns `experiment,statistic,kind,value,stderr`. Parameters
    /// come first as rows of kind `parameter`. The emission time is left out
    /// unless `with_timestamp` is set, so equal parameters give equal bytes.
    pub fn to_csv(&self, with_timestamp: bool) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["experiment", "statistic", "kind", "value", "stderr"])
            .unwrap();
        for (name, value) in &self.parameters {
            w.write_record([self.experiment.as_str(), name, "parameter", value, ""])
                .unwrap();
        }
        for r in &self.rows {
            let stderr = r.stderr.map(|e| e.to_string()).unwrap_or_default();
            w.write_record([
                self.experiment.as_str(),
                &r.statistic,
                r.kind.as_str(),
                &r.value.to_string(),
                &stderr,
            ])
            .unwrap();
        }
        if with_timestamp {
            w.write_record([
                self.experiment.as_str(),
                "emitted at",
                "metadata",
                &self.emitted_at.to_string(),
                "",
            ])
            .unwrap();
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is utf-8")
    }
}

/// A step graphon named in a probe's parameter record.
///
/// Text forms: `wka:K:A`, `wstar:K:S`, `const:C` and `file:PATH`, where
/// `PATH` holds a graphon in the [`StepGraphon::parse_text`] format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphonSpec {
    Wka { k: usize, a: Rational },
    Wstar { k: usize, s: usize },
    Constant(Rational),
    File(String),
}

impl GraphonSpec {
    pub fn build(&self) -> Result<StepGraphon> {
        match self {
            GraphonSpec::Wka { k, a } => make_wka(*k, a),
            GraphonSpec::Wstar { k, s } => make_wstar(*k, *s),
            GraphonSpec::Constant(c) => make_constant(c),
            GraphonSpec::File(path) => StepGraphon::parse_text(&std::fs::read_to_string(path)?),
        }
    }

    /// The uniform random graph class whose conjectured limit this graphon
    /// is, if any.
    pub(crate) fn conjectured_class(&self) -> Option<&'static str> {
        let half = Rational::new(1.into(), 2.into());
        match self {
            GraphonSpec::Wka { k: 4, a } if *a == half => Some("uniform string graphs"),
            GraphonSpec::Wka { k: 3, a } if *a == half => Some("uniform outer-string graphs"),
            _ => None,
        }
    }
}

impl fmt::Display for GraphonSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphonSpec::Wka { k, a } => write!(f, "wka:{k}:{a}"),
            GraphonSpec::Wstar { k, s } => write!(f, "wstar:{k}:{s}"),
            GraphonSpec::Constant(c) => write!(f, "const:{c}"),
            GraphonSpec::File(p) => write!(f, "file:{p}"),
        }
    }
}

impl FromStr for GraphonSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidParameter(format!(
                "graphon spec {s:?}: expected wka:K:A, wstar:K:S, const:C or file:PATH"
            ))
        };
        let (head, rest) = s.split_once(':').ok_or_else(bad)?;
        let int = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let rat = |t: &str| parse_rational(t.trim()).ok_or_else(bad);
        match head.trim() {
            "wka" => {
                let (k, a) = rest.split_once(':').ok_or_else(bad)?;
                Ok(GraphonSpec::Wka { k: int(k)?, a: rat(a)? })
            }
            "wstar" => {
                let (k, s) = rest.split_once(':').ok_or_else(bad)?;
                Ok(GraphonSpec::Wstar { k: int(k)?, s: int(s)? })
            }
            "const" => Ok(GraphonSpec::Constant(rat(rest)?)),
            "file" if !rest.is_empty() => Ok(GraphonSpec::File(rest.to_string())),
            _ => Err(bad()),
        }
    }
}

/// Parses `key = value` lines. Blank lines and text after `#` are ignored;
/// a repeated key keeps its last value.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| parse_err(i + 1, format!("expected key=value, got {line:?}")))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(parse_err(i + 1, "empty key"));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

pub(crate) fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for s in ["wka:4:1/2", "wstar:3:1", "const:1", "file:x.txt"] {
            let spec: GraphonSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("wka:4".parse::<GraphonSpec>().is_err());
        assert!("poly:3".parse::<GraphonSpec>().is_err());
        assert!("const:2/0".parse::<GraphonSpec>().is_err());
    }

    #[test]
    fn config_lines() {
        let c = parse_config("# probe\nn = 50\ntrials=3 # few\n\nseed=7\nn=60\n").unwrap();
        assert_eq!(c["n"], "60");
        assert_eq!(c["trials"], "3");
        assert_eq!(c.len(), 3);
        assert!(parse_config("n 50").is_err());
    }

    #[test]
    fn csv_layout() {
        let mut r = ExperimentReport::new("demo");
        r.param("n", 5);
        r.row("mean, edge density", RowKind::Observed, Value::Float(0.5), Some(0.01));
        r.row(
            "limit",
            RowKind::Exact,
            Value::Exact(Rational::new(19.into(), 32.into())),
            None,
        );
        let csv = r.to_csv(false);
        assert_eq!(
            csv,
            "experiment,statistic,kind,value,stderr\ndemo,n,parameter,5,\n\
             demo,\"mean, edge density\",observed,0.5,0.01\ndemo,limit,exact,19/32,\n"
        );
        assert!(r
            .to_csv(true)
            .lines()
            .last()
            .unwrap()
            .starts_with("demo,emitted at,metadata,"));
    }

    #[test]
    fn histogram_bins() {
        let h = Histogram::from_values([0.0, 0.1, 0.49, 0.5, 1.0], 0.0, 1.0, 0.25);
        assert_eq!(h.masses, vec![0.4, 0.2, 0.2, 0.2]);
        assert!(h.to_svg("t").contains("<rect"));
    }

    #[test]
    fn mean_and_stderr() {
        let (m, e) = mean_stderr(&[1.0, 2.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((e - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_stderr(&[4.0]), (4.0, 0.0));
    }
}
