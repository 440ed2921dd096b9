//! Named verification suites and their reports.

mod algebraic;
mod analytic;
mod quantum;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cocycle::{parse_rational, DeformMatrix};
use crate::error::{Error, Result};
use crate::hopf::GroupKind;
use crate::spin::SchattenP;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    #[default]
    Cocycle,
    Torus,
    Sphere,
    Hopf,
    Homog,
    Spin,
    Chern,
}

impl SuiteName {
    pub const ALL: [SuiteName; 7] = [
        SuiteName::Cocycle,
        SuiteName::Torus,
        SuiteName::Sphere,
        SuiteName::Hopf,
        SuiteName::Homog,
        SuiteName::Spin,
        SuiteName::Chern,
    ];
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceKind {
    #[default]
    #[serde(rename = "s4")]
    S4,
    #[serde(rename = "s2l")]
    S2l,
    #[serde(rename = "u2-flag")]
    U2Flag,
}

fn from_label<T: for<'de> Deserialize<'de>>(kind: &str, s: &str) -> Result<T> {
    serde_json::from_value(Value::String(s.trim().to_string()))
        .map_err(|_| Error::Config(format!("unknown {kind} {s:?}")))
}

fn to_label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

impl FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        from_label("suite", s)
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_label(self))
    }
}

impl FromStr for SpaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        from_label("space", s)
    }
}

pub fn parse_group(s: &str) -> Result<GroupKind> {
    from_label("group", s)
}

/// θ as written by the user: a scalar `p/q` or a bracketed matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThetaArg {
    Text(String),
    Matrix(DeformMatrix),
}

/// Everything a suite run depends on. Unset fields take per-suite defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    pub theta: Option<ThetaArg>,
    pub l: Option<usize>,
    #[serde(rename = "N")]
    pub n: Option<i64>,
    pub max_degree: Option<u32>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub group: Option<GroupKind>,
    pub space: Option<SpaceKind>,
    pub schatten: Option<Vec<String>>,
    pub offsets: Option<Vec<String>>,
    pub k: Option<u8>,
    pub negative_control: bool,
}

impl SuiteConfig {
    pub fn new(suite: SuiteName) -> Self {
        SuiteConfig {
            suite,
            ..Default::default()
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }
}

/// Resolved parameters, echoed in every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Params {
    pub suite: SuiteName,
    pub l: usize,
    pub theta: DeformMatrix,
    #[serde(rename = "N")]
    pub n: i64,
    pub max_degree: u32,
    pub samples: usize,
    pub seed: u64,
    pub group: GroupKind,
    pub space: SpaceKind,
    pub schatten: Vec<String>,
    pub offsets: Vec<String>,
    pub k: u8,
    pub negative_control: bool,
}

impl Params {
    pub fn resolve(cfg: &SuiteConfig) -> Result<Params> {
        let suite = cfg.suite;
        let text = match &cfg.theta {
            None => "1/3".to_string(),
            Some(ThetaArg::Text(s)) => s.clone(),
            Some(ThetaArg::Matrix(m)) => m.to_string(),
        };
        let matrix = if text.trim_start().starts_with('[') {
            Some(text.parse::<DeformMatrix>()?)
        } else {
            None
        };
        let l = match (cfg.l, &matrix) {
            (Some(l), Some(m)) if m.rank() != l => {
                return Err(Error::Config(format!("theta has rank {} but l = {l}", m.rank())))
            }
            (Some(l), _) => l,
            (None, Some(m)) => m.rank(),
            (None, None) => 2,
        };
        if l == 0 {
            return Err(Error::Config("l must be positive".into()));
        }
        let theta = match matrix {
            Some(m) => m,
            None => {
                let q = parse_rational(&text).map_err(|e| Error::Config(e.to_string()))?;
                if l == 1 {
                    DeformMatrix::zero(1)
                } else {
                    DeformMatrix::uniform(l, q)
                }
            }
        };
        let group = cfg.group.unwrap_or(GroupKind::U2);
        let space = cfg.space.unwrap_or(SpaceKind::S4);
        let samples = cfg.samples.unwrap_or(match suite {
            SuiteName::Cocycle => 1000,
            SuiteName::Torus | SuiteName::Hopf => 500,
            SuiteName::Sphere | SuiteName::Homog => 200,
            SuiteName::Spin => 20,
            SuiteName::Chern => 1,
        });
        let max_degree = cfg.max_degree.unwrap_or(match suite {
            SuiteName::Hopf => 3,
            _ => 2,
        });
        let n = cfg.n.unwrap_or(6);
        let schatten = cfg
            .schatten
            .clone()
            .unwrap_or_else(|| vec!["1".into(), "2".into(), "inf".into()]);
        for p in &schatten {
            SchattenP::parse(p)?;
        }
        let offsets = cfg.offsets.clone().unwrap_or_else(|| vec!["1/2".into(); l]);
        let k = cfg.k.unwrap_or(1);
        let p = Params {
            suite,
            l,
            theta,
            n,
            max_degree,
            samples,
            seed: cfg.seed,
            group,
            space,
            schatten,
            offsets,
            k,
            negative_control: cfg.negative_control,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let need_l = |want: usize, what: &str| {
            if self.l != want {
                Err(Error::Unsupported(format!("{what} needs l = {want}, got {}", self.l)))
            } else {
                Ok(())
            }
        };
        match self.suite {
            SuiteName::Hopf => match self.group {
                GroupKind::U2 => need_l(2, "group u2")?,
                GroupKind::OddOrthogonal if self.max_degree > 2 => {
                    return Err(Error::Unsupported("so5-entries is limited to max-degree 2".into()))
                }
                _ => {}
            },
            SuiteName::Homog => match self.space {
                SpaceKind::S4 | SpaceKind::U2Flag => need_l(2, "this space")?,
                SpaceKind::S2l if self.l > 3 => {
                    return Err(Error::Unsupported("s2l is limited to l ≤ 3".into()))
                }
                _ => {}
            },
            SuiteName::Spin => {
                if !(2..=3).contains(&self.l) {
                    return Err(Error::Unsupported(format!("spin needs l ∈ {{2, 3}}, got {}", self.l)));
                }
                let max_n = if self.l == 2 { 12 } else { 3 };
                if self.n < 2 || self.n > max_n {
                    return Err(Error::Unsupported(format!("cutoff N = {} outside 2..={max_n} for l = {}", self.n, self.l)));
                }
                if self.offsets.len() != self.l {
                    return Err(Error::Config("one offset per torus direction".into()));
                }
                self.offset_values()?;
            }
            SuiteName::Chern => {
                need_l(2, "chern")?;
                if self.k > 1 {
                    return Err(Error::Unsupported(format!("k = {} (only 0 and 1)", self.k)));
                }
            }
            _ => {}
        }
        if self.max_degree > 6 {
            return Err(Error::Unsupported(format!("max-degree {} above 6", self.max_degree)));
        }
        Ok(())
    }

    pub fn schatten_values(&self) -> Vec<SchattenP> {
        self.schatten.iter().map(|s| SchattenP::parse(s).expect("validated")).collect()
    }

    pub fn offset_values(&self) -> Result<Vec<Rational64>> {
        self.offsets.iter().map(|s| parse_rational(s)).collect()
    }

    /// `θ` read back as the planar scalar (`θ_21`).
    pub fn planar_scalar(&self) -> Rational64 {
        self.theta.get(1, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub anchor: String,
    pub samples: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: SuiteName,
    pub config: Params,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    /// Singular-value table for the spin suite.
    #[serde(skip)]
    pub csv: Option<String>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without wall times: identical across reruns of one config.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(Value::Array(checks)) = v.get_mut("checks") {
            for c in checks {
                if let Value::Object(m) = c {
                    m.remove("wall_time_ms");
                }
            }
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {}  l={}  theta={}  seed={}\n",
            self.suite, self.config.l, self.config.theta, self.config.seed
        );
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!(
                "{tag}  {:<width$}  {:>7} samples  {:>9.1} ms  {}\n",
                c.name, c.samples, c.wall_time_ms, c.anchor
            ));
            if let Some(cx) = &c.counterexample {
                out.push_str(&format!("      counterexample: {cx}\n"));
            }
        }
        out.push_str(&format!(
            "{}: {}/{} checks passed\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len() - self.failures(),
            self.checks.len()
        ));
        out
    }
}

/// What one check found.
#[derive(Clone, Debug, Default)]
pub(crate) struct Outcome {
    pub samples: usize,
    pub counterexample: Option<String>,
    pub detail: Option<Value>,
    pub csv: Option<String>,
}

impl Outcome {
    pub fn new(samples: usize, counterexample: Option<String>) -> Self {
        Outcome {
            samples,
            counterexample,
            ..Default::default()
        }
    }

    pub fn with_detail<T: Serialize>(mut self, detail: &T) -> Self {
        self.detail = serde_json::to_value(detail).ok();
        self
    }
}

type Run = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

pub(crate) struct Check {
    name: &'static str,
    anchor: &'static str,
    run: Run,
}

pub(crate) fn check<F>(name: &'static str, anchor: &'static str, run: F) -> Check
where
    F: Fn() -> Result<Outcome> + Send + Sync + 'static,
{
    Check {
        name,
        anchor,
        run: Box::new(run),
    }
}

/// Runs `f` over `items` and stops at the first counterexample.
pub(crate) fn scan<T, I, F>(items: I, mut f: F) -> Result<Outcome>
where
    I: IntoIterator<Item = T>,
    F: FnMut(&T) -> Result<Option<String>>,
{
    let mut n = 0;
    for it in items {
        n += 1;
        if let Some(cx) = f(&it)? {
            return Ok(Outcome::new(n, Some(cx)));
        }
    }
    Ok(Outcome::new(n, None))
}

fn build(p: &Params) -> Result<Vec<Check>> {
    match p.suite {
        SuiteName::Cocycle => algebraic::cocycle(p),
        SuiteName::Torus => algebraic::torus(p),
        SuiteName::Sphere => algebraic::sphere(p),
        SuiteName::Hopf => quantum::hopf(p),
        SuiteName::Homog => quantum::homog(p),
        SuiteName::Spin => analytic::spin(p),
        SuiteName::Chern => analytic::chern(p),
    }
}

/// Runs every check of the configured suite. Checks run concurrently; the
/// report lists them by name. An error inside a check is a failure of that
/// check; configuration problems are returned as `Err`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let params = Params::resolve(cfg)?;
    let checks = build(&params)?;
    let mut results: Vec<(CheckResult, Option<String>)> = checks
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let out = (c.run)();
            let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            let (out, err) = match out {
                Ok(o) => (o, None),
                Err(e) => (Outcome::default(), Some(format!("error: {e}"))),
            };
            let counterexample = err.or(out.counterexample);
            (
                CheckResult {
                    name: c.name.to_string(),
                    anchor: c.anchor.to_string(),
                    samples: out.samples,
                    status: if counterexample.is_some() { Status::Fail } else { Status::Pass },
                    counterexample,
                    detail: out.detail,
                    wall_time_ms,
                },
                out.csv,
            )
        })
        .collect();
    results.sort_by(|a, b| a.0.name.cmp(&b.0.name));
    let csv = results.iter().find_map(|(_, c)| c.clone());
    let checks: Vec<CheckResult> = results.into_iter().map(|(c, _)| c).collect();
    Ok(Report {
        suite: params.suite,
        passed: checks.iter().all(|c| c.status == Status::Pass),
        config: params,
        checks,
        csv,
    })
}
