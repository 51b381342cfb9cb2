//! Bundled property suites over seeded random instances.
//!
//! Every suite draws its instances from a ChaCha stream keyed by the suite
//! seed and the record index, runs the trials in parallel and reports them
//! in index order, so a report is a pure function of its [`SuiteSpec`].

mod gen;
mod suites;

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::Value;

use crate::class::ClassId;
use crate::error::{Error, Result};
use crate::json;
use crate::optimize::{brute_force_sup, brute_force_sup_norm, NormCert, OptConfig};
use crate::seq::VecSeq;
use crate::seqnorm::class_norm;
use crate::space::Space;

pub use gen::{Family, Gen};

/// Largest space dimension and sequence length the suites accept.
pub const MAX_SUITE_DIM: usize = 3;
pub const MAX_SUITE_LENGTH: usize = 4;
/// Grid resolution of the inline brute-force cross-checks.
pub const ORACLE_RESOLUTION: usize = 360;

/// Parameters of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteSpec {
    pub name: String,
    /// Instances per class.
    pub trials: usize,
    pub dims: Vec<usize>,
    pub lengths: Vec<usize>,
    pub classes: Vec<ClassId>,
    /// Tolerance per method kind: `"exact"` and `"ascent"`.
    pub tolerances: BTreeMap<String, f64>,
    pub seed: u64,
    pub config: OptConfig,
}

impl SuiteSpec {
    /// The registered defaults of a suite.
    pub fn new(name: &str) -> Result<Self> {
        let def = find(name)?;
        Ok(SuiteSpec {
            name: def.name.to_string(),
            trials: def.trials,
            dims: def.dims.to_vec(),
            lengths: def.lengths.to_vec(),
            classes: (def.classes)(),
            tolerances: [("ascent".to_string(), 1e-3), ("exact".to_string(), 1e-9)]
                .into_iter()
                .collect(),
            seed: 0,
            config: OptConfig::default(),
        })
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        find(&self.name)?;
        self.config.validate()?;
        if self.dims.is_empty() || self.dims.iter().any(|d| *d == 0 || *d > MAX_SUITE_DIM) {
            return Err(Error::Config(format!(
                "suite dimensions must lie in 1..={MAX_SUITE_DIM}"
            )));
        }
        if self.lengths.is_empty()
            || self
                .lengths
                .iter()
                .any(|k| *k == 0 || *k > MAX_SUITE_LENGTH)
        {
            return Err(Error::Config(format!(
                "suite lengths must lie in 1..={MAX_SUITE_LENGTH}"
            )));
        }
        if self.classes.is_empty() {
            return Err(Error::Config("a suite needs at least one class".into()));
        }
        for c in &self.classes {
            c.validate()?;
        }
        for key in ["exact", "ascent"] {
            match self.tolerances.get(key) {
                Some(t) if *t >= 0.0 && t.is_finite() => {}
                _ => {
                    return Err(Error::Config(format!(
                        "missing or invalid `{key}` tolerance"
                    )))
                }
            }
        }
        Ok(())
    }

    fn tol(&self, key: &str) -> f64 {
        self.tolerances[key]
    }
}

/// One inequality `lhs ≤ rhs` with a normalized margin.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    /// Margin `(rhs − lhs) / max(1, |lhs|, |rhs|)`.
    pub fn le(label: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Check::scaled(label, lhs, rhs, tol, 1.0)
    }

    /// Margin `(rhs − lhs) / max(|lhs|, |rhs|)`, zero when both vanish.
    pub fn le_relative(label: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Check::scaled(label, lhs, rhs, tol, f64::MIN_POSITIVE)
    }

    fn scaled(label: &str, lhs: f64, rhs: f64, tol: f64, floor: f64) -> Self {
        let diff = rhs - lhs;
        let margin = if diff == 0.0 {
            0.0
        } else {
            diff / floor.max(lhs.abs()).max(rhs.abs())
        };
        Check {
            label: label.to_string(),
            lhs,
            rhs,
            margin,
            tol,
            pass: margin >= -tol && !margin.is_nan(),
        }
    }

    fn to_json(&self) -> Value {
        json::object([
            ("label", Value::String(self.label.clone())),
            ("lhs", json::num(self.lhs)),
            ("rhs", json::num(self.rhs)),
            ("margin", json::num(self.margin)),
            ("tol", json::num(self.tol)),
            ("pass", Value::Bool(self.pass)),
        ])
    }
}

/// Everything recorded for one instance.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub index: usize,
    pub class: String,
    pub instance: String,
    pub inputs: Vec<(String, Value)>,
    pub quantities: Vec<(String, f64)>,
    pub methods: Vec<(String, String)>,
    pub checks: Vec<Check>,
    /// Optimizer witnesses, printed only for failing records.
    pub witnesses: Vec<(String, Value)>,
    pub error: Option<String>,
}

impl TrialRecord {
    fn new(index: usize, class: &ClassId) -> Self {
        TrialRecord {
            index,
            class: class.to_string(),
            instance: String::new(),
            inputs: Vec::new(),
            quantities: Vec::new(),
            methods: Vec::new(),
            checks: Vec::new(),
            witnesses: Vec::new(),
            error: None,
        }
    }

    pub fn pass(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }

    /// Smallest margin over the checks, `0` when there are none.
    pub fn margin(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.margin)
            .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.min(v))))
            .unwrap_or(0.0)
    }

    pub fn to_json(&self) -> Value {
        let pass = self.pass();
        let mut entries = vec![
            ("index", Value::from(self.index)),
            ("class", Value::String(self.class.clone())),
            ("instance", Value::String(self.instance.clone())),
            ("inputs", json::object(self.inputs.clone())),
            (
                "quantities",
                json::object(
                    self.quantities
                        .iter()
                        .map(|(k, v)| (k.clone(), json::num(*v))),
                ),
            ),
            (
                "methods",
                json::object(
                    self.methods
                        .iter()
                        .map(|(k, v)| (k.clone(), Value::String(v.clone()))),
                ),
            ),
            (
                "checks",
                Value::Array(self.checks.iter().map(Check::to_json).collect()),
            ),
            ("margin", json::num(self.margin())),
            ("pass", Value::Bool(pass)),
        ];
        if let Some(e) = &self.error {
            entries.push(("error", Value::String(e.clone())));
        }
        if !pass && !self.witnesses.is_empty() {
            entries.push(("witnesses", json::object(self.witnesses.clone())));
        }
        json::object(entries)
    }
}

/// Ordered trial records of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub spec: SuiteSpec,
    pub result: &'static str,
    pub records: Vec<TrialRecord>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.records.iter().all(TrialRecord::pass)
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.pass()).count()
    }

    pub fn min_margin(&self) -> f64 {
        self.records
            .iter()
            .flat_map(|r| r.checks.iter().map(|c| c.margin))
            .fold(f64::INFINITY, f64::min)
    }

    /// All checks whose label starts with `prefix`.
    pub fn checks_labelled<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.records
            .iter()
            .flat_map(|r| r.checks.iter())
            .filter(move |c| c.label.starts_with(prefix))
    }

    pub fn to_json(&self) -> Value {
        let s = &self.spec;
        let cfg = &s.config;
        json::object([
            ("suite", Value::String(s.name.clone())),
            ("result", Value::String(self.result.to_string())),
            ("seed", Value::from(s.seed)),
            ("trials", Value::from(s.trials)),
            ("dims", Value::from(s.dims.clone())),
            ("lengths", Value::from(s.lengths.clone())),
            (
                "classes",
                Value::Array(
                    s.classes
                        .iter()
                        .map(|c| Value::String(c.to_string()))
                        .collect(),
                ),
            ),
            (
                "tolerances",
                json::object(s.tolerances.iter().map(|(k, v)| (k.clone(), json::num(*v)))),
            ),
            ("config", json::config(cfg)),
            ("pass", Value::Bool(self.pass())),
            ("records_total", Value::from(self.records.len())),
            ("failures", Value::from(self.failures())),
            (
                "min_margin",
                json::num(if self.records.is_empty() {
                    0.0
                } else {
                    self.min_margin()
                }),
            ),
            (
                "records",
                Value::Array(self.records.iter().map(TrialRecord::to_json).collect()),
            ),
        ])
    }

    pub fn to_json_string(&self) -> String {
        json::render(&self.to_json())
    }
}

/// Per-record context handed to a suite body.
pub struct Trial<'a> {
    pub spec: &'a SuiteSpec,
    pub index: usize,
    /// Position of this record within its class block.
    pub instance: usize,
    pub class: ClassId,
    pub gen: Gen,
    pub record: TrialRecord,
}

impl Trial<'_> {
    pub fn cfg(&self) -> &OptConfig {
        &self.spec.config
    }

    pub fn dim(&mut self) -> usize {
        let dims = self.spec.dims.clone();
        self.gen.choose(&dims)
    }

    pub fn length(&mut self) -> usize {
        let lengths = self.spec.lengths.clone();
        self.gen.choose(&lengths)
    }

    pub fn exact_tol(&self) -> f64 {
        self.spec.tol("exact")
    }

    pub fn ascent_tol(&self) -> f64 {
        self.spec.tol("ascent")
    }

    /// Exact tolerance when every certificate is exact, else the ascent one.
    pub fn tol_for(&self, certs: &[&NormCert]) -> f64 {
        if certs.iter().all(|c| c.is_exact()) {
            self.exact_tol()
        } else {
            self.ascent_tol()
        }
    }

    pub fn describe(&mut self, text: impl Into<String>) {
        self.record.instance = text.into();
    }

    pub fn input(&mut self, key: &str, value: Value) {
        self.record.inputs.push((key.to_string(), value));
    }

    pub fn qty(&mut self, key: &str, value: f64) {
        self.record.quantities.push((key.to_string(), value));
    }

    /// Records a certificate's value, method and witness.
    pub fn cert(&mut self, key: &str, c: &NormCert) {
        self.qty(key, c.value);
        if let Some(u) = c.upper {
            self.qty(&format!("{key}.upper"), u);
        }
        self.record
            .methods
            .push((key.to_string(), c.method.as_str().to_string()));
        self.record
            .witnesses
            .push((key.to_string(), json::witness(&c.witness)));
    }

    pub fn check(&mut self, c: Check) {
        self.record.checks.push(c);
    }

    pub fn le(&mut self, label: &str, lhs: f64, rhs: f64, tol: f64) {
        self.check(Check::le(label, lhs, rhs, tol));
    }

    /// Both one-sided checks of `a = b`.
    pub fn eq(&mut self, label: &str, a: f64, b: f64, tol: f64) {
        self.check(Check::le(&format!("{label} (<=)"), a, b, tol));
        self.check(Check::le(&format!("{label} (>=)"), b, a, tol));
    }

    pub fn eq_relative(&mut self, label: &str, a: f64, b: f64, tol: f64) {
        self.check(Check::le_relative(&format!("{label} (<=)"), a, b, tol));
        self.check(Check::le_relative(&format!("{label} (>=)"), b, a, tol));
    }

    /// Grid cross-check of an optimizer value over the unit ball of a space.
    pub fn oracle_space(
        &mut self,
        key: &str,
        cert: &NormCert,
        objective: &(dyn Fn(&[f64]) -> f64 + Sync),
        ball: &Space,
    ) -> Result<()> {
        if !needs_oracle(cert) || ball.dim() > MAX_SUITE_DIM {
            return Ok(());
        }
        let bf = brute_force_sup(objective, ball, ORACLE_RESOLUTION)?;
        self.oracle_checks(key, cert.value, bf.value, bf.band);
        Ok(())
    }

    /// Grid cross-check of an optimizer value over the unit ball of a
    /// sequence class, for balls of total dimension at most 3 and length at
    /// most 2 whose norm is evaluated exactly.
    #[allow(clippy::too_many_arguments)]
    pub fn oracle_seq(
        &mut self,
        key: &str,
        value: f64,
        ascent: bool,
        objective: &(dyn Fn(&VecSeq) -> f64 + Sync),
        ball_class: &ClassId,
        ball_space: &Arc<Space>,
        k: usize,
    ) -> Result<()> {
        let dim = k * ball_space.dim();
        if !ascent || dim > MAX_SUITE_DIM || k > 2 {
            return Ok(());
        }
        let cfg = self.cfg().with_method(crate::optimize::Method::Auto);
        let probe = VecSeq::from_flat(ball_space.clone(), vec![1.0; dim])?;
        if !class_norm(ball_class, &probe, &cfg)?.is_exact() {
            self.qty(&format!("{key}.oracle_skipped"), 1.0);
            return Ok(());
        }
        let to_seq = |v: &[f64]| {
            VecSeq::from_flat(ball_space.clone(), v.to_vec()).expect("grid point has ball shape")
        };
        let obj = |v: &[f64]| objective(&to_seq(v));
        let norm = |v: &[f64]| {
            class_norm(ball_class, &to_seq(v), &cfg)
                .map(|c| c.value)
                .unwrap_or(f64::NAN)
        };
        let bf = brute_force_sup_norm(&obj, &norm, dim, ORACLE_RESOLUTION)?;
        self.oracle_checks(key, value, bf.value, bf.band);
        Ok(())
    }

    fn oracle_checks(&mut self, key: &str, value: f64, grid: f64, band: f64) {
        self.qty(&format!("{key}.grid"), grid);
        self.qty(&format!("{key}.band"), band);
        let tol = self.ascent_tol();
        self.le(
            &format!("oracle: {key} <= grid * (1 + band)"),
            value,
            grid * (1.0 + band),
            self.exact_tol(),
        );
        self.le(&format!("oracle: grid <= {key}"), grid, value, tol);
    }
}

/// Certificates produced by an optimizer rather than a formula.
pub fn needs_oracle(cert: &NormCert) -> bool {
    matches!(
        cert.method,
        crate::optimize::MethodTag::Ascent | crate::optimize::MethodTag::CuttingPlane
    )
}

type Body = fn(&mut Trial) -> Result<()>;

/// A registered suite.
pub struct SuiteDef {
    pub name: &'static str,
    /// The mathematical statement the suite exercises.
    pub result: &'static str,
    /// Engine operations the suite calls.
    pub operations: &'static [&'static str],
    pub trials: usize,
    pub dims: &'static [usize],
    pub lengths: &'static [usize],
    pub classes: fn() -> Vec<ClassId>,
    body: Body,
}

pub fn registry() -> &'static [SuiteDef] {
    suites::REGISTRY
}

pub fn suite_names() -> Vec<&'static str> {
    registry().iter().map(|d| d.name).collect()
}

fn find(name: &str) -> Result<&'static SuiteDef> {
    registry()
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

/// Runs every record of a suite in parallel and collects them in order.
pub fn run_suite(spec: &SuiteSpec) -> Result<SuiteReport> {
    spec.validate()?;
    let def = find(&spec.name)?;
    let total = spec.trials * spec.classes.len();
    let records = (0..total)
        .into_par_iter()
        .map(|i| {
            let class = spec.classes[i / spec.trials.max(1)].clone();
            let mut trial = Trial {
                spec,
                index: i,
                instance: i % spec.trials.max(1),
                class: class.clone(),
                gen: Gen::new(spec.seed, i as u64),
                record: TrialRecord::new(i, &class),
            };
            if let Err(e) = (def.body)(&mut trial) {
                trial.record.error = Some(e.to_string());
            }
            trial.record
        })
        .collect();
    Ok(SuiteReport {
        spec: spec.clone(),
        result: def.result,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suites_are_rejected() {
        assert!(matches!(
            SuiteSpec::new("no-such-suite"),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn spec_bounds_are_enforced() {
        let mut s = SuiteSpec::new("axioms").unwrap();
        s.dims = vec![4];
        assert!(s.validate().is_err());
        let mut s = SuiteSpec::new("axioms").unwrap();
        s.lengths = vec![5];
        assert!(s.validate().is_err());
        let mut s = SuiteSpec::new("axioms").unwrap();
        s.tolerances.remove("exact");
        assert!(s.validate().is_err());
    }

    #[test]
    fn relative_margins() {
        let c = Check::le_relative("x", 1.001e-6, 1e-6, 1e-3);
        assert!(c.pass);
        assert!((c.margin + 1e-3 / 1.001).abs() < 1e-12);
        let c = Check::le_relative("x", 1.1e-6, 1e-6, 1e-3);
        assert!(!c.pass);
        assert_eq!(Check::le_relative("x", 0.0, 0.0, 0.0).margin, 0.0);
        assert!(Check::le("x", 0.0, 0.0, 0.0).pass);
    }
}
