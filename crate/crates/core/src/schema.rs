//! Declarative input: spaces, sequences, operators and batch manifests.
//!
//! ```json
//! {
//!   "version": 1,
//!   "spaces": { "E": { "dim": 2, "norm": { "p": 2 } } },
//!   "sequences": { "x": { "space": "E", "vectors": [[3, 4], [0, 0]] } },
//!   "operators": { "T": { "domain": "E", "codomain": "E", "matrix": [[1, 0], [0, 1]] } },
//!   "tasks": [
//!     { "kind": "norm", "class": "lp:2", "sequence": "x" },
//!     { "kind": "opnorm", "x": "lpw:2", "y": "lp:2", "operator": "T", "k": 2 }
//!   ]
//! }
//! ```
//!
//! A space norm is `{"p": q}`, `{"p": q, "weights": [...]}`,
//! `{"p": q, "scales": [...]}` or `{"polytope": [[...], ...]}`; `q` is a number or a string such as `"inf"`
//! or `"4/3"`. Wherever a space, sequence or operator is expected, either a
//! name from the manifest or an inline object is accepted.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::Value;

use crate::class::ClassId;
use crate::error::{Error, Result};
use crate::index::Index;
use crate::json;
use crate::opideal::LinOp;
use crate::seq::VecSeq;
use crate::space::{NormSpec, Space};

pub const SCHEMA_VERSION: u64 = 1;

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::Schema(format!(
            "line {}, column {}: {}",
            e.line(),
            e.column(),
            strip_position(&e.to_string())
        ))
    })
}

fn strip_position(msg: &str) -> &str {
    msg.split(" at line ").next().unwrap_or(msg)
}

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Schema(format!("{path}: {msg}"))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| err(path, format!("missing field `{key}`")))
}

fn real(v: &Value, path: &str) -> Result<f64> {
    json::as_f64(v)
        .filter(|x| x.is_finite())
        .ok_or_else(|| err(path, "expected a finite number"))
}

fn reals(v: &Value, path: &str) -> Result<Vec<f64>> {
    v.as_array()
        .ok_or_else(|| err(path, "expected an array of numbers"))?
        .iter()
        .enumerate()
        .map(|(i, x)| real(x, &format!("{path}[{i}]")))
        .collect()
}

fn rows(v: &Value, path: &str) -> Result<Vec<Vec<f64>>> {
    v.as_array()
        .ok_or_else(|| err(path, "expected an array of rows"))?
        .iter()
        .enumerate()
        .map(|(i, r)| reals(r, &format!("{path}[{i}]")))
        .collect()
}

fn index(v: &Value, path: &str) -> Result<Index> {
    let parsed = match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n.to_string().parse(),
        _ => return Err(err(path, "expected an index")),
    };
    parsed.map_err(|e| err(path, e))
}

pub fn space_from_value(v: &Value, path: &str) -> Result<Space> {
    let norm = field(v, "norm", path)?;
    let npath = format!("{path}.norm");
    let space = if let Some(verts) = norm.get("polytope") {
        Space::polytope(rows(verts, &format!("{npath}.polytope"))?)
    } else {
        let q = index(field(norm, "p", &npath)?, &format!("{npath}.p"))?;
        match (norm.get("scales"), norm.get("weights")) {
            (Some(_), Some(_)) => {
                return Err(err(&npath, "give either scales or weights, not both"))
            }
            (Some(s), None) => Space::scaled(q, reals(s, &format!("{npath}.scales"))?),
            (None, Some(w)) => Space::weighted(q, &reals(w, &format!("{npath}.weights"))?),
            (None, None) => {
                let dim = field(v, "dim", path)?
                    .as_u64()
                    .ok_or_else(|| err(&format!("{path}.dim"), "expected a positive integer"))?;
                Space::p(dim as usize, q)
            }
        }
    }
    .map_err(|e| err(path, e))?;
    if let Some(d) = v.get("dim") {
        if d.as_u64() != Some(space.dim() as u64) {
            return Err(err(
                &format!("{path}.dim"),
                format!(
                    "does not match the norm, which has dimension {}",
                    space.dim()
                ),
            ));
        }
    }
    Ok(space)
}

pub fn space_to_value(space: &Space) -> Value {
    let norm = match space.spec() {
        NormSpec::P(q) => json::object([("p", json::index(*q))]),
        NormSpec::ScaledP { q, scales, .. } => {
            json::object([("p", json::index(*q)), ("scales", json::nums(scales))])
        }
        NormSpec::Polytope(p) => json::object([("polytope", json::matrix(p.vertices()))]),
    };
    json::object([("dim", Value::from(space.dim())), ("norm", norm)])
}

pub fn seq_to_value(x: &VecSeq) -> Value {
    json::object([
        ("space", space_to_value(x.space())),
        ("vectors", json::matrix(&x.vectors())),
    ])
}

pub fn op_to_value(t: &LinOp) -> Value {
    json::object([
        ("domain", space_to_value(t.domain())),
        ("codomain", space_to_value(t.codomain())),
        ("matrix", json::matrix(&t.rows())),
    ])
}

/// What a task asks for.
#[derive(Debug, Clone)]
pub enum TaskKind {
    Norm {
        class: ClassId,
        sequence: VecSeq,
    },
    OpNorm {
        x: ClassId,
        y: ClassId,
        operator: LinOp,
        k: usize,
    },
    AdjointReport {
        x: ClassId,
        y: ClassId,
        operator: LinOp,
        k: usize,
    },
}

#[derive(Debug, Clone)]
pub struct Task {
    pub name: String,
    pub kind: TaskKind,
}

/// A parsed batch job with every reference resolved.
#[derive(Debug, Clone)]
pub struct Manifest {
    pub version: u64,
    pub spaces: BTreeMap<String, Arc<Space>>,
    pub sequences: BTreeMap<String, VecSeq>,
    pub operators: BTreeMap<String, LinOp>,
    pub tasks: Vec<Task>,
}

impl Default for Manifest {
    fn default() -> Self {
        Manifest {
            version: SCHEMA_VERSION,
            spaces: BTreeMap::new(),
            sequences: BTreeMap::new(),
            operators: BTreeMap::new(),
            tasks: Vec::new(),
        }
    }
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        let v = parse_json(text)?;
        Manifest::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        if !v.is_object() {
            return Err(err("$", "a manifest is a JSON object"));
        }
        let version = field(v, "version", "$")?
            .as_u64()
            .ok_or_else(|| err("$.version", "expected an integer"))?;
        if version != SCHEMA_VERSION {
            return Err(err(
                "$.version",
                format!("unsupported version {version}, expected {SCHEMA_VERSION}"),
            ));
        }
        let mut m = Manifest {
            version,
            ..Manifest::default()
        };
        for (name, s) in entries(v, "spaces")? {
            let space = space_from_value(s, &format!("$.spaces.{name}"))?;
            m.spaces.insert(name.clone(), Arc::new(space));
        }
        for (name, s) in entries(v, "sequences")? {
            let seq = m.sequence(s, &format!("$.sequences.{name}"))?;
            m.sequences.insert(name.clone(), seq);
        }
        for (name, o) in entries(v, "operators")? {
            let op = m.operator(o, &format!("$.operators.{name}"))?;
            m.operators.insert(name.clone(), op);
        }
        if let Some(tasks) = v.get("tasks") {
            let tasks = tasks
                .as_array()
                .ok_or_else(|| err("$.tasks", "expected an array"))?;
            for (i, t) in tasks.iter().enumerate() {
                let task = m.task(t, &format!("$.tasks[{i}]"))?;
                m.tasks.push(task);
            }
        }
        Ok(m)
    }

    /// Resolves a space reference (name or inline object).
    pub fn space(&self, v: &Value, path: &str) -> Result<Arc<Space>> {
        match v {
            Value::String(name) => self
                .spaces
                .get(name)
                .cloned()
                .ok_or_else(|| err(path, format!("unknown space `{name}`"))),
            _ => space_from_value(v, path).map(Arc::new),
        }
    }

    /// Resolves a sequence reference (name or inline object).
    pub fn sequence(&self, v: &Value, path: &str) -> Result<VecSeq> {
        if let Value::String(name) = v {
            return self
                .sequences
                .get(name)
                .cloned()
                .ok_or_else(|| err(path, format!("unknown sequence `{name}`")));
        }
        let space = self.space(field(v, "space", path)?, &format!("{path}.space"))?;
        let vectors = rows(field(v, "vectors", path)?, &format!("{path}.vectors"))?;
        VecSeq::new(space, vectors).map_err(|e| err(path, e))
    }

    /// Resolves an operator reference (name or inline object).
    pub fn operator(&self, v: &Value, path: &str) -> Result<LinOp> {
        if let Value::String(name) = v {
            return self
                .operators
                .get(name)
                .cloned()
                .ok_or_else(|| err(path, format!("unknown operator `{name}`")));
        }
        let domain = self.space(field(v, "domain", path)?, &format!("{path}.domain"))?;
        let codomain = self.space(field(v, "codomain", path)?, &format!("{path}.codomain"))?;
        let matrix = rows(field(v, "matrix", path)?, &format!("{path}.matrix"))?;
        LinOp::new(domain, codomain, matrix).map_err(|e| err(path, e))
    }

    fn task(&self, v: &Value, path: &str) -> Result<Task> {
        let kind = field(v, "kind", path)?
            .as_str()
            .ok_or_else(|| err(&format!("{path}.kind"), "expected a string"))?;
        let name = v
            .get("name")
            .and_then(Value::as_str)
            .map(str::to_string)
            .unwrap_or_else(|| path.trim_start_matches("$.").to_string());
        let class = |key: &str| -> Result<ClassId> {
            let p = format!("{path}.{key}");
            field(v, key, path)?
                .as_str()
                .ok_or_else(|| err(&p, "expected a class descriptor"))?
                .parse()
                .map_err(|e| err(&p, e))
        };
        let k = || -> Result<usize> {
            match v.get("k") {
                None => Ok(1),
                Some(k) => k
                    .as_u64()
                    .filter(|k| *k >= 1)
                    .map(|k| k as usize)
                    .ok_or_else(|| err(&format!("{path}.k"), "expected a positive integer")),
            }
        };
        let kind = match kind {
            "norm" => TaskKind::Norm {
                class: class("class")?,
                sequence: self
                    .sequence(field(v, "sequence", path)?, &format!("{path}.sequence"))?,
            },
            "dualnorm" => TaskKind::Norm {
                class: ClassId::dual(class("class")?).map_err(|e| err(path, e))?,
                sequence: self
                    .sequence(field(v, "sequence", path)?, &format!("{path}.sequence"))?,
            },
            "opnorm" | "adjoint-report" => {
                let x = class("x")?;
                let y = class("y")?;
                let operator =
                    self.operator(field(v, "operator", path)?, &format!("{path}.operator"))?;
                let k = k()?;
                if kind == "opnorm" {
                    TaskKind::OpNorm { x, y, operator, k }
                } else {
                    TaskKind::AdjointReport { x, y, operator, k }
                }
            }
            other => {
                return Err(err(
                    &format!("{path}.kind"),
                    format!("unknown task kind `{other}`"),
                ))
            }
        };
        Ok(Task { name, kind })
    }
}

fn entries<'a>(v: &'a Value, key: &str) -> Result<Vec<(&'a String, &'a Value)>> {
    match v.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Object(map)) => Ok(map.iter().collect()),
        Some(_) => Err(err(
            &format!("$.{key}"),
            "expected an object of named entries",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
  "version": 1,
  "spaces": {
    "E": { "dim": 2, "norm": { "p": 2 } },
    "W": { "dim": 2, "norm": { "p": "4/3", "scales": [1, 2] } },
    "P": { "dim": 2, "norm": { "polytope": [[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]] } }
  },
  "sequences": {
    "x": { "space": "E", "vectors": [[3, 4], [0, 0]] },
    "y": { "space": { "dim": 3, "norm": { "p": "inf" } }, "vectors": [[1, 2, 3]] }
  },
  "operators": {
    "I": { "domain": "E", "codomain": "E", "matrix": [[1, 0], [0, 1]] }
  },
  "tasks": [
    { "kind": "norm", "class": "lp:2", "sequence": "x" },
    { "kind": "dualnorm", "class": "linf", "sequence": "y" },
    { "kind": "opnorm", "x": "lpw:2", "y": "lp:2", "operator": "I", "k": 2 }
  ]
}"#;

    #[test]
    fn sample_manifest_resolves() {
        let m = Manifest::parse(SAMPLE).unwrap();
        assert_eq!(m.spaces.len(), 3);
        assert_eq!(m.sequences["x"].len(), 2);
        assert_eq!(m.sequences["y"].dim(), 3);
        assert_eq!(m.tasks.len(), 3);
        match &m.tasks[1].kind {
            TaskKind::Norm { class, .. } => assert_eq!(class.to_string(), "dual(linf)"),
            other => panic!("{other:?}"),
        }
        assert!((m.spaces["W"].norm_of(&[1.0, 0.0]) - 1.0).abs() < 1e-15);
        assert!((m.spaces["P"].norm_of(&[1.0, 1.0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = Manifest::parse("{\n  \"version\": 1,\n  \"spaces\": [\n}").unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("line 4, column 1"), "{msg}");
    }

    #[test]
    fn unresolved_references_are_named() {
        let text = r#"{"version": 1, "sequences": {"x": {"space": "F", "vectors": [[1]]}}}"#;
        let msg = Manifest::parse(text).unwrap_err().to_string();
        assert!(
            msg.contains("$.sequences.x.space") && msg.contains("unknown space `F`"),
            "{msg}"
        );
    }

    #[test]
    fn version_is_required() {
        assert!(Manifest::parse("{}")
            .unwrap_err()
            .to_string()
            .contains("version"));
        assert!(Manifest::parse(r#"{"version": 9}"#).is_err());
    }

    #[test]
    fn dimension_mismatches_are_rejected() {
        let text = r#"{"version": 1, "sequences": {"x": {"space": {"dim": 2, "norm": {"p": 1}}, "vectors": [[1, 2, 3]]}}}"#;
        assert!(Manifest::parse(text).is_err());
        let text =
            r#"{"version": 1, "spaces": {"E": {"dim": 3, "norm": {"p": 1, "scales": [1, 1]}}}}"#;
        assert!(Manifest::parse(text).is_err());
    }

    #[test]
    fn weights_and_scales_describe_the_same_space() {
        let parse = |norm: &str| {
            let text = format!(r#"{{"version": 1, "spaces": {{"E": {{"norm": {norm}}}}}}}"#);
            Manifest::parse(&text).map(|m| m.spaces["E"].clone())
        };
        let w = parse(r#"{"p": 2, "weights": [4, 9]}"#).unwrap();
        let s = parse(r#"{"p": 2, "scales": [2, 3]}"#).unwrap();
        assert!((w.norm(&[1.0, 1.0]).unwrap() - 13f64.sqrt()).abs() < 1e-15);
        assert_eq!(w.norm(&[1.0, 1.0]).unwrap(), s.norm(&[1.0, 1.0]).unwrap());
        assert!(parse(r#"{"p": 2, "weights": [1], "scales": [1]}"#).is_err());
        assert!(parse(r#"{"p": 2, "weights": [0, 1]}"#).is_err());
    }

    #[test]
    fn spaces_round_trip() {
        let m = Manifest::parse(SAMPLE).unwrap();
        for space in m.spaces.values() {
            for s in [space.as_ref().clone(), space.dual()] {
                let back = space_from_value(&space_to_value(&s), "$").unwrap();
                for v in [[1.0, 0.5], [-0.3, 2.0]] {
                    let (a, b) = (s.norm_of(&v), back.norm_of(&v));
                    assert!((a - b).abs() <= 1e-12 * a.max(1.0), "{a} {b}");
                }
            }
        }
    }
}
