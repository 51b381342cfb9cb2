//! Linear operators, summing norms and the adjoint duality relations.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::class::ClassId;
use crate::dualize::sup_pairing;
use crate::error::{Error, Result};
use crate::linalg::svd;
use crate::optimize::{
    maximize_over_ball, maximize_over_ball_from, maximize_over_seq_ball_from, multi_start_ascent,
    FnObjective, Method, MethodTag, NormCert, OptConfig, Witness,
};
use crate::seq::VecSeq;
use crate::seqnorm::class_norm;
use crate::space::{NormSpec, Space};

/// Tolerance for comparisons where both sides are exact.
pub const EXACT_TOL: f64 = 1e-9;
/// Tolerance for comparisons involving an optimized lower bound.
pub const APPROX_TOL: f64 = 1e-3;

/// A linear operator `T: E → F` stored as a row-major `dim F × dim E` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LinOp {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    matrix: Vec<f64>,
}

impl LinOp {
    pub fn new(domain: Arc<Space>, codomain: Arc<Space>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != codomain.dim() {
            return Err(Error::DimensionMismatch {
                expected: codomain.dim(),
                found: rows.len(),
            });
        }
        let mut matrix = Vec::with_capacity(rows.len() * domain.dim());
        for r in rows {
            if r.len() != domain.dim() {
                return Err(Error::DimensionMismatch {
                    expected: domain.dim(),
                    found: r.len(),
                });
            }
            matrix.extend(r);
        }
        if matrix.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite("operator matrix entry".into()));
        }
        Ok(LinOp {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(space: Arc<Space>) -> Self {
        let n = space.dim();
        let matrix = (0..n * n)
            .map(|i| if i / n == i % n { 1.0 } else { 0.0 })
            .collect();
        LinOp {
            domain: space.clone(),
            codomain: space,
            matrix,
        }
    }

    pub fn zero(domain: Arc<Space>, codomain: Arc<Space>) -> Self {
        let matrix = vec![0.0; domain.dim() * codomain.dim()];
        LinOp {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Space> {
        &self.codomain
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.matrix
            .chunks(self.domain.dim())
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn entry(&self, r: usize, c: usize) -> f64 {
        self.matrix[r * self.domain.dim() + c]
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.matrix
            .chunks(self.domain.dim())
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `Tᵀ g` for a functional `g` on the codomain.
    pub fn apply_transpose(&self, g: &[f64]) -> Vec<f64> {
        let n = self.domain.dim();
        let mut out = vec![0.0; n];
        for (row, gi) in self.matrix.chunks(n).zip(g) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * gi;
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> LinOp {
        LinOp {
            matrix: self.matrix.iter().map(|a| a * s).collect(),
            ..self.clone()
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinOp) -> Result<LinOp> {
        if inner.codomain.dim() != self.domain.dim() || *inner.codomain != *self.domain {
            return Err(Error::InvalidSpace(
                "composition needs matching intermediate spaces".into(),
            ));
        }
        let (m, l, n) = (self.codomain.dim(), self.domain.dim(), inner.domain.dim());
        let mut matrix = vec![0.0; m * n];
        for r in 0..m {
            for c in 0..n {
                matrix[r * n + c] = (0..l).map(|t| self.entry(r, t) * inner.entry(t, c)).sum();
            }
        }
        Ok(LinOp {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix,
        })
    }
}

/// `T' : F' → E'`, the transpose between dual spaces.
pub fn adjoint(t: &LinOp) -> LinOp {
    let (m, n) = (t.codomain.dim(), t.domain.dim());
    let mut matrix = vec![0.0; m * n];
    for r in 0..m {
        for c in 0..n {
            matrix[c * m + r] = t.matrix[r * n + c];
        }
    }
    LinOp {
        domain: Arc::new(t.codomain.dual()),
        codomain: Arc::new(t.domain.dual()),
        matrix,
    }
}

/// `(T x_j)_j`.
pub fn apply_elementwise(t: &LinOp, x: &VecSeq) -> Result<VecSeq> {
    if **x.space() != *t.domain {
        return Err(Error::InvalidSpace(format!(
            "sequence lives on {}, operator domain is {}",
            x.space().describe(),
            t.domain.describe()
        )));
    }
    let data = x.iter().flat_map(|v| t.apply(v)).collect();
    VecSeq::from_flat(t.codomain.clone(), data)
}

/// `sup_{‖v‖_E ≤ 1} ‖T v‖_F`.
pub fn op_norm(t: &LinOp, cfg: &OptConfig) -> Result<NormCert> {
    if let (Some(s), Some(u)) = (t.domain.euclidean_scales(), t.codomain.euclidean_scales()) {
        if matches!(cfg.method, Method::Auto | Method::Exact) {
            let (m, n) = (t.codomain.dim(), t.domain.dim());
            let a = DMatrix::from_fn(m, n, |r, c| u[r] * t.entry(r, c) / s[c]);
            let d = svd(&a);
            let v: Vec<f64> = d.top_right().iter().zip(&s).map(|(a, sc)| a / sc).collect();
            let value = d.max();
            return Ok(NormCert::exact(value, Witness::Vector(v)));
        }
    }
    let objective = FnObjective::new(
        |v: &[f64]| t.codomain.norm_of(&t.apply(v)),
        |v: &[f64]| t.apply_transpose(&t.codomain.dual_witness(&t.apply(v))),
    );
    let ascent = match cfg.method {
        Method::Ascent => true,
        Method::Auto => t.domain.extreme_points().is_none(),
        _ => false,
    };
    if !ascent {
        return maximize_over_ball(&objective, &t.domain, cfg);
    }
    // The adjoint has the same norm; a maximizer ψ of ‖T'ψ‖ yields the
    // start v norming T'ψ, with ‖T v‖ ≥ ⟨ψ, T v⟩ = ‖T'ψ‖.
    let adj = adjoint(t);
    let dual_objective = FnObjective::new(
        |g: &[f64]| adj.codomain.norm_of(&adj.apply(g)),
        |g: &[f64]| adj.apply_transpose(&adj.codomain.dual_witness(&adj.apply(g))),
    );
    let r = multi_start_ascent(&dual_objective, adj.domain.as_ref(), cfg, Vec::new(), true)?;
    let start = adj.codomain.dual_witness(&adj.apply(&r.x));
    maximize_over_ball_from(&objective, &t.domain, cfg, vec![start])
}

/// `‖T‖_{X;Y}` on length-`k` sequences: the supremum of `‖(T x_j)‖_{Y(F)}`
/// over the unit ball of `X(E)`.
///
/// The witness is the maximizing sequence in `X(E)`.
pub fn summing_norm(
    x: &ClassId,
    y: &ClassId,
    t: &LinOp,
    k: usize,
    cfg: &OptConfig,
) -> Result<NormCert> {
    summing_norm_from(x, y, t, k, cfg, Vec::new(), true)
}

fn summing_norm_from(
    x: &ClassId,
    y: &ClassId,
    t: &LinOp,
    k: usize,
    cfg: &OptConfig,
    extra: Vec<Vec<f64>>,
    seed_from_op_norm: bool,
) -> Result<NormCert> {
    cfg.validate()?;
    x.validate()?;
    y.validate()?;
    if k == 0 {
        return Err(Error::Config("sequence length must be at least 1".into()));
    }
    let n = t.domain.dim();
    if t.matrix.iter().all(|a| *a == 0.0) {
        return Ok(NormCert::exact(
            0.0,
            Witness::Sequence(vec![vec![0.0; n]; k]),
        ));
    }
    let inner = cfg.nested();
    let image = |v: &[f64]| -> Result<VecSeq> {
        VecSeq::from_flat(
            t.codomain.clone(),
            v.chunks(n).flat_map(|c| t.apply(c)).collect(),
        )
    };
    let objective = FnObjective::new(
        |v: &[f64]| {
            image(v)
                .and_then(|s| class_norm(y, &s, &inner))
                .map_or(f64::NAN, |c| c.value)
        },
        |v: &[f64]| match image(v).and_then(|s| class_norm(y, &s, &inner)) {
            Ok(c) => c
                .witness_flat()
                .chunks(t.codomain.dim())
                .flat_map(|w| t.apply_transpose(w))
                .collect(),
            Err(_) => vec![0.0; v.len()],
        },
    );
    // `v · e_j` with `v` norming for `T` gives the lower bound `‖T‖`.
    let mut starts = extra;
    let norming = if seed_from_op_norm {
        op_norm(t, &inner).ok()
    } else {
        None
    };
    if let Some(c) = norming {
        let v = c.witness_flat();
        for j in 0..k {
            let mut s = vec![0.0; k * n];
            s[j * n..(j + 1) * n].copy_from_slice(&v);
            starts.push(s);
        }
        starts.push((0..k).flat_map(|_| v.iter().copied()).collect());
    }
    maximize_over_seq_ball_from(&objective, x, &t.domain, k, cfg, starts)
}

/// `‖S‖_{X1;Y1}` and `‖S'‖_{X2;Y2}`, each refined by one ascent started at
/// the sequence that norms the image of the other's witness.
fn paired_summing_norms(
    (x1, y1): (&ClassId, &ClassId),
    (x2, y2): (&ClassId, &ClassId),
    s: &LinOp,
    k: usize,
    cfg: &OptConfig,
) -> Result<(NormCert, NormCert)> {
    let s_adj = adjoint(s);
    let p = summing_norm(x1, y1, s, k, cfg)?;
    let q = summing_norm(x2, y2, &s_adj, k, cfg)?;
    let refine = OptConfig {
        restarts: 1,
        ..cfg.clone()
    };
    let cross =
        |class: &ClassId, y: &ClassId, op: &LinOp, other: &LinOp, w: &NormCert, own: NormCert| {
            let image = w
                .witness_flat()
                .chunks(other.domain.dim())
                .flat_map(|v| other.apply(v))
                .collect::<Vec<f64>>();
            let Ok(image) = VecSeq::from_flat(other.codomain.clone(), image) else {
                return Ok(own);
            };
            let Ok(norming) = sup_pairing(class, &op.domain, &image, cfg) else {
                return Ok(own);
            };
            let start = norming.witness_flat();
            let again = summing_norm_from(class, y, op, k, &refine, vec![start], false)?;
            Ok::<_, Error>(if again.value > own.value { again } else { own })
        };
    let ascent = |c: &NormCert| matches!(c.method, MethodTag::Ascent | MethodTag::CuttingPlane);
    let p2 = if ascent(&p) {
        cross(x1, y1, s, &s_adj, &q, p.clone())?
    } else {
        p.clone()
    };
    let q2 = if ascent(&q) {
        cross(x2, y2, &s_adj, s, &p, q)?
    } else {
        q
    };
    Ok((p2, q2))
}

/// One inequality `lhs ≤ rhs` of a duality report.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `(rhs − lhs) / max(1, |lhs|, |rhs|)`.
    pub margin: f64,
    pub tol: f64,
    pub pass: bool,
}

impl InequalityCheck {
    pub fn new(label: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = (rhs - lhs) / 1f64.max(lhs.abs()).max(rhs.abs());
        InequalityCheck {
            label: label.to_string(),
            lhs,
            rhs,
            margin,
            tol,
            pass: margin >= -tol,
        }
    }
}

/// Two summing norms related by an adjoint, with the inequalities that the
/// class hypotheses guarantee.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub x: ClassId,
    pub y: ClassId,
    pub k: usize,
    /// Name and certificate of each side.
    pub left: (String, NormCert),
    pub right: (String, NormCert),
    /// Hypotheses assumed from class metadata.
    pub hypotheses: Vec<String>,
    pub checks: Vec<InequalityCheck>,
}

impl DualityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn tolerance(a: &NormCert, b: &NormCert) -> f64 {
    if a.is_exact() && b.is_exact() {
        EXACT_TOL
    } else {
        APPROX_TOL
    }
}

/// Compares `a = ‖T‖_{X;Y}` with `b = ‖T'‖_{Y^dual;X^dual}`.
///
/// `b ≤ a` holds when `X` is dual-representable and `Y` is linearly stable,
/// finitely dominated and spherically complete; `a ≤ b` holds when `Y` is
/// reflexive.
pub fn adjoint_duality_report(
    x: &ClassId,
    y: &ClassId,
    t: &LinOp,
    k: usize,
    cfg: &OptConfig,
) -> Result<DualityReport> {
    let (xf, yf) = (x.flags(), y.flags());
    let part_a = xf.dual_representable()
        && yf.linearly_stable
        && yf.finitely_dominated
        && yf.spherically_complete;
    let part_b = yf.reflexive && yf.spherically_complete && xf.spherically_complete;
    if !part_a && !part_b {
        let (class, flag) = match xf.missing_for_dual_representable() {
            Some(f) => (x, f),
            None if !yf.finitely_dominated => (y, "finitely dominated"),
            None if !yf.spherically_complete => (y, "spherically complete"),
            None => (y, "reflexive"),
        };
        return Err(Error::Hypothesis {
            result: "the adjoint duality".into(),
            class: class.to_string(),
            flag: flag.into(),
        });
    }
    let dx = ClassId::dual(x.clone())?;
    let dy = ClassId::dual(y.clone())?;
    let (a, b) = paired_summing_norms((x, y), (&dy, &dx), t, k, cfg)?;
    let tol = tolerance(&a, &b);
    let mut hypotheses = Vec::new();
    let mut checks = Vec::new();
    if part_a {
        hypotheses.push(format!(
            "{x} dual-representable; {y} linearly stable, finitely dominated, spherically complete"
        ));
        checks.push(InequalityCheck::new("b <= a", b.value, a.value, tol));
    }
    if part_b {
        hypotheses.push(format!("{y} reflexive"));
        checks.push(InequalityCheck::new("a <= b", a.value, b.value, tol));
    }
    Ok(DualityReport {
        x: x.clone(),
        y: y.clone(),
        k,
        left: ("a".into(), a),
        right: ("b".into(), b),
        hypotheses,
        checks,
    })
}

/// Compares `c = ‖T‖_{Y^dual;X^dual}` with `d = ‖T'‖_{X;Y}`.
///
/// `c ≤ d` holds when `X` and `Y` are spherically complete; `d ≤ c` holds
/// when `X` is spherically complete and `Y^dual` is dual-representable and
/// reflexive.
pub fn reverse_duality_report(
    x: &ClassId,
    y: &ClassId,
    t: &LinOp,
    k: usize,
    cfg: &OptConfig,
) -> Result<DualityReport> {
    let (xf, yf) = (x.flags(), y.flags());
    if !xf.spherically_complete {
        return Err(Error::Hypothesis {
            result: "the reverse adjoint duality".into(),
            class: x.to_string(),
            flag: "spherically complete".into(),
        });
    }
    let dx = ClassId::dual(x.clone())?;
    let dy = ClassId::dual(y.clone())?;
    let dyf = dy.flags();
    let part_b = yf.spherically_complete;
    let part_a = dyf.dual_representable() && dyf.reflexive;
    if !part_a && !part_b {
        return Err(Error::Hypothesis {
            result: "the reverse adjoint duality".into(),
            class: y.to_string(),
            flag: "spherically complete".into(),
        });
    }
    let (c, d) = paired_summing_norms((&dy, &dx), (x, y), t, k, cfg)?;
    let tol = tolerance(&c, &d);
    let mut hypotheses = Vec::new();
    let mut checks = Vec::new();
    if part_a {
        hypotheses.push(format!(
            "{x} spherically complete; {dy} dual-representable and reflexive"
        ));
        checks.push(InequalityCheck::new("d <= c", d.value, c.value, tol));
    }
    if part_b {
        hypotheses.push(format!("{x} and {y} spherically complete"));
        checks.push(InequalityCheck::new("c <= d", c.value, d.value, tol));
    }
    Ok(DualityReport {
        x: x.clone(),
        y: y.clone(),
        k,
        left: ("c".into(), c),
        right: ("d".into(), d),
        hypotheses,
        checks,
    })
}

/// `(‖T‖_{X;Y}, ‖T''‖_{X;Y})`.
pub fn second_adjoint_check(
    x: &ClassId,
    y: &ClassId,
    t: &LinOp,
    k: usize,
    cfg: &OptConfig,
) -> Result<(NormCert, NormCert)> {
    let t2 = adjoint(&adjoint(t));
    Ok((
        summing_norm(x, y, t, k, cfg)?,
        summing_norm(x, y, &t2, k, cfg)?,
    ))
}

/// An isometric embedding of `space` into some `ℓ_∞^N`, when the norm is a
/// maximum of finitely many functionals.
pub fn linf_embedding(space: &Arc<Space>) -> Option<LinOp> {
    let n = space.dim();
    let rows: Vec<Vec<f64>> = match space.spec() {
        NormSpec::P(q) | NormSpec::ScaledP { q, .. } if q.is_infinite() || q.is_one() => {
            let scales = match space.spec() {
                NormSpec::ScaledP { scales, .. } => scales.clone(),
                _ => vec![1.0; n],
            };
            if q.is_infinite() {
                (0..n)
                    .map(|i| {
                        let mut r = vec![0.0; n];
                        r[i] = scales[i];
                        r
                    })
                    .collect()
            } else {
                (0..1usize << (n - 1))
                    .map(|mask| {
                        (0..n)
                            .map(|i| {
                                let s = if i > 0 && mask >> (i - 1) & 1 == 1 {
                                    -1.0
                                } else {
                                    1.0
                                };
                                s * scales[i]
                            })
                            .collect()
                    })
                    .collect()
            }
        }
        NormSpec::Polytope(p) => {
            let mut rows: Vec<Vec<f64>> = Vec::new();
            for a in p.facets() {
                let neg: Vec<f64> = a.iter().map(|v| -v).collect();
                if !rows.contains(&neg) {
                    rows.push(a.clone());
                }
            }
            rows
        }
        _ if n == 1 => vec![vec![space.norm_of(&[1.0])]],
        _ => return None,
    };
    // One spare zero coordinate makes the target strictly larger.
    let mut rows = rows;
    rows.push(vec![0.0; n]);
    let target = Arc::new(Space::p(rows.len(), crate::index::Index::INFINITY).ok()?);
    LinOp::new(space.clone(), target, rows).ok()
}

/// `(‖T‖_{X;Y}, ‖J ∘ T‖_{X;Y})` for the isometric embedding `J` of the
/// codomain into `ℓ_∞^N`.
pub fn injectivity_probe(
    x: &ClassId,
    y: &ClassId,
    t: &LinOp,
    k: usize,
    cfg: &OptConfig,
) -> Result<(NormCert, NormCert)> {
    let j = linf_embedding(&t.codomain).ok_or_else(|| {
        Error::Unsupported(format!(
            "no isometric embedding of {} into l_inf is available",
            t.codomain.describe()
        ))
    })?;
    let jt = j.compose(t)?;
    Ok((
        summing_norm(x, y, t, k, cfg)?,
        summing_norm(x, y, &jt, k, cfg)?,
    ))
}

/// Certificate of `‖A‖ · ‖T‖_{X;Y} · ‖B‖` next to `‖A T B‖_{X;Y}`.
pub fn ideal_check(
    x: &ClassId,
    y: &ClassId,
    a: &LinOp,
    t: &LinOp,
    b: &LinOp,
    k: usize,
    cfg: &OptConfig,
) -> Result<(f64, NormCert)> {
    let atb = a.compose(&t.compose(b)?)?;
    let lhs = summing_norm(x, y, &atb, k, cfg)?;
    // Upper bounds for the outer factors keep the comparison one-sided.
    let bound = |op: &LinOp| -> Result<f64> {
        let c = op_norm(op, &cfg.nested())?;
        Ok(c.upper.unwrap_or(c.value))
    };
    let rhs = bound(a)? * summing_norm(x, y, t, k, cfg)?.value * bound(b)?;
    Ok((rhs, lhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::Index;

    fn sp(n: usize, q: Index) -> Arc<Space> {
        Arc::new(Space::p(n, q).unwrap())
    }

    #[test]
    fn adjoint_examples() {
        let e = sp(2, Index::TWO);
        let id = LinOp::identity(e.clone());
        assert_eq!(adjoint(&id), id);
        let t = LinOp::new(
            sp(2, Index::ONE),
            e.clone(),
            vec![vec![1.0, 2.0], vec![3.0, 4.0]],
        )
        .unwrap();
        let a = adjoint(&t);
        assert_eq!(**a.domain(), Space::p(2, Index::TWO).unwrap());
        assert_eq!(**a.codomain(), Space::p(2, Index::INFINITY).unwrap());
        assert_eq!(a.rows(), vec![vec![1.0, 3.0], vec![2.0, 4.0]]);
        assert_eq!(adjoint(&a), t);
        let z = LinOp::zero(e.clone(), e);
        assert_eq!(adjoint(&z).rows(), z.rows());
    }

    #[test]
    fn elementwise_examples() {
        let e = sp(2, Index::TWO);
        let x = VecSeq::new(e.clone(), vec![vec![1.0, 0.0]]).unwrap();
        let id = LinOp::identity(e.clone());
        assert_eq!(apply_elementwise(&id, &x).unwrap(), x);
        let two = id.scaled(2.0);
        assert_eq!(
            apply_elementwise(&two, &x).unwrap().vectors(),
            vec![vec![2.0, 0.0]]
        );
        let z = LinOp::zero(e.clone(), e);
        assert!(apply_elementwise(&z, &x).unwrap().is_zero());
        let other = VecSeq::new(sp(2, Index::ONE), vec![vec![1.0, 0.0]]).unwrap();
        assert!(apply_elementwise(&id, &other).is_err());
    }

    #[test]
    fn summing_norm_examples() {
        let cfg = OptConfig::default();
        let e = sp(2, Index::TWO);
        let id = LinOp::identity(e.clone());
        let lp2: ClassId = "lp:2".parse().unwrap();
        let v = summing_norm(&lp2, &lp2, &id, 3, &cfg).unwrap().value;
        assert!((v - 1.0).abs() < 1e-9);
        let w = summing_norm(&"lpw:2".parse().unwrap(), &lp2, &id, 2, &cfg).unwrap();
        assert!((w.value - 2f64.sqrt()).abs() < 1e-6);
        let z = LinOp::zero(e.clone(), e);
        assert_eq!(summing_norm(&lp2, &lp2, &z, 2, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn op_norm_closed_form_matches_vertices() {
        let cfg = OptConfig::default();
        let t = LinOp::new(
            sp(2, Index::ONE),
            sp(2, Index::TWO),
            vec![vec![1.0, 2.0], vec![3.0, 4.0]],
        )
        .unwrap();
        // ℓ1 → ℓ2: largest column norm
        assert!((op_norm(&t, &cfg).unwrap().value - 20f64.sqrt()).abs() < 1e-12);
        let a = adjoint(&t);
        assert!((op_norm(&a, &cfg).unwrap().value - 20f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn embedding_is_isometric() {
        for s in [
            Space::p(3, Index::ONE).unwrap(),
            Space::p(2, Index::INFINITY).unwrap(),
            Space::weighted(Index::ONE, &[1.0, 3.0]).unwrap(),
            Space::polytope(vec![
                vec![1.0, 0.0],
                vec![-1.0, 0.0],
                vec![0.5, 1.0],
                vec![-0.5, -1.0],
            ])
            .unwrap(),
        ] {
            let s = Arc::new(s);
            let j = linf_embedding(&s).unwrap();
            for v in [[0.3, -1.2, 0.7], [1.0, 1.0, 1.0], [-2.0, 0.1, 0.0]] {
                let v = &v[..s.dim()];
                assert!((j.codomain().norm_of(&j.apply(v)) - s.norm_of(v)).abs() < 1e-12);
            }
        }
        assert!(linf_embedding(&sp(2, Index::TWO)).is_none());
    }

    #[test]
    fn reports_reject_without_hypotheses() {
        let e = sp(2, Index::TWO);
        let id = LinOp::identity(e);
        let cfg = OptConfig::default();
        assert!(adjoint_duality_report(&ClassId::Rad, &ClassId::Rad, &id, 2, &cfg).is_err());
        assert!(
            reverse_duality_report(&ClassId::Rad, &"lp:2".parse().unwrap(), &id, 2, &cfg).is_err()
        );
    }
}
