//! Norms of finite vector sequences under each sequence class.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::class::ClassId;
use crate::error::{Error, Result};
use crate::index::{lp_norm, lp_witness, Index};
use crate::linalg::svd;
use crate::optimize::{
    dot, gaussian_vec, maximize_over_ball, maximize_over_seq_ball_from, rng_for, Ball, FnObjective,
    Method, MethodTag, NormCert, OptConfig, Witness,
};
use crate::seq::VecSeq;
use crate::space::Space;

/// Longest sequence for which Rademacher averages are enumerated.
pub const MAX_RAD_LENGTH: usize = 12;
const MAX_PRODUCT_VERTICES: usize = 4096;

/// The exponent `r` with `‖x‖_X = ‖e_1‖ · ‖x‖_r` for scalar sequences.
pub fn scalar_index(class: &ClassId) -> Index {
    match class {
        ClassId::Lp(p)
        | ClassId::LpWeak(p)
        | ClassId::LpUnc(p)
        | ClassId::Cohen(p)
        | ClassId::Mid(p) => *p,
        ClassId::LInf | ClassId::C0 | ClassId::C0w => Index::INFINITY,
        ClassId::Rad | ClassId::RadSup => Index::TWO,
        ClassId::Dual(inner) => scalar_index(inner).conjugate(),
    }
}

/// Norm of `x` in `X(E)`.
///
/// Dual classes are delegated to [`crate::dualize::dual_norm`]. The witness
/// of the returned certificate is a sequence `w` over `E'` with
/// `Σ_j ⟨w_j, x_j⟩` equal to the value.
pub fn class_norm(class: &ClassId, x: &VecSeq, cfg: &OptConfig) -> Result<NormCert> {
    cfg.validate()?;
    class.validate()?;
    if let ClassId::Dual(inner) = class {
        return crate::dualize::dual_norm(inner, x, cfg);
    }
    let forced = matches!(cfg.method, Method::Ascent | Method::BruteForce);
    let optimized = matches!(
        class,
        ClassId::LpWeak(_) | ClassId::LpUnc(_) | ClassId::Cohen(_) | ClassId::Mid(_)
    );
    if x.dim() == 1 && !(forced && optimized) && !matches!(class, ClassId::Rad | ClassId::RadSup) {
        return Ok(lp_family(x, scalar_index(class)));
    }
    match class {
        ClassId::Lp(p) => Ok(lp_family(x, *p)),
        ClassId::LInf | ClassId::C0 | ClassId::C0w => Ok(lp_family(x, Index::INFINITY)),
        ClassId::LpWeak(p) | ClassId::LpUnc(p) => weak_norm(x, *p, cfg),
        ClassId::Cohen(p) => cohen_norm(x, *p, cfg),
        ClassId::Mid(p) => mid_norm(x, *p, cfg),
        ClassId::Rad => rad_norm(x, cfg),
        ClassId::RadSup => rad_sup_norm(x, cfg),
        ClassId::Dual(_) => unreachable!(),
    }
}

/// Norms of the prefixes `(x_1, …, x_m)` for `m = 1, …, k`.
pub fn prefix_norms(class: &ClassId, x: &VecSeq, cfg: &OptConfig) -> Result<Vec<NormCert>> {
    (1..=x.len())
        .map(|m| class_norm(class, &x.prefix(m), cfg))
        .collect()
}

/// `(‖v · e_j‖_{X(E)}, ‖v‖_E)` for the length-`k` sequence with `v` at
/// position `j` (1-based).
pub fn coordinate_axiom_check(
    class: &ClassId,
    space: &Arc<Space>,
    v: &[f64],
    j: usize,
    k: usize,
    cfg: &OptConfig,
) -> Result<(f64, f64)> {
    let x = VecSeq::unit(space.clone(), v, j, k)?;
    let lhs = class_norm(class, &x, cfg)?.value;
    Ok((lhs, space.norm(v)?))
}

/// `‖x‖_{ℓ_p(E)}` with its norming dual sequence.
pub(crate) fn lp_family(x: &VecSeq, p: Index) -> NormCert {
    let space = x.space();
    let norms: Vec<f64> = x.iter().map(|v| space.norm_of(v)).collect();
    let value = lp_norm(&norms, p);
    let s = lp_witness(&norms, p);
    let w = x
        .iter()
        .zip(&s)
        .map(|(v, sj)| space.dual_witness(v).into_iter().map(|a| a * sj).collect())
        .collect();
    NormCert::exact(value, Witness::Sequence(w))
}

fn zero_cert(x: &VecSeq) -> NormCert {
    NormCert::exact(0.0, Witness::Sequence(vec![vec![0.0; x.dim()]; x.len()]))
}

/// `(φ(x_j))_j` for a functional `φ`.
fn evaluate(x: &VecSeq, phi: &[f64]) -> Vec<f64> {
    x.iter().map(|v| dot(v, phi)).collect()
}

/// Rows `S x_j` where `‖v‖_E = ‖S v‖_2`.
fn scaled_matrix(x: &VecSeq, scales: &[f64]) -> DMatrix<f64> {
    let n = x.dim();
    DMatrix::from_fn(x.len(), n, |j, i| x.vector(j)[i] * scales[i])
}

fn weak_norm(x: &VecSeq, p: Index, cfg: &OptConfig) -> Result<NormCert> {
    if x.is_zero() {
        return Ok(zero_cert(x));
    }
    let space = x.space();
    let dual = space.dual();
    if matches!(cfg.method, Method::Auto | Method::Exact) && p == Index::TWO {
        if let Some(s) = space.euclidean_scales() {
            let v = svd(&scaled_matrix(x, &s)).top_right();
            let phi: Vec<f64> = v.iter().zip(&s).map(|(a, si)| a * si).collect();
            return Ok(weak_cert(x, p, phi, MethodTag::Exact));
        }
    }
    let objective = FnObjective::new(
        |phi: &[f64]| lp_norm(&evaluate(x, phi), p),
        |phi: &[f64]| {
            let t = lp_witness(&evaluate(x, phi), p);
            let mut g = vec![0.0; phi.len()];
            for (v, tj) in x.iter().zip(&t) {
                for (gi, vi) in g.iter_mut().zip(v) {
                    *gi += tj * vi;
                }
            }
            g
        },
    );
    let cert = maximize_over_ball(&objective, &dual, cfg)?;
    let phi = match cert.witness {
        Witness::Vector(v) => v,
        _ => unreachable!(),
    };
    let mut out = weak_cert(x, p, phi, cert.method);
    out.value = out.value.max(cert.value);
    Ok(out)
}

/// Certificate for the weak norm attained at the functional `phi`.
fn weak_cert(x: &VecSeq, p: Index, phi: Vec<f64>, method: MethodTag) -> NormCert {
    let values = evaluate(x, &phi);
    let s = lp_witness(&values, p);
    let w = s
        .iter()
        .map(|sj| phi.iter().map(|a| a * sj).collect())
        .collect();
    NormCert::new(lp_norm(&values, p), Witness::Sequence(w), method)
}

fn cohen_norm(x: &VecSeq, p: Index, cfg: &OptConfig) -> Result<NormCert> {
    if x.is_zero() {
        return Ok(zero_cert(x));
    }
    let space = x.space();
    if matches!(cfg.method, Method::Auto | Method::Exact) {
        if p.is_one() {
            return Ok(lp_family(x, Index::ONE));
        }
        if let Some(s) = space.l1_scales() {
            // Columns decouple: the weak-p* ball over a scaled cube is the
            // product of the coordinatewise l_{p*} balls.
            let n = x.dim();
            let mut value = 0.0;
            let mut w = vec![vec![0.0; n]; x.len()];
            for i in 0..n {
                let col: Vec<f64> = x.iter().map(|v| v[i]).collect();
                value += s[i] * lp_norm(&col, p);
                for (wj, tj) in w.iter_mut().zip(lp_witness(&col, p)) {
                    wj[i] = s[i] * tj;
                }
            }
            return Ok(NormCert::exact(value, Witness::Sequence(w)));
        }
        if p == Index::TWO {
            if let Some(s) = space.euclidean_scales() {
                let d = svd(&scaled_matrix(x, &s));
                let (value, polar) = (d.nuclear(), d.polar(false));
                let w = (0..x.len())
                    .map(|j| (0..x.dim()).map(|i| polar[(j, i)] * s[i]).collect())
                    .collect();
                return Ok(NormCert::exact(value, Witness::Sequence(w)));
            }
        }
        if cfg.method == Method::Exact {
            return Err(Error::Unsupported(format!(
                "no exact evaluation of cohen:{p} on {}",
                space.describe()
            )));
        }
    }
    let dual = Arc::new(space.dual());
    crate::dualize::sup_pairing(&ClassId::LpWeak(p.conjugate()), &dual, x, cfg)
}

fn mid_norm(x: &VecSeq, p: Index, cfg: &OptConfig) -> Result<NormCert> {
    if x.is_zero() {
        return Ok(zero_cert(x));
    }
    let space = x.space();
    if matches!(cfg.method, Method::Auto | Method::Exact) {
        if p == Index::TWO && space.euclidean_scales().is_some() {
            return Ok(lp_family(x, Index::TWO));
        }
        if cfg.method == Method::Exact {
            return Err(Error::Unsupported(format!(
                "no exact evaluation of mid:{p} on {}",
                space.describe()
            )));
        }
    }
    let dual = Arc::new(space.dual());
    let n = x.dim();
    let k = x.len();
    let entries = |phi: &[f64]| -> Vec<f64> {
        phi.chunks(n)
            .flat_map(|f| x.iter().map(move |v| dot(v, f)))
            .collect()
    };
    let objective = FnObjective::new(
        |phi: &[f64]| lp_norm(&entries(phi), p),
        |phi: &[f64]| {
            let t = lp_witness(&entries(phi), p);
            let mut g = vec![0.0; phi.len()];
            for (gn, tn) in g.chunks_mut(n).zip(t.chunks(k)) {
                for (v, tnj) in x.iter().zip(tn) {
                    for (gi, vi) in gn.iter_mut().zip(v) {
                        *gi += tnj * vi;
                    }
                }
            }
            g
        },
    );
    let weak = ClassId::LpWeak(p);
    let mut m = k.min(cfg.mid_max_m);
    // A single norming functional already gives max_j ‖x_j‖.
    let mut starts: Vec<Vec<f64>> = x
        .iter()
        .filter(|v| v.iter().any(|a| *a != 0.0))
        .map(|v| {
            let mut phi = space.dual_witness(v);
            phi.resize(m * n, 0.0);
            phi
        })
        .collect();
    let inner_cfg = match cfg.method {
        Method::BruteForce if m * n > 3 => cfg.with_method(Method::Ascent),
        _ => cfg.clone(),
    };
    let mut best: Option<NormCert> = None;
    let mut increment = f64::INFINITY;
    loop {
        let cert = maximize_over_seq_ball_from(&objective, &weak, &dual, m, &inner_cfg, starts)?;
        if let Some(prev) = &best {
            increment = (cert.value - prev.value) / prev.value.max(f64::MIN_POSITIVE);
        }
        let better = best.as_ref().is_none_or(|b| cert.value >= b.value);
        let phi = cert.witness_flat();
        if better {
            best = Some(cert);
        }
        if increment < cfg.tol || 2 * m > cfg.mid_max_m || inner_cfg.method == Method::BruteForce {
            break;
        }
        m *= 2;
        let mut padded = phi;
        padded.resize(m * n, 0.0);
        starts = vec![padded];
    }
    let best = best.expect("at least one round");
    let phi = best.witness_flat();
    let mm = phi.len() / n;
    let t = lp_witness(&entries(&phi), p);
    let mut w = vec![vec![0.0; n]; k];
    for (f, tn) in phi.chunks(n).zip(t.chunks(k)) {
        for (wj, tnj) in w.iter_mut().zip(tn) {
            for (wi, fi) in wj.iter_mut().zip(f) {
                *wi += tnj * fi;
            }
        }
    }
    let mut out = NormCert::new(best.value, Witness::Sequence(w), best.method);
    out.notes.insert("m".into(), mm as f64);
    out.notes.insert(
        "last_increment".into(),
        if increment.is_finite() {
            increment
        } else {
            0.0
        },
    );
    Ok(out)
}

/// Accumulates `‖S_ε‖²` and the witness terms over sign patterns.
struct RadAccumulator {
    sum_sq: f64,
    w: Vec<Vec<f64>>,
    count: usize,
}

impl RadAccumulator {
    fn new(k: usize, n: usize) -> Self {
        RadAccumulator {
            sum_sq: 0.0,
            w: vec![vec![0.0; n]; k],
            count: 0,
        }
    }

    fn add(&mut self, x: &VecSeq, signs: &[f64]) {
        let space = x.space();
        let mut s = vec![0.0; x.dim()];
        for (v, e) in x.iter().zip(signs) {
            for (si, vi) in s.iter_mut().zip(v) {
                *si += e * vi;
            }
        }
        let ns = space.norm_of(&s);
        self.sum_sq += ns * ns;
        self.count += 1;
        if ns > 0.0 {
            let f = space.dual_witness(&s);
            for (wj, e) in self.w.iter_mut().zip(signs) {
                for (wi, fi) in wj.iter_mut().zip(&f) {
                    *wi += ns * e * fi;
                }
            }
        }
    }

    fn finish(self, method: MethodTag) -> NormCert {
        let value = (self.sum_sq / self.count as f64).sqrt();
        let scale = if value > 0.0 {
            1.0 / (self.count as f64 * value)
        } else {
            0.0
        };
        let w = self
            .w
            .into_iter()
            .map(|wj| wj.into_iter().map(|a| a * scale).collect())
            .collect();
        NormCert::new(value, Witness::Sequence(w), method)
    }
}

fn rad_norm(x: &VecSeq, cfg: &OptConfig) -> Result<NormCert> {
    let k = x.len();
    let mut acc = RadAccumulator::new(k, x.dim());
    if k <= MAX_RAD_LENGTH {
        // ε and −ε give the same norm, so fix ε_1 = +1.
        let mut signs = vec![1.0; k];
        for mask in 0..1usize << (k - 1) {
            for (j, e) in signs.iter_mut().enumerate().skip(1) {
                *e = if mask >> (j - 1) & 1 == 0 { 1.0 } else { -1.0 };
            }
            acc.add(x, &signs);
        }
        return Ok(acc.finish(MethodTag::Exact));
    }
    match (cfg.method, cfg.rad_mc) {
        (Method::Exact, _) | (_, None) => Err(Error::Unsupported(format!(
            "exact Rademacher averages need length at most {MAX_RAD_LENGTH}, got {k}; \
             a Monte-Carlo estimate is available on request"
        ))),
        (_, Some(samples)) => {
            let mut rng = rng_for(cfg.seed, 0x5ad);
            for _ in 0..samples.max(1) {
                let signs: Vec<f64> = gaussian_vec(&mut rng, k)
                    .into_iter()
                    .map(|g| if g < 0.0 { -1.0 } else { 1.0 })
                    .collect();
                acc.add(x, &signs);
            }
            Ok(acc.finish(MethodTag::MonteCarlo))
        }
    }
}

fn rad_sup_norm(x: &VecSeq, cfg: &OptConfig) -> Result<NormCert> {
    let mut best: Option<(usize, NormCert)> = None;
    for m in 1..=x.len() {
        let c = rad_norm(&x.prefix(m), cfg)?;
        if best.as_ref().is_none_or(|(_, b)| c.value > b.value) {
            best = Some((m, c));
        }
    }
    let (m, mut cert) = best.expect("non-empty sequence");
    if let Witness::Sequence(w) = &mut cert.witness {
        w.resize(x.len(), vec![0.0; x.dim()]);
    }
    cert.notes.insert("prefix".into(), m as f64);
    Ok(cert)
}

/// The unit ball of a class norm on length-`length` sequences, flattened.
pub struct ClassBall {
    class: ClassId,
    /// Class used for oracles; closed forms replace dual classes.
    effective: ClassId,
    space: Arc<Space>,
    length: usize,
    cfg: OptConfig,
}

impl ClassBall {
    pub fn new(class: &ClassId, space: Arc<Space>, length: usize, cfg: &OptConfig) -> Result<Self> {
        class.validate()?;
        if length == 0 {
            return Err(Error::Config("sequence length must be at least 1".into()));
        }
        let effective = class.closed_form().unwrap_or_else(|| class.clone());
        Ok(ClassBall {
            class: class.clone(),
            effective,
            space,
            length,
            cfg: cfg.nested(),
        })
    }

    pub fn class(&self) -> &ClassId {
        &self.class
    }

    /// `p` when the ball is the unit ball of `ℓ_p(E)`.
    fn lp_index(&self) -> Option<Index> {
        match &self.effective {
            ClassId::Lp(p) => Some(*p),
            ClassId::LInf | ClassId::C0 | ClassId::C0w => Some(Index::INFINITY),
            c if self.space.dim() == 1 && !matches!(c, ClassId::Dual(_)) => Some(scalar_index(c)),
            _ if self.space.dim() == 1 => Some(scalar_index(&self.class)),
            _ => None,
        }
    }

    pub fn has_lmo(&self) -> bool {
        self.lp_index().is_some() || self.spectral().is_some()
    }

    /// Scales `s` and whether the ball is the operator-norm ball (weak `ℓ_2`)
    /// rather than the nuclear-norm ball (`cohen:2`) of the matrices
    /// `(s_i x_{j,i})`.
    fn spectral(&self) -> Option<(Vec<f64>, bool)> {
        let operator = match &self.effective {
            ClassId::LpWeak(p) | ClassId::LpUnc(p) if *p == Index::TWO => true,
            ClassId::Cohen(p) if *p == Index::TWO => false,
            _ => return None,
        };
        Some((self.space.euclidean_scales()?, operator))
    }

    fn spectral_lmo(&self, g: &[f64]) -> Option<Vec<f64>> {
        let (s, operator) = self.spectral()?;
        let n = self.space.dim();
        let gm = DMatrix::from_fn(self.length, n, |j, i| g[j * n + i] / s[i]);
        let m = svd(&gm).polar(!operator);
        Some(
            (0..self.length)
                .flat_map(|j| (0..n).map(move |i| (j, i)))
                .map(|(j, i)| m[(j, i)] / s[i])
                .collect(),
        )
    }

    pub fn seq(&self, x: &[f64]) -> Result<VecSeq> {
        VecSeq::from_flat(self.space.clone(), x.to_vec())
    }
}

impl Ball for ClassBall {
    fn dim(&self) -> usize {
        self.length * self.space.dim()
    }

    fn norm_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        if x.len() != Ball::dim(self) {
            return Err(Error::DimensionMismatch {
                expected: Ball::dim(self),
                found: x.len(),
            });
        }
        let cert = class_norm(&self.class, &self.seq(x)?, &self.cfg)?;
        let mut g = cert.witness_flat();
        g.resize(x.len(), 0.0);
        Ok((cert.value, g))
    }

    fn lmo(&self, g: &[f64]) -> Option<Vec<f64>> {
        let Some(p) = self.lp_index() else {
            return self.spectral_lmo(g);
        };
        let n = self.space.dim();
        let b: Vec<f64> = g.chunks(n).map(|gj| self.space.dual_norm_of(gj)).collect();
        let t = lp_witness(&b, p.conjugate());
        Some(
            g.chunks(n)
                .zip(&t)
                .flat_map(|(gj, tj)| {
                    let y = if *tj == 0.0 {
                        vec![0.0; n]
                    } else {
                        self.space.ball_lmo(gj)
                    };
                    y.into_iter().map(move |a| a * tj)
                })
                .collect(),
        )
    }

    fn extreme_points(&self) -> Option<Vec<Vec<f64>>> {
        let p = self.lp_index()?;
        let ext = self.space.extreme_points()?;
        let n = self.space.dim();
        let k = self.length;
        if p.is_one() {
            let mut pts = Vec::with_capacity(k * ext.len());
            for j in 0..k {
                for e in &ext {
                    let mut x = vec![0.0; k * n];
                    x[j * n..(j + 1) * n].copy_from_slice(e);
                    pts.push(x);
                }
            }
            Some(pts)
        } else if p.is_infinite() {
            let count = ext.len().checked_pow(k as u32)?;
            if count > MAX_PRODUCT_VERTICES {
                return None;
            }
            Some(
                (0..count)
                    .map(|mut c| {
                        let mut x = Vec::with_capacity(k * n);
                        for _ in 0..k {
                            x.extend_from_slice(&ext[c % ext.len()]);
                            c /= ext.len();
                        }
                        x
                    })
                    .collect(),
            )
        } else {
            None
        }
    }

    fn coordinate_bounds(&self) -> Vec<f64> {
        let b = self.space.coordinate_bounds();
        (0..self.length).flat_map(|_| b.iter().copied()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l2(n: usize) -> Arc<Space> {
        Arc::new(Space::p(n, Index::TWO).unwrap())
    }

    fn seq(space: &Arc<Space>, v: Vec<Vec<f64>>) -> VecSeq {
        VecSeq::new(space.clone(), v).unwrap()
    }

    fn norm(class: &str, x: &VecSeq) -> NormCert {
        class_norm(&class.parse().unwrap(), x, &OptConfig::default()).unwrap()
    }

    fn assert_witness(cert: &NormCert, x: &VecSeq) {
        let w = cert.witness_flat();
        let pair = dot(&w, x.data());
        assert!(
            (pair - cert.value).abs() <= 1e-9 * cert.value.max(1.0),
            "pairing {pair} vs value {}",
            cert.value
        );
    }

    #[test]
    fn basic_values() {
        let e = l2(2);
        let x = seq(&e, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!((norm("lp:2", &x).value - 2f64.sqrt()).abs() < 1e-15);
        assert!((norm("lpw:2", &x).value - 1.0).abs() < 1e-12);
        assert!((norm("rad", &x).value - 2f64.sqrt()).abs() < 1e-12);
        assert!((norm("RAD", &x).value - 2f64.sqrt()).abs() < 1e-12);
        assert!((norm("cohen:2", &x).value - 2.0).abs() < 1e-12);
        assert_eq!(norm("cohen:1", &x).value, 2.0);
        assert_eq!(norm("linf", &x).value, 1.0);
        for c in [
            "lp:2", "lpw:2", "rad", "cohen:2", "cohen:1", "linf", "mid:2",
        ] {
            assert_witness(&norm(c, &x), &x);
        }
    }

    #[test]
    fn scalar_collapse() {
        let e = Arc::new(Space::p(1, Index::TWO).unwrap());
        let x = VecSeq::scalars(e, &[3.0, -4.0]).unwrap();
        for c in ["lp:2", "lpw:2", "lpu:2", "cohen:2", "mid:2", "rad", "RAD"] {
            assert!((norm(c, &x).value - 5.0).abs() < 1e-12, "{c}");
        }
        assert_eq!(norm("linf", &x).value, 4.0);
        assert_eq!(norm("cohen:1", &x).value, 7.0);
    }

    #[test]
    fn prefixes() {
        let e = Arc::new(Space::p(1, Index::ONE).unwrap());
        let x = VecSeq::scalars(e.clone(), &[1.0, 2.0, 3.0]).unwrap();
        let v: Vec<f64> = prefix_norms(&"lp:1".parse().unwrap(), &x, &OptConfig::default())
            .unwrap()
            .iter()
            .map(|c| c.value)
            .collect();
        assert_eq!(v, vec![1.0, 3.0, 6.0]);
        let x = VecSeq::scalars(e, &[2.0, 1.0]).unwrap();
        let v: Vec<f64> = prefix_norms(&ClassId::LInf, &x, &OptConfig::default())
            .unwrap()
            .iter()
            .map(|c| c.value)
            .collect();
        assert_eq!(v, vec![2.0, 2.0]);
    }

    #[test]
    fn coordinate_axiom_examples() {
        let cfg = OptConfig::default();
        let (l, r) =
            coordinate_axiom_check(&"lp:3".parse().unwrap(), &l2(2), &[3.0, 4.0], 2, 4, &cfg)
                .unwrap();
        assert_eq!((l, r), (5.0, 5.0));
        let (l, r) =
            coordinate_axiom_check(&"mid:2".parse().unwrap(), &l2(2), &[1.0, 0.0], 1, 2, &cfg)
                .unwrap();
        assert!((l - 1.0).abs() < 1e-12 && r == 1.0);
        let one = Arc::new(Space::p(1, Index::TWO).unwrap());
        let (l, r) = coordinate_axiom_check(&ClassId::Rad, &one, &[1.0], 3, 3, &cfg).unwrap();
        assert_eq!((l, r), (1.0, 1.0));
    }

    #[test]
    fn weak_norm_by_vertex_enumeration() {
        // E = l_inf^2 so E' = l_1^2 has vertices ±e_i: the weak norm is the
        // larger l_p norm of the two coordinate columns.
        let e = Arc::new(Space::p(2, Index::INFINITY).unwrap());
        let x = seq(&e, vec![vec![1.0, 2.0], vec![2.0, -1.0], vec![0.5, 0.5]]);
        let c = norm("lpw:3", &x);
        let col0 = lp_norm(&[1.0, 2.0, 0.5], Index::finite(3.0).unwrap());
        let col1 = lp_norm(&[2.0, -1.0, 0.5], Index::finite(3.0).unwrap());
        assert_eq!(c.value, col0.max(col1));
        assert_eq!(c.method, MethodTag::VertexEnum);
        assert_witness(&c, &x);
    }

    #[test]
    fn weak_norm_ascent_on_smooth_dual() {
        let e = Arc::new(Space::p(2, Index::finite(3.0).unwrap()).unwrap());
        let x = seq(&e, vec![vec![1.0, 0.3], vec![-0.2, 0.8]]);
        let c = norm("lpw:2", &x);
        assert_eq!(c.method, MethodTag::Ascent);
        let dual = e.dual();
        let bf = crate::optimize::brute_force_sup(
            &|phi| lp_norm(&evaluate(&x, phi), Index::TWO),
            &dual,
            20_000,
        )
        .unwrap();
        assert!(c.value >= bf.value - 1e-6);
        assert!(c.value <= bf.value * (1.0 + bf.band));
        assert_witness(&c, &x);
    }

    #[test]
    fn cohen_closed_forms_agree_with_pairing_sup() {
        let e = Arc::new(Space::weighted(Index::ONE, &[1.0, 2.0]).unwrap());
        let x = seq(&e, vec![vec![1.0, -1.0], vec![0.5, 2.0]]);
        let closed = norm("cohen:2", &x);
        assert_witness(&closed, &x);
        let cfg = OptConfig::default().with_method(Method::Ascent);
        let opt = class_norm(&"cohen:2".parse().unwrap(), &x, &cfg).unwrap();
        assert!((opt.value - closed.value).abs() < 1e-6 * closed.value);
    }

    #[test]
    fn rad_limits() {
        let e = Arc::new(Space::p(2, Index::ONE).unwrap());
        let x = VecSeq::new(e, vec![vec![1.0, 0.5]; 13]).unwrap();
        assert!(class_norm(&ClassId::Rad, &x, &OptConfig::default()).is_err());
        let cfg = OptConfig {
            rad_mc: Some(4000),
            ..OptConfig::default()
        };
        let c = class_norm(&ClassId::Rad, &x, &cfg).unwrap();
        assert_eq!(c.method, MethodTag::MonteCarlo);
        assert_eq!(c.bound, crate::optimize::Bound::Estimate);
        let c2 = class_norm(&ClassId::Rad, &x, &cfg).unwrap();
        assert_eq!(c.value.to_bits(), c2.value.to_bits());
    }

    #[test]
    fn class_ball_lmo_and_vertices() {
        let e = l2(2);
        let ball = ClassBall::new(&"lp:2".parse().unwrap(), e, 2, &OptConfig::default()).unwrap();
        let g = [1.0, 0.0, 0.0, 2.0];
        let y = ball.lmo(&g).unwrap();
        assert!((Ball::norm(&ball, &y).unwrap() - 1.0).abs() < 1e-12);
        assert!((dot(&g, &y) - 5f64.sqrt()).abs() < 1e-12);
        let e1 = Arc::new(Space::p(2, Index::ONE).unwrap());
        let b1 = ClassBall::new(
            &"lp:1".parse().unwrap(),
            e1.clone(),
            2,
            &OptConfig::default(),
        )
        .unwrap();
        assert_eq!(b1.extreme_points().unwrap().len(), 8);
        let binf = ClassBall::new(&ClassId::LInf, e1, 2, &OptConfig::default()).unwrap();
        assert_eq!(binf.extreme_points().unwrap().len(), 16);
    }
}
