//! Dual sequence classes: norms, the pairing between `X^dual(E')` and
//! `X(E)`, coordinate functionals and the bidual embedding.
//!
//! In finite dimensions `E''` is identified with `E`; `Space::dual` is an
//! exact involution, so no explicit canonical embedding appears.

use std::sync::Arc;

use crate::class::ClassId;
use crate::error::{Error, Result};
use crate::optimize::{
    brute_force_sup_norm, dot, gaussian_vec, maximize_over_seq_ball, rng_for, sup_linear, Ball,
    FnObjective, Method, MethodTag, NormCert, OptConfig, Witness,
};
use crate::seq::VecSeq;
use crate::seqnorm::{class_norm, lp_family, scalar_index, ClassBall};
use crate::space::Space;

/// Norm of `x` in `X^dual(E)`: the supremum of `Σ_j |φ_j(x_j)|` over the
/// unit ball of `X(E')`.
///
/// Known identities are used in `Auto` and `Exact` mode; `Ascent` forces the
/// optimizer on the outer supremum.
pub fn dual_norm(inner: &ClassId, x: &VecSeq, cfg: &OptConfig) -> Result<NormCert> {
    cfg.validate()?;
    let class = ClassId::dual(inner.clone())?;
    if x.is_zero() {
        return Ok(NormCert::exact(
            0.0,
            Witness::Sequence(vec![vec![0.0; x.dim()]; x.len()]),
        ));
    }
    if matches!(cfg.method, Method::Auto | Method::Exact) {
        if let Some(closed) = class.closed_form() {
            return class_norm(&closed, x, cfg);
        }
        if x.dim() == 1 {
            return Ok(lp_family(x, scalar_index(&class)));
        }
    }
    let dual = Arc::new(x.space().dual());
    sup_pairing(inner, &dual, x, cfg)
}

/// `sup Σ_j |φ_j(x_j)|` over `φ` in the unit ball of `class` on sequences of
/// `phi_space`. The witness is the optimal `φ`, sign-aligned so that every
/// term `φ_j(x_j)` is nonnegative.
pub fn sup_pairing(
    class: &ClassId,
    phi_space: &Arc<Space>,
    x: &VecSeq,
    cfg: &OptConfig,
) -> Result<NormCert> {
    if !class.flags().spherically_complete {
        return Err(Error::Hypothesis {
            result: "the pairing supremum".into(),
            class: class.to_string(),
            flag: "spherically complete".into(),
        });
    }
    if phi_space.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: phi_space.dim(),
        });
    }
    let ball = ClassBall::new(class, phi_space.clone(), x.len(), cfg)?;
    let c = x.data();
    let abs_pairing = |phi: &[f64]| -> f64 {
        let n = x.dim();
        phi.chunks(n)
            .zip(x.iter())
            .map(|(f, v)| dot(f, v).abs())
            .sum()
    };
    let cert = match cfg.method {
        Method::BruteForce => {
            let bf = brute_force_sup_norm(
                &abs_pairing,
                &|v| ball.norm(v).unwrap_or(f64::NAN),
                Ball::dim(&ball),
                cfg.grid_resolution,
            )?;
            NormCert::new(bf.value, Witness::Vector(bf.witness), MethodTag::BruteForce)
        }
        Method::Auto | Method::Exact if ball.extreme_points().is_some() => {
            let points = ball.extreme_points().unwrap_or_default();
            let mut best = (f64::NEG_INFINITY, Vec::new());
            for p in points {
                let v = abs_pairing(&p);
                if v > best.0 {
                    best = (v, p);
                }
            }
            NormCert::new(best.0, Witness::Vector(best.1), MethodTag::VertexEnum)
        }
        Method::Exact => {
            return Err(Error::Unsupported(format!(
                "no exact evaluation of the pairing supremum over the {class} ball on {}",
                phi_space.describe()
            )))
        }
        _ => {
            let (lower, w, upper) = sup_linear(c, &ball, cfg, norming_starts(x, phi_space))?;
            let mut cert = NormCert::new(lower, Witness::Vector(w), MethodTag::CuttingPlane);
            cert.upper = upper;
            cert
        }
    };
    let n = x.dim();
    let phi: Vec<Vec<f64>> = cert
        .witness_flat()
        .chunks(n)
        .zip(x.iter())
        .map(|(f, v)| {
            let s = if dot(f, v) < 0.0 { -1.0 } else { 1.0 };
            f.iter().map(|a| a * s).collect()
        })
        .collect();
    Ok(NormCert {
        witness: Witness::Sequence(phi),
        ..cert
    })
}

/// Starting points `φ_j = λ · w(x_j)` built from norming functionals.
fn norming_starts(x: &VecSeq, phi_space: &Space) -> Vec<Vec<f64>> {
    let base = phi_space.dual();
    let flat: Vec<f64> = x.iter().flat_map(|v| base.dual_witness(v)).collect();
    let mut starts = vec![flat];
    for (j, v) in x.iter().enumerate() {
        let mut s = vec![0.0; x.data().len()];
        s[j * x.dim()..(j + 1) * x.dim()].copy_from_slice(&base.dual_witness(v));
        starts.push(s);
    }
    starts
}

/// Both sides of the sign-absorption identity: the suprema over the unit
/// ball of `X(E')` of `|Σ_j φ_j(x_j)|` and of `Σ_j |φ_j(x_j)|`.
///
/// The two suprema are computed as separate optimization problems.
pub fn sup_equality_check(inner: &ClassId, x: &VecSeq, cfg: &OptConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    ClassId::dual(inner.clone())?;
    if x.is_zero() {
        return Ok((0.0, 0.0));
    }
    let dual = Arc::new(x.space().dual());
    let n = x.dim();
    let c = x.data();
    let plain = FnObjective::new(
        |phi: &[f64]| dot(phi, c).abs(),
        |phi: &[f64]| {
            let s = dot(phi, c);
            let sign = if s > 0.0 {
                1.0
            } else if s < 0.0 {
                -1.0
            } else {
                0.0
            };
            c.iter().map(|a| a * sign).collect()
        },
    );
    let absolute = FnObjective::new(
        |phi: &[f64]| {
            phi.chunks(n)
                .zip(x.iter())
                .map(|(f, v)| dot(f, v).abs())
                .sum()
        },
        |phi: &[f64]| {
            phi.chunks(n)
                .zip(x.iter())
                .flat_map(|(f, v)| {
                    let s = dot(f, v);
                    let sign = if s > 0.0 {
                        1.0
                    } else if s < 0.0 {
                        -1.0
                    } else {
                        0.0
                    };
                    v.iter().map(move |a| a * sign)
                })
                .collect()
        },
    );
    let ball = ClassBall::new(inner, dual.clone(), x.len(), cfg)?;
    let enumerable = ball.extreme_points().is_some();
    if cfg.method == Method::BruteForce || cfg.method == Method::Exact || enumerable {
        let p = maximize_over_seq_ball(&plain, inner, &dual, x.len(), cfg)?;
        let a = maximize_over_seq_ball(&absolute, inner, &dual, x.len(), cfg)?;
        return Ok((p.value, a.value));
    }
    // Both objectives are maxima of linear functionals: the plain one of
    // `±c`, the absolute one of `c` with the blocks of `x` sign-flipped.
    let starts = norming_starts(x, &dual);
    let (p, _, _) = sup_linear(c, &ball, cfg, starts.clone())?;
    let k = x.len();
    let mut a = f64::NEG_INFINITY;
    for mask in 0..1usize << (k - 1) {
        let flipped: Vec<f64> = x
            .iter()
            .enumerate()
            .flat_map(|(j, v)| {
                let s = if j > 0 && mask >> (j - 1) & 1 == 1 {
                    -1.0
                } else {
                    1.0
                };
                v.iter().map(move |t| s * t)
            })
            .collect();
        a = a.max(sup_linear(&flipped, &ball, cfg, starts.clone())?.0);
    }
    Ok((p, a))
}

/// `J(φ)(x) = Σ_j φ_j(x_j)`.
pub fn pairing_apply(phis: &VecSeq, x: &VecSeq) -> Result<f64> {
    if phis.len() != x.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: phis.len(),
        });
    }
    if phis.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: phis.dim(),
        });
    }
    if **phis.space() != x.space().dual() {
        return Err(Error::InvalidSpace(format!(
            "functionals live on {}, expected the dual of {}",
            phis.space().describe(),
            x.space().describe()
        )));
    }
    Ok(dot(phis.data(), x.data()))
}

/// Norm of `x ↦ Σ_j φ_j(x_j)` on length-`k` sequences in `X(E)`, together
/// with the norm of `φ` in `X^dual(E')`.
///
/// The operator norm is always computed by optimizing over the unit ball of
/// `X(E)`; the dual norm uses the identities of [`dual_norm`] when known.
pub fn functional_norm_as_dual_element(
    inner: &ClassId,
    space: &Arc<Space>,
    k: usize,
    phis: &VecSeq,
    cfg: &OptConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    if let Some(flag) = inner.flags().missing_for_dual_representable() {
        return Err(Error::Hypothesis {
            result: "the dual representation of functionals".into(),
            class: inner.to_string(),
            flag: flag.into(),
        });
    }
    if phis.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            found: phis.len(),
        });
    }
    if **phis.space() != space.dual() {
        return Err(Error::InvalidSpace(
            "functionals must live on the dual space".into(),
        ));
    }
    let op_cfg = match cfg.method {
        Method::Exact => cfg.clone(),
        _ => cfg.with_method(Method::Auto),
    };
    let op = if phis.is_zero() {
        0.0
    } else {
        sup_pairing(inner, space, phis, &op_cfg)?.value
    };
    let dn = dual_norm(inner, phis, cfg)?.value;
    Ok((op, dn))
}

/// Recovers `φ_j = f ∘ I_j` from a linear functional on length-`k`
/// sequences over `space`, after checking linearity on seeded random pairs.
pub fn coordinate_functionals(
    functional: &dyn Fn(&VecSeq) -> f64,
    space: &Arc<Space>,
    k: usize,
    seed: u64,
) -> Result<VecSeq> {
    let n = space.dim();
    let mut rng = rng_for(seed, 0xc0f);
    for _ in 0..4 {
        let a = VecSeq::from_flat(space.clone(), gaussian_vec(&mut rng, k * n))?;
        let b = VecSeq::from_flat(space.clone(), gaussian_vec(&mut rng, k * n))?;
        let t = gaussian_vec(&mut rng, 1)[0];
        let mix: Vec<f64> = a
            .data()
            .iter()
            .zip(b.data())
            .map(|(u, v)| t * u + v)
            .collect();
        let mix = VecSeq::from_flat(space.clone(), mix)?;
        let (fa, fb, fm) = (functional(&a), functional(&b), functional(&mix));
        let scale = 1.0 + (t * fa).abs() + fb.abs();
        if (fm - t * fa - fb).abs() > 1e-9 * scale || !fm.is_finite() {
            return Err(Error::Nonlinear(format!(
                "f(ta + b) = {fm} but t f(a) + f(b) = {}",
                t * fa + fb
            )));
        }
    }
    let mut data = Vec::with_capacity(k * n);
    for j in 1..=k {
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            data.push(functional(&VecSeq::unit(space.clone(), &e, j, k)?));
        }
    }
    VecSeq::from_flat(Arc::new(space.dual()), data)
}

/// `(‖x‖_{X(E)}, ‖x‖_{(X^dual)^dual(E)})`.
///
/// The outer supremum of the bidual norm is always optimized; only the inner
/// `X^dual(E')` norm may use a known identity.
pub fn bidual_gap(inner: &ClassId, x: &VecSeq, cfg: &OptConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    let flags = inner.flags();
    if !flags.linearly_stable {
        return Err(Error::Hypothesis {
            result: "the bidual embedding".into(),
            class: inner.to_string(),
            flag: "linearly stable".into(),
        });
    }
    let dual_class = ClassId::dual(inner.clone())?;
    ClassId::dual(dual_class.clone())?;
    let norm_x = class_norm(inner, x, cfg)?.value;
    if x.is_zero() {
        return Ok((norm_x, 0.0));
    }
    let dual = Arc::new(x.space().dual());
    let bidual = sup_pairing(&dual_class, &dual, x, cfg)?.value;
    Ok((norm_x, bidual))
}
