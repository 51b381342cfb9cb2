//! Suite bodies and the registry.

use std::sync::Arc;

use serde_json::Value;

use super::gen::{
    all_families, euclidean, idx, polyhedral, reindex, smooth, sum_type, sup_type, Family,
};
use super::{needs_oracle, SuiteDef, Trial};
use crate::class::ClassId;
use crate::dualize::{
    bidual_gap, coordinate_functionals, dual_norm, functional_norm_as_dual_element, pairing_apply,
    sup_equality_check, sup_pairing,
};
use crate::error::{Error, Result};
use crate::index::{lp_norm, Index};
use crate::json;
use crate::opideal::{
    adjoint, adjoint_duality_report, apply_elementwise, ideal_check, injectivity_probe, op_norm,
    reverse_duality_report, second_adjoint_check, summing_norm, DualityReport, LinOp,
};
use crate::optimize::{dot, Ball, Method, NormCert};
use crate::schema::{op_to_value, seq_to_value};
use crate::seq::VecSeq;
use crate::seqnorm::{class_norm, coordinate_axiom_check, prefix_norms, ClassBall};
use crate::space::Space;

fn parse_all(names: &[&str]) -> Vec<ClassId> {
    names
        .iter()
        .map(|s| s.parse().expect("static class descriptor"))
        .collect()
}

fn indices() -> Vec<Index> {
    vec![Index::ONE, idx("4/3"), Index::TWO, idx("4")]
}

fn ten_classes() -> Vec<ClassId> {
    parse_all(&[
        "lp:2", "linf", "c0", "c0w", "lpw:2", "lpu:2", "cohen:2", "mid:2", "rad", "RAD",
    ])
}

/// Draws the index of an indexed class for this instance.
fn vary_index(t: &mut Trial) -> ClassId {
    if t.class.index().is_some() {
        let p = t.gen.choose(&indices());
        t.class = reindex(&t.class, p);
        t.record.class = t.class.to_string();
    }
    t.class.clone()
}

fn with_euclid(mut f: Vec<Family>, p: Option<Index>) -> Vec<Family> {
    if p == Some(Index::TWO) {
        f.extend(euclidean());
    }
    f
}

/// Families on which every norm of `class` is cheap to evaluate.
fn norm_families(class: &ClassId) -> Vec<Family> {
    match class {
        ClassId::Cohen(p) | ClassId::Mid(p) => with_euclid(polyhedral(), Some(*p)),
        _ => all_families(),
    }
}

fn abs_pairing(phi: &VecSeq, x: &VecSeq) -> f64 {
    phi.iter().zip(x.iter()).map(|(f, v)| dot(f, v).abs()).sum()
}

/// Grid cross-checks for the optimizer-based class norms.
fn oracle_class_norm(
    t: &mut Trial,
    key: &str,
    class: &ClassId,
    x: &VecSeq,
    cert: &NormCert,
) -> Result<()> {
    if !needs_oracle(cert) || x.len() > 2 {
        return Ok(());
    }
    let dual = Arc::new(x.space().dual());
    match class {
        ClassId::LpWeak(p) | ClassId::LpUnc(p) => {
            let p = *p;
            let obj = |phi: &[f64]| {
                let v: Vec<f64> = x.iter().map(|xj| dot(phi, xj)).collect();
                lp_norm(&v, p)
            };
            t.oracle_space(key, cert, &obj, &dual)
        }
        ClassId::Cohen(p) => {
            let obj = |phi: &VecSeq| abs_pairing(phi, x);
            let ball = ClassId::LpWeak(p.conjugate());
            t.oracle_seq(key, cert.value, true, &obj, &ball, &dual, x.len())
        }
        ClassId::Mid(p) => {
            let p = *p;
            let m = cert.notes.get("m").copied().unwrap_or(x.len() as f64) as usize;
            let obj = |phi: &VecSeq| {
                let v: Vec<f64> = phi
                    .iter()
                    .flat_map(|f| x.iter().map(move |xj| dot(f, xj)))
                    .collect();
                lp_norm(&v, p)
            };
            t.oracle_seq(key, cert.value, true, &obj, &ClassId::LpWeak(p), &dual, m)
        }
        _ => Ok(()),
    }
}

fn ball_is_optimized(class: &ClassId, space: &Arc<Space>, k: usize, t: &Trial) -> Result<bool> {
    let ball = ClassBall::new(class, space.clone(), k, t.cfg())?;
    Ok(ball.extreme_points().is_none())
}

fn axioms(t: &mut Trial) -> Result<()> {
    let class = vary_index(t);
    let (n, k) = (t.dim(), t.length());
    let space = t.gen.space_from(&norm_families(&class), n)?;
    let x = t.gen.seq(&space, k)?;
    t.describe(format!("{}, k = {k}", space.describe()));
    t.input("x", seq_to_value(&x));
    let cfg = t.cfg().clone();
    let c = class_norm(&class, &x, &cfg)?;
    t.cert("norm", &c);
    let tol = t.tol_for(&[&c]);
    t.le("axiom (i): max_j |x_j| <= norm", x.max_norm(), c.value, tol);
    oracle_class_norm(t, "norm", &class, &x, &c)?;

    let j = 1 + t.gen.below(k);
    let v = t.gen.vector(n);
    let unit = VecSeq::unit(space.clone(), &v, j, k)?;
    t.input("v", json::nums(&v));
    t.input("j", Value::from(j));
    let cu = class_norm(&class, &unit, &cfg)?;
    let rhs = space.norm(&v)?;
    t.cert("unit_norm", &cu);
    t.qty("norm_v", rhs);
    let tol = t.tol_for(&[&cu]);
    t.eq("axiom (ii): |v e_j| = |v|", cu.value, rhs, tol);
    oracle_class_norm(t, "unit_norm", &class, &unit, &cu)
}

/// `‖x‖` in dimension one, computed directly from the class definitions.
fn scalar_value(class: &ClassId, a: &[f64]) -> Option<f64> {
    let abs: Vec<f64> = a.iter().map(|v| v.abs()).collect();
    let sq = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    Some(match class {
        ClassId::Lp(p)
        | ClassId::LpWeak(p)
        | ClassId::LpUnc(p)
        | ClassId::Cohen(p)
        | ClassId::Mid(p) => lp_norm(&abs, *p),
        ClassId::LInf | ClassId::C0 | ClassId::C0w => lp_norm(&abs, Index::INFINITY),
        ClassId::Rad | ClassId::RadSup => sq,
        ClassId::Dual(_) => return None,
    })
}

fn class_properties(t: &mut Trial) -> Result<()> {
    let class = vary_index(t);
    let (n, k) = (t.dim(), t.length());
    let space = t.gen.space_from(&norm_families(&class), n)?;
    let x = t.gen.seq(&space, k)?;
    t.describe(format!("{}, k = {k}", space.describe()));
    t.input("x", seq_to_value(&x));
    let cfg = t.cfg().clone();
    let c = class_norm(&class, &x, &cfg)?;
    t.cert("norm", &c);
    oracle_class_norm(t, "norm", &class, &x, &c)?;

    let flipped = t.gen.sign_flip(&x)?;
    t.input("flipped", seq_to_value(&flipped));
    let cf = class_norm(&class, &flipped, &cfg)?;
    t.cert("flipped_norm", &cf);
    let tol = t.tol_for(&[&c, &cf]);
    t.eq("sign invariance", c.value, cf.value, tol);

    if class.flags().finitely_determined {
        let prefixes = prefix_norms(&class, &x, &cfg)?;
        for (m, w) in prefixes.windows(2).enumerate() {
            t.qty(&format!("prefix_{}", m + 1), w[0].value);
            let tol = t.tol_for(&[&w[0], &w[1]]);
            t.le(
                &format!("prefix {} <= prefix {}", m + 1, m + 2),
                w[0].value,
                w[1].value,
                tol,
            );
        }
        let last = prefixes.last().expect("k >= 1");
        let tol = t.tol_for(&[last, &c]);
        t.eq("full prefix = norm", last.value, c.value, tol);
    }

    let line = t.gen.space_from(&all_families(), 1)?;
    let a = t.gen.vector(k);
    let scalars = VecSeq::scalars(line.clone(), &a)?;
    let s = line.norm_of(&[1.0]);
    let expected = scalar_value(&class, &a).expect("non-dual class") * s;
    let cs = class_norm(&class, &scalars, &cfg)?;
    t.input("scalars", seq_to_value(&scalars));
    t.cert("scalar_norm", &cs);
    t.qty("scalar_expected", expected);
    let tol = t.tol_for(&[&cs]);
    t.eq("scalar collapse", cs.value, expected, tol);

    let j = 1 + t.gen.below(k);
    let v = t.gen.vector(n);
    let (lhs, rhs) = coordinate_axiom_check(&class, &space, &v, j, k, &cfg)?;
    t.qty("coordinate_lhs", lhs);
    t.qty("coordinate_rhs", rhs);
    let tol = t.tol_for(&[&c]);
    t.eq("coordinate axiom", lhs, rhs, tol);
    Ok(())
}

fn dual_identities(t: &mut Trial) -> Result<()> {
    let inner = t.class.clone();
    let families = match &inner {
        ClassId::LpWeak(p) | ClassId::LpUnc(p) => with_euclid(sum_type(), Some(*p)),
        _ => all_families(),
    };
    let (n, k) = (t.dim(), t.length());
    let space = t.gen.space_from(&families, n)?;
    let x = t.gen.seq(&space, k)?;
    let closed_class = ClassId::dual(inner.clone())?
        .closed_form()
        .ok_or_else(|| Error::Unsupported(format!("dual({inner}) has no closed form")))?;
    t.describe(format!(
        "{}, k = {k}, closed form {closed_class}",
        space.describe()
    ));
    t.input("x", seq_to_value(&x));
    let cfg = t.cfg().clone();
    let closed = dual_norm(&inner, &x, &cfg.with_method(Method::Auto))?;
    let forced = dual_norm(&inner, &x, &cfg.with_method(Method::Ascent))?;
    t.cert("closed", &closed);
    t.cert("ascent", &forced);
    if !closed.is_exact() {
        return Err(Error::Unsupported(format!(
            "closed form {closed_class} was not evaluated exactly"
        )));
    }
    let tol = t.ascent_tol();
    t.eq_relative(
        "closed form = forced ascent",
        closed.value,
        forced.value,
        tol,
    );
    if let Some(u) = forced.upper {
        t.le("closed form <= ascent upper bound", closed.value, u, tol);
    }
    let dual = Arc::new(space.dual());
    let obj = |phi: &VecSeq| abs_pairing(phi, &x);
    t.oracle_seq(
        "ascent",
        forced.value,
        needs_oracle(&forced),
        &obj,
        &inner,
        &dual,
        k,
    )
}

fn lemma_sup(t: &mut Trial) -> Result<()> {
    let class = vary_index(t);
    let p = class.index();
    let mid_off_two = matches!(class, ClassId::Mid(q) if q != Index::TWO);
    let n = if mid_off_two { 1 } else { t.dim() };
    let k = t.length();
    let families = match &class {
        ClassId::LpWeak(_) | ClassId::LpUnc(_) => with_euclid(polyhedral(), p),
        ClassId::Cohen(q) if !q.is_one() => with_euclid(sup_type(), p),
        ClassId::Mid(_) if !mid_off_two => euclidean(),
        _ => all_families(),
    };
    let space = t.gen.space_from(&families, n)?;
    let x = if t.instance == 0 {
        VecSeq::zeros(space.clone(), k)
    } else {
        t.gen.seq(&space, k)?
    };
    t.describe(format!("{}, k = {k}", space.describe()));
    t.input("x", seq_to_value(&x));
    let cfg = t.cfg().clone();
    let (plain, absolute) = sup_equality_check(&class, &x, &cfg)?;
    t.qty("plain", plain);
    t.qty("absolute", absolute);
    let tol = t.ascent_tol();
    t.eq("plain = absolute", plain, absolute, tol);
    let dual = Arc::new(space.dual());
    let optimized = ball_is_optimized(&class, &dual, k, t)?;
    let plain_obj = |phi: &VecSeq| pairing_apply(phi, &x).map(f64::abs).unwrap_or(f64::NAN);
    t.oracle_seq("plain", plain, optimized, &plain_obj, &class, &dual, k)?;
    let abs_obj = |phi: &VecSeq| abs_pairing(phi, &x);
    t.oracle_seq("absolute", absolute, optimized, &abs_obj, &class, &dual, k)
}

fn dual_class_properties(t: &mut Trial) -> Result<()> {
    let inner = t.class.clone();
    let families = match &inner {
        ClassId::LpWeak(p) | ClassId::LpUnc(p) => with_euclid(sum_type(), Some(*p)),
        ClassId::Cohen(_) => sup_type(),
        _ => all_families(),
    };
    let (n, k) = (t.dim(), t.length());
    let space = t.gen.space_from(&families, n)?;
    let x = t.gen.seq(&space, k)?;
    let dual = Arc::new(space.dual());
    let phi = t.gen.seq(&dual, k)?;
    t.describe(format!("{}, k = {k}", space.describe()));
    t.input("x", seq_to_value(&x));
    t.input("phi", seq_to_value(&phi));
    let cfg = t.cfg().clone();
    let d = dual_norm(&inner, &x, &cfg)?;
    t.cert("dual_norm", &d);

    let flipped = t.gen.sign_flip(&x)?;
    let df = dual_norm(&inner, &flipped, &cfg)?;
    t.cert("flipped_dual_norm", &df);
    let tol = t.tol_for(&[&d, &df]);
    t.eq("sign invariance", d.value, df.value, tol);

    let mut prev: Option<NormCert> = None;
    for m in 1..=k {
        let c = dual_norm(&inner, &x.prefix(m), &cfg)?;
        if let Some(pc) = &prev {
            let tol = t.tol_for(&[pc, &c]);
            t.le(
                &format!("prefix {} <= prefix {m}", m - 1),
                pc.value,
                c.value,
                tol,
            );
        }
        prev = Some(c);
    }

    let phi_norm = class_norm(&inner, &phi, &cfg)?;
    t.cert("phi_norm", &phi_norm);
    let pairing = abs_pairing(&phi, &x);
    t.qty("abs_pairing", pairing);
    let tol = t.tol_for(&[&d, &phi_norm]);
    t.le("holder bound", pairing, phi_norm.value * d.value, tol);
    Ok(())
}

fn functional_representation(t: &mut Trial) -> Result<()> {
    let inner = t.class.clone();
    let families = match &inner {
        ClassId::LpUnc(p) | ClassId::LpWeak(p) => with_euclid(sup_type(), Some(*p)),
        _ => all_families(),
    };
    let (n, k) = (t.dim(), t.length());
    let space = t.gen.space_from(&families, n)?;
    let dual = Arc::new(space.dual());
    let phis = t.gen.seq(&dual, k)?;
    t.describe(format!("{}, k = {k}", space.describe()));
    t.input("phi", seq_to_value(&phis));
    let cfg = t.cfg().clone();
    let (op, dn) = functional_norm_as_dual_element(&inner, &space, k, &phis, &cfg)?;
    t.qty("functional_norm", op);
    t.qty("dual_norm", dn);
    let tol = t.ascent_tol();
    t.eq_relative("functional norm = dual norm", op, dn, tol);
    let optimized = ball_is_optimized(&inner, &space, k, t)?;
    let obj = |x: &VecSeq| abs_pairing(&phis, x);
    t.oracle_seq("functional_norm", op, optimized, &obj, &inner, &space, k)?;

    let f = |x: &VecSeq| pairing_apply(&phis, x).unwrap_or(f64::NAN);
    let psi = coordinate_functionals(&f, &space, k, t.spec.seed ^ t.index as u64)?;
    let recovered = psi
        .data()
        .iter()
        .zip(phis.data())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    t.qty("max_coordinate_error", recovered);
    let tol = t.exact_tol();
    t.le("coordinate functionals recover phi", recovered, 0.0, tol);
    let y = t.gen.seq(&space, k)?;
    let (lhs, rhs) = (pairing_apply(&psi, &y)?, f(&y));
    t.input("y", seq_to_value(&y));
    t.eq("pairing reproduces the functional", lhs, rhs, tol);
    Ok(())
}

fn bidual(t: &mut Trial) -> Result<()> {
    let inner = t.class.clone();
    let families = match &inner {
        ClassId::LpWeak(p) | ClassId::LpUnc(p) => with_euclid(sup_type(), Some(*p)),
        _ => all_families(),
    };
    let (n, k) = (t.dim(), t.length());
    let space = t.gen.space_from(&families, n)?;
    let x = t.gen.seq(&space, k)?;
    t.describe(format!("{}, k = {k}", space.describe()));
    t.input("x", seq_to_value(&x));
    let cfg = t.cfg().clone();
    let (nx, nb) = bidual_gap(&inner, &x, &cfg)?;
    t.qty("norm", nx);
    t.qty("bidual_norm", nb);
    let tol = t.ascent_tol();
    t.le("bidual norm <= norm", nb, nx, tol);
    if inner.flags().reflexive {
        t.le("norm <= bidual norm", nx, nb, tol);
    }
    let dual_class = ClassId::dual(inner.clone())?;
    let dual = Arc::new(space.dual());
    let obj = |phi: &VecSeq| abs_pairing(phi, &x);
    t.oracle_seq("bidual_norm", nb, true, &obj, &dual_class, &dual, k)
}

/// Spaces for a summing-norm instance with `X` on the domain side.
fn domain_families(x: &ClassId) -> Vec<Family> {
    match x {
        ClassId::LpWeak(p) | ClassId::LpUnc(p) => with_euclid(sup_type(), Some(*p)),
        _ => all_families(),
    }
}

fn record_report(t: &mut Trial, r: &DualityReport) {
    t.cert(&r.left.0, &r.left.1);
    t.cert(&r.right.0, &r.right.1);
    t.input(
        "hypotheses",
        Value::Array(
            r.hypotheses
                .iter()
                .map(|h| Value::String(h.clone()))
                .collect(),
        ),
    );
    let tol = t.tol_for(&[&r.left.1, &r.right.1]);
    for c in &r.checks {
        t.le(&c.label, c.lhs, c.rhs, tol);
    }
}

/// Oracle for `‖T‖_{X;Y}` given its value.
fn oracle_summing(
    t: &mut Trial,
    key: &str,
    cert: &NormCert,
    x: &ClassId,
    y: &ClassId,
    op: &LinOp,
    k: usize,
) -> Result<()> {
    let cfg = t.cfg().with_method(Method::Auto);
    let obj = |s: &VecSeq| {
        apply_elementwise(op, s)
            .and_then(|ts| class_norm(y, &ts, &cfg))
            .map(|c| c.value)
            .unwrap_or(f64::NAN)
    };
    t.oracle_seq(key, cert.value, needs_oracle(cert), &obj, x, op.domain(), k)
}

fn adjoint_duality(t: &mut Trial) -> Result<()> {
    let x = t.class.clone();
    let y = ClassId::lp(t.gen.choose(&indices()));
    t.record.class = format!("{x} ; {y}");
    let (n, m, k) = (t.dim(), t.dim(), t.length());
    let e = t.gen.space_from(&domain_families(&x), n)?;
    let f = t.gen.space_from(&all_families(), m)?;
    let op = t.gen.op(&e, &f)?;
    t.describe(format!("{} -> {}, k = {k}", e.describe(), f.describe()));
    t.input("operator", op_to_value(&op));
    let cfg = t.cfg().clone();
    let r = adjoint_duality_report(&x, &y, &op, k, &cfg)?;
    record_report(t, &r);
    oracle_summing(t, "a", &r.left.1, &x, &y, &op, k)?;
    let (dx, dy) = (ClassId::dual(x)?, ClassId::dual(y)?);
    oracle_summing(t, "b", &r.right.1, &dy, &dx, &adjoint(&op), k)
}

fn reverse_duality(t: &mut Trial) -> Result<()> {
    let x = t.class.clone();
    let y = ClassId::lp(t.gen.choose(&indices()));
    t.record.class = format!("{x} ; {y}");
    let codomain_families = match &x {
        ClassId::LpWeak(p) | ClassId::LpUnc(p) => with_euclid(sum_type(), Some(*p)),
        _ => all_families(),
    };
    let (n, m, k) = (t.dim(), t.dim(), t.length());
    let e = t.gen.space_from(&all_families(), n)?;
    let f = t.gen.space_from(&codomain_families, m)?;
    let op = t.gen.op(&e, &f)?;
    t.describe(format!("{} -> {}, k = {k}", e.describe(), f.describe()));
    t.input("operator", op_to_value(&op));
    let cfg = t.cfg().clone();
    let r = reverse_duality_report(&x, &y, &op, k, &cfg)?;
    record_report(t, &r);
    let (dx, dy) = (ClassId::dual(x.clone())?, ClassId::dual(y.clone())?);
    oracle_summing(t, "c", &r.left.1, &dy, &dx, &op, k)?;
    oracle_summing(t, "d", &r.right.1, &x, &y, &adjoint(&op), k)
}

fn second_adjoint(t: &mut Trial) -> Result<()> {
    let x = t.class.clone();
    let y = ClassId::lp(t.gen.choose(&indices()));
    t.record.class = format!("{x} ; {y}");
    let (n, m, k) = (t.dim(), t.dim(), t.length());
    let (dom, cod) = if t.instance.is_multiple_of(2) {
        (vec![Family::Polytope], vec![Family::Polytope])
    } else {
        (with_euclid(polyhedral(), x.index()), all_families())
    };
    let e = t.gen.space_from(&dom, n)?;
    let f = t.gen.space_from(&cod, m)?;
    let op = t.gen.op(&e, &f)?;
    t.describe(format!("{} -> {}, k = {k}", e.describe(), f.describe()));
    t.input("operator", op_to_value(&op));
    let t2 = adjoint(&adjoint(&op));
    let same = t2 == op;
    t.qty("second_adjoint_matches", if same { 1.0 } else { 0.0 });
    t.le(
        "second adjoint reproduces the operator",
        if same { 0.0 } else { 1.0 },
        0.0,
        0.0,
    );
    let cfg = t.cfg().clone();
    let (a, e2) = second_adjoint_check(&x, &y, &op, k, &cfg)?;
    t.cert("a", &a);
    t.cert("e", &e2);
    let tol = t.exact_tol();
    t.eq("a = e", a.value, e2.value, tol);
    oracle_summing(t, "a", &a, &x, &y, &op, k)
}

fn injectivity(t: &mut Trial) -> Result<()> {
    let y = t.class.clone();
    let x = ClassId::lp(t.gen.choose(&indices()));
    t.record.class = format!("{x} ; {y}");
    let (n, m, k) = (t.dim(), t.dim(), t.length());
    let e = t.gen.space_from(&all_families(), n)?;
    let f = t.gen.space_from(&polyhedral(), m)?;
    let op = t.gen.op(&e, &f)?;
    t.describe(format!("{} -> {}, k = {k}", e.describe(), f.describe()));
    t.input("operator", op_to_value(&op));
    let cfg = t.cfg().clone();
    let (a, aj) = injectivity_probe(&x, &y, &op, k, &cfg)?;
    t.cert("norm", &a);
    t.cert("embedded_norm", &aj);
    let tol = t.tol_for(&[&a, &aj]);
    t.eq(
        "embedding leaves the summing norm unchanged",
        a.value,
        aj.value,
        tol,
    );
    oracle_summing(t, "norm", &a, &x, &y, &op, k)
}

fn ideal(t: &mut Trial) -> Result<()> {
    let x = t.class.clone();
    let y = ClassId::lp(t.gen.choose(&indices()));
    t.record.class = format!("{x} ; {y}");
    let families = if t.gen.coin() {
        polyhedral()
    } else {
        euclidean()
    };
    let dom_families = match &x {
        ClassId::LpWeak(p) | ClassId::LpUnc(p) if *p != Index::TWO => polyhedral(),
        _ => families.clone(),
    };
    let k = t.length();
    let dims: Vec<usize> = (0..4).map(|_| t.dim()).collect();
    let d = t.gen.space_from(&dom_families, dims[0])?;
    let e = t.gen.space_from(&families, dims[1])?;
    let f = t.gen.space_from(&families, dims[2])?;
    let g = t.gen.space_from(&families, dims[3])?;
    let b = t.gen.op(&d, &e)?;
    let op = t.gen.op(&e, &f)?;
    let a = t.gen.op(&f, &g)?;
    t.describe(format!(
        "{} -> {} -> {} -> {}, k = {k}",
        d.describe(),
        e.describe(),
        f.describe(),
        g.describe()
    ));
    t.input("a", op_to_value(&a));
    t.input("t", op_to_value(&op));
    t.input("b", op_to_value(&b));
    let cfg = t.cfg().clone();

    let nt = op_norm(&op, &cfg)?;
    let nta = op_norm(&adjoint(&op), &cfg)?;
    t.cert("op_norm", &nt);
    t.cert("adjoint_op_norm", &nta);
    t.eq("adjoint is an isometry", nt.value, nta.value, 1e-6);

    let (rhs, lhs) = ideal_check(&x, &y, &a, &op, &b, k, &cfg)?;
    t.cert("composite", &lhs);
    t.qty("bound", rhs);
    let tol = t.ascent_tol();
    t.le("ideal property", lhs.value, rhs, tol);
    let atb = a.compose(&op.compose(&b)?)?;
    oracle_summing(t, "composite", &lhs, &x, &y, &atb, k)?;

    if k < super::MAX_SUITE_LENGTH {
        let s1 = summing_norm(&x, &y, &b, k, &cfg)?;
        let s2 = summing_norm(&x, &y, &b, k + 1, &cfg)?;
        t.cert("summing_k", &s1);
        t.cert("summing_k_plus_1", &s2);
        let tol = t.tol_for(&[&s1, &s2]);
        t.le("monotone in k", s1.value, s2.value, tol);
    }
    Ok(())
}

/// Frozen reference values.
fn known_values(t: &mut Trial) -> Result<()> {
    let cfg = t.cfg().clone();
    let (n, k) = (t.dim(), t.length());
    let space = t.gen.space_from(&all_families(), n)?;
    let x = t.gen.seq(&space, k)?;
    t.input("x", seq_to_value(&x));
    let cohen = class_norm(&ClassId::Cohen(Index::ONE), &x, &cfg)?;
    let l1 = class_norm(&ClassId::Lp(Index::ONE), &x, &cfg)?;
    t.cert("cohen_1", &cohen);
    t.cert("lp_1", &l1);
    let tol = t.exact_tol();
    t.eq("cohen:1 = lp:1", cohen.value, l1.value, tol);

    let l2 = |n| Arc::new(Space::p(n, Index::TWO).expect("positive dimension"));
    let line = Arc::new(Space::p(1, Index::TWO)?);
    let seq = |s: &Arc<Space>, v: Vec<Vec<f64>>| VecSeq::new(s.clone(), v);
    let case = t.instance % 8;
    let (label, value, expected, exact) = match case {
        0 => {
            let c = summing_norm(
                &"lpw:2".parse()?,
                &"lp:2".parse()?,
                &LinOp::identity(l2(2)),
                2,
                &cfg,
            )?;
            (
                "identity, lpw:2 -> lp:2, k = 2",
                c.value,
                2f64.sqrt(),
                false,
            )
        }
        1 => {
            let x = seq(&l2(2), vec![vec![3.0, 4.0], vec![0.0, 0.0]])?;
            (
                "lp:2 of ((3,4),(0,0))",
                class_norm(&"lp:2".parse()?, &x, &cfg)?.value,
                5.0,
                true,
            )
        }
        2 => {
            let x = VecSeq::scalars(line.clone(), &[1.0, 2.0, 3.0])?;
            (
                "dual(linf) of (1,2,3)",
                dual_norm(&ClassId::LInf, &x, &cfg)?.value,
                6.0,
                true,
            )
        }
        3 => {
            let x = seq(&l2(2), vec![vec![1.0, 0.0], vec![0.0, 1.0]])?;
            (
                "rad of (e1,e2)",
                class_norm(&ClassId::Rad, &x, &cfg)?.value,
                2f64.sqrt(),
                true,
            )
        }
        4 => {
            let x = VecSeq::scalars(line.clone(), &[1.0, 2.0, 3.0])?;
            let v = dual_norm(&ClassId::Lp(Index::ONE), &x, &cfg)?.value;
            ("dual(lp:1) of (1,2,3)", v, 3.0, true)
        }
        5 => {
            let x = seq(&l2(2), vec![vec![1.0, 0.0], vec![0.0, 2.0]])?;
            let v = dual_norm(&ClassId::Lp(Index::TWO), &x, &cfg)?.value;
            ("dual(lp:2) of (e1, 2 e2)", v, 5f64.sqrt(), true)
        }
        6 => {
            let x = VecSeq::scalars(line.clone(), &[1.0, -1.0])?;
            let (plain, _) = sup_equality_check(&ClassId::LInf, &x, &cfg)?;
            (
                "plain supremum over the linf ball, x = (1,-1)",
                plain,
                2.0,
                true,
            )
        }
        _ => {
            let x = VecSeq::scalars(line.clone(), &[1.0, 1.0])?;
            let (_, b) = bidual_gap(&ClassId::Lp(Index::ONE), &x, &cfg)?;
            ("bidual lp:1 norm of (1,1)", b, 2.0, false)
        }
    };
    t.describe(label);
    t.qty("value", value);
    t.qty("expected", expected);
    let tol = if exact { t.exact_tol() } else { t.ascent_tol() };
    t.eq(label, value, expected, tol);
    Ok(())
}

fn mid_chain(t: &mut Trial) -> Result<()> {
    let p = t.class.index().unwrap_or(Index::TWO);
    let euclid = p == Index::TWO;
    let n = if euclid { t.dim() } else { 1 };
    let k = t.length();
    let families = if euclid { euclidean() } else { all_families() };
    let space = t.gen.space_from(&families, n)?;
    let x = t.gen.seq(&space, k)?;
    t.describe(format!("{}, k = {k}", space.describe()));
    t.input("x", seq_to_value(&x));
    let cfg = t.cfg().clone();
    let lp = class_norm(&ClassId::Lp(p), &x, &cfg)?;
    let mid = dual_norm(&ClassId::Mid(p.conjugate()), &x, &cfg)?;
    let cohen = class_norm(&ClassId::Cohen(p), &x, &cfg)?;
    t.cert("lp", &lp);
    t.cert("dual_mid", &mid);
    t.cert("cohen", &cohen);
    let tol = t.tol_for(&[&lp, &mid, &cohen]);
    t.le("lp <= dual(mid)", lp.value, mid.value, tol);
    t.le("dual(mid) <= cohen", mid.value, cohen.value, tol);
    Ok(())
}

/// Cross-checks representative optimizer paths against the grid oracle.
fn oracle(t: &mut Trial) -> Result<()> {
    let class = t.class.clone();
    let cfg = t.cfg().clone();
    let p = class.index().unwrap_or(Index::TWO);
    let k = 1 + t.gen.below(2);
    let n = if k == 1 { 1 + t.gen.below(3) } else { 1 };
    match &class {
        ClassId::LpWeak(_) | ClassId::LpUnc(_) => {
            let n = 2 + t.gen.below(2);
            let space = t.gen.space_from(&smooth(), n)?;
            let x = t.gen.seq(&space, k)?;
            t.describe(format!("{}, k = {k}", space.describe()));
            t.input("x", seq_to_value(&x));
            let c = class_norm(&class, &x, &cfg.with_method(Method::Ascent))?;
            t.cert("norm", &c);
            oracle_class_norm(t, "norm", &class, &x, &c)?;
        }
        ClassId::Lp(_) => {
            let space = t.gen.space_from(&all_families(), n)?;
            let x = t.gen.seq(&space, k)?;
            t.describe(format!("dual({class}) on {}, k = {k}", space.describe()));
            t.input("x", seq_to_value(&x));
            let dual = Arc::new(space.dual());
            let c = sup_pairing(&class, &dual, &x, &cfg.with_method(Method::Ascent))?;
            t.cert("dual_norm", &c);
            let obj = |phi: &VecSeq| abs_pairing(phi, &x);
            t.oracle_seq("dual_norm", c.value, true, &obj, &class, &dual, k)?;
        }
        ClassId::Cohen(_) | ClassId::Mid(_) => {
            let space = t
                .gen
                .space_from(&[Family::P(Index::INFINITY), Family::Polytope], n)?;
            let x = t.gen.seq(&space, k)?;
            t.describe(format!("{}, k = {k}", space.describe()));
            t.input("x", seq_to_value(&x));
            let cfg = cfg.with_method(Method::Ascent);
            let cfg = crate::optimize::OptConfig {
                mid_max_m: k,
                ..cfg
            };
            let c = class_norm(&class, &x, &cfg)?;
            t.cert("norm", &c);
            oracle_class_norm(t, "norm", &class, &x, &c)?;
        }
        _ => {}
    }
    let (ne, nf) = (1 + t.gen.below(3), 1 + t.gen.below(3));
    let e = t.gen.space_from(&smooth(), ne)?;
    let f = t.gen.space_from(&smooth(), nf)?;
    let op = t.gen.op(&e, &f)?;
    t.input("operator", op_to_value(&op));
    let c = op_norm(&op, &cfg.with_method(Method::Ascent))?;
    t.cert("op_norm", &c);
    let obj = |v: &[f64]| f.norm_of(&op.apply(v));
    t.oracle_space("op_norm", &c, &obj, &e)?;

    let ke = 1 + t.gen.below(2);
    let ne = if ke == 1 { 1 + t.gen.below(3) } else { 1 };
    let e = t.gen.space_from(&euclidean(), ne)?;
    let nf = 1 + t.gen.below(3);
    let f = t.gen.space_from(&all_families(), nf)?;
    let op = t.gen.op(&e, &f)?;
    let x = ClassId::LpWeak(Index::TWO);
    let y = ClassId::lp(p);
    t.input("summing_operator", op_to_value(&op));
    let s = summing_norm(&x, &y, &op, ke, &cfg.with_method(Method::Ascent))?;
    t.cert("summing_norm", &s);
    oracle_summing(t, "summing_norm", &s, &x, &y, &op, ke)
}

pub(super) static REGISTRY: &[SuiteDef] = &[
    SuiteDef {
        name: "axioms",
        result: "sequence-class axioms: norm dominates coordinates, coordinate sequences keep their norm",
        operations: &["norm", "class_norm", "maximize_over_ball", "maximize_over_seq_ball", "brute_force_sup"],
        trials: 50,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: ten_classes,
        body: axioms,
    },
    SuiteDef {
        name: "class-properties",
        result: "sign invariance, monotone prefixes and scalar collapse of class norms",
        operations: &["class_norm", "prefix_norms", "coordinate_axiom_check", "conjugate_index"],
        trials: 20,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: ten_classes,
        body: class_properties,
    },
    SuiteDef {
        name: "dual-identities",
        result: "closed forms of dual classes agree with the optimized supremum",
        operations: &["dual_norm", "dual_space", "extreme_points", "maximize_over_seq_ball"],
        trials: 50,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: || {
            parse_all(&[
                "lp:4/3", "lp:2", "lp:4", "lp:1", "linf", "lpw:1", "lpw:4/3", "lpw:2", "lpw:4",
            ])
        },
        body: dual_identities,
    },
    SuiteDef {
        name: "lemma-2.2",
        result: "plain and absolute pairing suprema agree for spherically complete classes",
        operations: &["sup_equality_check", "pairing_apply", "maximize_over_seq_ball"],
        trials: 50,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: || parse_all(&["lp:2", "linf", "c0", "c0w", "lpw:2", "lpu:2", "cohen:2", "mid:2"]),
        body: lemma_sup,
    },
    SuiteDef {
        name: "proposition-2.5",
        result: "dual classes are sign invariant, finitely determined and satisfy the pairing bound",
        operations: &["dual_norm", "class_norm"],
        trials: 20,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: || parse_all(&["lp:4/3", "lp:1", "linf", "lpw:2", "lpw:4", "cohen:4/3"]),
        body: dual_class_properties,
    },
    SuiteDef {
        name: "theorem-2.8",
        result: "functionals on a dual-representable class are its dual-class elements",
        operations: &["functional_norm_as_dual_element", "coordinate_functionals", "pairing_apply"],
        trials: 30,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: || parse_all(&["lp:4/3", "lp:2", "lp:4", "lp:1", "lpu:4/3", "lpu:2", "lpu:4"]),
        body: functional_representation,
    },
    SuiteDef {
        name: "mid-chain",
        result: "inclusion chain between Cohen, mid and absolutely summable norms",
        operations: &["class_norm", "dual_norm"],
        trials: 20,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: || parse_all(&["mid:4/3", "mid:2", "mid:4"]),
        body: mid_chain,
    },
    SuiteDef {
        name: "proposition-3.1",
        result: "every class embeds contractively into its bidual class",
        operations: &["bidual_gap", "dual_norm"],
        trials: 20,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: || {
            parse_all(&["lp:1", "lp:4/3", "lp:2", "lp:4", "linf", "c0", "lpw:4/3", "lpw:2", "lpu:4"])
        },
        body: bidual,
    },
    SuiteDef {
        name: "theorem-3.5",
        result: "adjoint duality of summing norms",
        operations: &["adjoint_duality_report", "summing_norm", "adjoint", "apply_elementwise"],
        trials: 20,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: || parse_all(&["lp:4/3", "lp:2", "lpu:4/3", "lpu:2", "lpu:4", "lpw:2", "lpw:4"]),
        body: adjoint_duality,
    },
    SuiteDef {
        name: "theorem-3.6",
        result: "reverse adjoint duality of summing norms",
        operations: &["reverse_duality_report", "summing_norm", "adjoint"],
        trials: 20,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: || parse_all(&["lp:4/3", "lp:2", "lpu:4/3", "lpu:2", "lpu:4", "lpw:2", "lpw:4"]),
        body: reverse_duality,
    },
    SuiteDef {
        name: "corollary-3.10",
        result: "an operator and its second adjoint have the same summing norm",
        operations: &["second_adjoint_check", "adjoint", "dual_space", "extreme_points"],
        trials: 20,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: || parse_all(&["lp:4/3", "lp:2", "lpu:4/3", "lpu:2", "lpu:4"]),
        body: second_adjoint,
    },
    SuiteDef {
        name: "lemma-3.9",
        result: "summing norms are unchanged by isometric embeddings of the codomain",
        operations: &["summing_norm"],
        trials: 20,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: || parse_all(&["lp:4/3", "lp:2", "linf", "c0", "lpw:2", "lpu:4/3"]),
        body: injectivity,
    },
    SuiteDef {
        name: "ideal",
        result: "operator-ideal inequality, adjoint isometry and monotonicity in the length",
        operations: &["summing_norm", "adjoint", "maximize_over_ball"],
        trials: 20,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3],
        classes: || parse_all(&["lp:4/3", "lp:2", "lpw:2", "lpw:4"]),
        body: ideal,
    },
    SuiteDef {
        name: "known-values",
        result: "reference values of summing, dual and Rademacher norms",
        operations: &["summing_norm", "class_norm", "dual_norm", "sup_equality_check", "bidual_gap"],
        trials: 16,
        dims: &[1, 2, 3],
        lengths: &[1, 2, 3, 4],
        classes: || parse_all(&["cohen:1"]),
        body: known_values,
    },
    SuiteDef {
        name: "oracle",
        result: "optimizer values stay within the grid-oracle band",
        operations: &["brute_force_sup", "maximize_over_ball", "maximize_over_seq_ball"],
        trials: 10,
        dims: &[1, 2, 3],
        lengths: &[1, 2],
        classes: || parse_all(&["lpw:4/3", "lpw:3", "lp:4/3", "lp:3", "cohen:4/3", "cohen:3", "mid:4/3", "mid:3"]),
        body: oracle,
    },
];
