//! Maximization of convex functions over unit balls.
//!
//! A convex function attains its maximum over a compact convex set at an
//! extreme point, so balls with a finite vertex set are handled exactly by
//! enumeration. Everything else goes through a multi-start normalized ascent
//! whose value is a certified lower bound. Linear objectives can additionally
//! be refined by a cutting-plane loop that also yields an upper bound.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::sync::Arc;

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::class::ClassId;
use crate::error::{Error, Result};
use crate::seqnorm::ClassBall;
use crate::space::Space;

/// How suprema are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Closed forms and vertex enumeration where available, ascent otherwise.
    Auto,
    /// Closed forms and vertex enumeration only; anything else is an error.
    Exact,
    /// Force the iterative optimizer at the top level.
    Ascent,
    /// Grid oracle on the unit sphere (total dimension at most 3).
    BruteForce,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "exact" => Ok(Method::Exact),
            "ascent" => Ok(Method::Ascent),
            "bruteforce" | "brute-force" => Ok(Method::BruteForce),
            _ => Err(Error::Config(format!("unknown method `{s}`"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Auto => "auto",
            Method::Exact => "exact",
            Method::Ascent => "ascent",
            Method::BruteForce => "bruteforce",
        })
    }
}

#[derive(Debug, Clone)]
pub struct OptConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_iter: usize,
    /// Relative improvement below which an iteration counts as stalled.
    pub tol: f64,
    /// Points per angular dimension for the grid oracle.
    pub grid_resolution: usize,
    pub method: Method,
    /// Cap on the optimizer length used by mid-summable norms.
    pub mid_max_m: usize,
    /// Monte-Carlo sample count for long Rademacher averages.
    pub rad_mc: Option<usize>,
    /// Maximum number of cuts added by the cutting-plane refinement.
    pub cutting_planes: usize,
}

impl Default for OptConfig {
    fn default() -> Self {
        OptConfig {
            seed: 0,
            restarts: 4,
            max_iter: 400,
            tol: 1e-8,
            grid_resolution: 360,
            method: Method::Auto,
            mid_max_m: 64,
            rad_mc: None,
            cutting_planes: 150,
        }
    }
}

impl OptConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config("tol must be positive".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if self.max_iter == 0 || self.grid_resolution == 0 || self.mid_max_m == 0 {
            return Err(Error::Config(
                "max_iter, grid resolution and mid cap must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn with_method(&self, method: Method) -> OptConfig {
        OptConfig {
            method,
            ..self.clone()
        }
    }

    /// Configuration used for evaluations nested inside another supremum.
    pub(crate) fn nested(&self) -> OptConfig {
        match self.method {
            Method::Auto => self.clone(),
            _ => self.with_method(Method::Auto),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodTag {
    Exact,
    VertexEnum,
    Ascent,
    CuttingPlane,
    BruteForce,
    MonteCarlo,
}

impl MethodTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            MethodTag::Exact => "exact",
            MethodTag::VertexEnum => "vertex-enum",
            MethodTag::Ascent => "ascent",
            MethodTag::CuttingPlane => "cutting-plane",
            MethodTag::BruteForce => "brute-force",
            MethodTag::MonteCarlo => "monte-carlo",
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MethodTag::Exact | MethodTag::VertexEnum)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Exact,
    LowerBound,
    /// Unbiased sample estimate; neither bound holds.
    Estimate,
}

impl Bound {
    pub fn as_str(&self) -> &'static str {
        match self {
            Bound::Exact => "exact",
            Bound::LowerBound => "lower-bound",
            Bound::Estimate => "estimate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    None,
    Vector(Vec<f64>),
    Sequence(Vec<Vec<f64>>),
}

/// A computed supremum together with the argument that achieves it.
///
/// For a supremum of an objective the witness is the maximizing argument.
/// For a class norm it is a norming sequence `w` in the dual space with
/// `Σ_j ⟨w_j, x_j⟩` equal to the value.
#[derive(Debug, Clone, PartialEq)]
pub struct NormCert {
    pub value: f64,
    pub witness: Witness,
    pub method: MethodTag,
    pub bound: Bound,
    /// Certified upper bound, when the method produces one.
    pub upper: Option<f64>,
    pub notes: BTreeMap<String, f64>,
}

impl NormCert {
    pub fn new(value: f64, witness: Witness, method: MethodTag) -> Self {
        let bound = match method {
            MethodTag::Exact | MethodTag::VertexEnum => Bound::Exact,
            MethodTag::MonteCarlo => Bound::Estimate,
            _ => Bound::LowerBound,
        };
        NormCert {
            value,
            witness,
            method,
            bound,
            upper: None,
            notes: BTreeMap::new(),
        }
    }

    pub fn exact(value: f64, witness: Witness) -> Self {
        Self::new(value, witness, MethodTag::Exact)
    }

    pub fn is_exact(&self) -> bool {
        self.bound == Bound::Exact
    }

    pub fn with_note(mut self, key: &str, value: f64) -> Self {
        self.notes.insert(key.to_string(), value);
        self
    }

    /// Flat witness coordinates.
    pub fn witness_flat(&self) -> Vec<f64> {
        match &self.witness {
            Witness::None => Vec::new(),
            Witness::Vector(v) => v.clone(),
            Witness::Sequence(s) => s.iter().flatten().copied().collect(),
        }
    }
}

/// A convex function with a subgradient oracle.
pub trait Objective: Sync {
    fn value(&self, x: &[f64]) -> f64;
    /// Any subgradient; at kinks of `|·|` the zero slope is used.
    fn subgradient(&self, x: &[f64]) -> Vec<f64>;
}

/// Objective assembled from two closures.
pub struct FnObjective<F, G> {
    value: F,
    grad: G,
}

impl<F, G> FnObjective<F, G>
where
    F: Fn(&[f64]) -> f64 + Sync,
    G: Fn(&[f64]) -> Vec<f64> + Sync,
{
    pub fn new(value: F, grad: G) -> Self {
        FnObjective { value, grad }
    }
}

impl<F, G> Objective for FnObjective<F, G>
where
    F: Fn(&[f64]) -> f64 + Sync,
    G: Fn(&[f64]) -> Vec<f64> + Sync,
{
    fn value(&self, x: &[f64]) -> f64 {
        (self.value)(x)
    }
    fn subgradient(&self, x: &[f64]) -> Vec<f64> {
        (self.grad)(x)
    }
}

/// `x ↦ ⟨c, x⟩`.
pub struct Linear<'a>(pub &'a [f64]);

impl Objective for Linear<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        dot(self.0, x)
    }
    fn subgradient(&self, _x: &[f64]) -> Vec<f64> {
        self.0.to_vec()
    }
}

/// The unit ball of a norm on `ℝ^d`, seen through its oracles.
pub trait Ball: Sync {
    fn dim(&self) -> usize;
    /// The norm and a norming functional (a subgradient of the norm).
    fn norm_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)>;
    fn norm(&self, x: &[f64]) -> Result<f64> {
        Ok(self.norm_grad(x)?.0)
    }
    /// Closed-form maximizer of `⟨g, ·⟩` over the ball, if one is known.
    fn lmo(&self, _g: &[f64]) -> Option<Vec<f64>> {
        None
    }
    fn extreme_points(&self) -> Option<Vec<Vec<f64>>> {
        None
    }
    /// `M` with `|x_i| ≤ M_i` on the ball.
    fn coordinate_bounds(&self) -> Vec<f64>;
}

impl Ball for Space {
    fn dim(&self) -> usize {
        Space::dim(self)
    }
    fn norm_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        Ok((self.norm(x)?, self.dual_witness(x)))
    }
    fn norm(&self, x: &[f64]) -> Result<f64> {
        Space::norm(self, x)
    }
    fn lmo(&self, g: &[f64]) -> Option<Vec<f64>> {
        Some(self.ball_lmo(g))
    }
    fn extreme_points(&self) -> Option<Vec<Vec<f64>>> {
        Space::extreme_points(self)
    }
    fn coordinate_bounds(&self) -> Vec<f64> {
        let n = Space::dim(self);
        (0..n)
            .map(|i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                self.dual_norm_of(&e)
            })
            .collect()
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn euclid(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn scaled(x: &[f64], s: f64) -> Vec<f64> {
    x.iter().map(|v| v * s).collect()
}

pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn gaussian_vec(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| StandardNormal.sample(rng)).collect()
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

/// Exact maximum over a finite point set; the first maximizer wins ties.
fn enumerate(objective: &dyn Objective, points: &[Vec<f64>]) -> Result<(f64, Vec<f64>)> {
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for p in points {
        let v = finite(objective.value(p), "objective at extreme point")?;
        if v > best.0 {
            best = (v, p.clone());
        }
    }
    Ok(best)
}

pub(crate) struct AscentResult {
    pub value: f64,
    pub x: Vec<f64>,
    /// Final iterate of every run, in start order.
    pub finals: Vec<Vec<f64>>,
}

/// Multi-start normalized ascent.
///
/// Each iterate lies on the unit sphere of `ball`. A step tries the
/// closed-form maximizer of the linearization (when `use_lmo` is set and the
/// ball has one) and a backtracking step along the subgradient of
/// `objective / norm`, then rescales onto the sphere. A run stops after ten
/// consecutive iterations with relative improvement below `cfg.tol`.
pub(crate) fn multi_start_ascent(
    objective: &dyn Objective,
    ball: &dyn Ball,
    cfg: &OptConfig,
    extra_starts: Vec<Vec<f64>>,
    use_lmo: bool,
) -> Result<AscentResult> {
    let d = ball.dim();
    let mut starts = extra_starts;
    if let Some(ext) = ball.extreme_points() {
        if ext.len() <= 64 {
            starts.extend(ext);
        }
    }
    let n_extra = starts.len();
    for r in 0..cfg.restarts {
        let mut rng = rng_for(cfg.seed, 1 + r as u64);
        starts.push(gaussian_vec(&mut rng, d));
    }
    let runs: Vec<Result<(f64, Vec<f64>)>> = starts
        .par_iter()
        .enumerate()
        .map(|(i, x0)| single_run(objective, ball, x0, cfg, use_lmo, (i + n_extra) as u64))
        .collect();
    let mut best = (f64::NEG_INFINITY, vec![0.0; d]);
    let mut finals = Vec::with_capacity(runs.len());
    for r in runs {
        let (v, x) = r?;
        if v > best.0 {
            best = (v, x.clone());
        }
        finals.push(x);
    }
    if best.0 == f64::NEG_INFINITY {
        best.0 = 0.0;
    }
    Ok(AscentResult {
        value: best.0,
        x: best.1,
        finals,
    })
}

fn single_run(
    objective: &dyn Objective,
    ball: &dyn Ball,
    x0: &[f64],
    cfg: &OptConfig,
    use_lmo: bool,
    stream: u64,
) -> Result<(f64, Vec<f64>)> {
    let n0 = ball.norm(x0)?;
    if !(n0 > 0.0) {
        return Ok((f64::NEG_INFINITY, x0.to_vec()));
    }
    let mut x = scaled(x0, 1.0 / n0);
    let mut f = finite(objective.value(&x), "objective")?;
    let mut eta = 0.5;
    let mut stall = 0;
    let mut rng = rng_for(cfg.seed ^ 0x05ee_d0fa_5ce7, stream);
    for _ in 0..cfg.max_iter {
        let g = objective.subgradient(&x);
        let mut best: Option<(f64, Vec<f64>)> = None;
        if use_lmo {
            if let Some(y) = ball.lmo(&g) {
                let ny = ball.norm(&y)?;
                if ny > 0.0 {
                    let y = scaled(&y, 1.0 / ny);
                    let fy = finite(objective.value(&y), "objective")?;
                    if fy > f + 1e-15 * f.abs() {
                        best = Some((fy, y));
                    }
                }
            }
        }
        let (nx, gn) = ball.norm_grad(&x)?;
        let ratio = f / nx;
        let dir: Vec<f64> = g.iter().zip(&gn).map(|(a, b)| a - ratio * b).collect();
        if let Some((fy, y)) = line_search(objective, ball, &x, f, &dir, &mut eta)? {
            if best.as_ref().is_none_or(|(fb, _)| fy > *fb) {
                best = Some((fy, y));
            }
        }
        if best.is_none() {
            // Subgradients from nearby points escape kinks where the chosen
            // subgradient is not an ascent direction.
            let xs = euclid(&x);
            for _ in 0..4 {
                let noise = gaussian_vec(&mut rng, x.len());
                let xp: Vec<f64> = x
                    .iter()
                    .zip(&noise)
                    .map(|(a, b)| a + 1e-5 * xs * b)
                    .collect();
                let (np, gnp) = ball.norm_grad(&xp)?;
                if !(np > 0.0) {
                    continue;
                }
                let fp = objective.value(&xp);
                let gp = objective.subgradient(&xp);
                let dir: Vec<f64> = gp.iter().zip(&gnp).map(|(a, b)| a - fp / np * b).collect();
                let mut eta_p = 0.05;
                if let Some(found) = line_search(objective, ball, &x, f, &dir, &mut eta_p)? {
                    best = Some(found);
                    break;
                }
            }
        }
        match best {
            None => break,
            Some((fy, y)) => {
                let rel = (fy - f) / f.abs().max(1e-300);
                x = y;
                f = fy;
                if rel < cfg.tol {
                    stall += 1;
                    if stall >= 10 {
                        break;
                    }
                } else {
                    stall = 0;
                }
            }
        }
    }
    Ok((f, x))
}

fn line_search(
    objective: &dyn Objective,
    ball: &dyn Ball,
    x: &[f64],
    f: f64,
    dir: &[f64],
    eta: &mut f64,
) -> Result<Option<(f64, Vec<f64>)>> {
    let dn = euclid(dir);
    if !(dn > 0.0) || !dn.is_finite() {
        return Ok(None);
    }
    let xs = euclid(x);
    let mut step = *eta;
    while step > 1e-13 {
        let t = step * xs / dn;
        let y: Vec<f64> = x.iter().zip(dir).map(|(a, b)| a + t * b).collect();
        let ny = ball.norm(&y)?;
        if ny > 0.0 {
            let y = scaled(&y, 1.0 / ny);
            let fy = objective.value(&y);
            if fy.is_finite() && fy > f + 1e-15 * f.abs() {
                *eta = (step * 2.0).min(2.0);
                return Ok(Some((fy, y)));
            }
        }
        step *= 0.5;
    }
    *eta = 0.5;
    Ok(None)
}

/// Kelley cutting planes for `sup ⟨c, x⟩` over the ball.
///
/// Every norming functional `g` of the ball norm satisfies `⟨g, x⟩ ≤ ‖x‖`,
/// so `⟨g, x⟩ ≤ 1` is valid on the ball and the LP value over the cuts and
/// the coordinate box is an upper bound. Normalized LP solutions give lower
/// bounds. Returns `(lower, witness, upper)`.
pub(crate) fn cutting_plane(
    c: &[f64],
    ball: &dyn Ball,
    mut lower: f64,
    mut witness: Vec<f64>,
    cut_points: &[Vec<f64>],
    cfg: &OptConfig,
) -> Result<(f64, Vec<f64>, f64)> {
    let d = ball.dim();
    let bounds = ball.coordinate_bounds();
    let mut pb = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = (0..d)
        .map(|i| pb.add_var(c[i], (-bounds[i], bounds[i])))
        .collect();
    let expr = |g: &[f64]| -> LinearExpr {
        vars.iter()
            .zip(g)
            .filter(|(_, gi)| **gi != 0.0)
            .map(|(v, gi)| (*v, *gi))
            .collect()
    };
    let mut cuts: Vec<Vec<f64>> = Vec::new();
    let is_new = |cuts: &[Vec<f64>], g: &[f64]| {
        !cuts.iter().any(|h| {
            h.iter()
                .zip(g)
                .all(|(a, b)| (a - b).abs() <= 1e-6 * a.abs().max(1.0))
        })
    };
    for p in cut_points {
        let (np, g) = ball.norm_grad(p)?;
        if np > 0.0 && g.iter().any(|x| *x != 0.0) && is_new(&cuts, &g) {
            pb.add_constraint(expr(&g), ComparisonOp::Le, 1.0);
            cuts.push(g);
        }
    }
    // The simplex solver can panic on a singular basis; the bounds found so
    // far remain valid, so refinement simply stops there.
    let solved = catch_unwind(AssertUnwindSafe(|| pb.solve()));
    let mut sol = match solved {
        Ok(Ok(sol)) => sol,
        Ok(Err(e)) => return Err(Error::Unsupported(format!("cutting-plane LP failed: {e}"))),
        Err(_) => return Ok((lower, witness, f64::INFINITY)),
    };
    let mut upper = sol.objective();
    for _ in 0..cfg.cutting_planes {
        let x: Vec<f64> = vars.iter().map(|v| *sol.var_value(*v)).collect();
        upper = upper.min(sol.objective());
        let (nx, g) = ball.norm_grad(&x)?;
        if nx > 0.0 {
            let val = dot(c, &x) / nx;
            if val > lower {
                lower = val;
                witness = scaled(&x, 1.0 / nx);
            }
        }
        if upper - lower <= cfg.tol * upper.abs().max(1e-300) {
            break;
        }
        if dot(&g, &x) <= 1.0 + 1e-12 || !is_new(&cuts, &g) {
            break;
        }
        let next = catch_unwind(AssertUnwindSafe(|| {
            sol.clone().add_constraint(expr(&g), ComparisonOp::Le, 1.0)
        }));
        sol = match next {
            Ok(Ok(s)) => s,
            _ => break,
        };
        cuts.push(g);
    }
    Ok((lower, witness, upper.max(lower)))
}

/// Supremum of a convex objective over the unit ball of a space.
pub fn maximize_over_ball(
    objective: &dyn Objective,
    ball_space: &Space,
    cfg: &OptConfig,
) -> Result<NormCert> {
    cfg.validate()?;
    match cfg.method {
        Method::BruteForce => {
            let bf = brute_force_sup(&|v| objective.value(v), ball_space, cfg.grid_resolution)?;
            Ok(NormCert::new(
                bf.value,
                Witness::Vector(bf.witness),
                MethodTag::BruteForce,
            ))
        }
        Method::Auto | Method::Exact => match ball_space.extreme_points() {
            Some(points) => {
                let (v, x) = enumerate(objective, &points)?;
                Ok(NormCert::new(v, Witness::Vector(x), MethodTag::VertexEnum))
            }
            None if cfg.method == Method::Exact => Err(Error::Unsupported(format!(
                "no exact maximization over the ball of {}",
                ball_space.describe()
            ))),
            None => ascent_over_ball(objective, ball_space, cfg, Vec::new()),
        },
        Method::Ascent => ascent_over_ball(objective, ball_space, cfg, Vec::new()),
    }
}

/// [`maximize_over_ball`] with extra starting points for the ascent path.
pub fn maximize_over_ball_from(
    objective: &dyn Objective,
    ball_space: &Space,
    cfg: &OptConfig,
    starts: Vec<Vec<f64>>,
) -> Result<NormCert> {
    let ascent = match cfg.method {
        Method::Ascent => true,
        Method::Auto => ball_space.extreme_points().is_none(),
        _ => false,
    };
    if ascent {
        cfg.validate()?;
        ascent_over_ball(objective, ball_space, cfg, starts)
    } else {
        maximize_over_ball(objective, ball_space, cfg)
    }
}

fn ascent_over_ball(
    objective: &dyn Objective,
    ball: &Space,
    cfg: &OptConfig,
    starts: Vec<Vec<f64>>,
) -> Result<NormCert> {
    let r = multi_start_ascent(objective, ball, cfg, starts, true)?;
    Ok(NormCert::new(
        r.value,
        Witness::Vector(r.x),
        MethodTag::Ascent,
    ))
}

/// Supremum of a convex objective on length-`length` sequences over the unit
/// ball of a sequence-class norm.
pub fn maximize_over_seq_ball(
    objective: &dyn Objective,
    class: &ClassId,
    space: &Arc<Space>,
    length: usize,
    cfg: &OptConfig,
) -> Result<NormCert> {
    maximize_over_seq_ball_from(objective, class, space, length, cfg, Vec::new())
}

/// As [`maximize_over_seq_ball`], with additional starting points.
pub fn maximize_over_seq_ball_from(
    objective: &dyn Objective,
    class: &ClassId,
    space: &Arc<Space>,
    length: usize,
    cfg: &OptConfig,
    starts: Vec<Vec<f64>>,
) -> Result<NormCert> {
    cfg.validate()?;
    let ball = ClassBall::new(class, space.clone(), length, cfg)?;
    let n = space.dim();
    let to_seq = |x: Vec<f64>| Witness::Sequence(x.chunks(n).map(<[f64]>::to_vec).collect());
    match cfg.method {
        Method::BruteForce => {
            let bf = brute_force_sup_norm(
                &|v| objective.value(v),
                &|v| ball.norm(v).unwrap_or(f64::NAN),
                ball.dim(),
                cfg.grid_resolution,
            )?;
            return Ok(NormCert::new(
                bf.value,
                to_seq(bf.witness),
                MethodTag::BruteForce,
            ));
        }
        Method::Auto | Method::Exact => {
            if let Some(points) = ball.extreme_points() {
                let (v, x) = enumerate(objective, &points)?;
                return Ok(NormCert::new(v, to_seq(x), MethodTag::VertexEnum));
            }
            if cfg.method == Method::Exact {
                return Err(Error::Unsupported(format!(
                    "no exact maximization over the {class} ball"
                )));
            }
        }
        Method::Ascent => {}
    }
    let use_lmo = ball.has_lmo();
    let r = multi_start_ascent(objective, &ball, cfg, starts, use_lmo)?;
    Ok(NormCert::new(r.value, to_seq(r.x), MethodTag::Ascent))
}

/// `sup ⟨c, x⟩` over a ball: ascent followed by cutting planes.
pub(crate) fn sup_linear(
    c: &[f64],
    ball: &dyn Ball,
    cfg: &OptConfig,
    starts: Vec<Vec<f64>>,
) -> Result<(f64, Vec<f64>, Option<f64>)> {
    if c.iter().all(|x| *x == 0.0) {
        return Ok((0.0, vec![0.0; c.len()], Some(0.0)));
    }
    let mut starts = starts;
    starts.push(c.to_vec());
    let r = multi_start_ascent(&Linear(c), ball, cfg, starts, false)?;
    let mut cuts = r.finals.clone();
    cuts.push(r.x.clone());
    let (lower, w, upper) = cutting_plane(c, ball, r.value, r.x, &cuts, cfg)?;
    Ok((lower, w, Some(upper)))
}

/// Result of the grid oracle.
#[derive(Debug, Clone)]
pub struct BruteForceSup {
    pub value: f64,
    pub witness: Vec<f64>,
    /// Relative half-width `b` with `value ≤ sup ≤ value · (1 + b)` for
    /// seminorm objectives.
    pub band: f64,
}

/// Grid oracle over the unit sphere of a space of dimension at most 3.
///
/// The sample is the grid of [`brute_force_sup_norm`] together with the
/// extreme points of the ball when the space has finitely many.
pub fn brute_force_sup(
    objective: &(dyn Fn(&[f64]) -> f64 + Sync),
    ball_space: &Space,
    resolution: usize,
) -> Result<BruteForceSup> {
    let mut out = brute_force_sup_norm(
        objective,
        &|v| ball_space.norm_of(v),
        ball_space.dim(),
        resolution,
    )?;
    // Vertices of polyhedral balls are sampled too, so kinks are hit exactly.
    for p in ball_space.extreme_points().unwrap_or_default() {
        let v = finite(objective(&p), "objective at extreme point")?;
        if v > out.value {
            out.value = v;
            out.witness = p;
        }
    }
    Ok(out)
}

/// Deterministic sphere grid: `resolution` points per angular dimension.
pub fn sphere_grid(dim: usize, resolution: usize) -> Result<Vec<Vec<f64>>> {
    let r = resolution.max(1);
    Ok(match dim {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..r)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / r as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        3 => {
            let mut pts = vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, -1.0]];
            for i in 0..r {
                let th = PI * (i as f64 + 0.5) / r as f64;
                for j in 0..r {
                    let ph = 2.0 * PI * j as f64 / r as f64;
                    pts.push(vec![th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]);
                }
            }
            pts
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "grid oracle needs dimension at most 3, got {dim}"
            )))
        }
    })
}

/// Grid oracle for an arbitrary norm given as a closure.
///
/// Samples directions `u` on the Euclidean sphere and evaluates the objective
/// at `u / ‖u‖`. If `δ` bounds the distance from any unit vector to the grid
/// and `κ` is the ratio of largest to smallest ball norm on the Euclidean
/// sphere, then for a seminorm objective the true supremum is at most
/// `value / (1 − 2κδ)`.
pub fn brute_force_sup_norm(
    objective: &(dyn Fn(&[f64]) -> f64 + Sync),
    norm: &(dyn Fn(&[f64]) -> f64 + Sync),
    dim: usize,
    resolution: usize,
) -> Result<BruteForceSup> {
    let grid = sphere_grid(dim, resolution)?;
    let evals: Vec<(f64, f64, Vec<f64>)> = grid
        .par_iter()
        .map(|u| {
            let nu = norm(u);
            let x = scaled(u, 1.0 / nu);
            (objective(&x), nu, x)
        })
        .collect();
    let mut best = (f64::NEG_INFINITY, Vec::new());
    let (mut nmin, mut nmax) = (f64::INFINITY, 0.0_f64);
    for (v, nu, x) in evals {
        finite(v, "objective on grid")?;
        finite(nu, "ball norm on grid")?;
        nmin = nmin.min(nu);
        nmax = nmax.max(nu);
        if v > best.0 {
            best = (v, x);
        }
    }
    let delta = match dim {
        1 => 0.0,
        2 => PI / resolution as f64,
        _ => 1.2 * PI / resolution as f64,
    };
    let kappa = nmax / nmin * (1.0 + 4.0 * delta);
    let shrink = 1.0 - 2.0 * kappa * delta;
    let band = if shrink > 0.0 {
        1.0 / shrink - 1.0
    } else {
        f64::INFINITY
    };
    Ok(BruteForceSup {
        value: best.0,
        witness: best.1,
        band,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::Index;

    fn abs_coord() -> impl Objective {
        FnObjective::new(
            |v: &[f64]| v[0].abs(),
            |v: &[f64]| {
                let mut g = vec![0.0; v.len()];
                g[0] = if v[0] > 0.0 {
                    1.0
                } else if v[0] < 0.0 {
                    -1.0
                } else {
                    0.0
                };
                g
            },
        )
    }

    fn l1_objective() -> impl Objective {
        FnObjective::new(
            |v: &[f64]| v.iter().map(|x| x.abs()).sum(),
            |v: &[f64]| {
                v.iter()
                    .map(|x| if *x == 0.0 { 0.0 } else { x.signum() })
                    .collect()
            },
        )
    }

    #[test]
    fn coordinate_functional_on_cross_polytope() {
        let ball = Space::p(2, Index::ONE).unwrap();
        let c = maximize_over_ball(&abs_coord(), &ball, &OptConfig::default()).unwrap();
        assert_eq!(c.value, 1.0);
        assert_eq!(c.method, MethodTag::VertexEnum);
        assert_eq!(c.bound, Bound::Exact);
        match c.witness {
            Witness::Vector(v) => assert_eq!(v[0].abs(), 1.0),
            _ => panic!(),
        }
    }

    #[test]
    fn identity_on_euclidean_ball() {
        let ball = Space::p(2, Index::TWO).unwrap();
        let obj = FnObjective::new(
            |v: &[f64]| (v[0] * v[0] + v[1] * v[1]).sqrt(),
            |v: &[f64]| {
                let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
                if n == 0.0 {
                    vec![0.0, 0.0]
                } else {
                    vec![v[0] / n, v[1] / n]
                }
            },
        );
        let c = maximize_over_ball(&obj, &ball, &OptConfig::default()).unwrap();
        assert!((c.value - 1.0).abs() < 1e-12);
        assert_eq!(c.bound, Bound::LowerBound);
    }

    #[test]
    fn l1_on_euclidean_ball_matches_grid_oracle() {
        let ball = Space::p(2, Index::TWO).unwrap();
        // oracle first: dense grid, then the closed form max of
        // sqrt(2) cos(pi/4 - t) over t
        let bf = brute_force_sup(&|v| v[0].abs() + v[1].abs(), &ball, 10_000).unwrap();
        assert!((bf.value - 2f64.sqrt()).abs() < 1e-3);
        let c = maximize_over_ball(&l1_objective(), &ball, &OptConfig::default()).unwrap();
        assert!(c.value >= bf.value - 1e-6);
        assert!(c.value <= bf.value * (1.0 + bf.band));
        assert!((c.value - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn grid_oracle_examples() {
        let l2 = Space::p(2, Index::TWO).unwrap();
        let bf = brute_force_sup(&|v| v[0].abs(), &l2, 360).unwrap();
        assert!((bf.value - 1.0).abs() < 1e-3);
        let linf = Space::p(2, Index::INFINITY).unwrap();
        let bf = brute_force_sup(&|v| v[0].abs() + v[1].abs(), &linf, 100).unwrap();
        assert!((bf.value - 2.0).abs() < 1e-2);
        let l2_4 = Space::p(4, Index::TWO).unwrap();
        assert!(brute_force_sup(&|v| v[0], &l2_4, 10).is_err());
    }

    #[test]
    fn exact_method_refuses_smooth_ball() {
        let cfg = OptConfig::default().with_method(Method::Exact);
        let ball = Space::p(2, Index::TWO).unwrap();
        assert!(maximize_over_ball(&abs_coord(), &ball, &cfg).is_err());
    }

    #[test]
    fn non_finite_objective_is_an_error() {
        let ball = Space::p(2, Index::ONE).unwrap();
        let bad = FnObjective::new(|_: &[f64]| f64::NAN, |v: &[f64]| vec![0.0; v.len()]);
        assert!(matches!(
            maximize_over_ball(&bad, &ball, &OptConfig::default()),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn cutting_plane_brackets_dual_norm() {
        // sup <c, x> over the l_3 ball is the l_{3/2} norm of c
        let ball = Space::p(3, Index::finite(3.0).unwrap()).unwrap();
        let c = [0.4, -1.0, 2.5];
        let (lo, w, hi) = sup_linear(&c, &ball, &OptConfig::default(), vec![]).unwrap();
        let truth = crate::index::lp_norm(&c, Index::finite(1.5).unwrap());
        assert!(lo <= truth + 1e-9);
        assert!(hi.unwrap() >= truth - 1e-9);
        assert!((lo - truth).abs() < 1e-6 * truth);
        assert!((Ball::norm(&ball, &w).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn deterministic_under_seed() {
        let ball = Space::p(3, Index::finite(3.0).unwrap()).unwrap();
        let cfg = OptConfig {
            seed: 11,
            ..OptConfig::default()
        };
        let a = maximize_over_ball(&l1_objective(), &ball, &cfg).unwrap();
        let b = maximize_over_ball(&l1_objective(), &ball, &cfg).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.witness, b.witness);
    }
}
