//! Finite-dimensional real Banach spaces.
//!
//! A [`Space`] is `ℝ^n` with one of three norm families. Every family is
//! closed under taking duals, and the representation is chosen so that
//! `space.dual().dual()` is bit-for-bit the original space.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::index::{lp_norm, lp_witness, Exponent, Index};

/// Largest dimension accepted for polytope spaces.
pub const MAX_POLYTOPE_DIM: usize = 6;
/// Largest dimension for which the `ℓ_∞` cube vertices are enumerated.
pub const MAX_CUBE_DIM: usize = 12;
const MAX_HULL_SUBSETS: u64 = 4_000_000;
const HULL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum NormSpec {
    /// `‖v‖_q`.
    P(Index),
    /// `‖(s_i v_i)_i‖_q`; the reciprocal scales are carried for the dual.
    ScaledP {
        q: Index,
        scales: Vec<f64>,
        inverse: Vec<f64>,
    },
    /// Gauge of the convex hull of a symmetric vertex list.
    Polytope(Polytope),
}

/// A centrally symmetric polytope kept in both descriptions.
///
/// `vertices` span the body and `facets` are the normals `a` of its facet
/// hyperplanes `⟨a, x⟩ = 1`. The gauge is `max_a ⟨a, v⟩`; the support
/// function is `max_v |⟨v, u⟩|`. Dualizing swaps the two lists.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    vertices: Vec<Vec<f64>>,
    facets: Vec<Vec<f64>>,
}

impl Polytope {
    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<f64>] {
        &self.facets
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Space {
    dim: usize,
    spec: NormSpec,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Space {
    pub fn p(dim: usize, q: Index) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        Ok(Space {
            dim,
            spec: NormSpec::P(q),
        })
    }

    /// Weighted `ℓ_q`: `(Σ w_i |v_i|^q)^{1/q}`, or `max w_i |v_i|` for `q = ∞`.
    pub fn weighted(q: Index, weights: &[f64]) -> Result<Self> {
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidSpace("weights must be positive".into()));
        }
        let scales: Vec<f64> = match q.exponent() {
            Exponent::Infinity => weights.to_vec(),
            Exponent::Finite(p) => weights.iter().map(|w| w.powf(1.0 / p)).collect(),
        };
        Space::scaled(q, scales)
    }

    /// Scaled `ℓ_q`: `‖(s_i v_i)_i‖_q`.
    pub fn scaled(q: Index, scales: Vec<f64>) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        if scales.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::InvalidSpace("scales must be positive".into()));
        }
        let inverse = scales.iter().map(|s| 1.0 / s).collect();
        Ok(Space {
            dim: scales.len(),
            spec: NormSpec::ScaledP { q, scales, inverse },
        })
    }

    /// Polytope space from a symmetric, spanning vertex list.
    pub fn polytope(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let dim = vertices
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidSpace("empty vertex list".into()))?;
        if dim == 0 || dim > MAX_POLYTOPE_DIM {
            return Err(Error::InvalidSpace(format!(
                "polytope dimension must be in 1..={MAX_POLYTOPE_DIM}"
            )));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        if vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSpace("non-finite vertex coordinate".into()));
        }
        for v in &vertices {
            let has_negative = vertices
                .iter()
                .any(|u| u.iter().zip(v).all(|(a, b)| (a + b).abs() <= 1e-12));
            if !has_negative {
                return Err(Error::InvalidSpace(format!(
                    "vertex list is not symmetric: -{v:?} missing"
                )));
            }
        }
        let facets = facet_normals(&vertices, dim)?;
        Ok(Space {
            dim,
            spec: NormSpec::Polytope(Polytope { vertices, facets }),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spec(&self) -> &NormSpec {
        &self.spec
    }

    fn check(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn norm(&self, v: &[f64]) -> Result<f64> {
        self.check(v)?;
        Ok(self.norm_of(v))
    }

    /// Norm without the dimension check; `v.len()` must equal `dim`.
    pub fn norm_of(&self, v: &[f64]) -> f64 {
        match &self.spec {
            NormSpec::P(q) => lp_norm(v, *q),
            NormSpec::ScaledP { q, scales, .. } => {
                let t: Vec<f64> = v.iter().zip(scales).map(|(x, s)| x * s).collect();
                lp_norm(&t, *q)
            }
            NormSpec::Polytope(p) => p.facets.iter().fold(0.0_f64, |m, a| m.max(dot(a, v).abs())),
        }
    }

    /// Norm of a functional `g` in the dual space.
    pub fn dual_norm_of(&self, g: &[f64]) -> f64 {
        match &self.spec {
            NormSpec::P(q) => lp_norm(g, q.conjugate()),
            NormSpec::ScaledP { q, inverse, .. } => {
                let t: Vec<f64> = g.iter().zip(inverse).map(|(x, s)| x * s).collect();
                lp_norm(&t, q.conjugate())
            }
            NormSpec::Polytope(p) => p
                .vertices
                .iter()
                .fold(0.0_f64, |m, v| m.max(dot(v, g).abs())),
        }
    }

    pub fn dual(&self) -> Space {
        let spec = match &self.spec {
            NormSpec::P(q) => NormSpec::P(q.conjugate()),
            NormSpec::ScaledP { q, scales, inverse } => NormSpec::ScaledP {
                q: q.conjugate(),
                scales: inverse.clone(),
                inverse: scales.clone(),
            },
            NormSpec::Polytope(p) => NormSpec::Polytope(Polytope {
                vertices: p.facets.clone(),
                facets: p.vertices.clone(),
            }),
        };
        Space {
            dim: self.dim,
            spec,
        }
    }

    /// A unit-norm functional `w ∈ E'` with `⟨w, v⟩ = ‖v‖`; zero for `v = 0`.
    pub fn dual_witness(&self, v: &[f64]) -> Vec<f64> {
        match &self.spec {
            NormSpec::P(q) => lp_witness(v, *q),
            NormSpec::ScaledP { q, scales, .. } => {
                let t: Vec<f64> = v.iter().zip(scales).map(|(x, s)| x * s).collect();
                lp_witness(&t, *q)
                    .into_iter()
                    .zip(scales)
                    .map(|(w, s)| w * s)
                    .collect()
            }
            NormSpec::Polytope(p) => argmax_abs(&p.facets, v, self.dim),
        }
    }

    /// A point of the unit ball maximizing `⟨g, ·⟩`.
    pub fn ball_lmo(&self, g: &[f64]) -> Vec<f64> {
        match &self.spec {
            NormSpec::P(q) => lp_witness(g, q.conjugate()),
            NormSpec::ScaledP { q, inverse, .. } => {
                let t: Vec<f64> = g.iter().zip(inverse).map(|(x, s)| x * s).collect();
                lp_witness(&t, q.conjugate())
                    .into_iter()
                    .zip(inverse)
                    .map(|(w, s)| w * s)
                    .collect()
            }
            NormSpec::Polytope(p) => argmax_abs(&p.vertices, g, self.dim),
        }
    }

    /// Extreme points of the closed unit ball when the ball is a polytope.
    pub fn extreme_points(&self) -> Option<Vec<Vec<f64>>> {
        let n = self.dim;
        if n == 1 {
            let c = self.norm_of(&[1.0]);
            return Some(vec![vec![1.0 / c], vec![-1.0 / c]]);
        }
        match &self.spec {
            NormSpec::P(q) | NormSpec::ScaledP { q, .. } => {
                let inv: Vec<f64> = match &self.spec {
                    NormSpec::ScaledP { inverse, .. } => inverse.clone(),
                    _ => vec![1.0; n],
                };
                if q.is_one() {
                    let mut pts = Vec::with_capacity(2 * n);
                    for i in 0..n {
                        for sign in [1.0, -1.0] {
                            let mut e = vec![0.0; n];
                            e[i] = sign * inv[i];
                            pts.push(e);
                        }
                    }
                    Some(pts)
                } else if q.is_infinite() && n <= MAX_CUBE_DIM {
                    Some(
                        (0..1usize << n)
                            .map(|mask| {
                                (0..n)
                                    .map(|i| if mask >> i & 1 == 0 { inv[i] } else { -inv[i] })
                                    .collect()
                            })
                            .collect(),
                    )
                } else {
                    None
                }
            }
            NormSpec::Polytope(p) => Some(
                p.vertices
                    .iter()
                    .filter(|v| is_extreme(&p.facets, v, n))
                    .cloned()
                    .collect(),
            ),
        }
    }

    /// Scales `s` when the norm is `‖(s_i v_i)‖_2`.
    pub fn euclidean_scales(&self) -> Option<Vec<f64>> {
        match &self.spec {
            NormSpec::P(q) if *q == Index::TWO => Some(vec![1.0; self.dim]),
            NormSpec::ScaledP { q, scales, .. } if *q == Index::TWO => Some(scales.clone()),
            _ if self.dim == 1 => Some(vec![self.norm_of(&[1.0])]),
            _ => None,
        }
    }

    /// Scales `s` when the norm is `Σ s_i |v_i|`; every one-dimensional space
    /// qualifies.
    pub fn l1_scales(&self) -> Option<Vec<f64>> {
        match &self.spec {
            NormSpec::P(q) if q.is_one() => Some(vec![1.0; self.dim]),
            NormSpec::ScaledP { q, scales, .. } if q.is_one() => Some(scales.clone()),
            _ if self.dim == 1 => Some(vec![self.norm_of(&[1.0])]),
            _ => None,
        }
    }

    /// `max_i ‖e_i‖`, an upper bound on `|v_i|` over the dual unit ball.
    pub fn max_basis_norm(&self) -> f64 {
        (0..self.dim)
            .map(|i| {
                let mut e = vec![0.0; self.dim];
                e[i] = 1.0;
                self.norm_of(&e)
            })
            .fold(0.0, f64::max)
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match &self.spec {
            NormSpec::P(q) => format!("l_{q}^{}", self.dim),
            NormSpec::ScaledP { q, .. } => format!("weighted l_{q}^{}", self.dim),
            NormSpec::Polytope(p) => format!(
                "polytope^{} ({} vertices, {} facets)",
                self.dim,
                p.vertices.len(),
                p.facets.len()
            ),
        }
    }
}

fn argmax_abs(candidates: &[Vec<f64>], g: &[f64], dim: usize) -> Vec<f64> {
    let mut best = vec![0.0; dim];
    let mut best_val = 0.0;
    for c in candidates {
        let val = dot(c, g);
        if val > best_val {
            best_val = val;
            best.clone_from(c);
        }
    }
    best
}

fn is_extreme(facets: &[Vec<f64>], v: &[f64], dim: usize) -> bool {
    let tight: Vec<&Vec<f64>> = facets
        .iter()
        .filter(|a| (dot(a, v) - 1.0).abs() <= HULL_TOL)
        .collect();
    if tight.len() < dim {
        return false;
    }
    let m = DMatrix::from_fn(tight.len(), dim, |r, c| tight[r][c]);
    m.rank(1e-9) == dim
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k as u64 {
        acc = acc.saturating_mul(n as u64 - i) / (i + 1);
    }
    acc
}

/// Facet normals of the convex hull of a symmetric spanning point set.
///
/// Every facet hyperplane `⟨a, x⟩ = 1` passes through `dim` affinely
/// independent points, so enumerating `dim`-subsets and keeping the
/// hyperplanes that bound all points recovers every facet exactly.
fn facet_normals(points: &[Vec<f64>], dim: usize) -> Result<Vec<Vec<f64>>> {
    let span = DMatrix::from_fn(points.len(), dim, |r, c| points[r][c]);
    if span.rank(1e-10) < dim {
        return Err(Error::InvalidSpace("vertices do not span the space".into()));
    }
    if binomial(points.len(), dim) > MAX_HULL_SUBSETS {
        return Err(Error::InvalidSpace(format!(
            "too many vertices ({}) for dimension {dim}",
            points.len()
        )));
    }
    let mut facets: Vec<Vec<f64>> = Vec::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let m = DMatrix::from_fn(dim, dim, |r, c| points[subset[r]][c]);
        if let Some(a) = m.lu().solve(&DVector::from_element(dim, 1.0)) {
            let a: Vec<f64> = a.iter().copied().collect();
            let bounded = a.iter().all(|x| x.is_finite())
                && points.iter().all(|p| dot(&a, p) <= 1.0 + HULL_TOL);
            let residual_ok = subset
                .iter()
                .all(|&i| (dot(&a, &points[i]) - 1.0).abs() <= HULL_TOL);
            if bounded
                && residual_ok
                && !facets
                    .iter()
                    .any(|f| f.iter().zip(&a).all(|(x, y)| (x - y).abs() <= 1e-9))
            {
                facets.push(a);
            }
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(facets);
            }
            i -= 1;
            if subset[i] < points.len() - dim + i {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cross(dim: usize) -> Space {
        let mut v = Vec::new();
        for i in 0..dim {
            for s in [1.0, -1.0] {
                let mut e = vec![0.0; dim];
                e[i] = s;
                v.push(e);
            }
        }
        Space::polytope(v).unwrap()
    }

    #[test]
    fn basic_norms() {
        let l2 = Space::p(2, Index::TWO).unwrap();
        assert_eq!(l2.norm(&[3.0, 4.0]).unwrap(), 5.0);
        let linf = Space::p(2, Index::INFINITY).unwrap();
        assert_eq!(linf.norm(&[1.0, -2.0]).unwrap(), 2.0);
        assert!(matches!(
            l2.norm(&[1.0]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn cross_polytope_is_l1() {
        let c = cross(2);
        assert!((c.norm(&[1.0, 1.0]).unwrap() - 2.0).abs() < 1e-12);
        assert!((c.norm(&[0.5, -2.0]).unwrap() - 2.5).abs() < 1e-12);
        // its dual is the square
        let d = c.dual();
        assert!((d.norm(&[1.0, -3.0]).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(d.extreme_points().unwrap().len(), 4);
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn hexagon_hull_drops_interior_points() {
        let mut v = vec![];
        for k in 0..6 {
            let t = k as f64 * std::f64::consts::PI / 3.0;
            v.push(vec![t.cos(), t.sin()]);
        }
        v.push(vec![0.1, 0.2]);
        v.push(vec![-0.1, -0.2]);
        let h = Space::polytope(v).unwrap();
        let ext = h.extreme_points().unwrap();
        assert_eq!(ext.len(), 6);
        for e in &ext {
            assert!((h.norm(e).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_polytopes() {
        assert!(Space::polytope(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]).is_err());
        assert!(Space::polytope(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).is_err());
        assert!(Space::polytope(vec![vec![1.0; 7], vec![-1.0; 7]]).is_err());
    }

    #[test]
    fn dual_spaces() {
        let l1 = Space::p(3, Index::ONE).unwrap();
        assert_eq!(l1.dual(), Space::p(3, Index::INFINITY).unwrap());
        let l4 = Space::p(2, Index::finite(4.0).unwrap()).unwrap();
        assert_eq!(l4.dual().dim(), 2);
        match l4.dual().spec() {
            NormSpec::P(q) => assert!((q.as_f64() - 4.0 / 3.0).abs() < 1e-15),
            _ => unreachable!(),
        }
        let w = Space::weighted(Index::finite(3.0).unwrap(), &[1.0, 8.0]).unwrap();
        assert_eq!(w.dual().dual(), w);
    }

    #[test]
    fn extreme_point_sets() {
        let l1 = Space::p(2, Index::ONE).unwrap();
        assert_eq!(l1.extreme_points().unwrap().len(), 4);
        let linf = Space::p(2, Index::INFINITY).unwrap();
        let pts = linf.extreme_points().unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|p| p.iter().all(|x| x.abs() == 1.0)));
        assert!(Space::p(2, Index::TWO).unwrap().extreme_points().is_none());
    }

    #[test]
    fn witnesses_and_lmo() {
        let spaces = vec![
            Space::p(3, Index::finite(3.0).unwrap()).unwrap(),
            Space::weighted(Index::ONE, &[1.0, 2.0, 0.5]).unwrap(),
            Space::weighted(Index::INFINITY, &[1.0, 2.0, 0.5]).unwrap(),
            cross(3),
        ];
        let v = [0.3, -1.2, 0.7];
        for s in &spaces {
            let w = s.dual_witness(&v);
            assert!(
                (dot(&w, &v) - s.norm_of(&v)).abs() < 1e-12,
                "{}",
                s.describe()
            );
            assert!((s.dual_norm_of(&w) - 1.0).abs() < 1e-12);
            let x = s.ball_lmo(&v);
            assert!((s.norm_of(&x) - 1.0).abs() < 1e-12);
            assert!((dot(&x, &v) - s.dual_norm_of(&v)).abs() < 1e-12);
        }
    }
}
