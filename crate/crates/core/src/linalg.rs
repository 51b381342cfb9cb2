//! Singular value decomposition by one-sided Jacobi rotations.
//!
//! The matrices handled here are tiny and frequently rank-deficient, where
//! the Jacobi method keeps full accuracy in every singular triple.

use nalgebra::DMatrix;

const MAX_SWEEPS: usize = 80;

/// Thin decomposition `A = U diag(values) Vᵀ` with values in decreasing
/// order. Columns belonging to zero singular values are zero.
#[derive(Debug, Clone)]
pub struct Svd {
    pub values: Vec<f64>,
    pub u: DMatrix<f64>,
    pub v: DMatrix<f64>,
}

impl Svd {
    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Sum of the singular values.
    pub fn nuclear(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `Σ u_r v_rᵀ` over the nonzero singular values, or only the leading
    /// term when `leading_only` is set.
    pub fn polar(&self, leading_only: bool) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.u.nrows(), self.v.nrows());
        let count = if leading_only { 1 } else { self.values.len() };
        for r in 0..count.min(self.values.len()) {
            if self.values[r] > 0.0 {
                m += self.u.column(r) * self.v.column(r).transpose();
            }
        }
        m
    }

    pub fn top_right(&self) -> Vec<f64> {
        self.v.column(0).iter().copied().collect()
    }
}

pub fn svd(a: &DMatrix<f64>) -> Svd {
    if a.nrows() < a.ncols() {
        let t = svd(&a.transpose());
        return Svd {
            values: t.values,
            u: t.v,
            v: t.u,
        };
    }
    let n = a.ncols();
    let mut w = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dot(&w.column(q));
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<(f64, usize)> = (0..n).map(|j| (w.column(j).norm(), j)).collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut u = DMatrix::zeros(a.nrows(), n);
    let mut vs = DMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (r, (sigma, j)) in order.into_iter().enumerate() {
        values.push(sigma);
        vs.set_column(r, &v.column(j));
        if sigma > 0.0 {
            u.set_column(r, &(w.column(j) / sigma));
        }
    }
    Svd { values, u, v: vs }
}

fn rotate(m: &mut DMatrix<f64>, p: usize, q: usize, c: f64, s: f64) {
    for i in 0..m.nrows() {
        let (x, y) = (m[(i, p)], m[(i, q)]);
        m[(i, p)] = c * x - s * y;
        m[(i, q)] = s * x + c * y;
    }
}
