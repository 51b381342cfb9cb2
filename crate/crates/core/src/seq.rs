use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::Space;

/// A finite sequence `(x_1, …, x_k)` of vectors of one space, stored flat.
#[derive(Debug, Clone, PartialEq)]
pub struct VecSeq {
    space: Arc<Space>,
    data: Vec<f64>,
}

impl VecSeq {
    pub fn new(space: Arc<Space>, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidSpace(
                "sequence length must be at least 1".into(),
            ));
        }
        let n = space.dim();
        let mut data = Vec::with_capacity(n * vectors.len());
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            data.extend(v);
        }
        Ok(VecSeq { space, data })
    }

    /// Sequence from `k * dim` row-major values.
    pub fn from_flat(space: Arc<Space>, data: Vec<f64>) -> Result<Self> {
        let n = space.dim();
        if data.is_empty() || !data.len().is_multiple_of(n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: data.len(),
            });
        }
        Ok(VecSeq { space, data })
    }

    /// Scalars in a one-dimensional space.
    pub fn scalars(space: Arc<Space>, values: &[f64]) -> Result<Self> {
        if space.dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: space.dim(),
            });
        }
        Self::from_flat(space, values.to_vec())
    }

    pub fn zeros(space: Arc<Space>, k: usize) -> Self {
        let data = vec![0.0; k.max(1) * space.dim()];
        VecSeq { space, data }
    }

    /// `v · e_j` padded with zeros to length `k` (`j` is 1-based).
    pub fn unit(space: Arc<Space>, v: &[f64], j: usize, k: usize) -> Result<Self> {
        if j == 0 || j > k {
            return Err(Error::Config(format!("position {j} outside 1..={k}")));
        }
        if v.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: v.len(),
            });
        }
        let mut s = Self::zeros(space, k);
        let n = v.len();
        s.data[(j - 1) * n..j * n].copy_from_slice(v);
        Ok(s)
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.space.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn vector(&self, j: usize) -> &[f64] {
        let n = self.dim();
        &self.data[j * n..(j + 1) * n]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.dim())
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn vectors(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }

    /// First `m` terms.
    pub fn prefix(&self, m: usize) -> VecSeq {
        let n = self.dim();
        VecSeq {
            space: self.space.clone(),
            data: self.data[..m.clamp(1, self.len()) * n].to_vec(),
        }
    }

    /// Same coefficients, reinterpreted over another space of equal dimension.
    pub fn with_space(&self, space: Arc<Space>) -> Result<VecSeq> {
        if space.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: space.dim(),
            });
        }
        Ok(VecSeq {
            space,
            data: self.data.clone(),
        })
    }

    /// `sup_j ‖x_j‖`.
    pub fn max_norm(&self) -> f64 {
        self.iter()
            .map(|v| self.space.norm_of(v))
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0.0)
    }
}
