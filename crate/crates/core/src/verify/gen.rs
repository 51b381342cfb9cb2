//! Seeded random instances for the property suites.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::class::ClassId;
use crate::error::Result;
use crate::index::Index;
use crate::opideal::LinOp;
use crate::optimize::rng_for;
use crate::seq::VecSeq;
use crate::space::Space;

/// A family of spaces an instance may be drawn from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    P(Index),
    Scaled(Index),
    Polytope,
}

pub fn idx(s: &str) -> Index {
    s.parse().expect("static index literal")
}

/// `ℓ_1`, `ℓ_∞`, their scaled versions and polytopes.
pub fn polyhedral() -> Vec<Family> {
    vec![
        Family::P(Index::ONE),
        Family::P(Index::INFINITY),
        Family::Scaled(Index::ONE),
        Family::Scaled(Index::INFINITY),
        Family::Polytope,
    ]
}

pub fn euclidean() -> Vec<Family> {
    vec![Family::P(Index::TWO), Family::Scaled(Index::TWO)]
}

pub fn smooth() -> Vec<Family> {
    vec![
        Family::P(idx("4/3")),
        Family::P(idx("3")),
        Family::Scaled(idx("3")),
    ]
}

/// Spaces whose sup-norm type makes `E'` an `ℓ_1`-type space.
pub fn sup_type() -> Vec<Family> {
    vec![Family::P(Index::INFINITY), Family::Scaled(Index::INFINITY)]
}

/// Spaces of `ℓ_1` type.
pub fn sum_type() -> Vec<Family> {
    vec![Family::P(Index::ONE), Family::Scaled(Index::ONE)]
}

pub fn all_families() -> Vec<Family> {
    let mut f = polyhedral();
    f.extend(euclidean());
    f.extend(smooth());
    f
}

/// Replaces the index of an indexed class; `ℓ_∞` stands in for `ℓ_p` at
/// `p = ∞`.
pub fn reindex(class: &ClassId, p: Index) -> ClassId {
    match class {
        ClassId::Lp(_) => ClassId::lp(p),
        ClassId::LpWeak(_) => ClassId::LpWeak(p),
        ClassId::LpUnc(_) => ClassId::LpUnc(p),
        ClassId::Cohen(_) => ClassId::Cohen(p),
        ClassId::Mid(_) => ClassId::Mid(p),
        other => other.clone(),
    }
}

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64, stream: u64) -> Self {
        Gen {
            rng: rng_for(seed, stream),
        }
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    pub fn choose<T: Clone>(&mut self, items: &[T]) -> T {
        items[self.below(items.len())].clone()
    }

    pub fn vector(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.normal()).collect()
    }

    pub fn space(&mut self, family: Family, n: usize) -> Result<Arc<Space>> {
        let space = match family {
            Family::P(q) => Space::p(n, q)?,
            Family::Scaled(q) => {
                let scales = (0..n).map(|_| self.uniform(0.5, 2.0)).collect();
                Space::scaled(q, scales)?
            }
            Family::Polytope => {
                let mut vertices = Vec::new();
                for i in 0..n {
                    let mut v = vec![0.0; n];
                    v[i] = self.uniform(0.6, 1.5);
                    vertices.push(v);
                }
                for _ in 1..n {
                    vertices.push(self.vector(n).into_iter().map(|a| 0.8 * a).collect());
                }
                let negatives: Vec<Vec<f64>> = vertices
                    .iter()
                    .map(|v| v.iter().map(|a| -a).collect())
                    .collect();
                vertices.extend(negatives);
                Space::polytope(vertices)?
            }
        };
        Ok(Arc::new(space))
    }

    pub fn space_from(&mut self, families: &[Family], n: usize) -> Result<Arc<Space>> {
        let f = self.choose(families);
        self.space(f, n)
    }

    pub fn seq(&mut self, space: &Arc<Space>, k: usize) -> Result<VecSeq> {
        let data = self.vector(k * space.dim());
        VecSeq::from_flat(space.clone(), data)
    }

    /// Gaussian matrix between two spaces.
    pub fn op(&mut self, domain: &Arc<Space>, codomain: &Arc<Space>) -> Result<LinOp> {
        let rows = (0..codomain.dim())
            .map(|_| self.vector(domain.dim()))
            .collect();
        LinOp::new(domain.clone(), codomain.clone(), rows)
    }

    /// Flips the sign of a random subset of the vectors.
    pub fn sign_flip(&mut self, x: &VecSeq) -> Result<VecSeq> {
        let vectors = x
            .iter()
            .map(|v| {
                let s = if self.coin() { -1.0 } else { 1.0 };
                v.iter().map(|a| s * a).collect()
            })
            .collect();
        VecSeq::new(x.space().clone(), vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polytopes_are_valid_in_small_dimensions() {
        let mut g = Gen::new(3, 0);
        for n in 1..=3 {
            for _ in 0..20 {
                let s = g.space(Family::Polytope, n).unwrap();
                assert_eq!(s.dim(), n);
                let v = g.vector(n);
                assert!(s.norm_of(&v) > 0.0);
            }
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a = Gen::new(7, 4).vector(5);
        let b = Gen::new(7, 4).vector(5);
        let c = Gen::new(7, 5).vector(5);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
