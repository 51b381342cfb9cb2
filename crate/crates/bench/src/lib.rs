//! Fixed inputs shared by the benchmarks.

use std::sync::Arc;

use seqdual::opideal::LinOp;
use seqdual::{Index, Space, VecSeq};

pub fn lp_space(dim: usize, q: &str) -> Arc<Space> {
    Arc::new(Space::p(dim, q.parse::<Index>().expect("valid index")).expect("positive dimension"))
}

/// A deterministic sequence of `k` vectors with entries in (-1, 1).
pub fn sequence(space: &Arc<Space>, k: usize) -> VecSeq {
    let n = space.dim();
    let data = (0..n * k)
        .map(|i| ((i as f64 + 1.0) * 0.7548776662466927).fract() * 2.0 - 1.0)
        .collect();
    VecSeq::from_flat(space.clone(), data).expect("data has the sequence shape")
}

/// A deterministic operator with entries in (-1, 1).
pub fn operator(domain: &Arc<Space>, codomain: &Arc<Space>) -> LinOp {
    let rows = (0..codomain.dim())
        .map(|r| {
            (0..domain.dim())
                .map(|c| (((r * 7 + c * 3) as f64 + 0.5) * 0.5698402909980532).fract() * 2.0 - 1.0)
                .collect()
        })
        .collect();
    LinOp::new(domain.clone(), codomain.clone(), rows).expect("rows match the spaces")
}
