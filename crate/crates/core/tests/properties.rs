use std::sync::Arc;

use nalgebra::DMatrix;
use proptest::prelude::*;
use seqdual::dualize::{dual_norm, pairing_apply};
use seqdual::linalg::svd;
use seqdual::seqnorm::class_norm;
use seqdual::{conjugate_index, ClassId, Index, OptConfig, Space, VecSeq};

const EXACT_CLASSES: [&str; 6] = ["lp:1", "lp:4/3", "lp:2", "lp:4", "linf", "c0"];
const INDICES: [&str; 5] = ["1", "4/3", "2", "3", "inf"];

fn index(s: &str) -> Index {
    s.parse().unwrap()
}

fn class(s: &str) -> ClassId {
    s.parse().unwrap()
}

fn entries(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, len)
}

/// A dimension, a length and the flat data of a sequence of that shape.
fn shaped() -> impl Strategy<Value = (usize, usize, Vec<f64>)> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(n, k)| (Just(n), Just(k), entries(n * k)))
}

fn euclidean(n: usize) -> Arc<Space> {
    Arc::new(Space::p(n, Index::TWO).unwrap())
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn space_norms_are_norms(
        q in prop::sample::select(INDICES.to_vec()),
        (u, v) in (1usize..=4).prop_flat_map(|n| (entries(n), entries(n))),
        alpha in -5.0f64..5.0,
    ) {
        let s = Space::p(u.len(), index(q)).unwrap();
        let sum: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        let scaled: Vec<f64> = u.iter().map(|a| alpha * a).collect();
        prop_assert!(s.norm(&sum).unwrap() <= s.norm(&u).unwrap() + s.norm(&v).unwrap() + 1e-12);
        prop_assert!(close(s.norm(&scaled).unwrap(), alpha.abs() * s.norm(&u).unwrap(), 1e-12));
    }

    #[test]
    fn dual_space_norm_dominates_pairings(
        q in prop::sample::select(INDICES.to_vec()),
        (u, g) in (1usize..=4).prop_flat_map(|n| (entries(n), entries(n))),
    ) {
        let s = Space::p(u.len(), index(q)).unwrap();
        let d = s.dual();
        let pairing: f64 = u.iter().zip(&g).map(|(a, b)| a * b).sum();
        prop_assert!(pairing.abs() <= s.norm(&u).unwrap() * d.norm(&g).unwrap() + 1e-9);
    }

    #[test]
    fn conjugate_index_is_an_involution(p in 1.01f64..50.0) {
        let q = conjugate_index(p).unwrap();
        prop_assert!(close(1.0 / p + 1.0 / q, 1.0, 1e-12));
        prop_assert!(close(conjugate_index(q).unwrap(), p, 1e-9));
    }

    #[test]
    fn exact_class_norms_are_homogeneous_and_sign_invariant(
        c in prop::sample::select(EXACT_CLASSES.to_vec()),
        (n, _k, data) in shaped(),
        alpha in -4.0f64..4.0,
        signs in prop::collection::vec(any::<bool>(), 4),
    ) {
        let cfg = OptConfig::default();
        let space = euclidean(n);
        let x = VecSeq::from_flat(space.clone(), data.clone()).unwrap();
        let base = class_norm(&class(c), &x, &cfg).unwrap();
        prop_assert!(base.is_exact());
        let scaled = VecSeq::from_flat(space.clone(), data.iter().map(|v| alpha * v).collect()).unwrap();
        prop_assert!(close(class_norm(&class(c), &scaled, &cfg).unwrap().value, alpha.abs() * base.value, 1e-12));
        let flipped: Vec<f64> = data
            .chunks(n)
            .zip(&signs)
            .flat_map(|(v, s)| v.iter().map(move |a| if *s { -a } else { *a }))
            .collect();
        let flipped = VecSeq::from_flat(space, flipped).unwrap();
        prop_assert!(close(class_norm(&class(c), &flipped, &cfg).unwrap().value, base.value, 1e-12));
    }

    #[test]
    fn dual_class_pairing_bound(
        c in prop::sample::select(EXACT_CLASSES.to_vec()),
        (n, k, data) in shaped(),
        seed in 0u64..1000,
    ) {
        let cfg = OptConfig::default();
        let space = euclidean(n);
        let x = VecSeq::from_flat(space.clone(), data.clone()).unwrap();
        let phi: Vec<f64> = (0..n * k).map(|i| ((seed + 7 * i as u64) % 11) as f64 - 5.0).collect();
        let phi = VecSeq::from_flat(Arc::new(space.dual()), phi).unwrap();
        let lhs = pairing_apply(&phi, &x).unwrap().abs();
        let rhs = class_norm(&class(c), &x, &cfg).unwrap().value
            * dual_norm(&class(c), &phi, &cfg).unwrap().value;
        prop_assert!(lhs <= rhs * (1.0 + 1e-9) + 1e-12);
    }

    /// In a Hilbert space the Rademacher average of squares is the sum of squares.
    #[test]
    fn rademacher_norm_in_hilbert_space((n, _k, data) in shaped()) {
        let x = VecSeq::from_flat(euclidean(n), data.clone()).unwrap();
        let rad = class_norm(&ClassId::Rad, &x, &OptConfig::default()).unwrap();
        let l2 = data.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!(close(rad.value, l2, 1e-12));
    }

    /// On ℓ₂ⁿ the weak 2-norm of (x_j) is the spectral norm of the matrix with
    /// columns x_j.
    #[test]
    fn weak_two_norm_is_the_spectral_norm((n, k, data) in shaped()) {
        let x = VecSeq::from_flat(euclidean(n), data.clone()).unwrap();
        let weak = class_norm(&class("lpw:2"), &x, &OptConfig::default()).unwrap();
        let m = DMatrix::from_column_slice(n, k, &data);
        let gram = (m.transpose() * &m).symmetric_eigenvalues();
        let spectral = gram.iter().copied().fold(0.0, f64::max).sqrt();
        prop_assert!(close(weak.value, spectral, 1e-9));
    }

    #[test]
    fn jacobi_svd_reconstructs((rows, cols, data) in (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| (Just(r), Just(c), entries(r * c))))
    {
        let a = DMatrix::from_row_slice(rows, cols, &data);
        let d = svd(&a);
        let mut back = DMatrix::zeros(rows, cols);
        for (r, s) in d.values.iter().enumerate() {
            back += d.u.column(r) * d.v.column(r).transpose() * *s;
        }
        prop_assert!((back - &a).norm() <= 1e-12 * a.norm().max(1.0));
        prop_assert!(d.values.windows(2).all(|w| w[0] >= w[1]));
        let frobenius = d.values.iter().map(|s| s * s).sum::<f64>().sqrt();
        prop_assert!(close(frobenius, a.norm(), 1e-12));
    }
}
