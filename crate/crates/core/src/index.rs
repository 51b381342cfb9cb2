//! Summability exponents in `[1, ∞]` together with their conjugates.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One side of an exponent pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

/// An exponent `p ∈ [1, ∞]`.
///
/// The conjugate exponent is stored next to `p` so that taking the conjugate
/// twice returns a bit-identical value. `∞` is a proper variant, never a
/// sentinel float.
#[derive(Debug, Clone, Copy)]
pub struct Index {
    p: Exponent,
    conj: Exponent,
}

impl Index {
    pub const ONE: Index = Index {
        p: Exponent::Finite(1.0),
        conj: Exponent::Infinity,
    };
    pub const TWO: Index = Index {
        p: Exponent::Finite(2.0),
        conj: Exponent::Finite(2.0),
    };
    pub const INFINITY: Index = Index {
        p: Exponent::Infinity,
        conj: Exponent::Finite(1.0),
    };

    /// Builds a finite exponent. `p` must lie in `[1, ∞)`.
    pub fn finite(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidIndex(format!("{p} is not in [1, inf)")));
        }
        if p == 1.0 {
            return Ok(Self::ONE);
        }
        if let Some((a, b)) = small_ratio(p) {
            return Self::ratio(a, b);
        }
        Ok(Index {
            p: Exponent::Finite(p),
            conj: Exponent::Finite(p / (p - 1.0)),
        })
    }

    /// Builds `a/b` with its conjugate `a/(a-b)` computed from the integers,
    /// so `4/3` and `4` are exact partners.
    pub fn ratio(a: u64, b: u64) -> Result<Self> {
        if b == 0 || a < b {
            return Err(Error::InvalidIndex(format!("{a}/{b} is not in [1, inf)")));
        }
        if a == b {
            return Ok(Self::ONE);
        }
        Ok(Index {
            p: Exponent::Finite(a as f64 / b as f64),
            conj: Exponent::Finite(a as f64 / (a - b) as f64),
        })
    }

    pub fn exponent(&self) -> Exponent {
        self.p
    }

    /// `Some(p)` for finite exponents.
    pub fn value(&self) -> Option<f64> {
        match self.p {
            Exponent::Finite(p) => Some(p),
            Exponent::Infinity => None,
        }
    }

    /// `p` as an `f64`, with `∞` mapped to `f64::INFINITY` for arithmetic.
    pub fn as_f64(&self) -> f64 {
        self.value().unwrap_or(f64::INFINITY)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.p, Exponent::Infinity)
    }

    pub fn is_one(&self) -> bool {
        matches!(self.p, Exponent::Finite(p) if p == 1.0)
    }

    pub fn conjugate(&self) -> Index {
        Index {
            p: self.conj,
            conj: self.p,
        }
    }
}

/// `(a, b)` with `b ≤ 16` and `a / b` bit-identical to `p`.
fn small_ratio(p: f64) -> Option<(u64, u64)> {
    (1..=16u64).find_map(|b| {
        let a = (p * b as f64).round();
        (a >= b as f64 && a < 1e15 && a / b as f64 == p).then_some((a as u64, b))
    })
}

/// `p ↦ p*` with `1 ↦ ∞` and `∞ ↦ 1`.
pub fn conjugate_index(p: f64) -> Result<f64> {
    if p.is_infinite() && p > 0.0 {
        return Ok(1.0);
    }
    Ok(Index::finite(p)?.conjugate().as_f64())
}

impl PartialEq for Index {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p {
            Exponent::Finite(p) => match small_ratio(p) {
                Some((a, 1)) => write!(f, "{a}"),
                Some((a, b)) => write!(f, "{a}/{b}"),
                None => write!(f, "{p}"),
            },
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Index {
    type Err = Error;

    /// Accepts `inf`, integers, decimals and ratios such as `4/3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inf" | "infinity" | "∞" | "Inf" => return Ok(Index::INFINITY),
            _ => {}
        }
        if let Some((a, b)) = s.split_once('/') {
            let a: u64 = a
                .trim()
                .parse()
                .map_err(|_| Error::InvalidIndex(s.to_string()))?;
            let b: u64 = b
                .trim()
                .parse()
                .map_err(|_| Error::InvalidIndex(s.to_string()))?;
            return Index::ratio(a, b);
        }
        let p: f64 = s.parse().map_err(|_| Error::InvalidIndex(s.to_string()))?;
        if p.is_infinite() {
            return Ok(Index::INFINITY);
        }
        Index::finite(p)
    }
}

impl From<Exponent> for f64 {
    fn from(e: Exponent) -> f64 {
        match e {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

/// `ℓ_p` norm of a finite list of reals.
pub fn lp_norm(values: &[f64], p: Index) -> f64 {
    match p.exponent() {
        Exponent::Infinity => values.iter().fold(0.0_f64, |m, v| m.max(v.abs())),
        Exponent::Finite(1.0) => values.iter().map(|v| v.abs()).sum(),
        Exponent::Finite(2.0) => {
            let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            if scale == 0.0 {
                return 0.0;
            }
            scale
                * values
                    .iter()
                    .map(|v| (v / scale).powi(2))
                    .sum::<f64>()
                    .sqrt()
        }
        Exponent::Finite(q) => {
            let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            if scale == 0.0 {
                return 0.0;
            }
            scale
                * values
                    .iter()
                    .map(|v| (v.abs() / scale).powf(q))
                    .sum::<f64>()
                    .powf(1.0 / q)
        }
    }
}

/// A norming functional for `values` in `ℓ_p`: an element `w` of the unit
/// ball of `ℓ_{p*}` with `⟨w, values⟩ = ‖values‖_p`. Zero maps to zero.
pub fn lp_witness(values: &[f64], p: Index) -> Vec<f64> {
    let norm = lp_norm(values, p);
    let mut w = vec![0.0; values.len()];
    if norm == 0.0 {
        return w;
    }
    match p.exponent() {
        Exponent::Infinity => {
            let (i, _) = values
                .iter()
                .enumerate()
                .fold((0, -1.0), |(bi, bv), (i, v)| {
                    if v.abs() > bv {
                        (i, v.abs())
                    } else {
                        (bi, bv)
                    }
                });
            w[i] = values[i].signum();
        }
        Exponent::Finite(1.0) => {
            for (wi, v) in w.iter_mut().zip(values) {
                if *v != 0.0 {
                    *wi = v.signum();
                }
            }
        }
        Exponent::Finite(q) => {
            for (wi, v) in w.iter_mut().zip(values) {
                if *v != 0.0 {
                    *wi = v.signum() * (v.abs() / norm).powf(q - 1.0);
                }
            }
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates() {
        assert_eq!(conjugate_index(2.0).unwrap(), 2.0);
        assert_eq!(conjugate_index(1.0).unwrap(), f64::INFINITY);
        assert_eq!(conjugate_index(f64::INFINITY).unwrap(), 1.0);
        assert!((conjugate_index(4.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(conjugate_index(0.5).is_err());
        assert!(conjugate_index(f64::NAN).is_err());
    }

    #[test]
    fn conjugate_is_involution_bitwise() {
        for s in ["1", "4/3", "2", "3", "4", "1.7", "inf"] {
            let p: Index = s.parse().unwrap();
            let back = p.conjugate().conjugate();
            assert_eq!(p.as_f64().to_bits(), back.as_f64().to_bits(), "{s}");
        }
        let r: Index = "4/3".parse().unwrap();
        assert_eq!(r.conjugate().as_f64(), 4.0);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("inf".parse::<Index>().unwrap().to_string(), "inf");
        assert_eq!("2".parse::<Index>().unwrap().to_string(), "2");
        assert!("0.3".parse::<Index>().is_err());
        assert!("x".parse::<Index>().is_err());
        assert!("2/3".parse::<Index>().is_err());
        assert_eq!("4/3".parse::<Index>().unwrap().to_string(), "4/3");
        assert_eq!(Index::finite(4.0 / 3.0).unwrap().conjugate().as_f64(), 4.0);
        assert_eq!("1.7".parse::<Index>().unwrap().to_string(), "17/10");
        assert_eq!("4".parse::<Index>().unwrap().conjugate().to_string(), "4/3");
    }

    #[test]
    fn norms_and_witnesses() {
        let v = [3.0, -4.0];
        assert_eq!(lp_norm(&v, Index::TWO), 5.0);
        assert_eq!(lp_norm(&v, Index::ONE), 7.0);
        assert_eq!(lp_norm(&v, Index::INFINITY), 4.0);
        for p in [
            Index::ONE,
            Index::TWO,
            Index::INFINITY,
            Index::ratio(4, 3).unwrap(),
        ] {
            let w = lp_witness(&v, p);
            let pair: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!((pair - lp_norm(&v, p)).abs() < 1e-12);
            assert!((lp_norm(&w, p.conjugate()) - 1.0).abs() < 1e-12);
        }
    }
}
