//! Weighted hypersurfaces `X_d ⊂ P(a0, ..., a4)` and their Hilbert series
//! `(1 - q^d) / prod (1 - q^{a_i})`, expanded through denumerant counts.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Five ascending weights and a hypersurface degree exceeding all of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedFamily {
    weights: [u64; 5],
    degree: u64,
}

impl WeightedFamily {
    /// Weights are sorted on construction.
    pub fn new(weights: &[u64], degree: u64) -> Result<Self> {
        let mut w: [u64; 5] = weights
            .try_into()
            .map_err(|_| Error::Weights(format!("need 5 weights, got {}", weights.len())))?;
        w.sort_unstable();
        if w[0] == 0 {
            return Err(Error::Weights("weights must be positive".into()));
        }
        if degree <= w[4] {
            return Err(Error::Weights(format!(
                "degree {degree} must exceed the largest weight {}",
                w[4]
            )));
        }
        Ok(WeightedFamily { weights: w, degree })
    }

    pub fn weights(&self) -> &[u64; 5] {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }
}

impl fmt::Display for WeightedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.weights.map(|x| x.to_string()).join(",");
        write!(f, "X_{} in P({w})", self.degree)
    }
}

/// The family `X_{6d} ⊂ P(1, a, b, 2d, 3d)` with `d = a + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbFamily {
    a: u64,
    b: u64,
}

impl AbFamily {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || a > b {
            return Err(Error::Family { a, b });
        }
        Ok(AbFamily { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn d(&self) -> u64 {
        self.a + self.b
    }

    pub fn weights(&self) -> [u64; 5] {
        let d = self.d();
        [1, self.a, self.b, 2 * d, 3 * d]
    }

    pub fn degree(&self) -> u64 {
        6 * self.d()
    }

    pub fn weighted(&self) -> WeightedFamily {
        WeightedFamily::new(&self.weights(), self.degree()).expect("family shape is always valid")
    }
}

pub fn family_from_ab(a: u64, b: u64) -> Result<AbFamily> {
    AbFamily::new(a, b)
}

/// `(-K)^3 = d / prod a_i`.
pub fn volume_from_weights(f: &WeightedFamily) -> Rational {
    let prod: BigInt = f.weights.iter().map(|&w| BigInt::from(w)).product();
    Rational::new(f.degree, prod).expect("weights are positive")
}

/// Number of solutions of `sum s_i w_i = k` in non-negative integers, for every `k` in `0..=n`.
pub fn denumerant_table(weights: &[u64], n: u64) -> Vec<BigUint> {
    let n = n as usize;
    let mut counts = vec![BigUint::zero(); n + 1];
    counts[0] = BigUint::from(1u32);
    for &w in weights {
        let w = w as usize;
        assert!(w > 0, "weights must be positive");
        for k in w..=n {
            let (lo, hi) = counts.split_at_mut(k);
            hi[0] += &lo[k - w];
        }
    }
    counts
}

/// Number of solutions of `sum s_i w_i = k` in non-negative integers; zero for `k < 0`.
pub fn denumerant(weights: &[u64], k: i64) -> BigUint {
    if k < 0 {
        return BigUint::zero();
    }
    denumerant_table(weights, k as u64).pop().expect("nonempty")
}

/// Coefficients of `q^0 ..= q^n` in the Hilbert series of `f`.
pub fn hilbert_coeffs(f: &WeightedFamily, n: u64) -> Result<Vec<BigUint>> {
    let counts = denumerant_table(&f.weights, n);
    let d = f.degree as usize;
    (0..counts.len())
        .map(|m| {
            if m < d {
                return Ok(counts[m].clone());
            }
            let c = BigInt::from(counts[m].clone()) - BigInt::from(counts[m - d].clone());
            if c.is_negative() {
                Err(Error::NegativeCoefficient {
                    m: m as u64,
                    value: c.to_string(),
                })
            } else {
                Ok(c.magnitude().clone())
            }
        })
        .collect()
}

/// `|S_k|`: monomials `f^s1 g^s2 h^s3 p^s4` of degree `k` in weights `(1, a, b, 2d)`.
pub fn s_count(f: &AbFamily, k: i64) -> BigUint {
    denumerant(&[1, f.a, f.b, 2 * f.d()], k)
}

/// `|S'_k|`: monomials `f^s1 g^s2 h^s3` of degree `k` in weights `(1, a, b)`.
pub fn s_prime_count(f: &AbFamily, k: i64) -> BigUint {
    denumerant(&[1, f.a, f.b], k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn ab_families() {
        let f = family_from_ab(5, 6).unwrap();
        assert_eq!(f.weights(), [1, 5, 6, 22, 33]);
        assert_eq!(f.degree(), 66);
        let f = family_from_ab(1, 1).unwrap();
        assert_eq!((f.weights(), f.degree()), ([1, 1, 1, 4, 6], 12));
        let f = family_from_ab(4, 5).unwrap();
        assert_eq!((f.weights(), f.degree()), ([1, 4, 5, 18, 27], 54));
        assert!(family_from_ab(6, 5).is_err());
        assert!(family_from_ab(0, 5).is_err());
    }

    #[test]
    fn volumes() {
        let v = |a, b| volume_from_weights(&family_from_ab(a, b).unwrap().weighted());
        assert_eq!(v(5, 6), Rational::new(1, 330).unwrap());
        assert_eq!(v(1, 1), Rational::new(1, 2).unwrap());
        assert_eq!(v(3, 5), Rational::new(1, 120).unwrap());
    }

    #[test]
    fn family_validation() {
        assert!(WeightedFamily::new(&[1, 5, 6], 66).is_err());
        assert!(WeightedFamily::new(&[0, 5, 6, 22, 33], 66).is_err());
        assert!(WeightedFamily::new(&[1, 5, 6, 22, 33], 33).is_err());
        let f = WeightedFamily::new(&[33, 1, 22, 6, 5], 66).unwrap();
        assert_eq!(f.weights(), &[1, 5, 6, 22, 33]);
    }

    #[test]
    fn denumerants() {
        assert_eq!(denumerant(&[1], 17), BigUint::from(1u32));
        assert_eq!(denumerant(&[1, 5, 6], 22), BigUint::from(13u32));
        assert_eq!(denumerant(&[2, 3], 7), BigUint::from(1u32));
        assert_eq!(denumerant(&[2, 3], -3), BigUint::zero());
        assert_eq!(denumerant(&[4], 0), BigUint::from(1u32));
    }

    #[test]
    fn hilbert() {
        let x66 = family_from_ab(5, 6).unwrap().weighted();
        assert_eq!(hilbert_coeffs(&x66, 6).unwrap(), ints(&[1, 1, 1, 1, 1, 2, 3]));
        assert_eq!(hilbert_coeffs(&x66, 0).unwrap(), ints(&[1]));
        let x12 = family_from_ab(1, 1).unwrap().weighted();
        assert_eq!(hilbert_coeffs(&x12, 1).unwrap(), ints(&[1, 3]));
    }

    #[test]
    fn negative_numerator_detected() {
        // degree far above the weights: q^d removes more than the ring has
        let f = WeightedFamily::new(&[7, 8, 9, 10, 11], 12).unwrap();
        match hilbert_coeffs(&f, 12) {
            Err(Error::NegativeCoefficient { m, .. }) => assert_eq!(m, 12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn basis_counts() {
        let f = family_from_ab(5, 6).unwrap();
        assert_eq!(s_count(&f, 0), BigUint::from(1u32));
        assert_eq!(s_count(&f, 6), BigUint::from(3u32));
        assert_eq!(s_count(&f, 33), BigUint::from(30u32));
        assert_eq!(s_prime_count(&f, 22), BigUint::from(13u32));
        assert_eq!(s_prime_count(&f, 6), BigUint::from(6 / 5 + 2u32));
        assert_eq!(s_prime_count(&f, -1), BigUint::zero());
    }
}
