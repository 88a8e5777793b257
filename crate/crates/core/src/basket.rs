//! Reid baskets and the orbifold Riemann-Roch plurigenus formula.
//!
//! For a basket `B = {(b_i, r_i)}` and volume `v = (-K)^3`,
//!
//! ```text
//! h0(-mK) = m(m+1)(2m+1)/12 * v + (2m+1) - l(m+1)
//! l(m+1)  = sum_i sum_{j=1..m} jb_i' (r_i - jb_i') / (2 r_i)
//! ```
//!
//! where `jb_i'` is the least non-negative residue of `j * b_i` mod `r_i`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A virtual quotient point of type `1/r(1, -1, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbifoldPoint {
    // field order gives the canonical (r, b) ordering
    r: u64,
    b: u64,
}

impl OrbifoldPoint {
    pub fn new(b: u64, r: u64) -> Result<Self> {
        let bad = |reason| Err(Error::OrbifoldPoint { b, r, reason });
        if r < 2 {
            return bad("r must be at least 2");
        }
        if b == 0 {
            return bad("b must be positive");
        }
        if 2 * b > r {
            return bad("b must satisfy 2b <= r");
        }
        if b.gcd(&r) != 1 {
            return bad("b and r must be coprime");
        }
        Ok(OrbifoldPoint { r, b })
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// `(r^2 - 1) / 12`, the contribution of one full period of residues.
    pub fn period_sum(&self) -> Rational {
        Rational::new(self.r * self.r - 1, 12u64).expect("nonzero")
    }

    /// Numerators over `2r` of the cumulative correction, for `m = 0..=n`.
    fn cumulative_numerators(&self, n: u64) -> Vec<u128> {
        let (b, r) = (self.b as u128, self.r as u128);
        let mut out = Vec::with_capacity(n as usize + 1);
        let mut residue = 0u128;
        let mut acc = 0u128;
        out.push(0);
        for _ in 1..=n {
            residue = (residue + b) % r;
            acc += residue * (r - residue);
            out.push(acc);
        }
        out
    }

    /// Every valid point with `r <= r_max`, in canonical order.
    pub fn all_up_to(r_max: u64) -> Vec<OrbifoldPoint> {
        (2..=r_max)
            .flat_map(|r| (1..=r / 2).filter_map(move |b| OrbifoldPoint::new(b, r).ok()))
            .collect()
    }
}

impl fmt::Display for OrbifoldPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.b, self.r)
    }
}

/// `sum_{j=1..m} jb'(r - jb') / (2r)` for a single point.
pub fn point_correction(p: &OrbifoldPoint, m: u64) -> Rational {
    let acc = *p.cumulative_numerators(m).last().expect("nonempty");
    Rational::new(BigInt::from(acc), 2 * p.r).expect("nonzero")
}

/// A multiset of orbifold points, sorted by `(r, b)` with explicit multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Basket {
    entries: Vec<(OrbifoldPoint, u64)>,
}

impl Basket {
    pub fn empty() -> Self {
        Basket::default()
    }

    pub fn from_points<I: IntoIterator<Item = OrbifoldPoint>>(points: I) -> Self {
        Basket::from_entries(points.into_iter().map(|p| (p, 1)))
    }

    /// Builds a basket from `(point, multiplicity)` pairs; zero multiplicities are dropped
    /// and repeated points merged.
    pub fn from_entries<I: IntoIterator<Item = (OrbifoldPoint, u64)>>(entries: I) -> Self {
        let mut entries: Vec<_> = entries.into_iter().filter(|&(_, k)| k > 0).collect();
        entries.sort_by_key(|&(p, _)| p);
        let mut merged: Vec<(OrbifoldPoint, u64)> = Vec::with_capacity(entries.len());
        for (p, k) in entries {
            match merged.last_mut() {
                Some((q, n)) if *q == p => *n += k,
                _ => merged.push((p, k)),
            }
        }
        Basket { entries: merged }
    }

    pub fn entries(&self) -> &[(OrbifoldPoint, u64)] {
        &self.entries
    }

    /// Points with repetition, in canonical order.
    pub fn points(&self) -> impl Iterator<Item = OrbifoldPoint> + '_ {
        self.entries
            .iter()
            .flat_map(|&(p, k)| std::iter::repeat_n(p, k as usize))
    }

    /// Number of points counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.entries.iter().map(|&(_, k)| k).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.entries.iter().map(|(p, _)| p.r).max()
    }

    /// `l(m+1)` for `m = 0..=n`.
    pub fn correction_sequence(&self, n: u64) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n as usize + 1];
        for &(p, k) in &self.entries {
            let den = 2 * p.r;
            for (slot, num) in out.iter_mut().zip(p.cumulative_numerators(n)) {
                let term = Rational::new(BigInt::from(num) * k, den).expect("nonzero");
                *slot = &*slot + &term;
            }
        }
        out
    }
}

/// `l(m+1)`: the point corrections summed over the basket with multiplicity.
pub fn basket_correction(basket: &Basket, m: u64) -> Rational {
    basket
        .entries
        .iter()
        .map(|&(p, k)| point_correction(&p, m) * Rational::from(k))
        .sum()
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, k)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if *k > 1 {
                write!(f, "{k}x")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Basket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_basket(s)
    }
}

/// Parses a comma-separated list of `b/r` or `k x b/r` items. Whitespace is ignored
/// and the empty string is the empty basket.
pub fn parse_basket(text: &str) -> Result<Basket> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Basket::empty());
    }
    let mut entries = Vec::new();
    for item in compact.split(',') {
        let fail = |reason: &str| Error::BasketItem {
            item: item.to_string(),
            reason: reason.to_string(),
        };
        let (mult, point) = match item.split_once(['x', 'X', '×']) {
            Some((k, rest)) => {
                let k: u64 = k.parse().map_err(|_| fail("bad multiplicity"))?;
                if k == 0 {
                    return Err(fail("multiplicity must be positive"));
                }
                (k, rest)
            }
            None => (1, item),
        };
        let (b, r) = point.split_once('/').ok_or_else(|| fail("expected b/r"))?;
        let b: u64 = b.parse().map_err(|_| fail("bad b"))?;
        let r: u64 = r.parse().map_err(|_| fail("bad r"))?;
        let p = OrbifoldPoint::new(b, r).map_err(|e| match e {
            Error::OrbifoldPoint { reason, .. } => fail(reason),
            other => other,
        })?;
        entries.push((p, mult));
    }
    Ok(Basket::from_entries(entries))
}

#[derive(Serialize, Deserialize)]
struct BasketEntry {
    b: u64,
    r: u64,
    mult: u64,
}

impl Serialize for Basket {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<_> = self
            .entries
            .iter()
            .map(|&(p, mult)| BasketEntry { b: p.b, r: p.r, mult })
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Basket {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<BasketEntry>::deserialize(deserializer)?;
        let mut entries = Vec::with_capacity(rows.len());
        for e in rows {
            let p = OrbifoldPoint::new(e.b, e.r).map_err(serde::de::Error::custom)?;
            entries.push((p, e.mult));
        }
        Ok(Basket::from_entries(entries))
    }
}

/// Anti-canonical volume together with a basket: everything the plurigenera depend on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalData {
    volume: Rational,
    basket: Basket,
}

impl NumericalData {
    pub fn new(volume: Rational, basket: Basket) -> Result<Self> {
        if !volume.is_positive() {
            return Err(Error::NonPositiveVolume(volume.to_string()));
        }
        Ok(NumericalData { volume, basket })
    }

    pub fn volume(&self) -> &Rational {
        &self.volume
    }

    pub fn basket(&self) -> &Basket {
        &self.basket
    }
}

/// The correction-free part `m(m+1)(2m+1)/12 * v + (2m+1)`.
pub fn rr_main_term(volume: &Rational, m: u64) -> Rational {
    let m = BigInt::from(m);
    let cubic: BigInt = &m * (&m + 1) * (2 * &m + 1);
    let cubic = Rational::new(cubic, 12).expect("nonzero");
    cubic * volume + Rational::from(2 * m + 1)
}

/// Converts a Riemann-Roch value at `m` into a plurigenus, rejecting non-integral
/// or negative values.
pub fn to_plurigenus(value: Rational, m: u64) -> Result<BigUint> {
    let inconsistent = || Error::InconsistentData {
        m,
        value: value.to_string(),
    };
    let n = value.to_integer().map_err(|_| inconsistent())?;
    if n.is_negative() {
        return Err(inconsistent());
    }
    Ok(n.magnitude().clone())
}

/// `h0(-mK)` from Riemann-Roch; non-integral or negative values are errors.
pub fn reid_h0(data: &NumericalData, m: u64) -> Result<BigUint> {
    let value = rr_main_term(&data.volume, m) - basket_correction(&data.basket, m);
    to_plurigenus(value, m)
}

/// `[h0(-mK) for m in 0..=n]`.
pub fn h0_sequence(data: &NumericalData, n: u64) -> Result<Vec<BigUint>> {
    data.basket
        .correction_sequence(n)
        .into_iter()
        .zip(0..)
        .map(|(l, m)| to_plurigenus(rr_main_term(&data.volume, m) - l, m))
        .collect()
}
