//! Recovering candidate baskets from a family's Hilbert series.
//!
//! The series fixes `h0(-mK)` for every `m`, hence the correction
//! `l(m+1) = main_term(m) - h0(-mK)`. Every point adds a non-negative amount to
//! each `l(m+1)`, so a depth-first search over canonically ordered points can
//! stop as soon as any degree is overshot.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::basket::{rr_main_term, Basket, OrbifoldPoint};
use crate::error::{Error, Result};
use crate::hypersurface::{hilbert_coeffs, volume_from_weights, AbFamily};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasketSearch {
    /// Matching baskets in the order the search visits them.
    pub matches: Vec<Basket>,
    /// Why the search was skipped, when the target sequence is unusable.
    pub diagnostic: Option<String>,
    /// Corrections `l(m+1)` for `m = 1..=n` that every match reproduces.
    pub target: Vec<Rational>,
}

/// `l(m+1)` for `m = 1..=n` implied by the Hilbert series of `family`.
pub fn derived_corrections(family: &AbFamily, n: u64) -> Result<Vec<Rational>> {
    let weighted = family.weighted();
    let volume = volume_from_weights(&weighted);
    let hilbert = hilbert_coeffs(&weighted, n)?;
    Ok((1..=n)
        .map(|m| rr_main_term(&volume, m) - Rational::from(BigInt::from(hilbert[m as usize].clone())))
        .collect())
}

struct Search<'a> {
    candidates: &'a [(OrbifoldPoint, Vec<BigInt>)],
    max_points: u64,
    chosen: Vec<OrbifoldPoint>,
    found: Vec<Basket>,
}

impl Search<'_> {
    fn run(&mut self, start: usize, remaining: &mut [BigInt]) {
        if remaining.iter().all(Zero::is_zero) {
            self.found.push(Basket::from_points(self.chosen.iter().copied()));
        }
        if self.chosen.len() as u64 == self.max_points {
            return;
        }
        for (idx, (point, contrib)) in self.candidates.iter().enumerate().skip(start) {
            let fits = remaining.iter().zip(contrib).all(|(rem, c)| c <= rem);
            if !fits {
                continue;
            }
            for (rem, c) in remaining.iter_mut().zip(contrib) {
                *rem -= c;
            }
            self.chosen.push(*point);
            self.run(idx, remaining);
            self.chosen.pop();
            for (rem, c) in remaining.iter_mut().zip(contrib) {
                *rem += c;
            }
        }
    }
}

/// All baskets of at most `max_points` points with `r <= r_max` whose corrections
/// agree with the Hilbert series of `family` for `1 <= m <= n`.
pub fn infer_basket(family: &AbFamily, r_max: u64, max_points: u64, n: u64) -> Result<BasketSearch> {
    if r_max < 2 {
        return Err(Error::SearchBounds(format!("r_max must be at least 2, got {r_max}")));
    }
    if max_points == 0 {
        return Err(Error::SearchBounds("max_points must be positive".into()));
    }
    if n == 0 {
        return Err(Error::SearchBounds("n must be positive".into()));
    }
    let target = derived_corrections(family, n)?;
    let skipped = |diagnostic: String| BasketSearch {
        matches: Vec::new(),
        diagnostic: Some(diagnostic),
        target: target.clone(),
    };
    if let Some((m, l)) = (1..).zip(&target).find(|(_, l)| l.is_negative()) {
        return Ok(skipped(format!("derived l({}) = {l} is negative at m={m}", m + 1)));
    }

    // Point corrections have denominators dividing 2r; scale by 2 * lcm(2..=r_max).
    let scale: BigInt = (2..=r_max).fold(BigInt::from(1), |acc, r| acc.lcm(&BigInt::from(r))) * 2;
    let scale_r = Rational::from(scale);
    let mut remaining = Vec::with_capacity(target.len());
    for (m, l) in (1..).zip(&target) {
        let scaled = l.clone() * &scale_r;
        match scaled.to_integer() {
            Ok(v) => remaining.push(v),
            Err(_) => {
                return Ok(skipped(format!(
                    "derived l({}) = {l} is not a sum of corrections with r <= {r_max} (m={m})",
                    m + 1
                )))
            }
        }
    }

    let candidates: Vec<(OrbifoldPoint, Vec<BigInt>)> = OrbifoldPoint::all_up_to(r_max)
        .into_iter()
        .map(|p| {
            let basket = Basket::from_points([p]);
            let seq = basket.correction_sequence(n);
            let scaled = seq[1..]
                .iter()
                .map(|l| (l.clone() * &scale_r).to_integer().expect("r divides the scale"))
                .collect();
            (p, scaled)
        })
        .collect();

    let mut search = Search {
        candidates: &candidates,
        max_points,
        chosen: Vec::new(),
        found: Vec::new(),
    };
    search.run(0, &mut remaining);
    Ok(BasketSearch {
        matches: search.found,
        diagnostic: None,
        target,
    })
}
