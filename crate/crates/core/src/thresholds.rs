//! Generic finiteness and birationality criteria for `|-mK|`.
//!
//! Inputs `(m0, m1, mu0, zeta, g)` are geometric data supplied by the caller.
//! Nothing is guessed: a rule that needs a missing value simply does not fire.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypersurface::AbFamily;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupParams {
    m0: u64,
    m1: u64,
    mu0: Option<Rational>,
    zeta: Option<Rational>,
    genus: Option<u64>,
}

impl SetupParams {
    pub fn new(
        m0: u64,
        m1: u64,
        mu0: Option<Rational>,
        zeta: Option<Rational>,
        genus: Option<u64>,
    ) -> Result<Self> {
        if m0 == 0 {
            return Err(Error::Setup("m0 must be positive".into()));
        }
        if m1 < m0 {
            return Err(Error::Setup(format!("m1 < m0 ({m1} < {m0})")));
        }
        if let Some(mu) = &mu0 {
            if !mu.is_positive() || *mu > Rational::from(m0) {
                return Err(Error::Setup(format!("mu0 must satisfy 0 < mu0 <= m0, got {mu}")));
            }
        }
        if let Some(z) = &zeta {
            if !z.is_positive() {
                return Err(Error::Setup(format!("zeta must be positive, got {z}")));
            }
        }
        Ok(SetupParams {
            m0,
            m1,
            mu0,
            zeta,
            genus,
        })
    }

    /// Only `m0` and `m1` known.
    pub fn bare(m0: u64, m1: u64) -> Result<Self> {
        SetupParams::new(m0, m1, None, None, None)
    }

    pub fn with_genus(mut self, genus: u64) -> Self {
        self.genus = Some(genus);
        self
    }

    /// Fills in `mu0 = m0` and the lower bound on `zeta` implied by the genus.
    /// Requires a known genus.
    pub fn conservative(&self) -> Result<Self> {
        let genus = self.genus.ok_or(Error::InsufficientData("genus unknown"))?;
        let mu0 = self.mu0.clone().unwrap_or_else(|| Rational::from(self.m0));
        let zeta = match &self.zeta {
            Some(z) => z.clone(),
            None => zeta_lower_bound(genus, &mu0, self.m1),
        };
        SetupParams::new(self.m0, self.m1, Some(mu0), Some(zeta), Some(genus))
    }

    pub fn m0(&self) -> u64 {
        self.m0
    }

    pub fn m1(&self) -> u64 {
        self.m1
    }

    pub fn mu0(&self) -> Option<&Rational> {
        self.mu0.as_ref()
    }

    pub fn zeta(&self) -> Option<&Rational> {
        self.zeta.as_ref()
    }

    pub fn genus(&self) -> Option<u64> {
        self.genus
    }
}

/// Lower bound for `zeta`: `(2g - 1) / (mu0 + m1)` when `g > 0`, and 2 when `g = 0`.
pub fn zeta_lower_bound(genus: u64, mu0: &Rational, m1: u64) -> Rational {
    if genus == 0 {
        return Rational::from(2u64);
    }
    let num = Rational::from(2 * genus - 1);
    num.checked_div(&(mu0 + &Rational::from(m1)))
        .expect("mu0 + m1 > 0")
}

/// `epsilon(m) = (m + 1 - mu0 - m1) * zeta`.
pub fn epsilon(params: &SetupParams, m: u64) -> Result<Rational> {
    let mu0 = params.mu0.as_ref().ok_or(Error::InsufficientData("mu0 unknown"))?;
    let zeta = params.zeta.as_ref().ok_or(Error::InsufficientData("zeta unknown"))?;
    let factor = Rational::from(m + 1) - mu0 - Rational::from(params.m1);
    Ok(factor * zeta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    NotCertified,
    Certified,
}

impl Status {
    pub fn is_certified(self) -> bool {
        self == Status::Certified
    }
}

impl From<bool> for Status {
    fn from(b: bool) -> Self {
        if b {
            Status::Certified
        } else {
            Status::NotCertified
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "m >= 2m0+2m1")]
    DoubleSum,
    #[serde(rename = "g != 1 and m >= m0+m1+1")]
    GenusNotOne,
    #[serde(rename = "m >= 3m0+3m1")]
    TripleSum,
    #[serde(rename = "epsilon(m) > max(2-g, 0)")]
    EpsilonFinite,
    #[serde(rename = "epsilon(m) > 2")]
    EpsilonBirational,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::DoubleSum => "m >= 2m0+2m1",
            Rule::GenusNotOne => "g != 1 and m >= m0+m1+1",
            Rule::TripleSum => "m >= 3m0+3m1",
            Rule::EpsilonFinite => "epsilon(m) > max(2-g, 0)",
            Rule::EpsilonBirational => "epsilon(m) > 2",
        }
    }

    fn gives_birational(self) -> bool {
        matches!(self, Rule::TripleSum | Rule::EpsilonBirational)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// What the criteria certify for `|-mK|`. `rule` is the first rule, in evaluation
/// order, that established the strongest conclusion; `fired` lists every rule that held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub gen_finite: Status,
    pub birational: Status,
    pub rule: Option<Rule>,
    pub fired: Vec<Rule>,
}

pub fn certify(params: &SetupParams, m: u64) -> Certificate {
    let (m0, m1) = (params.m0, params.m1);
    let mut fired = Vec::new();

    if m >= 2 * (m0 + m1) {
        fired.push(Rule::DoubleSum);
    }
    let past_base = m > m0 + m1;
    if past_base && params.genus.is_some_and(|g| g != 1) {
        fired.push(Rule::GenusNotOne);
    }
    if m >= 3 * (m0 + m1) {
        fired.push(Rule::TripleSum);
    }
    if past_base {
        if let Ok(eps) = epsilon(params, m) {
            if let Some(g) = params.genus {
                let floor = Rational::from(2i64 - g as i64).max(Rational::zero());
                if eps > floor {
                    fired.push(Rule::EpsilonFinite);
                }
            }
            if eps > Rational::from(2u64) {
                fired.push(Rule::EpsilonBirational);
            }
        }
    }

    let birational = fired.iter().any(|r| r.gives_birational());
    let rule = if birational {
        fired.iter().copied().find(|r| r.gives_birational())
    } else {
        fired.first().copied()
    };
    Certificate {
        gen_finite: (!fired.is_empty()).into(),
        birational: birational.into(),
        rule,
        fired,
    }
}

/// `(2d, 3d)`: where the criteria with `m0 = a`, `m1 = b` certify generic finiteness
/// and birationality.
pub fn family_thresholds(f: &AbFamily) -> (u64, u64) {
    let d = f.d();
    (2 * d, 3 * d)
}
