//! Exact plurigenus computations for Fano 3-folds.
//!
//! * [`basket`]: Reid baskets and orbifold Riemann-Roch `h0(-mK)`.
//! * [`hypersurface`]: Hilbert series of weighted hypersurfaces and monomial counts.
//! * [`verify`], [`table`], [`infer`]: the Iano-Fletcher `X_{6d}` table, its
//!   consistency checks and basket recovery from Hilbert series.
//! * [`thresholds`]: generic finiteness and birationality criteria for `|-mK|`.
//!
//! All arithmetic is exact; see [`Rational`].

pub mod basket;
pub mod error;
pub mod hypersurface;
pub mod infer;
pub mod par;
pub mod rational;
pub mod table;
pub mod thresholds;
pub mod verify;

pub use basket::{
    basket_correction, h0_sequence, parse_basket, point_correction, reid_h0, Basket,
    NumericalData, OrbifoldPoint,
};
pub use error::{Error, Result};
pub use hypersurface::{
    denumerant, family_from_ab, hilbert_coeffs, s_count, s_prime_count, volume_from_weights,
    AbFamily, WeightedFamily,
};
pub use infer::{infer_basket, BasketSearch};
pub use par::Execution;
pub use rational::{ArithOp, Rational};
pub use table::{builtin_table, TableRow};
pub use thresholds::{
    certify, epsilon, family_thresholds, zeta_lower_bound, Certificate, SetupParams, Status,
};
pub use verify::{verify_all, verify_row, VerificationReport};
