//! Resonance-method experiments for large values of Dirichlet L-functions
//! modulo a prime.
//!
//! The numeric kernels ([`special`], [`sum`], [`quad`], [`chargroup`],
//! [`lfunc`]) are generic over a [`Real`] scalar (`f32` or `f64`). The
//! resonator, resonance-sum and experiment layers work in `f64` through the
//! aliases below.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chargroup;
pub mod error;
pub mod extremes;
pub mod lfunc;
pub mod numth;
pub mod oracle;
pub mod quad;
pub mod resonance;
pub mod resonator;
pub mod scalar;
pub mod special;
pub mod sum;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type Group = chargroup::CharacterGroup<f64>;
pub type Char<'g> = chargroup::Character<'g, f64>;
pub type Sigma = lfunc::SigmaPoint<f64>;
pub type LValue64 = lfunc::LValue<f64>;
