//! Exact polynomial algebra over the rationals and prime fields.
//!
//! Gröbner bases for ideals and submodules of free modules, quotient rings
//! `k[x]/J`, ideal operations (colon, intersection, saturation,
//! elimination), Krull dimension, minimal primes and heights.

pub mod budget;
pub mod dimension;
pub mod error;
pub mod factor;
pub mod groebner;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod presented;
pub mod primes;
pub mod ring;
pub mod scalar;

pub use error::{AlgebraError, Result};
pub use groebner::{ModuleGb, SyzygyGb, Vector};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::Poly;
pub use presented::{Height, Ideal, PresentedRing};
pub use ring::PolyRing;
pub use scalar::{Field, Scalar};
