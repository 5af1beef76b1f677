//! Computable non-Noetherian rings and their transfer rules.

pub mod badring;
pub mod subring;
pub mod trivext;
pub mod valuation;

pub use badring::{bad_colon_chain, proregularity_counterexample, BadRing, ColonChain};
pub use subring::{subring_colon_identities, ColonCertificate, SubringModel};
pub use trivext::TrivialExtension;
pub use valuation::{PairCertificate, RatFn, ValuationModel};
