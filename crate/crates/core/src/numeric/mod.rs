//! Numeric side: primes, arithmetic modulo `p^N`, the harmonic-sum DP, window
//! values modelling `A_N`, the evaluation map on `H^1`, and the residue cache.

pub mod an;
pub mod cache;
pub mod eval;
pub mod fmzv;
pub mod modular;
pub mod primes;

pub use an::{an_eq, AnValue};
pub use cache::{CacheStats, FmzvKey, ResidueCache};
pub use eval::Evaluator;
pub use fmzv::{fmzv, PrimeContext};
pub use modular::{inv_mod_pn, Modulus};
pub use primes::{primes_in, PrimeWindow};
