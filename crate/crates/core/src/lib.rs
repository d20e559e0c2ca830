//! Exact q-series arithmetic for generalized overcubic partitions.
//!
//! - [`series`]: truncated power series over `Z` or `Z/mZ`, with the
//!   dissection operators `q -> q^k` and `Σ c_{kn+r} q^n`.
//! - [`eta_theta`]: eta quotients `∏ f_n^k`, Ramanujan's `f(a, b)` and the
//!   named generating functions built from them.
//! - [`enumerate`]: dynamic-programming and brute-force counts of
//!   partitions, overpartitions and their colored variants.
//! - [`classify`]: the mod-4 classification of `ā_c(n)`, congruence family
//!   sweeps and the identity checker.

pub mod classify;
pub mod enumerate;
pub mod eta_theta;
pub mod series;

pub use classify::{
    check_identity, classify_n, theorem_mod4_residue, verify_conjecture73, verify_family,
    verify_theorem15, verify_theorem_mod4, CongruenceFamily, Identity, Mod4Class, Status,
    VerificationReport, VerifyError,
};
pub use enumerate::{DecompositionCounts, EnumError};
pub use eta_theta::{EtaError, EtaQuotient, Sign, ThetaSpec};
pub use series::{Series, SeriesError};
