//! Entropy-number bounds for embeddings between finite-dimensional
//! mixed-norm sequence spaces `ℓ_p^b(ℓ_q^d) -> ℓ_r^b(ℓ_u^d)`.
//!
//! The crate has three layers that check each other:
//!
//! - **Formulas** ([`rates`], [`besov`]): closed-form rate calculators with
//!   regime tags (all implied constants set to 1), the abstract
//!   `D(m,k)`/`A(k,b)` scans, volumetric identities, and the block-sequence
//!   pipeline that yields dimension-free `m^{−(r₀−r₁)}` rates in the small
//!   mixed-smoothness regime.
//! - **Certificates** ([`packing`], [`covering`], [`designs`], [`grid`]):
//!   explicit point sets with claimed separation/radius, re-verifiable from
//!   raw data; built from greedy Gilbert–Varshamov codes, bounded-overlap
//!   subset families, the dyadic-grid cuboid covering and the best-s-rows
//!   sparse covering.
//! - **Oracles** ([`oracle`]): brute-force greedy packings/coverings over
//!   discretized balls for tiny dimensions, giving two-sided empirical
//!   entropy brackets against which formulas and certificates are validated.
//!
//! Everything is deterministic given a seed, immutable after construction,
//! and safe to share across threads.

pub mod besov;
pub mod covering;
pub mod curve;
pub mod designs;
pub mod error;
pub mod exponent;
pub mod grid;
pub mod matrix;
pub mod oracle;
pub mod packing;
pub mod rates;
pub mod sampling;
pub mod util;

pub use curve::{composition_rule, sandwich_check, sum_rule, BoundCurve, CurvePoint};
pub use error::{Error, Result};
pub use exponent::{
    mixed_quasi_norm_constant, quasi_norm_constant, Exponent, ExponentTuple, QuasiNormConstant,
};
pub use matrix::{mixed_norm, mixed_norm_diff, MixedMatrix};
