//! Trailing zeroes of `n!` in an arbitrary base `b`.
//!
//! * [`zcount`] computes `Z_b(n)` in `O(log n)` from the factorization of `b`.
//! * [`jumps`] locates the points where `Z_b` increases and the size of each step.
//! * [`image`] decides which counts occur, lists the gaps, generates explicit
//!   families of missing values and counts image members below a bound.
//! * [`oracle`] recomputes everything from `n!` itself, for cross-checking.
//! * [`cli`] is the `facz` command line.

pub mod arithmetic;
pub mod cli;
pub mod error;
pub mod image;
pub mod jumps;
pub mod oracle;
mod serde_decimal;
pub mod zcount;

pub use arithmetic::{
    digit_sum, digits, factorize, is_prime, successor_digits, trailing_max_digits, valuation, DigitExpansion,
    Prime, PrimeFactorization,
};
pub use error::{Error, Result};
pub use image::{
    density_exact, density_paper_formula, family_cor2, family_cor3, family_prop3a, family_prop3b, family_prop7,
    family_prop8, gaps_up_to, in_image, min_arg_reaching, Cor3Form, DensityReport, Family, MembershipResult,
};
pub use jumps::{
    decompose_z, digit_sum_delta, is_stationary_prime_power, jump_amplitude_base, jump_amplitude_prime,
    jump_amplitude_prime_power, jump_stream, JumpRecord, JumpStream, ZDecomposition,
};
pub use oracle::{Oracle, OracleConfig};
pub use zcount::{binding_components, z_base, z_prime, z_prime_digitsum, z_prime_legendre, z_prime_power, z_shift, BaseSpec};
