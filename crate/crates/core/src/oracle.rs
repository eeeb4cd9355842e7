//! Ground truth by brute force: build `n!` as a big integer and count how
//! often `b` divides it. Nothing here uses valuation formulas; the closed
//! forms are checked against this module, not the other way round.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::zcount::{z_base, BaseSpec};

pub const DEFAULT_N_MAX: u64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub n_max: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { n_max: DEFAULT_N_MAX }
    }
}

impl OracleConfig {
    pub fn new(n_max: u64) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidParameter("oracle n_max must be at least 1".into()));
        }
        Ok(OracleConfig { n_max })
    }

    fn check(&self, n: u64) -> Result<()> {
        if n > self.n_max {
            Err(Error::OracleCapacity { n, n_max: self.n_max })
        } else {
            Ok(())
        }
    }
}

fn check_base(b: u64) -> Result<()> {
    if b < 2 {
        Err(Error::BaseTooSmall(b))
    } else {
        Ok(())
    }
}

/// `n!` by straight multiplication.
pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Largest `e` with `b^e | x`, for `x > 0`, by exact division.
///
/// Divides by `b^c` (the largest power below `2^64`) while that succeeds;
/// once it fails, the remaining exponent `< c` is read from the word-sized
/// remainder, since `b^e | x` iff `b^e | x mod b^c` for `e <= c`.
pub fn divisibility_count(b: u64, x: &BigUint) -> u64 {
    debug_assert!(b >= 2 && !x.is_zero());
    let mut c = 1u64;
    let mut chunk = b;
    while let Some(next) = chunk.checked_mul(b) {
        chunk = next;
        c += 1;
    }
    let chunk_big = BigUint::from(chunk);
    let mut rest = x.clone();
    let mut e = 0u64;
    loop {
        let (q, r) = rest.div_rem(&chunk_big);
        if r.is_zero() {
            e += c;
            rest = q;
            continue;
        }
        let mut r = r.to_u64().expect("remainder below chunk");
        while r % b == 0 {
            r /= b;
            e += 1;
        }
        return e;
    }
}

/// Number of trailing `0` digits of `x` written in base `b`, by conversion.
pub fn trailing_zero_digits(b: u64, x: &BigUint) -> u64 {
    debug_assert!(b >= 2 && !x.is_zero());
    let base = BigUint::from(b);
    let mut rest = x.clone();
    let mut zeros = 0;
    loop {
        let (q, r) = rest.div_rem(&base);
        if !r.is_zero() {
            return zeros;
        }
        zeros += 1;
        rest = q;
    }
}

#[derive(Debug, Clone, Default)]
pub struct Oracle {
    config: OracleConfig,
}

impl Oracle {
    pub fn new(config: OracleConfig) -> Self {
        Oracle { config }
    }

    pub fn config(&self) -> OracleConfig {
        self.config
    }

    /// Trailing zeroes of `n!` in base `b`.
    pub fn factorial_trailing_zeros(&self, b: u64, n: u64) -> Result<u64> {
        check_base(b)?;
        self.config.check(n)?;
        Ok(divisibility_count(b, &factorial(n)))
    }

    /// Counts for every base in `bases` and every `n` in `0..=n_hi`, indexed
    /// `[n][base_index]`. Each factorial is built once and shared.
    pub fn trailing_zeros_table(&self, bases: &[u64], n_hi: u64) -> Result<Vec<Vec<u64>>> {
        for &b in bases {
            check_base(b)?;
        }
        self.config.check(n_hi)?;
        let mut fact = BigUint::one();
        let mut table = Vec::with_capacity(n_hi as usize + 1);
        for n in 0..=n_hi {
            if n > 1 {
                fact *= n;
            }
            table.push(bases.iter().map(|&b| divisibility_count(b, &fact)).collect());
        }
        Ok(table)
    }

    /// `{ Z_b(n) : 0 <= n <= n_max }`. With `cross_check` the factorial path
    /// is used and bounded by the oracle capacity; otherwise the closed form.
    pub fn image_scan(&self, b: u64, n_max: u64, cross_check: bool) -> Result<BTreeSet<BigUint>> {
        check_base(b)?;
        if cross_check {
            let column = self.trailing_zeros_table(&[b], n_max)?;
            Ok(column.into_iter().map(|row| BigUint::from(row[0])).collect())
        } else {
            let spec = BaseSpec::new(b)?;
            Ok((0..=n_max).map(|n| z_base(&spec, &BigUint::from(n))).collect())
        }
    }
}
