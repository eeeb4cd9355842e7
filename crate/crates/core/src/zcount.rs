//! Trailing-zero counts `Z_b(n)` of `n!`.
//!
//! For a prime `p` the count is the exponent of `p` in `n!`, available both
//! as Legendre's floor sum and as `(n - σ_p(n)) / (p - 1)`. Prime powers
//! divide that exponent by `r`, and a general base takes the minimum over its
//! prime-power components.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arithmetic::{big_pow, digit_sum, digit_sum_u64, factorize, PrimeFactorization, Prime};
use crate::error::{Error, Result};

/// A base `b >= 2` together with its factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseSpec {
    base: u64,
    factorization: PrimeFactorization,
}

impl BaseSpec {
    pub fn new(base: u64) -> Result<Self> {
        let factorization = factorize(base)?;
        Ok(BaseSpec { base, factorization })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn factorization(&self) -> &PrimeFactorization {
        &self.factorization
    }

    pub fn components(&self) -> &[(Prime, u32)] {
        self.factorization.factors()
    }
}

/// `Σ_{i≥1} ⌊n / p^i⌋`.
pub fn z_prime_legendre(p: Prime, n: &BigUint) -> BigUint {
    if let Some(small) = n.to_u64() {
        return BigUint::from(z_prime_legendre_u64(p.get(), small));
    }
    let mut sum = BigUint::zero();
    let mut quotient = n / p.get();
    while !quotient.is_zero() {
        sum += &quotient;
        quotient /= p.get();
    }
    sum
}

#[inline]
pub(crate) fn z_prime_legendre_u64(p: u64, n: u64) -> u64 {
    let mut sum = 0;
    let mut q = n / p;
    while q > 0 {
        sum += q;
        q /= p;
    }
    sum
}

/// `(n - σ_p(n)) / (p - 1)`; the division is exact.
pub fn z_prime_digitsum(p: Prime, n: &BigUint) -> BigUint {
    if let Some(small) = n.to_u64() {
        return BigUint::from(z_prime_u64(p.get(), small));
    }
    let sigma = digit_sum(n, p.get()).expect("primes are valid bases");
    (n - sigma) / (p.get() - 1)
}

#[inline]
pub(crate) fn z_prime_u64(p: u64, n: u64) -> u64 {
    (n - digit_sum_u64(n, p)) / (p - 1)
}

/// Exponent of `p` in `n!` (digit-sum route).
#[inline]
pub fn z_prime(p: Prime, n: &BigUint) -> BigUint {
    z_prime_digitsum(p, n)
}

/// `Z_{p^r}(n) = ⌊Z_p(n) / r⌋`.
pub fn z_prime_power(p: Prime, r: u32, n: &BigUint) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::InvalidParameter("prime-power exponent must be at least 1".into()));
    }
    Ok(z_prime(p, n) / r)
}

/// Per-component counts `Z_{p_i^{r_i}}(n)` in factorization order.
pub fn component_counts(b: &BaseSpec, n: &BigUint) -> Vec<((Prime, u32), BigUint)> {
    b.components()
        .iter()
        .map(|&(p, r)| ((p, r), z_prime(p, n) / r))
        .collect()
}

/// Number of trailing zero digits of `n!` in base `b`.
pub fn z_base(b: &BaseSpec, n: &BigUint) -> BigUint {
    component_counts(b, n)
        .into_iter()
        .map(|(_, z)| z)
        .min()
        .expect("a base has at least one prime factor")
}

/// The prime-power components of `b` attaining the minimum in `z_base`.
pub fn binding_components(b: &BaseSpec, n: &BigUint) -> Vec<(Prime, u32)> {
    let counts = component_counts(b, n);
    let min = counts.iter().map(|(_, z)| z).min().expect("non-empty").clone();
    counts
        .into_iter()
        .filter(|(_, z)| *z == min)
        .map(|(c, _)| c)
        .collect()
}

/// `Z_p(l·p^e)` by the scaling identity `l·(p^e - 1)/(p - 1) + Z_p(l)`.
pub fn z_shift(p: Prime, l: &BigUint, e: u64) -> Result<BigUint> {
    if l.is_zero() {
        return Err(Error::InvalidParameter("scaling factor l must be at least 1".into()));
    }
    let repunit = (big_pow(p.get(), e) - BigUint::one()) / (p.get() - 1);
    Ok(l * repunit + z_prime(p, l))
}
