//! Where `Z_b` increases and by how much.
//!
//! For a prime `p`, `Z_p(n+1) - Z_p(n) = v_p(n+1)`, which is also the number
//! of trailing `p-1` digits of `n`. For `p^r`, write `Z_p(n) = α·r + β`; the
//! count jumps by `⌊(m + β)/r⌋` where `m = v_p(n+1)`. A general base is
//! handled by evaluating `Z_b` on both sides of each candidate location.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arithmetic::{trailing_max_digits, valuation, valuation_u64, Prime};
use crate::error::{Error, Result};
use crate::serde_decimal;
use crate::zcount::{z_base, z_prime, BaseSpec};

/// `Z_p(n)` split as `alpha·modulus + beta` with `0 <= beta < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZDecomposition {
    #[serde(with = "serde_decimal")]
    pub alpha: BigUint,
    pub beta: u32,
    pub modulus: u32,
}

impl ZDecomposition {
    pub fn value(&self) -> BigUint {
        &self.alpha * self.modulus + self.beta
    }
}

/// Amplitude of one prime-power component at a jump location.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJump {
    pub prime: Prime,
    pub exponent: u32,
    pub amplitude: u64,
}

/// A location `n+1` where `Z_b` increases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpRecord {
    #[serde(with = "serde_decimal")]
    pub location: BigUint,
    /// Every component of the base, in factorization order.
    pub per_component: Vec<ComponentJump>,
    pub composite_amplitude: u64,
}

/// `σ_p(n+1) - σ_p(n)`, computed as `1 - (p-1)·t` from the trailing run `t`.
pub fn digit_sum_delta(p: Prime, n: &BigUint) -> BigInt {
    let t = trailing_max_digits(n, p.get()).expect("primes are valid bases");
    BigInt::one() - BigInt::from(p.get() - 1) * BigInt::from(t)
}

/// `Z_p(n+1) - Z_p(n)`, which equals `v_p(n+1)`.
pub fn jump_amplitude_prime(p: Prime, n: &BigUint) -> u64 {
    valuation(p, &(n + 1u32)).expect("n + 1 is positive")
}

/// Euclidean division of `Z_p(n)` by `r`.
pub fn decompose_z(p: Prime, r: u32, n: &BigUint) -> Result<ZDecomposition> {
    if r == 0 {
        return Err(Error::InvalidParameter("modulus r must be at least 1".into()));
    }
    let (alpha, beta) = z_prime(p, n).div_rem(&BigUint::from(r));
    Ok(ZDecomposition {
        alpha,
        beta: beta.to_u32().expect("remainder below r"),
        modulus: r,
    })
}

/// Whether `Z_{p^r}` stays constant from `n` to `n+1`: `v_p(n+1) < r - β`.
pub fn is_stationary_prime_power(p: Prime, r: u32, n: &BigUint) -> Result<bool> {
    let beta = decompose_z(p, r, n)?.beta as u64;
    let m = jump_amplitude_prime(p, n);
    Ok(m < r as u64 - beta)
}

/// `Z_{p^r}(n+1) - Z_{p^r}(n) = ⌊(m + β)/r⌋` with `m = v_p(n+1)`.
pub fn jump_amplitude_prime_power(p: Prime, r: u32, n: &BigUint) -> Result<u64> {
    let beta = decompose_z(p, r, n)?.beta as u64;
    let m = jump_amplitude_prime(p, n);
    Ok((m + beta) / r as u64)
}

/// `Z_b(n+1) - Z_b(n)`.
pub fn jump_amplitude_base(b: &BaseSpec, n: &BigUint) -> u64 {
    let after = z_base(b, &(n + 1u32));
    let before = z_base(b, n);
    (after - before).to_u64().expect("jump amplitude fits in u64")
}

/// Ordered jumps of `Z_b` at locations in `(lo, hi]`.
///
/// Only multiples of the primes of `b` are examined: a jump at `n+1` needs
/// some component to jump, and a component `p^r` moves only when `p | n+1`.
#[derive(Debug, Clone)]
pub struct JumpStream {
    base: BaseSpec,
    next: Vec<BigUint>,
    hi: Option<BigUint>,
}

impl JumpStream {
    /// Stream over `(lo, hi]`; `None` for an unbounded stream.
    pub fn new(base: &BaseSpec, lo: &BigUint, hi: Option<&BigUint>) -> Self {
        let next = base
            .factorization()
            .primes()
            .map(|p| (lo / p.get() + 1u32) * p.get())
            .collect();
        JumpStream {
            base: base.clone(),
            next,
            hi: hi.cloned(),
        }
    }

    fn record_at(&self, location: BigUint) -> Option<JumpRecord> {
        let before = &location - 1u32;
        let composite = z_base(&self.base, &location) - z_base(&self.base, &before);
        if composite.is_zero() {
            return None;
        }
        let per_component = self
            .base
            .components()
            .iter()
            .map(|&(prime, exponent)| ComponentJump {
                prime,
                exponent,
                amplitude: jump_amplitude_prime_power(prime, exponent, &before)
                    .expect("exponent is at least 1"),
            })
            .collect();
        Some(JumpRecord {
            location,
            per_component,
            composite_amplitude: composite.to_u64().expect("jump amplitude fits in u64"),
        })
    }
}

impl Iterator for JumpStream {
    type Item = JumpRecord;

    fn next(&mut self) -> Option<JumpRecord> {
        loop {
            let candidate = self.next.iter().min().expect("non-empty").clone();
            if self.hi.as_ref().is_some_and(|hi| candidate > *hi) {
                return None;
            }
            let primes: Vec<u64> = self.base.factorization().primes().map(Prime::get).collect();
            for (slot, p) in self.next.iter_mut().zip(primes) {
                if *slot == candidate {
                    *slot += p;
                }
            }
            if let Some(record) = self.record_at(candidate) {
                return Some(record);
            }
        }
    }
}

/// Jumps in `(n_lo, n_hi]`.
pub fn jump_stream(b: &BaseSpec, n_lo: &BigUint, n_hi: &BigUint) -> Result<Vec<JumpRecord>> {
    if n_lo > n_hi {
        return Err(Error::InvalidRange(format!("{n_lo}..{n_hi} is empty")));
    }
    Ok(JumpStream::new(b, n_lo, Some(n_hi)).collect())
}

/// Machine-word jump walker for a prime base: yields `(location, amplitude)`
/// for every multiple of `p` above `lo`, in order, without bound.
///
/// Locations are `m·p` with amplitude `1 + v_p(m)`; `m` is tracked as
/// `q·p + rem` so the common case needs no division.
#[derive(Debug, Clone)]
pub struct PrimeJumps {
    p: u64,
    q: u64,
    rem: u64,
}

impl PrimeJumps {
    pub fn new(p: Prime, lo: u64) -> Self {
        let p = p.get();
        let m = lo / p + 1;
        PrimeJumps { p, q: m / p, rem: m % p }
    }
}

impl Iterator for PrimeJumps {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        let m = self.q.checked_mul(self.p)?.checked_add(self.rem)?;
        let location = m.checked_mul(self.p)?;
        let amplitude = if self.rem == 0 {
            2 + valuation_u64(self.p, self.q)
        } else {
            1
        };
        self.rem += 1;
        if self.rem == self.p {
            self.rem = 0;
            self.q += 1;
        }
        Some((location, amplitude))
    }
}
