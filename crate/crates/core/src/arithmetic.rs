//! Exact integer primitives: primality and factorization of 64-bit bases,
//! p-adic valuations, little-endian digit expansions, digit sums and the
//! length of the run of maximal digits at the low end of an expansion.
//!
//! Arguments named `n` are arbitrary precision. Values that fit in a `u64`
//! take a machine-word path; the big-integer path peels digits off in chunks
//! of `base^c < 2^64` so each big division yields `c` digits.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Witnesses making Miller-Rabin deterministic for every `n < 2^64`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// A prime number, checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The factorization `b = p_1^{r_1} ... p_s^{r_s}` of a base, primes increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFactorization {
    factors: Vec<(Prime, u32)>,
}

impl PrimeFactorization {
    pub fn factors(&self) -> &[(Prime, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = Prime> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// The integer this factorization multiplies out to.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, r)| p.get().pow(r))
            .product()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }
}

/// Little-endian base-`base` digits of a non-negative integer.
///
/// Zero is represented by exactly `[0]`; otherwise the last digit is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitExpansion {
    base: u64,
    digits: Vec<u64>,
}

impl DigitExpansion {
    pub fn new(base: u64, digits: Vec<u64>) -> Result<Self> {
        check_base(base)?;
        if digits.is_empty() {
            return Err(Error::InvalidDigits("empty digit list".into()));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::InvalidDigits(format!("digit {d} out of range for base {base}")));
        }
        if digits.len() > 1 && digits[digits.len() - 1] == 0 {
            return Err(Error::InvalidDigits("most significant digit is zero".into()));
        }
        Ok(DigitExpansion { base, digits })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn value(&self) -> BigUint {
        let base = BigUint::from(self.base);
        self.digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &base + d)
    }
}

fn check_base(base: u64) -> Result<()> {
    if base < 2 {
        Err(Error::BaseTooSmall(base))
    } else {
        Ok(())
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for any `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &MR_WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Brent's variant of Pollard rho. `n` must be an odd composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Factor a base `b >= 2` into its prime powers.
pub fn factorize(b: u64) -> Result<PrimeFactorization> {
    check_base(b)?;
    let mut rest = b;
    let mut found: Vec<u64> = Vec::new();
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            found.push(p);
            rest /= p;
        }
    }
    if rest > 1 {
        // Everything left has no factor below the trial limit.
        split_large(rest, &mut found);
    }
    found.sort_unstable();
    let mut factors: Vec<(Prime, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if q.get() == p => *e += 1,
            _ => factors.push((Prime(p), 1)),
        }
    }
    Ok(PrimeFactorization { factors })
}

/// Largest `c` with `base^c` representable in a `u64`, together with `base^c`.
pub(crate) fn chunk_power(base: u64) -> (u32, u64) {
    let mut c = 1;
    let mut pow = base;
    while let Some(next) = pow.checked_mul(base) {
        pow = next;
        c += 1;
    }
    (c, pow)
}

/// Exponent of `p` in a machine word `n > 0`.
#[inline]
pub(crate) fn valuation_u64(p: u64, mut n: u64) -> u64 {
    debug_assert!(n > 0);
    let mut m = 0;
    while n.is_multiple_of(p) {
        n /= p;
        m += 1;
    }
    m
}

/// The `p`-adic valuation of `n`: the largest `m` with `p^m | n`.
pub fn valuation(p: Prime, n: &BigUint) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = p.get();
    if let Some(small) = n.to_u64() {
        return Ok(valuation_u64(p, small));
    }
    let (c, chunk) = chunk_power(p);
    let mut rest = n.clone();
    let mut m = 0u64;
    loop {
        let (q, r) = rest.div_rem(&BigUint::from(chunk));
        if r.is_zero() {
            m += c as u64;
            rest = q;
        } else {
            // p^m | rest iff p^m | rest mod p^c, for m < c.
            return Ok(m + valuation_u64(p, r.to_u64().expect("remainder below chunk")));
        }
    }
}

/// Feed the little-endian base-`base` digits of `n` to `f` until it returns
/// `false` or the digits run out. `n = 0` yields the single digit 0.
fn visit_digits(n: &BigUint, base: u64, mut f: impl FnMut(u64) -> bool) {
    if let Some(mut small) = n.to_u64() {
        if small == 0 {
            f(0);
            return;
        }
        while small > 0 {
            if !f(small % base) {
                return;
            }
            small /= base;
        }
        return;
    }
    let (c, chunk) = chunk_power(base);
    let chunk_big = BigUint::from(chunk);
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&chunk_big);
        let mut r = r.to_u64().expect("remainder below chunk");
        if q.is_zero() {
            while r > 0 {
                if !f(r % base) {
                    return;
                }
                r /= base;
            }
        } else {
            for _ in 0..c {
                if !f(r % base) {
                    return;
                }
                r /= base;
            }
        }
        rest = q;
    }
}

/// Little-endian base-`base` expansion of `n`.
pub fn digits(n: &BigUint, base: u64) -> Result<DigitExpansion> {
    check_base(base)?;
    let mut digits = Vec::new();
    visit_digits(n, base, |d| {
        digits.push(d);
        true
    });
    Ok(DigitExpansion { base, digits })
}

/// Sum of the base-`base` digits of `n`.
pub fn digit_sum(n: &BigUint, base: u64) -> Result<BigUint> {
    check_base(base)?;
    let mut sum: u128 = 0;
    visit_digits(n, base, |d| {
        sum += d as u128;
        true
    });
    Ok(BigUint::from(sum))
}

#[inline]
pub(crate) fn digit_sum_u64(mut n: u64, base: u64) -> u64 {
    let mut sum = 0;
    while n > 0 {
        sum += n % base;
        n /= base;
    }
    sum
}

/// Number of low-order digits of `n` equal to `base - 1`; 0 when the least
/// digit is smaller.
pub fn trailing_max_digits(n: &BigUint, base: u64) -> Result<u64> {
    check_base(base)?;
    let mut t = 0;
    visit_digits(n, base, |d| {
        if d == base - 1 {
            t += 1;
            true
        } else {
            false
        }
    });
    Ok(t)
}

/// Expansion of `value + 1` by the carry rule: with `t` the run of maximal
/// low digits, digits below `t` become 0, digit `t` is incremented, and the
/// higher digits are kept.
pub fn successor_digits(d: &DigitExpansion) -> DigitExpansion {
    let max = d.base - 1;
    let t = d.digits.iter().take_while(|&&a| a == max).count();
    let mut next = Vec::with_capacity(d.digits.len() + 1);
    next.extend(std::iter::repeat_n(0, t));
    match d.digits.get(t) {
        Some(&a) => {
            next.push(a + 1);
            next.extend_from_slice(&d.digits[t + 1..]);
        }
        None => next.push(1),
    }
    DigitExpansion { base: d.base, digits: next }
}

/// `p^e` as a big integer.
pub(crate) fn big_pow(p: u64, e: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut base = BigUint::from(p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}
