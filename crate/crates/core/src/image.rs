//! The image of `Z_b`: membership, gaps, explicit families of values that no
//! factorial attains, and exact counts of image members below a bound.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arithmetic::{big_pow, Prime};
use crate::error::{Error, Result};
use crate::jumps::{JumpStream, PrimeJumps};
use crate::serde_decimal;
use crate::zcount::{z_base, BaseSpec};

/// The two counts straddling a value missing from the image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bracket {
    /// Least `n` with `Z_b(n) > z`.
    #[serde(with = "serde_decimal")]
    pub n_star: BigUint,
    /// `Z_b(n_star - 1)`, below `z`.
    #[serde(with = "serde_decimal")]
    pub z_before: BigUint,
    /// `Z_b(n_star)`, above `z`.
    #[serde(with = "serde_decimal")]
    pub z_at: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipResult {
    #[serde(with = "serde_decimal")]
    pub z: BigUint,
    pub member: bool,
    /// Least `n` with `Z_b(n) = z`, for members.
    #[serde(with = "serde_decimal::option")]
    pub witness: Option<BigUint>,
    /// Present for non-members.
    pub bracket: Option<Bracket>,
}

/// Least `n` with `Z_b(n) >= z`: gallop `1, 2, 4, …` then bisect.
pub fn min_arg_reaching(b: &BaseSpec, z: &BigUint) -> BigUint {
    if z.is_zero() {
        return BigUint::zero();
    }
    // Invariant: Z(lo) < z <= Z(hi).
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one();
    while z_base(b, &hi) < *z {
        lo = hi.clone();
        hi <<= 1;
    }
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1;
        if z_base(b, &mid) >= *z {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

pub fn in_image(b: &BaseSpec, z: &BigUint) -> MembershipResult {
    let n_star = min_arg_reaching(b, z);
    let z_at = z_base(b, &n_star);
    if z_at == *z {
        MembershipResult {
            z: z.clone(),
            member: true,
            witness: Some(n_star),
            bracket: None,
        }
    } else {
        // z > 0 here, so n_star >= 1.
        let z_before = z_base(b, &(&n_star - 1u32));
        MembershipResult {
            z: z.clone(),
            member: false,
            witness: None,
            bracket: Some(Bracket { n_star, z_before, z_at }),
        }
    }
}

/// Values `<= z_max` missing from the image, read off the jump stream.
pub fn gaps_up_to(b: &BaseSpec, z_max: &BigUint) -> Vec<BigUint> {
    let mut gaps = Vec::new();
    let mut current = BigUint::zero();
    for jump in JumpStream::new(b, &BigUint::zero(), None) {
        if current >= *z_max {
            break;
        }
        let next = &current + jump.composite_amplitude;
        let mut skipped = &current + 1u32;
        while skipped < next && skipped <= *z_max {
            gaps.push(skipped.clone());
            skipped += 1u32;
        }
        current = next;
    }
    gaps
}

/// Same as [`gaps_up_to`], one membership query per value.
pub fn gaps_by_membership(b: &BaseSpec, z_max: &BigUint) -> Vec<BigUint> {
    let mut gaps = Vec::new();
    let mut z = BigUint::zero();
    while z <= *z_max {
        if !in_image(b, &z).member {
            gaps.push(z.clone());
        }
        z += 1u32;
    }
    gaps
}

fn precondition(family: &'static str, reason: impl Into<String>) -> Error {
    Error::Precondition { family, reason: reason.into() }
}

/// `(p^e - 1) / (p - 1) = 1 + p + … + p^{e-1}`.
fn repunit(p: Prime, e: u64) -> BigUint {
    (big_pow(p.get(), e) - 1u32) / (p.get() - 1)
}

/// `(p^n - k·p + k - 1)/(p - 1)` for `k = 1, …, n-1`: the values skipped by
/// `Z_p` as it jumps by `n` at `p^n`.
pub fn family_prop3a(p: Prime, n: u64) -> Result<Vec<BigUint>> {
    if n <= 1 {
        return Err(precondition("prop3a", format!("n must exceed 1, got {n}")));
    }
    let pn = big_pow(p.get(), n);
    Ok((1..n)
        .map(|k| (&pn + k - 1u32 - BigUint::from(k) * p.get()) / (p.get() - 1))
        .collect())
}

/// `((p^k - 1)/(p - 1))·p^n - k - h` for `h = 1, …, n-1`, skipped at
/// `(p^k - 1)·p^n`.
pub fn family_prop3b(p: Prime, n: u64, k: u64) -> Result<Vec<BigUint>> {
    if n <= 1 {
        return Err(precondition("prop3b", format!("n must exceed 1, got {n}")));
    }
    if k == 0 {
        return Err(precondition("prop3b", "k must be at least 1"));
    }
    let top = repunit(p, k) * big_pow(p.get(), n) - k;
    Ok((1..n).map(|h| &top - h).collect())
}

/// `S/r - h` for `h = 1, …, k-1` where `S = (p^{kr} - 1)/(p - 1)`, missing
/// from the image of `Z_{p^r}`; requires `r | S`.
pub fn family_prop7(p: Prime, r: u32, k: u64) -> Result<Vec<BigUint>> {
    if r < 2 {
        return Err(precondition("prop7", format!("r must be at least 2, got {r}")));
    }
    if k <= 1 {
        return Err(precondition("prop7", format!("k must exceed 1, got {k}")));
    }
    let s = repunit(p, k * r as u64);
    let (quotient, rem) = s.div_rem(&BigUint::from(r));
    if !rem.is_zero() {
        return Err(precondition("prop7", format!("{r} does not divide (p^{{kr}} - 1)/(p - 1) = {s}")));
    }
    Ok((1..k).map(|h| &quotient - h).collect())
}

/// The `r = 2` case of [`family_prop7`] for odd `p`, where divisibility is
/// automatic.
pub fn family_cor2(p: Prime, k: u64) -> Result<Vec<BigUint>> {
    if p.get() == 2 {
        return Err(precondition("cor2", "p must be odd"));
    }
    family_prop7(p, 2, k)
}

/// Which formula [`family_cor3`] emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cor3Form {
    /// `(2^{q(q-1)} - 1)/q - h`, the `p = 2, r = q, k = q-1` instance of
    /// [`family_prop7`].
    #[default]
    Corrected,
    /// `2^{q(q-1)} - 1 - h` as literally printed. Not a verified non-image
    /// family.
    AsPrinted,
}

/// Values for `h = 1, …, q-2` missing from the image of `Z_{2^q}`.
pub fn family_cor3(q: Prime, form: Cor3Form) -> Result<Vec<BigUint>> {
    if q.get() == 2 {
        return Err(precondition("cor3", "q must be an odd prime"));
    }
    let q_small = u32::try_from(q.get())
        .map_err(|_| precondition("cor3", format!("q = {q} is too large")))?;
    match form {
        Cor3Form::Corrected => family_prop7(Prime::new(2)?, q_small, q.get() - 1),
        Cor3Form::AsPrinted => {
            let top = big_pow(2, q.get() * (q.get() - 1)) - 1u32;
            Ok((1..q.get() - 1).map(|h| &top - h).collect())
        }
    }
}

/// `(l/r)·(p^{kr} - 1)/(p - 1) - h` for `h = 1, …, k-1`, missing from the
/// image of `Z_{p^r}`; requires `1 <= l < p` and `r | l`.
pub fn family_prop8(p: Prime, r: u32, l: u64, k: u64) -> Result<Vec<BigUint>> {
    if r < 2 {
        return Err(precondition("prop8", format!("r must be at least 2, got {r}")));
    }
    if l == 0 || l >= p.get() {
        return Err(precondition("prop8", format!("l must satisfy 1 <= l < p = {p}, got {l}")));
    }
    if !l.is_multiple_of(r as u64) {
        return Err(precondition("prop8", format!("r = {r} does not divide l = {l}")));
    }
    if k <= 1 {
        return Err(precondition("prop8", format!("k must exceed 1, got {k}")));
    }
    let top = repunit(p, k * r as u64) * (l / r as u64);
    Ok((1..k).map(|h| &top - h).collect())
}

/// A parameterized family of values claimed absent from some image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Prop3a { p: Prime, n: u64 },
    Prop3b { p: Prime, n: u64, k: u64 },
    Prop7 { p: Prime, r: u32, k: u64 },
    Cor2 { p: Prime, k: u64 },
    Cor3 { q: Prime, form: Cor3Form },
    Prop8 { p: Prime, r: u32, l: u64, k: u64 },
}

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::Prop3a { .. } => "prop3a",
            Family::Prop3b { .. } => "prop3b",
            Family::Prop7 { .. } => "prop7",
            Family::Cor2 { .. } => "cor2",
            Family::Cor3 { .. } => "cor3",
            Family::Prop8 { .. } => "prop8",
        }
    }

    pub fn values(&self) -> Result<Vec<BigUint>> {
        match *self {
            Family::Prop3a { p, n } => family_prop3a(p, n),
            Family::Prop3b { p, n, k } => family_prop3b(p, n, k),
            Family::Prop7 { p, r, k } => family_prop7(p, r, k),
            Family::Cor2 { p, k } => family_cor2(p, k),
            Family::Cor3 { q, form } => family_cor3(q, form),
            Family::Prop8 { p, r, l, k } => family_prop8(p, r, l, k),
        }
    }

    /// The base whose image the values avoid.
    pub fn base(&self) -> Result<BaseSpec> {
        let (p, r) = match *self {
            Family::Prop3a { p, .. } | Family::Prop3b { p, .. } => (p.get(), 1),
            Family::Prop7 { p, r, .. } | Family::Prop8 { p, r, .. } => (p.get(), r),
            Family::Cor2 { p, .. } => (p.get(), 2),
            Family::Cor3 { q, .. } => (2, u32::try_from(q.get()).map_err(|_| Error::Overflow)?),
        };
        BaseSpec::new(p.checked_pow(r).ok_or(Error::Overflow)?)
    }

    /// Each value paired with whether it actually lies in the image.
    pub fn verify(&self) -> Result<Vec<(BigUint, bool)>> {
        let base = self.base()?;
        Ok(self
            .values()?
            .into_iter()
            .map(|v| {
                let member = in_image(&base, &v).member;
                (v, member)
            })
            .collect())
    }
}

/// Exact count of image members of `Z_p` in `[0, N]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub p: Prime,
    pub n: u64,
    /// `k` with `N = p^k - 1`, when `N` has that shape.
    pub k: Option<u32>,
    pub a_exact: u64,
    /// Count from walking the jumps and subtracting skipped values.
    pub a_jump_walk: u64,
    /// Count from scanning `Z_p` and counting distinct values.
    pub a_direct_scan: u64,
    /// `N + 1 - (p-1)k(k-1)/2`, when `k` is defined.
    #[serde(with = "serde_decimal::option_signed")]
    pub a_paper_formula: Option<BigInt>,
    /// `a_exact / N` in lowest terms.
    pub ratio_numerator: u64,
    pub ratio_denominator: u64,
    /// The closed-form count disagrees with the exact one.
    pub divergence: bool,
}

impl DensityReport {
    pub fn methods_agree(&self) -> bool {
        self.a_jump_walk == self.a_direct_scan
    }

    pub fn ratio(&self) -> f64 {
        self.ratio_numerator as f64 / self.ratio_denominator as f64
    }
}

/// `N + 1 - (p-1)k(k-1)/2` with `N = p^k - 1`.
pub fn density_paper_formula(p: Prime, k: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n_plus_one = BigInt::from(big_pow(p.get(), k as u64));
    let k = BigInt::from(k);
    let correction = BigInt::from(p.get() - 1) * &k * (&k - 1) / 2;
    Ok(n_plus_one - correction)
}

/// Image members of `Z_p` in `[0, N]`, counted as `N + 1` minus the values
/// skipped by each jump.
pub fn count_by_jump_walk(p: Prime, n: u64) -> u64 {
    let mut z = 0u64;
    let mut skipped = 0u64;
    for (_, amplitude) in PrimeJumps::new(p, 0) {
        if z >= n {
            break;
        }
        let next = z + amplitude;
        // Values z+1 ..= next-1, clipped to N.
        skipped += (next - 1).min(n) - z;
        z = next;
    }
    n + 1 - skipped
}

/// Calls `f(n, Z_p(n))` for `n = 0, 1, …, upto` until `f` returns `false`.
///
/// Uses `⌊n/p^i⌋ = ⌊⌊n/p⌋/p^{i-1}⌋`, so `Z_p(qp + r) = q + Z_p(q)`: the
/// sequence for `n` is produced from the sequence for `⌊n/p⌋`.
fn for_each_legendre(p: u64, upto: u64, f: &mut dyn FnMut(u64, u64) -> bool) -> bool {
    if upto < p {
        return (0..=upto).all(|n| f(n, 0));
    }
    for_each_legendre(p, upto / p, &mut |q, zq| {
        let start = q * p;
        for n in start..start + p {
            if n > upto || !f(n, q + zq) {
                return false;
            }
        }
        true
    })
}

/// Image members of `Z_p` in `[0, N]`, counted as distinct values of the
/// floor sum. `Z_p` is constant on each `[mp, mp + p - 1]`, so only the
/// points `mp` are visited, where `Z_p(mp) = m + Z_p(m)`.
pub fn count_by_direct_scan(p: Prime, n: u64) -> u64 {
    let mut distinct = 0u64;
    let mut previous: Option<u64> = None;
    // Z_p(mp) >= m, so m never needs to exceed N.
    for_each_legendre(p.get(), n, &mut |m, z_m| {
        let value = m + z_m;
        if value > n {
            return false;
        }
        if previous != Some(value) {
            distinct += 1;
            previous = Some(value);
        }
        true
    });
    distinct
}

fn exponent_of_shape(p: u64, n: u64) -> Option<u32> {
    let target = n.checked_add(1)?;
    let mut pow = 1u64;
    let mut k = 0u32;
    while pow < target {
        pow = pow.checked_mul(p)?;
        k += 1;
    }
    (pow == target && k >= 1).then_some(k)
}

/// Exact density report for `Z_p` on `[0, N]`.
pub fn density_exact(p: Prime, n: u64) -> Result<DensityReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if n == u64::MAX {
        return Err(Error::Overflow);
    }
    let a_jump_walk = count_by_jump_walk(p, n);
    let a_direct_scan = count_by_direct_scan(p, n);
    let k = exponent_of_shape(p.get(), n);
    let a_paper_formula = k.map(|k| density_paper_formula(p, k)).transpose()?;
    let divergence = a_paper_formula
        .as_ref()
        .is_some_and(|f| *f != BigInt::from(a_jump_walk));
    let g = a_jump_walk.gcd(&n);
    Ok(DensityReport {
        p,
        n,
        k,
        a_exact: a_jump_walk,
        a_jump_walk,
        a_direct_scan,
        a_paper_formula,
        ratio_numerator: a_jump_walk / g,
        ratio_denominator: n / g,
        divergence,
    })
}

/// Density report at `N = p^k - 1`.
pub fn density_at_power(p: Prime, k: u32) -> Result<DensityReport> {
    let n = p
        .get()
        .checked_pow(k)
        .ok_or(Error::Overflow)?
        .checked_sub(1)
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::InvalidParameter("k must be at least 1".into()))?;
    density_exact(p, n)
}

/// `true` if `value` fits a `u64` and is at most `limit`.
pub fn fits_within(value: &BigUint, limit: u64) -> bool {
    value.to_u64().is_some_and(|v| v <= limit)
}
