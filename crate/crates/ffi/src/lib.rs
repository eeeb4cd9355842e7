//! C ABI over `factorial-zeros`.
//!
//! Every function returns an [`FzStatus`]; results go through out-pointers.
//! A base is an opaque [`FzBase`] handle created by [`fz_base_new`] and
//! released with [`fz_base_free`]. Strings returned by the library are owned
//! by the caller and released with [`fz_string_free`]. After a failing call,
//! [`fz_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::str::FromStr;

use factorial_zeros::{
    density_exact, gaps_up_to, in_image, jump_amplitude_base, z_base, BaseSpec, Cor3Form, Error, Family, Prime,
};
use num_bigint::BigUint;

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotPrime = 3,
    Precondition = 4,
    Overflow = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque handle to a factored base.
pub struct FzBase {
    spec: BaseSpec,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FzMembership {
    pub member: bool,
    /// Least n with Z_b(n) = z; valid when `member`.
    pub witness: u64,
    /// Least n with Z_b(n) > z; valid when not `member`.
    pub n_star: u64,
    pub z_before: u64,
    pub z_at: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FzDensity {
    pub p: u64,
    pub n: u64,
    pub a_exact: u64,
    pub a_jump_walk: u64,
    pub a_direct_scan: u64,
    /// Whether `a_formula` and `k` are meaningful (N + 1 is a power of p).
    pub has_formula: bool,
    pub k: u32,
    pub a_formula: i64,
    pub divergence: bool,
}

/// Values for [`FzFamilyParams::kind`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FzFamilyKind {
    Prop3a = 0,
    Prop3b = 1,
    Prop7 = 2,
    Cor2 = 3,
    Cor3 = 4,
    Prop8 = 5,
}

/// Parameters for [`fz_family_values`]; fields a family does not use are
/// ignored.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FzFamilyParams {
    /// One of the `FzFamilyKind` values.
    pub kind: u32,
    pub p: u64,
    pub n: u64,
    pub k: u64,
    pub r: u32,
    pub l: u64,
    pub q: u64,
    /// Cor3 only: literal form instead of the verified one.
    pub as_printed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg).unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn fail(status: FzStatus, msg: impl Into<String>) -> FzStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> FzStatus {
    let status = match e {
        Error::NotPrime(_) => FzStatus::NotPrime,
        Error::Overflow => FzStatus::Overflow,
        ref e if e.is_precondition() => FzStatus::Precondition,
        _ => FzStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> FzStatus) -> FzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(FzStatus::Panic, "internal panic"),
    }
}

fn to_u64(v: &BigUint) -> Result<u64, FzStatus> {
    u64::try_from(v).map_err(|_| fail(FzStatus::Overflow, format!("{v} does not fit in 64 bits")))
}

unsafe fn base_ref<'a>(base: *const FzBase) -> Result<&'a FzBase, FzStatus> {
    base.as_ref().ok_or_else(|| fail(FzStatus::NullPointer, "null base handle"))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Copies `values` into `buf` (capacity `cap`) and stores the count in
/// `out_len`. If `cap` is too small, only `out_len` is written and
/// `BufferTooSmall` is returned; call again with a larger buffer.
unsafe fn fill(values: &[u64], buf: *mut u64, cap: usize, out_len: *mut usize) -> FzStatus {
    if out_len.is_null() {
        return fail(FzStatus::NullPointer, "null length pointer");
    }
    *out_len = values.len();
    if values.len() > cap {
        return fail(FzStatus::BufferTooSmall, format!("need room for {} values", values.len()));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return fail(FzStatus::NullPointer, "null output buffer");
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    FzStatus::Ok
}

/// Version string of the library; static, do not free.
#[no_mangle]
pub extern "C" fn fz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failing call on this thread, or NULL. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn fz_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Factor `base` and return a handle in `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn fz_base_new(base: u64, out: *mut *mut FzBase) -> FzStatus {
    guard(|| {
        if out.is_null() {
            return fail(FzStatus::NullPointer, "null output pointer");
        }
        match BaseSpec::new(base) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(FzBase { spec }));
                FzStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Release a handle from [`fz_base_new`]. NULL is ignored.
///
/// # Safety
/// `base` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fz_base_free(base: *mut FzBase) {
    if !base.is_null() {
        drop(Box::from_raw(base));
    }
}

/// Number of distinct primes of the base.
///
/// # Safety
/// `base` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fz_base_factor_count(base: *const FzBase, out: *mut usize) -> FzStatus {
    guard(|| {
        let base = try_status!(base_ref(base));
        if out.is_null() {
            return fail(FzStatus::NullPointer, "null output pointer");
        }
        *out = base.spec.components().len();
        FzStatus::Ok
    })
}

/// The `index`-th prime power `prime^exponent` of the base, primes increasing.
///
/// # Safety
/// `base` must be a live handle; `prime` and `exponent` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fz_base_factor(
    base: *const FzBase,
    index: usize,
    prime: *mut u64,
    exponent: *mut u32,
) -> FzStatus {
    guard(|| {
        let base = try_status!(base_ref(base));
        if prime.is_null() || exponent.is_null() {
            return fail(FzStatus::NullPointer, "null output pointer");
        }
        match base.spec.components().get(index) {
            Some(&(p, r)) => {
                *prime = p.get();
                *exponent = r;
                FzStatus::Ok
            }
            None => fail(FzStatus::InvalidArgument, format!("factor index {index} out of range")),
        }
    })
}

/// Trailing zeroes of `n!` in the handle's base.
///
/// # Safety
/// `base` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fz_zeros(base: *const FzBase, n: u64, out: *mut u64) -> FzStatus {
    guard(|| {
        let base = try_status!(base_ref(base));
        if out.is_null() {
            return fail(FzStatus::NullPointer, "null output pointer");
        }
        *out = try_status!(to_u64(&z_base(&base.spec, &BigUint::from(n))));
        FzStatus::Ok
    })
}

/// Arbitrary-precision form of [`fz_zeros`]: `n` is a NUL-terminated decimal
/// string and `*out` receives a decimal string to release with
/// [`fz_string_free`].
///
/// # Safety
/// `base` must be a live handle, `n` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fz_zeros_decimal(base: *const FzBase, n: *const c_char, out: *mut *mut c_char) -> FzStatus {
    guard(|| {
        let base = try_status!(base_ref(base));
        if n.is_null() || out.is_null() {
            return fail(FzStatus::NullPointer, "null pointer argument");
        }
        let text = match CStr::from_ptr(n).to_str() {
            Ok(t) if !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()) => t,
            _ => return fail(FzStatus::InvalidArgument, "n must be a decimal integer"),
        };
        let n = BigUint::from_str(text).expect("validated digits");
        let z = z_base(&base.spec, &n).to_string();
        *out = CString::new(z).expect("digits contain no NUL").into_raw();
        FzStatus::Ok
    })
}

/// Release a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `Z_b(n+1) - Z_b(n)`.
///
/// # Safety
/// `base` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fz_jump_amplitude(base: *const FzBase, n: u64, out: *mut u64) -> FzStatus {
    guard(|| {
        let base = try_status!(base_ref(base));
        if out.is_null() {
            return fail(FzStatus::NullPointer, "null output pointer");
        }
        *out = jump_amplitude_base(&base.spec, &BigUint::from(n));
        FzStatus::Ok
    })
}

/// Whether `z` is the trailing-zero count of some factorial.
///
/// # Safety
/// `base` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fz_member(base: *const FzBase, z: u64, out: *mut FzMembership) -> FzStatus {
    guard(|| {
        let base = try_status!(base_ref(base));
        if out.is_null() {
            return fail(FzStatus::NullPointer, "null output pointer");
        }
        let r = in_image(&base.spec, &BigUint::from(z));
        let mut m = FzMembership { member: r.member, ..Default::default() };
        if let Some(w) = &r.witness {
            m.witness = try_status!(to_u64(w));
        }
        if let Some(b) = &r.bracket {
            m.n_star = try_status!(to_u64(&b.n_star));
            m.z_before = try_status!(to_u64(&b.z_before));
            m.z_at = try_status!(to_u64(&b.z_at));
        }
        *out = m;
        FzStatus::Ok
    })
}

/// Values up to `z_max` missing from the image, ascending.
///
/// # Safety
/// `base` must be a live handle; `buf` must hold `cap` values; `out_len`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn fz_gaps(
    base: *const FzBase,
    z_max: u64,
    buf: *mut u64,
    cap: usize,
    out_len: *mut usize,
) -> FzStatus {
    guard(|| {
        let base = try_status!(base_ref(base));
        let gaps = gaps_up_to(&base.spec, &BigUint::from(z_max));
        let values: Vec<u64> = try_status!(gaps.iter().map(to_u64).collect());
        fill(&values, buf, cap, out_len)
    })
}

/// Exact count of image members of `Z_p` in `[0, n]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fz_density(p: u64, n: u64, out: *mut FzDensity) -> FzStatus {
    guard(|| {
        if out.is_null() {
            return fail(FzStatus::NullPointer, "null output pointer");
        }
        let prime = match Prime::new(p) {
            Ok(p) => p,
            Err(e) => return from_error(e),
        };
        let report = match density_exact(prime, n) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        let a_formula = match &report.a_paper_formula {
            Some(f) => match i64::try_from(f) {
                Ok(v) => v,
                Err(_) => return fail(FzStatus::Overflow, "formula value does not fit in 64 bits"),
            },
            None => 0,
        };
        *out = FzDensity {
            p,
            n,
            a_exact: report.a_exact,
            a_jump_walk: report.a_jump_walk,
            a_direct_scan: report.a_direct_scan,
            has_formula: report.k.is_some(),
            k: report.k.unwrap_or(0),
            a_formula,
            divergence: report.divergence,
        };
        FzStatus::Ok
    })
}

impl TryFrom<u32> for FzFamilyKind {
    type Error = Error;

    fn try_from(v: u32) -> Result<Self, Error> {
        use FzFamilyKind::*;
        [Prop3a, Prop3b, Prop7, Cor2, Cor3, Prop8]
            .into_iter()
            .find(|k| *k as u32 == v)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family kind {v}")))
    }
}

fn family_from(params: &FzFamilyParams) -> Result<Family, Error> {
    Ok(match FzFamilyKind::try_from(params.kind)? {
        FzFamilyKind::Prop3a => Family::Prop3a { p: Prime::new(params.p)?, n: params.n },
        FzFamilyKind::Prop3b => Family::Prop3b { p: Prime::new(params.p)?, n: params.n, k: params.k },
        FzFamilyKind::Prop7 => Family::Prop7 { p: Prime::new(params.p)?, r: params.r, k: params.k },
        FzFamilyKind::Cor2 => Family::Cor2 { p: Prime::new(params.p)?, k: params.k },
        FzFamilyKind::Cor3 => Family::Cor3 {
            q: Prime::new(params.q)?,
            form: if params.as_printed { Cor3Form::AsPrinted } else { Cor3Form::Corrected },
        },
        FzFamilyKind::Prop8 => Family::Prop8 { p: Prime::new(params.p)?, r: params.r, l: params.l, k: params.k },
    })
}

/// Values of a non-image family. When `verify` is true, `members` (capacity
/// `cap`) receives, per value, whether it was found in the image.
///
/// # Safety
/// `params` must be valid; `buf` (and `members` when verifying) must hold
/// `cap` entries; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fz_family_values(
    params: *const FzFamilyParams,
    buf: *mut u64,
    members: *mut bool,
    cap: usize,
    out_len: *mut usize,
) -> FzStatus {
    guard(|| {
        let Some(params) = params.as_ref() else {
            return fail(FzStatus::NullPointer, "null parameters");
        };
        let family = match family_from(params) {
            Ok(f) => f,
            Err(e) => return from_error(e),
        };
        let values = match family.values() {
            Ok(v) => v,
            Err(e) => return from_error(e),
        };
        let words: Vec<u64> = try_status!(values.iter().map(to_u64).collect());
        let status = fill(&words, buf, cap, out_len);
        if status != FzStatus::Ok || members.is_null() {
            return status;
        }
        let spec = match family.base() {
            Ok(s) => s,
            Err(e) => return from_error(e),
        };
        for (i, v) in values.iter().enumerate() {
            *members.add(i) = in_image(&spec, v).member;
        }
        FzStatus::Ok
    })
}
