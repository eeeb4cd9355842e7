use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use factorial_zeros_ffi::*;

fn new_base(b: u64) -> *mut FzBase {
    let mut handle = ptr::null_mut();
    assert_eq!(unsafe { fz_base_new(b, &mut handle) }, FzStatus::Ok);
    assert!(!handle.is_null());
    handle
}

fn last_error() -> String {
    let msg = fz_last_error();
    assert!(!msg.is_null());
    unsafe { CStr::from_ptr(msg) }.to_string_lossy().into_owned()
}

#[test]
fn base_handles_and_factors() {
    let base = new_base(360);
    let mut count = 0usize;
    assert_eq!(unsafe { fz_base_factor_count(base, &mut count) }, FzStatus::Ok);
    let mut factors = Vec::new();
    for i in 0..count {
        let (mut p, mut e) = (0u64, 0u32);
        assert_eq!(unsafe { fz_base_factor(base, i, &mut p, &mut e) }, FzStatus::Ok);
        factors.push((p, e));
    }
    assert_eq!(factors, vec![(2, 3), (3, 2), (5, 1)]);
    let (mut p, mut e) = (0u64, 0u32);
    assert_eq!(unsafe { fz_base_factor(base, 3, &mut p, &mut e) }, FzStatus::InvalidArgument);
    unsafe { fz_base_free(base) };
    unsafe { fz_base_free(ptr::null_mut()) };

    let mut handle = ptr::null_mut();
    assert_eq!(unsafe { fz_base_new(1, &mut handle) }, FzStatus::InvalidArgument);
    assert!(last_error().contains("at least 2"));
    assert_eq!(unsafe { fz_base_new(10, ptr::null_mut()) }, FzStatus::NullPointer);
}

#[test]
fn zeros_and_jumps() {
    let ten = new_base(10);
    let mut z = 0u64;
    assert_eq!(unsafe { fz_zeros(ten, 25, &mut z) }, FzStatus::Ok);
    assert_eq!(z, 6);
    let mut amp = 0u64;
    assert_eq!(unsafe { fz_jump_amplitude(ten, 24, &mut amp) }, FzStatus::Ok);
    assert_eq!(amp, 2);
    assert_eq!(unsafe { fz_zeros(ptr::null(), 25, &mut z) }, FzStatus::NullPointer);

    let n = CString::new("100000000000000000000000000000").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fz_zeros_decimal(ten, n.as_ptr(), &mut out) }, FzStatus::Ok);
    // Z_5(10^29) = (10^29 - σ_5(10^29)) / 4; the value is checked against the library.
    let expected = factorial_zeros::z_base(
        &factorial_zeros::BaseSpec::new(10).unwrap(),
        &"100000000000000000000000000000".parse().unwrap(),
    );
    assert_eq!(unsafe { CStr::from_ptr(out) }.to_str().unwrap(), expected.to_string());
    unsafe { fz_string_free(out) };

    let bad = CString::new("12a").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fz_zeros_decimal(ten, bad.as_ptr(), &mut out) }, FzStatus::InvalidArgument);
    unsafe { fz_base_free(ten) };
}

#[test]
fn membership_and_gaps() {
    let ten = new_base(10);
    let mut m = FzMembership::default();
    assert_eq!(unsafe { fz_member(ten, 5, &mut m) }, FzStatus::Ok);
    assert_eq!((m.member, m.n_star, m.z_before, m.z_at), (false, 25, 4, 6));
    assert_eq!(unsafe { fz_member(ten, 6, &mut m) }, FzStatus::Ok);
    assert_eq!((m.member, m.witness), (true, 25));
    unsafe { fz_base_free(ten) };

    let two = new_base(2);
    let mut len = 0usize;
    assert_eq!(unsafe { fz_gaps(two, 15, ptr::null_mut(), 0, &mut len) }, FzStatus::BufferTooSmall);
    assert_eq!(len, 7);
    let mut buf = vec![0u64; len];
    assert_eq!(unsafe { fz_gaps(two, 15, buf.as_mut_ptr(), buf.len(), &mut len) }, FzStatus::Ok);
    assert_eq!(buf, vec![2, 5, 6, 9, 12, 13, 14]);
    assert_eq!(unsafe { fz_gaps(two, 0, ptr::null_mut(), 0, &mut len) }, FzStatus::Ok);
    assert_eq!(len, 0);
    unsafe { fz_base_free(two) };
}

#[test]
fn density_report() {
    let mut d = FzDensity::default();
    assert_eq!(unsafe { fz_density(2, 15, &mut d) }, FzStatus::Ok);
    assert_eq!((d.a_exact, d.a_jump_walk, d.a_direct_scan), (9, 9, 9));
    assert_eq!((d.has_formula, d.k, d.a_formula, d.divergence), (true, 4, 10, true));
    assert_eq!(unsafe { fz_density(2, 10, &mut d) }, FzStatus::Ok);
    assert!(!d.has_formula && !d.divergence);
    assert_eq!(unsafe { fz_density(4, 10, &mut d) }, FzStatus::NotPrime);
    assert_eq!(unsafe { fz_density(3, 0, &mut d) }, FzStatus::InvalidArgument);
}

#[test]
fn families() {
    let params = FzFamilyParams {
        kind: FzFamilyKind::Cor2 as u32,
        p: 3,
        n: 0,
        k: 3,
        r: 0,
        l: 0,
        q: 0,
        as_printed: false,
    };
    let mut buf = [0u64; 4];
    let mut members = [true; 4];
    let mut len = 0usize;
    assert_eq!(
        unsafe { fz_family_values(&params, buf.as_mut_ptr(), members.as_mut_ptr(), buf.len(), &mut len) },
        FzStatus::Ok
    );
    assert_eq!(&buf[..len], &[181, 180]);
    assert_eq!(&members[..len], &[false, false]);

    let prop7 = FzFamilyParams { kind: FzFamilyKind::Prop7 as u32, p: 2, r: 2, k: 2, ..params };
    assert_eq!(
        unsafe { fz_family_values(&prop7, buf.as_mut_ptr(), ptr::null_mut(), buf.len(), &mut len) },
        FzStatus::Precondition
    );
    let unknown = FzFamilyParams { kind: 99, ..params };
    assert_eq!(
        unsafe { fz_family_values(&unknown, buf.as_mut_ptr(), ptr::null_mut(), buf.len(), &mut len) },
        FzStatus::InvalidArgument
    );
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(fz_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/factorial_zeros.h")
}

#[test]
fn header_declares_every_entry_point() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "fz_version",
        "fz_last_error",
        "fz_base_new",
        "fz_base_free",
        "fz_base_factor_count",
        "fz_base_factor",
        "fz_zeros",
        "fz_zeros_decimal",
        "fz_string_free",
        "fz_jump_amplitude",
        "fz_member",
        "fz_gaps",
        "fz_density",
        "fz_family_values",
        "typedef struct FzBase FzBase",
        "FZ_STATUS_BUFFER_TOO_SMALL",
        "FZ_FAMILY_KIND_PROP8",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

/// Compiles and runs a small C program against the static library, when a C
/// compiler is available.
#[test]
fn c_program_links_against_static_library() {
    let Some(cc) = ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
    else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    // target/<profile>/deps/abi-<hash> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libfactorial_zeros_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("fz-abi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "factorial_zeros.h"

int main(void) {
    FzBase *base = NULL;
    if (fz_base_new(10, &base) != FZ_STATUS_OK) return 10;
    uint64_t z = 0;
    if (fz_zeros(base, 25, &z) != FZ_STATUS_OK || z != 6) return 11;
    FzMembership m;
    if (fz_member(base, 5, &m) != FZ_STATUS_OK || m.member || m.z_before != 4 || m.z_at != 6) return 12;
    fz_base_free(base);
    if (fz_base_new(0, &base) != FZ_STATUS_INVALID_ARGUMENT) return 13;
    printf("%s\n", fz_last_error());
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("main");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).contains("at least 2"));
    let _ = std::fs::remove_dir_all(&dir);
}
