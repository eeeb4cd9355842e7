//! Shared helpers for the integration tests.

use std::collections::BTreeMap;

use factorial_zeros::cli::{FamilyValue, Mismatch, OutputRecord, Payload};
use factorial_zeros::image::Bracket;
use factorial_zeros::jumps::ComponentJump;
use factorial_zeros::{DensityReport, JumpRecord, MembershipResult, Prime};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

pub const GOLDEN_BFILE: &[u8] = include_bytes!("../golden/zeros_base10_0_30.bfile");

/// Runs `facz` with the format variable cleared.
pub fn facz(args: &[&str]) -> std::process::Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_facz"))
        .args(args)
        .env_remove("FACZ_FORMAT")
        .output()
        .expect("facz runs")
}

/// `(arguments, expected exit status)` for each status the CLI can produce
/// from well-formed input.
pub const EXIT_STATUS_TABLE: &[(&[&str], i32)] = &[
    // 0: success or member
    (&["zeros", "--base", "10", "25"], 0),
    (&["member", "--base", "2", "0"], 0),
    (&["member", "--base", "2", "3"], 0),
    (&["verify", "--bases", "10", "--n-max", "0"], 0),
    (&["verify", "--bases", "2..6", "--n-max", "50"], 0),
    (&["families", "cor2", "-p", "3", "-k", "3", "--verify"], 0),
    // 1: usage
    (&[], 1),
    (&["zeros", "--base", "1", "5"], 1),
    (&["zeros", "--base", "10", "9..3"], 1),
    (&["verify", "--bases", "1", "--n-max", "10"], 1),
    (&["density", "-p", "4", "-k", "2"], 1),
    (&["member", "--base", "10", "5", "--format", "bfile"], 1),
    // 2: non-member
    (&["member", "--base", "10", "5"], 2),
    (&["member", "--base", "2", "2"], 2),
    // 3 needs a wrong closed form and is covered by `cli::verify_against`.
    // 4: precondition failure
    (&["families", "prop7", "-p", "2", "-r", "2", "-k", "2"], 4),
    (&["families", "prop8", "-p", "5", "-r", "2", "-l", "3", "-k", "2"], 4),
];

pub fn arb_big() -> impl Strategy<Value = BigUint> {
    prop::collection::vec(any::<u32>(), 0..5).prop_map(BigUint::new)
}

fn arb_prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3, 5, 7, 31, 101]).prop_map(|p| Prime::new(p).unwrap())
}

pub fn arb_payload() -> impl Strategy<Value = Payload> {
    let component = (arb_prime(), 1u32..9, any::<u64>()).prop_map(|(prime, exponent, amplitude)| ComponentJump {
        prime,
        exponent,
        amplitude,
    });
    let bracket = (arb_big(), arb_big(), arb_big()).prop_map(|(n_star, z_before, z_at)| Bracket { n_star, z_before, z_at });
    prop_oneof![
        (arb_big(), arb_big()).prop_map(|(n, z)| Payload::Zeros { n, z }),
        (arb_big(), prop::collection::vec(component, 1..4), any::<u64>()).prop_map(|(location, per_component, a)| {
            Payload::Jump(JumpRecord { location, per_component, composite_amplitude: a })
        }),
        (arb_big(), any::<bool>(), prop::option::of(arb_big()), prop::option::of(bracket)).prop_map(
            |(z, member, witness, bracket)| Payload::Membership(MembershipResult { z, member, witness, bracket })
        ),
        prop::collection::vec(arb_big(), 0..6).prop_map(|gaps| Payload::Gaps { gaps }),
        (
            "[a-z0-9]{1,8}",
            prop::option::of(any::<u64>()),
            prop::collection::vec((arb_big(), prop::option::of(any::<bool>())), 0..5)
        )
            .prop_map(|(family, base, values)| Payload::Family {
                family,
                base,
                values: values.into_iter().map(|(value, member)| FamilyValue { value, member }).collect(),
            }),
        (arb_prime(), any::<u64>(), prop::option::of(any::<u32>()), any::<[u64; 5]>(), prop::option::of(any::<i64>()), any::<bool>())
            .prop_map(|(p, n, k, c, formula, divergence)| Payload::Density(DensityReport {
                p,
                n,
                k,
                a_exact: c[0],
                a_jump_walk: c[1],
                a_direct_scan: c[2],
                a_paper_formula: formula.map(BigInt::from),
                ratio_numerator: c[3],
                ratio_denominator: c[4],
                divergence,
            })),
        (
            prop::collection::vec(2u64..100, 0..5),
            any::<u64>(),
            any::<u64>(),
            prop::collection::vec((2u64..100, any::<u64>(), arb_big(), any::<u64>()), 0..3)
        )
            .prop_map(|(bases, n_max, checked, ms)| Payload::Verify {
                bases,
                n_max,
                checked,
                mismatches: ms
                    .into_iter()
                    .map(|(base, n, closed_form, oracle)| Mismatch { base, n, closed_form, oracle })
                    .collect(),
            }),
    ]
}

pub fn arb_record() -> impl Strategy<Value = OutputRecord> {
    (
        "[a-z]{1,10}",
        prop::collection::btree_map("[a-z_]{1,6}", "[ -~]{0,12}", 0..4),
        arb_payload(),
    )
        .prop_map(|(command, inputs, results): (String, BTreeMap<String, String>, Payload)| {
            OutputRecord::new(&command, inputs, results)
        })
}

