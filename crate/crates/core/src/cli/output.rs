//! Output records and their renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::image::{DensityReport, MembershipResult};
use crate::jumps::JumpRecord;
use crate::serde_decimal;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
    Bfile,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "bfile" => Ok(Format::Bfile),
            other => Err(format!("unknown format {other:?} (expected text, json, csv or bfile)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyValue {
    #[serde(with = "serde_decimal")]
    pub value: BigUint,
    /// Whether the value was found in the image; absent unless verified.
    pub member: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub base: u64,
    pub n: u64,
    #[serde(with = "serde_decimal")]
    pub closed_form: BigUint,
    pub oracle: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Zeros {
        #[serde(with = "serde_decimal")]
        n: BigUint,
        #[serde(with = "serde_decimal")]
        z: BigUint,
    },
    Jump(JumpRecord),
    Membership(MembershipResult),
    Gaps {
        #[serde(with = "serde_decimal::vec")]
        gaps: Vec<BigUint>,
    },
    Family {
        family: String,
        base: Option<u64>,
        values: Vec<FamilyValue>,
    },
    Density(DensityReport),
    Verify {
        bases: Vec<u64>,
        n_max: u64,
        checked: u64,
        mismatches: Vec<Mismatch>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Payload,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: BTreeMap<String, String>, results: Payload) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            results,
        }
    }

    /// One line of JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("records serialize");
        serde_json::to_string(&value).expect("values serialize")
    }

    pub fn from_json(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}

fn components_text(j: &JumpRecord, sep: &str) -> String {
    j.per_component
        .iter()
        .map(|c| format!("{}^{}:{}", c.prime, c.exponent, c.amplitude))
        .collect::<Vec<_>>()
        .join(sep)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

/// Streams records in one format. CSV emits its header before the first
/// record; b-file numbers list entries from 1 within each record.
pub struct Renderer {
    format: Format,
    header_written: bool,
    /// Zeros over a single `n` print the bare count in text mode.
    pub bare_text: bool,
}

impl Renderer {
    pub fn new(format: Format) -> Self {
        Renderer { format, header_written: false, bare_text: false }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    /// Whether `payload` can be written as a b-file.
    pub fn supports(&self, payload: &Payload) -> bool {
        self.format != Format::Bfile
            || matches!(payload, Payload::Zeros { .. } | Payload::Gaps { .. } | Payload::Family { .. })
    }

    pub fn write(&mut self, out: &mut dyn Write, record: &OutputRecord) -> io::Result<()> {
        let text = match self.format {
            Format::Json => format!("{}\n", record.to_json()),
            Format::Text => self.text(&record.results),
            Format::Csv => {
                let mut s = String::new();
                if !self.header_written {
                    s.push_str(csv_header(&record.results));
                    s.push('\n');
                    self.header_written = true;
                }
                s.push_str(&csv_rows(&record.results));
                s
            }
            Format::Bfile => bfile(&record.results),
        };
        out.write_all(text.as_bytes())
    }

    fn text(&self, payload: &Payload) -> String {
        let mut s = String::new();
        match payload {
            Payload::Zeros { n, z } => {
                if self.bare_text {
                    writeln!(s, "{z}").unwrap();
                } else {
                    writeln!(s, "{n} {z}").unwrap();
                }
            }
            Payload::Jump(j) => {
                writeln!(s, "{} +{} [{}]", j.location, j.composite_amplitude, components_text(j, " ")).unwrap();
            }
            Payload::Membership(m) => {
                if m.member {
                    writeln!(s, "{} is in the image; witness n = {}", m.z, opt(&m.witness)).unwrap();
                } else if let Some(b) = &m.bracket {
                    writeln!(
                        s,
                        "{} is not in the image; Z({}) = {}, Z({}) = {}",
                        m.z,
                        &b.n_star - 1u32,
                        b.z_before,
                        b.n_star,
                        b.z_at
                    )
                    .unwrap();
                }
            }
            Payload::Gaps { gaps } => {
                let parts: Vec<String> = gaps.iter().map(ToString::to_string).collect();
                writeln!(s, "{}", parts.join(",")).unwrap();
            }
            Payload::Family { values, .. } => {
                for v in values {
                    match v.member {
                        None => writeln!(s, "{}", v.value).unwrap(),
                        Some(true) => writeln!(s, "{} member", v.value).unwrap(),
                        Some(false) => writeln!(s, "{} non-member", v.value).unwrap(),
                    }
                }
            }
            Payload::Density(d) => {
                writeln!(s, "p = {}, N = {}", d.p, d.n).unwrap();
                writeln!(s, "a_exact = {} (jump walk {}, direct scan {})", d.a_exact, d.a_jump_walk, d.a_direct_scan).unwrap();
                match &d.a_paper_formula {
                    Some(f) => writeln!(s, "formula (k = {}) = {f}, divergence = {}", opt(&d.k), d.divergence).unwrap(),
                    None => writeln!(s, "formula: not applicable (N + 1 is not a power of p)").unwrap(),
                }
                writeln!(s, "ratio = {}/{} ~ {:.6}", d.ratio_numerator, d.ratio_denominator, d.ratio()).unwrap();
            }
            Payload::Verify { bases, n_max, checked, mismatches } => {
                writeln!(s, "checked {checked} pairs over {} bases, n <= {n_max}: {} mismatches", bases.len(), mismatches.len()).unwrap();
                if !mismatches.is_empty() {
                    writeln!(s, "base n closed_form oracle").unwrap();
                    for m in mismatches {
                        writeln!(s, "{} {} {} {}", m.base, m.n, m.closed_form, m.oracle).unwrap();
                    }
                }
            }
        }
        s
    }
}

fn csv_header(payload: &Payload) -> &'static str {
    match payload {
        Payload::Zeros { .. } => "n,z",
        Payload::Jump(_) => "location,amplitude,components",
        Payload::Membership(_) => "z,member,witness,n_star,z_before,z_at",
        Payload::Gaps { .. } => "gap",
        Payload::Family { .. } => "family,index,value,member",
        Payload::Density(_) => "p,n,k,a_exact,a_jump_walk,a_direct_scan,a_paper_formula,ratio_numerator,ratio_denominator,divergence",
        Payload::Verify { .. } => "base,n,closed_form,oracle",
    }
}

fn csv_rows(payload: &Payload) -> String {
    let mut s = String::new();
    match payload {
        Payload::Zeros { n, z } => writeln!(s, "{n},{z}").unwrap(),
        Payload::Jump(j) => writeln!(s, "{},{},{}", j.location, j.composite_amplitude, components_text(j, ";")).unwrap(),
        Payload::Membership(m) => {
            let (n_star, before, at) = match &m.bracket {
                Some(b) => (b.n_star.to_string(), b.z_before.to_string(), b.z_at.to_string()),
                None => Default::default(),
            };
            writeln!(s, "{},{},{},{n_star},{before},{at}", m.z, m.member, opt(&m.witness)).unwrap();
        }
        Payload::Gaps { gaps } => {
            for g in gaps {
                writeln!(s, "{g}").unwrap();
            }
        }
        Payload::Family { family, values, .. } => {
            for (i, v) in values.iter().enumerate() {
                writeln!(s, "{family},{},{},{}", i + 1, v.value, opt(&v.member)).unwrap();
            }
        }
        Payload::Density(d) => writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            d.p,
            d.n,
            opt(&d.k),
            d.a_exact,
            d.a_jump_walk,
            d.a_direct_scan,
            opt(&d.a_paper_formula),
            d.ratio_numerator,
            d.ratio_denominator,
            d.divergence
        )
        .unwrap(),
        Payload::Verify { mismatches, .. } => {
            for m in mismatches {
                writeln!(s, "{},{},{},{}", m.base, m.n, m.closed_form, m.oracle).unwrap();
            }
        }
    }
    s
}

fn bfile(payload: &Payload) -> String {
    let mut s = String::new();
    match payload {
        Payload::Zeros { n, z } => writeln!(s, "{n} {z}").unwrap(),
        Payload::Gaps { gaps } => {
            for (i, g) in gaps.iter().enumerate() {
                writeln!(s, "{} {g}", i + 1).unwrap();
            }
        }
        Payload::Family { values, .. } => {
            for (i, v) in values.iter().enumerate() {
                writeln!(s, "{} {}", i + 1, v.value).unwrap();
            }
        }
        _ => {}
    }
    s
}
