//! The `facz` command line.
//!
//! Exit status: 0 success (or member), 1 usage error, 2 non-member,
//! 3 verification mismatch, 4 precondition failure.

pub mod output;

use std::collections::BTreeMap;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::arithmetic::Prime;
use crate::error::Error;
use crate::image::{density_at_power, density_exact, gaps_up_to, in_image, Cor3Form, Family};
use crate::jumps::JumpStream;
use crate::oracle::{Oracle, OracleConfig};
use crate::zcount::{z_base, BaseSpec};

pub use output::{FamilyValue, Format, Mismatch, OutputRecord, Payload, Renderer};

/// Environment variable holding the default output format.
pub const FORMAT_ENV: &str = "FACZ_FORMAT";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    Success = 0,
    Usage = 1,
    NonMember = 2,
    Mismatch = 3,
    Precondition = 4,
}

impl From<&Error> for ExitStatus {
    fn from(e: &Error) -> Self {
        if e.is_precondition() {
            ExitStatus::Precondition
        } else {
            ExitStatus::Usage
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "facz", version, about = "Trailing zeroes of n! in any base")]
pub struct Cli {
    /// Output format: text, json, csv or bfile
    #[arg(long, global = true, env = FORMAT_ENV, default_value = "text")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trailing zeroes of n! for one n or an inclusive range a..b
    Zeros {
        #[arg(long)]
        base: u64,
        /// `n` or `a..b`
        target: String,
    },
    /// Locations in (from, to] where the count increases
    Jumps {
        #[arg(long)]
        base: u64,
        #[arg(long, default_value = "0")]
        from: BigUint,
        #[arg(long)]
        to: BigUint,
    },
    /// Whether z is a trailing-zero count of some factorial
    Member {
        #[arg(long)]
        base: u64,
        z: BigUint,
    },
    /// Values up to --max that no factorial attains
    Gaps {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        max: BigUint,
    },
    /// Explicit families of values missing from the image
    Families(FamilyArgs),
    /// Exact count of image members of Z_p in [0, N]
    Density {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'k', conflicts_with = "n", required_unless_present = "n")]
        k: Option<u32>,
        #[arg(short = 'N')]
        n: Option<u64>,
    },
    /// Check the closed forms against brute-force factorials
    Verify {
        /// Comma-separated bases or ranges, e.g. `2..36` or `2,10,12..16`
        #[arg(long)]
        bases: String,
        #[arg(long = "n-max")]
        n_max: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyId {
    Prop3a,
    Prop3b,
    Prop7,
    Cor2,
    Cor3,
    Prop8,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    pub family: FamilyId,
    /// Prime p
    #[arg(short = 'p')]
    pub p: Option<u64>,
    /// Exponent n (prop3a, prop3b)
    #[arg(short = 'n')]
    pub n: Option<u64>,
    /// Parameter k
    #[arg(short = 'k')]
    pub k: Option<u64>,
    /// Exponent r of the base p^r (prop7, prop8)
    #[arg(short = 'r')]
    pub r: Option<u32>,
    /// Multiplier l with 1 <= l < p (prop8)
    #[arg(short = 'l')]
    pub l: Option<u64>,
    /// Odd prime q of the base 2^q (cor3)
    #[arg(short = 'q')]
    pub q: Option<u64>,
    /// Check every value with a membership query
    #[arg(long)]
    pub verify: bool,
    /// cor3 only: emit the literal `2^{q(q-1)} - 1 - h` form
    #[arg(long = "as-printed")]
    pub as_printed: bool,
}

/// An inclusive range `a..b`, or a single value.
pub fn parse_range(text: &str) -> Result<(BigUint, BigUint), Error> {
    let bad = || Error::InvalidRange(format!("expected `n` or `a..b`, got {text:?}"));
    let parse = |s: &str| {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigUint::from_str(s).map_err(|_| bad())
    };
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(Error::InvalidRange(format!("{text} is empty")));
            }
            Ok((a, b))
        }
        None => {
            let n = parse(text)?;
            Ok((n.clone(), n))
        }
    }
}

/// A base list like `2..36` or `2,10,12..16`.
pub fn parse_bases(text: &str) -> Result<Vec<u64>, Error> {
    let mut bases = Vec::new();
    for part in text.split(',') {
        let (a, b) = parse_range(part.trim())?;
        let to_u64 = |v: &BigUint| u64::try_from(v).map_err(|_| Error::Overflow);
        let (a, b) = (to_u64(&a)?, to_u64(&b)?);
        if a < 2 {
            return Err(Error::BaseTooSmall(a));
        }
        bases.extend(a..=b);
    }
    Ok(bases)
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn missing(name: &str, family: FamilyId) -> Error {
    Error::InvalidParameter(format!("{family:?} needs -{name}").to_lowercase())
}

impl FamilyArgs {
    fn family(&self) -> Result<Family, Error> {
        let need = |v: Option<u64>, name: &str| v.ok_or_else(|| missing(name, self.family));
        let prime = |v: Option<u64>, name: &str| Prime::new(need(v, name)?);
        let r = || self.r.ok_or_else(|| missing("r", self.family));
        Ok(match self.family {
            FamilyId::Prop3a => Family::Prop3a { p: prime(self.p, "p")?, n: need(self.n, "n")? },
            FamilyId::Prop3b => Family::Prop3b { p: prime(self.p, "p")?, n: need(self.n, "n")?, k: need(self.k, "k")? },
            FamilyId::Prop7 => Family::Prop7 { p: prime(self.p, "p")?, r: r()?, k: need(self.k, "k")? },
            FamilyId::Cor2 => Family::Cor2 { p: prime(self.p, "p")?, k: need(self.k, "k")? },
            FamilyId::Cor3 => Family::Cor3 {
                q: prime(self.q, "q")?,
                form: if self.as_printed { Cor3Form::AsPrinted } else { Cor3Form::Corrected },
            },
            FamilyId::Prop8 => Family::Prop8 {
                p: prime(self.p, "p")?,
                r: r()?,
                l: need(self.l, "l")?,
                k: need(self.k, "k")?,
            },
        })
    }

    fn inputs(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        for (name, v) in [("p", self.p), ("n", self.n), ("k", self.k), ("l", self.l), ("q", self.q)] {
            if let Some(v) = v {
                map.insert(name.to_string(), v.to_string());
            }
        }
        if let Some(r) = self.r {
            map.insert("r".to_string(), r.to_string());
        }
        if self.as_printed {
            map.insert("as_printed".to_string(), "true".to_string());
        }
        map
    }
}

struct Session<'a> {
    renderer: Renderer,
    out: &'a mut dyn Write,
}

impl Session<'_> {
    fn emit(&mut self, command: &str, inputs: BTreeMap<String, String>, results: Payload) -> Result<(), Error> {
        if !self.renderer.supports(&results) {
            return Err(Error::InvalidParameter(format!("`{command}` has no b-file rendering")));
        }
        let record = OutputRecord::new(command, inputs, results);
        // A closed pipe is not an error worth reporting.
        let _ = self.renderer.write(self.out, &record);
        Ok(())
    }
}

fn execute(cli: &Cli, session: &mut Session<'_>) -> Result<ExitStatus, Error> {
    match &cli.command {
        Command::Zeros { base, target } => {
            let spec = BaseSpec::new(*base)?;
            let (lo, hi) = parse_range(target)?;
            session.renderer.bare_text = !target.contains("..");
            let mut n = lo;
            while n <= hi {
                let z = z_base(&spec, &n);
                let ins = inputs(&[("base", base.to_string()), ("n", n.to_string())]);
                session.emit("zeros", ins, Payload::Zeros { n: n.clone(), z })?;
                n += 1u32;
            }
            Ok(ExitStatus::Success)
        }
        Command::Jumps { base, from, to } => {
            let spec = BaseSpec::new(*base)?;
            if from > to {
                return Err(Error::InvalidRange(format!("{from}..{to} is empty")));
            }
            let ins = inputs(&[("base", base.to_string()), ("from", from.to_string()), ("to", to.to_string())]);
            for jump in JumpStream::new(&spec, from, Some(to)) {
                session.emit("jumps", ins.clone(), Payload::Jump(jump))?;
            }
            Ok(ExitStatus::Success)
        }
        Command::Member { base, z } => {
            let spec = BaseSpec::new(*base)?;
            let result = in_image(&spec, z);
            let status = if result.member { ExitStatus::Success } else { ExitStatus::NonMember };
            let ins = inputs(&[("base", base.to_string()), ("z", z.to_string())]);
            session.emit("member", ins, Payload::Membership(result))?;
            Ok(status)
        }
        Command::Gaps { base, max } => {
            let spec = BaseSpec::new(*base)?;
            let gaps = gaps_up_to(&spec, max);
            let ins = inputs(&[("base", base.to_string()), ("max", max.to_string())]);
            session.emit("gaps", ins, Payload::Gaps { gaps })?;
            Ok(ExitStatus::Success)
        }
        Command::Families(args) => {
            let family = args.family()?;
            let values = family.values()?;
            let base = family.base().ok().map(|b| b.base());
            let mut status = ExitStatus::Success;
            let values = if args.verify {
                let spec = family.base()?;
                values
                    .into_iter()
                    .map(|value| {
                        let member = in_image(&spec, &value).member;
                        if member {
                            status = ExitStatus::Mismatch;
                        }
                        FamilyValue { value, member: Some(member) }
                    })
                    .collect()
            } else {
                values.into_iter().map(|value| FamilyValue { value, member: None }).collect()
            };
            let payload = Payload::Family { family: family.id().to_string(), base, values };
            session.emit("families", args.inputs(), payload)?;
            Ok(status)
        }
        Command::Density { p, k, n } => {
            let prime = Prime::new(*p)?;
            let report = match (k, n) {
                (Some(k), _) => density_at_power(prime, *k)?,
                (None, Some(n)) => density_exact(prime, *n)?,
                (None, None) => return Err(Error::InvalidParameter("density needs -k or -N".into())),
            };
            let mut ins = inputs(&[("p", p.to_string())]);
            if let Some(k) = k {
                ins.insert("k".into(), k.to_string());
            }
            if let Some(n) = n {
                ins.insert("N".into(), n.to_string());
            }
            session.emit("density", ins, Payload::Density(report))?;
            Ok(ExitStatus::Success)
        }
        Command::Verify { bases, n_max } => {
            let base_list = parse_bases(bases)?;
            let payload = verify_against(&base_list, *n_max, &z_base)?;
            let status = verify_status(&payload);
            let ins = inputs(&[("bases", bases.clone()), ("n_max", n_max.to_string())]);
            session.emit("verify", ins, payload)?;
            Ok(status)
        }
    }
}

/// Compare `closed_form` with the factorial oracle on every base in `bases`
/// and every `n <= n_max`.
pub fn verify_against(
    bases: &[u64],
    n_max: u64,
    closed_form: &dyn Fn(&BaseSpec, &BigUint) -> BigUint,
) -> Result<Payload, Error> {
    let specs = bases.iter().map(|&b| BaseSpec::new(b)).collect::<Result<Vec<_>, _>>()?;
    let oracle = Oracle::new(OracleConfig::new(n_max.max(1))?);
    let table = oracle.trailing_zeros_table(bases, n_max)?;
    let mut mismatches = Vec::new();
    for (n, row) in table.iter().enumerate() {
        let n_big = BigUint::from(n);
        for (spec, &expected) in specs.iter().zip(row) {
            let value = closed_form(spec, &n_big);
            if value != BigUint::from(expected) {
                mismatches.push(Mismatch { base: spec.base(), n: n as u64, closed_form: value, oracle: expected });
            }
        }
    }
    Ok(Payload::Verify {
        bases: bases.to_vec(),
        n_max,
        checked: (table.len() * specs.len()) as u64,
        mismatches,
    })
}

/// Exit status for a verification payload.
pub fn verify_status(payload: &Payload) -> ExitStatus {
    match payload {
        Payload::Verify { mismatches, .. } if !mismatches.is_empty() => ExitStatus::Mismatch,
        _ => ExitStatus::Success,
    }
}

/// Parse `args` (including the program name) and run, writing records to
/// `out` and diagnostics to `err`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { ExitStatus::Usage } else { ExitStatus::Success };
        }
    };
    let mut session = Session { renderer: Renderer::new(cli.format), out };
    match execute(&cli, &mut session) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::from(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (ExitStatus, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["facz"];
        full.extend_from_slice(args);
        let status = run(full, &mut out, &mut err);
        (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn zeros_examples() {
        assert_eq!(run_str(&["zeros", "--base", "10", "25"]).1, "6\n");
        assert_eq!(run_str(&["zeros", "--base", "2", "0"]).1, "0\n");
        assert_eq!(run_str(&["zeros", "--base", "12", "12"]).1, "5\n");
        assert_eq!(run_str(&["zeros", "--base", "10", "24..26"]).1, "24 4\n25 6\n26 6\n");
        assert_eq!(run_str(&["zeros", "--base", "1", "3"]).0, ExitStatus::Usage);
        assert_eq!(run_str(&["zeros", "--base", "10", "5..3"]).0, ExitStatus::Usage);
        assert_eq!(run_str(&["zeros", "--base", "10", "x..3"]).0, ExitStatus::Usage);
    }

    #[test]
    fn jumps_examples() {
        let (s, out, _) = run_str(&["jumps", "--base", "2", "--to", "8", "--format", "csv"]);
        assert_eq!(s, ExitStatus::Success);
        assert_eq!(out, "location,amplitude,components\n2,1,2^1:1\n4,2,2^1:2\n6,1,2^1:1\n8,3,2^1:3\n");
        let (_, out, _) = run_str(&["jumps", "--base", "10", "--to", "10"]);
        assert_eq!(out, "5 +1 [2^1:0 5^1:1]\n10 +1 [2^1:1 5^1:1]\n");
        let (s, out, _) = run_str(&["jumps", "--base", "7", "--from", "5", "--to", "6"]);
        assert_eq!((s, out.as_str()), (ExitStatus::Success, ""));
    }

    #[test]
    fn member_and_gaps_examples() {
        let (s, out, _) = run_str(&["member", "--base", "10", "5"]);
        assert_eq!(s, ExitStatus::NonMember);
        assert_eq!(out, "5 is not in the image; Z(24) = 4, Z(25) = 6\n");
        let (s, out, _) = run_str(&["member", "--base", "2", "0"]);
        assert_eq!(s, ExitStatus::Success);
        assert_eq!(out, "0 is in the image; witness n = 0\n");
        assert_eq!(run_str(&["gaps", "--base", "2", "--max", "15"]).1, "2,5,6,9,12,13,14\n");
        assert_eq!(run_str(&["gaps", "--base", "2", "--max", "15", "--format", "bfile"]).1, "1 2\n2 5\n3 6\n4 9\n5 12\n6 13\n7 14\n");
    }

    #[test]
    fn families_examples() {
        assert_eq!(run_str(&["families", "prop3a", "-p", "2", "-n", "3"]).1, "6\n5\n");
        assert_eq!(run_str(&["families", "cor3", "-q", "3"]).1, "20\n");
        assert_eq!(run_str(&["families", "cor3", "-q", "3", "--as-printed"]).1, "62\n");
        let (s, _, err) = run_str(&["families", "prop7", "-p", "2", "-r", "2", "-k", "2"]);
        assert_eq!(s, ExitStatus::Precondition);
        assert!(err.contains("precondition"));
        let (s, out, _) = run_str(&["families", "prop8", "-p", "7", "-r", "3", "-l", "3", "-k", "2", "--verify"]);
        assert_eq!((s, out.as_str()), (ExitStatus::Success, "19607 non-member\n"));
        assert_eq!(run_str(&["families", "prop7", "-p", "2", "-k", "2"]).0, ExitStatus::Usage);
        assert_eq!(run_str(&["families", "prop3a", "-p", "4", "-n", "3"]).0, ExitStatus::Usage);
    }

    #[test]
    fn density_examples() {
        let json = |args: &[&str]| -> serde_json::Value {
            let mut a = args.to_vec();
            a.extend(["--format", "json"]);
            serde_json::from_str(&run_str(&a).1).unwrap()
        };
        let v = json(&["density", "-p", "2", "-k", "2"]);
        assert_eq!(v["results"]["a_exact"], 3);
        assert_eq!(v["results"]["a_paper_formula"], "3");
        assert_eq!(v["results"]["divergence"], false);
        let v = json(&["density", "-p", "2", "-k", "4"]);
        assert_eq!(v["results"]["a_exact"], 9);
        assert_eq!(v["results"]["a_paper_formula"], "10");
        assert_eq!(v["results"]["divergence"], true);
        let v = json(&["density", "-p", "2", "-N", "1"]);
        assert_eq!(v["results"]["a_exact"], 2);
        assert_eq!(run_str(&["density", "-p", "2", "-k", "2", "--format", "bfile"]).0, ExitStatus::Usage);
    }

    #[test]
    fn verify_examples() {
        let (s, out, _) = run_str(&["verify", "--bases", "2..12", "--n-max", "200"]);
        assert_eq!(s, ExitStatus::Success);
        assert!(out.contains("0 mismatches"));
        assert_eq!(run_str(&["verify", "--bases", "10", "--n-max", "0"]).0, ExitStatus::Success);
        assert_eq!(run_str(&["verify", "--bases", "1", "--n-max", "10"]).0, ExitStatus::Usage);
        assert_eq!(run_str(&["verify", "--bases", "0..3", "--n-max", "10"]).0, ExitStatus::Usage);
    }

    #[test]
    fn verify_flags_a_wrong_closed_form() {
        let off_by_one = |b: &BaseSpec, n: &BigUint| {
            let z = z_base(b, n);
            if *n == BigUint::from(25u32) { z + 1u32 } else { z }
        };
        let payload = verify_against(&[10, 11], 30, &off_by_one).unwrap();
        let Payload::Verify { checked, mismatches, .. } = &payload else { unreachable!() };
        assert_eq!(*checked, 62);
        assert_eq!(mismatches.len(), 2);
        assert_eq!(mismatches[0], Mismatch { base: 10, n: 25, closed_form: BigUint::from(7u32), oracle: 6 });
        assert_eq!(verify_status(&payload), ExitStatus::Mismatch);
        assert_eq!(ExitStatus::Mismatch as u8, 3);
        let good = verify_against(&[10, 11], 30, &z_base).unwrap();
        assert_eq!(verify_status(&good), ExitStatus::Success);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&[]).0, ExitStatus::Usage);
        assert_eq!(run_str(&["frobnicate"]).0, ExitStatus::Usage);
        assert_eq!(run_str(&["zeros", "--base", "10", "3", "--format", "xml"]).0, ExitStatus::Usage);
        assert_eq!(run_str(&["--help"]).0, ExitStatus::Success);
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("3..7").unwrap(), (BigUint::from(3u32), BigUint::from(7u32)));
        assert_eq!(parse_range("4").unwrap(), (BigUint::from(4u32), BigUint::from(4u32)));
        assert!(parse_range("..7").is_err());
        assert!(parse_range("3..").is_err());
        assert!(parse_range("-3").is_err());
        assert_eq!(parse_bases("2..4,10").unwrap(), vec![2, 3, 4, 10]);
    }
}
