//! Command-line front end. One JSON object per line on stdout, or a plain
//! table with `--format human`.
//!
//! Exit codes: 0 all checks passed, 1 mismatch or counterexample, 2 invalid input.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::congruences::{scan_progressions, verify_claim, CongruenceClaim};
use crate::error::{Error, Result};
use crate::framework::{c_table, closed_form_exponent, product_side, sum_side, Nu, RRSpec};
use crate::identities::{
    dyson_check, gh_product_check, verify_even_identity, verify_kernel_identity, verify_odd_identity,
    IdentityCheck,
};
use crate::recursion::{b_sequence, recurse_coefficients};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hlseries", version, about = "Exact q-series checks for Hall-Littlewood Rogers-Ramanujan identities")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Sum,
    Product,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    Even,
    Odd,
    Kernel,
    Dyson,
    Gh,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct SpecArgs {
    /// `c,d`, one of 1,-1  2,-1  1,0  2,-2.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Nu,
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
}

impl SpecArgs {
    fn spec(&self) -> Result<RRSpec> {
        RRSpec::new(self.nu, self.a, self.b)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sum side and/or product side through q^T.
    Expand {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long = "T", default_value_t = 40)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Side::Both)]
        side: Side,
    },
    /// Exponent c(t) per residue of t modulo kappa.
    Ctable {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Coefficients from the exponent table via the F-hat recursion.
    Recurse {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long = "T", default_value_t = 40)]
        t: usize,
    },
    /// Check one of the quotient identities.
    Verify {
        #[arg(value_enum)]
        identity: Identity,
        /// One or more moduli, comma separated.
        #[arg(long, value_delimiter = ',')]
        m: Vec<u32>,
        #[arg(long = "T", default_value_t = 40)]
        t: usize,
    },
    /// m-regular partition congruences.
    Congruence {
        #[command(subcommand)]
        action: CongruenceAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CongruenceAction {
    /// d_m(A n + B) = 0 mod p for every argument up to T.
    Check {
        #[arg(long)]
        m: u32,
        #[arg(long = "A")]
        stride: u64,
        #[arg(long = "B")]
        offset: u64,
        #[arg(long)]
        p: u64,
        #[arg(long = "T", default_value_t = 25000)]
        t: usize,
    },
    /// Every progression with stride up to A-max whose samples all vanish mod p.
    Scan {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u64,
        #[arg(long = "A-max")]
        a_max: u64,
        #[arg(long = "T", default_value_t = 25000)]
        t: usize,
        #[arg(long, default_value_t = crate::congruences::MIN_SAMPLES_FLOOR)]
        min_samples: usize,
    },
}

/// One output line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub command: String,
    pub params: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_through: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch_index: Option<usize>,
    #[serde(skip)]
    pub passed: bool,
}

fn spec_params(s: &SpecArgs) -> Value {
    json!({"nu": s.nu.to_string(), "a": s.a, "b": s.b})
}

fn through(t: usize, mismatch: Option<usize>) -> Option<usize> {
    match mismatch {
        None => Some(t),
        Some(0) => None,
        Some(i) => Some(i - 1),
    }
}

fn expand(spec: &SpecArgs, t: usize, side: Side) -> Result<Record> {
    let s = spec.spec()?;
    let mut params = spec_params(spec);
    params["T"] = json!(t);
    params["side"] = json!(side);
    let (result, mismatch, passed) = match side {
        Side::Sum => (json!({"series": sum_side(&s, t).to_strings()}), None, true),
        Side::Product => (json!({"series": product_side(&s, t).to_strings()}), None, true),
        Side::Both => {
            let (sum, prod) = (sum_side(&s, t), product_side(&s, t));
            let mismatch = sum.first_mismatch(&prod);
            let verdict = if mismatch.is_none() { "equal" } else { "unequal" };
            (json!({"verdict": verdict, "sum": sum.to_strings(), "product": prod.to_strings()}), mismatch, mismatch.is_none())
        }
    };
    let verified_through = if side == Side::Both { through(t, mismatch) } else { None };
    Ok(Record { command: "expand".into(), params, result, verified_through, mismatch_index: mismatch, passed })
}

fn ctable(spec: &SpecArgs) -> Result<Record> {
    let s = spec.spec()?;
    let table = c_table(&s);
    let closed: Option<Vec<i64>> =
        (0..s.kappa()).map(|t| closed_form_exponent(&s, t)).collect();
    let closed_match = closed.as_ref().map(|c| c.as_slice() == table.values());
    let mut result = json!({
        "kappa": s.kappa(),
        "t_exponent": s.t_exponent(),
        "exponents": table.values(),
        "zero_residues": table.zero_residues(),
    });
    if let Some(m) = closed_match {
        result["closed_form_match"] = json!(m);
    }
    let mismatch = closed
        .as_ref()
        .and_then(|c| c.iter().zip(table.values()).position(|(x, y)| x != y));
    Ok(Record {
        command: "ctable".into(),
        params: spec_params(spec),
        result,
        verified_through: None,
        mismatch_index: mismatch,
        passed: closed_match != Some(false),
    })
}

fn recurse(spec: &SpecArgs, t: usize) -> Result<Record> {
    let s = spec.spec()?;
    let table = c_table(&s);
    let c = |n: usize| table.at(n);
    let rec = recurse_coefficients(c, t)?;
    let direct = table.expand(t);
    let mismatch = rec.first_mismatch(&direct);
    let b: Vec<String> = b_sequence(c, t).iter().skip(1).map(ToString::to_string).collect();
    let mut params = spec_params(spec);
    params["T"] = json!(t);
    Ok(Record {
        command: "recurse".into(),
        params,
        result: json!({
            "verdict": if mismatch.is_none() { "equal" } else { "unequal" },
            "coefficients": rec.to_strings(),
            "direct": direct.to_strings(),
            "b": b,
        }),
        verified_through: through(t, mismatch),
        mismatch_index: mismatch,
        passed: mismatch.is_none(),
    })
}

fn check_record(identity: Identity, m: Option<u32>, t: usize, check: &IdentityCheck, extra: Value) -> Record {
    let mut params = json!({"identity": identity, "T": t});
    if let Some(m) = m {
        params["m"] = json!(m);
    }
    let mut result = json!({
        "holds": check.holds,
        "lhs": check.lhs.to_strings(),
        "rhs": check.rhs.to_strings(),
    });
    if let Some(e) = check.exponent_match {
        result["exponent_match"] = json!(e);
    }
    if let Value::Object(extra) = extra {
        result.as_object_mut().expect("object").extend(extra);
    }
    Record {
        command: "verify".into(),
        params,
        result,
        verified_through: through(t, check.first_mismatch),
        mismatch_index: check.first_mismatch,
        passed: check.holds,
    }
}

fn verify_one(identity: Identity, m: u32, t: usize) -> Result<Record> {
    let check = match identity {
        Identity::Even => verify_even_identity(m, t)?,
        Identity::Odd => verify_odd_identity(m, t)?,
        Identity::Kernel => verify_kernel_identity(m, t)?,
        Identity::Dyson | Identity::Gh => unreachable!("no modulus parameter"),
    };
    Ok(check_record(identity, Some(m), t, &check, json!({})))
}

fn verify(identity: Identity, ms: &[u32], t: usize) -> Result<Vec<Record>> {
    match identity {
        Identity::Dyson | Identity::Gh if !ms.is_empty() => {
            Err(Error::OutOfRange(format!("{identity:?} identity takes no --m").to_lowercase()))
        }
        Identity::Dyson => Ok(vec![check_record(identity, None, t, &dyson_check(t), json!({}))]),
        Identity::Gh => {
            let r = gh_product_check(t);
            let mut rec = check_record(identity, None, t, &r.product, json!({"congruence_failures": r.congruence_failures}));
            rec.passed = r.holds();
            rec.result["holds"] = json!(r.holds());
            Ok(vec![rec])
        }
        _ if ms.is_empty() => Err(Error::OutOfRange(format!("{identity:?} identity needs --m").to_lowercase())),
        _ => {
            // Validate everything before computing anything.
            for &m in ms {
                match identity {
                    Identity::Even => crate::identities::even_identity(m).map(drop)?,
                    Identity::Odd => crate::identities::odd_identity(m).map(drop)?,
                    _ => crate::identities::kernel_identity(m).map(drop)?,
                }
            }
            ms.par_iter().map(|&m| verify_one(identity, m, t)).collect()
        }
    }
}

fn congruence(action: &CongruenceAction) -> Result<Record> {
    match *action {
        CongruenceAction::Check { m, stride, offset, p, t } => {
            let claim = CongruenceClaim::new(m, stride, offset, p)?;
            let r = verify_claim(&claim, t);
            let mismatch = r.counterexample.as_ref().map(|c| c.argument);
            Ok(Record {
                command: "congruence check".into(),
                params: json!({"m": m, "A": stride, "B": offset, "p": p, "T": t}),
                result: json!({
                    "claim": claim.to_string(),
                    "verified": r.verified(),
                    "samples_checked": r.samples_checked,
                    "counterexample": r.counterexample,
                }),
                verified_through: r.verified_through,
                mismatch_index: mismatch,
                passed: r.verified(),
            })
        }
        CongruenceAction::Scan { m, p, a_max, t, min_samples } => {
            let found = scan_progressions(m, p, a_max, t, min_samples)?;
            let candidates: Vec<Value> = found
                .iter()
                .map(|c| json!({"A": c.claim.stride, "B": c.claim.offset, "samples": c.samples}))
                .collect();
            Ok(Record {
                command: "congruence scan".into(),
                params: json!({"m": m, "p": p, "A_max": a_max, "T": t, "min_samples": min_samples}),
                result: json!({"status": "empirical", "candidates": candidates}),
                verified_through: None,
                mismatch_index: None,
                passed: true,
            })
        }
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Vec<Record>> {
    match &cli.command {
        Command::Expand { spec, t, side } => expand(spec, *t, *side).map(|r| vec![r]),
        Command::Ctable { spec } => ctable(spec).map(|r| vec![r]),
        Command::Recurse { spec, t } => recurse(spec, *t).map(|r| vec![r]),
        Command::Verify { identity, m, t } => verify(*identity, m, *t),
        Command::Congruence { action } => congruence(action).map(|r| vec![r]),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Expand { .. } => "expand",
        Command::Ctable { .. } => "ctable",
        Command::Recurse { .. } => "recurse",
        Command::Verify { .. } => "verify",
        Command::Congruence { action: CongruenceAction::Check { .. } } => "congruence check",
        Command::Congruence { action: CongruenceAction::Scan { .. } } => "congruence scan",
    }
}

fn human_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(human_value).collect::<Vec<_>>().join(", ")
        }
        other => other.to_string(),
    }
}

pub fn render_human(rec: &Record) -> String {
    let mut out = String::new();
    let params: Vec<String> = match &rec.params {
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}={}", human_value(v))).collect(),
        _ => Vec::new(),
    };
    out.push_str(&format!("{} {}\n", rec.command, params.join(" ")));
    if let Value::Object(m) = &rec.result {
        let width = m.keys().map(String::len).max().unwrap_or(0);
        for (k, v) in m {
            out.push_str(&format!("  {k:<width$}  {}\n", human_value(v)));
        }
    }
    if let Some(v) = rec.verified_through {
        out.push_str(&format!("  verified through q^{v}\n"));
    }
    if let Some(i) = rec.mismatch_index {
        out.push_str(&format!("  first mismatch at {i}\n"));
    }
    out
}

pub fn render(rec: &Record, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(rec).expect("records serialize") + "\n",
        Format::Human => render_human(rec),
    }
}

/// Parses `args` (program name first), runs, writes output, and returns the exit code.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(records) => {
            for r in &records {
                let _ = out.write_all(render(r, cli.format).as_bytes());
            }
            if records.iter().all(|r| r.passed) {
                EXIT_PASS
            } else {
                EXIT_MISMATCH
            }
        }
        Err(e) => {
            let line = match cli.format {
                Format::Json => json!({"command": command_name(&cli.command), "error": e.to_string()}).to_string(),
                Format::Human => format!("error: {e}"),
            };
            let _ = writeln!(err, "{line}");
            EXIT_INVALID
        }
    }
}
