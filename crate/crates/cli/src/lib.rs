//! Command implementations for the `ut2dos` binary.
//!
//! Every command writes its report to `out`, diagnostics to `err`, and
//! returns the process exit code. Entries are `i64`; anything that would
//! leave that range is reported as an overflow (exit 2) rather than wrapped.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use ut2dos::modular::{modulus_cap, MODULUS_CAP_ENV};
use ut2dos::selfcheck::{self, Branch, SelfCheckConfig};
use ut2dos::{
    brute_g, decide_with_witness, emit_table, m_of, representable_mod, verify_witness, Error, Mat64,
    Obstruction, Selection, TableFormat, Verdict, Witness64,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ut2dos",
    version,
    about = "Differences of squares of upper-triangular 2x2 integer matrices",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether [[p, r], [0, q]] is A^2 - B^2 (exit 0 yes, 1 no).
    #[command(allow_negative_numbers = true)]
    Decide(DecideArgs),
    /// Print m(p, q), the modulus the corner must be divisible by.
    #[command(allow_negative_numbers = true)]
    G(GArgs),
    /// Emit the table of representable matrices over Z_m.
    Modtable(ModtableArgs),
    /// Check A^2 - B^2 = T (exit 0 iff it holds).
    Verify(VerifyArgs),
    /// Cross-check the closed form against brute force on a box.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    pub p: i64,
    pub r: i64,
    pub q: i64,
    #[arg(long)]
    pub json: bool,
    /// Include a verified witness (A, B).
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Args)]
pub struct GArgs {
    pub p: i64,
    pub q: i64,
    /// Also compute g(p, q) by brute force with this zero-representation bound.
    #[arg(long, value_name = "ZERO_BOUND")]
    pub brute: Option<u32>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => TableFormat::Text,
            Format::Csv => TableFormat::Csv,
            Format::Json => TableFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
pub struct ModtableArgs {
    pub modulus: u32,
    /// Keep only triples whose diagonal entries are divisible by this.
    #[arg(long, value_name = "D")]
    pub diag_multiple: Option<u32>,
    /// Emit the non-representable triples instead.
    #[arg(long)]
    pub complement: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A as a,b,d
    #[arg(long = "a", value_parser = parse_triple, allow_hyphen_values = true)]
    pub lhs: [i64; 3],
    /// B as x,y,u
    #[arg(long = "b", value_parser = parse_triple, allow_hyphen_values = true)]
    pub rhs: [i64; 3],
    /// T as p,r,q
    #[arg(long = "t", value_parser = parse_triple, allow_hyphen_values = true)]
    pub target: [i64; 3],
}

#[derive(Debug, Args)]
pub struct SelfcheckArgs {
    #[arg(long, default_value_t = 12)]
    pub bound: u32,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, default_value_t = ut2dos::DEFAULT_ZERO_BOUND)]
    pub zero_bound: u32,
    /// Swap in a decision procedure that is known to be wrong.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

pub fn parse_triple(s: &str) -> Result<[i64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated integers, got {s:?}"));
    }
    let mut out = [0i64; 3];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.parse().map_err(|e| format!("{part:?}: {e}"))?;
    }
    Ok(out)
}

fn mat([a, b, c]: [i64; 3]) -> Mat64 {
    Mat64::new(a, b, c)
}

/// JSON shape of `decide --json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideReport {
    pub p: i64,
    pub r: i64,
    pub q: i64,
    pub representable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness64>,
}

impl DecideReport {
    pub fn new(target: &Mat64, verdict: &Verdict<i64>) -> Self {
        DecideReport {
            p: target.a,
            r: target.b,
            q: target.c,
            representable: verdict.is_representable(),
            g: verdict.g(),
            obstruction: verdict.obstruction(),
            witness: verdict.witness().cloned(),
        }
    }
}

/// JSON shape of `g --json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GReport {
    pub p: i64,
    pub q: i64,
    pub g: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Decide(args) => cmd_decide(&args, out),
        Command::G(args) => cmd_g(&args, out),
        Command::Modtable(args) => cmd_modtable(&args, out, err),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Selfcheck(args) => cmd_selfcheck(&args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotDifferenceOfSquares(_) => EXIT_NO,
                _ => EXIT_USAGE,
            }
        }
    }
}

pub fn cmd_decide(args: &DecideArgs, out: &mut dyn Write) -> ut2dos::Result<u8> {
    let target = Mat64::new(args.p, args.r, args.q);
    let mut verdict = decide_with_witness(&target)?;
    if !args.witness {
        if let Verdict::Representable { witness, .. } = &mut verdict {
            *witness = None;
        }
    }
    if args.json {
        serde_json::to_writer(&mut *out, &DecideReport::new(&target, &verdict))?;
        writeln!(out)?;
    } else {
        match &verdict {
            Verdict::Representable { case, g, witness } => {
                writeln!(out, "{target}: representable (g = {g}, case {case})")?;
                if let Some(w) = witness {
                    writeln!(out, "A = {}", w.a)?;
                    writeln!(out, "B = {}", w.b)?;
                }
            }
            Verdict::NotRepresentable { obstruction } => {
                writeln!(out, "{target}: not representable ({obstruction:?}: {obstruction})")?;
            }
        }
    }
    Ok(if verdict.is_representable() { EXIT_OK } else { EXIT_NO })
}

pub fn cmd_g(args: &GArgs, out: &mut dyn Write) -> ut2dos::Result<u8> {
    let g = m_of(&args.p, &args.q)?;
    let brute = args
        .brute
        .map(|zero_bound| brute_g(&args.p, &args.q, zero_bound))
        .transpose()?;
    let matches = brute.map(|b| b == i64::from(g));
    if args.json {
        let report = GReport {
            p: args.p,
            q: args.q,
            g,
            brute,
            matches,
        };
        serde_json::to_writer(&mut *out, &report)?;
        writeln!(out)?;
    } else {
        writeln!(out, "{g}")?;
        if let (Some(b), Some(ok)) = (brute, matches) {
            writeln!(out, "brute {b} {}", if ok { "MATCH" } else { "MISMATCH" })?;
        }
    }
    Ok(if matches == Some(false) { EXIT_MISMATCH } else { EXIT_OK })
}

pub fn cmd_modtable(args: &ModtableArgs, out: &mut dyn Write, err: &mut dyn Write) -> ut2dos::Result<u8> {
    let cap = modulus_cap();
    if args.modulus > cap {
        writeln!(
            err,
            "error: modulus {} exceeds the exhaustive cap {cap} (set {MODULUS_CAP_ENV} to raise it)",
            args.modulus
        )?;
        return Ok(EXIT_USAGE);
    }
    let table = representable_mod(args.modulus)?;
    let selection = Selection {
        diag_multiple: args.diag_multiple,
        complement: args.complement,
    };
    match &args.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            emit_table(&table, args.format.into(), selection, &mut file)?;
        }
        None => emit_table(&table, args.format.into(), selection, out)?,
    }
    if let Some(d) = args.diag_multiple {
        let missing = Selection {
            diag_multiple: Some(d),
            complement: true,
        }
        .apply(&table)
        .len();
        writeln!(
            err,
            "modulus {}: {missing} non-representable triples with {d} | a, c",
            args.modulus
        )?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> ut2dos::Result<u8> {
    let (lhs, rhs, target) = (mat(args.lhs), mat(args.rhs), mat(args.target));
    let ok = verify_witness(&lhs, &rhs, &target)?;
    writeln!(out, "{}", if ok { "ok" } else { "mismatch" })?;
    Ok(if ok { EXIT_OK } else { EXIT_NO })
}

pub fn cmd_selfcheck(args: &SelfcheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> ut2dos::Result<u8> {
    let config = SelfCheckConfig {
        bound: i64::from(args.bound),
        zero_bound: args.zero_bound,
        workers: args.workers,
    };
    let report = if args.inject_fault {
        selfcheck::run_with(config, &selfcheck::faulty_decide)?
    } else {
        selfcheck::run(config)?
    };
    writeln!(
        out,
        "box |p|,|q|,|r| <= {}: {} cases, {} representable, {} diagonal pairs checked for g",
        args.bound, report.cases, report.representable, report.g_pairs
    )?;
    for branch in Branch::ALL {
        let n = report.branches.get(&branch).copied().unwrap_or(0);
        writeln!(out, "  {:<16} {n}", format!("{branch:?}"))?;
    }
    let uncovered = report.uncovered();
    if !uncovered.is_empty() {
        writeln!(err, "warning: branches not exercised: {uncovered:?}")?;
    }
    match &report.mismatch {
        None => {
            writeln!(out, "PASS")?;
            Ok(EXIT_OK)
        }
        Some(m) => {
            writeln!(out, "FAIL")?;
            writeln!(err, "counterexample: {m}")?;
            Ok(EXIT_MISMATCH)
        }
    }
}

/// Parses `args` and runs the command against the process's stdio.
pub fn main_with_args<I, S>(args: I) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(cli, &mut stdout.lock(), &mut stderr.lock())
}
