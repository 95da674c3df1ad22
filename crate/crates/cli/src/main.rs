//! Batch front end for the proof toolkit: formula generators, proof and
//! certificate checkers, the constructive provers, and the brute-force
//! oracles, wired for reproducible scripts. Reports go to standard output,
//! plain text or one JSON object per line under `--json-lines`; errors go
//! to standard error. Outputs carry no timestamps, so a fixed command line
//! and seed reproduce every file byte for byte.
//!
//! Exit codes: 0 success or accepted, 1 rejected or failed self-check,
//! 2 usage, parse, or size-limit error, 3 I/O error.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wer_core::constructions::{
    build_ger_proof, check_er, dp_resolution_oracle_with, enumerate_sbcs_with,
    simulate_er_in_rat_minus, DpOutcome, DEFAULT_DP_VAR_LIMIT, DEFAULT_ENUM_VAR_LIMIT,
};
use wer_core::dimacs::{parse_cnf, write_cnf};
use wer_core::generators::{gen_bphp, gen_g, gen_i, BphpLayout, ErProof, GuardedPairLayout};
use wer_core::prooffmt::{
    parse_er, parse_ger, parse_meta, parse_proof, write_ger, write_meta, write_proof, Meta,
};
use wer_core::proofs::{
    check_ger, check_with, restrict_proof, CheckOptions, CheckReport, RejectReason, System,
    TransformError, Verdict,
};
use wer_core::sat::{brute_force_sat_with, SatVerdict, DEFAULT_VAR_LIMIT};
use wer_core::{Assignment, Clause, Formula, Lit, Var};

#[derive(Parser)]
#[command(
    name = "wer",
    version,
    about = "Generate, construct, and check clause-redundancy proofs",
    after_help = "File grammars and the --json-lines record fields are documented in docs/formats.md."
)]
struct Cli {
    #[command(flatten)]
    flags: RunFlags,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Flags shared by every subcommand; the config file supplies defaults and
/// the flags override it.
#[derive(Args)]
struct RunFlags {
    /// Plain key=value config file; recognized keys are seed,
    /// oracle_var_limit, and threads.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Report as one JSON object per line instead of plain text.
    #[arg(long, global = true)]
    json_lines: bool,
    /// Seed for the randomized oracles (default 0).
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Variable cap for the brute-force oracles, overriding each oracle's
    /// documented default.
    #[arg(long, global = true, value_name = "N")]
    oracle_var_limit: Option<usize>,
    /// Worker threads inside the satisfiability oracle (default 1).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

/// Resolved run settings: config file first, then flags on top.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RunConfig {
    seed: u64,
    oracle_var_limit: Option<usize>,
    threads: usize,
}

impl RunConfig {
    fn resolve(flags: &RunFlags) -> Result<RunConfig, CliError> {
        let file = match &flags.config {
            Some(path) => Some((path.as_path(), read_file(path)?)),
            None => None,
        };
        RunConfig::merge(file.as_ref().map(|(p, s)| (*p, s.as_str())), flags)
    }

    fn merge(file: Option<(&Path, &str)>, flags: &RunFlags) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig {
            seed: 0,
            oracle_var_limit: None,
            threads: 1,
        };
        if let Some((path, text)) = file {
            let meta = parse_meta(text).map_err(|e| at_path(path, e))?;
            for (key, value) in &meta.entries {
                match key.as_str() {
                    "seed" => cfg.seed = config_value(path, key, value)?,
                    "oracle_var_limit" => {
                        cfg.oracle_var_limit = Some(config_value(path, key, value)?)
                    }
                    "threads" => cfg.threads = config_value(path, key, value)?,
                    _ => {
                        return Err(CliError::Usage(format!(
                            "{}: unknown config key {key:?}",
                            path.display()
                        )))
                    }
                }
            }
        }
        if let Some(seed) = flags.seed {
            cfg.seed = seed;
        }
        if let Some(limit) = flags.oracle_var_limit {
            cfg.oracle_var_limit = Some(limit);
        }
        if let Some(threads) = flags.threads {
            cfg.threads = threads;
        }
        if cfg.oracle_var_limit == Some(0) {
            return Err(CliError::Usage("oracle_var_limit must be positive".into()));
        }
        if cfg.threads == 0 {
            return Err(CliError::Usage("threads must be positive".into()));
        }
        Ok(cfg)
    }
}

fn config_value<T: FromStr>(path: &Path, key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| {
        CliError::Usage(format!(
            "{}: config key {key} needs a nonnegative integer, found {value:?}",
            path.display()
        ))
    })
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a formula family as DIMACS plus a key=value meta sidecar.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Check a proof or certificate: verdict, size, first failing step.
    Check(CheckArgs),
    /// Build a proof or certificate from an accepted extended-resolution
    /// refutation, re-check it, and report the size bound.
    #[command(subcommand)]
    Prove(ProveCmd),
    /// Brute-force oracles: satisfiability, variable elimination,
    /// set-blocked enumeration, pigeon-width, proof restriction.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand)]
enum GenCmd {
    /// Bit pigeonhole contradiction: 2^k + 1 pigeons, k-bit hole labels.
    Bphp {
        /// Bits per hole label.
        #[arg(short = 'k', long = "bits", value_parser = clap::value_parser!(u32).range(1..))]
        bits: u32,
        #[command(flatten)]
        out: GenOut,
    },
    /// Input formula plus both guarded copies of it per guard variable.
    G {
        #[arg(long, value_name = "FILE")]
        cnf: PathBuf,
        #[command(flatten)]
        guards: GuardSource,
        #[command(flatten)]
        out: GenOut,
    },
    /// Pair-guarded variant: linking clauses tie each guard to fresh pairs
    /// (y_j, z_j), and the guarded copies run over y_j and -z_j instead.
    I {
        #[arg(long, value_name = "FILE")]
        cnf: PathBuf,
        #[command(flatten)]
        guards: GuardSource,
        /// Number of fresh (y, z) pairs.
        #[arg(short = 'm', long = "pairs", value_parser = clap::value_parser!(u32).range(1..))]
        pairs: u32,
        #[command(flatten)]
        out: GenOut,
    },
}

/// Where the guard variables come from: an extended-resolution file's
/// extension variables, or a count of fresh ones.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct GuardSource {
    /// Extended-resolution proof whose extension variables become guards.
    #[arg(long, value_name = "FILE")]
    er: Option<PathBuf>,
    /// Invent this many fresh guard variables instead.
    #[arg(short = 't', long = "guards", value_name = "N")]
    count: Option<u32>,
}

#[derive(Args)]
struct GenOut {
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Meta sidecar path; defaults to <out>.meta.
    #[arg(long, value_name = "FILE")]
    meta: Option<PathBuf>,
}

impl GenOut {
    fn meta_path(&self) -> PathBuf {
        self.meta
            .clone()
            .unwrap_or_else(|| sibling_with_suffix(&self.out, ".meta"))
    }
}

#[derive(Args)]
struct CheckArgs {
    /// Proof system to check under.
    system: SystemArg,
    #[arg(long, value_name = "FILE")]
    cnf: PathBuf,
    /// Proof file; certificate format for ger, wer format otherwise.
    #[arg(long, value_name = "FILE")]
    proof: PathBuf,
    /// Let a premise id of 0 search earlier clauses for a match.
    #[arg(long)]
    permissive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemArg {
    Res,
    Bc,
    Rat,
    Sbc,
    Ger,
}

impl SystemArg {
    fn name(self) -> &'static str {
        match self {
            SystemArg::Res => "res",
            SystemArg::Bc => "bc",
            SystemArg::Rat => "rat",
            SystemArg::Sbc => "sbc",
            SystemArg::Ger => "ger",
        }
    }
}

#[derive(Subcommand)]
enum ProveCmd {
    /// Replay an extended-resolution refutation inside the guarded formula
    /// as redundancy additions without new variables.
    GRat {
        #[arg(long, value_name = "FILE")]
        cnf: PathBuf,
        #[arg(long, value_name = "FILE")]
        er: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Also write the guarded formula this proof refutes.
        #[arg(long, value_name = "FILE")]
        out_cnf: Option<PathBuf>,
    },
    /// Build a generalized-extension certificate for the pair-guarded
    /// formula from an extended-resolution refutation.
    IGer {
        #[arg(long, value_name = "FILE")]
        cnf: PathBuf,
        #[arg(long, value_name = "FILE")]
        er: PathBuf,
        /// Number of fresh (y, z) pairs.
        #[arg(short = 'm', long = "pairs", value_parser = clap::value_parser!(u32).range(1..))]
        pairs: u32,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Also write the pair-guarded formula the certificate refutes.
        #[arg(long, value_name = "FILE")]
        out_cnf: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Brute-force satisfiability scan (default cap 20 variables).
    Sat {
        #[arg(long, value_name = "FILE")]
        cnf: PathBuf,
    },
    /// Variable-elimination refuter (default cap 12 variables).
    Dp {
        #[arg(long, value_name = "FILE")]
        cnf: PathBuf,
        /// Write the resolution refutation here when unsatisfiable.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// List every set-blocked clause with each admitting witness
    /// (default cap 16 variables), tab-separated.
    EnumSbc {
        #[arg(long, value_name = "FILE")]
        cnf: PathBuf,
        /// Largest clause size to enumerate; defaults to the variable count.
        #[arg(long, value_name = "N")]
        max_size: Option<usize>,
        /// Pigeon layout bits for the width column; inferred when omitted.
        #[arg(long, value_name = "K")]
        bits: Option<u32>,
    },
    /// Pigeon-width of every clause of a formula and, with --proof, of
    /// every step result.
    Width {
        #[arg(long, value_name = "FILE")]
        cnf: PathBuf,
        #[arg(long, value_name = "FILE")]
        proof: Option<PathBuf>,
        /// Pigeon layout bits; inferred from the variable count when omitted.
        #[arg(long, value_name = "K")]
        bits: Option<u32>,
    },
    /// Restrict an accepted resolution proof under a partial matching or an
    /// explicit assignment, and re-check the result.
    Restrict {
        #[arg(long, value_name = "FILE")]
        cnf: PathBuf,
        #[arg(long, value_name = "FILE")]
        proof: PathBuf,
        /// Match this many pigeons to random distinct holes (uses --seed).
        #[arg(long = "match", value_name = "M", conflicts_with = "assign")]
        matched: Option<u32>,
        /// Explicit assignment as space-separated literals, e.g. "1 -4".
        #[arg(long, value_name = "LITS")]
        assign: Option<String>,
        /// Pigeon layout bits; inferred from the variable count when omitted.
        #[arg(long, value_name = "K")]
        bits: Option<u32>,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Also write the restricted formula.
        #[arg(long, value_name = "FILE")]
        out_cnf: Option<PathBuf>,
    },
}

/// Errors that end the run: usage and parse problems exit 2, I/O exits 3.
/// Rejected verdicts are reported, not raised, and exit 1.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
}

fn at_path(path: &Path, err: impl Display) -> CliError {
    CliError::Usage(format!("{}: {err}", path.display()))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(path, err)) => {
            eprintln!("error: {}: {err}", path.display());
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(&cli.flags)?;
    let rep = Reporter {
        json: cli.flags.json_lines,
    };
    match &cli.cmd {
        Cmd::Gen(gen) => cmd_gen(&rep, gen),
        Cmd::Check(args) => cmd_check(&rep, args),
        Cmd::Prove(prove) => cmd_prove(&rep, prove),
        Cmd::Oracle(oracle) => cmd_oracle(&rep, &cfg, oracle),
    }
}

struct Reporter {
    json: bool,
}

impl Reporter {
    /// One report line: the JSON record in machine mode, the text otherwise.
    fn line(&self, human: impl Display, record: Value) {
        if self.json {
            println!("{record}");
        } else {
            println!("{human}");
        }
    }

    fn human(&self, text: impl Display) {
        if !self.json {
            println!("{text}");
        }
    }

    /// A record whose content the human lines already carried piecemeal.
    fn record(&self, record: Value) {
        if self.json {
            println!("{record}");
        }
    }
}

fn cmd_gen(rep: &Reporter, gen: &GenCmd) -> Result<bool, CliError> {
    match gen {
        GenCmd::Bphp { bits, out } => {
            let (g, layout) = gen_bphp(*bits);
            let comments = vec![
                format!(
                    "bit pigeonhole principle: {} pigeons, {} holes, {} bits per pigeon",
                    layout.pigeons(),
                    layout.holes(),
                    layout.bits()
                ),
                format!(
                    "pigeon x bit b is variable (x-1)*{} + b + 1, x in 1..={}, b in 0..{}",
                    layout.bits(),
                    layout.pigeons(),
                    layout.bits()
                ),
            ];
            let mut meta = Meta::new();
            meta.set("family", "bphp");
            meta.set("k", layout.bits());
            meta.set("n", layout.holes());
            let written = write_gen(out, &g, &comments, &meta)?;
            rep.line(
                &written,
                json!({
                    "event": "gen", "family": "bphp",
                    "k": layout.bits(), "holes": layout.holes(), "pigeons": layout.pigeons(),
                    "vars": g.vars().len(), "clauses": g.len(),
                    "out": out.out.display().to_string(),
                    "meta": written.meta.display().to_string(),
                }),
            );
            Ok(true)
        }
        GenCmd::G { cnf, guards, out } => {
            let g = load_cnf(cnf)?;
            let xs = guard_vars(&g, guards)?;
            let gg = gen_g(&g, &xs).map_err(|e| at_path(cnf, e))?;
            let comments = vec![
                format!(
                    "guarded formula: {} input clauses under guards {}",
                    g.len(),
                    var_list(&xs)
                ),
                "order: inputs, then per guard the positive copies, then the negative copies"
                    .to_string(),
            ];
            let mut meta = Meta::new();
            meta.set("family", "g");
            meta.set("t", xs.len());
            let written = write_gen(out, &gg, &comments, &meta)?;
            rep.line(
                &written,
                json!({
                    "event": "gen", "family": "g",
                    "t": xs.len(), "guards": var_ids(&xs),
                    "vars": gg.vars().len(), "clauses": gg.len(),
                    "out": out.out.display().to_string(),
                    "meta": written.meta.display().to_string(),
                }),
            );
            Ok(true)
        }
        GenCmd::I {
            cnf,
            guards,
            pairs,
            out,
        } => {
            let g = load_cnf(cnf)?;
            let xs = guard_vars(&g, guards)?;
            let layout = pair_layout(&g, &xs, *pairs);
            let ii = gen_i(&g, &xs, &layout).map_err(|e| at_path(cnf, e))?;
            let comments = vec![
                format!(
                    "pair-guarded formula: {} input clauses under guards {}",
                    g.len(),
                    var_list(&xs)
                ),
                format!(
                    "pairs: y {}, z {}",
                    var_list(&pair_ys(&layout)),
                    var_list(&pair_zs(&layout))
                ),
                "order: inputs, linking clauses (guard outer, pair inner, positive first), \
                 then per pair the block -y z and both guarded copy runs"
                    .to_string(),
            ];
            let mut meta = Meta::new();
            meta.set("family", "i");
            meta.set("t", xs.len());
            meta.set("m", layout.pair_count());
            let written = write_gen(out, &ii, &comments, &meta)?;
            rep.line(
                &written,
                json!({
                    "event": "gen", "family": "i",
                    "t": xs.len(), "m": layout.pair_count(), "guards": var_ids(&xs),
                    "y": var_ids(&pair_ys(&layout)), "z": var_ids(&pair_zs(&layout)),
                    "vars": ii.vars().len(), "clauses": ii.len(),
                    "out": out.out.display().to_string(),
                    "meta": written.meta.display().to_string(),
                }),
            );
            Ok(true)
        }
    }
}

/// What a gen command wrote, displayable as its human report.
struct WrittenGen {
    out: PathBuf,
    meta: PathBuf,
    clauses: usize,
    vars: usize,
}

impl Display for WrittenGen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "wrote {}: {} clauses over {} variables",
            self.out.display(),
            self.clauses,
            self.vars
        )?;
        write!(f, "wrote {}", self.meta.display())
    }
}

fn write_gen(
    out: &GenOut,
    g: &Formula,
    comments: &[String],
    meta: &Meta,
) -> Result<WrittenGen, CliError> {
    let meta_path = out.meta_path();
    write_file(&out.out, &write_cnf(g, comments))?;
    write_file(&meta_path, &write_meta(meta))?;
    Ok(WrittenGen {
        out: out.out.clone(),
        meta: meta_path,
        clauses: g.len(),
        vars: g.vars().len(),
    })
}

fn cmd_check(rep: &Reporter, args: &CheckArgs) -> Result<bool, CliError> {
    let g = load_cnf(&args.cnf)?;
    let report = match args.system {
        SystemArg::Ger => {
            if args.permissive {
                return Err(CliError::Usage(
                    "--permissive applies to proofs, not certificates".into(),
                ));
            }
            let cert =
                parse_ger(&read_file(&args.proof)?).map_err(|e| at_path(&args.proof, e))?;
            check_ger(&g, &cert)
        }
        sys => {
            let proof =
                parse_proof(&read_file(&args.proof)?).map_err(|e| at_path(&args.proof, e))?;
            let opts = CheckOptions {
                permissive: args.permissive,
                ..CheckOptions::default()
            };
            check_with(system_of(sys), &g, &proof, &opts)
        }
    };
    emit_verdict(rep, &report);
    rep.record(check_record(args.system.name(), &report));
    Ok(report.is_accepted())
}

/// Proper proof system behind a checkable system argument; ger is handled
/// separately and never reaches this.
fn system_of(sys: SystemArg) -> System {
    match sys {
        SystemArg::Res => System::Res,
        SystemArg::Bc => System::Bc,
        SystemArg::Rat => System::Rat,
        SystemArg::Sbc => System::Sbc,
        SystemArg::Ger => unreachable!("certificates use their own checker"),
    }
}

fn cmd_prove(rep: &Reporter, prove: &ProveCmd) -> Result<bool, CliError> {
    match prove {
        ProveCmd::GRat { cnf, er, out, out_cnf } => {
            let g = load_cnf(cnf)?;
            let er_proof = load_accepted_er(&g, er)?;
            let xs = er_proof.ext.vars();
            let gg = gen_g(&g, &xs).map_err(|e| at_path(cnf, e))?;
            let proof =
                simulate_er_in_rat_minus(&g, &er_proof).map_err(|e| at_path(er, e))?;
            let report = check_with(System::Rat, &gg, &proof, &CheckOptions::default());
            write_file(out, &write_proof(&proof))?;
            if let Some(path) = out_cnf {
                write_file(path, &write_cnf(&gg, &[]))?;
            }
            emit_prove(rep, "g-rat", &report, er_proof.size(), out, out_cnf.as_deref());
            Ok(report.is_accepted() && report.size <= er_proof.size())
        }
        ProveCmd::IGer {
            cnf,
            er,
            pairs,
            out,
            out_cnf,
        } => {
            let g = load_cnf(cnf)?;
            let er_proof = load_accepted_er(&g, er)?;
            let xs = er_proof.ext.vars();
            let layout = pair_layout(&g, &xs, *pairs);
            let ii = gen_i(&g, &xs, &layout).map_err(|e| at_path(cnf, e))?;
            let cert = build_ger_proof(&g, &er_proof, &layout).map_err(|e| at_path(er, e))?;
            let report = check_ger(&ii, &cert);
            write_file(out, &write_ger(&cert))?;
            if let Some(path) = out_cnf {
                write_file(path, &write_cnf(&ii, &[]))?;
            }
            emit_prove(rep, "i-ger", &report, er_proof.size(), out, out_cnf.as_deref());
            Ok(report.is_accepted() && report.size <= er_proof.size())
        }
    }
}

/// Parses an extended-resolution file and requires its refutation to be
/// accepted; the rejection location lands in the usage error.
fn load_accepted_er(g: &Formula, path: &Path) -> Result<ErProof, CliError> {
    let er = parse_er(&read_file(path)?).map_err(|e| at_path(path, e))?;
    let report = check_er(g, &er).map_err(|e| at_path(path, e))?;
    match report.verdict {
        Verdict::Accepted => Ok(er),
        Verdict::Rejected { step, reason } => Err(CliError::Usage(format!(
            "{}: refutation rejected at step {step}: {reason}",
            path.display()
        ))),
    }
}

fn emit_prove(
    rep: &Reporter,
    target: &str,
    report: &CheckReport,
    er_size: usize,
    out: &Path,
    out_cnf: Option<&Path>,
) {
    emit_verdict(rep, report);
    let cmp = if report.size <= er_size { "<=" } else { ">" };
    rep.human(format!("size {} {cmp} er size {er_size}", report.size));
    rep.human(format!("wrote {}", out.display()));
    if let Some(path) = out_cnf {
        rep.human(format!("wrote {}", path.display()));
    }
    let mut record = check_record(target, report);
    let fields = record.as_object_mut().expect("records are objects");
    fields.insert("event".into(), "prove".into());
    fields.insert("target".into(), target.into());
    fields.remove("system");
    fields.insert("er_size".into(), er_size.into());
    fields.insert("bound_holds".into(), (report.size <= er_size).into());
    fields.insert("out".into(), out.display().to_string().into());
    if let Some(path) = out_cnf {
        fields.insert("out_cnf".into(), path.display().to_string().into());
    }
    rep.record(record);
}

/// Human verdict lines: verdict, size, then the first failure if any.
fn emit_verdict(rep: &Reporter, report: &CheckReport) {
    match &report.verdict {
        Verdict::Accepted => {
            rep.human("verdict accepted");
            rep.human(format!("size {}", report.size));
        }
        Verdict::Rejected { step, reason } => {
            rep.human("verdict rejected");
            rep.human(format!("size {}", report.size));
            rep.human(format!("step {step}: {reason}"));
        }
    }
}

fn check_record(system: &str, report: &CheckReport) -> Value {
    let mut record = json!({
        "event": "check",
        "system": system,
        "verdict": if report.is_accepted() { "accepted" } else { "rejected" },
        "size": report.size,
        "steps": {
            "resolve": report.stats.resolve,
            "weaken": report.stats.weaken,
            "add_bc": report.stats.add_bc,
            "add_rat": report.stats.add_rat,
            "add_sbc": report.stats.add_sbc,
        },
    });
    if let Verdict::Rejected { step, reason } = &report.verdict {
        let fields = record.as_object_mut().expect("records are objects");
        fields.insert("step".into(), (*step).into());
        fields.insert("reason".into(), reason.to_string().into());
        fields.insert("reason_code".into(), reason_code(reason).into());
    }
    record
}

/// Stable machine-readable tag per rejection variant.
fn reason_code(reason: &RejectReason) -> &'static str {
    match reason {
        RejectReason::StepNotAllowed { .. } => "step-not-allowed",
        RejectReason::UnknownId { .. } => "unknown-id",
        RejectReason::NewVariable { .. } => "new-variable",
        RejectReason::Resolution(_) => "resolution",
        RejectReason::WrongResolvent { .. } => "wrong-resolvent",
        RejectReason::NotWeakening { .. } => "not-weakening",
        RejectReason::NoPremiseFound => "no-premise-found",
        RejectReason::CriterionFailed { .. } => "criterion-failed",
        RejectReason::Witness(_) => "witness",
        RejectReason::EmptyClauseMissing => "empty-clause-missing",
        RejectReason::KeptIdInvalid { .. } => "kept-id-invalid",
        RejectReason::BlockedOrderDuplicate { .. } => "blocked-order-duplicate",
        RejectReason::RemovedClauseNotCovered { .. } => "removed-clause-not-covered",
    }
}

fn cmd_oracle(rep: &Reporter, cfg: &RunConfig, oracle: &OracleCmd) -> Result<bool, CliError> {
    match oracle {
        OracleCmd::Sat { cnf } => {
            let g = load_cnf(cnf)?;
            let limit = cfg.oracle_var_limit.unwrap_or(DEFAULT_VAR_LIMIT);
            let verdict =
                brute_force_sat_with(&g, limit, cfg.threads).map_err(|e| at_path(cnf, e))?;
            match verdict {
                SatVerdict::Unsatisfiable => rep.line(
                    "UNSAT",
                    json!({"event": "oracle", "task": "sat", "verdict": "unsat"}),
                ),
                SatVerdict::Satisfiable(model) => rep.line(
                    format!("SAT {}", lit_list(model.iter_true_lits())),
                    json!({
                        "event": "oracle", "task": "sat", "verdict": "sat",
                        "model": lit_codes(model.iter_true_lits()),
                    }),
                ),
            }
            Ok(true)
        }
        OracleCmd::Dp { cnf, out } => {
            let g = load_cnf(cnf)?;
            let limit = cfg.oracle_var_limit.unwrap_or(DEFAULT_DP_VAR_LIMIT);
            match dp_resolution_oracle_with(&g, limit).map_err(|e| at_path(cnf, e))? {
                DpOutcome::Refuted(proof) => {
                    if let Some(path) = out {
                        write_file(path, &write_proof(&proof))?;
                    }
                    rep.line(
                        format!("UNSAT proof size {}", proof.size()),
                        json!({
                            "event": "oracle", "task": "dp", "verdict": "unsat",
                            "size": proof.size(),
                            "out": out.as_ref().map(|p| p.display().to_string()),
                        }),
                    );
                    if let Some(path) = out {
                        rep.human(format!("wrote {}", path.display()));
                    }
                }
                DpOutcome::Satisfiable(model) => rep.line(
                    format!("SAT {}", lit_list(model.iter_true_lits())),
                    json!({
                        "event": "oracle", "task": "dp", "verdict": "sat",
                        "model": lit_codes(model.iter_true_lits()),
                    }),
                ),
            }
            Ok(true)
        }
        OracleCmd::EnumSbc { cnf, max_size, bits } => {
            let g = load_cnf(cnf)?;
            let limit = cfg.oracle_var_limit.unwrap_or(DEFAULT_ENUM_VAR_LIMIT);
            let max = max_size.unwrap_or_else(|| g.vars().len());
            let found = enumerate_sbcs_with(&g, max, limit).map_err(|e| at_path(cnf, e))?;
            let layout = BphpLayout::new(bits_or_inferred(&g, *bits)?);
            let mut min_width: Option<usize> = None;
            for (clause, witness) in &found {
                let width = layout.pigeon_width(clause).map_err(|e| at_path(cnf, e))?;
                min_width = Some(min_width.map_or(width, |w| w.min(width)));
                rep.line(
                    format!(
                        "{}\t{}\t{width}",
                        lit_list(clause.iter()),
                        lit_list(witness.iter().copied())
                    ),
                    json!({
                        "event": "sbc",
                        "clause": lit_codes(clause.iter()),
                        "witness": lit_codes(witness.iter().copied()),
                        "pigeon_width": width,
                    }),
                );
            }
            let mut summary = json!({
                "event": "sbc-summary",
                "count": found.len(),
                "bits": layout.bits(),
            });
            rep.human(format!("count {}", found.len()));
            if let Some(width) = min_width {
                rep.human(format!("min pigeon-width {width}"));
                summary
                    .as_object_mut()
                    .expect("records are objects")
                    .insert("min_pigeon_width".into(), width.into());
            }
            rep.record(summary);
            Ok(true)
        }
        OracleCmd::Width { cnf, proof, bits } => {
            let g = load_cnf(cnf)?;
            let layout = BphpLayout::new(bits_or_inferred(&g, *bits)?);
            let mut max_width = 0;
            let mut width_row = |kind: &str, index: usize, c: &Clause| {
                let width = layout.pigeon_width(c).map_err(|e| at_path(cnf, e))?;
                max_width = max_width.max(width);
                rep.line(
                    format!("{kind}\t{index}\t{width}"),
                    json!({"event": "width", "kind": kind, "index": index, "width": width}),
                );
                Ok(())
            };
            for (id, c) in g.iter() {
                width_row("input", id.0 as usize, c)?;
            }
            if let Some(path) = proof {
                let steps = parse_proof(&read_file(path)?).map_err(|e| at_path(path, e))?;
                for (i, step) in steps.steps.iter().enumerate() {
                    width_row("step", i + 1, step.result())?;
                }
            }
            rep.line(
                format!("max pigeon-width {max_width}"),
                json!({
                    "event": "width-summary",
                    "max_pigeon_width": max_width,
                    "bits": layout.bits(),
                }),
            );
            Ok(true)
        }
        OracleCmd::Restrict {
            cnf,
            proof,
            matched,
            assign,
            bits,
            out,
            out_cnf,
        } => {
            let g = load_cnf(cnf)?;
            let input = parse_proof(&read_file(proof)?).map_err(|e| at_path(proof, e))?;
            let a = restriction(&g, *matched, assign.as_deref(), *bits, cfg.seed)?;
            let restricted = match restrict_proof(&g, &input, &a) {
                Ok(p) => p,
                Err(e @ TransformError::NotAccepted { .. }) => {
                    return Err(at_path(proof, e));
                }
                Err(e @ TransformError::RestrictionSatisfiesFormula) => {
                    return Err(CliError::Usage(e.to_string()));
                }
            };
            let gr = g.restrict(&a);
            let report = check_with(System::Res, &gr, &restricted, &CheckOptions::default());
            write_file(out, &write_proof(&restricted))?;
            if let Some(path) = out_cnf {
                write_file(path, &write_cnf(&gr, &[]))?;
            }
            rep.human(format!("assignment {}", lit_list(a.iter_true_lits())));
            emit_verdict(rep, &report);
            let cmp = if report.size <= input.size() { "<=" } else { ">" };
            rep.human(format!(
                "size {} {cmp} original size {}",
                report.size,
                input.size()
            ));
            rep.human(format!("wrote {}", out.display()));
            if let Some(path) = out_cnf {
                rep.human(format!("wrote {}", path.display()));
            }
            let mut record = check_record("res", &report);
            let fields = record.as_object_mut().expect("records are objects");
            fields.insert("event".into(), "restrict".into());
            fields.remove("system");
            fields.insert(
                "assignment".into(),
                lit_codes(a.iter_true_lits()).into(),
            );
            fields.insert("original_size".into(), input.size().into());
            fields.insert("out".into(), out.display().to_string().into());
            if let Some(path) = out_cnf {
                fields.insert("out_cnf".into(), path.display().to_string().into());
            }
            rep.record(record);
            Ok(report.is_accepted() && report.size <= input.size())
        }
    }
}

/// The restriction to apply: a seeded random partial matching on the
/// pigeon layout, or an explicit literal list.
fn restriction(
    g: &Formula,
    matched: Option<u32>,
    assign: Option<&str>,
    bits: Option<u32>,
    seed: u64,
) -> Result<Assignment, CliError> {
    match (matched, assign) {
        (Some(m), None) => {
            let layout = BphpLayout::new(bits_or_inferred(g, bits)?);
            layout
                .random_partial_matching(m, seed)
                .map_err(|e| CliError::Usage(e.to_string()))
        }
        (None, Some(text)) => {
            let mut lits = Vec::new();
            for token in text.split_whitespace() {
                let code: i32 = token
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad literal {token:?} in --assign")))?;
                lits.push(Lit::from_dimacs(code).ok_or_else(|| {
                    CliError::Usage(format!("bad literal {token:?} in --assign"))
                })?);
            }
            Assignment::from_lits(lits).map_err(|e| CliError::Usage(e.to_string()))
        }
        _ => Err(CliError::Usage(
            "exactly one of --match and --assign is required".into(),
        )),
    }
}

/// Smallest k whose pigeon layout covers every variable of the formula.
fn bits_or_inferred(g: &Formula, bits: Option<u32>) -> Result<u32, CliError> {
    if let Some(k) = bits {
        if k == 0 {
            return Err(CliError::Usage("--bits must be positive".into()));
        }
        return Ok(k);
    }
    let max = g.max_var().map(|v| v.id()).unwrap_or(0);
    (1..=16)
        .find(|&k| (2u32.pow(k) + 1) * k >= max)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "no pigeon layout covers variable {max}; pass --bits"
            ))
        })
}

fn guard_vars(g: &Formula, source: &GuardSource) -> Result<Vec<Var>, CliError> {
    match (&source.er, source.count) {
        (Some(path), None) => {
            let er = parse_er(&read_file(path)?).map_err(|e| at_path(path, e))?;
            wer_core::generators::validate_extension(g, &er.ext)
                .map_err(|e| at_path(path, e))?;
            Ok(er.ext.vars())
        }
        (None, Some(count)) => {
            let max = g.max_var().map(|v| v.id()).unwrap_or(0);
            Ok((1..=count).map(|i| Var::new(max + i)).collect())
        }
        _ => unreachable!("the flag group admits exactly one source"),
    }
}

/// Fresh (y, z) pairs placed after both the formula and the guards.
fn pair_layout(g: &Formula, xs: &[Var], pairs: u32) -> GuardedPairLayout {
    let max = xs
        .iter()
        .map(|v| v.id())
        .chain(g.max_var().map(|v| v.id()))
        .max()
        .unwrap_or(0);
    GuardedPairLayout::fresh_after(max, pairs)
}

fn pair_ys(layout: &GuardedPairLayout) -> Vec<Var> {
    (1..=layout.pair_count()).map(|j| layout.y(j)).collect()
}

fn pair_zs(layout: &GuardedPairLayout) -> Vec<Var> {
    (1..=layout.pair_count()).map(|j| layout.z(j)).collect()
}

fn var_list(vars: &[Var]) -> String {
    let ids: Vec<String> = vars.iter().map(|v| v.id().to_string()).collect();
    ids.join(" ")
}

fn var_ids(vars: &[Var]) -> Vec<u32> {
    vars.iter().map(|v| v.id()).collect()
}

fn lit_list(lits: impl Iterator<Item = Lit>) -> String {
    let codes: Vec<String> = lits.map(|l| l.to_dimacs().to_string()).collect();
    codes.join(" ")
}

fn lit_codes(lits: impl Iterator<Item = Lit>) -> Vec<i32> {
    lits.map(|l| l.to_dimacs()).collect()
}

fn load_cnf(path: &Path) -> Result<Formula, CliError> {
    Ok(parse_cnf(&read_file(path)?)
        .map_err(|e| at_path(path, e))?
        .formula)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// `<name><suffix>` next to the original, keeping any existing extension.
fn sibling_with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_os_string();
    name.push(suffix);
    PathBuf::from(name)
}
