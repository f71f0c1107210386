//! Command-line surface: argument parsing and subcommand dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use isosieve_core::criteria::{phi_uniform_test, reduced_forms, PhiInput, TraceSource};
use serde::Serialize;

use crate::cache::TraceCache;
use crate::config::{parse_config, EllChoice, RunConfig};
use crate::error::CliError;
use crate::pipeline::{r_ideals, report_exit_code, run_pipeline, sieve_all, trace_blocks};
use crate::report::{render_report, render_rideals, render_sieve, render_traces, RIdealEntry, SieveEntry, SkippedEntry, Style};

#[derive(Debug, Parser)]
#[command(name = "isosieve", version, about = "Candidate exceptional primes of elliptic curves over number fields")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Sieve primes, comma separated; replaces the configured ones.
    #[arg(long, global = true, value_delimiter = ',', conflicts_with = "ell_bound")]
    pub ells: Option<Vec<u64>>,
    /// Use every prime up to N as a sieve prime.
    #[arg(long, global = true, value_name = "N")]
    pub ell_bound: Option<u64>,
    /// Search bound for elimination certificates.
    #[arg(long, global = true, value_name = "N")]
    pub eliminate_bound: Option<u64>,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized factorization.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON-lines trace cache, created if missing.
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Recompute every cached trace that is read.
    #[arg(long, global = true)]
    pub verify_cache: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Traces of Frobenius at the ideals above each sieve prime.
    Traces,
    /// P_ell^* and the sieve integer B_ell at each sieve prime.
    Sieve,
    /// R_q for each configured gamma.
    Rideal,
    /// The full pipeline: candidates, elimination and witnesses.
    Candidates,
    /// Reduced binary quadratic forms of a negative discriminant.
    Forms {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
    },
    /// Irreducibility predicates from the order of Phi.
    Phi {
        #[arg(long)]
        ell: Option<u64>,
        /// Residue degree of the prime.
        #[arg(long)]
        f: Option<u32>,
        /// |Phi|.
        #[arg(long)]
        order: Option<u32>,
    },
}

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub exit_code: i32,
    /// Diagnostics for stderr.
    pub notes: Vec<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, exit_code: 0, notes: Vec::new() }
    }
}

fn load_config(global: &GlobalArgs) -> Result<RunConfig, CliError> {
    let path = global
        .config
        .as_deref()
        .ok_or_else(|| CliError::Usage("this subcommand needs --config PATH".into()))?;
    let mut config = parse_config(path)?;
    if let Some(ells) = &global.ells {
        config.sieve.ells = EllChoice::List(ells.clone());
    }
    if let Some(b) = global.ell_bound {
        config.sieve.ells = EllChoice::Bound(b);
    }
    if let Some(b) = global.eliminate_bound {
        config.sieve.eliminate_bound = Some(b);
    }
    if let Some(seed) = global.seed {
        config.sieve.factor.seed = seed;
    }
    if let EllChoice::List(ells) = &config.sieve.ells {
        if let Some(bad) = ells.iter().find(|&&l| !isosieve_core::arith::is_prime_u64(l)) {
            return Err(CliError::validation("--ells", format!("{bad} is not prime")));
        }
    }
    Ok(config)
}

fn open_cache(global: &GlobalArgs) -> Result<TraceCache, CliError> {
    match &global.cache {
        Some(path) => TraceCache::open(path, global.verify_cache),
        None => Ok(TraceCache::in_memory(global.verify_cache)),
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct SieveOutput {
    sieve: Vec<SieveEntry>,
    skipped: Vec<SkippedEntry>,
}

#[derive(Serialize)]
struct FormsOutput {
    disc: i64,
    forms: Vec<[i64; 3]>,
}

#[derive(Serialize)]
struct PhiOutput {
    ell: u64,
    f: u32,
    order: u32,
    conclusion: String,
}

/// Runs one parsed command line.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    execute_with_style(cli, Style::detect())
}

pub fn execute_with_style(cli: &Cli, style: Style) -> Result<Output, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Forms { disc } => {
            let forms = reduced_forms(*disc)?;
            if g.json {
                let forms = forms.iter().map(|&(a, b, c)| [a, b, c]).collect();
                return Ok(Output::ok(json(&FormsOutput { disc: *disc, forms })));
            }
            let text = forms.iter().map(|(a, b, c)| format!("({a}, {b}, {c})\n")).collect();
            Ok(Output::ok(text))
        }
        Command::Phi { ell, f, order } => run_phi(g, *ell, *f, *order, style),
        Command::Traces => {
            let config = load_config(g)?;
            let cache = open_cache(g)?;
            let curve = config.curve.integralize()?;
            let blocks = trace_blocks(&curve, &config.sieve.ells.primes(), &cache)?;
            let text = if g.json { json(&blocks) } else { render_traces(&blocks, style) };
            Ok(with_cache_notes(Output::ok(text), &cache))
        }
        Command::Sieve => {
            let config = load_config(g)?;
            let cache = open_cache(g)?;
            let curve = config.curve.integralize()?;
            let (results, skipped) = sieve_all(&curve, &config.sieve.ells.primes(), &cache)?;
            let out = SieveOutput {
                sieve: results.iter().map(|r| SieveEntry::new(r, &config.sieve.factor)).collect(),
                skipped: skipped.iter().map(|(ell, r)| SkippedEntry::new(*ell, r)).collect(),
            };
            let text = if g.json { json(&out) } else { render_sieve(&out.sieve, &out.skipped, style) };
            Ok(with_cache_notes(Output::ok(text), &cache))
        }
        Command::Rideal => {
            let config = load_config(g)?;
            if config.gammas.is_empty() {
                return Err(CliError::validation("field.gamma", "no gamma entries configured"));
            }
            let cache = open_cache(g)?;
            let curve = config.curve.integralize()?;
            let entries: Vec<RIdealEntry> = r_ideals(&config, &curve, &cache)?
                .iter()
                .map(|r| RIdealEntry::new(r, &config.sieve.factor))
                .collect();
            let text = if g.json { json(&entries) } else { render_rideals(&entries, style) };
            Ok(with_cache_notes(Output::ok(text), &cache))
        }
        Command::Candidates => {
            let config = load_config(g)?;
            let cache = open_cache(g)?;
            let report = run_pipeline(&config, &cache as &dyn TraceSource)?;
            let text = if g.json { report.to_json() } else { render_report(&report, style) };
            let mut out = with_cache_notes(Output::ok(text), &cache);
            out.exit_code = report_exit_code(&report);
            Ok(out)
        }
    }
}

fn run_phi(g: &GlobalArgs, ell: Option<u64>, f: Option<u32>, order: Option<u32>, style: Style) -> Result<Output, CliError> {
    let inputs: Vec<PhiInput> = match (ell, f, order) {
        (Some(ell), Some(f), Some(order)) => vec![PhiInput { ell, residue_degree: f, phi_order: order }],
        (None, None, None) => load_config(g)?.phi,
        _ => return Err(CliError::Usage("phi needs all of --ell, --f and --order, or a config with [[phi]]".into())),
    };
    let mut rows = Vec::new();
    for input in inputs {
        rows.push(PhiOutput {
            ell: input.ell,
            f: input.residue_degree,
            order: input.phi_order,
            conclusion: phi_uniform_test(input)?.to_string(),
        });
    }
    if g.json {
        return Ok(Output::ok(json(&rows)));
    }
    let mut text = style.heading(&format!("{:>6} {:>3} {:>6}  conclusion", "ell", "f", "|Phi|"));
    text.push('\n');
    for r in rows {
        text.push_str(&format!("{:>6} {:>3} {:>6}  {}\n", r.ell, r.f, r.order, r.conclusion));
    }
    Ok(Output::ok(text))
}

fn with_cache_notes(mut out: Output, cache: &TraceCache) -> Output {
    if let Some(path) = cache.path() {
        let s = cache.stats();
        out.notes.push(format!(
            "trace cache {}: {} hits ({} verified), {} computed",
            display(path),
            s.hits,
            s.verified,
            s.misses
        ));
    }
    out
}

fn display(p: &Path) -> String {
    p.display().to_string()
}
