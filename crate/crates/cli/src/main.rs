//! `fmzv`: evaluate word-algebra expressions, tabulate finite multiple zeta
//! values, run identity checks and manage the residue cache.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or configuration error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use fmzv_core::config::{parse_prime_range, CACHE_ENV};
use fmzv_core::expr::{eval_str, Value};
use fmzv_core::numeric::{Evaluator, ResidueCache};
use fmzv_core::report::VerifyReport;
use fmzv_core::verify::{default_basket, run_checks, Check, Identity};
use fmzv_core::{Composition, Config, NCPoly, OutputFormat, SeriesCaps};

#[derive(Parser, Debug)]
#[command(name = "fmzv", version, about = "Finite multiple zeta values and Hoffman-algebra identities")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Prime window LO..HI.
    #[arg(long, global = true, default_value = "11..199")]
    primes: String,
    /// Adic depth N (residues mod p^N).
    #[arg(long, global = true, default_value_t = 2)]
    depth: u32,
    #[arg(long = "max-u", global = true, default_value_t = 4)]
    max_u: usize,
    #[arg(long = "max-v", global = true, default_value_t = 4)]
    max_v: usize,
    /// Smallest prime at which identities are asserted (default: per identity).
    #[arg(long, global = true)]
    floor: Option<u64>,
    /// Worker threads; 0 = all cores, 1 = sequential.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Residue cache file.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    /// text, csv or records.
    #[arg(long, global = true, default_value = "text")]
    format: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression, e.g. `hp(z1, z1)` or `beta(1, 0, Delta(Rx(y)))`.
    Eval { expr: String },
    /// Residues of one composition, e.g. `1,2`, at every prime of the window.
    Fmzv { k: String },
    /// Residue table of all compositions within the bounds.
    Table {
        #[arg(long = "max-weight", default_value_t = 4)]
        max_weight: u32,
        #[arg(long = "max-depth", default_value_t = 4)]
        max_depth: usize,
    },
    /// Run an identity check (`basket` runs the default batch).
    Verify(VerifyArgs),
    /// Cache maintenance: stats, clear or audit.
    Cache { action: String },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    identity: String,
    #[arg(long)]
    w: Option<String>,
    #[arg(long)]
    w1: Option<String>,
    #[arg(long)]
    w2: Option<String>,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Composition for jarossay-seki, e.g. `1,2`.
    #[arg(long)]
    k: Option<String>,
}

enum Failure {
    Verification,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn config(g: &GlobalOpts) -> Result<Config, Failure> {
    let (prime_lo, prime_hi) = parse_prime_range(&g.primes)?;
    let cfg = Config {
        prime_lo,
        prime_hi,
        depth: g.depth,
        caps: SeriesCaps::new(g.max_u, g.max_v),
        floor: g.floor,
        jobs: g.jobs,
        cache_path: g.cache.clone(),
        format: g.format.parse()?,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn evaluator(cfg: &Config) -> Result<Evaluator, Failure> {
    let ev = Evaluator::new().with_jobs(cfg.jobs);
    Ok(match &cfg.cache_path {
        Some(path) => ev.with_cache(Arc::new(ResidueCache::open(path)?)),
        None => ev,
    })
}

fn parse_composition(s: &str) -> Result<Composition, Failure> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Composition::empty());
    }
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad composition `{s}`: {e}")))?;
    Ok(Composition::new(parts)?)
}

fn poly_arg(name: &str, src: Option<&String>, cfg: &Config) -> Result<NCPoly, Failure> {
    let src = src.ok_or_else(|| Failure::Usage(format!("--{name} is required")))?;
    match eval_str(src, cfg)? {
        Value::Poly(p) => Ok(p),
        Value::Series(_) => Err(Failure::Usage(format!("--{name} must be a polynomial"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = config(&cli.global)?;
    match &cli.command {
        Command::Eval { expr } => {
            println!("{}", eval_str(expr, &cfg)?);
            Ok(())
        }
        Command::Fmzv { k } => {
            let k = parse_composition(k)?;
            let window = cfg.window()?;
            let value = evaluator(&cfg)?.zeta_window(&k, &window, cfg.depth)?;
            let rows: Vec<(u64, u128)> = value
                .iter()
                .map(|(p, r)| (p, r.expect("harmonic sums are always defined")))
                .collect();
            print_residues(&cfg, &[(k, rows)]);
            Ok(())
        }
        Command::Table { max_weight, max_depth } => {
            let comps = Composition::enumerate(*max_weight, *max_depth);
            let window = cfg.window()?;
            let values = evaluator(&cfg)?.zeta_many(&comps, &window, cfg.depth)?;
            let rows: Vec<(Composition, Vec<(u64, u128)>)> = comps
                .into_iter()
                .zip(values)
                .map(|(k, v)| {
                    let row = v.iter().map(|(p, r)| (p, r.expect("always defined"))).collect();
                    (k, row)
                })
                .collect();
            print_residues(&cfg, &rows);
            Ok(())
        }
        Command::Verify(args) => verify(&cfg, args),
        Command::Cache { action } => cache(&cfg, action),
    }
}

fn print_residues(cfg: &Config, rows: &[(Composition, Vec<(u64, u128)>)]) {
    match cfg.format {
        OutputFormat::Text => {
            for (k, row) in rows {
                println!("k={k} N={}", cfg.depth);
                for (p, r) in row {
                    println!("  p={p}: {r}");
                }
            }
        }
        OutputFormat::Csv => {
            println!("k,p,N,residue");
            for (k, row) in rows {
                let parts: Vec<String> = k.parts().iter().map(u32::to_string).collect();
                for (p, r) in row {
                    println!("\"{}\",{p},{},{r}", parts.join(","), cfg.depth);
                }
            }
        }
        OutputFormat::Records => {
            for (k, row) in rows {
                let parts: Vec<String> = k.parts().iter().map(u32::to_string).collect();
                for (p, r) in row {
                    println!(
                        "{{\"k\":[{}],\"p\":{p},\"N\":{},\"residue\":\"{r}\"}}",
                        parts.join(","),
                        cfg.depth
                    );
                }
            }
        }
    }
}

fn build_check(cfg: &Config, identity: Identity, args: &VerifyArgs) -> Result<Check, Failure> {
    let w = || poly_arg("w", args.w.as_ref(), cfg);
    Ok(match identity {
        Identity::Derivation => Check::Derivation { l: args.l, w: w()? },
        Identity::Remark => Check::Remark { m: args.m, w: w()? },
        Identity::Main => Check::Main { m: args.m, w: w()?, depth: cfg.depth },
        Identity::Hoffman => Check::Hoffman { w: w()?, depth: cfg.depth },
        Identity::Stuffle => Check::Stuffle {
            w1: poly_arg("w1", args.w1.as_ref(), cfg)?,
            w2: poly_arg("w2", args.w2.as_ref(), cfg)?,
            depth: cfg.depth,
        },
        Identity::JarossaySeki => Check::JarossaySeki {
            w1: poly_arg("w1", args.w1.as_ref(), cfg)?,
            k: parse_composition(
                args.k.as_deref().ok_or_else(|| Failure::Usage("--k is required".into()))?,
            )?,
            depth: cfg.depth,
        },
        Identity::Ikz => {
            let p = w()?;
            let word = match p.terms().collect::<Vec<_>>().as_slice() {
                [(word, c)] if num_traits::One::is_one(*c) => (*word).clone(),
                _ => return Err(Failure::Usage(format!("ikz needs a single word, got {p}"))),
            };
            Check::Ikz { w: word, max_u: cfg.caps.max_u }
        }
        Identity::SeriesChain => Check::SeriesChain { caps: cfg.caps },
    })
}

fn verify(cfg: &Config, args: &VerifyArgs) -> Result<(), Failure> {
    let checks = if args.identity == "basket" {
        default_basket()
    } else {
        let identity: Identity = args
            .identity
            .parse()
            .map_err(|e: fmzv_core::Error| Failure::Usage(format!("{e}, basket")))?;
        vec![build_check(cfg, identity, args)?]
    };
    let window = cfg.window()?;
    let ev = evaluator(cfg)?;
    let reports = run_checks(&ev, &checks, &window, cfg.floor)?;
    emit_reports(cfg, &reports);
    if reports.iter().all(VerifyReport::passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn emit_reports(cfg: &Config, reports: &[VerifyReport]) {
    match cfg.format {
        OutputFormat::Text => {
            for r in reports {
                print!("{}", r.render_text());
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if reports.len() > 1 {
                println!("{} checks, {} failed", reports.len(), failed);
            }
        }
        OutputFormat::Csv => {
            for (i, r) in reports.iter().enumerate() {
                let csv = r.render_csv();
                let body = if i == 0 { &csv[..] } else { csv.split_once('\n').map_or("", |x| x.1) };
                print!("{body}");
            }
        }
        OutputFormat::Records => {
            for r in reports {
                print!("{}", r.render_records());
            }
        }
    }
}

fn cache(cfg: &Config, action: &str) -> Result<(), Failure> {
    let path = cfg
        .cache_path
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("no cache configured (use --cache or {CACHE_ENV})")))?;
    let cache = ResidueCache::open(path)?;
    match action {
        "stats" => {
            let s = cache.stats();
            println!("path: {}", path.display());
            println!("entries: {}", s.entries);
            println!("skipped on load: {}", s.skipped_on_load);
        }
        "clear" => {
            let before = cache.len();
            cache.clear()?;
            println!("cleared {before} entries from {}", path.display());
        }
        "audit" => {
            let bad = cache.audit()?;
            println!("{} entries checked, {} wrong", cache.len() + bad.len(), bad.len());
            for key in &bad {
                println!("  k={} p={} N={}", key.composition, key.prime, key.depth);
            }
            if !bad.is_empty() {
                return Err(Failure::Verification);
            }
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown cache action `{other}` (expected stats, clear or audit)"
            )))
        }
    }
    Ok(())
}

