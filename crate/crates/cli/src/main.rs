//! `sudler`: command-line front end for evaluating the trigonometric
//! products, checking their shift factorization, tabulating window
//! functions, and running the certification sweep.
//!
//! Output conventions, per subcommand:
//!
//! * `eval`, `perturbed`, `hk`: a single line holding the value.
//! * `decompose-check`: `direct=<v> factored=<v> rel_err=<v>`.
//! * `liminf`: `min=<v> argmin=<N>`.
//! * `fc-table`, `wtable`: CSV with a header row.
//! * `verify`: the JSON report on stdout, or (with `--out`) the report in
//!   a file and a one-line summary on stdout.
//!
//! Exit codes: 0 success (and a passing report), 1 failing report,
//! 2 usage or runtime error.

mod cache;
mod cf_arg;

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use ffamily::{w_for_word, FFunction, FParams};
use pattern::{Pattern, PATTERN_COUNT};
use verify::{
    domain_indices, point, run_with, smoke_sample, FTable, MarginEntry, NoStore, Targets,
    VerificationReport, WStore,
};

use crate::cache::FileStore;
use crate::cf_arg::parse_cf;

/// Names the default cache directory when `--cache` is not given.
const CACHE_ENV: &str = "SUDLER_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "sudler",
    version,
    about = "Products of 2|sin(pi r a)| along continued-fraction denominators"
)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Directory for the persistent sum-bound cache (default:
    /// $SUDLER_CACHE_DIR if set, otherwise uncached).
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the product with N factors.
    Eval {
        /// Continued fraction "[a0;d1,...,(p1,...,pk)]" of the irrational.
        #[arg(long)]
        alpha: String,
        /// Number of factors.
        #[arg(long = "N")]
        n: u64,
    },
    /// Evaluate the perturbed product of length q_k.
    Perturbed {
        #[arg(long)]
        alpha: String,
        /// Level: the product runs over r = 1..q_k.
        #[arg(long)]
        k: usize,
        /// Perturbation epsilon, in units of the level spacing.
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
    },
    /// Evaluate the closed-form comparison function at level k.
    Hk {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
    },
    /// Evaluate the product at N directly and via its shift factorization.
    DecomposeCheck {
        #[arg(long)]
        alpha: String,
        #[arg(long = "N")]
        n: u64,
    },
    /// Tabulate one window's lower-bound function on the grid (CSV).
    FcTable {
        /// Nine-digit window over {1,2,3}, e.g. 313131313.
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 20)]
        n0: u32,
        #[arg(long = "T", default_value_t = 10_000)]
        t: u32,
        #[arg(long, default_value_t = 40)]
        m: u32,
        /// Write CSV here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Tabulate refinement sum bounds per window (CSV).
    Wtable {
        #[arg(long, default_value_t = 20)]
        n0: u32,
        #[arg(long = "T", default_value_t = 10_000)]
        t: u32,
        #[arg(long, default_value_t = 40)]
        m: u32,
        /// Comma-separated nine-digit windows (default: all 19683).
        #[arg(long, value_name = "LIST")]
        patterns: Option<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run the certification sweep and emit a JSON report.
    Verify {
        #[arg(long, default_value_t = 20)]
        n0: u32,
        #[arg(long = "T", default_value_t = 10_000)]
        t: u32,
        #[arg(long, default_value_t = 40)]
        m: u32,
        /// Comma-separated nine-digit windows to restrict to (default: all).
        #[arg(long, value_name = "LIST")]
        patterns: Option<String>,
        /// Write the JSON report here; stdout then carries a summary line.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Quick run: reduced parameters, a 200-window sample, and only the
        /// weak unperturbed floor. Overrides --n0/--T/--m.
        #[arg(long)]
        smoke: bool,
    },
    /// Scan the product over N <= limit and report its minimum.
    Liminf {
        #[arg(long)]
        alpha: String,
        #[arg(long = "N-max")]
        n_max: u64,
    },
}

/// Cache-backed or inert store, chosen once per invocation.
enum Store {
    File(FileStore),
    None(NoStore),
}

impl Store {
    fn open(dir: Option<&Path>) -> Result<Self> {
        Ok(match dir {
            Some(d) => Store::File(FileStore::open(d)?),
            None => Store::None(NoStore),
        })
    }

    fn as_dyn(&self) -> &dyn WStore {
        match self {
            Store::File(f) => f,
            Store::None(n) => n,
        }
    }

    fn flush(&self) -> Result<()> {
        if let Store::File(f) = self {
            f.flush()?;
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Must run before any rayon use; ignore the error if a pool exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cache_dir = cli.cache.or_else(|| env::var_os(CACHE_ENV).map(PathBuf::from));
    match cli.cmd {
        Cmd::Eval { alpha, n } => {
            let cf = parse_cf(&alpha)?;
            println!("{}", sudler::sudler_product(&cf, n));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Perturbed { alpha, k, eps } => {
            let cf = parse_cf(&alpha)?;
            println!("{}", sudler::perturbed_product(&cf, k, eps)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hk { alpha, k, eps } => {
            let cf = parse_cf(&alpha)?;
            println!("{}", sudler::hk(&cf, k, eps)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::DecomposeCheck { alpha, n } => {
            let cf = parse_cf(&alpha)?;
            let (direct, factored) = sudler::decompose_check(&cf, n)?;
            let rel_err = (direct - factored).abs() / direct.abs();
            println!("direct={direct} factored={factored} rel_err={rel_err}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::FcTable { pattern, n0, t, m, out } => {
            let window: Pattern = pattern.trim().parse()?;
            let params = FParams::new(n0, t, m)?;
            let store = Store::open(cache_dir.as_deref())?;
            let (w, _) = resolve_w(store.as_dyn(), &window, &params)?;
            store.flush()?;
            let ff = FFunction::new(window, params, w)?;
            let (first, last) = domain_indices(&ff);
            let mut csv = String::from("epsilon,value\n");
            for i in first..=last {
                let x = point(i);
                csv.push_str(&format!("{x:.3},{}\n", ff.eval_total(x)));
            }
            write_out(out.as_deref(), &csv)
        }
        Cmd::Wtable { n0, t, m, patterns, out } => {
            let params = FParams::new(n0, t, m)?;
            let store = Store::open(cache_dir.as_deref())?;
            let mut csv = String::from("pattern,n0,T,m,W,restarts\n");
            match patterns {
                Some(list) => {
                    for window in parse_patterns(&list)? {
                        let (w, restarts) = resolve_w(store.as_dyn(), &window, &params)?;
                        push_w_row(&mut csv, &window, &params, w, restarts);
                    }
                }
                None => {
                    let table = FTable::build(params, store.as_dyn())?;
                    for i in 0..PATTERN_COUNT {
                        let window = Pattern::from_index(i);
                        let w = table.ff_at(i).w();
                        push_w_row(&mut csv, &window, &params, w, table.restarts_for(&window));
                    }
                }
            }
            store.flush()?;
            write_out(out.as_deref(), &csv)
        }
        Cmd::Verify { n0, t, m, patterns, out, smoke } => {
            let params = if smoke { FParams::smoke() } else { FParams::new(n0, t, m)? };
            let targets = if smoke { Targets::smoke() } else { Targets::certified() };
            let subset: Option<Vec<usize>> = match &patterns {
                Some(list) => {
                    Some(parse_patterns(list)?.iter().map(|p| p.index()).collect())
                }
                None if smoke => Some(smoke_sample()),
                None => None,
            };
            let store = Store::open(cache_dir.as_deref())?;
            let report = run_with(params, store.as_dyn(), &targets, subset.as_deref())?;
            store.flush()?;
            let json = report.to_json();
            match out {
                Some(path) => {
                    fs::write(&path, format!("{json}\n"))
                        .with_context(|| format!("writing {}", path.display()))?;
                    println!("{}", summary_line(&report));
                }
                None => println!("{json}"),
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Liminf { alpha, n_max } => {
            let cf = parse_cf(&alpha)?;
            let low = sudler::empirical_liminf(&cf, n_max);
            println!("min={} argmin={}", low.min_value, low.argmin);
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Fetches the sum bound for one window, computing and persisting on miss.
fn resolve_w(store: &dyn WStore, window: &Pattern, params: &FParams) -> Result<(f64, u32)> {
    if let Some(hit) = store.get(window, params) {
        return Ok(hit);
    }
    let res = w_for_word(&window.mirror_word(), params)?;
    store.put(window, params, res.w, res.restarts);
    Ok((res.w, res.restarts))
}

fn parse_patterns(list: &str) -> Result<Vec<Pattern>> {
    list.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<Pattern>().with_context(|| format!("window {s:?}"))
        })
        .collect()
}

fn push_w_row(csv: &mut String, window: &Pattern, params: &FParams, w: f64, restarts: u32) {
    csv.push_str(&format!(
        "{window},{},{},{},{w},{restarts}\n",
        params.n0(),
        params.t(),
        params.m()
    ));
}

fn summary_line(report: &VerificationReport) -> String {
    fn entry(e: &Option<MarginEntry>) -> String {
        match e {
            Some(e) => e.value.to_string(),
            None => "-".to_string(),
        }
    }
    let status = if report.passed() { "PASS" } else { "FAIL" };
    let wm = &report.worst_margins;
    format!(
        "{status} zero={} negpert={} pos_t0={} pos_t1={} pos_t2={} unimodality_failures={} plateau_flags={}",
        entry(&wm.zero),
        entry(&wm.negpert),
        entry(&wm.pos_t0),
        entry(&wm.pos_t1),
        entry(&wm.pos_t2),
        report.unimodality_failures.len(),
        report.plateau_flags.len(),
    )
}

fn write_out(out: Option<&Path>, text: &str) -> Result<ExitCode> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
