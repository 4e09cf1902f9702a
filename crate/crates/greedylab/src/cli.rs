//! Command-line interface.
//!
//! Four verbs: `list` (catalog contents), `estimate` (threshold constants,
//! cached on disk), `verify` (check suites), and `curves` (CSV tables).
//! Exit codes: 0 on success — including hypothesis failures and
//! out-of-scope checks — 1 when a `verify` run records a genuine
//! inequality failure, 2 on usage errors, 3 on I/O or catalog errors.

use crate::catalog::{find, load_catalog, CatalogEntry};
use crate::curves::{emit_curves, CurveSpec};
use crate::error::{Error, Result};
use crate::estimator::{estimate, Quantity, SearchOpts};
use crate::grid::{GridSpec, Level};
use crate::report::sig12;
use crate::store;
use crate::theorems::TheoremSuite;
use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "greedylab",
    version,
    about = "Threshold-constant estimation for bases of finite-dimensional quasi-normed spaces"
)]
pub struct Cli {
    /// Extra catalog file (JSON) merged over the built-in entries.
    #[arg(long, global = true, value_name = "FILE")]
    pub catalog: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the available bases.
    List,
    /// Estimate threshold constants; results are cached under
    /// $GREEDYLAB_CACHE_DIR (default ./.greedylab-cache).
    Estimate {
        /// Catalog id of the basis.
        #[arg(long)]
        basis: String,
        /// One of: phi, theta, lambda, rho, gamma, Lambda, succ, qglc-v.
        #[arg(long)]
        quantity: String,
        /// Comma-separated levels such as 1/2,3/4 (leveled quantities only).
        #[arg(long)]
        levels: Option<String>,
        /// Grid resolution m: coefficients range over {k/m : -m <= k <= m}.
        #[arg(long)]
        grid: i64,
        /// Enumeration budget before sampling kicks in.
        #[arg(long)]
        budget: Option<u64>,
        /// Random seed for sampled mode.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run a check suite against one basis.
    Verify {
        /// Catalog id of the basis.
        #[arg(long)]
        basis: String,
        /// Check suite to run; `all` runs everything, and an unknown
        /// token lists the valid ones.
        #[arg(long)]
        suite: String,
        /// Grid resolution m: coefficients range over {k/m : -m <= k <= m}.
        #[arg(long)]
        grid: i64,
        /// Enumeration budget before sampling kicks in.
        #[arg(long)]
        budget: Option<u64>,
        /// Random seed for sampled mode.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Emit CSV curves across bases and levels.
    Curves {
        /// Comma-separated catalog ids, emitted in order.
        #[arg(long)]
        bases: String,
        /// Comma-separated quantity tokens.
        #[arg(long)]
        quantities: String,
        /// Comma-separated levels for the leveled quantities.
        #[arg(long)]
        levels: Option<String>,
        /// Grid resolution m: coefficients range over {k/m : -m <= k <= m}.
        #[arg(long)]
        grid: i64,
        /// Append the Γ-envelope column to φ rows.
        #[arg(long)]
        envelope: bool,
        /// Write to a file instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Enumeration budget before sampling kicks in.
        #[arg(long)]
        budget: Option<u64>,
        /// Random seed for sampled mode.
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Maps an error to the process exit code.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Io(_)
        | Error::Parse { .. }
        | Error::Validation { .. }
        | Error::DuplicateId(_) => 3,
        Error::OffGridLevel { .. }
        | Error::UnknownQuantity(_)
        | Error::UnknownBasis(_)
        | Error::InvalidParameter(_)
        | Error::BadRational(_)
        | Error::LevelOutOfRange(_)
        | Error::ZeroBudget => 2,
        _ => 3,
    }
}

fn search_opts(budget: Option<u64>, seed: Option<u64>) -> SearchOpts {
    let mut opts = SearchOpts::default();
    if let Some(b) = budget {
        opts.budget = b;
    }
    if let Some(s) = seed {
        opts.seed = s;
    }
    opts
}

fn parse_levels(spec: &Option<String>) -> Result<Vec<Level>> {
    match spec {
        None => Ok(Vec::new()),
        Some(s) => {
            let mut out = Vec::new();
            for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                out.push(Level::parse(token)?);
            }
            if out.is_empty() {
                return Err(Error::InvalidParameter("--levels is empty".into()));
            }
            Ok(out)
        }
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<String>> {
    let items: Vec<String> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect();
    if items.is_empty() {
        return Err(Error::InvalidParameter(format!("{what} list is empty")));
    }
    Ok(items)
}

/// Executes a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let entries = load_catalog(cli.catalog.as_deref())?;
    match cli.command {
        Command::List => {
            for e in &entries {
                println!(
                    "{:<14} dim={} p={} norm={} constructor={} {}",
                    e.id,
                    e.dim,
                    e.p,
                    e.norm_label(),
                    e.basis_spec.constructor_name(),
                    e.description
                );
            }
            Ok(0)
        }
        Command::Estimate { basis, quantity, levels, grid, budget, seed } => {
            let entry = find(&entries, &basis)?;
            let q = Quantity::parse_token(&quantity)?;
            let grid = GridSpec::new(grid)?;
            let opts = search_opts(budget, seed);
            let levels = parse_levels(&levels)?;
            if q.is_leveled() && levels.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "quantity {} requires --levels",
                    q.token()
                )));
            }
            if !q.is_leveled() && !levels.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "quantity {} takes no --levels",
                    q.token()
                )));
            }
            let built = entry.build()?;
            let dir = store::cache_dir();
            let slots: Vec<Option<Level>> = if q.is_leveled() {
                levels.iter().copied().map(Some).collect()
            } else {
                vec![None]
            };
            for level in slots {
                let (record, hit) = store::cached_estimate(
                    &dir,
                    &entry.id,
                    q.token(),
                    level.as_ref(),
                    grid.m(),
                    &opts,
                    || estimate(&built, q, level.as_ref(), &grid, &opts),
                )?;
                let a_part = record
                    .level
                    .as_deref()
                    .map(|l| format!(" a={l}"))
                    .unwrap_or_default();
                println!(
                    "{} {}{} value={} mode={} m={}{}",
                    record.basis_id,
                    record.quantity,
                    a_part,
                    sig12(record.value),
                    record.mode,
                    record.m,
                    if hit { " [cache hit]" } else { "" }
                );
            }
            Ok(0)
        }
        Command::Verify { basis, suite, grid, budget, seed } => {
            let entry = find(&entries, &basis)?;
            let grid = GridSpec::new(grid)?;
            let opts = search_opts(budget, seed);
            let built = entry.build()?;
            let runner = TheoremSuite::new(&built, &entry.id, grid, opts)?;
            let reports = runner.run(&suite)?;
            let mut failed = 0usize;
            for r in &reports {
                println!("{}", r.summary_line());
                if !r.passed() {
                    failed += 1;
                }
            }
            println!(
                "verify: {} checks, {} failed ({})",
                reports.len(),
                failed,
                entry.id
            );
            Ok(if failed > 0 { 1 } else { 0 })
        }
        Command::Curves {
            bases,
            quantities,
            levels,
            grid,
            envelope,
            out,
            budget,
            seed,
        } => {
            let grid = GridSpec::new(grid)?;
            let opts = search_opts(budget, seed);
            let ids = parse_list(&bases, "basis")?;
            let mut selected: Vec<&CatalogEntry> = Vec::with_capacity(ids.len());
            for id in &ids {
                selected.push(find(&entries, id)?);
            }
            let mut qs = Vec::new();
            for token in parse_list(&quantities, "quantity")? {
                qs.push(Quantity::parse_token(&token)?);
            }
            let levels = parse_levels(&levels)?;
            if qs.iter().any(|q| q.is_leveled()) && levels.is_empty() {
                return Err(Error::InvalidParameter(
                    "leveled quantities require --levels".into(),
                ));
            }
            for a in &levels {
                grid.require_on_grid(*a)?;
            }
            let spec = CurveSpec { quantities: qs, levels, envelope };
            match out {
                Some(path) => {
                    let mut file = std::fs::File::create(&path)?;
                    emit_curves(&selected, &grid, &spec, &opts, &mut file)?;
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    emit_curves(&selected, &grid, &spec, &opts, &mut lock)?;
                }
            }
            Ok(0)
        }
    }
}
