use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sievegaps::{
    build_curve_evaluator, census_driving_terms, class_curves,
    class_ratios_exact, digit_pair_classes, enumerate_gap_cycle, lambda_bounds, lambda_exact,
    lambda_invert, pair_census_skipping, propagate_exact, propagate_normalized_capped, w_infinity_table, Census,
    DEFAULT_EXACT_STEP_LIMIT,
};

use sievegaps_cli::compare;

/// Environment variable naming a cache directory for census files.
const CACHE_ENV: &str = "SIEVEGAPS_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "sievegaps",
    about = "Exact populations of gaps and driving terms across stages of Eratosthenes sieve",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gap-cycle construction and censuses
    Cycle {
        #[command(subcommand)]
        command: CycleCommand,
    },
    /// Propagation, eigensystem evaluation and the decay parameter
    Dynamics {
        #[command(subcommand)]
        command: DynamicsCommand,
    },
    /// Residue-class tables for a base
    Residue {
        #[command(subcommand)]
        command: ResidueCommand,
    },
    /// Prime enumeration statistics
    Sieve {
        #[command(subcommand)]
        command: SieveCommand,
    },
    /// Class-evolution curve data as CSV
    Curves(CurvesArgs),
    /// Regenerate a reference table and diff it
    Compare {
        /// t1 | t2 | t3 | t4 | base3 | base8 | base10 | os-ratios
        #[arg(long, value_enum)]
        table: TableId,
    },
}

#[derive(Subcommand)]
enum CycleCommand {
    /// Print the cycle of gaps at one stage
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1 << 24)]
        segment_size: usize,
    },
    /// Take a census of gaps and driving terms
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        gmax: u64,
        #[arg(long, default_value_t = 128)]
        jmax: usize,
        /// output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1 << 24)]
        segment_size: usize,
    },
}

#[derive(Subcommand)]
enum DynamicsCommand {
    /// Propagate a census file to a later stage
    Propagate {
        #[arg(long)]
        census: PathBuf,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// cap row lengths in normalized mode (folding the tail mass); rows
        /// longer than the next stage minus two cannot step otherwise
        #[arg(long)]
        jcap: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The decay parameter over a prime range, with Mertens bounds
    Lambda {
        #[arg(long)]
        p0: u64,
        /// target magnitude; accepts forms like 1e9
        #[arg(long)]
        pk: Option<String>,
        /// invert: print the prime-magnitude interval for this lambda
        #[arg(long)]
        invert: Option<f64>,
    },
}

#[derive(Subcommand)]
enum ResidueCommand {
    /// Class table for a base: pairs, finite-stage and asymptotic ratios
    Table {
        #[arg(long)]
        base: u64,
        #[arg(long, default_value_t = 420)]
        gmax: u64,
        /// evaluate the model at this stage prime
        #[arg(long, conflicts_with = "infinity")]
        at_prime: Option<u64>,
        /// asymptotic ratios only
        #[arg(long)]
        infinity: bool,
        /// emit CSV instead of aligned text
        #[arg(long)]
        csv: bool,
        /// census stage for the finite-stage column
        #[arg(long, default_value_t = 19)]
        ic_prime: u64,
        /// scale initial conditions of gaps with prime factors above the
        /// census stage up to their asymptotic share
        #[arg(long, default_value_t = false)]
        ic_correction: bool,
    },
}

#[derive(Subcommand)]
enum SieveCommand {
    /// Last-digit pair counts over consecutive primes
    Pairs {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 10)]
        base: u64,
        /// drop this many leading primes from the tally; 4 matches the
        /// published base-10 table, which starts at the pair (11, 13)
        #[arg(long, default_value_t = 0)]
        skip: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CurvesArgs {
    #[arg(long, default_value_t = 10)]
    base: u64,
    #[arg(long, default_value_t = 420)]
    gmax: u64,
    #[arg(long, default_value_t = 11)]
    degree: usize,
    /// grid of lambda values: `a:b:n` for n log-spaced points from a down
    /// to b, or a comma-separated list
    #[arg(long)]
    lambda_grid: String,
    #[arg(long)]
    out: PathBuf,
    /// census stage for initial conditions
    #[arg(long, default_value_t = 19)]
    ic_prime: u64,
    /// stage the exact recurrence runs to before extrapolation takes over
    #[arg(long, default_value_t = 4_000_037)]
    staging: u64,
    /// asymptotic-share correction for gaps with prime factors above the
    /// census stage; keeps the lambda -> 0 limit on the full product
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    ic_correction: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Normalized,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableId {
    T1,
    T2,
    T3,
    T4,
    Base3,
    Base8,
    Base10,
    OsRatios,
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Cycle { command } => run_cycle(command),
        Command::Dynamics { command } => run_dynamics(command),
        Command::Residue { command } => run_residue(command),
        Command::Sieve { command } => run_sieve(command),
        Command::Curves(args) => run_curves(args),
        Command::Compare { table } => run_compare(table),
    }
}

fn run_cycle(command: CycleCommand) -> anyhow::Result<()> {
    match command {
        CycleCommand::Enumerate { p, segment_size } => {
            let stream = enumerate_gap_cycle(p, segment_size)?;
            let stdout = std::io::stdout();
            let mut out = std::io::BufWriter::new(stdout.lock());
            let mut first = true;
            for gap in stream {
                if !first {
                    write!(out, " ")?;
                }
                write!(out, "{gap}")?;
                first = false;
            }
            writeln!(out)?;
            Ok(())
        }
        CycleCommand::Census {
            p,
            gmax,
            jmax,
            out,
            segment_size,
        } => {
            let census = cached_census(p, gmax, jmax, segment_size)?;
            emit_census(&census, None, out.as_deref())
        }
    }
}

fn run_dynamics(command: DynamicsCommand) -> anyhow::Result<()> {
    match command {
        DynamicsCommand::Propagate {
            census,
            to,
            mode,
            jcap,
            out,
        } => {
            let text = fs::read_to_string(&census)
                .with_context(|| format!("reading {}", census.display()))?;
            let census = Census::parse(&text)?;
            let from = census.stage_prime;
            match mode {
                Mode::Exact => {
                    let result = propagate_exact(&census, to, DEFAULT_EXACT_STEP_LIMIT)?;
                    let steps = sievegaps::primes_in(from, to).count();
                    let provenance =
                        format!("PROPAGATED from={from} to={to} mode=exact steps={steps}");
                    emit_census(&result, Some(&provenance), out.as_deref())
                }
                Mode::Normalized => {
                    let state = propagate_normalized_capped(&census, to, jcap)?;
                    let steps = sievegaps::primes_in(from, to).count();
                    let mut text = format!(
                        "CENSUS v1 p={} gmax={} jmax={} truncated={}\n",
                        state.stage_prime,
                        state.g_max,
                        state.j_max,
                        0
                    );
                    text.push_str(&format!(
                        "PROPAGATED from={from} to={to} mode=normalized steps={steps}\n"
                    ));
                    for (g, row) in &state.values {
                        for (idx, w) in row.iter().enumerate() {
                            if *w != 0.0 {
                                text.push_str(&format!("{g} {} {:.16e}\n", idx + 1, w));
                            }
                        }
                    }
                    write_or_print(&text, out.as_deref())
                }
            }
        }
        DynamicsCommand::Lambda { p0, pk, invert } => {
            if let Some(lambda) = invert {
                let (lo, hi) = lambda_invert(lambda, p0)?;
                println!(
                    "lambda={lambda} p0={p0} p_low={lo} p_high={hi} log10=[{:.3}, {:.3}]",
                    lo.log10(),
                    hi.log10()
                );
                return Ok(());
            }
            let pk_str = pk.context("--pk or --invert is required")?;
            let pk_val: f64 = pk_str
                .parse()
                .with_context(|| format!("bad --pk value `{pk_str}`"))?;
            let bounds = lambda_bounds(p0, pk_val)?;
            match lambda_exact(p0, pk_val as u64) {
                Ok(exact) => {
                    print!(
                        "p0={p0} pk={pk_val:.6e} steps={} a2k={:.9}",
                        exact.steps, exact.value
                    );
                    if let Some(r) = &exact.exact {
                        print!(" exact={r}");
                    }
                    println!();
                }
                Err(e) => println!("p0={p0} pk={pk_val:.6e} exact unavailable: {e}"),
            }
            println!(
                "bounds: lower={:.9} upper={:.9} (o(1)=0; lower approximates the previous prime by pk)",
                bounds.lower, bounds.upper
            );
            Ok(())
        }
    }
}

fn run_residue(command: ResidueCommand) -> anyhow::Result<()> {
    match command {
        ResidueCommand::Table {
            base,
            gmax,
            at_prime,
            infinity,
            csv,
            ic_prime,
            ic_correction,
        } => {
            let scheme = digit_pair_classes(base)?;
            let vals = w_infinity_table(gmax)?;
            let winf = class_ratios_exact(&vals, base)?;
            let finite = match at_prime {
                Some(p) if !infinity => {
                    let census = cached_census(ic_prime, gmax, 128, 1 << 24)?;
                    let ev = build_curve_evaluator(&census, base, gmax, 11, p, ic_correction)?;
                    Some(ev.ratios_at(ev.staging_lambda)?)
                }
                _ => None,
            };
            let mut out = String::new();
            if csv {
                out.push_str("base,h,pairs,W_current,W_infinity\n");
                for (&h, pairs) in &scheme.classes {
                    let current = finite
                        .as_ref()
                        .map(|f| format!("{:.6}", f.ratios[&h]))
                        .unwrap_or_default();
                    out.push_str(&format!(
                        "{base},{h},{},{current},{:.6}\n",
                        pairs.len(),
                        winf.ratios[&h]
                    ));
                }
            } else {
                out.push_str(&format!("residue classes mod {base}\n"));
                for (&h, pairs) in &scheme.classes {
                    let current = finite
                        .as_ref()
                        .map(|f| format!("{:>10.6}", f.ratios[&h]))
                        .unwrap_or_else(|| format!("{:>10}", "-"));
                    let pair_list: Vec<String> =
                        pairs.iter().map(|&(a, b)| format!("({a},{b})")).collect();
                    out.push_str(&format!(
                        "h={h:<3} W_current={current} W_inf={:>10.6}  pairs: {}\n",
                        winf.ratios[&h],
                        pair_list.join(" ")
                    ));
                }
            }
            print!("{out}");
            Ok(())
        }
    }
}

fn run_sieve(command: SieveCommand) -> anyhow::Result<()> {
    match command {
        SieveCommand::Pairs { n, base, skip, out } => {
            let census = pair_census_skipping(n, base, skip)?;
            write_or_print(&census.to_csv(), out.as_deref())
        }
    }
}

fn run_curves(args: CurvesArgs) -> anyhow::Result<()> {
    let grid = parse_lambda_grid(&args.lambda_grid)?;
    let census = cached_census(args.ic_prime, args.gmax, 128, 1 << 24)?;
    let points = class_curves(
        &census,
        args.base,
        args.gmax,
        args.degree,
        args.staging,
        args.ic_correction,
        &grid,
    )?;
    let classes: Vec<u64> = digit_pair_classes(args.base)?
        .classes
        .keys()
        .copied()
        .collect();
    let mut csv = String::new();
    csv.push_str(&format!(
        "# initial census: p={} gmax={} jmax=128; staging prime {}; degree {}; ic-correction {}\n",
        args.ic_prime, args.gmax, args.staging, args.degree, args.ic_correction
    ));
    csv.push_str("# grid points at or above the staging lambda are exact trajectory snapshots\n");
    csv.push_str("lambda,p_low,p_high");
    for h in &classes {
        csv.push_str(&format!(",W_{h}"));
    }
    csv.push('\n');
    for pt in &points {
        let (lo, hi) = lambda_invert(pt.lambda, args.ic_prime)?;
        csv.push_str(&format!("{:.6e},{lo},{hi}", pt.lambda));
        for h in &classes {
            csv.push_str(&format!(",{:.6}", pt.aggregate.ratios[h]));
        }
        csv.push('\n');
    }
    fs::write(&args.out, csv).with_context(|| format!("writing {}", args.out.display()))?;
    eprintln!("wrote {} rows to {}", points.len(), args.out.display());
    Ok(())
}

fn run_compare(table: TableId) -> anyhow::Result<()> {
    let report = match table {
        TableId::T1 => compare::run_t1()?,
        TableId::T2 => compare::run_t2()?,
        TableId::T3 => compare::run_t3()?,
        TableId::T4 => compare::run_t4()?,
        TableId::Base3 => compare::run_base3()?,
        TableId::Base8 => compare::run_base8()?,
        TableId::Base10 => compare::run_base10_asymptotics()?,
        TableId::OsRatios => compare::run_os_ratios()?,
    };
    print!("{report}");
    if !report.overall_pass() {
        for row in report.failing_rows() {
            eprintln!(
                "FAIL {}: expected {} got {} ({})",
                row.label, row.expected, row.computed, row.deviation
            );
        }
        std::process::exit(1);
    }
    Ok(())
}

/// `a:b:n` for n log-spaced points from a down to b, or a comma list.
fn parse_lambda_grid(spec: &str) -> anyhow::Result<Vec<f64>> {
    if let Some((a, rest)) = spec.split_once(':') {
        let (b, n) = rest
            .split_once(':')
            .context("grid spec is a:b:n or a comma-separated list")?;
        let a: f64 = a.parse()?;
        let b: f64 = b.parse()?;
        let n: usize = n.parse()?;
        if n < 2 || a <= 0.0 || b <= 0.0 {
            bail!("grid needs n >= 2 and positive endpoints");
        }
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        let step = (lo / hi).powf(1.0 / (n as f64 - 1.0));
        Ok((0..n).map(|i| hi * step.powi(i as i32)).collect())
    } else {
        spec.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(Into::into))
            .collect()
    }
}

fn cache_path(p: u64, gmax: u64, jmax: usize) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .map(|dir| PathBuf::from(dir).join(format!("census_p{p}_g{gmax}_j{jmax}.txt")))
}

/// Build a census, round-tripping through the cache directory when one is
/// configured.
fn cached_census(p: u64, gmax: u64, jmax: usize, segment: usize) -> anyhow::Result<Census> {
    if let Some(path) = cache_path(p, gmax, jmax) {
        if path.exists() {
            let text = fs::read_to_string(&path)?;
            if let Ok(census) = Census::parse(&text) {
                return Ok(census);
            }
        }
        let stream = enumerate_gap_cycle(p, segment)?;
        let census = census_driving_terms(stream, gmax, jmax);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).ok();
        }
        fs::write(&path, census.to_text()).ok();
        Ok(census)
    } else {
        let stream = enumerate_gap_cycle(p, segment)?;
        Ok(census_driving_terms(stream, gmax, jmax))
    }
}

fn emit_census(census: &Census, provenance: Option<&str>, out: Option<&Path>) -> anyhow::Result<()> {
    let mut text = census.to_text();
    if let Some(line) = provenance {
        let mut lines = text.splitn(2, '\n');
        let header = lines.next().unwrap_or_default();
        let rest = lines.next().unwrap_or_default();
        text = format!("{header}\n{line}\n{rest}");
    }
    write_or_print(&text, out)
}

fn write_or_print(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
