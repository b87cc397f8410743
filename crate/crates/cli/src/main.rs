use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};

use scinact::analysis::{berlekamp_rcb, expected_inactivations, singleton_bound};
use scinact::code::CodeSpec;
use scinact::construction::{
    construct_ebch, construct_limited_drm, construct_drm, construct_polar, construct_random_linear, construct_rm,
    ebch_polar_subcode, ExtraFrozen,
};
use scinact::decoders::{Budget, InactivationOptions};
use scinact::sim::{run_bler, DecoderKind, SimConfig, SimStats, DEFAULT_MAX_TRIALS, DEFAULT_TARGET_ERRORS};
use scinact::textio::{format_code_spec, parse_code_spec, parse_eps_grid};

const CURVE_HEADER: &str = "epsilon,trials,errors,bler,stderr,mean_g,se_g";
const TRAJECTORY_HEADER: &str = "index,mean_unresolved";
const ANALYZE_HEADER: &str = "epsilon,expected_g,singleton,berlekamp";

/// Polar-form linear codes on the erasure channel: construction, analysis
/// and simulation.
#[derive(Parser)]
#[command(name = "scinact", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write its spec file.
    Construct(ConstructArgs),
    /// Expected inactivations and bounds over an ε grid.
    Analyze(AnalyzeArgs),
    /// Monte-Carlo block error rates and inactivation statistics.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Polar,
    Rm,
    Ebch,
    EbchPolar,
    Drm,
    #[value(name = "7drm")]
    SevenDrm,
    Random,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    family: Family,
    /// Block length is 2^m.
    #[arg(long, default_value_t = 7)]
    m: u32,
    /// RM order (rm, drm, 7drm).
    #[arg(long)]
    r: Option<u32>,
    /// Code dimension (polar, ebch-polar, random).
    #[arg(long)]
    k: Option<usize>,
    /// Design erasure probability (polar; ebch-polar without --frozen-file).
    #[arg(long)]
    design_eps: Option<f64>,
    /// BCH designed distance (ebch, ebch-polar).
    #[arg(long, default_value_t = 21)]
    delta: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// 1-based indices to freeze on top of the eBCH code (ebch-polar).
    #[arg(long)]
    frozen_file: Option<PathBuf>,
    /// Output path; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    spec: PathBuf,
    /// `a:b:step` or a comma-separated list.
    #[arg(long)]
    eps: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecoderName {
    Sc,
    Genie,
    Scl,
    Inactivation,
    Map,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, value_enum)]
    decoder: DecoderName,
    /// `a:b:step` or a comma-separated list.
    #[arg(long)]
    eps: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_TRIALS)]
    max_trials: u64,
    #[arg(long, default_value_t = DEFAULT_TARGET_ERRORS)]
    target_errors: u64,
    /// List size for scl.
    #[arg(long, default_value_t = 8)]
    list_size: usize,
    /// Inactivation budget; unbounded if absent.
    #[arg(long)]
    gmax: Option<usize>,
    /// Solve the inactivation equations only at the end.
    #[arg(long)]
    no_consolidate: bool,
    /// Also write the mean G_i trajectory (inactivation decoder, single ε).
    #[arg(long, requires = "profile_out")]
    profile: bool,
    #[arg(long)]
    profile_out: Option<PathBuf>,
    /// Worker threads; all cores if absent. Output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<scinact::Error> for Failure {
    fn from(e: scinact::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn required<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    match v {
        Some(v) => Ok(v),
        None => usage(format!("{family} needs --{flag}")),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing standard output")?,
    }
    Ok(())
}

fn read_spec(path: &Path) -> Result<CodeSpec, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_code_spec(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn read_index_file(path: &Path) -> Result<Vec<usize>, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for tok in text.lines().filter(|l| !l.trim_start().starts_with('#')).flat_map(str::split_whitespace) {
        let i: usize = tok
            .parse()
            .map_err(|_| anyhow!("{}: bad index {tok:?}", path.display()))?;
        if i == 0 {
            return Err(anyhow!("{}: indices are 1-based", path.display()).into());
        }
        out.push(i - 1);
    }
    Ok(out)
}

fn grid(text: &str) -> Result<Vec<f64>, Failure> {
    parse_eps_grid(text).or_else(|e| usage(format!("--eps: {e}")))
}

fn construct(a: &ConstructArgs) -> Result<(), Failure> {
    let spec = match a.family {
        Family::Rm => construct_rm(a.m, required(a.r, "r", "rm")?)?,
        Family::Polar => construct_polar(
            a.m,
            required(a.k, "k", "polar")?,
            required(a.design_eps, "design-eps", "polar")?,
        )?,
        Family::Ebch => construct_ebch(a.m, a.delta)?,
        Family::EbchPolar => {
            let base = construct_ebch(a.m, a.delta)?;
            let extra = match (&a.frozen_file, a.design_eps) {
                (Some(p), None) => ExtraFrozen::Indices(read_index_file(p)?),
                (None, Some(epsilon)) => ExtraFrozen::LeastReliable { epsilon },
                _ => return usage("ebch-polar needs exactly one of --frozen-file and --design-eps"),
            };
            ebch_polar_subcode(&base, required(a.k, "k", "ebch-polar")?, &extra)?
        }
        Family::Drm => construct_drm(a.m, required(a.r, "r", "drm")?, a.seed)?,
        Family::SevenDrm => construct_limited_drm(a.m, required(a.r, "r", "7drm")?, 7, 10, a.seed)?,
        Family::Random => construct_random_linear(a.m, required(a.k, "k", "random")?, a.seed)?,
    };
    eprintln!("constructed {} (n={}, k={})", spec.label(), spec.n(), spec.k());
    emit(a.out.as_deref(), &format_code_spec(&spec))
}

fn analyze(a: &AnalyzeArgs) -> Result<(), Failure> {
    let eps = grid(&a.eps)?;
    let spec = read_spec(&a.spec)?;
    let (n, k) = (spec.n(), spec.k());
    let mut csv = format!("{ANALYZE_HEADER}\n");
    for e in eps {
        csv.push_str(&format!(
            "{e},{},{},{}\n",
            expected_inactivations(&spec, e)?,
            singleton_bound(n, k, e)?,
            berlekamp_rcb(n, k, e)?
        ));
    }
    emit(a.out.as_deref(), &csv)
}

fn curve_csv(stats: &SimStats) -> String {
    let mut csv = format!("{CURVE_HEADER}\n");
    for p in &stats.points {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            p.epsilon, p.trials, p.block_errors, p.bler, p.std_err, p.mean_g, p.se_g
        ));
    }
    csv
}

fn simulate(a: &SimulateArgs) -> Result<(), Failure> {
    let eps = grid(&a.eps)?;
    let decoder = match a.decoder {
        DecoderName::Sc => DecoderKind::Sc,
        DecoderName::Genie => DecoderKind::Genie,
        DecoderName::Scl => DecoderKind::Scl {
            list_size: a.list_size,
        },
        DecoderName::Map => DecoderKind::MapOracle,
        DecoderName::Inactivation => DecoderKind::Inactivation(InactivationOptions {
            budget: a.gmax.map_or(Budget::Unbounded, Budget::Max),
            consolidate: !a.no_consolidate,
        }),
    };
    if a.profile {
        if !matches!(a.decoder, DecoderName::Inactivation) || a.no_consolidate {
            return usage("--profile needs --decoder inactivation with consolidation");
        }
        if eps.len() != 1 {
            return usage("--profile needs a single --eps value");
        }
    }
    if a.jobs == Some(0) {
        return usage("--jobs must be at least 1");
    }
    let spec = read_spec(&a.spec)?;
    let cfg = SimConfig::new(spec, decoder, eps)
        .with_seed(a.seed)
        .with_stopping(a.max_trials, a.target_errors);
    if let Err(e) = cfg.validate() {
        return usage(e.to_string());
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = a.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().context("starting worker threads")?;
    let stats = pool.install(|| run_bler(&cfg))?;
    for p in &stats.points {
        eprintln!(
            "eps={} trials={} errors={} bler={:.4e} stderr={:.2e} mean_g={:.4}",
            p.epsilon, p.trials, p.block_errors, p.bler, p.std_err, p.mean_g
        );
    }
    emit(a.out.as_deref(), &curve_csv(&stats))?;
    if a.profile {
        let p = &stats.points[0];
        let mut csv = format!("{TRAJECTORY_HEADER}\n");
        for (i, g) in p.mean_unresolved.iter().enumerate() {
            csv.push_str(&format!("{},{g}\n", i + 1));
        }
        emit(a.profile_out.as_deref(), &csv)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Analyze(a) => analyze(a),
        Command::Simulate(a) => simulate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
