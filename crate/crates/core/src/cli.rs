//! Command-line driver behind the `pseudomult` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cases::{find_case, list_cases, run_case_to};
use crate::classify::{classify_on, ClassifyConfig, DEFAULT_M_MAX};
use crate::error::{Error, Result};
use crate::kernelzoo::{
    nested_samples, sample_domain, CandidateFunction, DomainPoint, Kernel, SampleSet, Sampler, Scheme,
};
use crate::pick::{bisect_sm, inertia_profile, sm_convergence_on, BisectOptions, ConvergenceTable};
use crate::report::{fmt_number, output_dir, to_json_text, write_atomic, Envelope, Tolerances};
use crate::spectral::DEFAULT_REL_TOL;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SWEEP_HEADER: &str = "n,t_lower,t_upper,m,n_neg_at_upper,cond_K,seed";

#[derive(Debug, Parser)]
#[command(name = "pseudomult", version, about = "Pick-matrix analysis of pseudomultipliers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel and function catalogs.
    Kernels {
        #[command(subcommand)]
        action: ListAction,
    },
    /// Inertia of the Pick matrix at one or more values of t.
    Inertia(InertiaArgs),
    /// Bisection bracket for s_m on one sample.
    Sm(SmArgs),
    /// Full classification report on nested samples.
    Classify(ClassifyArgs),
    /// s_m convergence table over sample sizes.
    Sweep(SweepArgs),
    /// Golden case catalog.
    Case {
        #[command(subcommand)]
        action: CaseAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum ListAction {
    List,
}

#[derive(Debug, Subcommand)]
pub enum CaseAction {
    List,
    Run {
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// Report directory (default: $PSEUDOMULT_OUT_DIR, else ./reports).
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeName {
    #[value(alias = "radial_grid")]
    Radial,
    #[value(alias = "uniform_random")]
    Random,
    #[value(alias = "integer_range")]
    Integers,
    #[value(alias = "interval_grid")]
    Interval,
    Spiral,
}

#[derive(Debug, Default, Args)]
pub struct Common {
    #[arg(long)]
    pub kernel: Option<String>,
    #[arg(long = "fn")]
    pub function: Option<String>,
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeName>,
    /// Sample size.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub rings: Option<usize>,
    #[arg(long)]
    pub max_r: Option<f64>,
    /// Box half-width or disc radius for random sampling; ring spacing for spirals.
    #[arg(long)]
    pub extent: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// First integer for integer ranges.
    #[arg(long)]
    pub start: Option<u64>,
    #[arg(long)]
    pub min_sep: Option<f64>,
    /// Explicit points: `a..b` (integers) or a comma list such as `0.3,0.6,0+0.9i`.
    #[arg(long)]
    pub points: Option<String>,
    /// JSON array of `[re, im]` pairs.
    #[arg(long)]
    pub points_file: Option<PathBuf>,
    /// Inertia zero tolerance, relative to the spectral radius.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// JSON file whose fields override the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InertiaArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated ascending t values.
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct SmArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub m: Option<usize>,
    /// Bisection width tolerance, relative to max(1, upper).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub t_hi: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Nested sample sizes.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub m_max: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Contents of a `--config` file. Every field is optional and wins over the
/// corresponding flag.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub kernel_id: Option<String>,
    pub function_id: Option<String>,
    pub sampler: Option<Sampler>,
    pub n: Option<usize>,
    pub sizes: Option<Vec<usize>>,
    pub points: Option<Vec<DomainPoint>>,
    pub m: Option<usize>,
    pub m_max: Option<usize>,
    pub t: Option<Vec<f64>>,
    pub rel_tol: Option<f64>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

/// Flags merged with the config file.
struct Resolved {
    kernel: Kernel,
    phi: CandidateFunction,
    config: RunConfig,
    rel_tol: f64,
}

impl Resolved {
    fn new(common: &Common) -> Result<Resolved> {
        let config = match &common.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let kernel_id = config
            .kernel_id
            .clone()
            .or_else(|| common.kernel.clone())
            .ok_or_else(|| usage("--kernel is required"))?;
        let function_id = config
            .function_id
            .clone()
            .or_else(|| common.function.clone())
            .ok_or_else(|| usage("--fn is required"))?;
        let rel_tol = config.rel_tol.or(common.rel_tol).unwrap_or(DEFAULT_REL_TOL);
        if !(rel_tol > 0.0) {
            return Err(usage("tolerances must be positive"));
        }
        Ok(Resolved {
            kernel: Kernel::from_id(&kernel_id)?,
            phi: CandidateFunction::from_id(&function_id)?,
            config,
            rel_tol,
        })
    }

    fn seed(&self, common: &Common) -> Option<u64> {
        self.config.seed.or(common.seed)
    }

    fn sampler(&self, common: &Common) -> Result<Sampler> {
        if let Some(s) = &self.config.sampler {
            return Ok(s.clone());
        }
        let domain = self.kernel.domain_kind();
        let scheme = match common.scheme {
            None => match Scheme::default_for(domain) {
                Scheme::RadialGrid { .. } => Scheme::RadialGrid {
                    rings: common.rings,
                    max_r: common.max_r,
                },
                Scheme::IntegerRange { .. } => Scheme::IntegerRange {
                    start: common.start.unwrap_or(1),
                },
                other => other,
            },
            Some(SchemeName::Radial) => Scheme::RadialGrid {
                rings: common.rings,
                max_r: common.max_r,
            },
            Some(SchemeName::Random) => Scheme::UniformRandom {
                extent: common.extent,
                seed: self.seed(common).unwrap_or(0),
            },
            Some(SchemeName::Integers) => Scheme::IntegerRange {
                start: common.start.unwrap_or(1),
            },
            Some(SchemeName::Interval) => Scheme::IntervalGrid { grading: 1.0 },
            Some(SchemeName::Spiral) => Scheme::Spiral {
                spacing: common.extent.unwrap_or(0.5),
            },
        };
        let mut sampler = Sampler::new(scheme);
        if let Some(sep) = common.min_sep {
            sampler = sampler.with_min_separation(sep);
        }
        Ok(sampler)
    }

    /// Explicit points when given, else `None`.
    fn explicit_points(&self, common: &Common) -> Result<Option<SampleSet>> {
        let sample = if let Some(points) = &self.config.points {
            Some(SampleSet::new(points.clone(), 0.0)?)
        } else if let Some(path) = &common.points_file {
            Some(SampleSet::load(path)?)
        } else if let Some(text) = &common.points {
            Some(parse_points(text)?)
        } else {
            None
        };
        if let Some(s) = &sample {
            s.validate(&self.kernel, Some(&self.phi))?;
        }
        Ok(sample)
    }

    fn single_sample(&self, common: &Common) -> Result<SampleSet> {
        if let Some(s) = self.explicit_points(common)? {
            return Ok(s);
        }
        let n = self
            .config
            .n
            .or(common.n)
            .ok_or_else(|| usage("either --n or explicit points are required"))?;
        sample_domain(&self.kernel, &self.sampler(common)?, n, Some(&self.phi))
    }

    fn nested(&self, common: &Common, sizes: &[usize]) -> Result<Vec<SampleSet>> {
        let sizes = self.config.sizes.clone().unwrap_or_else(|| sizes.to_vec());
        if let Some(s) = self.explicit_points(common)? {
            if sizes.is_empty() {
                return Ok(vec![s]);
            }
            return sizes
                .iter()
                .map(|&n| {
                    if n == 0 || n > s.len() {
                        Err(usage(&format!("size {n} does not fit {} explicit points", s.len())))
                    } else {
                        Ok(s.prefix(n))
                    }
                })
                .collect();
        }
        if sizes.is_empty() {
            return Err(usage("--sizes is required"));
        }
        nested_samples(&self.kernel, &self.sampler(common)?, &sizes, Some(&self.phi))
    }

    fn envelope(&self, seed: Option<u64>, bisect: &BisectOptions) -> Envelope {
        Envelope::new(
            &self.kernel.id(),
            self.phi.id(),
            seed,
            Tolerances::new(self.rel_tol, bisect),
        )
    }

    fn out(&self, common: &Common) -> Option<PathBuf> {
        self.config.output.clone().or_else(|| common.out.clone())
    }
}

fn usage(msg: &str) -> Error {
    Error::InvalidArgument(msg.to_string())
}

/// `a..b` inclusive integer range, or comma-separated complex numbers.
pub fn parse_points(text: &str) -> Result<SampleSet> {
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| usage(&format!("bad range start in `{text}`")))?;
        let b: u64 = b.trim().parse().map_err(|_| usage(&format!("bad range end in `{text}`")))?;
        if a > b {
            return Err(usage(&format!("empty range `{text}`")));
        }
        return SampleSet::from_reals(&(a..=b).map(|k| k as f64).collect::<Vec<_>>());
    }
    let values = text
        .split(',')
        .map(|s| parse_complex(s.trim()))
        .collect::<Result<Vec<_>>>()?;
    SampleSet::from_values(&values)
}

/// `x`, `yi`, `x+yi` or `x-yi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || usage(&format!("cannot parse `{s}` as a complex number"));
    if let Some(body) = s.strip_suffix('i') {
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (body[..i].parse::<f64>().map_err(|_| bad())?, &body[i..]),
            None => (0.0, body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            v => v.parse::<f64>().map_err(|_| bad())?,
        };
        return Ok(Complex64::new(re, im));
    }
    s.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn bisect_options(base: BisectOptions, tol: Option<f64>, t_hi: Option<f64>) -> Result<BisectOptions> {
    let mut opts = base;
    if let Some(tol) = tol {
        if !(tol > 0.0) {
            return Err(usage("tolerances must be positive"));
        }
        opts.tol = tol;
    }
    if t_hi.is_some() {
        opts.t_hi_init = t_hi;
    }
    Ok(opts)
}

fn cmd_kernels() -> Result<i32> {
    let mut s = String::from("kernels:\n");
    for k in Kernel::catalog() {
        let _ = writeln!(s, "  {:<16} [{}] {}", k.id(), k.domain_kind().name(), k.description());
    }
    s.push_str("  powers:<m>       closure of polynomials in λ^m, any m ≥ 2\n");
    s.push_str("functions:\n");
    for f in CandidateFunction::catalog() {
        let _ = writeln!(s, "  {:<16} {}", f.id(), f.description());
    }
    s.push_str("  const:<re>[:<im>]          constant\n");
    s.push_str("  inv_pow:<k>                λ^-k, undefined at 0\n");
    s.push_str("  inv_pow_at0:<k>:<re>[:<im>] λ^-k with a value at 0\n");
    s.push_str("  inv_shift:<re>[:<im>]      1/(λ - a)\n");
    s.push_str("  pole_ratio:<re>[:<im>]     λ/(λ - a)\n");
    emit(None, &s)?;
    Ok(EXIT_OK)
}

fn cmd_inertia(args: &InertiaArgs) -> Result<i32> {
    let r = Resolved::new(&args.common)?;
    let t = r.config.t.clone().unwrap_or_else(|| args.t.clone());
    if t.is_empty() {
        return Err(usage("--t is required"));
    }
    let sample = r.single_sample(&args.common)?;
    let profile = inertia_profile(&r.kernel, &r.phi, &sample, &t, r.rel_tol)?;
    let format = r.config.format.or(args.format).unwrap_or(Format::Json);
    let text = match format {
        Format::Json => {
            let env = r.envelope(sample.seed, &BisectOptions::default());
            let mut doc = env.wrap("profile", &profile)?;
            if let [single] = profile.inertias.as_slice() {
                doc["inertia"] = serde_json::json!({
                    "neg": single.n_neg, "zero": single.n_zero, "pos": single.n_pos,
                });
            }
            to_json_text(&doc)?
        }
        Format::Csv => {
            let mut s = String::from("t,n_neg,n_zero,n_pos,cond_K,seed\n");
            for (t, i) in profile.t_values.iter().zip(&profile.inertias) {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    fmt_number(*t),
                    i.n_neg,
                    i.n_zero,
                    i.n_pos,
                    fmt_number(profile.cond_k),
                    seed_text(sample.seed)
                );
            }
            s
        }
    };
    emit(r.out(&args.common).as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_sm(args: &SmArgs) -> Result<i32> {
    let r = Resolved::new(&args.common)?;
    let m = r.config.m.or(args.m).ok_or_else(|| usage("--m is required"))?;
    let sample = r.single_sample(&args.common)?;
    let opts = bisect_options(BisectOptions::default(), r.config.tol.or(args.tol), args.t_hi)?;
    let est = bisect_sm(&r.kernel, &r.phi, &sample, m, &opts)?;
    let mut env = r.envelope(sample.seed, &opts);
    if est.unbounded {
        env.warnings.push(format!(
            "s_{m}: doubling cap hit; not an {m}-pseudomultiplier at this sample scale (upper is null)"
        ));
    }
    let doc = env.wrap("estimate", &est)?;
    emit(r.out(&args.common).as_deref(), &to_json_text(&doc)?)?;
    Ok(EXIT_OK)
}

fn cmd_classify(args: &ClassifyArgs) -> Result<i32> {
    let r = Resolved::new(&args.common)?;
    let samples = r.nested(&args.common, &args.sizes)?;
    let sampler = r.sampler(&args.common)?;
    let mut cfg = ClassifyConfig::new(sampler, samples.iter().map(|s| s.len()).collect());
    cfg.m_max = r.config.m_max.or(args.m_max).unwrap_or(DEFAULT_M_MAX);
    let report = classify_on(&r.kernel, &r.phi, &samples, &cfg)?;
    let mut env = r.envelope(samples[0].seed, &cfg.bisect);
    env.warnings = report.warnings.clone();
    let doc = env.wrap("classification", &report)?;
    emit(r.out(&args.common).as_deref(), &to_json_text(&doc)?)?;
    Ok(EXIT_OK)
}

fn seed_text(seed: Option<u64>) -> String {
    seed.map(|s| s.to_string()).unwrap_or_default()
}

/// Sweep rows as CSV, `inf` for unbounded uppers.
pub fn sweep_csv(table: &ConvergenceTable, seed: Option<u64>) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for row in &table.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            row.n,
            fmt_number(row.estimate.lower),
            fmt_number(row.estimate.upper),
            table.m,
            row.estimate.n_neg_at_upper,
            fmt_number(row.cond_k),
            seed_text(seed)
        );
    }
    s
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let r = Resolved::new(&args.common)?;
    let m = r.config.m.or(args.m).ok_or_else(|| usage("--m is required"))?;
    let mut sizes = r.config.sizes.clone().unwrap_or_else(|| args.sizes.clone());
    sizes.sort_unstable();
    sizes.dedup();
    let samples = r.nested(&args.common, &sizes)?;
    let opts = bisect_options(BisectOptions::default(), r.config.tol.or(args.tol), None)?;
    let table = sm_convergence_on(&r.kernel, &r.phi, m, &samples, &opts)?;
    let seed = samples[0].seed;
    let text = match r.config.format.or(args.format).unwrap_or(Format::Csv) {
        Format::Csv => sweep_csv(&table, seed),
        Format::Json => {
            let mut env = r.envelope(seed, &opts);
            for row in &table.rows {
                if row.estimate.unbounded {
                    env.warnings.push(format!("n = {}: doubling cap hit (upper is null)", row.n));
                }
            }
            to_json_text(&env.wrap("sweep", &table)?)?
        }
    };
    emit(r.out(&args.common).as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_case(action: &CaseAction) -> Result<i32> {
    match action {
        CaseAction::List => {
            let mut s = String::new();
            for c in list_cases()? {
                let _ = writeln!(s, "{:<28} {:<16} {:<14} {}", c.id, c.kernel_id, c.function_id, c.title);
            }
            emit(None, &s)?;
            Ok(EXIT_OK)
        }
        CaseAction::Run { id, all, out_dir } => {
            let ids: Vec<String> = match (id, all) {
                (Some(_), true) => return Err(usage("give either a case id or --all")),
                (Some(id), false) => vec![find_case(id)?.id],
                (None, true) => list_cases()?.into_iter().map(|c| c.id).collect(),
                (None, false) => return Err(usage("give a case id or --all")),
            };
            let dir = output_dir(out_dir.as_deref());
            let mut failed = 0;
            let mut s = String::new();
            for id in &ids {
                let outcome = run_case_to(id, &dir)?;
                let _ = writeln!(s, "{} {id}", if outcome.passed { "PASS" } else { "FAIL" });
                for c in outcome.checks.iter().filter(|c| !c.passed) {
                    let _ = writeln!(s, "    failed: {} (observed {})", c.description, c.observed);
                }
                if !outcome.passed {
                    failed += 1;
                }
            }
            let _ = writeln!(s, "{} of {} cases passed; reports in {}", ids.len() - failed, ids.len(), dir.display());
            emit(None, &s)?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::UnknownId { .. } | Error::InvalidArgument(_) | Error::IncompatibleScheme { .. } => EXIT_USAGE,
        Error::Json(_) => EXIT_USAGE,
        _ => EXIT_CHECK_FAILED,
    }
}

pub fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Kernels { action: ListAction::List } => cmd_kernels(),
        Command::Inertia(a) => cmd_inertia(a),
        Command::Sm(a) => cmd_sm(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Case { action } => cmd_case(action),
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Parsed JSON of a document produced by this module, for tests.
pub fn parse_document(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}
