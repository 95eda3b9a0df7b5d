//! Command-line front end. [`run`] parses the arguments, dispatches to the
//! library and writes the result; it returns the process exit status:
//! 0 on success, 1 when the library rejects the input, 2 on usage errors.

pub mod output;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tailduality::calibration::{self, AnalyzeOptions, Family};
use tailduality::format::DEFAULT_PRECISION;
use tailduality::oce::{self, BoundedModel, BuiltinKernel};
use tailduality::uncertainty::{worst_es, worst_mean_excess, UncertaintySpec};
use tailduality::{dual, EmpiricalSample, LossModel, ModelSpec};

pub use output::{Curve, Field, Format, Record};
pub use sweep::{SweepSpec, SweepVar, DEFAULT_POINTS};

pub const PRECISION_ENV: &str = "TAILDUALITY_PRECISION";

#[derive(Debug, Parser)]
#[command(name = "tailduality", version, about = "Expected Shortfall, mean excess and their worst cases")]
pub struct Cli {
    /// Output format; csv is the stable machine-readable one.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Significant digits in printed numbers [default: 6, or $TAILDUALITY_PRECISION].
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub precision: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expected Shortfall at a level.
    Es(EsArgs),
    /// Mean excess E[(X - t)+].
    MeanExcess(MeanExcessArgs),
    /// Worst-case ES or mean excess over a moment or Wasserstein ball.
    WorstCase(WorstCaseArgs),
    /// Optimized certainty equivalent, or the kernel expectation through it.
    Oce(OceArgs),
    /// Conjugates of the quantile-based functions f1 and f2.
    Conjugate(ConjugateArgs),
    /// Maximum-likelihood fit of a loss file.
    Fit(FitArgs),
    /// Wasserstein distance between two models.
    Wasserstein(WassersteinArgs),
    /// Fit benchmarks to a loss file and tabulate r and r_hat.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EsVia {
    Ru,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeanExcessVia {
    Reverse,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BallKind {
    Moment,
    Wasserstein,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    F1,
    F2,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EsArgs {
    /// Model, e.g. pareto:theta=2 or empirical:file=losses.txt
    #[arg(long)]
    pub model: ModelSpec,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = EsVia::Direct)]
    pub via: EsVia,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct MeanExcessArgs {
    #[arg(long)]
    pub model: ModelSpec,
    #[arg(long = "t")]
    pub t: f64,
    #[arg(long, value_enum, default_value_t = MeanExcessVia::Direct)]
    pub via: MeanExcessVia,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct WorstCaseArgs {
    #[arg(long, value_enum)]
    pub kind: BallKind,
    /// Moment or Wasserstein order.
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Moment ball mean.
    #[arg(long)]
    pub m: Option<f64>,
    /// Moment ball bound on the p-th central absolute moment, as a norm.
    #[arg(long)]
    pub v: Option<f64>,
    /// Centre of the Wasserstein ball.
    #[arg(long)]
    pub benchmark: Option<ModelSpec>,
    /// Wasserstein radius.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Threshold for the worst-case mean excess.
    #[arg(long = "t")]
    pub t: Option<f64>,
    /// Level for the worst-case ES.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Curve over one variable: t|alpha|delta|p:lo,hi[,points]
    #[arg(long)]
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct OceArgs {
    #[arg(long)]
    pub model: ModelSpec,
    /// positive-part, scaled-positive-part:alpha=A or entropic
    #[arg(long)]
    pub kernel: BuiltinKernel,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Compute E[v(X - t)] as a supremum over beta.
    #[arg(long)]
    pub reverse: bool,
    #[arg(long = "t")]
    pub t: Option<f64>,
    /// Clamp a parametric model between two quantile levels: LO,HI
    #[arg(long, value_parser = parse_clamp)]
    pub clamp: Option<(f64, f64)>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ConjugateArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long)]
    pub model: ModelSpec,
    #[arg(long = "t")]
    pub t: f64,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub family: Family,
}

#[derive(Debug, Args)]
pub struct WassersteinArgs {
    #[arg(long)]
    pub a: ModelSpec,
    #[arg(long)]
    pub b: ModelSpec,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Comma-separated benchmark families [default: lognormal,weibull,gamma]
    #[arg(long, value_delimiter = ',')]
    pub families: Vec<Family>,
    /// Radius multipliers of delta0 [default: 1,1.2,1.4,1.6,1.8,2]
    #[arg(long, value_delimiter = ',')]
    pub delta_grid: Vec<f64>,
    /// Explicit thresholds for the t sweep [default: even grid from data Q1 to Q3]
    #[arg(long, value_delimiter = ',')]
    pub t_grid: Vec<f64>,
    /// Points of the default t grid.
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub t_points: usize,
    /// Dataset label shown in the report [default: file name]
    #[arg(long)]
    pub label: Option<String>,
}

fn parse_clamp(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected LO,HI")?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad level `{a}`"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad level `{b}`"))?;
    if a > 0.0 && a < b && b < 1.0 {
        Ok((a, b))
    } else {
        Err("clamp levels need 0 < LO < HI < 1".into())
    }
}

enum Failure {
    Usage(String),
    Domain(tailduality::Error),
}

impl From<tailduality::Error> for Failure {
    fn from(e: tailduality::Error) -> Self {
        Failure::Domain(e)
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

enum Output {
    Record(Record),
    Curve(Curve),
    Text(String),
}

/// Runs the command line `args` (program name first), reading the precision
/// fallback from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(PRECISION_ENV).ok();
    run_with_env(args, env.as_deref(), out, err)
}

/// [`run`] with the precision fallback passed explicitly.
pub fn run_with_env<I, T>(args: I, env_precision: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let digits = match (cli.precision, env_precision) {
        (Some(d), _) => d as usize,
        (None, Some(raw)) => match raw.trim().parse::<usize>() {
            Ok(d) if (1..=17).contains(&d) => d,
            _ => {
                let _ = writeln!(err, "error: {PRECISION_ENV} must be an integer in 1..=17, found `{raw}`");
                return 2;
            }
        },
        (None, None) => DEFAULT_PRECISION,
    };
    let mut notes = Vec::new();
    match dispatch(&cli.command, cli.format, digits, &mut notes) {
        Ok(result) => {
            let text = match result {
                Output::Record(r) => r.render(cli.format, digits),
                Output::Curve(c) => c.render(cli.format, digits),
                Output::Text(s) => s,
            };
            for n in notes {
                let _ = writeln!(err, "note: {n}");
            }
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(command: &Command, format: Format, digits: usize, notes: &mut Vec<String>) -> Result<Output, Failure> {
    match command {
        Command::Es(a) => {
            let model = a.model.clone().resolve()?;
            Ok(Output::Record(match a.via {
                EsVia::Direct => Record::default().num("value", dual::es(&model, a.alpha)?),
                EsVia::Ru => {
                    let r = dual::es_via_ru(&model, a.alpha)?;
                    Record::default()
                        .num("value", r.value)
                        .interval("minimizer", r.optimizer.lo, r.optimizer.hi)
                }
            }))
        }
        Command::MeanExcess(a) => {
            if !a.t.is_finite() {
                return usage("--t must be finite");
            }
            let model = a.model.clone().resolve()?;
            Ok(Output::Record(match a.via {
                MeanExcessVia::Direct => Record::default().num("value", model.upper_partial_expectation(a.t)),
                MeanExcessVia::Reverse => {
                    let r = dual::mean_excess_via_reverse(&model, a.t)?;
                    Record::default()
                        .num("value", r.value)
                        .interval("maximizer", r.optimizer.lo, r.optimizer.hi)
                }
            }))
        }
        Command::WorstCase(a) => worst_case(a),
        Command::Oce(a) => run_oce(a),
        Command::Conjugate(a) => {
            let model = a.model.clone().resolve()?;
            let r = match a.which {
                Which::F1 => oce::conjugate_f1(&model, a.t)?,
                Which::F2 => oce::conjugate_f2(&model, a.t)?,
            };
            Ok(Output::Record(
                Record::default()
                    .num("value", r.value)
                    .interval("optimizer", r.optimizer.lo, r.optimizer.hi),
            ))
        }
        Command::Fit(a) => {
            let sample = EmpiricalSample::from_file(&a.file)?;
            let fit = calibration::fit_mle(&sample, a.family)?;
            let mut rec = Record::default().text("family", fit.family.name());
            if let Some(p) = fit.model.as_parametric() {
                for (k, v) in p.parameters() {
                    rec = rec.num(k, v);
                }
            }
            Ok(Output::Record(
                rec.num("log_likelihood", fit.log_likelihood)
                    .flag("converged", fit.converged)
                    .int("iterations", fit.iterations as u64)
                    .num("gradient_norm", fit.gradient_norm),
            ))
        }
        Command::Wasserstein(a) => {
            let x = a.a.clone().resolve()?;
            let y = a.b.clone().resolve()?;
            let d = calibration::wasserstein_distance(&x, &y, a.p)?;
            if let Some(why) = d.diagnostic {
                notes.push(why);
            }
            Ok(Output::Record(Record::default().num("value", d.value)))
        }
        Command::Analyze(a) => run_analyze(a, format, digits),
    }
}

fn worst_case(a: &WorstCaseArgs) -> Result<Output, Failure> {
    let sweep_var = a.sweep.as_ref().map(|s| s.var);
    match a.kind {
        BallKind::Moment => {
            if a.benchmark.is_some() || a.delta.is_some() {
                return usage("--benchmark and --delta apply to --kind wasserstein");
            }
            if a.m.is_none() || a.v.is_none() {
                return usage("--kind moment needs --m and --v");
            }
            if sweep_var == Some(SweepVar::Delta) {
                return usage("a delta sweep needs --kind wasserstein");
            }
        }
        BallKind::Wasserstein => {
            if a.m.is_some() || a.v.is_some() {
                return usage("--m and --v apply to --kind moment");
            }
            if a.benchmark.is_none() {
                return usage("--kind wasserstein needs --benchmark");
            }
            if a.delta.is_none() && sweep_var != Some(SweepVar::Delta) {
                return usage("--kind wasserstein needs --delta");
            }
        }
    }
    let swept_target = matches!(sweep_var, Some(SweepVar::T) | Some(SweepVar::Alpha));
    let given = usize::from(a.t.is_some()) + usize::from(a.alpha.is_some());
    if swept_target && given > 0 {
        return usage("the swept variable replaces --t and --alpha");
    }
    if !swept_target && given != 1 {
        return usage("give exactly one of --t and --alpha");
    }
    if sweep_var == Some(SweepVar::Delta) && a.delta.is_some() {
        return usage("the delta sweep replaces --delta");
    }
    let benchmark = match &a.benchmark {
        Some(spec) => Some(spec.clone().resolve()?),
        None => None,
    };
    let spec_for = |p: f64, delta: f64| -> Result<UncertaintySpec, Failure> {
        Ok(match a.kind {
            BallKind::Moment => UncertaintySpec::moment(p, a.m.unwrap_or_default(), a.v.unwrap_or_default())?,
            BallKind::Wasserstein => UncertaintySpec::wasserstein(
                p,
                delta,
                benchmark.clone().expect("benchmark checked above"),
            )?,
        })
    };
    let delta = a.delta.unwrap_or(0.0);
    match &a.sweep {
        None => {
            let spec = spec_for(a.p, delta)?;
            Ok(Output::Record(match (a.t, a.alpha) {
                (Some(t), _) => {
                    let r = worst_mean_excess(&spec, t)?;
                    Record::default()
                        .num("value", r.value)
                        .interval("maximizer", r.optimizer.lo, r.optimizer.hi)
                }
                (None, Some(alpha)) => Record::default().num("value", worst_es(&spec, alpha)?),
                (None, None) => unreachable!("target checked above"),
            }))
        }
        Some(sweep) => {
            let mut rows = Vec::with_capacity(sweep.points);
            for x in sweep.grid() {
                let (p, d) = match sweep.var {
                    SweepVar::P => (x, delta),
                    SweepVar::Delta => (a.p, x),
                    _ => (a.p, delta),
                };
                let spec = spec_for(p, d)?;
                let value = match sweep.var {
                    SweepVar::T => worst_mean_excess(&spec, x)?.value,
                    SweepVar::Alpha => worst_es(&spec, x)?,
                    _ => match (a.t, a.alpha) {
                        (Some(t), _) => worst_mean_excess(&spec, t)?.value,
                        (None, Some(alpha)) => worst_es(&spec, alpha)?,
                        (None, None) => unreachable!("target checked above"),
                    },
                };
                rows.push(vec![x, value]);
            }
            Ok(Output::Curve(Curve {
                columns: vec![sweep.var.name(), "value"],
                rows,
            }))
        }
    }
}

fn run_oce(a: &OceArgs) -> Result<Output, Failure> {
    let model: LossModel = a.model.clone().resolve()?;
    let bounded = match a.clamp {
        Some((lo, hi)) => BoundedModel::clamped(model, lo, hi)?,
        None => BoundedModel::new(&model)?,
    };
    if a.reverse {
        if a.beta.is_some() {
            return usage("--reverse takes --t, not --beta");
        }
        let Some(t) = a.t else {
            return usage("--reverse needs --t");
        };
        let r = oce::expected_kernel_via_reverse(&bounded, &a.kernel, t)?;
        Ok(Output::Record(Record::default().num("value", r.value).num("beta", r.optimizer)))
    } else {
        if a.t.is_some() {
            return usage("--t applies to --reverse");
        }
        let Some(beta) = a.beta else {
            return usage("oce needs --beta (or --reverse --t)");
        };
        let r = oce::oce(&bounded, &a.kernel, beta)?;
        Ok(Output::Record(Record::default().num("value", r.value).num("minimizer", r.optimizer)))
    }
}

fn run_analyze(a: &AnalyzeArgs, format: Format, digits: usize) -> Result<Output, Failure> {
    if a.t_points < 2 && a.t_grid.is_empty() {
        return usage("--t-points must be at least 2");
    }
    let sample = EmpiricalSample::from_file(&a.file)?;
    let mut opts = AnalyzeOptions {
        p: a.p,
        t_points: a.t_points,
        ..AnalyzeOptions::default()
    };
    if !a.families.is_empty() {
        opts.families = a.families.clone();
    }
    if !a.delta_grid.is_empty() {
        opts.delta_multipliers = a.delta_grid.clone();
    }
    if !a.t_grid.is_empty() {
        opts.t_grid = Some(a.t_grid.clone());
    }
    let label = match &a.label {
        Some(l) => l.clone(),
        None => a
            .file
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_else(|| a.file.display().to_string()),
    };
    let report = calibration::analyze(&sample, &label, &opts)?;
    Ok(Output::Text(match format {
        Format::Table => report.to_table(digits),
        Format::Csv => report.to_csv(digits),
        Format::Json => report.to_json(),
    }))
}
