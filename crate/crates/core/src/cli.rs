//! The `escort` command-line front end.
//!
//! Exit status: 0 on success, 1 on domain or input errors (and when `verify`
//! finds a failing check), 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::dist::{Density, Distribution, GriddedDensity, ParamPair};
use crate::error::Error;
use crate::escort::escort;
use crate::io::{dist_to_csv, dist_to_json, num, object, read_distribution, render_csv, render_json, scalar_json, to_json};
use crate::measures::{
    al_entropy, al_renyi_divergence_developed, al_tsallis_divergence_developed, al_divergence, Family,
};
use crate::oracle::{verify, SweepConfig, VerifyConfig};
use crate::qgaussian::{solve_beta, GenGaussian, Support};
use crate::twolevel::TwoLevelState;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "escort", version, about = "Two-parameter escort entropies, generalized Gaussians and verification oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// (a, lambda)-entropy of a distribution file.
    Entropy(EntropyArgs),
    /// (a, lambda)-divergence between two distribution files.
    Divergence(DivergenceArgs),
    /// Escort distribution of a given order.
    Escort(EscortArgs),
    /// Generalized Gaussian from a moment or inverse temperature.
    Maxent(MaxentArgs),
    /// Two-level system quantities.
    TwoLevel(TwoLevelArgs),
    /// CSV table over one parameter.
    Sweep(SweepArgs),
    /// Run all brute-force checks.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Renyi,
    Tsallis,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Renyi => Family::Renyi,
            FamilyArg::Tsallis => Family::Tsallis,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Emit {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Form {
    Escort,
    Developed,
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EntropyArgs {
    #[arg(long)]
    dist: PathBuf,
    /// Read CSV input as a gridded density.
    #[arg(long)]
    grid: bool,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Renyi)]
    family: FamilyArg,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DivergenceArgs {
    #[arg(long)]
    f: PathBuf,
    #[arg(long)]
    g: PathBuf,
    #[arg(long)]
    grid: bool,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Renyi)]
    family: FamilyArg,
    #[arg(long, value_enum, default_value_t = Form::Escort)]
    form: Form,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct EscortArgs {
    #[arg(long)]
    dist: PathBuf,
    #[arg(long)]
    grid: bool,
    #[arg(long)]
    order: f64,
    #[arg(long, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
#[command(group(ArgGroup::new("target").required(true).args(["moment", "beta"])))]
struct MaxentArgs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    moment: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Grid points; JSON output includes the grid only when given.
    #[arg(long)]
    grid_n: Option<usize>,
    #[arg(long, default_value_t = 1e-6)]
    tail_bound: f64,
    #[arg(long, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
    #[command(flatten)]
    output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CurveVar {
    M,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
#[command(group(ArgGroup::new("state").args(["beta", "p", "m"])))]
struct TwoLevelArgs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    /// Emit a CSV curve over m instead of a single state.
    #[arg(long, value_enum, conflicts_with = "state")]
    curve: Option<CurveVar>,
    #[arg(long, default_value_t = 0.01, requires = "curve")]
    from: f64,
    #[arg(long, default_value_t = 0.99, requires = "curve")]
    to: f64,
    #[arg(long, default_value_t = 0.01, requires = "curve")]
    step: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Target {
    TwoLevel,
    Maxent,
    Entropy,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    #[arg(long, value_enum)]
    target: Target,
    /// Swept parameter: m, p, beta, a, lambda (two-level); beta, moment, a,
    /// lambda, p (maxent); a, lambda (entropy).
    #[arg(long)]
    param: String,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long)]
    step: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Moment order (maxent) or excited-state probability (two-level).
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    moment: Option<f64>,
    #[arg(long)]
    dist: Option<PathBuf>,
    #[arg(long)]
    grid: bool,
    #[arg(long, default_value_t = 20001)]
    grid_n: usize,
    #[arg(long, default_value_t = 1e-6)]
    tail_bound: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<(String, i32), Failure>;

fn params(a: f64, lambda: f64) -> Result<ParamPair, Failure> {
    Ok(ParamPair::new(a, lambda)?)
}

fn entropy_cmd(args: &EntropyArgs) -> Outcome {
    let f = read_distribution(&args.dist, args.grid)?;
    let v = al_entropy(args.family.into(), &f, params(args.a, args.lambda)?)?;
    Ok((render_json(&scalar_json(v)), EXIT_OK))
}

fn divergence_cmd(args: &DivergenceArgs) -> Outcome {
    let f = read_distribution(&args.f, args.grid)?;
    let g = read_distribution(&args.g, args.grid)?;
    let pp = params(args.a, args.lambda)?;
    let v = match (args.form, args.family) {
        (Form::Escort, fam) => al_divergence(fam.into(), &f, &g, pp)?,
        (Form::Developed, FamilyArg::Renyi) => al_renyi_divergence_developed(&f, &g, pp)?,
        (Form::Developed, FamilyArg::Tsallis) => al_tsallis_divergence_developed(&f, &g, pp)?,
    };
    Ok((render_json(&scalar_json(v)), EXIT_OK))
}

fn escort_cmd(args: &EscortArgs) -> Outcome {
    let f = read_distribution(&args.dist, args.grid)?;
    let e: Distribution = escort(&f, args.order)?;
    let text = match args.emit {
        Emit::Json => render_json(&dist_to_json(&e)),
        Emit::Csv => dist_to_csv(&e),
    };
    Ok((text, EXIT_OK))
}

fn gaussian(pp: ParamPair, p: f64, beta: Option<f64>, moment: Option<f64>) -> Result<GenGaussian, Failure> {
    match (beta, moment) {
        (Some(b), _) => Ok(GenGaussian::new(pp, p, b)?),
        (None, Some(m)) => Ok(solve_beta(pp, p, m)?),
        (None, None) => Err(Failure::Usage("one of --beta or --moment is required".into())),
    }
}

fn support_json(s: Support) -> Value {
    match s {
        Support::Compact { lo, hi } => object(vec![("kind", "compact".into()), ("lo", num(lo)), ("hi", num(hi))]),
        Support::FullLine => object(vec![("kind", "full-line".into())]),
    }
}

fn maxent_cmd(args: &MaxentArgs) -> Outcome {
    let g = gaussian(params(args.a, args.lambda)?, args.p, args.beta, args.moment)?;
    let text = match args.emit {
        Emit::Json => {
            let mut entries = vec![
                ("a", num(args.a)),
                ("lambda", num(args.lambda)),
                ("p", num(args.p)),
                ("beta", num(g.beta())),
                ("z", num(g.z())),
                ("norm", num(g.norm())),
                ("moment", num(g.moment())),
                ("support", support_json(g.support())),
            ];
            if let Some(n) = args.grid_n {
                entries.push(("grid", dist_to_json(&g.to_gridded(n, args.tail_bound)?.into())));
            }
            render_json(&object(entries))
        }
        Emit::Csv => {
            let grid = g.to_gridded(args.grid_n.unwrap_or(2001), args.tail_bound)?;
            let rows: Vec<Vec<f64>> = (0..grid.n()).map(|i| vec![grid.point(i), grid.values()[i]]).collect();
            render_csv(&["x", "density"], &rows)
        }
    };
    Ok((text, EXIT_OK))
}

fn state_row(s: &TwoLevelState) -> [f64; 3] {
    [s.m(), s.entropy(), s.inverse_temperature()]
}

fn two_level_cmd(args: &TwoLevelArgs) -> Outcome {
    let pp = params(args.a, args.lambda)?;
    if args.curve.is_some() {
        let rows = grid_points(args.from, args.to, args.step)?
            .into_iter()
            .map(|m| Ok(state_row(&TwoLevelState::from_m(pp, m)?).to_vec()))
            .collect::<Result<Vec<_>, Failure>>()?;
        return Ok((render_csv(&["m", "entropy", "inverse_temperature"], &rows), EXIT_OK));
    }
    let s = match (args.beta, args.p, args.m) {
        (Some(b), _, _) => TwoLevelState::from_beta(pp, b)?,
        (_, Some(p), _) => TwoLevelState::from_p(pp, p)?,
        (_, _, Some(m)) => TwoLevelState::from_m(pp, m)?,
        _ => return Err(Failure::Usage("one of --beta, --p, --m or --curve is required".into())),
    };
    let heat = s.heat_capacity().unwrap_or(f64::NAN);
    let json = object(vec![
        ("a", num(args.a)),
        ("lambda", num(args.lambda)),
        ("p_exc", num(s.p_exc())),
        ("m", num(s.m())),
        ("entropy", num(s.entropy())),
        ("inverse_temperature", num(s.inverse_temperature())),
        ("heat_capacity", num(heat)),
    ]);
    Ok((render_json(&json), EXIT_OK))
}

/// `from + i * step` for `i = 0..=N`, with the last point exactly `to`.
fn grid_points(from: f64, to: f64, step: f64) -> Result<Vec<f64>, Failure> {
    if !(from.is_finite() && to.is_finite() && step.is_finite() && step > 0.0 && to >= from) {
        return Err(Failure::Usage(format!("invalid range {from}..{to} step {step}")));
    }
    let n = ((to - from) / step).round();
    if (from + n * step - to).abs() > 1e-9 * to.abs().max(1.0) {
        return Err(Failure::Usage(format!("range {from}..{to} is not a multiple of step {step}")));
    }
    let n = n as usize;
    Ok((0..=n).map(|i| if i == n { to } else { from + i as f64 * step }).collect())
}

// Drops the leading swept-parameter column when it duplicates an output column.
fn table(header: &[&str], mut rows: Vec<Vec<f64>>, drop_first: bool) -> String {
    if !drop_first {
        return render_csv(header, &rows);
    }
    for row in &mut rows {
        row.remove(0);
    }
    render_csv(&header[1..], &rows)
}

fn unknown_param(target: &str, name: &str) -> Failure {
    Failure::Usage(format!("cannot sweep {name:?} for target {target}"))
}

fn sweep_two_level(args: &SweepArgs, xs: &[f64]) -> Outcome {
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        let (a, lambda) = match args.param.as_str() {
            "a" => (x, args.lambda),
            "lambda" => (args.a, x),
            _ => (args.a, args.lambda),
        };
        let pp = params(a, lambda)?;
        let s = match args.param.as_str() {
            "m" => TwoLevelState::from_m(pp, x)?,
            "p" => TwoLevelState::from_p(pp, x)?,
            "beta" => TwoLevelState::from_beta(pp, x)?,
            "a" | "lambda" => match (args.beta, args.p, args.m) {
                (Some(b), _, _) => TwoLevelState::from_beta(pp, b)?,
                (_, Some(p), _) => TwoLevelState::from_p(pp, p)?,
                (_, _, Some(m)) => TwoLevelState::from_m(pp, m)?,
                _ => return Err(Failure::Usage("fix the state with --beta, --p or --m".into())),
            },
            other => return Err(unknown_param("two-level", other)),
        };
        rows.push(vec![x, s.p_exc(), s.m(), s.entropy(), s.inverse_temperature()]);
    }
    let header = [args.param.as_str(), "p_exc", "m", "entropy", "inverse_temperature"];
    let swept_is_output = matches!(args.param.as_str(), "p" | "m");
    Ok((table(&header, rows, swept_is_output), EXIT_OK))
}

// Quadrature of the normalized closed-form density over its truncated grid.
fn grid_mass(g: &GenGaussian, n: usize, tail_bound: f64) -> Result<f64, Failure> {
    let half = g.truncation_half_width(tail_bound)?;
    let grid = GriddedDensity::raw(-half, half, vec![0.0; n])?;
    let values: Vec<f64> = (0..n).map(|i| g.density(grid.point(i))).collect();
    Ok(grid.integrate(&values)?)
}

fn sweep_maxent(args: &SweepArgs, xs: &[f64]) -> Outcome {
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        let (mut a, mut lambda, mut p) = (args.a, args.lambda, args.p.unwrap_or(2.0));
        let (mut beta, mut moment) = (args.beta, args.moment);
        match args.param.as_str() {
            "a" => a = x,
            "lambda" => lambda = x,
            "p" => p = x,
            "beta" => (beta, moment) = (Some(x), None),
            "moment" => (beta, moment) = (None, Some(x)),
            other => return Err(unknown_param("maxent", other)),
        }
        let g = gaussian(params(a, lambda)?, p, beta, moment)?;
        rows.push(vec![x, g.beta(), g.z(), g.moment(), grid_mass(&g, args.grid_n, args.tail_bound)?]);
    }
    let header = [args.param.as_str(), "beta", "z", "moment", "mass"];
    let swept_is_output = matches!(args.param.as_str(), "beta" | "moment");
    Ok((table(&header, rows, swept_is_output), EXIT_OK))
}

fn sweep_entropy(args: &SweepArgs, xs: &[f64]) -> Outcome {
    let path = args
        .dist
        .as_ref()
        .ok_or_else(|| Failure::Usage("--dist is required for target entropy".into()))?;
    let f = read_distribution(path, args.grid)?;
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        let pp = match args.param.as_str() {
            "a" => params(x, args.lambda)?,
            "lambda" => params(args.a, x)?,
            other => return Err(unknown_param("entropy", other)),
        };
        rows.push(vec![x, al_entropy(Family::Renyi, &f, pp)?, al_entropy(Family::Tsallis, &f, pp)?]);
    }
    let header = [args.param.as_str(), "renyi", "tsallis"];
    Ok((render_csv(&header, &rows), EXIT_OK))
}

fn sweep_cmd(args: &SweepArgs) -> Outcome {
    let xs = grid_points(args.from, args.to, args.step)?;
    match args.target {
        Target::TwoLevel => sweep_two_level(args, &xs),
        Target::Maxent => sweep_maxent(args, &xs),
        Target::Entropy => sweep_entropy(args, &xs),
    }
}

fn verify_cmd(args: &VerifyArgs) -> Outcome {
    let cfg = VerifyConfig {
        sweep: SweepConfig {
            trials: args.trials,
            seed: args.seed,
            ..SweepConfig::default()
        },
        ..VerifyConfig::default()
    };
    if args.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let report = verify(&cfg)?;
    let code = if report.passed { EXIT_OK } else { EXIT_DOMAIN };
    Ok((render_json(&to_json(&report)?), code))
}

fn out_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Entropy(a) => a.output.out.as_ref(),
        Command::Divergence(a) => a.output.out.as_ref(),
        Command::Escort(a) => a.output.out.as_ref(),
        Command::Maxent(a) => a.output.out.as_ref(),
        Command::TwoLevel(a) => a.output.out.as_ref(),
        Command::Sweep(a) => a.output.out.as_ref(),
        Command::Verify(a) => a.output.out.as_ref(),
    }
}

fn error_json(message: &str) -> String {
    render_json(&object(vec![("error", Value::from(message))]))
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the exit status. Results go to `out` (or the `--out` file),
/// diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match &cli.command {
        Command::Entropy(a) => entropy_cmd(a),
        Command::Divergence(a) => divergence_cmd(a),
        Command::Escort(a) => escort_cmd(a),
        Command::Maxent(a) => maxent_cmd(a),
        Command::TwoLevel(a) => two_level_cmd(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    };
    match outcome {
        Ok((text, code)) => {
            let written = match out_path(&cli.command) {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    let _ = err.write_all(error_json(&msg).as_bytes());
                    EXIT_DOMAIN
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = err.write_all(error_json(&msg).as_bytes());
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = err.write_all(error_json(&e.to_string()).as_bytes());
            EXIT_DOMAIN
        }
    }
}
