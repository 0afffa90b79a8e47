//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on configuration errors, 2 on numerical
//! failures. `ADER_ADR_THREADS` caps the worker threads (0 = automatic).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::convergence::{run_study, StudyConfig, DEFAULT_MESHES, DEFAULT_REFERENCE_CELLS};
use crate::error::{Error, Result};
use crate::grid::{project_initial, DEFAULT_QUADRATURE_POINTS};
use crate::io::{fmt_f64, write_atomic};
use crate::problems::{
    exact_cell_averages, select_dt, solve_benchmark, Benchmark, BenchmarkId, ErrorAccumulator,
    ErrorNorms, NormMode, TimeStep,
};
use crate::schemes::{SchemeKind, StepParams};
use crate::solver::{run, RunOptions};
use crate::specfile::load_spec;
use crate::stability::{
    amplification_closed_form, amplification_curve, check_orthotope, sample_region,
    write_curve_csv, write_region_csv, AxisRange, Orthotope, RegionRanges, DEFAULT_N_THETA,
};

pub const THREADS_ENV: &str = "ADER_ADR_THREADS";

#[derive(Debug, Parser)]
#[command(name = "ader-adr", version, about = "ADER finite-volume solver for 1D advection-diffusion-reaction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem and write the final field.
    Solve(SolveArgs),
    /// Run a mesh-refinement study.
    Converge(ConvergeArgs),
    /// Scan the amplification factor.
    Stability(StabilityArgs),
    /// Print the amplification factor at one point.
    Amp(AmpArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    pub benchmark: Option<String>,
    /// Custom problem description.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value = "ader")]
    pub scheme: String,
    /// Overrides the mesh of the benchmark or spec file.
    #[arg(long)]
    pub cells: Option<usize>,
    #[arg(long, value_enum, default_value_t = NormArg::Sup)]
    pub norm_mode: NormArg,
    /// Test 1.2: compare against the exponentially decayed step.
    #[arg(long)]
    pub decayed_step: bool,
    /// Field CSV (`x,q`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub benchmark: String,
    #[arg(long, default_value = "ader")]
    pub scheme: String,
    /// Comma-separated, strictly increasing cell counts.
    #[arg(long, value_delimiter = ',')]
    pub meshes: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = NormArg::Sup)]
    pub norm_mode: NormArg,
    #[arg(long, default_value_t = DEFAULT_REFERENCE_CELLS)]
    pub reference_cells: usize,
    #[arg(long)]
    pub decayed_step: bool,
    /// Error table CSV; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON summary of the study.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Sup,
    Final,
}

impl From<NormArg> for NormMode {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Sup => NormMode::SupOverTime,
            NormArg::Final => NormMode::FinalTime,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StabilityMode {
    Orthotope,
    Region,
    Curve,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[arg(long, value_enum)]
    pub mode: StabilityMode,
    #[arg(long, allow_hyphen_values = true)]
    pub c_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub d_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r_min: Option<f64>,
    /// Samples per axis of the orthotope.
    #[arg(long, default_value_t = 21)]
    pub samples: usize,
    /// Region axis `lo:hi:n`, or a single value for curves.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(long, default_value_t = DEFAULT_N_THETA)]
    pub n_theta: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AmpArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub d: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub r: f64,
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_numerical() {
        2
    } else {
        1
    }
}

fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().map_err(|_| {
            Error::Config(format!("{THREADS_ENV} must be a non-negative integer, got '{v}'"))
        }),
        _ => Ok(0),
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = thread_count().and_then(|n| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("cannot start thread pool: {e}")))?;
        let buf = pool.install(|| {
            let mut buf = Vec::new();
            execute(&cli.command, &mut buf).map(|()| buf)
        })?;
        Ok(stdout.write_all(&buf)?)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(command: &Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Solve(a) => solve(a, stdout),
        Command::Converge(a) => converge(a, stdout),
        Command::Stability(a) => stability(a, stdout),
        Command::Amp(a) => amp(a, stdout),
    }
}

fn scheme(name: &str) -> Result<SchemeKind> {
    SchemeKind::from_name(name).ok_or_else(|| {
        let known: Vec<_> = SchemeKind::ALL.iter().map(|s| s.name()).collect();
        Error::Config(format!("unknown scheme '{name}' (known: {})", known.join(", ")))
    })
}

fn emit(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => Ok(stdout.write_all(bytes)?),
    }
}

fn print_step(out: &mut dyn Write, cells: usize, steps: usize, step: &TimeStep) -> Result<()> {
    let StepParams { dt, c, d, r } = step.params;
    writeln!(out, "cells = {cells}")?;
    writeln!(out, "steps = {steps}")?;
    writeln!(out, "dt = {}", fmt_f64(dt))?;
    writeln!(out, "c = {}", fmt_f64(c))?;
    writeln!(out, "d = {}", fmt_f64(d))?;
    writeln!(out, "r = {}", fmt_f64(r))?;
    Ok(())
}

fn print_errors(out: &mut dyn Write, e: &ErrorNorms) -> Result<()> {
    writeln!(out, "err_l1 = {}", fmt_f64(e.abs.l1))?;
    writeln!(out, "err_l2 = {}", fmt_f64(e.abs.l2))?;
    writeln!(out, "err_linf = {}", fmt_f64(e.abs.linf))?;
    Ok(())
}

fn solve(a: &SolveArgs, stdout: &mut dyn Write) -> Result<()> {
    let scheme = scheme(&a.scheme)?;
    let mode = NormMode::from(a.norm_mode);
    let mut report = Vec::new();
    let (field, grid) = if let Some(name) = &a.benchmark {
        let id: BenchmarkId = name.parse()?;
        let bench = Benchmark::with_options(id, a.cells.unwrap_or(128), a.decayed_step)?;
        let run = solve_benchmark(&bench, scheme, mode)?;
        print_step(&mut report, bench.n_cells(), run.steps, &run.step)?;
        if let Some(e) = &run.errors {
            print_errors(&mut report, e)?;
        }
        (run.field, bench.spec.grid)
    } else {
        let path = a.spec.as_ref().expect("clap requires --benchmark or --spec");
        let mut problem = load_spec(path)?;
        if let Some(n) = a.cells {
            problem.spec = problem.spec.with_cells(n)?;
        }
        let spec = &problem.spec;
        let step = match problem.dt {
            Some(dt) => TimeStep {
                dt,
                params: StepParams::new(spec, problem.alpha_ref, dt),
            },
            None => select_dt(spec, &problem.bounds, problem.alpha_ref)?,
        };
        let mut acc = spec
            .exact
            .as_ref()
            .map(|f| (f.clone(), ErrorAccumulator::new(&spec.grid, mode)));
        let field = project_initial(spec, DEFAULT_QUADRATURE_POINTS)?;
        let options = RunOptions {
            dt: step.dt,
            d_max: problem.bounds.d_max,
        };
        let summary = run(spec, scheme, field, options, |f| {
            if let Some((exact, acc)) = acc.as_mut() {
                if mode == NormMode::SupOverTime || f.time == spec.t_end {
                    acc.record(f.interior(), &exact_cell_averages(&spec.grid, exact.as_ref(), f.time))?;
                }
            }
            Ok(())
        })?;
        print_step(&mut report, spec.grid.n_cells, summary.steps, &step)?;
        if let Some((_, acc)) = acc {
            print_errors(&mut report, &acc.finish()?)?;
        }
        (summary.field, spec.grid)
    };
    if let Some(out) = &a.out {
        let mut csv = Vec::new();
        field.write_csv(&grid, &mut csv)?;
        write_atomic(out, &csv)?;
    }
    stdout.write_all(&report)?;
    Ok(())
}

fn converge(a: &ConvergeArgs, stdout: &mut dyn Write) -> Result<()> {
    let id: BenchmarkId = a.benchmark.parse()?;
    let mut config = StudyConfig::new(id, scheme(&a.scheme)?);
    if let Some(meshes) = &a.meshes {
        config.meshes = meshes.clone();
    } else if !id.has_exact_solution() {
        config.meshes = DEFAULT_MESHES
            .iter()
            .copied()
            .filter(|&n| n < a.reference_cells)
            .collect();
    }
    config.mode = a.norm_mode.into();
    config.reference_cells = a.reference_cells;
    config.decayed_step = a.decayed_step;
    let study = run_study(&config)?;
    let csv = study.to_csv()?;
    let mut summary = serde_json::to_vec_pretty(&study.summary())
        .map_err(|e| Error::Consistency(format!("summary serialization: {e}")))?;
    summary.push(b'\n');
    if let Some(p) = &a.summary {
        write_atomic(p, &summary)?;
    }
    emit(a.out.as_deref(), &csv, stdout)
}

fn parse_axis(flag: &str, text: &str) -> Result<AxisRange> {
    let bad = || Error::Config(format!("--{flag}: expected 'lo:hi:n' or a number, got '{text}'"));
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(AxisRange::point(v.trim().parse().map_err(|_| bad())?)),
        [lo, hi, n] => Ok(AxisRange {
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
            n: n.trim().parse().map_err(|_| bad())?,
        }),
        _ => Err(bad()),
    }
}

fn required<'a, T>(flag: &str, v: &'a Option<T>, mode: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::Config(format!("--{flag} is required for --mode {mode}")))
}

fn stability(a: &StabilityArgs, stdout: &mut dyn Write) -> Result<()> {
    match a.mode {
        StabilityMode::Orthotope => {
            let bounds = Orthotope::new(
                *required("c-max", &a.c_max, "orthotope")?,
                *required("d-max", &a.d_max, "orthotope")?,
                *required("r-min", &a.r_min, "orthotope")?,
            )?;
            let n = a.samples;
            let report = check_orthotope(&bounds, (n, n, n), a.n_theta)?;
            let mut json = serde_json::to_vec_pretty(&report)
                .map_err(|e| Error::Consistency(format!("report serialization: {e}")))?;
            json.push(b'\n');
            emit(a.out.as_deref(), &json, stdout)
        }
        StabilityMode::Region => {
            let ranges = RegionRanges {
                c: parse_axis("c", required("c", &a.c, "region")?)?,
                d: parse_axis("d", required("d", &a.d, "region")?)?,
                r: parse_axis("r", required("r", &a.r, "region")?)?,
            };
            let samples = sample_region(&ranges, a.n_theta)?;
            let mut csv = Vec::new();
            write_region_csv(&samples, &mut csv)?;
            emit(a.out.as_deref(), &csv, stdout)
        }
        StabilityMode::Curve => {
            let value = |flag: &str, v: &Option<String>| -> Result<f64> {
                let text = required(flag, v, "curve")?;
                text.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("--{flag}: expected a number, got '{text}'")))
            };
            let samples = amplification_curve(
                value("c", &a.c)?,
                value("d", &a.d)?,
                value("r", &a.r)?,
                a.n_theta,
            )?;
            let mut csv = Vec::new();
            write_curve_csv(&samples, &mut csv)?;
            emit(a.out.as_deref(), &csv, stdout)
        }
    }
}

fn amp(a: &AmpArgs, stdout: &mut dyn Write) -> Result<()> {
    for (name, v) in [("theta", a.theta), ("c", a.c), ("d", a.d), ("r", a.r)] {
        if !v.is_finite() {
            return Err(Error::Config(format!("--{name} must be finite")));
        }
    }
    let z = amplification_closed_form(a.theta, a.c, a.d, a.r);
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    writeln!(stdout, "A = {} {sign} {}i", fmt_f64(z.re), fmt_f64(z.im.abs()))?;
    writeln!(stdout, "|A| = {}", fmt_f64(z.norm()))?;
    Ok(())
}
