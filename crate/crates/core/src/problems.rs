//! Benchmark problems, exact solutions, time-step selection and error norms.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{
    cell_averages, project_initial, BoundaryCondition, DiffusionModel, Field, Grid1D,
    ProblemSpec, DEFAULT_QUADRATURE_POINTS,
};
use crate::schemes::{SchemeKind, StepParams};
use crate::solver::{run, RunOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BenchmarkId {
    Test1_1,
    Test1_2,
    Test2_1,
    Test2_2,
    Test3,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 5] = [
        BenchmarkId::Test1_1,
        BenchmarkId::Test1_2,
        BenchmarkId::Test2_1,
        BenchmarkId::Test2_2,
        BenchmarkId::Test3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchmarkId::Test1_1 => "test1_1",
            BenchmarkId::Test1_2 => "test1_2",
            BenchmarkId::Test2_1 => "test2_1",
            BenchmarkId::Test2_2 => "test2_2",
            BenchmarkId::Test3 => "test3",
        }
    }

    pub fn has_exact_solution(self) -> bool {
        self != BenchmarkId::Test2_2
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BenchmarkId::ALL
            .into_iter()
            .find(|b| b.name() == s.to_ascii_lowercase().replace(['.', '-'], "_"))
            .ok_or_else(|| Error::Config(format!("unknown benchmark '{s}'")))
    }
}

/// Active time-step bounds; `None` leaves a parameter unconstrained.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct StepBounds {
    pub c_max: Option<f64>,
    pub d_max: Option<f64>,
    pub r_min: Option<f64>,
}

impl StepBounds {
    pub fn new(c_max: Option<f64>, d_max: Option<f64>, r_min: Option<f64>) -> Self {
        Self { c_max, d_max, r_min }
    }
}

#[derive(Debug, Clone)]
pub struct Benchmark {
    pub id: BenchmarkId,
    pub spec: ProblemSpec,
    pub bounds: StepBounds,
    /// Representative diffusion coefficient for the diffusion number.
    pub alpha_ref: f64,
}

const T21_ALPHA: f64 = 1e-5;
const T22_ALPHA: f64 = 1e-5;

fn test1_1_exact(x: f64, t: f64) -> f64 {
    (-2.0 * (x - t).powi(2) - t).exp()
}

fn test1_2_profile(s: f64) -> f64 {
    if (0.125..=0.5).contains(&s) {
        1.0
    } else {
        0.0
    }
}

fn test2_1_exact(x: f64, t: f64) -> f64 {
    ((-T21_ALPHA * PI * PI - 5.0) * t).exp() * (PI * (x - 10.0 * t)).sin()
}

fn test3_exact(x: f64, t: f64) -> f64 {
    let a = 2.0 * t + 2.0;
    a.sinh() / (a.cosh() - (SQRT_2 * (x - 1.0)).sin())
}

impl Benchmark {
    pub fn new(id: BenchmarkId, n_cells: usize) -> Result<Self> {
        Self::with_options(id, n_cells, false)
    }

    /// `decayed_step` multiplies the Test 1.2 exact solution by `exp(-t)`.
    pub fn with_options(id: BenchmarkId, n_cells: usize, decayed_step: bool) -> Result<Self> {
        let bench = match id {
            BenchmarkId::Test1_1 => Benchmark {
                id,
                spec: ProblemSpec {
                    lambda: 1.0,
                    beta: -1.0,
                    diffusion: DiffusionModel::Zero,
                    q0: Arc::new(|x| (-2.0 * x * x).exp()),
                    bc: BoundaryCondition::DirichletExact,
                    grid: Grid1D::new(0.0, 2.0, n_cells)?,
                    t_end: 1.0,
                    exact: Some(Arc::new(test1_1_exact)),
                },
                bounds: StepBounds::new(Some(1.0), None, Some(-1.0)),
                alpha_ref: 0.0,
            },
            BenchmarkId::Test1_2 => {
                let exact: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync> = if decayed_step {
                    Arc::new(|x, t| test1_2_profile(x - 0.5 * t) * (-t).exp())
                } else {
                    Arc::new(|x, t| test1_2_profile(x - 0.5 * t))
                };
                Benchmark {
                    id,
                    spec: ProblemSpec {
                        lambda: 0.5,
                        beta: -1.0,
                        diffusion: DiffusionModel::Zero,
                        q0: Arc::new(test1_2_profile),
                        bc: BoundaryCondition::DirichletExact,
                        grid: Grid1D::new(0.0, 1.5, n_cells)?,
                        t_end: 1.0,
                        exact: Some(exact),
                    },
                    bounds: StepBounds::new(Some(0.5), None, Some(-1.0)),
                    alpha_ref: 0.0,
                }
            }
            BenchmarkId::Test2_1 => Benchmark {
                id,
                spec: ProblemSpec {
                    lambda: 10.0,
                    beta: -5.0,
                    diffusion: DiffusionModel::Constant(T21_ALPHA),
                    q0: Arc::new(|x| (PI * x).sin()),
                    bc: BoundaryCondition::DirichletExact,
                    grid: Grid1D::new(-1.0, 1.0, n_cells)?,
                    t_end: 1.0,
                    exact: Some(Arc::new(test2_1_exact)),
                },
                bounds: StepBounds::new(Some(0.1), Some(0.25), Some(-0.25)),
                alpha_ref: T21_ALPHA,
            },
            BenchmarkId::Test2_2 => Benchmark {
                id,
                spec: ProblemSpec {
                    lambda: 10.0,
                    beta: -5.0,
                    diffusion: DiffusionModel::SpaceTime {
                        alpha: Arc::new(|x, t| T22_ALPHA * (x * (t - 1.0).powi(2)).exp()),
                        dt_alpha: Some(Arc::new(|x, t| {
                            T22_ALPHA * (x * (t - 1.0).powi(2)).exp() * 2.0 * x * (t - 1.0)
                        })),
                    },
                    q0: Arc::new(|x: f64| x.sin().powi(2).exp()),
                    bc: BoundaryCondition::Periodic,
                    grid: Grid1D::new(0.0, 2.0 * PI, n_cells)?,
                    t_end: 1.0,
                    exact: None,
                },
                bounds: StepBounds::new(Some(0.5), Some(0.25), Some(-0.5)),
                alpha_ref: T22_ALPHA,
            },
            BenchmarkId::Test3 => {
                let mut bench = Benchmark {
                    id,
                    spec: ProblemSpec {
                        lambda: 0.0,
                        beta: 0.0,
                        diffusion: DiffusionModel::StateDependent(Arc::new(|q| 1.0 / q)),
                        q0: Arc::new(|x| test3_exact(x, 0.0)),
                        bc: BoundaryCondition::Periodic,
                        grid: Grid1D::new(-SQRT_2 * PI, SQRT_2 * PI, n_cells)?,
                        t_end: 1.0,
                        exact: Some(Arc::new(test3_exact)),
                    },
                    bounds: StepBounds::new(None, Some(0.25), None),
                    alpha_ref: 0.0,
                };
                bench.alpha_ref = reference_alpha(&bench.spec);
                bench
            }
        };
        bench.spec.validate()?;
        Ok(bench)
    }

    pub fn n_cells(&self) -> usize {
        self.spec.grid.n_cells
    }

    /// Same benchmark on a different mesh.
    pub fn with_cells(&self, n_cells: usize) -> Result<Self> {
        let mut b = self.clone();
        b.spec = self.spec.with_cells(n_cells)?;
        Ok(b)
    }
}

/// Pointwise exact solution.
pub fn exact_solution(bench: &Benchmark, x: f64, t: f64) -> Result<f64> {
    match &bench.spec.exact {
        Some(f) => Ok(f(x, t)),
        None => Err(Error::NoExactSolution(bench.id.to_string())),
    }
}

/// Largest diffusion coefficient seen on a sample of the problem.
///
/// Space-time coefficients are sampled on a 64 x 64 grid of `(x, t)`;
/// state-dependent ones on `alpha(q0(x))` at 256 points.
pub fn reference_alpha(spec: &ProblemSpec) -> f64 {
    let g = &spec.grid;
    match &spec.diffusion {
        DiffusionModel::Zero => 0.0,
        DiffusionModel::Constant(a) => *a,
        DiffusionModel::SpaceTime { alpha, .. } => {
            let mut max = 0.0f64;
            for i in 0..64 {
                let x = g.x_left + g.length() * i as f64 / 63.0;
                for k in 0..64 {
                    max = max.max(alpha(x, spec.t_end * k as f64 / 63.0));
                }
            }
            max
        }
        DiffusionModel::StateDependent(alpha) => (0..256)
            .map(|i| alpha((spec.q0)(g.x_left + g.length() * i as f64 / 255.0)))
            .filter(|a| a.is_finite())
            .fold(0.0, f64::max),
    }
}

/// Time step and the `(c, d, r)` it realizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeStep {
    pub dt: f64,
    pub params: StepParams,
}

/// Largest step keeping every active number inside its bound.
pub fn select_dt(
    spec: &ProblemSpec,
    bounds: &StepBounds,
    alpha_ref: f64,
) -> Result<TimeStep> {
    let dx = spec.grid.dx;
    let mut candidates = Vec::new();
    if let (Some(c_max), true) = (bounds.c_max, spec.lambda != 0.0) {
        candidates.push(c_max * dx / spec.lambda.abs());
    }
    if let (Some(d_max), true) = (bounds.d_max, alpha_ref > 0.0) {
        candidates.push(d_max * dx * dx / alpha_ref);
    }
    if let (Some(r_min), true) = (bounds.r_min, spec.beta < 0.0) {
        candidates.push(r_min / spec.beta);
    }
    let dt = candidates
        .into_iter()
        .filter(|dt| *dt > 0.0 && dt.is_finite())
        .fold(f64::INFINITY, f64::min);
    if !dt.is_finite() {
        return Err(Error::Config(
            "no active time-step constraint for this problem".into(),
        ));
    }
    Ok(TimeStep {
        dt,
        params: StepParams::new(spec, alpha_ref, dt),
    })
}

/// Benchmark-level wrapper around [`select_dt`].
pub fn select_benchmark_dt(bench: &Benchmark) -> Result<TimeStep> {
    select_dt(&bench.spec, &bench.bounds, bench.alpha_ref)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum NormMode {
    /// Maximum over all recorded time levels.
    #[default]
    SupOverTime,
    FinalTime,
}

impl FromStr for NormMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sup" | "sup-over-time" | "sup_over_time" => Ok(NormMode::SupOverTime),
            "final" | "final-time" | "final_time" => Ok(NormMode::FinalTime),
            _ => Err(Error::Config(format!("unknown norm mode '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Norms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

impl Norms {
    /// Discrete `L1`, `L2` and `Linf` norms with cell width `dx`.
    pub fn of(values: &[f64], dx: f64) -> Self {
        let l1 = dx * values.iter().map(|v| v.abs()).sum::<f64>();
        let l2 = (dx * values.iter().map(|v| v * v).sum::<f64>()).sqrt();
        let linf = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Self { l1, l2, linf }
    }

    fn max(self, other: Self) -> Self {
        Self {
            l1: self.l1.max(other.l1),
            l2: self.l2.max(other.l2),
            linf: self.linf.max(other.linf),
        }
    }

    fn ratio(self, other: Self) -> Self {
        Self {
            l1: self.l1 / other.l1,
            l2: self.l2 / other.l2,
            linf: self.linf / other.linf,
        }
    }
}

/// Absolute errors and errors relative to the reference's own norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorNorms {
    pub abs: Norms,
    pub rel: Norms,
}

/// Streams `(numeric, reference)` pairs into `l-infinity in time` norms.
#[derive(Debug, Clone)]
pub struct ErrorAccumulator {
    mode: NormMode,
    dx: f64,
    n_cells: usize,
    err: Norms,
    reference: Norms,
    records: usize,
}

impl ErrorAccumulator {
    pub fn new(grid: &Grid1D, mode: NormMode) -> Self {
        Self {
            mode,
            dx: grid.dx,
            n_cells: grid.n_cells,
            err: Norms::default(),
            reference: Norms::default(),
            records: 0,
        }
    }

    pub fn record(&mut self, numeric: &[f64], reference: &[f64]) -> Result<()> {
        for len in [numeric.len(), reference.len()] {
            if len != self.n_cells {
                return Err(Error::GridMismatch {
                    expected: self.n_cells,
                    found: len,
                });
            }
        }
        let diff: Vec<f64> = numeric.iter().zip(reference).map(|(a, b)| a - b).collect();
        let err = Norms::of(&diff, self.dx);
        let refn = Norms::of(reference, self.dx);
        match self.mode {
            NormMode::SupOverTime => {
                self.err = self.err.max(err);
                self.reference = self.reference.max(refn);
            }
            NormMode::FinalTime => {
                self.err = err;
                self.reference = refn;
            }
        }
        self.records += 1;
        Ok(())
    }

    pub fn finish(&self) -> Result<ErrorNorms> {
        if self.records == 0 {
            return Err(Error::Config("no time levels recorded".into()));
        }
        Ok(ErrorNorms {
            abs: self.err,
            rel: self.err.ratio(self.reference),
        })
    }
}

/// Error norms over a sequence of `(numeric, reference)` interior pairs.
pub fn error_norms<'a, I>(grid: &Grid1D, pairs: I, mode: NormMode) -> Result<ErrorNorms>
where
    I: IntoIterator<Item = (&'a [f64], &'a [f64])>,
{
    let mut acc = ErrorAccumulator::new(grid, mode);
    for (numeric, reference) in pairs {
        acc.record(numeric, reference)?;
    }
    acc.finish()
}

/// Three-point Gauss-Legendre cell averages of `f(., t)`.
pub fn exact_cell_averages(grid: &Grid1D, exact: &(dyn Fn(f64, f64) -> f64 + Send + Sync), t: f64) -> Vec<f64> {
    const NODES: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
    const WEIGHTS: [f64; 3] = [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0];
    grid.centers()
        .map(|xc| {
            NODES
                .iter()
                .zip(WEIGHTS)
                .map(|(s, w)| w * exact(xc + 0.5 * grid.dx * s, t))
                .sum()
        })
        .collect()
}

/// Averages fine cells onto a coarser mesh of the same domain.
pub fn restrict(fine: &[f64], coarse_cells: usize) -> Result<Vec<f64>> {
    if coarse_cells == 0 || fine.len() % coarse_cells != 0 {
        return Err(Error::NonDivisibleMesh {
            coarse: coarse_cells,
            fine: fine.len(),
        });
    }
    let ratio = fine.len() / coarse_cells;
    Ok(fine
        .chunks(ratio)
        .map(|c| c.iter().sum::<f64>() / ratio as f64)
        .collect())
}

/// Final field of a benchmark solved on `fine_cells`.
pub fn reference_solution(bench: &Benchmark, fine_cells: usize, scheme: SchemeKind) -> Result<Field> {
    let fine = bench.with_cells(fine_cells)?;
    Ok(solve_benchmark(&fine, scheme, NormMode::FinalTime)?.field)
}

/// Outcome of a single benchmark solve.
#[derive(Debug, Clone)]
pub struct BenchmarkRun {
    pub field: Field,
    pub step: TimeStep,
    pub steps: usize,
    /// Present when the benchmark has a closed-form solution.
    pub errors: Option<ErrorNorms>,
}

/// Solves a benchmark with its own time-step rule, recording errors
/// against the exact cell averages when a closed form exists.
pub fn solve_benchmark(bench: &Benchmark, scheme: SchemeKind, mode: NormMode) -> Result<BenchmarkRun> {
    let step = select_benchmark_dt(bench)?;
    let spec = &bench.spec;
    let field = project_initial(spec, DEFAULT_QUADRATURE_POINTS)?;
    let options = RunOptions {
        dt: step.dt,
        d_max: bench.bounds.d_max,
    };
    let mut acc = spec
        .exact
        .as_ref()
        .map(|exact| (exact.clone(), ErrorAccumulator::new(&spec.grid, mode)));
    let summary = run(spec, scheme, field, options, |f| {
        if let Some((exact, acc)) = acc.as_mut() {
            if mode == NormMode::SupOverTime || (f.time - spec.t_end).abs() <= 1e-12 * spec.t_end {
                let reference = exact_cell_averages(&spec.grid, exact.as_ref(), f.time);
                acc.record(f.interior(), &reference)?;
            }
        }
        Ok(())
    })?;
    let errors = acc.map(|(_, acc)| acc.finish()).transpose()?;
    Ok(BenchmarkRun {
        field: summary.field,
        step,
        steps: summary.steps,
        errors,
    })
}

/// Interior values and times of every time level of a benchmark solve.
#[derive(Debug, Clone)]
pub struct History {
    pub levels: Vec<Vec<f64>>,
    pub times: Vec<f64>,
    pub step: TimeStep,
}

pub fn solve_history(bench: &Benchmark, scheme: SchemeKind) -> Result<History> {
    let step = select_benchmark_dt(bench)?;
    let field = project_initial(&bench.spec, DEFAULT_QUADRATURE_POINTS)?;
    let options = RunOptions {
        dt: step.dt,
        d_max: bench.bounds.d_max,
    };
    let mut levels = Vec::new();
    let mut times = Vec::new();
    run(&bench.spec, scheme, field, options, |f| {
        levels.push(f.interior().to_vec());
        times.push(f.time);
        Ok(())
    })?;
    Ok(History { levels, times, step })
}

/// Errors of a coarse history against a fine reference history of the same
/// benchmark, restricted conservatively onto the coarse mesh.
///
/// Coarse level `k` is paired with fine level `k * ratio`; the final levels
/// (both at `t_end`) are always paired.
pub fn reference_errors(
    coarse: &History,
    fine: &History,
    grid: &Grid1D,
    mode: NormMode,
) -> Result<ErrorNorms> {
    let n = grid.n_cells;
    let fine_cells = fine.levels.first().map_or(0, Vec::len);
    if fine_cells % n != 0 || fine_cells < n {
        return Err(Error::NonDivisibleMesh {
            coarse: n,
            fine: fine_cells,
        });
    }
    let ratio = fine_cells / n;
    let last_c = coarse.levels.len() - 1;
    let last_f = fine.levels.len() - 1;
    let mut acc = ErrorAccumulator::new(grid, mode);
    let pairs: Vec<(usize, usize)> = match mode {
        NormMode::FinalTime => vec![(last_c, last_f)],
        NormMode::SupOverTime => (0..=last_c)
            .map(|k| (k, if k == last_c { last_f } else { k * ratio }))
            .collect(),
    };
    for (kc, kf) in pairs {
        let (tc, tf) = match (coarse.times.get(kc), fine.times.get(kf)) {
            (Some(tc), Some(tf)) => (*tc, *tf),
            _ => {
                return Err(Error::Consistency(format!(
                    "no reference level for coarse level {kc}"
                )))
            }
        };
        if (tc - tf).abs() > 1e-9 * tc.abs().max(1.0) {
            return Err(Error::Consistency(format!(
                "coarse time {tc} does not match reference time {tf}"
            )));
        }
        let reference = restrict(&fine.levels[kf], n)?;
        acc.record(&coarse.levels[kc], &reference)?;
    }
    acc.finish()
}

/// Cell averages of `q0` by the default midpoint rule; convenience for examples.
pub fn initial_averages(bench: &Benchmark) -> Result<Vec<f64>> {
    cell_averages(&bench.spec.grid, DEFAULT_QUADRATURE_POINTS, |x| (bench.spec.q0)(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_solution_values() {
        let b = Benchmark::new(BenchmarkId::Test1_1, 8).unwrap();
        assert!((exact_solution(&b, 1.0, 1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);

        let b = Benchmark::new(BenchmarkId::Test1_2, 8).unwrap();
        assert_eq!(exact_solution(&b, 0.5, 0.5).unwrap(), 1.0);
        let decayed = Benchmark::with_options(BenchmarkId::Test1_2, 8, true).unwrap();
        assert_eq!(exact_solution(&decayed, 0.5, 0.5).unwrap(), (-0.5f64).exp());

        let b = Benchmark::new(BenchmarkId::Test2_2, 8).unwrap();
        assert!(matches!(
            exact_solution(&b, 0.0, 0.0),
            Err(Error::NoExactSolution(_))
        ));
    }

    #[test]
    fn exact_solutions_start_at_initial_condition() {
        for id in BenchmarkId::ALL.into_iter().filter(|b| b.has_exact_solution()) {
            let b = Benchmark::new(id, 16).unwrap();
            let g = b.spec.grid;
            for k in 0..100 {
                let x = g.x_left + g.length() * (k as f64 + 0.37) / 100.0;
                let e = exact_solution(&b, x, 0.0).unwrap();
                assert!((e - (b.spec.q0)(x)).abs() <= 1e-14, "{id} at {x}");
            }
        }
    }

    #[test]
    fn norms_of_constant_error() {
        let g = Grid1D::new(0.0, 2.0, 16).unwrap();
        let ones = vec![1.0; 16];
        let zeros = vec![0.0; 16];
        let e = error_norms(&g, [(&ones[..], &zeros[..])], NormMode::FinalTime).unwrap();
        assert!((e.abs.l1 - 2.0).abs() < 1e-15);
        assert!((e.abs.l2 - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(e.abs.linf, 1.0);
        let same = error_norms(&g, [(&ones[..], &ones[..])], NormMode::FinalTime).unwrap();
        assert_eq!(same.abs, Norms::default());
        assert_eq!(same.rel.l1, 0.0);
    }

    #[test]
    fn sup_over_time_takes_maximum() {
        let g = Grid1D::new(0.0, 1.0, 2).unwrap();
        let zero = [0.0, 0.0];
        let big = [2.0, 0.0];
        let small = [0.5, 0.0];
        let sup = error_norms(&g, [(&big[..], &zero[..]), (&small[..], &zero[..])], NormMode::SupOverTime).unwrap();
        let fin = error_norms(&g, [(&big[..], &zero[..]), (&small[..], &zero[..])], NormMode::FinalTime).unwrap();
        assert_eq!(sup.abs.linf, 2.0);
        assert_eq!(fin.abs.linf, 0.5);
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let g = Grid1D::new(0.0, 1.0, 4).unwrap();
        let a = [0.0; 4];
        let b = [0.0; 3];
        assert!(matches!(
            error_norms(&g, [(&a[..], &b[..])], NormMode::FinalTime),
            Err(Error::GridMismatch { .. })
        ));
    }

    #[test]
    fn restriction() {
        assert_eq!(restrict(&[3.0; 8], 4).unwrap(), vec![3.0; 4]);
        let fine: Vec<f64> = (0..512).map(|i| 0.5 + 2.0 * (i as f64 + 0.5) / 512.0).collect();
        let coarse = restrict(&fine, 256).unwrap();
        for (i, v) in coarse.iter().enumerate() {
            assert!((v - (0.5 + 2.0 * (i as f64 + 0.5) / 256.0)).abs() < 1e-14);
        }
        assert!(matches!(restrict(&fine, 3), Err(Error::NonDivisibleMesh { .. })));
    }

    #[test]
    fn test3_dt_from_diffusion_bound() {
        let b = Benchmark::new(BenchmarkId::Test3, 32).unwrap();
        let step = select_benchmark_dt(&b).unwrap();
        let dx = b.spec.grid.dx;
        assert!((step.dt - 0.25 * dx * dx / b.alpha_ref).abs() < 1e-15);
        assert!((step.params.d - 0.25).abs() < 1e-12);
    }

    #[test]
    fn test2_2_realized_numbers() {
        let b = Benchmark::new(BenchmarkId::Test2_2, 8).unwrap();
        let p = select_benchmark_dt(&b).unwrap().params;
        assert!((p.c - 0.5).abs() < 1e-15);
        assert!((p.d / 6.37e-7 - 1.0).abs() < 5e-3, "{}", p.d);
        assert!((p.r / -1.96e-1 - 1.0).abs() < 5e-3, "{}", p.r);
    }

    #[test]
    fn no_active_constraint_is_config_error() {
        let b = Benchmark::new(BenchmarkId::Test3, 8).unwrap();
        assert!(matches!(
            select_dt(&b.spec, &StepBounds::default(), b.alpha_ref),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn benchmark_names_parse() {
        for id in BenchmarkId::ALL {
            assert_eq!(id.name().parse::<BenchmarkId>().unwrap(), id);
        }
        assert_eq!("Test1.1".parse::<BenchmarkId>().unwrap(), BenchmarkId::Test1_1);
        assert!("test4".parse::<BenchmarkId>().is_err());
    }
}
