//! Time-marching driver shared by single solves and convergence studies.

use crate::error::{Error, Result};
use crate::grid::{project_initial, DiffusionModel, Field, ProblemSpec};
use crate::schemes::{cell_alpha, interface_alpha, AlphaHistory, SchemeKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    /// Nominal step; the last step is shortened to land on `t_end`.
    pub dt: f64,
    /// With a state-dependent `alpha`, shrink the step whenever the realized
    /// diffusion number would exceed this bound.
    pub d_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub field: Field,
    pub steps: usize,
    /// Smallest nominal step used (changes only under adaptive refresh).
    pub min_dt: f64,
}

/// Marches `field` from its own time to `spec.t_end`.
///
/// `observe` sees the initial level and every computed level.
pub fn run<F>(
    spec: &ProblemSpec,
    scheme: SchemeKind,
    field: Field,
    options: RunOptions,
    mut observe: F,
) -> Result<RunSummary>
where
    F: FnMut(&Field) -> Result<()>,
{
    spec.validate()?;
    scheme.check(spec)?;
    if !(options.dt > 0.0 && options.dt.is_finite()) {
        return Err(Error::Config(format!(
            "time step must be positive, got {}",
            options.dt
        )));
    }
    let needs_history = match &spec.diffusion {
        DiffusionModel::StateDependent(_) => true,
        DiffusionModel::SpaceTime { dt_alpha, .. } => dt_alpha.is_none(),
        _ => false,
    };
    let adaptive = match (&spec.diffusion, options.d_max) {
        (DiffusionModel::StateDependent(_), Some(d_max)) => Some(d_max),
        _ => None,
    };

    observe(&field)?;
    let dx2 = spec.grid.dx * spec.grid.dx;
    let mut dt_nominal = options.dt;
    let mut min_dt = dt_nominal;
    let mut plan = StepPlan::new(field.time, spec.t_end, dt_nominal);
    let mut history: Option<AlphaHistory> = None;
    let mut current = field;
    let mut steps = 0;

    while let Some((t, dt)) = plan.peek() {
        let cells = if needs_history || adaptive.is_some() {
            Some(cell_alpha(&current, spec, t)?)
        } else {
            None
        };
        if let (Some(d_max), Some(cells)) = (adaptive, &cells) {
            let alpha_max = cells.iter().cloned().fold(0.0, f64::max);
            if alpha_max * dt_nominal / dx2 > d_max * (1.0 + 1e-12) {
                dt_nominal = d_max * dx2 / alpha_max;
                min_dt = min_dt.min(dt_nominal);
                plan = StepPlan::new(t, spec.t_end, dt_nominal);
                continue;
            }
        }
        let coeffs = interface_alpha(&current, spec, t, history.as_ref())?;
        let mut next = scheme.step(&current, spec, &coeffs, dt)?;
        let t_next = plan.advance();
        next.time = t_next;
        if needs_history {
            history = cells.map(|cell_alpha| AlphaHistory { cell_alpha, dt });
        }
        steps += 1;
        observe(&next)?;
        current = next;
    }
    Ok(RunSummary {
        field: current,
        steps,
        min_dt,
    })
}

/// Projects the initial condition and marches to `t_end`.
pub fn solve(
    spec: &ProblemSpec,
    scheme: SchemeKind,
    options: RunOptions,
    quadrature_points: usize,
) -> Result<RunSummary> {
    let field = project_initial(spec, quadrature_points)?;
    run(spec, scheme, field, options, |_| Ok(()))
}

/// Step times `t_base + k dt` with the final time pinned to `t_end`, so
/// steps that divide the interval land exactly.
#[derive(Debug, Clone)]
struct StepPlan {
    t_base: f64,
    t_end: f64,
    dt: f64,
    n_steps: usize,
    k: usize,
}

impl StepPlan {
    fn new(t_base: f64, t_end: f64, dt: f64) -> Self {
        let remaining = t_end - t_base;
        let n_steps = if remaining > 0.0 {
            ((remaining / dt) - 1e-9).ceil().max(1.0) as usize
        } else {
            0
        };
        Self {
            t_base,
            t_end,
            dt,
            n_steps,
            k: 0,
        }
    }

    fn time(&self, k: usize) -> f64 {
        if k >= self.n_steps {
            self.t_end
        } else {
            self.t_base + k as f64 * self.dt
        }
    }

    fn peek(&self) -> Option<(f64, f64)> {
        (self.k < self.n_steps).then(|| {
            let t = self.time(self.k);
            (t, self.time(self.k + 1) - t)
        })
    }

    fn advance(&mut self) -> f64 {
        self.k += 1;
        self.time(self.k)
    }
}
