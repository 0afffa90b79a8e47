//! Uniform 1D grids, problem descriptions and ghost-padded fields.
//!
//! Every field carries [`N_GHOST`] ghost cells on each side. Padded index `p`
//! maps to interior cell `p - N_GHOST`; interface `j` of the padded field sits
//! between padded cells `j` and `j + 1`.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::io::fmt_f64;

/// Ghost cells per side. The ADER stencil reaches `i - 2` and `i + 2`.
pub const N_GHOST: usize = 2;

/// Default number of midpoint subsamples per cell for cell-average projection.
pub const DEFAULT_QUADRATURE_POINTS: usize = 16;

pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_left: f64,
    pub x_right: f64,
    pub n_cells: usize,
    pub dx: f64,
}

impl Grid1D {
    pub fn new(x_left: f64, x_right: f64, n_cells: usize) -> Result<Self> {
        if n_cells == 0 {
            return Err(Error::Config("grid needs at least one cell".into()));
        }
        if !(x_right > x_left) || !x_left.is_finite() || !x_right.is_finite() {
            return Err(Error::Config(format!(
                "invalid domain [{x_left}, {x_right}]"
            )));
        }
        Ok(Self {
            x_left,
            x_right,
            n_cells,
            dx: (x_right - x_left) / n_cells as f64,
        })
    }

    pub fn length(&self) -> f64 {
        self.x_right - self.x_left
    }

    /// Number of stored values including both ghost layers.
    pub fn padded_len(&self) -> usize {
        self.n_cells + 2 * N_GHOST
    }

    /// Center of interior cell `i` (0-based).
    pub fn center(&self, i: usize) -> f64 {
        self.x_left + (i as f64 + 0.5) * self.dx
    }

    /// Center of padded cell `p`; ghost cells lie outside the domain.
    pub fn padded_center(&self, p: usize) -> f64 {
        self.x_left + (p as f64 - N_GHOST as f64 + 0.5) * self.dx
    }

    /// Position of padded interface `j`, between padded cells `j` and `j + 1`.
    pub fn interface(&self, j: usize) -> f64 {
        self.x_left + (j as f64 + 1.0 - N_GHOST as f64) * self.dx
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_cells).map(move |i| self.center(i))
    }
}

/// Diffusion coefficient model.
#[derive(Clone)]
pub enum DiffusionModel {
    Zero,
    Constant(f64),
    /// Prescribed `alpha(x, t)` with an optional analytic time derivative.
    SpaceTime {
        alpha: SpaceTimeFn,
        dt_alpha: Option<SpaceTimeFn>,
    },
    /// `alpha(q)`, a function of the solution itself.
    StateDependent(SpaceFn),
}

impl DiffusionModel {
    /// True when the PDE stays linear in `q`.
    pub fn is_linear(&self) -> bool {
        !matches!(self, DiffusionModel::StateDependent(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            DiffusionModel::Zero => true,
            DiffusionModel::Constant(a) => *a == 0.0,
            _ => false,
        }
    }
}

impl fmt::Debug for DiffusionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffusionModel::Zero => write!(f, "Zero"),
            DiffusionModel::Constant(a) => write!(f, "Constant({a})"),
            DiffusionModel::SpaceTime { dt_alpha, .. } => write!(
                f,
                "SpaceTime {{ analytic_dt: {} }}",
                dt_alpha.is_some()
            ),
            DiffusionModel::StateDependent(_) => write!(f, "StateDependent"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Periodic,
    /// Ghost cells take exact-solution point values; the first and last
    /// interior cells use one-sided slopes.
    DirichletExact,
}

/// Everything needed to pose `q_t + lambda q_x = (alpha q_x)_x + beta q`.
#[derive(Clone)]
pub struct ProblemSpec {
    pub lambda: f64,
    pub beta: f64,
    pub diffusion: DiffusionModel,
    pub q0: SpaceFn,
    pub bc: BoundaryCondition,
    pub grid: Grid1D,
    pub t_end: f64,
    pub exact: Option<SpaceTimeFn>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("lambda", &self.lambda)
            .field("beta", &self.beta)
            .field("diffusion", &self.diffusion)
            .field("bc", &self.bc)
            .field("grid", &self.grid)
            .field("t_end", &self.t_end)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl ProblemSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_end > 0.0) {
            return Err(Error::Config(format!("t_end must be positive, got {}", self.t_end)));
        }
        if !self.lambda.is_finite() || !self.beta.is_finite() {
            return Err(Error::Config("lambda and beta must be finite".into()));
        }
        if let DiffusionModel::Constant(a) = self.diffusion {
            if !(a >= 0.0) {
                return Err(Error::Config(format!(
                    "constant diffusion coefficient must be non-negative, got {a}"
                )));
            }
        }
        if self.bc == BoundaryCondition::DirichletExact && self.exact.is_none() {
            return Err(Error::Config(
                "Dirichlet boundaries need an exact solution".into(),
            ));
        }
        Ok(())
    }

    /// Same problem on another mesh of the same domain.
    pub fn with_cells(&self, n_cells: usize) -> Result<Self> {
        let mut spec = self.clone();
        spec.grid = Grid1D::new(self.grid.x_left, self.grid.x_right, n_cells)?;
        Ok(spec)
    }
}

/// One time level of cell averages, ghost layers included.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub values: Vec<f64>,
    pub time: f64,
}

impl Field {
    pub fn zeros(grid: &Grid1D, time: f64) -> Self {
        Self {
            values: vec![0.0; grid.padded_len()],
            time,
        }
    }

    /// Builds a field from interior values; ghosts start at zero.
    pub fn from_interior(interior: &[f64], time: f64) -> Self {
        let mut values = vec![0.0; interior.len() + 2 * N_GHOST];
        values[N_GHOST..N_GHOST + interior.len()].copy_from_slice(interior);
        Self { values, time }
    }

    pub fn n_cells(&self) -> usize {
        self.values.len() - 2 * N_GHOST
    }

    pub fn interior(&self) -> &[f64] {
        &self.values[N_GHOST..self.values.len() - N_GHOST]
    }

    pub fn interior_mut(&mut self) -> &mut [f64] {
        let n = self.values.len();
        &mut self.values[N_GHOST..n - N_GHOST]
    }

    /// Fails on the first NaN or infinite interior value.
    pub fn check_finite(&self) -> Result<()> {
        match self.interior().iter().position(|v| !v.is_finite()) {
            Some(cell) => Err(Error::NonFinite {
                cell,
                time: self.time,
                value: self.interior()[cell],
            }),
            None => Ok(()),
        }
    }

    /// Writes `x,q` rows for the interior cells.
    pub fn write_csv<W: Write>(&self, grid: &Grid1D, mut out: W) -> Result<()> {
        if grid.n_cells != self.n_cells() {
            return Err(Error::GridMismatch {
                expected: grid.n_cells,
                found: self.n_cells(),
            });
        }
        writeln!(out, "x,q")?;
        for (x, q) in grid.centers().zip(self.interior()) {
            writeln!(out, "{},{}", fmt_f64(x), fmt_f64(*q))?;
        }
        Ok(())
    }
}

/// Composite-midpoint cell averages of `f` over every interior cell.
pub fn cell_averages<F>(grid: &Grid1D, points: usize, f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    if points == 0 {
        return Err(Error::Config("quadrature needs at least one point".into()));
    }
    let h = grid.dx / points as f64;
    (0..grid.n_cells)
        .map(|i| {
            let left = grid.x_left + i as f64 * grid.dx;
            let sum: f64 = (0..points).map(|k| f(left + (k as f64 + 0.5) * h)).sum();
            let avg = sum / points as f64;
            if avg.is_finite() {
                Ok(avg)
            } else {
                Err(Error::NonFinite {
                    cell: i,
                    time: 0.0,
                    value: avg,
                })
            }
        })
        .collect()
}

/// Cell averages of the initial condition with ghosts filled for `t = 0`.
pub fn project_initial(spec: &ProblemSpec, quadrature_points: usize) -> Result<Field> {
    let interior = cell_averages(&spec.grid, quadrature_points, |x| (spec.q0)(x))?;
    let mut field = Field::from_interior(&interior, 0.0);
    apply_bc(&mut field, spec, 0.0)?;
    Ok(field)
}

/// Fills the ghost layers for time `t`.
pub fn apply_bc(field: &mut Field, spec: &ProblemSpec, t: f64) -> Result<()> {
    let n = spec.grid.n_cells;
    if field.values.len() != spec.grid.padded_len() {
        return Err(Error::GridMismatch {
            expected: n,
            found: field.n_cells(),
        });
    }
    let len = field.values.len();
    match spec.bc {
        BoundaryCondition::Periodic => {
            for k in 0..N_GHOST {
                // left ghost k <- interior n - N_GHOST + k, right ghost k <- interior k
                field.values[k] =
                    field.values[N_GHOST + wrap(n as isize - N_GHOST as isize + k as isize, n)];
                field.values[N_GHOST + n + k] = field.values[N_GHOST + wrap(k as isize, n)];
            }
        }
        BoundaryCondition::DirichletExact => {
            let exact = spec.exact.as_ref().ok_or_else(|| {
                Error::Config("Dirichlet boundaries need an exact solution".into())
            })?;
            for p in (0..N_GHOST).chain(len - N_GHOST..len) {
                field.values[p] = exact(spec.grid.padded_center(p), t);
            }
        }
    }
    Ok(())
}

fn wrap(i: isize, n: usize) -> usize {
    i.rem_euclid(n as isize) as usize
}
