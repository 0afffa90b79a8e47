//! Finite-volume update schemes.
//!
//! Every scheme advances cell averages with
//!
//! ```text
//! q_i^{n+1} = q_i^n - dt/dx (f_{i+1/2} - f_{i-1/2}) + dt g_i + dt s_i
//! ```
//!
//! and differs only in how the flux `f`, the diffusion term `g` and the
//! source `s` are approximated. Cell and interface indices in this module
//! are padded indices (see [`crate::grid`]).

mod ader;
mod first_order;
mod muscl_hancock;

pub use ader::{
    ader_flux, constant_alpha_stencil, half_time_diffusion, numerical_source, step_ader,
    step_ader_stencil_constant_alpha, step_ader_with,
};
pub use first_order::{step_first_order, step_first_order_with};
pub use muscl_hancock::{step_muscl_hancock, step_muscl_hancock_with};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{BoundaryCondition, DiffusionModel, Field, ProblemSpec, N_GHOST};

/// Dimensionless numbers of one time step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepParams {
    pub dt: f64,
    /// Courant number `lambda dt / dx`.
    pub c: f64,
    /// Diffusion number `alpha_ref dt / dx^2`.
    pub d: f64,
    /// Reaction number `beta dt`.
    pub r: f64,
}

impl StepParams {
    pub fn new(spec: &ProblemSpec, alpha_ref: f64, dt: f64) -> Self {
        let dx = spec.grid.dx;
        Self {
            dt,
            c: spec.lambda * dt / dx,
            d: alpha_ref * dt / (dx * dx),
            r: spec.beta * dt,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemeKind {
    AderGeneral,
    AderConstantAlpha,
    AderAdvectionReaction,
    MusclHancock,
    FirstOrder,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 5] = [
        SchemeKind::AderGeneral,
        SchemeKind::AderConstantAlpha,
        SchemeKind::AderAdvectionReaction,
        SchemeKind::MusclHancock,
        SchemeKind::FirstOrder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::AderGeneral => "ader",
            SchemeKind::AderConstantAlpha => "ader-constant-alpha",
            SchemeKind::AderAdvectionReaction => "ader-advection-reaction",
            SchemeKind::MusclHancock => "muscl-hancock",
            SchemeKind::FirstOrder => "first-order",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "ader" | "ader-general" => Some(SchemeKind::AderGeneral),
            "ader-constant-alpha" => Some(SchemeKind::AderConstantAlpha),
            "ader-advection-reaction" => Some(SchemeKind::AderAdvectionReaction),
            "muscl-hancock" | "mh" => Some(SchemeKind::MusclHancock),
            "first-order" => Some(SchemeKind::FirstOrder),
            _ => None,
        }
    }

    /// Whether the scheme can run the given problem at all.
    pub fn check(self, spec: &ProblemSpec) -> Result<()> {
        match self {
            SchemeKind::AderConstantAlpha
                if !matches!(
                    spec.diffusion,
                    DiffusionModel::Zero | DiffusionModel::Constant(_)
                ) =>
            {
                Err(Error::Config(
                    "the constant-alpha stencil needs a constant or zero diffusion model".into(),
                ))
            }
            SchemeKind::AderAdvectionReaction if !spec.diffusion.is_zero() => Err(Error::Config(
                "the advection-reaction scheme needs zero diffusion".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Advances `field` by `dt` using precomputed interface coefficients.
    pub fn step(
        self,
        field: &Field,
        spec: &ProblemSpec,
        coeffs: &InterfaceCoeffs,
        dt: f64,
    ) -> Result<Field> {
        match self {
            SchemeKind::AderGeneral => step_ader_with(field, spec, coeffs, dt),
            SchemeKind::AderConstantAlpha | SchemeKind::AderAdvectionReaction => {
                self.check(spec)?;
                step_ader_stencil_constant_alpha(field, spec, dt)
            }
            SchemeKind::MusclHancock => step_muscl_hancock_with(field, spec, coeffs, dt),
            SchemeKind::FirstOrder => step_first_order_with(field, spec, coeffs, dt),
        }
    }
}

impl std::fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Diffusion coefficient and its time derivative at every padded interface.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceCoeffs {
    pub alpha: Vec<f64>,
    pub dt_alpha: Vec<f64>,
}

impl InterfaceCoeffs {
    pub fn uniform(n_interfaces: usize, alpha: f64) -> Self {
        Self {
            alpha: vec![alpha; n_interfaces],
            dt_alpha: vec![0.0; n_interfaces],
        }
    }
}

/// Cell values of the diffusion coefficient at the previous time level.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaHistory {
    pub cell_alpha: Vec<f64>,
    /// Time elapsed since that level.
    pub dt: f64,
}

/// Diffusion coefficient at every padded cell center.
pub fn cell_alpha(field: &Field, spec: &ProblemSpec, t: f64) -> Result<Vec<f64>> {
    let len = field.values.len();
    match &spec.diffusion {
        DiffusionModel::Zero => Ok(vec![0.0; len]),
        DiffusionModel::Constant(a) => Ok(vec![*a; len]),
        DiffusionModel::SpaceTime { alpha, .. } => Ok((0..len)
            .map(|p| alpha(spec.grid.padded_center(p), t))
            .collect()),
        DiffusionModel::StateDependent(alpha) => {
            let values: Vec<f64> = field.values.iter().map(|&q| alpha(q)).collect();
            let bad = |p: &usize| !(values[*p].is_finite() && values[*p] >= 0.0);
            // interior cells are reported before ghosts
            let n = field.n_cells();
            let first = (N_GHOST..N_GHOST + n)
                .find(bad)
                .or_else(|| (0..len).find(bad));
            match first {
                Some(p) => Err(Error::Domain {
                    cell: p.saturating_sub(N_GHOST).min(n - 1),
                    value: field.values[p],
                }),
                None => Ok(values),
            }
        }
    }
}

/// Interface diffusion coefficients for the level at time `t`.
///
/// The time derivative comes from the analytic `dt_alpha` when one is given,
/// otherwise from the averaged backward difference of the two neighbouring
/// cell values against `prev`, and is zero when neither is available.
pub fn interface_alpha(
    field: &Field,
    spec: &ProblemSpec,
    t: f64,
    prev: Option<&AlphaHistory>,
) -> Result<InterfaceCoeffs> {
    let n_if = field.values.len() - 1;
    match &spec.diffusion {
        DiffusionModel::Zero => Ok(InterfaceCoeffs::uniform(n_if, 0.0)),
        DiffusionModel::Constant(a) => Ok(InterfaceCoeffs::uniform(n_if, *a)),
        DiffusionModel::SpaceTime { alpha, dt_alpha } => {
            let grid = &spec.grid;
            let values = (0..n_if).map(|j| alpha(grid.interface(j), t)).collect();
            let dt_values = match (dt_alpha, prev) {
                (Some(dt_alpha), _) => (0..n_if).map(|j| dt_alpha(grid.interface(j), t)).collect(),
                (None, Some(prev)) => {
                    backward_difference(&cell_alpha(field, spec, t)?, prev)
                }
                (None, None) => vec![0.0; n_if],
            };
            Ok(InterfaceCoeffs {
                alpha: values,
                dt_alpha: dt_values,
            })
        }
        DiffusionModel::StateDependent(_) => {
            let cells = cell_alpha(field, spec, t)?;
            let values = cells.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
            let dt_values = match prev {
                Some(prev) => backward_difference(&cells, prev),
                None => vec![0.0; n_if],
            };
            Ok(InterfaceCoeffs {
                alpha: values,
                dt_alpha: dt_values,
            })
        }
    }
}

fn backward_difference(current: &[f64], prev: &AlphaHistory) -> Vec<f64> {
    let rate: Vec<f64> = current
        .iter()
        .zip(&prev.cell_alpha)
        .map(|(now, before)| (now - before) / prev.dt)
        .collect();
    rate.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
}

/// `(q_{i+1} - q_{i-1}) / (2 dx)`.
pub fn centred_slope(field: &Field, dx: f64, i: usize) -> f64 {
    let q = &field.values;
    (q[i + 1] - q[i - 1]) / (2.0 * dx)
}

/// Slope used by the schemes: centred, except one-sided in the first and
/// last interior cells under Dirichlet boundaries.
pub fn slope(field: &Field, spec: &ProblemSpec, i: usize) -> f64 {
    let dx = spec.grid.dx;
    if spec.bc == BoundaryCondition::DirichletExact {
        let q = &field.values;
        let last = field.values.len() - N_GHOST - 1;
        if i == N_GHOST {
            return (q[i + 1] - q[i]) / dx;
        }
        if i == last {
            return (q[i] - q[i - 1]) / dx;
        }
    }
    centred_slope(field, dx, i)
}

/// Central approximation of `(alpha q_x)_x` in cell `i`.
pub fn diffusion_operator(field: &Field, coeffs: &InterfaceCoeffs, dx: f64, i: usize) -> f64 {
    let q = &field.values;
    (coeffs.alpha[i] * (q[i + 1] - q[i]) - coeffs.alpha[i - 1] * (q[i] - q[i - 1])) / (dx * dx)
}

/// Fails on the first non-finite interior value of a freshly stepped field.
pub(crate) fn finish(mut out: Field, spec: &ProblemSpec) -> Result<Field> {
    let t = out.time;
    crate::grid::apply_bc(&mut out, spec, t)?;
    out.check_finite()?;
    Ok(out)
}

/// Interior padded index range.
pub(crate) fn interior_range(field: &Field) -> std::ops::Range<usize> {
    N_GHOST..field.values.len() - N_GHOST
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grid::Grid1D;

    pub(crate) fn spec(n: usize, lambda: f64, beta: f64, diffusion: DiffusionModel) -> ProblemSpec {
        ProblemSpec {
            lambda,
            beta,
            diffusion,
            q0: Arc::new(|_| 0.0),
            bc: BoundaryCondition::Periodic,
            grid: Grid1D::new(0.0, n as f64, n).unwrap(),
            t_end: 1.0,
            exact: None,
        }
    }

    // Padded field whose entries at padded positions 1..=k are `vals`.
    fn padded(vals: &[f64]) -> Field {
        let mut v = vec![0.0];
        v.extend_from_slice(vals);
        v.push(0.0);
        Field { values: v, time: 0.0 }
    }

    #[test]
    fn centred_slope_examples() {
        assert_eq!(centred_slope(&padded(&[1.0, 2.0, 3.0]), 1.0, 2), 1.0);
        assert_eq!(centred_slope(&padded(&[5.0, 5.0, 5.0]), 0.3, 2), 0.0);
        assert_eq!(centred_slope(&padded(&[0.0, 1.0, 4.0]), 0.5, 2), 4.0);
    }

    #[test]
    fn diffusion_operator_examples() {
        let ones = InterfaceCoeffs::uniform(4, 1.0);
        assert_eq!(diffusion_operator(&padded(&[3.0, 3.0, 3.0]), &ones, 1.0, 2), 0.0);
        assert_eq!(diffusion_operator(&padded(&[0.0, 1.0, 4.0]), &ones, 1.0, 2), 2.0);
        let mut varying = InterfaceCoeffs::uniform(4, 1.0);
        varying.alpha[2] = 2.0;
        varying.alpha[1] = 1.0;
        assert_eq!(diffusion_operator(&padded(&[0.0, 0.0, 1.0]), &varying, 1.0, 2), 2.0);
    }

    #[test]
    fn dirichlet_boundary_slopes_are_one_sided() {
        let mut s = spec(4, 1.0, 0.0, DiffusionModel::Zero);
        s.bc = BoundaryCondition::DirichletExact;
        let f = Field {
            values: vec![0.0, 10.0, 1.0, 3.0, 7.0, 8.0, 20.0, 0.0],
            time: 0.0,
        };
        assert_eq!(slope(&f, &s, 2), 2.0);
        assert_eq!(slope(&f, &s, 5), 1.0);
        assert_eq!(slope(&f, &s, 3), 3.0);
        s.bc = BoundaryCondition::Periodic;
        assert_eq!(slope(&f, &s, 2), -3.5);
    }

    #[test]
    fn interface_alpha_constant() {
        let s = spec(4, 1.0, 0.0, DiffusionModel::Constant(3.0));
        let f = Field::zeros(&s.grid, 0.0);
        let c = interface_alpha(&f, &s, 0.0, None).unwrap();
        assert_eq!(c.alpha.len(), 4 + 2 * N_GHOST - 1);
        assert!(c.alpha.iter().all(|&a| a == 3.0));
        assert!(c.dt_alpha.iter().all(|&a| a == 0.0));
    }

    #[test]
    fn interface_alpha_space_time_at_final_time() {
        let mut s = spec(8, 10.0, -5.0, DiffusionModel::Zero);
        s.grid = Grid1D::new(0.0, 2.0 * std::f64::consts::PI, 8).unwrap();
        s.diffusion = DiffusionModel::SpaceTime {
            alpha: Arc::new(|x, t| (x * (t - 1.0) * (t - 1.0)).exp()),
            dt_alpha: None,
        };
        let f = Field::zeros(&s.grid, 1.0);
        let c = interface_alpha(&f, &s, 1.0, None).unwrap();
        assert!(c.alpha.iter().all(|&a| a == 1.0));
    }

    #[test]
    fn interface_alpha_state_dependent_mean() {
        let s = spec(2, 0.0, 0.0, DiffusionModel::StateDependent(Arc::new(|q| 1.0 / q)));
        let f = Field {
            values: vec![2.0, 1.0, 1.0, 2.0, 1.0, 1.0],
            time: 0.0,
        };
        let c = interface_alpha(&f, &s, 0.0, None).unwrap();
        assert_eq!(c.alpha[2], 0.75);
        assert!(c.dt_alpha.iter().all(|&a| a == 0.0));
    }

    #[test]
    fn interface_alpha_backward_difference() {
        let s = spec(2, 0.0, 0.0, DiffusionModel::StateDependent(Arc::new(|q| q)));
        let f = Field {
            values: vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
            time: 0.0,
        };
        let prev = AlphaHistory {
            cell_alpha: vec![0.0, 1.0, 1.0, 3.0, 5.0, 6.0],
            dt: 0.5,
        };
        let c = interface_alpha(&f, &s, 0.0, Some(&prev)).unwrap();
        // rates: 2, 2, 4, 2, 0, 0
        assert_eq!(c.dt_alpha, vec![2.0, 3.0, 3.0, 1.0, 0.0]);
    }

    #[test]
    fn state_dependent_domain_violation_names_cell() {
        let s = spec(4, 0.0, 0.0, DiffusionModel::StateDependent(Arc::new(|q| 1.0 / q)));
        let f = Field::from_interior(&[1.0, 1.0, -0.5, 1.0], 0.0);
        let mut f = f;
        crate::grid::apply_bc(&mut f, &s, 0.0).unwrap();
        let err = interface_alpha(&f, &s, 0.0, None).unwrap_err();
        assert!(matches!(err, Error::Domain { cell: 2, value } if value == -0.5));
    }

    #[test]
    fn scheme_names_round_trip() {
        for k in SchemeKind::ALL {
            assert_eq!(SchemeKind::from_name(k.name()), Some(k));
        }
        assert_eq!(SchemeKind::from_name("weno"), None);
    }

    #[test]
    fn step_params_numbers() {
        let mut s = spec(8, 1.0, -1.0, DiffusionModel::Zero);
        s.grid = Grid1D::new(0.0, 2.0, 8).unwrap();
        let p = StepParams::new(&s, 0.5, 0.25);
        assert_eq!((p.c, p.d, p.r), (1.0, 2.0, -0.25));
    }
}
