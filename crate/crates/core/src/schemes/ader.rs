//! Second-order ADER scheme: generalized Riemann problem flux, half-time
//! diffusion term and numerical source.

use crate::error::{Error, Result};
use crate::grid::{DiffusionModel, Field, ProblemSpec};

use super::{
    diffusion_operator, finish, interface_alpha, interior_range, slope, InterfaceCoeffs,
    StepParams,
};

/// GRP flux at padded interface `j` (between cells `j` and `j + 1`).
///
/// The upwind cell is `j` for `lambda > 0` and `j + 1` for `lambda < 0`; the
/// flux vanishes for `lambda == 0`.
pub fn ader_flux(
    field: &Field,
    coeffs: &InterfaceCoeffs,
    spec: &ProblemSpec,
    params: &StepParams,
    j: usize,
) -> f64 {
    let lambda = spec.lambda;
    if lambda == 0.0 {
        return 0.0;
    }
    let dx = spec.grid.dx;
    let (i, half) = if lambda > 0.0 { (j, 0.5) } else { (j + 1, -0.5) };
    let q = field.values[i];
    let slope = slope(field, spec, i);
    let edge = q + half * dx * slope;
    let diff = diffusion_operator(field, coeffs, dx, i);
    lambda * (edge + 0.5 * params.dt * (-lambda * slope + spec.beta * edge + diff))
}

/// Diffusion term evaluated at half time in cell `i`.
pub fn half_time_diffusion(
    field: &Field,
    coeffs: &InterfaceCoeffs,
    spec: &ProblemSpec,
    params: &StepParams,
    i: usize,
) -> f64 {
    let q = &field.values;
    let dx = spec.grid.dx;
    let half_dt = 0.5 * params.dt;
    let (lambda, beta) = (spec.lambda, spec.beta);

    let slope_i = slope(field, spec, i);
    let diff_i = diffusion_operator(field, coeffs, dx, i);
    let side = |nb: usize, face: usize| {
        let dq = q[nb] - q[i];
        let evolved = dq
            + half_dt
                * (-lambda * (slope(field, spec, nb) - slope_i)
                    + diffusion_operator(field, coeffs, dx, nb)
                    - diff_i
                    + beta * dq);
        (coeffs.alpha[face] + half_dt * coeffs.dt_alpha[face]) * evolved
    };
    (side(i + 1, i) + side(i - 1, i - 1)) / (dx * dx)
}

/// Reaction source evaluated at half time in cell `i`.
pub fn numerical_source(
    field: &Field,
    coeffs: &InterfaceCoeffs,
    spec: &ProblemSpec,
    params: &StepParams,
    i: usize,
) -> f64 {
    let beta = spec.beta;
    if beta == 0.0 {
        return 0.0;
    }
    let q = field.values[i];
    let diff = diffusion_operator(field, coeffs, spec.grid.dx, i);
    beta * (q + 0.5 * params.dt * (-spec.lambda * slope(field, spec, i) + diff + beta * q))
}

/// One ADER step with interface coefficients computed from the current
/// level alone (zero time derivative of a backward-differenced `alpha`).
pub fn step_ader(field: &Field, spec: &ProblemSpec, dt: f64) -> Result<Field> {
    let coeffs = interface_alpha(field, spec, field.time, None)?;
    step_ader_with(field, spec, &coeffs, dt)
}

/// One ADER step with caller-supplied interface coefficients.
pub fn step_ader_with(
    field: &Field,
    spec: &ProblemSpec,
    coeffs: &InterfaceCoeffs,
    dt: f64,
) -> Result<Field> {
    check_dt(dt)?;
    let params = StepParams::new(spec, 0.0, dt);
    let range = interior_range(field);
    // fluxes[k] is the flux at interface range.start - 1 + k
    let fluxes: Vec<f64> = (range.start - 1..range.end)
        .map(|j| ader_flux(field, coeffs, spec, &params, j))
        .collect();
    let ratio = dt / spec.grid.dx;
    let has_diffusion = !spec.diffusion.is_zero();

    let mut out = field.clone();
    out.time = field.time + dt;
    for (k, i) in range.enumerate() {
        let mut update = -ratio * (fluxes[k + 1] - fluxes[k]);
        if has_diffusion {
            update += dt * half_time_diffusion(field, coeffs, spec, &params, i);
        }
        update += dt * numerical_source(field, coeffs, spec, &params, i);
        out.values[i] = field.values[i] + update;
    }
    finish(out, spec)
}

/// Applies the five-point constant-coefficient stencil in `(c, d, r)` form to
/// the interior of the padded array `q`, writing into `out`.
///
/// `c >= 0` is assumed; negative speeds are handled by the caller mirroring
/// the stencil offsets.
pub fn constant_alpha_stencil(q: &[f64], c: f64, d: f64, r: f64, mirrored: bool, out: &mut [f64]) {
    let n = q.len();
    let g = crate::grid::N_GHOST;
    for i in g..n - g {
        let at = |k: isize| {
            let k = if mirrored { -k } else { k };
            q[(i as isize + k) as usize]
        };
        let (qm2, qm1, q0, qp1, qp2) = (at(-2), at(-1), at(0), at(1), at(2));
        let second = qp1 - 2.0 * q0 + qm1;
        let advective = (2.0 + r) / 2.0 * (q0 - qm1)
            + (2.0 - 2.0 * c + r) / 8.0 * (qp1 - qm1 - q0 + qm2)
            + d / 2.0 * (qp1 - 3.0 * q0 + 3.0 * qm1 - qm2);
        let diffusive = second - c / 4.0 * (qp2 - 2.0 * qp1 + 2.0 * qm1 - qm2)
            + d / 2.0 * (qp2 - 4.0 * qp1 + 6.0 * q0 - 4.0 * qm1 + qm2)
            + r / 2.0 * second;
        let reactive = q0 - c / 4.0 * (qp1 - qm1) + d / 2.0 * second + r / 2.0 * q0;
        out[i] = q0 - c * advective + d * diffusive + r * reactive;
    }
}

/// One step of the constant-diffusion ADER scheme written as a five-point
/// stencil in the Courant, diffusion and reaction numbers.
///
/// Slopes are centred everywhere, including next to Dirichlet boundaries.
pub fn step_ader_stencil_constant_alpha(
    field: &Field,
    spec: &ProblemSpec,
    dt: f64,
) -> Result<Field> {
    check_dt(dt)?;
    let alpha = match spec.diffusion {
        DiffusionModel::Zero => 0.0,
        DiffusionModel::Constant(a) => a,
        _ => {
            return Err(Error::Config(
                "the constant-alpha stencil needs a constant or zero diffusion model".into(),
            ))
        }
    };
    let p = StepParams::new(spec, alpha, dt);
    let mut out = field.clone();
    out.time = field.time + dt;
    constant_alpha_stencil(
        &field.values,
        p.c.abs(),
        p.d,
        p.r,
        spec.lambda < 0.0,
        &mut out.values,
    );
    finish(out, spec)
}

pub(super) fn check_dt(dt: f64) -> Result<()> {
    if dt > 0.0 && dt.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("time step must be positive, got {dt}")))
    }
}
