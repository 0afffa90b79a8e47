//! MUSCL-Hancock with diffusion and reaction folded into the half-step
//! evolution of the boundary-extrapolated values.

use crate::error::Result;
use crate::grid::{Field, ProblemSpec};

use super::ader::{check_dt, half_time_diffusion, numerical_source};
use super::{
    diffusion_operator, finish, interface_alpha, interior_range, slope, InterfaceCoeffs,
    StepParams,
};

pub fn step_muscl_hancock(field: &Field, spec: &ProblemSpec, dt: f64) -> Result<Field> {
    let coeffs = interface_alpha(field, spec, field.time, None)?;
    step_muscl_hancock_with(field, spec, &coeffs, dt)
}

pub fn step_muscl_hancock_with(
    field: &Field,
    spec: &ProblemSpec,
    coeffs: &InterfaceCoeffs,
    dt: f64,
) -> Result<Field> {
    check_dt(dt)?;
    let params = StepParams::new(spec, 0.0, dt);
    let dx = spec.grid.dx;
    let (lambda, beta) = (spec.lambda, spec.beta);
    let range = interior_range(field);

    // Evolved boundary values for cells range.start - 1 ..= range.end
    let evolved: Vec<(f64, f64)> = (range.start - 1..=range.end)
        .map(|i| {
            let q = field.values[i];
            let half_jump = 0.5 * dx * slope(field, spec, i);
            let (left, right) = (q - half_jump, q + half_jump);
            let advective = lambda * (right - left) / dx;
            let diffusive = diffusion_operator(field, coeffs, dx, i);
            let evolve = |v: f64| v - 0.5 * dt * (advective - diffusive - beta * v);
            (evolve(left), evolve(right))
        })
        .collect();

    // Classical Riemann problem for the linear advection equation.
    let fluxes: Vec<f64> = evolved
        .windows(2)
        .map(|w| {
            if lambda > 0.0 {
                lambda * w[0].1
            } else if lambda < 0.0 {
                lambda * w[1].0
            } else {
                0.0
            }
        })
        .collect();

    let ratio = dt / dx;
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

#[cfg(test)]
mod tests {
    use super::super::tests::spec;
    use super::*;
    use crate::grid::{apply_bc, DiffusionModel};

    #[test]
    fn constant_state_preserved() {
        let s = spec(9, -0.6, 0.0, DiffusionModel::Constant(0.05));
        let mut f = Field::from_interior(&[0.4; 9], 0.0);
        apply_bc(&mut f, &s, 0.0).unwrap();
        let out = step_muscl_hancock(&f, &s, 0.5).unwrap();
        assert!(out.interior().iter().all(|&v| (v - 0.4).abs() <= 1e-15));
    }

    #[test]
    fn unit_courant_number_shifts_by_one_cell() {
        let s = spec(8, 1.0, 0.0, DiffusionModel::Zero);
        let interior = [0.3, -1.0, 2.5, 0.0, 4.0, 1.1, -0.2, 0.9];
        let mut f = Field::from_interior(&interior, 0.0);
        apply_bc(&mut f, &s, 0.0).unwrap();
        // dx = 1, lambda = 1: dt = 1 gives c = 1
        let out = step_muscl_hancock(&f, &s, 1.0).unwrap();
        for i in 0..8 {
            assert!((out.interior()[i] - interior[(i + 7) % 8]).abs() < 1e-15);
        }
    }
}
