//! First-order scheme: piecewise-constant reconstruction, no half-time
//! evolution.

use crate::error::Result;
use crate::grid::{Field, ProblemSpec};

use super::ader::check_dt;
use super::{finish, interface_alpha, interior_range, InterfaceCoeffs};

pub fn step_first_order(field: &Field, spec: &ProblemSpec, dt: f64) -> Result<Field> {
    let coeffs = interface_alpha(field, spec, field.time, None)?;
    step_first_order_with(field, spec, &coeffs, dt)
}

pub fn step_first_order_with(
    field: &Field,
    spec: &ProblemSpec,
    coeffs: &InterfaceCoeffs,
    dt: f64,
) -> Result<Field> {
    check_dt(dt)?;
    let dx = spec.grid.dx;
    let c = spec.lambda * dt / dx;
    let r = spec.beta * dt;
    let diff_ratio = dt / (dx * dx);
    let q = &field.values;

    let mut out = field.clone();
    out.time = field.time + dt;
    for i in interior_range(field) {
        let upwind = if c >= 0.0 {
            c * (q[i] - q[i - 1])
        } else {
            c * (q[i + 1] - q[i])
        };
        let diffusion =
            coeffs.alpha[i] * (q[i + 1] - q[i]) + coeffs.alpha[i - 1] * (q[i - 1] - q[i]);
        out.values[i] = q[i] - upwind + diff_ratio * diffusion + r * q[i];
    }
    finish(out, spec)
}
