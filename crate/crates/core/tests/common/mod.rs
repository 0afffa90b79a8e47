#![allow(dead_code)]

use std::sync::Arc;

use ader_adr::grid::{apply_bc, BoundaryCondition, DiffusionModel, Field, Grid1D, ProblemSpec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Periodic problem on `[0, n dx]`.
pub fn periodic_spec(n: usize, dx: f64, lambda: f64, beta: f64, diffusion: DiffusionModel) -> ProblemSpec {
    ProblemSpec {
        lambda,
        beta,
        diffusion,
        q0: Arc::new(|_| 0.0),
        bc: BoundaryCondition::Periodic,
        grid: Grid1D::new(0.0, n as f64 * dx, n).unwrap(),
        t_end: 1.0,
        exact: None,
    }
}

pub fn field(spec: &ProblemSpec, interior: &[f64]) -> Field {
    let mut f = Field::from_interior(interior, 0.0);
    apply_bc(&mut f, spec, 0.0).unwrap();
    f
}

pub fn random_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// The advection-reaction stencil written out term by term, for `c >= 0`;
/// negative Courant numbers use the mirrored neighbours.
pub fn advection_reaction_stencil(q: &[f64], c: f64, r: f64) -> Vec<f64> {
    let n = q.len();
    let (c, sign) = if c < 0.0 { (-c, -1isize) } else { (c, 1) };
    let at = |i: usize, k: isize| q[(i as isize + sign * k).rem_euclid(n as isize) as usize];
    (0..n)
        .map(|i| {
            let (qm2, qm1, q0, qp1) = (at(i, -2), at(i, -1), at(i, 0), at(i, 1));
            q0 - c * ((2.0 + r) / 2.0 * (q0 - qm1) + (2.0 - 2.0 * c + r) / 8.0 * (qp1 - q0 - qm1 + qm2))
                + r * (q0 - c / 4.0 * (qp1 - qm1) + r / 2.0 * q0)
        })
        .collect()
}
