//! Von Neumann analysis of the constant-coefficient scheme.
//!
//! The amplification factor `A(theta, c, d, r)` is available in closed form
//! and empirically, by stepping a Fourier mode on a periodic ring with the
//! five-point stencil. The stencil is the ground truth; the closed form is
//! tested against it.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::N_GHOST;
use crate::io::fmt_f64;
use crate::schemes::constant_alpha_stencil;

pub const DEFAULT_N_THETA: usize = 721;

/// `max |A|` may exceed one by this much and still count as stable.
pub const STABILITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplificationSample {
    pub theta: f64,
    pub c: f64,
    pub d: f64,
    pub r: f64,
    pub a: Complex64,
    pub norm2: f64,
}

impl AmplificationSample {
    pub fn new(theta: f64, c: f64, d: f64, r: f64) -> Self {
        let a = amplification_closed_form(theta, c, d, r);
        Self {
            theta,
            c,
            d,
            r,
            a,
            norm2: a.norm_sqr(),
        }
    }
}

/// Axis-aligned box `[0, c_max] x [0, d_max] x [r_min, 0]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Orthotope {
    pub c_max: f64,
    pub d_max: f64,
    pub r_min: f64,
}

impl Orthotope {
    pub fn new(c_max: f64, d_max: f64, r_min: f64) -> Result<Self> {
        if !(c_max >= 0.0 && d_max >= 0.0 && r_min <= 0.0) {
            return Err(Error::Config(format!(
                "orthotope needs c_max >= 0, d_max >= 0, r_min <= 0; got ({c_max}, {d_max}, {r_min})"
            )));
        }
        Ok(Self { c_max, d_max, r_min })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct Trig {
    cos: f64,
    sin: f64,
    cos2: f64,
    sin2: f64,
}

impl Trig {
    fn new(theta: f64) -> Self {
        let (sin, cos) = theta.sin_cos();
        let (sin2, cos2) = (2.0 * theta).sin_cos();
        Self { cos, sin, cos2, sin2 }
    }
}

fn amplification_from_trig(t: &Trig, c: f64, d: f64, r: f64) -> Complex64 {
    let i = Complex64::i();
    // 1 - e^{-I theta}
    let backward = Complex64::new(1.0 - t.cos, t.sin);
    // e^{I theta} - 1 - e^{-I theta} + e^{-2 I theta}
    let curvature = Complex64::new(t.cos2 - 1.0, 2.0 * t.sin - t.sin2);
    // e^{I theta} - 3 + 3 e^{-I theta} - e^{-2 I theta}
    let third = Complex64::new(4.0 * t.cos - 3.0 - t.cos2, -2.0 * t.sin + t.sin2);

    let advective = backward
        + (1.0 - c) / 4.0 * curvature
        + r / 2.0 * (backward + 0.25 * curvature)
        + d / 2.0 * third;
    let diffusive = Complex64::new(2.0 * t.cos - 2.0, 0.0)
        - c / 4.0 * i * (2.0 * t.sin2 - 4.0 * t.sin)
        + d / 2.0 * (2.0 * t.cos2 - 8.0 * t.cos + 6.0)
        + r / 2.0 * (2.0 * t.cos - 2.0);
    let reactive = Complex64::new(1.0 + d * (t.cos - 1.0) + r / 2.0, -c / 2.0 * t.sin);
    1.0 - c * advective + d * diffusive + r * reactive
}

/// Closed-form amplification factor of the constant-coefficient scheme.
pub fn amplification_closed_form(theta: f64, c: f64, d: f64, r: f64) -> Complex64 {
    amplification_from_trig(&Trig::new(theta), c, d, r)
}

/// Amplification factor measured by stepping `e^{I theta i}` once on a
/// periodic ring of `n_cells` cells.
pub fn amplification_empirical(theta: f64, c: f64, d: f64, r: f64, n_cells: usize) -> Result<Complex64> {
    if n_cells < 8 {
        return Err(Error::Config(format!("need at least 8 cells, got {n_cells}")));
    }
    let k = theta * n_cells as f64 / (2.0 * PI);
    if (k - k.round()).abs() > 1e-9 {
        return Err(Error::Config(format!(
            "theta = {theta} is not a mode of a {n_cells}-cell ring"
        )));
    }
    let len = n_cells + 2 * N_GHOST;
    let cell = |p: usize| (p as isize - N_GHOST as isize).rem_euclid(n_cells as isize) as f64;
    let re: Vec<f64> = (0..len).map(|p| (theta * cell(p)).cos()).collect();
    let im: Vec<f64> = (0..len).map(|p| (theta * cell(p)).sin()).collect();
    let mut re_out = re.clone();
    let mut im_out = im.clone();
    let mirrored = c < 0.0;
    constant_alpha_stencil(&re, c.abs(), d, r, mirrored, &mut re_out);
    constant_alpha_stencil(&im, c.abs(), d, r, mirrored, &mut im_out);

    let multipliers: Vec<Complex64> = (N_GHOST..N_GHOST + n_cells)
        .map(|p| Complex64::new(re_out[p], im_out[p]) / Complex64::new(re[p], im[p]))
        .collect();
    let first = multipliers[0];
    let tol = 1e-12 * first.norm().max(1.0);
    if let Some(bad) = multipliers.iter().position(|m| (m - first).norm() > tol) {
        return Err(Error::Consistency(format!(
            "Fourier multiplier differs between cell 0 ({first}) and cell {bad} ({})",
            multipliers[bad]
        )));
    }
    Ok(first)
}

/// Uniform closed grid of `n` angles on `[-pi, pi]`.
pub fn theta_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| -PI + 2.0 * PI * k as f64 / (n - 1) as f64)
        .collect()
}

fn trig_table(n_theta: usize) -> Vec<(f64, Trig)> {
    theta_grid(n_theta)
        .into_iter()
        .map(|th| (th, Trig::new(th)))
        .collect()
}

fn max_over_theta(table: &[(f64, Trig)], c: f64, d: f64, r: f64) -> (f64, f64) {
    table.iter().fold((f64::NEG_INFINITY, 0.0), |best, (th, t)| {
        let norm = amplification_from_trig(t, c, d, r).norm();
        if norm > best.0 {
            (norm, *th)
        } else {
            best
        }
    })
}

/// `max_theta |A(theta, c, d, r)|` over a uniform grid of `n_theta` angles.
pub fn m_theta(c: f64, d: f64, r: f64, n_theta: usize) -> Result<f64> {
    check_n_theta(n_theta)?;
    Ok(max_over_theta(&trig_table(n_theta), c, d, r).0)
}

fn check_n_theta(n_theta: usize) -> Result<()> {
    if n_theta < 3 {
        return Err(Error::Config(format!("n_theta must be at least 3, got {n_theta}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Argmax {
    pub c: f64,
    pub d: f64,
    pub r: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrthotopeReport {
    pub c_max: f64,
    pub d_max: f64,
    pub r_min: f64,
    pub max_norm: f64,
    pub argmax: Argmax,
    pub stable: bool,
}

/// Inclusive uniform axis; a single point when `n == 1` or the axis is degenerate.
fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 || lo == hi {
        return vec![lo];
    }
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

/// Samples `m_theta` over the orthotope and reports its maximum.
pub fn check_orthotope(
    bounds: &Orthotope,
    resolution: (usize, usize, usize),
    n_theta: usize,
) -> Result<OrthotopeReport> {
    check_n_theta(n_theta)?;
    let checks = [
        (bounds.c_max != 0.0, resolution.0, "c"),
        (bounds.d_max != 0.0, resolution.1, "d"),
        (bounds.r_min != 0.0, resolution.2, "r"),
    ];
    for (active, n, name) in checks {
        if active && n < 2 {
            return Err(Error::Config(format!(
                "axis {name} needs at least 2 samples, got {n}"
            )));
        }
    }
    let table = trig_table(n_theta);
    let points: Vec<(f64, f64, f64)> = axis(bounds.r_min, 0.0, resolution.2)
        .into_iter()
        .flat_map(|r| {
            let cs = axis(0.0, bounds.c_max, resolution.0);
            axis(0.0, bounds.d_max, resolution.1)
                .into_iter()
                .flat_map(move |d| cs.clone().into_iter().map(move |c| (c, d, r)))
        })
        .collect();
    let maxima: Vec<(f64, f64)> = points
        .par_iter()
        .map(|&(c, d, r)| max_over_theta(&table, c, d, r))
        .collect();
    let (idx, &(max_norm, theta)) = maxima
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, &(f64, f64))>, cur| match best {
            Some(b) if b.1 .0 >= cur.1 .0 => Some(b),
            _ => Some(cur),
        })
        .expect("at least one sample");
    let (c, d, r) = points[idx];
    Ok(OrthotopeReport {
        c_max: bounds.c_max,
        d_max: bounds.d_max,
        r_min: bounds.r_min,
        max_norm,
        argmax: Argmax { c, d, r, theta },
        stable: max_norm <= 1.0 + STABILITY_SLACK,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl AxisRange {
    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v, n: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionRanges {
    pub c: AxisRange,
    pub d: AxisRange,
    pub r: AxisRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSample {
    pub c: f64,
    pub d: f64,
    pub r: f64,
    pub m_theta: f64,
}

/// Dense `m_theta` table; `r` varies slowest and `c` fastest.
pub fn sample_region(ranges: &RegionRanges, n_theta: usize) -> Result<Vec<RegionSample>> {
    check_n_theta(n_theta)?;
    for (name, a) in [("c", ranges.c), ("d", ranges.d), ("r", ranges.r)] {
        if a.n == 0 {
            return Err(Error::Config(format!("axis {name} needs at least one sample")));
        }
    }
    let table = trig_table(n_theta);
    let mut points = Vec::with_capacity(ranges.c.n * ranges.d.n * ranges.r.n);
    for r in axis(ranges.r.lo, ranges.r.hi, ranges.r.n) {
        for d in axis(ranges.d.lo, ranges.d.hi, ranges.d.n) {
            for c in axis(ranges.c.lo, ranges.c.hi, ranges.c.n) {
                points.push((c, d, r));
            }
        }
    }
    Ok(points
        .par_iter()
        .map(|&(c, d, r)| RegionSample {
            c,
            d,
            r,
            m_theta: max_over_theta(&table, c, d, r).0,
        })
        .collect())
}

pub fn write_region_csv<W: Write>(samples: &[RegionSample], mut out: W) -> Result<()> {
    writeln!(out, "c,d,r,m_theta")?;
    for s in samples {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(s.c),
            fmt_f64(s.d),
            fmt_f64(s.r),
            fmt_f64(s.m_theta)
        )?;
    }
    Ok(())
}

/// `A(theta)` along the closed theta grid for a fixed parameter triple.
pub fn amplification_curve(c: f64, d: f64, r: f64, n_theta: usize) -> Result<Vec<AmplificationSample>> {
    check_n_theta(n_theta)?;
    Ok(theta_grid(n_theta)
        .into_iter()
        .map(|th| AmplificationSample::new(th, c, d, r))
        .collect())
}

pub fn write_curve_csv<W: Write>(samples: &[AmplificationSample], mut out: W) -> Result<()> {
    writeln!(out, "theta,re,im,norm")?;
    for s in samples {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(s.theta),
            fmt_f64(s.a.re),
            fmt_f64(s.a.im),
            fmt_f64(s.norm2.sqrt())
        )?;
    }
    Ok(())
}

/// Physical inputs that tie `c`, `d` and `r` to a single time step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParameters {
    pub lambda: f64,
    pub beta: f64,
    pub alpha_ref: f64,
    pub dx: f64,
}

/// `(c, d, r)` realized by one time step `dt` on a mesh of spacing `dx`.
pub fn coupled_parameters(p: &PhysicalParameters, dt: f64) -> Result<(f64, f64, f64)> {
    if !(p.dx > 0.0 && dt > 0.0) {
        return Err(Error::Config("dx and dt must be positive".into()));
    }
    Ok((p.lambda * dt / p.dx, p.alpha_ref * dt / (p.dx * p.dx), p.beta * dt))
}

/// Reaction number implied by fixing the Courant number: `beta c dx / lambda`.
pub fn reaction_for_courant(c: f64, lambda: f64, beta: f64, dx: f64) -> f64 {
    beta * c * dx / lambda
}

/// Courant number implied by fixing the reaction number: `lambda r / (beta dx)`.
pub fn courant_for_reaction(r: f64, lambda: f64, beta: f64, dx: f64) -> f64 {
    lambda * r / (beta * dx)
}
