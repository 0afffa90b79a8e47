//! Mesh-refinement studies: error and observed-order tables.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{fmt_f64, fmt_opt};
use crate::problems::{
    reference_errors, solve_benchmark, solve_history, Benchmark, BenchmarkId, ErrorNorms,
    NormMode, Norms,
};
use crate::schemes::SchemeKind;

pub const DEFAULT_MESHES: [usize; 7] = [8, 16, 32, 64, 128, 256, 512];
pub const DEFAULT_REFERENCE_CELLS: usize = 512;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub benchmark: BenchmarkId,
    pub scheme: SchemeKind,
    pub meshes: Vec<usize>,
    pub mode: NormMode,
    /// Reference mesh for benchmarks without a closed-form solution.
    pub reference_cells: usize,
    /// Test 1.2 only: compare against the decayed step.
    pub decayed_step: bool,
}

impl StudyConfig {
    /// Default meshes and modes for a benchmark.
    pub fn new(benchmark: BenchmarkId, scheme: SchemeKind) -> Self {
        let meshes = if benchmark.has_exact_solution() {
            DEFAULT_MESHES.to_vec()
        } else {
            DEFAULT_MESHES[..6].to_vec()
        };
        Self {
            benchmark,
            scheme,
            meshes,
            mode: NormMode::SupOverTime,
            reference_cells: DEFAULT_REFERENCE_CELLS,
            decayed_step: false,
        }
    }

    pub fn with_meshes(mut self, meshes: &[usize]) -> Self {
        self.meshes = meshes.to_vec();
        self
    }
}

/// One row of a convergence table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub n_cells: usize,
    pub err_l1: f64,
    pub err_l2: f64,
    pub err_linf: f64,
    pub rel_l1: f64,
    pub rel_l2: f64,
    pub rel_linf: f64,
    pub order_l1: Option<f64>,
    pub order_l2: Option<f64>,
    pub order_linf: Option<f64>,
    pub c: f64,
    pub d: f64,
    pub r: f64,
}

impl ErrorReport {
    fn new(n_cells: usize, e: ErrorNorms, c: f64, d: f64, r: f64) -> Self {
        Self {
            n_cells,
            err_l1: e.abs.l1,
            err_l2: e.abs.l2,
            err_linf: e.abs.linf,
            rel_l1: e.rel.l1,
            rel_l2: e.rel.l2,
            rel_linf: e.rel.linf,
            order_l1: None,
            order_l2: None,
            order_linf: None,
            c,
            d,
            r,
        }
    }

    pub fn errors(&self) -> Norms {
        Norms {
            l1: self.err_l1,
            l2: self.err_l2,
            linf: self.err_linf,
        }
    }

    pub fn orders(&self) -> [Option<f64>; 3] {
        [self.order_l1, self.order_l2, self.order_linf]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Study {
    pub config: StudyConfig,
    pub rows: Vec<ErrorReport>,
}

/// `log(e_coarse / e_fine) / log(ratio)`; `None` when either error is zero
/// or not finite.
pub fn order_between(e_coarse: f64, e_fine: f64, ratio: f64) -> Option<f64> {
    let ok = |e: f64| e > 0.0 && e.is_finite();
    (ok(e_coarse) && ok(e_fine) && ratio > 1.0)
        .then(|| (e_coarse / e_fine).ln() / ratio.ln())
}

fn fill_orders(rows: &mut [ErrorReport]) {
    for k in 1..rows.len() {
        let (prev, cur) = (rows[k - 1], &mut rows[k]);
        let ratio = cur.n_cells as f64 / prev.n_cells as f64;
        cur.order_l1 = order_between(prev.err_l1, cur.err_l1, ratio);
        cur.order_l2 = order_between(prev.err_l2, cur.err_l2, ratio);
        cur.order_linf = order_between(prev.err_linf, cur.err_linf, ratio);
    }
}

fn wrap(cells: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        e @ Error::Study { .. } => e,
        e => Error::Study {
            cells,
            source: Box::new(e),
        },
    }
}

/// Runs every mesh of the study; meshes are solved in parallel and the
/// result does not depend on the thread count.
pub fn run_study(config: &StudyConfig) -> Result<Study> {
    if config.meshes.is_empty() {
        return Err(Error::Config("study needs at least one mesh".into()));
    }
    if config.meshes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("study meshes must be strictly increasing".into()));
    }
    let base = Benchmark::with_options(config.benchmark, config.meshes[0], config.decayed_step)?;

    let reference = if config.benchmark.has_exact_solution() {
        None
    } else {
        for &n in &config.meshes {
            if config.reference_cells % n != 0 || n >= config.reference_cells {
                return Err(Error::NonDivisibleMesh {
                    coarse: n,
                    fine: config.reference_cells,
                });
            }
        }
        let fine = base
            .with_cells(config.reference_cells)
            .and_then(|b| solve_history(&b, config.scheme))
            .map_err(wrap(config.reference_cells))?;
        Some(fine)
    };

    let mut rows = config
        .meshes
        .par_iter()
        .map(|&n| {
            let bench = base.with_cells(n).map_err(wrap(n))?;
            let (errors, step) = match &reference {
                Some(fine) => {
                    let coarse = solve_history(&bench, config.scheme).map_err(wrap(n))?;
                    let e = reference_errors(&coarse, fine, &bench.spec.grid, config.mode)
                        .map_err(wrap(n))?;
                    (e, coarse.step)
                }
                None => {
                    let run = solve_benchmark(&bench, config.scheme, config.mode).map_err(wrap(n))?;
                    let e = run
                        .errors
                        .ok_or_else(|| wrap(n)(Error::NoExactSolution(bench.id.to_string())))?;
                    (e, run.step)
                }
            };
            let p = step.params;
            Ok(ErrorReport::new(n, errors, p.c, p.d, p.r))
        })
        .collect::<Result<Vec<_>>>()?;
    fill_orders(&mut rows);
    Ok(Study {
        config: config.clone(),
        rows,
    })
}

pub const REPORT_HEADER: &str = "cells,err_l1,order_l1,err_l2,order_l2,err_linf,order_linf,c,d,r";

pub fn write_report_csv<W: Write>(rows: &[ErrorReport], mut out: W) -> Result<()> {
    writeln!(out, "{REPORT_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            row.n_cells,
            fmt_f64(row.err_l1),
            fmt_opt(row.order_l1),
            fmt_f64(row.err_l2),
            fmt_opt(row.order_l2),
            fmt_f64(row.err_linf),
            fmt_opt(row.order_linf),
            fmt_f64(row.c),
            fmt_f64(row.d),
            fmt_f64(row.r),
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudySummary {
    pub benchmark: String,
    pub scheme: String,
    /// Largest `|order - 2|` over every norm and mesh pair.
    pub worst_order_deviation_from_2: Option<f64>,
}

impl Study {
    pub fn summary(&self) -> StudySummary {
        let worst = self
            .rows
            .iter()
            .flat_map(|r| r.orders())
            .flatten()
            .map(|o| (o - 2.0).abs())
            .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
        StudySummary {
            benchmark: self.config.benchmark.name().to_string(),
            scheme: self.config.scheme.name().to_string(),
            worst_order_deviation_from_2: worst,
        }
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        write_report_csv(&self.rows, &mut buf)?;
        Ok(buf)
    }
}
