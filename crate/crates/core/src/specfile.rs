//! Flat `key = value` problem descriptions for custom runs.
//!
//! ```text
//! # advected gaussian with a tabulated diffusion coefficient
//! x_left  = 0
//! x_right = 2*pi
//! cells   = 128
//! t_end   = 1
//! lambda  = 1
//! beta    = -0.5
//! alpha   = table:alpha.csv      # rows x,t,alpha on a tensor grid
//! q0      = builtin:gaussian
//! bc      = periodic
//! c_max   = 0.9
//! d_max   = 0.25
//! ```
//!
//! `alpha` is a number, `builtin:<name>`, `state:<name>` or `table:<path>`;
//! `q0` and `exact` are `builtin:<name>` or `table:<path>`. Table paths are
//! relative to the spec file. Unknown or repeated keys are rejected.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{BoundaryCondition, DiffusionModel, Grid1D, ProblemSpec, SpaceFn, SpaceTimeFn};
use crate::problems::{reference_alpha, StepBounds};

const KEYS: [&str; 15] = [
    "x_left", "x_right", "cells", "t_end", "lambda", "beta", "alpha", "q0", "exact", "bc",
    "c_max", "d_max", "r_min", "dt", "alpha_ref",
];

/// A parsed spec file.
#[derive(Debug, Clone)]
pub struct CustomProblem {
    pub spec: ProblemSpec,
    pub bounds: StepBounds,
    pub alpha_ref: f64,
    /// Fixed step overriding the bounds.
    pub dt: Option<f64>,
}

/// Piecewise-linear table in one variable, constant beyond its ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1D {
    xs: Vec<f64>,
    values: Vec<f64>,
}

impl Table1D {
    pub fn new(mut rows: Vec<(f64, f64)>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Config("a table needs at least two rows".into()));
        }
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        if rows.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Config("table abscissae must be distinct".into()));
        }
        Ok(Self {
            xs: rows.iter().map(|r| r.0).collect(),
            values: rows.iter().map(|r| r.1).collect(),
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (i, s) = locate(&self.xs, x);
        self.values[i] * (1.0 - s) + self.values[i + 1] * s
    }
}

/// Bilinear table on a tensor grid of `(x, t)`, clamped beyond its edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Table2D {
    xs: Vec<f64>,
    ts: Vec<f64>,
    /// Row-major in `x`: `values[ix * ts.len() + it]`.
    values: Vec<f64>,
}

impl Table2D {
    pub fn new(rows: &[(f64, f64, f64)]) -> Result<Self> {
        let axis = |pick: fn(&(f64, f64, f64)) -> f64| {
            let mut v: Vec<f64> = rows.iter().map(pick).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        };
        let xs = axis(|r| r.0);
        let ts = axis(|r| r.1);
        if xs.len() < 2 || ts.len() < 2 {
            return Err(Error::Config(
                "an (x, t) table needs at least two values of each variable".into(),
            ));
        }
        if rows.len() != xs.len() * ts.len() {
            return Err(Error::Config(format!(
                "an (x, t) table must fill a {} x {} grid, found {} rows",
                xs.len(),
                ts.len(),
                rows.len()
            )));
        }
        let mut values = vec![f64::NAN; rows.len()];
        for &(x, t, v) in rows {
            let ix = xs.partition_point(|&a| a < x);
            let it = ts.partition_point(|&a| a < t);
            let slot = &mut values[ix * ts.len() + it];
            if !slot.is_nan() {
                return Err(Error::Config(format!("duplicate table entry at ({x}, {t})")));
            }
            *slot = v;
        }
        Ok(Self { xs, ts, values })
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        let (i, s) = locate(&self.xs, x);
        let (j, u) = locate(&self.ts, t);
        let nt = self.ts.len();
        let v = |a: usize, b: usize| self.values[a * nt + b];
        (1.0 - s) * ((1.0 - u) * v(i, j) + u * v(i, j + 1))
            + s * ((1.0 - u) * v(i + 1, j) + u * v(i + 1, j + 1))
    }
}

/// Index of the bracketing interval and the clamped fraction within it.
fn locate(xs: &[f64], x: f64) -> (usize, f64) {
    let i = xs.partition_point(|&a| a <= x).clamp(1, xs.len() - 1) - 1;
    let s = ((x - xs[i]) / (xs[i + 1] - xs[i])).clamp(0.0, 1.0);
    (i, s)
}

fn parse_number(key: &str, value: &str) -> Result<f64> {
    let v = value.replace(' ', "");
    let bad = || Error::Config(format!("{key}: cannot read '{value}' as a number"));
    let (sign, body) = match v.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, v.as_str()),
    };
    let num = |s: &str| -> Result<f64> {
        match s {
            "pi" => Ok(PI),
            "sqrt2" => Ok(SQRT_2),
            _ => s.parse::<f64>().map_err(|_| bad()),
        }
    };
    let product = body.split('*').map(num).collect::<Result<Vec<_>>>()?;
    let x = sign * product.iter().product::<f64>();
    if x.is_finite() {
        Ok(x)
    } else {
        Err(bad())
    }
}

fn read_rows(path: &Path, width: usize) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::Config(format!("cannot read table {}: {e}", path.display()))
    })?;
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> = cells.iter().map(|c| c.parse::<f64>()).collect();
        match parsed {
            Ok(v) if v.len() == width => rows.push(v),
            // a header line is allowed only first
            Err(_) if rows.is_empty() && k == 0 => continue,
            _ => {
                return Err(Error::Config(format!(
                    "{}:{}: expected {width} numeric columns",
                    path.display(),
                    k + 1
                )))
            }
        }
    }
    Ok(rows)
}

pub fn load_table_1d(path: &Path) -> Result<Table1D> {
    Table1D::new(read_rows(path, 2)?.into_iter().map(|r| (r[0], r[1])).collect())
}

pub fn load_table_2d(path: &Path) -> Result<Table2D> {
    let rows: Vec<_> = read_rows(path, 3)?.into_iter().map(|r| (r[0], r[1], r[2])).collect();
    Table2D::new(&rows)
}

/// Initial conditions by name.
pub fn builtin_initial(name: &str) -> Option<SpaceFn> {
    let f: SpaceFn = match name {
        "gaussian" => Arc::new(|x| (-2.0 * x * x).exp()),
        "step" => Arc::new(|x| if (0.125..=0.5).contains(&x) { 1.0 } else { 0.0 }),
        "sine" => Arc::new(|x| (PI * x).sin()),
        "exp_sin2" => Arc::new(|x: f64| x.sin().powi(2).exp()),
        "test3" => Arc::new(|x| 2f64.sinh() / (2f64.cosh() - (SQRT_2 * (x - 1.0)).sin())),
        "one" => Arc::new(|_| 1.0),
        _ => return None,
    };
    Some(f)
}

/// Exact solutions of the built-in benchmarks, by benchmark name.
pub fn builtin_exact(name: &str) -> Option<SpaceTimeFn> {
    let bench: crate::problems::BenchmarkId = name.parse().ok()?;
    crate::problems::Benchmark::new(bench, 8).ok()?.spec.exact
}

/// Space-time diffusion coefficients by name, with analytic time derivative.
pub fn builtin_alpha(name: &str) -> Option<DiffusionModel> {
    match name {
        "test2_2" => Some(DiffusionModel::SpaceTime {
            alpha: Arc::new(|x, t| 1e-5 * (x * (t - 1.0).powi(2)).exp()),
            dt_alpha: Some(Arc::new(|x, t| {
                1e-5 * (x * (t - 1.0).powi(2)).exp() * 2.0 * x * (t - 1.0)
            })),
        }),
        _ => None,
    }
}

/// State-dependent coefficients `alpha(q)` by name.
pub fn builtin_state_alpha(name: &str) -> Option<DiffusionModel> {
    let f: SpaceFn = match name {
        "inverse" => Arc::new(|q| 1.0 / q),
        "linear" => Arc::new(|q| q),
        "square" => Arc::new(|q| q * q),
        _ => return None,
    };
    Some(DiffusionModel::StateDependent(f))
}

fn split_source<'a>(key: &str, value: &'a str) -> Result<(&'a str, &'a str)> {
    value
        .split_once(':')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Error::Config(format!("{key}: expected 'builtin:<name>' or 'table:<path>', got '{value}'")))
}

fn resolve(base: &Path, p: &str) -> PathBuf {
    let p = Path::new(p);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Parses spec text; `base_dir` anchors relative table paths.
pub fn parse_spec(text: &str, base_dir: &Path) -> Result<CustomProblem> {
    let mut entries: BTreeMap<&str, &str> = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(a, b)| (a.trim(), b.trim()))
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", k + 1)))?;
        if !KEYS.contains(&key) {
            return Err(Error::Config(format!("line {}: unknown key '{key}'", k + 1)));
        }
        if entries.insert(key, value).is_some() {
            return Err(Error::Config(format!("line {}: key '{key}' given twice", k + 1)));
        }
    }
    let required = |key: &str| {
        entries
            .get(key)
            .copied()
            .ok_or_else(|| Error::Config(format!("missing key '{key}'")))
    };
    let number = |key: &str| -> Result<Option<f64>> {
        entries.get(key).map(|v| parse_number(key, v)).transpose()
    };

    let cells_text = required("cells")?;
    let cells: usize = cells_text
        .parse()
        .map_err(|_| Error::Config(format!("cells: '{cells_text}' is not a positive integer")))?;
    let grid = Grid1D::new(
        parse_number("x_left", required("x_left")?)?,
        parse_number("x_right", required("x_right")?)?,
        cells,
    )?;

    let diffusion = match entries.get("alpha") {
        None => DiffusionModel::Zero,
        Some(v) if v.contains(':') => {
            let (kind, name) = split_source("alpha", v)?;
            match kind {
                "builtin" => builtin_alpha(name),
                "state" => builtin_state_alpha(name),
                "table" => {
                    let table = Arc::new(load_table_2d(&resolve(base_dir, name))?);
                    Some(DiffusionModel::SpaceTime {
                        alpha: Arc::new(move |x, t| table.eval(x, t)),
                        dt_alpha: None,
                    })
                }
                _ => None,
            }
            .ok_or_else(|| Error::Config(format!("alpha: unknown source '{v}'")))?
        }
        Some(v) => match parse_number("alpha", v)? {
            a if a == 0.0 => DiffusionModel::Zero,
            a => DiffusionModel::Constant(a),
        },
    };

    let q0_text = required("q0")?;
    let q0: SpaceFn = match split_source("q0", q0_text)? {
        ("builtin", name) => builtin_initial(name)
            .ok_or_else(|| Error::Config(format!("q0: unknown builtin '{name}'")))?,
        ("table", path) => {
            let table = load_table_1d(&resolve(base_dir, path))?;
            Arc::new(move |x| table.eval(x))
        }
        _ => return Err(Error::Config(format!("q0: unknown source '{q0_text}'"))),
    };

    let exact: Option<SpaceTimeFn> = match entries.get("exact") {
        None => None,
        Some(v) => Some(match split_source("exact", v)? {
            ("builtin", name) => builtin_exact(name)
                .ok_or_else(|| Error::Config(format!("exact: unknown builtin '{name}'")))?,
            ("table", path) => {
                let table = load_table_2d(&resolve(base_dir, path))?;
                Arc::new(move |x, t| table.eval(x, t))
            }
            _ => return Err(Error::Config(format!("exact: unknown source '{v}'"))),
        }),
    };

    let bc = match entries.get("bc").copied().unwrap_or("periodic") {
        "periodic" => BoundaryCondition::Periodic,
        "dirichlet" => BoundaryCondition::DirichletExact,
        other => return Err(Error::Config(format!("bc: unknown boundary condition '{other}'"))),
    };

    let spec = ProblemSpec {
        lambda: number("lambda")?.unwrap_or(0.0),
        beta: number("beta")?.unwrap_or(0.0),
        diffusion,
        q0,
        bc,
        grid,
        t_end: parse_number("t_end", required("t_end")?)?,
        exact,
    };
    spec.validate()?;
    let bounds = StepBounds::new(number("c_max")?, number("d_max")?, number("r_min")?);
    let alpha_ref = match number("alpha_ref")? {
        Some(a) => a,
        None => reference_alpha(&spec),
    };
    let dt = number("dt")?;
    if let Some(dt) = dt {
        if dt <= 0.0 {
            return Err(Error::Config(format!("dt must be positive, got {dt}")));
        }
    }
    Ok(CustomProblem {
        spec,
        bounds,
        alpha_ref,
        dt,
    })
}

pub fn load_spec(path: &Path) -> Result<CustomProblem> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read spec file {}: {e}", path.display())))?;
    parse_spec(&text, path.parent().unwrap_or(Path::new(".")))
}
