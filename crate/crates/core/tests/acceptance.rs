//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use ader_adr::convergence::{run_study, Study, StudyConfig};
use ader_adr::grid::DiffusionModel;
use ader_adr::problems::{solve_benchmark, Benchmark, BenchmarkId, NormMode};
use ader_adr::schemes::{step_ader, step_ader_stencil_constant_alpha, step_muscl_hancock, SchemeKind};
use ader_adr::stability::{
    amplification_closed_form, amplification_empirical, check_orthotope, m_theta, Orthotope,
    DEFAULT_N_THETA, STABILITY_SLACK,
};
use common::*;
use num_complex::Complex64;
use rand::Rng;

const TABLE1_L1: [f64; 7] = [2.15e-2, 7.10e-3, 1.95e-3, 5.02e-4, 1.27e-4, 3.19e-5, 7.98e-6];
const TABLE1_FACTOR: f64 = 2.0;
const TABLE1_ORDER: (f64, f64) = (1.9, 2.1);
const TABLE1_BUDGET: Duration = Duration::from_secs(10);

const TABLE5_L1_512: f64 = 2.80e-5;
const TABLE5_FACTOR: f64 = 2.0;
const TABLE5_ORDER: (f64, f64) = (1.9, 2.1);
const TABLE5_BUDGET: Duration = Duration::from_secs(60);

const TABLE4_L1: [f64; 6] = [1.39, 3.48e-1, 6.98e-2, 1.41e-2, 2.95e-3, 5.51e-4];
const TABLE4_L2: [f64; 6] = [7.18e-1, 2.00e-1, 4.26e-2, 8.45e-3, 1.73e-3, 3.18e-4];
const TABLE4_LINF: [f64; 6] = [6.90e-1, 2.16e-1, 4.81e-2, 9.55e-3, 1.91e-3, 3.46e-4];
const TABLE4_FACTOR: f64 = 3.0;
const TABLE4_ORDER: (f64, f64) = (2.0, 2.6);

const TEST21_ORDER: (f64, f64) = (1.8, 2.1);

const LAE_UNSTABLE_C: f64 = 1.05;
const LAE_GROWTH: f64 = 1.001;

const ORTHOTOPE_SAMPLES: usize = 21;
const ORTHOTOPE_BUDGET: Duration = Duration::from_secs(5);

const ORACLE_TOL: f64 = 1e-10;
const MH_TOL: f64 = 1e-12;
const STENCIL_TOL: f64 = 1e-13;
const ADVECTION_REACTION_TOL: f64 = 1e-14;
const CONSTANT_TOL: f64 = 1e-15;

const DT_HALVING_CHANGE: f64 = 0.10;

struct Outcome {
    pass: bool,
    detail: String,
}

fn within(v: f64, (lo, hi): (f64, f64)) -> bool {
    (lo..=hi).contains(&v)
}

fn within_factor(v: f64, target: f64, factor: f64) -> bool {
    v >= target / factor && v <= target * factor
}

fn timed_study(config: &StudyConfig) -> (Study, Duration) {
    let start = Instant::now();
    let study = run_study(config).expect("study runs");
    (study, start.elapsed())
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(" ")
}

fn criterion_1() -> Outcome {
    let (study, elapsed) = timed_study(&StudyConfig::new(BenchmarkId::Test1_1, SchemeKind::AderGeneral));
    let errors: Vec<f64> = study.rows.iter().map(|r| r.err_l1).collect();
    let errors_ok = errors
        .iter()
        .zip(TABLE1_L1)
        .all(|(&e, t)| within_factor(e, t, TABLE1_FACTOR));
    let last = study.rows.last().unwrap();
    let final_orders: Vec<f64> = last.orders().iter().map(|o| o.unwrap()).collect();
    let tail_l1: Vec<f64> = study.rows[4..].iter().map(|r| r.order_l1.unwrap()).collect();
    let orders_ok = final_orders.iter().chain(&tail_l1).all(|&o| within(o, TABLE1_ORDER));
    let r_expected: Vec<f64> = study.rows.iter().map(|r| -1.0 / r.n_cells as f64).collect();
    let r_found: Vec<f64> = study.rows.iter().map(|r| r.r).collect();
    let r_ok = r_found == r_expected;
    let time_ok = elapsed < TABLE1_BUDGET;
    Outcome {
        pass: errors_ok && orders_ok && r_ok && time_ok,
        detail: format!(
            "L1 [{}] within x2: {errors_ok}; final orders {final_orders:.3?}, last L1 orders {tail_l1:.3?}: {orders_ok}; \
             r [{}] equals -1/N: {r_ok}; runtime {elapsed:.2?}: {time_ok}",
            fmt_list(&errors),
            fmt_list(&r_found)
        ),
    }
}

fn criterion_2() -> Outcome {
    let (study, elapsed) = timed_study(&StudyConfig::new(BenchmarkId::Test3, SchemeKind::AderGeneral));
    let last = study.rows.last().unwrap();
    let order = last.order_l1.unwrap();
    let order_ok = within(order, TABLE5_ORDER);
    let err_ok = within_factor(last.err_l1, TABLE5_L1_512, TABLE5_FACTOR);
    let time_ok = elapsed < TABLE5_BUDGET;
    Outcome {
        pass: order_ok && err_ok && time_ok,
        detail: format!(
            "512 cells: L1 {:.3e} (x2 of {TABLE5_L1_512:.2e}): {err_ok}; order {order:.4}: {order_ok}; runtime {elapsed:.2?}: {time_ok}",
            last.err_l1
        ),
    }
}

fn criterion_3() -> Outcome {
    let (study, elapsed) = timed_study(&StudyConfig::new(BenchmarkId::Test2_2, SchemeKind::AderGeneral));
    let mut failures = Vec::new();
    for (row, k) in study.rows.iter().zip(0..) {
        for (name, e, t) in [
            ("L1", row.err_l1, TABLE4_L1[k]),
            ("L2", row.err_l2, TABLE4_L2[k]),
            ("Linf", row.err_linf, TABLE4_LINF[k]),
        ] {
            if !within_factor(e, t, TABLE4_FACTOR) {
                failures.push(format!("{name}@{} {e:.3e} vs {t:.2e} (ratio {:.3})", row.n_cells, e / t));
            }
        }
        if row.n_cells >= 64 {
            for (name, o) in ["L1", "L2", "Linf"].iter().zip(row.orders()) {
                let o = o.unwrap();
                if !within(o, TABLE4_ORDER) {
                    failures.push(format!("order {name}@{} = {o:.3}", row.n_cells));
                }
            }
        }
    }
    let orders: Vec<[f64; 3]> = study.rows[3..]
        .iter()
        .map(|r| r.orders().map(|o| o.unwrap()))
        .collect();
    let errors: Vec<f64> = study.rows.iter().map(|r| r.err_l1).collect();
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "L1 [{}], orders 64..256 {orders:.3?}, runtime {elapsed:.2?}; violations: {}",
            fmt_list(&errors),
            if failures.is_empty() { "none".to_string() } else { failures.join("; ") }
        ),
    }
}

fn criterion_4() -> Outcome {
    let config = StudyConfig::new(BenchmarkId::Test2_1, SchemeKind::AderGeneral).with_meshes(&[32, 64, 128]);
    let (study, _) = timed_study(&config);
    let orders: Vec<[f64; 3]> = study.rows[1..]
        .iter()
        .map(|r| r.orders().map(|o| o.unwrap()))
        .collect();
    let pass = orders.iter().flatten().all(|&o| within(o, TEST21_ORDER));
    Outcome {
        pass,
        detail: format!("orders (L1, L2, Linf) at 64 and 128 cells {orders:.3?}, band {TEST21_ORDER:?}"),
    }
}

fn criterion_5() -> Outcome {
    let worst_stable = (0..=100)
        .map(|k| m_theta(k as f64 / 100.0, 0.0, 0.0, DEFAULT_N_THETA).unwrap())
        .fold(0.0, f64::max);
    let unstable = m_theta(LAE_UNSTABLE_C, 0.0, 0.0, DEFAULT_N_THETA).unwrap();
    let pass = worst_stable <= 1.0 + STABILITY_SLACK && unstable >= LAE_GROWTH;
    Outcome {
        pass,
        detail: format!("max m over c in [0,1]: {worst_stable:.17}; m at c = {LAE_UNSTABLE_C}: {unstable:.6}"),
    }
}

fn criterion_6() -> Outcome {
    let n = (ORTHOTOPE_SAMPLES, ORTHOTOPE_SAMPLES, ORTHOTOPE_SAMPLES);
    let start = Instant::now();
    let inside = check_orthotope(&Orthotope::new(1.0, 0.25, -0.5).unwrap(), n, DEFAULT_N_THETA).unwrap();
    let t_inside = start.elapsed();
    let start = Instant::now();
    let outside = check_orthotope(&Orthotope::new(1.2, 0.25, -0.5).unwrap(), n, DEFAULT_N_THETA).unwrap();
    let t_outside = start.elapsed();
    let time_ok = t_inside < ORTHOTOPE_BUDGET && t_outside < ORTHOTOPE_BUDGET;
    Outcome {
        pass: inside.stable && !outside.stable && time_ok,
        detail: format!(
            "(1, 1/4, -1/2): stable={} max {:.17} in {t_inside:.2?}; (1.2, 1/4, -1/2): stable={} max {:.6} in {t_outside:.2?}",
            inside.stable, inside.max_norm, outside.stable, outside.max_norm
        ),
    }
}

/// Amplification of a Fourier mode through the assembled scheme on a ring.
fn assembled_amplification(theta: f64, c: f64, d: f64, r: f64, n: usize) -> Complex64 {
    let dx = 1.0 / n as f64;
    let dt = 1e-2;
    let spec = periodic_spec(n, dx, c * dx / dt, r / dt, DiffusionModel::Constant(d * dx * dx / dt));
    let re: Vec<f64> = (0..n).map(|i| (theta * i as f64).cos()).collect();
    let im: Vec<f64> = (0..n).map(|i| (theta * i as f64).sin()).collect();
    let out_re = step_ader(&field(&spec, &re), &spec, dt).unwrap();
    let out_im = step_ader(&field(&spec, &im), &spec, dt).unwrap();
    Complex64::new(out_re.interior()[0], out_im.interior()[0])
}

fn criterion_7() -> Outcome {
    let n = 64;
    let mut rng = rng(7);
    let mut worst_stencil = 0.0f64;
    let mut worst_assembled = 0.0f64;
    for _ in 0..50 {
        let c = rng.gen_range(0.0..1.2);
        let d = rng.gen_range(0.0..0.5);
        let r = rng.gen_range(-2.0..0.0);
        for k in 0..n {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let closed = amplification_closed_form(theta, c, d, r);
            let empirical = amplification_empirical(theta, c, d, r, n).unwrap();
            worst_stencil = worst_stencil.max((closed - empirical).norm());
            worst_assembled = worst_assembled.max((closed - assembled_amplification(theta, c, d, r, n)).norm());
        }
    }
    Outcome {
        pass: worst_stencil <= ORACLE_TOL && worst_assembled <= ORACLE_TOL,
        detail: format!(
            "max |closed - empirical| over 64 modes x 50 triples: stencil ring {worst_stencil:.2e}, assembled scheme {worst_assembled:.2e}"
        ),
    }
}

fn criterion_8() -> Outcome {
    let n = 32;
    let dx = 1.0 / n as f64;
    let mut rng = rng(8);
    let (mut mh, mut stencil, mut ar, mut constant) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let lambda: f64 = rng.gen_range(-2.0..2.0);
        let beta = rng.gen_range(-2.0..0.0);
        let alpha = rng.gen_range(0.0..0.05);
        let dt = rng.gen_range(0.05..1.0) * dx / lambda.abs().max(1.0);
        let q = random_values(&mut rng, n);

        let spec = periodic_spec(n, dx, lambda, beta, DiffusionModel::Constant(alpha));
        let f = field(&spec, &q);
        let general = step_ader(&f, &spec, dt).unwrap();
        let muscl = step_muscl_hancock(&f, &spec, dt).unwrap();
        let closed = step_ader_stencil_constant_alpha(&f, &spec, dt).unwrap();
        mh = mh.max(max_abs_diff(general.interior(), muscl.interior()));
        stencil = stencil.max(max_abs_diff(general.interior(), closed.interior()));

        let spec0 = periodic_spec(n, dx, lambda, beta, DiffusionModel::Zero);
        let pure = step_ader(&field(&spec0, &q), &spec0, dt).unwrap();
        let oracle = advection_reaction_stencil(&q, lambda * dt / dx, beta * dt);
        ar = ar.max(max_abs_diff(pure.interior(), &oracle));

        let kappa = rng.gen_range(-5.0..5.0);
        let models = [
            DiffusionModel::Zero,
            DiffusionModel::Constant(alpha),
            DiffusionModel::SpaceTime {
                alpha: std::sync::Arc::new(|x, t| 0.01 * (1.0 + x * x + t)),
                dt_alpha: None,
            },
            DiffusionModel::StateDependent(std::sync::Arc::new(|q: f64| 0.01 * (1.0 + q * q))),
        ];
        for model in models {
            let spec_c = periodic_spec(n, dx, lambda, 0.0, model);
            let out = step_ader(&field(&spec_c, &vec![kappa; n]), &spec_c, dt).unwrap();
            let rel = out
                .interior()
                .iter()
                .map(|v| (v - kappa).abs() / kappa.abs())
                .fold(0.0, f64::max);
            constant = constant.max(rel);
        }
    }
    let pass = mh <= MH_TOL && stencil <= STENCIL_TOL && ar <= ADVECTION_REACTION_TOL && constant <= CONSTANT_TOL;
    Outcome {
        pass,
        detail: format!(
            "(a) ADER vs MUSCL-Hancock {mh:.2e}; (b) general vs stencil {stencil:.2e}; \
             (c) zero-diffusion vs advection-reaction stencil {ar:.2e}; (d) constant state {constant:.2e}"
        ),
    }
}

fn criterion_9() -> Outcome {
    let cells = 256;
    let bench = Benchmark::new(BenchmarkId::Test1_1, cells).unwrap();
    assert_eq!(bench.spec.grid.dx, 1.0 / 128.0);
    let coarse = solve_benchmark(&bench, SchemeKind::AderGeneral, NormMode::SupOverTime).unwrap();
    let mut halved = bench.clone();
    halved.bounds.c_max = Some(bench.bounds.c_max.unwrap() / 2.0);
    let fine = solve_benchmark(&halved, SchemeKind::AderGeneral, NormMode::SupOverTime).unwrap();
    assert_eq!(fine.step.dt, coarse.step.dt / 2.0);
    let (e1, e2) = (coarse.errors.unwrap().abs.l1, fine.errors.unwrap().abs.l1);
    let change = (e1 - e2).abs() / e1;
    Outcome {
        pass: change < DT_HALVING_CHANGE,
        detail: format!(
            "dx = 1/128: L1 {e1:.4e} at dt = {:.4e}, {e2:.4e} at dt/2; relative change {change:.3}",
            coarse.step.dt
        ),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 Test 1.1 table", criterion_1),
        ("2 Test 3 table", criterion_2),
        ("3 Test 2.2 table", criterion_3),
        ("4 Test 2.1 orders", criterion_4),
        ("5 LAE stability", criterion_5),
        ("6 orthotope", criterion_6),
        ("7 amplification oracle", criterion_7),
        ("8 scheme identities", criterion_8),
        ("9 spatial error dominance", criterion_9),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = check();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {name}: {status}: {}", outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
