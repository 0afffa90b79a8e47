//! Advected, decaying top-hat: snapshots of the second-order and first-order
//! schemes against the decayed exact profile.

use ader_adr::problems::{exact_solution, solve_benchmark, Benchmark, BenchmarkId, NormMode};
use ader_adr::schemes::SchemeKind;

fn main() -> ader_adr::Result<()> {
    let n = 80;
    for t in [0.25, 0.5, 1.0] {
        let mut bench = Benchmark::with_options(BenchmarkId::Test1_2, n, true)?;
        bench.spec.t_end = t;
        let ader = solve_benchmark(&bench, SchemeKind::AderGeneral, NormMode::FinalTime)?;
        let upwind = solve_benchmark(&bench, SchemeKind::FirstOrder, NormMode::FinalTime)?;
        let l1 = |r: &ader_adr::problems::BenchmarkRun| r.errors.map_or(f64::NAN, |e| e.abs.l1);
        println!("t = {t}: L1 ader = {:.3e}, first order = {:.3e}", l1(&ader), l1(&upwind));
        let min = ader.field.interior().iter().cloned().fold(f64::INFINITY, f64::min);
        let max = ader.field.interior().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        println!("  ader range [{min:.4}, {max:.4}]");
    }

    let mut bench = Benchmark::with_options(BenchmarkId::Test1_2, n, true)?;
    bench.spec.t_end = 0.5;
    let ader = solve_benchmark(&bench, SchemeKind::AderGeneral, NormMode::FinalTime)?;
    let upwind = solve_benchmark(&bench, SchemeKind::FirstOrder, NormMode::FinalTime)?;
    println!("\n{:>8} {:>9} {:>9} {:>9}", "x", "exact", "ader", "first");
    let grid = &bench.spec.grid;
    for i in (0..n).step_by(4) {
        let x = grid.center(i);
        println!(
            "{x:8.4} {:9.4} {:9.4} {:9.4}",
            exact_solution(&bench, x, 0.5)?,
            ader.field.interior()[i],
            upwind.field.interior()[i]
        );
    }
    Ok(())
}
