//! Nonlinear diffusion with alpha = 1/q on a periodic interval.

use ader_adr::problems::{solve_benchmark, Benchmark, BenchmarkId, NormMode};
use ader_adr::schemes::SchemeKind;

fn main() -> ader_adr::Result<()> {
    for n in [32, 128, 512] {
        let bench = Benchmark::new(BenchmarkId::Test3, n)?;
        let start = std::time::Instant::now();
        let run = solve_benchmark(&bench, SchemeKind::AderGeneral, NormMode::SupOverTime)?;
        let e = run.errors.expect("closed-form solution").abs;
        let mass: f64 = run.field.interior().iter().sum::<f64>() * bench.spec.grid.dx;
        println!(
            "N = {n:4}  steps = {:6}  d = {:.3}  L1 = {:.3e}  mass = {mass:.12}  {:.2?}",
            run.steps,
            run.step.params.d,
            e.l1,
            start.elapsed()
        );
    }
    Ok(())
}
