//! Gaussian pulse advected with linear decay, solved on a few meshes.

use ader_adr::problems::{solve_benchmark, Benchmark, BenchmarkId, NormMode};
use ader_adr::schemes::SchemeKind;

fn main() -> ader_adr::Result<()> {
    for n in [16, 64, 256] {
        let bench = Benchmark::new(BenchmarkId::Test1_1, n)?;
        let run = solve_benchmark(&bench, SchemeKind::AderGeneral, NormMode::SupOverTime)?;
        let e = run.errors.expect("closed-form solution").abs;
        println!(
            "N = {n:4}  steps = {:4}  c = {:.3}  r = {:+.5}  L1 = {:.3e}  Linf = {:.3e}",
            run.steps, run.step.params.c, run.step.params.r, e.l1, e.linf
        );
    }
    Ok(())
}
