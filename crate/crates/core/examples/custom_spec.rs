//! Solves a problem described by a spec file.
//!
//! cargo run --example custom_spec -- crates/core/examples/data/decaying_wave.spec

use ader_adr::grid::project_initial;
use ader_adr::problems::select_dt;
use ader_adr::schemes::SchemeKind;
use ader_adr::solver::{run, RunOptions};
use ader_adr::specfile::load_spec;

fn main() -> ader_adr::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/decaying_wave.spec").to_string());
    let problem = load_spec(path.as_ref())?;
    let spec = &problem.spec;
    let step = match problem.dt {
        Some(dt) => dt,
        None => select_dt(spec, &problem.bounds, problem.alpha_ref)?.dt,
    };
    let field = project_initial(spec, 16)?;
    let mut worst = 0.0f64;
    let summary = run(
        spec,
        SchemeKind::AderGeneral,
        field,
        RunOptions { dt: step, d_max: problem.bounds.d_max },
        |f| {
            if let Some(exact) = &spec.exact {
                for (i, q) in f.interior().iter().enumerate() {
                    worst = worst.max((q - exact(spec.grid.center(i), f.time)).abs());
                }
            }
            Ok(())
        },
    )?;
    println!("{} cells, {} steps of {step:.4e}", spec.grid.n_cells, summary.steps);
    if spec.exact.is_some() {
        println!("max pointwise deviation over the run: {worst:.3e}");
    }
    summary.field.write_csv(&spec.grid, std::io::stdout().lock())?;
    Ok(())
}
