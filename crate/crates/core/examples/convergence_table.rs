//! Convergence table for one benchmark.
//!
//! cargo run --release --example convergence_table -- test3 [scheme]

use ader_adr::convergence::{run_study, StudyConfig};
use ader_adr::problems::BenchmarkId;
use ader_adr::schemes::SchemeKind;

fn main() -> ader_adr::Result<()> {
    let mut args = std::env::args().skip(1);
    let id: BenchmarkId = args.next().as_deref().unwrap_or("test2_1").parse()?;
    let name = args.next().unwrap_or_else(|| "ader".into());
    let scheme = SchemeKind::from_name(&name).expect("known scheme name");
    let study = run_study(&StudyConfig::new(id, scheme))?;

    println!("{} with {}", id.name(), scheme.name());
    println!("{:>5} {:>10} {:>6} {:>10} {:>6} {:>10} {:>6}", "N", "L1", "o", "L2", "o", "Linf", "o");
    let o = |v: Option<f64>| v.map_or("".to_string(), |v| format!("{v:.2}"));
    for row in &study.rows {
        println!(
            "{:>5} {:>10.3e} {:>6} {:>10.3e} {:>6} {:>10.3e} {:>6}",
            row.n_cells,
            row.err_l1,
            o(row.order_l1),
            row.err_l2,
            o(row.order_l2),
            row.err_linf,
            o(row.order_linf)
        );
    }
    Ok(())
}
