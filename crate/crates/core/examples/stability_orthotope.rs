//! Checks a few parameter boxes and prints a slice of the stability region.

use ader_adr::stability::{check_orthotope, sample_region, AxisRange, Orthotope, RegionRanges};

fn main() -> ader_adr::Result<()> {
    for (c, d, r) in [(1.0, 0.25, -0.5), (0.5, 0.5, -1.0), (1.2, 0.25, -0.5), (1.0, 0.3, -0.5)] {
        let report = check_orthotope(&Orthotope::new(c, d, r)?, (21, 21, 21), 721)?;
        let a = report.argmax;
        println!(
            "[0,{c}]x[0,{d}]x[{r},0]: max |A| = {:.6} at (c={:.3}, d={:.3}, r={:.3}, theta={:.3})  {}",
            report.max_norm,
            a.c,
            a.d,
            a.r,
            a.theta,
            if report.stable { "stable" } else { "unstable" }
        );
    }

    // r = -0.5 slice: '#' stable, '.' unstable
    let ranges = RegionRanges {
        c: AxisRange { lo: 0.0, hi: 1.5, n: 61 },
        d: AxisRange { lo: 0.0, hi: 0.6, n: 25 },
        r: AxisRange::point(-0.5),
    };
    let samples = sample_region(&ranges, 361)?;
    println!("\nd (rows, top = 0.6) vs c (columns, 0 to 1.5), r = -0.5");
    for row in samples.chunks(61).rev() {
        let line: String = row.iter().map(|s| if s.m_theta <= 1.0 + 1e-12 { '#' } else { '.' }).collect();
        println!("{:5.3} {line}", row[0].d);
    }
    Ok(())
}
