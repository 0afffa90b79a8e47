//! |A(theta)| for a parameter triple, checked against a solver run on a ring.
//!
//! cargo run --example amplification_curve -- 0.8 0.2 -0.3

use ader_adr::stability::{amplification_curve, amplification_empirical};

fn main() -> ader_adr::Result<()> {
    let v: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let (c, d, r) = match v.as_slice() {
        [c, d, r] => (*c, *d, *r),
        _ => (0.8, 0.2, -0.3),
    };
    println!("c = {c}, d = {d}, r = {r}");
    for s in amplification_curve(c, d, r, 17)? {
        let bar = "*".repeat((s.norm2.sqrt() * 40.0).round() as usize);
        println!("theta = {:6.3}  |A| = {:.6}  {bar}", s.theta, s.norm2.sqrt());
    }
    let theta = std::f64::consts::PI / 4.0;
    let ring = amplification_empirical(theta, c, d, r, 64)?;
    println!("ring of 64 cells at theta = pi/4: |A| = {:.15}", ring.norm());
    Ok(())
}
