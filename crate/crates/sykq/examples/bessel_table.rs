//! Tabulate Bessel functions of the first kind from the backward (Miller)
//! recurrence against an independent extended-precision power series, and
//! show how the expansion cutoff formula tracks a brute-force tail search.
//!
//! Run with: cargo run --example bessel_table

use sykq::evolution::{bessel_j_array, bessel_j_series, cutoff_bruteforce, cutoff_formula};

fn main() -> sykq::Result<()> {
    println!("   x    n   J_n (recurrence)          J_n (series)              |diff|");
    let mut worst = 0.0f64;
    for &x in &[0.5, 2.0, 10.0, 30.0] {
        let col = bessel_j_array(60, x);
        for &n in &[0u32, 1, 5, 20, 60] {
            let r = col[n as usize];
            let s = bessel_j_series(n, x);
            let d = (r - s).abs();
            worst = worst.max(d);
            println!("{:5.1}  {:3}  {:+.16e}  {:+.16e}  {:.1e}", x, n, r, s, d);
        }
    }
    println!("worst disagreement = {:.3e}", worst);
    println!();

    println!("  tau   epsilon   K (formula)   K (search)");
    for &tau in &[5.0, 10.0, 20.0, 50.0] {
        for &eps in &[1e-4, 1e-8, 1e-12] {
            let kf = cutoff_formula(tau, eps)?;
            let kb = cutoff_bruteforce(tau, eps)?;
            println!("{:5}   {:7.0e}   {:11}   {:10}", tau, eps, kf, kb);
        }
    }
    Ok(())
}
