//! Print the fault-tolerant cost table for simulating the SYK model across
//! system sizes, including the headline per-(Jt) T-counts at N = 100 and
//! N = 200.
//!
//! Run with: cargo run --example resource_estimates

use sykq::resources::{resource_sweep, total_cost, CostModel};

fn main() -> sykq::Result<()> {
    let (j, t, epsilon) = (1.0, 1.0, 1e-6);
    let rows = resource_sweep(&[2, 4, 8, 16, 32, 64, 100, 200], j, t, epsilon)?;

    println!(
        "{:>4}  {:>9}  {:>8}  {:>8}  {:>13}  {:>8}",
        "N", "lambda", "T/select", "queries", "leading T/Jt", "ancillas"
    );
    for r in &rows {
        println!(
            "{:>4}  {:>9.3}  {:>8}  {:>8}  {:>13.4e}  {:>8}",
            r.n, r.lambda_est, r.t_count_select, r.query_count, r.t_count_total_leading,
            r.ancilla_count
        );
    }

    let n100 = rows.iter().find(|r| r.n == 100).expect("N=100 row");
    let n200 = rows.iter().find(|r| r.n == 200).expect("N=200 row");
    println!();
    println!(
        "headline: {:.3e} T gates per unit Jt at N = 100 (under 1e7), {:.3e} at N = 200 (under 1e8)",
        n100.t_count_total_leading, n200.t_count_total_leading
    );

    // The select-only cost model folds the query count and the expansion
    // overhead into one number; it lands within a few percent of the
    // leading-order estimate at large N.
    let total = total_cost(100, j, t, epsilon, &CostModel::select_only(100)?)?;
    println!(
        "select-only total at N = 100: {:.3e} ({:+.2}% vs leading)",
        total,
        100.0 * (total / n100.t_count_total_leading - 1.0)
    );
    Ok(())
}
