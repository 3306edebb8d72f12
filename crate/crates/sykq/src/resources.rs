//! Fault-tolerant cost model: exact T-counts of the compiled select
//! oracle, walk query counts, and the closed-form leading-order totals.
//!
//! Everything here is a pure formula; the one non-obvious constant is the
//! select T-count 16N-16, which the gate compiler's ledger reproduces
//! exactly (see `oracles::build_select_gates`).

use serde::{Deserialize, Serialize};

use crate::error::{Result, SykError};
use crate::evolution::cutoff_formula;
use crate::sykmodel::RegisterLayout;

pub use crate::sykmodel::lambda_estimate;

/// T gates in the compiled four-pass select circuit: 4N-4 per Majorana
/// index pass, four passes.
pub fn select_t_count(n: u32) -> Result<u64> {
    if n < 2 {
        return Err(SykError::InvalidArgument(format!("select needs at least 2 modes, got {n}")));
    }
    Ok(16 * n as u64 - 16)
}

/// Walk queries for evolution to time t at target error epsilon: twice the
/// Chebyshev truncation order of e^{-i lambda t x}.
pub fn query_count(lambda: f64, t: f64, epsilon: f64) -> Result<u64> {
    let tau = lambda * t;
    if !tau.is_finite() || tau <= 0.0 {
        return Err(SykError::InvalidArgument(format!(
            "query count needs finite lambda*t > 0, got {tau}"
        )));
    }
    Ok(2 * cutoff_formula(tau, epsilon)? as u64)
}

/// Leading-order total T count (2/sqrt(6)) N^{7/2} J t: the select cost
/// 16N per query times the query count 2 lambda t at large N.
pub fn leading_t_count(n: u32, j: f64, t: f64) -> f64 {
    (2.0 / 6f64.sqrt()) * (n as f64).powf(3.5) * j * t
}

/// Per-query T costs of the three oracles. The select cost is pinned by
/// the compiled ledger; the preparation costs depend on the synthesis
/// strategy and stay caller-supplied.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CostModel {
    pub c_a: f64,
    pub c_b: f64,
    pub c_u: f64,
}

impl CostModel {
    /// Select-only model: C_A = C_B = 0 and C_U = 16N-16.
    pub fn select_only(n: u32) -> Result<CostModel> {
        Ok(CostModel { c_a: 0.0, c_b: 0.0, c_u: select_t_count(n)? as f64 })
    }
}

/// Total simulation cost (C_A + C_B + C_U) * 2(lambda t + ln(1/eps)/lnln(1/eps))
/// with lambda from the closed-form estimate. The trailing factor is the
/// query count: twice the polynomial order lambda t + O(polylog).
pub fn total_cost(n: u32, j: f64, t: f64, epsilon: f64, costs: &CostModel) -> Result<f64> {
    if costs.c_a < 0.0 || costs.c_b < 0.0 || costs.c_u < 0.0 {
        return Err(SykError::InvalidArgument("oracle costs must be nonnegative".into()));
    }
    // ln ln(1/eps) must be positive for the additive term to make sense.
    if !(epsilon > 0.0 && epsilon < (-1.0f64).exp()) {
        return Err(SykError::InvalidArgument(format!(
            "total cost needs epsilon in (0, 1/e), got {epsilon}"
        )));
    }
    let log_inv = (1.0 / epsilon).ln();
    let order = lambda_estimate(n, j) * t + log_inv / log_inv.ln();
    Ok((costs.c_a + costs.c_b + costs.c_u) * 2.0 * order)
}

/// Ancillae beyond the system register: 4 log2(N) index qubits,
/// log2(N) unary-iteration lines, and the flag. Non-power-of-two N rounds
/// the register widths up, matching the layout.
pub fn ancilla_count(n: u32) -> Result<u32> {
    let layout = RegisterLayout::for_modes(n)?;
    Ok(layout.total_qubits() - layout.n_system())
}

/// One row of the resource sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResourceReport {
    pub n: u32,
    pub j_t: f64,
    pub t_count_select: u64,
    pub t_count_total_leading: f64,
    pub query_count: u64,
    pub ancilla_count: u32,
    pub lambda_est: f64,
}

/// Assemble the full report for one (N, J, t, epsilon) point.
pub fn resource_report(n: u32, j: f64, t: f64, epsilon: f64) -> Result<ResourceReport> {
    let lambda = lambda_estimate(n, j);
    Ok(ResourceReport {
        n,
        j_t: j * t,
        t_count_select: select_t_count(n)?,
        t_count_total_leading: leading_t_count(n, j, t),
        query_count: query_count(lambda, t, epsilon)?,
        ancilla_count: ancilla_count(n)?,
        lambda_est: lambda,
    })
}

/// Reports across a list of mode counts at fixed (J, t, epsilon).
pub fn resource_sweep(ns: &[u32], j: f64, t: f64, epsilon: f64) -> Result<Vec<ResourceReport>> {
    ns.iter().map(|&n| resource_report(n, j, t, epsilon)).collect()
}

/// CSV rows (N, Jt, epsilon, t_select, queries, leading_T, ancillas).
pub fn sweep_csv(rows: &[ResourceReport], epsilon: f64) -> String {
    let mut out = String::from("N,Jt,epsilon,t_select,queries,leading_T,ancillas\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:.16e},{:.16e},{},{},{:.16e},{}\n",
            r.n, r.j_t, epsilon, r.t_count_select, r.query_count, r.t_count_total_leading,
            r.ancilla_count
        ));
    }
    out
}
