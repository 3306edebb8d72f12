//! Bessel functions of the first kind and the series-truncation cutoff.
//!
//! `bessel_j_array` is the workhorse (Miller's backward recurrence with
//! normalization); `bessel_j_series` is a deliberately independent
//! power-series evaluation carried in double-double arithmetic so that the
//! two implementations can be checked against each other to 1e-12 over the
//! whole working range (n <= 60, |x| <= 30).

use crate::error::{Result, SykError};

/// Double-double value: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
/// Used only by the series oracle, where the alternating sum cancels up to
/// eleven leading digits at x = 30 and plain f64 would lose them.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    fn from_f64(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(s, e + self.lo + o.lo);
        Dd { hi, lo }
    }

    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi);
        Dd { hi, lo }
    }

    fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let r = (self.hi - p) + (self.lo - e);
        let (hi, lo) = quick_two_sum(q1, r / b);
        Dd { hi, lo }
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// J_n(x) by the alternating power series sum_m (-1)^m (x/2)^{n+2m} / (m!(m+n)!),
/// evaluated in double-double arithmetic. Independent of the recurrence
/// path on purpose: it shares no code with `bessel_j_array`.
pub fn bessel_j_series(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let ax = x.abs();
    let half = Dd::from_f64(ax).div_f64(2.0);

    // Leading term (x/2)^n / n!, built incrementally to avoid overflow.
    let mut term = Dd::from_f64(1.0);
    for k in 1..=n as u64 {
        term = term.mul(half).div_f64(k as f64);
    }

    let mut sum = term;
    let ratio_num = half.mul(half).neg();
    for m in 1..=500u64 {
        term = term.mul(ratio_num).div_f64(m as f64).div_f64((m + n as u64) as f64);
        sum = sum.add(term);
        if term.hi.abs() < sum.hi.abs() * 1e-35 + 1e-320 {
            break;
        }
    }

    let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    sign * sum.to_f64()
}

/// J_0(x), ..., J_{n_max}(x) by Miller's backward recurrence: run
/// J_{k-1} = (2k/x)J_k - J_{k+1} down from a seed well above the turning
/// point, then scale the whole column with J_0 + 2 sum_k J_{2k} = 1.
pub fn bessel_j_array(n_max: u32, x: f64) -> Vec<f64> {
    let n_max = n_max as usize;
    let mut out = vec![0.0f64; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();

    let mut start = n_max.max(ax.ceil() as usize) + 55;
    start += start & 1; // even seed order so the normalization sum closes at k = 0

    let mut j_above = 0.0f64; // J_{k+1}, unnormalized
    let mut j_here = 1e-30f64; // J_k, unnormalized
    let mut norm = 0.0f64;
    for k in (0..=start).rev() {
        if k <= n_max {
            out[k] = j_here;
        }
        if k % 2 == 0 {
            norm += if k == 0 { j_here } else { 2.0 * j_here };
        }
        if k > 0 {
            let j_below = (2.0 * k as f64 / ax) * j_here - j_above;
            j_above = j_here;
            j_here = j_below;
            if j_here.abs() > 1e250 {
                j_here *= 1e-250;
                j_above *= 1e-250;
                norm *= 1e-250;
                for v in out.iter_mut() {
                    *v *= 1e-250;
                }
            }
        }
    }

    let scale = 1.0 / norm;
    for v in out.iter_mut() {
        *v *= scale;
    }
    if x < 0.0 {
        for v in out.iter_mut().skip(1).step_by(2) {
            *v = -*v;
        }
    }
    out
}

/// J_n(x) for a single order.
pub fn bessel_j(n: u32, x: f64) -> f64 {
    bessel_j_array(n, x)[n as usize]
}

/// Truncation-tail bound 2 sum_{n=k+1}^{k+200} |J_n(tau)|, with terms below
/// 1e-18 treated as zero. This is the quantity the cutoff order must push
/// under epsilon.
pub fn tail_bound(tau: f64, k: u32) -> f64 {
    let top = k + 200;
    let j = bessel_j_array(top, tau.abs());
    2.0 * j[(k + 1) as usize..]
        .iter()
        .map(|v| {
            let a = v.abs();
            if a < 1e-18 {
                0.0
            } else {
                a
            }
        })
        .sum::<f64>()
}

/// Minimal cutoff order K >= 1 whose 200-term tail bound drops below
/// epsilon, found by direct scan of the Bessel column.
pub fn cutoff_bruteforce(tau: f64, epsilon: f64) -> Result<u32> {
    if tau <= 0.0 || !tau.is_finite() {
        return Err(SykError::InvalidArgument(format!("cutoff needs tau > 0, got {tau}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(SykError::InvalidArgument(format!(
            "cutoff needs epsilon in (0, 1), got {epsilon}"
        )));
    }
    let k_ceiling = tau.ceil() as u32 + 350;
    let j = bessel_j_array(k_ceiling + 201, tau);
    let clipped: Vec<f64> = j
        .iter()
        .map(|v| {
            let a = v.abs();
            if a < 1e-18 {
                0.0
            } else {
                a
            }
        })
        .collect();
    // suffix[i] = sum of clipped[i..]; the 200-term window is a difference.
    let mut suffix = vec![0.0f64; clipped.len() + 1];
    for i in (0..clipped.len()).rev() {
        suffix[i] = suffix[i + 1] + clipped[i];
    }
    for k in 1..=k_ceiling as usize {
        let hi = (k + 201).min(clipped.len());
        let window = suffix[k + 1] - suffix[hi];
        if 2.0 * window <= epsilon {
            return Ok(k as u32);
        }
    }
    Err(SykError::NoConvergence(k_ceiling as usize))
}

/// Closed-form cutoff K = ceil(tau + (3^{2/3}/2) tau^{1/3} ln^{2/3}(1/eps)).
pub fn cutoff_formula(tau: f64, epsilon: f64) -> Result<u32> {
    if tau <= 0.0 || !tau.is_finite() {
        return Err(SykError::InvalidArgument(format!("cutoff needs tau > 0, got {tau}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(SykError::InvalidArgument(format!(
            "cutoff needs epsilon in (0, 1), got {epsilon}"
        )));
    }
    let coef = 3f64.powf(2.0 / 3.0) / 2.0;
    let k = tau + coef * tau.powf(1.0 / 3.0) * (1.0 / epsilon).ln().powf(2.0 / 3.0);
    Ok((k.ceil() as u32).max(1))
}
