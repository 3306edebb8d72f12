//! Small statistics toolbox for the amplitude-distribution checks:
//! normal CDF, Kolmogorov-Smirnov distance, and moment helpers.

/// Error function, Abramowitz-Stegun rational approximation 7.1.26.
/// Absolute error below 1.5e-7, which is far finer than the 0.05-scale
/// Kolmogorov-Smirnov thresholds it feeds.
pub fn erf(x: f64) -> f64 {
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let x = x.abs();
    let t = 1.0 / (1.0 + 0.3275911 * x);
    let poly = t
        * (0.254829592
            + t * (-0.284496736 + t * (1.421413741 + t * (-1.453152027 + t * 1.061405429))));
    sign * (1.0 - poly * (-x * x).exp())
}

/// CDF of Normal(mean, sigma^2).
pub fn normal_cdf(x: f64, mean: f64, sigma: f64) -> f64 {
    0.5 * (1.0 + erf((x - mean) / (sigma * std::f64::consts::SQRT_2)))
}

/// Two-sided Kolmogorov-Smirnov distance between a sample and a reference
/// CDF: sup_x |F_n(x) - F(x)|. The samples are sorted internally.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    assert!(!samples.is_empty(), "KS distance of an empty sample");
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("NaN in KS sample"));
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((f - lo).abs()).max((hi - f).abs());
    }
    d
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn mean_square(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64
}

pub fn mean_abs(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x.abs()).sum::<f64>() / xs.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erf_matches_tabulated_values() {
        // Reference values to 10 digits.
        let table = [
            (0.0, 0.0),
            (0.5, 0.5204998778),
            (1.0, 0.8427007929),
            (2.0, 0.9953222650),
            (-1.0, -0.8427007929),
        ];
        for (x, want) in table {
            assert!((erf(x) - want).abs() < 2e-7, "erf({x})");
        }
    }

    #[test]
    fn normal_cdf_symmetry_and_tails() {
        // The rational approximation leaves ~5e-10 residue even at x = 0.
        assert!((normal_cdf(0.0, 0.0, 1.0) - 0.5).abs() < 1e-7);
        let p = normal_cdf(1.3, 0.0, 1.0);
        let q = normal_cdf(-1.3, 0.0, 1.0);
        assert!((p + q - 1.0).abs() < 1e-7);
        assert!(normal_cdf(8.0, 0.0, 1.0) > 1.0 - 1e-14);
    }

    #[test]
    fn ks_detects_match_and_mismatch() {
        // Gaussian sample against its own CDF: distance should be small.
        let mut g = crate::rng::GaussianStream::new(5);
        let sample: Vec<f64> = (0..4000).map(|_| g.sample()).collect();
        let d = ks_distance(&sample, |x| normal_cdf(x, 0.0, 1.0));
        assert!(d < 0.03, "KS against own distribution: {d}");
        // Same sample against a shifted reference: distance should be large.
        let d_bad = ks_distance(&sample, |x| normal_cdf(x, 1.0, 1.0));
        assert!(d_bad > 0.3, "KS against shifted reference: {d_bad}");
    }
}
