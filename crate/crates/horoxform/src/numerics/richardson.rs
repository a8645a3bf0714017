//! Richardson extrapolation of limits from geometrically refined samples.

use crate::error::{Error, Result};

/// Extrapolated limit with diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct RichardsonResult {
    pub value: f64,
    /// Magnitude of the last extrapolation correction.
    pub error_estimate: f64,
    /// False when the raw samples did not converge monotonically; the
    /// value is then the best available, not a trusted limit.
    pub monotone: bool,
}

/// Extrapolate `lim_{h->0} f(h)` from samples `values[k] = f(steps[k])`
/// where `steps[k] = h0 * q^{-k}` and the error expands in integer powers
/// starting at `h^p`.
pub fn richardson_limit(values: &[f64], steps: &[f64], p: f64) -> Result<RichardsonResult> {
    if values.len() != steps.len() {
        return Err(Error::InvalidInput(
            "values and steps must have equal length".into(),
        ));
    }
    let k = values.len();
    if k < 2 {
        return Err(Error::Precondition(
            "Richardson extrapolation needs at least two samples".into(),
        ));
    }
    if !steps.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0) {
        return Err(Error::InvalidInput(
            "steps must be positive and strictly decreasing".into(),
        ));
    }
    let q = steps[0] / steps[1];
    for w in steps.windows(2) {
        let r = w[0] / w[1];
        if (r - q).abs() > 1e-8 * q {
            return Err(Error::InvalidInput(format!(
                "steps must refine geometrically (ratio {q} vs {r})"
            )));
        }
    }

    // monotone convergence of the raw samples toward the limit
    let mut monotone = true;
    if k >= 3 {
        let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
        let mut prev_sign = 0i8;
        for w in values.windows(2) {
            let d = w[1] - w[0];
            if d.abs() <= 1e-12 * scale {
                continue;
            }
            let sign = if d > 0.0 { 1 } else { -1 };
            if prev_sign != 0 && sign != prev_sign {
                monotone = false;
            }
            prev_sign = sign;
        }
    }

    // Neville-style table eliminating h^p, h^{p+1}, ...
    let mut col = values.to_vec();
    let mut last_corr = 0.0;
    for j in 0..k - 1 {
        let factor = q.powf(p + j as f64) - 1.0;
        let mut next = Vec::with_capacity(col.len() - 1);
        for i in 1..col.len() {
            let corr = (col[i] - col[i - 1]) / factor;
            next.push(col[i] + corr);
            if i == col.len() - 1 {
                last_corr = corr.abs();
            }
        }
        col = next;
    }
    Ok(RichardsonResult {
        value: col[0],
        error_estimate: last_corr,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exact_linear_model() {
        // f(1+h) = 3 + h at h = 0.1, 0.025 (q = 4)
        let r = richardson_limit(&[3.1, 3.025], &[0.1, 0.025], 1.0).unwrap();
        assert_relative_eq!(r.value, 3.0, epsilon = 1e-14);
    }

    #[test]
    fn exact_quadratic_model() {
        let steps = [0.2, 0.1, 0.05];
        let vals: Vec<f64> = steps.iter().map(|h| 2.0 + h * h).collect();
        let r = richardson_limit(&vals, &steps, 2.0).unwrap();
        assert_relative_eq!(r.value, 2.0, epsilon = 1e-13);
    }

    #[test]
    fn exp_limit() {
        let steps: Vec<f64> = (0..4).map(|k| 0.1 * 4f64.powi(-k)).collect();
        let vals: Vec<f64> = steps.iter().map(|&h| h.exp()).collect();
        let r = richardson_limit(&vals, &steps, 1.0).unwrap();
        assert_relative_eq!(r.value, 1.0, epsilon = 1e-6);
        assert!(r.monotone);
    }

    #[test]
    fn flags_non_monotone() {
        let steps = [0.4, 0.2, 0.1, 0.05];
        let vals = [1.0, 2.0, 1.5, 1.75];
        let r = richardson_limit(&vals, &steps, 1.0).unwrap();
        assert!(!r.monotone);
    }

    #[test]
    fn rejects_bad_steps() {
        assert!(richardson_limit(&[1.0, 2.0, 3.0], &[0.4, 0.2, 0.13], 1.0).is_err());
        assert!(richardson_limit(&[1.0], &[0.1], 1.0).is_err());
    }
}
