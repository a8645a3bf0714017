//! Natural cubic spline interpolation on an arbitrary strictly
//! increasing grid.

/// Precomputed natural cubic spline.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// second derivatives at the knots
    y2: Vec<f64>,
}

impl CubicSpline {
    /// Build the spline; `x` must be strictly increasing with `len >= 2`.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        assert_eq!(x.len(), y.len());
        assert!(x.len() >= 2);
        assert!(x.windows(2).all(|p| p[0] < p[1]), "grid must increase");
        let n = x.len();
        let mut y2 = vec![0.0; n];
        if n > 2 {
            // tridiagonal solve for natural boundary conditions
            let mut u = vec![0.0; n - 1];
            for i in 1..n - 1 {
                let sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
                let p = sig * y2[i - 1] + 2.0;
                y2[i] = (sig - 1.0) / p;
                let d = (y[i + 1] - y[i]) / (x[i + 1] - x[i])
                    - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
                u[i] = (6.0 * d / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
            }
            for i in (0..n - 1).rev() {
                y2[i] = y2[i] * y2[i + 1] + u[i];
            }
        }
        CubicSpline { x, y, y2 }
    }

    /// Evaluate the spline; arguments outside the grid use the boundary
    /// cubic piece.
    pub fn eval(&self, s: f64) -> f64 {
        let n = self.x.len();
        let k = match self.x.binary_search_by(|v| v.total_cmp(&s)) {
            Ok(i) => return self.y[i],
            Err(0) => 0,
            Err(i) if i >= n => n - 2,
            Err(i) => i - 1,
        };
        let h = self.x[k + 1] - self.x[k];
        let a = (self.x[k + 1] - s) / h;
        let b = (s - self.x[k]) / h;
        a * self.y[k]
            + b * self.y[k + 1]
            + ((a * a * a - a) * self.y2[k] + (b * b * b - b) * self.y2[k + 1]) * h * h / 6.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reproduces_samples_exactly() {
        let x: Vec<f64> = (0..20).map(|i| 1.0 + 0.3 * i as f64).collect();
        let y: Vec<f64> = x.iter().map(|&v| (v * 0.7).sin()).collect();
        let sp = CubicSpline::new(x.clone(), y.clone());
        for (xi, yi) in x.iter().zip(&y) {
            assert_eq!(sp.eval(*xi), *yi);
        }
    }

    #[test]
    fn approximates_smooth_function() {
        let x: Vec<f64> = (0..=200).map(|i| i as f64 * 0.02).collect();
        let y: Vec<f64> = x.iter().map(|&v| v.exp()).collect();
        let sp = CubicSpline::new(x, y);
        for &s in &[0.11, 1.234, 3.456] {
            assert_relative_eq!(sp.eval(s), s.exp(), max_relative = 1e-7);
        }
    }
}
