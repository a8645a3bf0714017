//! Sampled one-variable functions with interpolation and a declared
//! tail model beyond the right end of the grid.

use crate::error::{Error, Result};
use crate::numerics::chebyshev::{
    barycentric_eval, chebyshev_lobatto, lobatto_bary_weights, spectral_derivative_values,
};
use crate::numerics::spline::CubicSpline;
use std::sync::Arc;

/// How a curve behaves to the right of its last grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// No model declared; consumers that need one must reject the curve.
    None,
    /// Identically zero beyond the grid (compactly supported data).
    Zero,
    /// `value(s) = value(end) * (s / end)^(-mu)`.
    PowerLaw { mu: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GridKind {
    Chebyshev,
    General,
}

/// A function of one variable known through samples on a strictly
/// increasing grid, plus a tail model.
///
/// Chebyshev grids interpolate barycentrically (spectral accuracy);
/// arbitrary grids fall back to a natural cubic spline. Interpolation
/// reproduces the samples exactly in both cases.
#[derive(Clone)]
pub struct SampledCurve {
    grid: Arc<Vec<f64>>,
    values: Arc<Vec<f64>>,
    kind: GridKind,
    tail: Tail,
    bary_w: Option<Arc<Vec<f64>>>,
    spline: Option<Arc<CubicSpline>>,
}

impl std::fmt::Debug for SampledCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SampledCurve")
            .field("points", &self.grid.len())
            .field("span", &(self.start(), self.end()))
            .field("kind", &self.kind)
            .field("tail", &self.tail)
            .finish()
    }
}

impl SampledCurve {
    /// Sample `f` on an `n`-point Chebyshev-Lobatto grid over `[a, b]`.
    pub fn chebyshev<F: Fn(f64) -> f64>(a: f64, b: f64, n: usize, f: F, tail: Tail) -> Self {
        let grid = chebyshev_lobatto(a, b, n);
        let values = grid.iter().map(|&x| f(x)).collect();
        Self::from_chebyshev_samples(grid, values, tail)
    }

    /// Wrap precomputed samples on a Chebyshev-Lobatto grid.
    pub fn from_chebyshev_samples(grid: Vec<f64>, values: Vec<f64>, tail: Tail) -> Self {
        let w = lobatto_bary_weights(grid.len());
        SampledCurve {
            grid: Arc::new(grid),
            values: Arc::new(values),
            kind: GridKind::Chebyshev,
            tail,
            bary_w: Some(Arc::new(w)),
            spline: None,
        }
    }

    /// Wrap samples on an arbitrary strictly increasing grid (cubic
    /// spline interpolation).
    pub fn from_points(grid: Vec<f64>, values: Vec<f64>, tail: Tail) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::InvalidInput(
                "grid and values must have equal length".into(),
            ));
        }
        if grid.len() < 2 {
            return Err(Error::InvalidInput("need at least two samples".into()));
        }
        if !grid.windows(2).all(|p| p[0] < p[1]) {
            return Err(Error::InvalidInput("grid must be strictly increasing".into()));
        }
        if grid.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("samples must be finite".into()));
        }
        let spline = CubicSpline::new(grid.clone(), values.clone());
        Ok(SampledCurve {
            grid: Arc::new(grid),
            values: Arc::new(values),
            kind: GridKind::General,
            tail,
            bary_w: None,
            spline: Some(Arc::new(spline)),
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn start(&self) -> f64 {
        self.grid[0]
    }

    pub fn end(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn with_tail(mut self, tail: Tail) -> Self {
        self.tail = tail;
        self
    }

    pub fn is_chebyshev(&self) -> bool {
        self.kind == GridKind::Chebyshev
    }

    /// Effective decay exponent of the tail, used by integrability checks.
    /// `Zero` tails count as infinitely fast decay.
    pub fn tail_mu(&self) -> Option<f64> {
        match self.tail {
            Tail::None => None,
            Tail::Zero => Some(f64::INFINITY),
            Tail::PowerLaw { mu } => Some(mu),
        }
    }

    /// Evaluate the curve. Inside the grid: interpolation; right of the
    /// grid: the tail model (`Tail::None` evaluates the boundary
    /// interpolant, which callers must have ruled out beforehand).
    pub fn eval(&self, s: f64) -> f64 {
        if s > self.end() {
            match self.tail {
                Tail::Zero => return 0.0,
                Tail::PowerLaw { mu } => {
                    let end = self.end();
                    return self.values.last().unwrap() * (s / end).powf(-mu);
                }
                Tail::None => {}
            }
        }
        match self.kind {
            GridKind::Chebyshev => barycentric_eval(
                &self.grid,
                &self.values,
                self.bary_w.as_ref().unwrap(),
                s,
            ),
            GridKind::General => self.spline.as_ref().unwrap().eval(s),
        }
    }

    /// Derivative curve of the given order (Chebyshev grids only).
    ///
    /// The tail exponent of the result is raised by `order`, matching
    /// term-by-term differentiation of a power-law tail.
    pub fn derivative(&self, order: usize) -> Result<SampledCurve> {
        if self.kind != GridKind::Chebyshev {
            return Err(Error::Precondition(
                "spectral differentiation requires a Chebyshev grid".into(),
            ));
        }
        let w = self.bary_w.as_ref().unwrap();
        let vals = spectral_derivative_values(&self.grid, w, &self.values, order)?;
        let tail = match self.tail {
            Tail::PowerLaw { mu } => Tail::PowerLaw {
                mu: mu + order as f64,
            },
            other => other,
        };
        Ok(SampledCurve {
            grid: Arc::clone(&self.grid),
            values: Arc::new(vals),
            kind: GridKind::Chebyshev,
            tail,
            bary_w: self.bary_w.clone(),
            spline: None,
        })
    }

    /// New curve on the same grid with values mapped through `f(s, v)`.
    pub fn map<F: Fn(f64, f64) -> f64>(&self, f: F) -> SampledCurve {
        let vals: Vec<f64> = self
            .grid
            .iter()
            .zip(self.values.iter())
            .map(|(&s, &v)| f(s, v))
            .collect();
        match self.kind {
            GridKind::Chebyshev => {
                Self::from_chebyshev_samples((*self.grid).clone(), vals, self.tail)
            }
            GridKind::General => Self::from_points((*self.grid).clone(), vals, self.tail)
                .expect("grid already validated"),
        }
    }
}

/// Derivative of a sampled curve's interpolant (spec-level entry point).
pub fn spectral_derivative(curve: &SampledCurve, order: usize) -> Result<SampledCurve> {
    curve.derivative(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn chebyshev_curve_derivative_examples() {
        let c = SampledCurve::chebyshev(1.0, 3.0, 16, |s| s * s, Tail::None);
        let d = c.derivative(1).unwrap();
        for (&s, &v) in d.grid().iter().zip(d.values()) {
            assert_relative_eq!(v, 2.0 * s, epsilon = 1e-10);
        }
        let e = SampledCurve::chebyshev(1.0, 3.0, 32, f64::exp, Tail::None);
        let d2 = e.derivative(2).unwrap();
        for (&s, &v) in d2.grid().iter().zip(d2.values()) {
            assert_relative_eq!(v, s.exp(), max_relative = 1e-9);
        }
    }

    #[test]
    fn composed_first_derivatives_match_second() {
        let c = SampledCurve::chebyshev(0.0, 2.0, 24, |s| (1.5 * s).sin(), Tail::None);
        let twice = c.derivative(1).unwrap().derivative(1).unwrap();
        let second = c.derivative(2).unwrap();
        for (a, b) in twice.values().iter().zip(second.values()) {
            assert_relative_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn tail_models() {
        let c = SampledCurve::chebyshev(1.0, 2.0, 8, |s| s.powi(-3), Tail::PowerLaw { mu: 3.0 });
        // tail continues the power law using the endpoint value
        assert_relative_eq!(c.eval(4.0), 4.0f64.powi(-3), max_relative = 1e-9);
        let z = c.clone().with_tail(Tail::Zero);
        assert_eq!(z.eval(2.5), 0.0);
    }

    #[test]
    fn spline_curve_reproduces_samples() {
        let grid: Vec<f64> = (0..30).map(|i| 1.0 + 0.17 * i as f64).collect();
        let values: Vec<f64> = grid.iter().map(|&s| (s - 2.0).tanh()).collect();
        let c = SampledCurve::from_points(grid.clone(), values.clone(), Tail::None).unwrap();
        for (g, v) in grid.iter().zip(&values) {
            assert_eq!(c.eval(*g), *v);
        }
    }

    #[test]
    fn invalid_grids_rejected() {
        assert!(SampledCurve::from_points(vec![1.0, 1.0], vec![0.0, 0.0], Tail::None).is_err());
        assert!(SampledCurve::from_points(vec![1.0], vec![0.0], Tail::None).is_err());
        assert!(
            SampledCurve::from_points(vec![1.0, 2.0], vec![0.0, f64::NAN], Tail::None).is_err()
        );
    }
}
