//! Product quadrature on the unit sphere S^{n-1}, normalized so the
//! total weight is exactly 1 (quadrature of the normalized surface
//! measure).

use crate::error::{Error, Result};
use crate::numerics::gauss::gauss_gegenbauer;

/// Quadrature rule over S^{n-1}: unit vectors in R^n with weights
/// summing to 1.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub dim: usize,
}

impl SphereRule {
    pub fn apply<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, &w)| w * f(p))
            .sum()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Product rule on S^{n-1}: equispaced points on the base circle,
/// Gauss-Gegenbauer in the cosine of each polar angle. `order` sets the
/// node count per polar angle (the circle receives `2 * order` points).
///
/// Exact for spherical polynomials up to roughly degree `2 * order - 1`.
pub fn sphere_quadrature(n: usize, order: usize) -> Result<SphereRule> {
    if !(2..=7).contains(&n) {
        return Err(Error::UnsupportedDimension(n, "sphere quadrature"));
    }
    if order == 0 {
        return Err(Error::Precondition("sphere rule order must be >= 1".into()));
    }
    // base circle S^1
    let m = 2 * order.max(1);
    let mut points: Vec<Vec<f64>> = (0..m)
        .map(|j| {
            let th = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            vec![th.sin(), th.cos()]
        })
        .collect();
    let mut weights = vec![1.0 / m as f64; m];

    // lift S^{k-1} -> S^k: x = (sqrt(1-u^2) * y, u), weight (1-u^2)^{(k-2)/2}
    for k in 3..=n {
        let gamma = (k as f64 - 3.0) / 2.0;
        let rule = gauss_gegenbauer(order, gamma)?;
        let norm: f64 = rule.weights.iter().sum();
        let mut new_points = Vec::with_capacity(points.len() * rule.len());
        let mut new_weights = Vec::with_capacity(points.len() * rule.len());
        for (&u, &wu) in rule.nodes.iter().zip(&rule.weights) {
            let sin_th = (1.0 - u * u).max(0.0).sqrt();
            for (p, &wp) in points.iter().zip(&weights) {
                let mut q = Vec::with_capacity(k);
                q.extend(p.iter().map(|&c| c * sin_th));
                q.push(u);
                new_points.push(q);
                new_weights.push(wp * wu / norm);
            }
        }
        points = new_points;
        weights = new_weights;
    }
    Ok(SphereRule {
        points,
        weights,
        dim: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constant_integrates_to_one() {
        for n in 2..=7 {
            let rule = sphere_quadrature(n, 6).unwrap();
            assert_relative_eq!(rule.apply(|_| 1.0), 1.0, max_relative = 1e-13);
            assert!(rule.points.iter().all(|p| {
                let r2: f64 = p.iter().map(|c| c * c).sum();
                (r2 - 1.0).abs() < 1e-12
            }));
        }
    }

    #[test]
    fn odd_component_vanishes() {
        let rule = sphere_quadrature(3, 8).unwrap();
        let v = rule.apply(|p| p[2]);
        assert!(v.abs() < 1e-14, "{v}");
    }

    #[test]
    fn squared_component_is_one_over_n() {
        for n in 2..=7 {
            let rule = sphere_quadrature(n, 6).unwrap();
            for axis in 0..n {
                assert_relative_eq!(
                    rule.apply(|p| p[axis] * p[axis]),
                    1.0 / n as f64,
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn degree_four_moment() {
        // int u^4 over S^2 (normalized) = 1/5
        let rule = sphere_quadrature(3, 8).unwrap();
        assert_relative_eq!(rule.apply(|p| p[2].powi(4)), 0.2, max_relative = 1e-12);
    }

    #[test]
    fn unsupported_dimension_rejected() {
        assert!(sphere_quadrature(1, 4).is_err());
        assert!(sphere_quadrature(8, 4).is_err());
    }
}
