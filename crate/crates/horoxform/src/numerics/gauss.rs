//! Gauss quadrature rules (Legendre and Jacobi) via Golub-Welsch.
//!
//! Rules are cached globally: the eigen decomposition is O(m^3) and the
//! same rules are requested over and over from inner loops.

use crate::error::{Error, Result};
use crate::numerics::special::gamma;
use nalgebra::DMatrix;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Nodes and weights of a one-dimensional quadrature rule.
///
/// For weighted (Jacobi) rules the weight function is absorbed into the
/// weights, so `apply` always approximates the full weighted integral.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Interval the rule is defined on.
    pub interval: (f64, f64),
    /// Endpoint weight exponent for the left-weighted rules, if any.
    pub endpoint_exponent: Option<f64>,
}

impl QuadratureRule {
    /// Sum of `w_i * f(x_i)`.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Golub-Welsch for the Jacobi weight (1-x)^a (1+x)^b on [-1, 1].
fn jacobi_nodes_weights(m: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mu0 = 2f64.powf(a + b + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);
    if m == 1 {
        return (vec![(b - a) / (a + b + 2.0)], vec![mu0]);
    }
    let mut mat = DMatrix::<f64>::zeros(m, m);
    let mut diag = (b - a) / (2.0 + a + b);
    for k in 0..m - 1 {
        let kp1 = (k + 1) as f64;
        let denom = 2.0 * kp1 + a + b;
        // first off-diagonal has its own regular formula; the generic one
        // is 0/0 at a + b = -1
        let off = if k == 0 {
            (4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))).sqrt()
        } else {
            2.0 / denom
                * (kp1 * (kp1 + a) * (kp1 + b) * (kp1 + a + b) / ((denom + 1.0) * (denom - 1.0)))
                    .sqrt()
        };
        mat[(k, k)] = diag;
        mat[(k, k + 1)] = off;
        mat[(k + 1, k)] = off;
        diag = (b * b - a * a) / (denom * (denom + 2.0));
    }
    mat[(m - 1, m - 1)] = diag;

    let eigen = mat.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = eigen
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let q0 = eigen.eigenvectors[(0, j)];
            (x, mu0 * q0 * q0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    // symmetric weights have an exactly-zero middle node
    if (a - b).abs() < 1e-15 && m % 2 == 1 {
        pairs[m / 2].0 = 0.0;
    }
    pairs.into_iter().unzip()
}

type RuleCache = RwLock<HashMap<(usize, u64, u64), Arc<QuadratureRule>>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cached_jacobi(m: usize, a: f64, b: f64) -> Arc<QuadratureRule> {
    let key = (m, a.to_bits(), b.to_bits());
    if let Some(rule) = cache().read().unwrap().get(&key) {
        return Arc::clone(rule);
    }
    let (nodes, weights) = jacobi_nodes_weights(m, a, b);
    let rule = Arc::new(QuadratureRule {
        nodes,
        weights,
        interval: (-1.0, 1.0),
        endpoint_exponent: None,
    });
    cache().write().unwrap().insert(key, Arc::clone(&rule));
    rule
}

/// `m`-point Gauss-Legendre rule on (-1, 1); exact for polynomials of
/// degree <= 2m-1.
pub fn gauss_legendre(m: usize) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::Precondition("Gauss-Legendre needs m >= 1".into()));
    }
    Ok((*cached_jacobi(m, 0.0, 0.0)).clone())
}

/// Shared (cached) Gauss-Legendre rule; cheap to request repeatedly.
pub fn gauss_legendre_arc(m: usize) -> Arc<QuadratureRule> {
    cached_jacobi(m, 0.0, 0.0)
}

/// `m`-point rule for `int_0^1 u^gamma p(u) du`, exact for polynomials
/// `p` of degree <= 2m-1. Requires `gamma > -1`.
pub fn gauss_jacobi_left(m: usize, gamma_exp: f64) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::Precondition("Gauss-Jacobi needs m >= 1".into()));
    }
    if !(gamma_exp > -1.0) || !gamma_exp.is_finite() {
        return Err(Error::Precondition(format!(
            "Gauss-Jacobi endpoint exponent must be > -1, got {gamma_exp}"
        )));
    }
    let base = cached_jacobi(m, 0.0, gamma_exp);
    // u = (1+x)/2 maps the weight (1+x)^g on [-1,1] to u^g on [0,1]
    // with total factor 2^{-g-1}.
    let scale = 2f64.powf(-gamma_exp - 1.0);
    Ok(QuadratureRule {
        nodes: base.nodes.iter().map(|&x| 0.5 * (x + 1.0)).collect(),
        weights: base.weights.iter().map(|&w| w * scale).collect(),
        interval: (0.0, 1.0),
        endpoint_exponent: Some(gamma_exp),
    })
}

/// Cached two-sided Jacobi rule on (-1, 1) with weight
/// `(1-x)^a (1+x)^b`, both exponents > -1.
pub fn cached_jacobi_pair(m: usize, a: f64, b: f64) -> Arc<QuadratureRule> {
    cached_jacobi(m.max(1), a, b)
}

/// Symmetric Gauss-Gegenbauer rule: `int_{-1}^1 (1-u^2)^gamma p(u) du`.
pub fn gauss_gegenbauer(m: usize, gamma_exp: f64) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::Precondition("Gauss-Gegenbauer needs m >= 1".into()));
    }
    if !(gamma_exp > -1.0) || !gamma_exp.is_finite() {
        return Err(Error::Precondition(format!(
            "Gauss-Gegenbauer exponent must be > -1, got {gamma_exp}"
        )));
    }
    Ok((*cached_jacobi(m, gamma_exp, gamma_exp)).clone())
}

/// Integrate `f` against `u^gamma` over `[a, a+width]` with a left-weighted
/// Jacobi rule, where `u = s - a`: computes `int_a^{a+width} (s-a)^g f(s) ds`.
pub fn jacobi_window<F: Fn(f64) -> f64>(
    m: usize,
    gamma_exp: f64,
    a: f64,
    width: f64,
    f: F,
) -> Result<f64> {
    let rule = gauss_jacobi_left(m, gamma_exp)?;
    let scale = width.powf(gamma_exp + 1.0);
    Ok(scale * rule.apply(|u| f(a + width * u)))
}

/// Apply a rule defined on (-1,1) to an arbitrary interval [a, b]
/// (unweighted rules only).
pub fn apply_on<F: Fn(f64) -> f64>(rule: &QuadratureRule, a: f64, b: f64, f: F) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    half * rule.apply(|x| f(mid + half * x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_polynomial_exactness() {
        for m in [1usize, 2, 3, 5, 8, 20] {
            let rule = gauss_legendre(m).unwrap();
            for deg in 0..=(2 * m - 1) {
                let exact = if deg % 2 == 0 {
                    2.0 / (deg as f64 + 1.0)
                } else {
                    0.0
                };
                let got = rule.apply(|x| x.powi(deg as i32));
                assert!(
                    (got - exact).abs() <= 1e-13 * exact.abs().max(1.0),
                    "m={m} deg={deg}: {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn legendre_x2_and_x4() {
        let rule = gauss_legendre(2).unwrap();
        assert_relative_eq!(rule.apply(|x| x * x), 2.0 / 3.0, max_relative = 1e-14);
        let rule = gauss_legendre(3).unwrap();
        assert_relative_eq!(
            rule.apply(|x| x.powi(4)),
            2.0 / 5.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn legendre_exp_reference() {
        let rule = gauss_legendre(20).unwrap();
        let exact = std::f64::consts::E - 1.0 / std::f64::consts::E;
        assert_relative_eq!(rule.apply(f64::exp), exact, max_relative = 1e-14);
    }

    #[test]
    fn jacobi_left_monomials() {
        // gamma = -1/2
        let rule = gauss_jacobi_left(8, -0.5).unwrap();
        assert_relative_eq!(rule.apply(|_| 1.0), 2.0, max_relative = 1e-13);
        assert_relative_eq!(rule.apply(|u| u), 2.0 / 3.0, max_relative = 1e-13);
        // gamma = 1/2, p = u^2 -> 2/7
        let rule = gauss_jacobi_left(8, 0.5).unwrap();
        assert_relative_eq!(rule.apply(|u| u * u), 2.0 / 7.0, max_relative = 1e-13);
    }

    #[test]
    fn jacobi_left_exactness_sweep() {
        for &g in &[-0.9, -0.5, 0.0, 0.5, 1.3] {
            for m in [1usize, 2, 4, 10] {
                let rule = gauss_jacobi_left(m, g).unwrap();
                for deg in 0..=(2 * m - 1) {
                    let exact = 1.0 / (g + deg as f64 + 1.0);
                    let got = rule.apply(|u| u.powi(deg as i32));
                    assert!(
                        (got - exact).abs() <= 1e-12 * exact.abs(),
                        "g={g} m={m} deg={deg}: {got} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn gegenbauer_even_moments() {
        // int_{-1}^1 (1-u^2)^{1/2} u^2 du = pi/8
        let rule = gauss_gegenbauer(10, 0.5).unwrap();
        assert_relative_eq!(
            rule.apply(|u| u * u),
            std::f64::consts::PI / 8.0,
            max_relative = 1e-13
        );
        // Chebyshev weight: int (1-u^2)^{-1/2} du = pi
        let rule = gauss_gegenbauer(6, -0.5).unwrap();
        assert_relative_eq!(
            rule.apply(|_| 1.0),
            std::f64::consts::PI,
            max_relative = 1e-13
        );
    }

    #[test]
    fn window_integral() {
        // int_1^{1.5} (s-1)^{-1/2} e^{-s} ds, reference from a plain
        // substitution u = v^2 with dense Legendre quadrature
        let fine = gauss_legendre(80).unwrap();
        let reference = apply_on(&fine, 0.0, 0.5f64.sqrt(), |v| 2.0 * (-(1.0 + v * v)).exp());
        let got = jacobi_window(24, -0.5, 1.0, 0.5, |s| (-s).exp()).unwrap();
        assert_relative_eq!(got, reference, max_relative = 1e-12);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_jacobi_left(5, -1.0).is_err());
        assert!(gauss_jacobi_left(5, f64::NAN).is_err());
    }

    #[test]
    fn weights_positive_nodes_interior() {
        for (m, g) in [(7usize, -0.5f64), (12, 0.25), (33, 2.0)] {
            let rule = gauss_jacobi_left(m, g).unwrap();
            assert!(rule.weights.iter().all(|&w| w > 0.0));
            assert!(rule.nodes.iter().all(|&x| x > 0.0 && x < 1.0));
            let mut sorted = rule.nodes.clone();
            sorted.sort_by(f64::total_cmp);
            assert_eq!(sorted, rule.nodes);
        }
    }
}
