//! Chebyshev-Gauss-Lobatto grids, barycentric interpolation, and spectral
//! differentiation matrices.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Ascending Chebyshev-Gauss-Lobatto nodes on `[a, b]` (`n` points).
pub fn chebyshev_lobatto(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "a Chebyshev grid needs at least two points");
    let big_n = (n - 1) as f64;
    (0..n)
        .map(|j| {
            // cos runs 1 -> -1; flip to ascending
            let x = (PI * (big_n - j as f64) / big_n).cos();
            a + 0.5 * (b - a) * (x + 1.0)
        })
        .collect()
}

/// Barycentric weights for a Chebyshev-Lobatto grid (ascending order).
pub fn lobatto_bary_weights(n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n)
        .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    w[0] *= 0.5;
    w[n - 1] *= 0.5;
    w
}

/// Barycentric interpolation through `(grid, values)` with weights `w`.
pub fn barycentric_eval(grid: &[f64], values: &[f64], w: &[f64], x: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for ((&xj, &fj), &wj) in grid.iter().zip(values).zip(w) {
        let dx = x - xj;
        if dx == 0.0 {
            return fj;
        }
        let c = wj / dx;
        num += c * fj;
        den += c;
    }
    num / den
}

/// First-derivative differentiation matrix for arbitrary distinct nodes
/// with barycentric weights `w` (row-major, n x n). Diagonal entries use
/// the negative-row-sum identity.
pub fn differentiation_matrix(grid: &[f64], w: &[f64]) -> Vec<f64> {
    let n = grid.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i != j {
                let entry = (w[j] / w[i]) / (grid[i] - grid[j]);
                d[i * n + j] = entry;
                row_sum += entry;
            }
        }
        d[i * n + i] = -row_sum;
    }
    d
}

/// Apply a row-major n x n matrix to a vector.
pub fn mat_vec(d: &[f64], v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut out = vec![0.0; n];
    for i in 0..n {
        let row = &d[i * n..(i + 1) * n];
        out[i] = row.iter().zip(v).map(|(&a, &b)| a * b).sum();
    }
    out
}

/// Derivative of the polynomial interpolant of `values` on `grid`,
/// applied `order` times.
pub fn spectral_derivative_values(
    grid: &[f64],
    w: &[f64],
    values: &[f64],
    order: usize,
) -> Result<Vec<f64>> {
    let n = grid.len();
    if order > n.saturating_sub(2) {
        return Err(Error::Precondition(format!(
            "derivative order {order} too high for a {n}-point grid"
        )));
    }
    let d = differentiation_matrix(grid, w);
    let mut v = values.to_vec();
    for _ in 0..order {
        v = mat_vec(&d, &v);
    }
    Ok(v)
}
