//! Adaptive integration drivers: finite intervals, half-lines with a
//! declared decay exponent, and log-singular integrands.

use crate::error::{Error, Result};
use crate::numerics::gauss::{apply_on, gauss_legendre_arc};

/// Outcome of an adaptive integration: value plus an error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
}

const LOW_POINTS: usize = 16;
const HIGH_POINTS: usize = 32;
const MAX_DEPTH: usize = 48;

/// Adaptive Gauss integration of `f` over `[a, b]`.
///
/// Bisects until the G16/G32 difference per segment is below the local
/// share of `rel_tol` (with a tiny absolute floor to survive zero values).
pub fn integrate_adaptive<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error_estimate: 0.0,
        });
    }
    let low = gauss_legendre_arc(LOW_POINTS);
    let high = gauss_legendre_arc(HIGH_POINTS);
    let coarse = apply_on(&high, a, b, f);
    // conditioning floor: an oscillatory integral can cancel to zero, so
    // the reachable accuracy is relative to the L1 mass, not the value
    let l1 = apply_on(&high, a, b, |x| f(x).abs());
    let scale = coarse.abs().max(0.01 * l1.abs()).max(1e-300);
    let mut total = 0.0f64;
    let mut err = 0.0;
    let mut failed = false;
    let mut work = 0usize;
    const MAX_INTERVALS: usize = 60_000;

    // explicit stack of (a, b, depth)
    let mut stack = vec![(a, b, 0usize)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let i_low = apply_on(&low, lo, hi, f);
        let i_high = apply_on(&high, lo, hi, f);
        let e = (i_high - i_low).abs();
        let frac = ((hi - lo) / (b - a)).abs();
        // sqrt allocation: along a bisection path toward a singular point
        // the leaf budgets sum to a bounded multiple of the total budget
        let budget = rel_tol * scale.max(total.abs()) * frac.sqrt().max(1.0 / 128.0) + 1e-305;
        work += 1;
        if e <= budget || depth >= MAX_DEPTH || work >= MAX_INTERVALS {
            if e > budget {
                failed = true;
            }
            total += i_high;
            err += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    if failed && err > rel_tol * total.abs().max(scale) * 8.0 {
        return Err(Error::NumericalFailure {
            context: format!("adaptive quadrature on [{a}, {b}]"),
            partial: total,
            error_estimate: err,
        });
    }
    Ok(Integral {
        value: total,
        error_estimate: err,
    })
}

/// `int_a^inf f(s) ds` for `f` with declared tail decay `|f(s)| = O(s^-mu)`,
/// `mu > 1`.
///
/// Panels grow geometrically; integration stops once the analytic tail
/// bound drops below `rel_tol` times the accumulated value.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64 + Copy>(
    f: F,
    a: f64,
    tail_mu: f64,
    rel_tol: f64,
) -> Result<Integral> {
    if !(tail_mu > 1.0) {
        return Err(Error::Precondition(format!(
            "semi-infinite integration needs tail decay mu > 1, got {tail_mu}"
        )));
    }
    let mut h = 1.0f64.max(0.125 * a.abs());
    let mut lo = a;
    let mut total = 0.0f64;
    let mut err = 0.0;
    let mut mass = 0.0f64;
    const MAX_PANELS: usize = 64;
    for panel in 0..MAX_PANELS {
        let hi = lo + h;
        let part = integrate_adaptive(f, lo, hi, rel_tol)?;
        total += part.value;
        mass = mass.max(part.value.abs());
        err += part.error_estimate;
        // power-law continuation beyond R: f(s) ~ f(R) (s/R)^{-mu}, whose
        // integral is f(R) R / (mu - 1); how trustworthy that model is
        // shows in the ratio of the fitted coefficients at R/2 and R
        let r_end = hi.abs().max(1.0);
        let f_end = f(hi);
        let tail_est = f_end * r_end / (tail_mu - 1.0);
        let c_mid = f(hi - 0.5 * h).abs() * (hi - 0.5 * h).abs().max(1.0).powf(tail_mu);
        let c_end = f_end.abs() * r_end.powf(tail_mu);
        let mismatch = if c_end.max(c_mid) == 0.0 {
            0.0
        } else {
            ((c_mid - c_end).abs() / c_end.max(c_mid)).min(1.0)
        };
        let tail_err = tail_est.abs() * mismatch.max(3.0 / r_end);
        // the floor is magnitude-aware so cancelling integrals terminate
        let floor = rel_tol * total.abs().max(0.01 * mass).max(1e-300);
        if panel >= 2 && tail_err <= floor && part.value.abs() <= floor.max(tail_est.abs()) {
            return Ok(Integral {
                value: total + tail_est,
                error_estimate: err + tail_err,
            });
        }
        lo = hi;
        h *= 2.0;
    }
    Err(Error::NumericalFailure {
        context: format!("semi-infinite integral from {a} (tail mu = {tail_mu})"),
        partial: total,
        error_estimate: err,
    })
}

/// `int_a^b f(s) ds` where `f(s) = log|s - s0| g(s) + h(s)` with smooth
/// `g, h` and `s0` inside or at the edge of `[a, b]`.
///
/// Inside a window around `s0` the substitution `s - s0 = ±u^2` removes the
/// logarithmic blow-up (the transformed integrand is continuous); outside
/// the window plain adaptive quadrature applies.
pub fn integrate_log_singular<F: Fn(f64) -> f64 + Copy>(
    f: F,
    a: f64,
    b: f64,
    singular_point: f64,
    window: f64,
    rel_tol: f64,
) -> Result<Integral> {
    if !(window > 0.0) {
        return Err(Error::Precondition("log-singular window must be positive".into()));
    }
    let s0 = singular_point;
    let mut total = 0.0f64;
    let mut err = 0.0;
    let mut add = |part: Integral| {
        total += part.value;
        err += part.error_estimate;
    };

    // In the substituted integrand 2u f(s0 ± u^2), arguments so close to
    // s0 that they round onto it would evaluate f at the singularity; the
    // exact contribution of that sliver is O(u^2 log u), below rounding,
    // so those nodes are dropped.
    let guarded = |s: f64, u: f64| -> f64 {
        if s == s0 {
            return 0.0;
        }
        let v = 2.0 * u * f(s);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };

    // right side of the singularity
    if b > s0 {
        let w = window.min(b - s0);
        let right_in = integrate_adaptive(|u| guarded(s0 + u * u, u), 0.0, w.sqrt(), rel_tol)?;
        add(right_in);
        if b > s0 + w {
            add(integrate_adaptive(f, s0 + w, b, rel_tol)?);
        }
    }
    // left side
    if a < s0 {
        let w = window.min(s0 - a);
        let left_in = integrate_adaptive(|u| guarded(s0 - u * u, u), 0.0, w.sqrt(), rel_tol)?;
        add(left_in);
        if a < s0 - w {
            add(integrate_adaptive(f, a, s0 - w, rel_tol)?);
        }
    }
    Ok(Integral {
        value: total,
        error_estimate: err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn adaptive_smooth() {
        let got = integrate_adaptive(|x| x.sin(), 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert_relative_eq!(got.value, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn semi_infinite_exponential() {
        let got = integrate_semi_infinite(|s| (-s).exp(), 1.0, 4.0, 1e-11).unwrap();
        assert_relative_eq!(got.value, (-1.0f64).exp(), max_relative = 1e-10);
    }

    #[test]
    fn semi_infinite_power_law() {
        let got = integrate_semi_infinite(|s| s.powi(-3), 1.0, 3.0, 1e-11).unwrap();
        assert_relative_eq!(got.value, 0.5, max_relative = 1e-9);
    }

    #[test]
    fn semi_infinite_singular_head_via_jacobi() {
        // int_1^inf (s-1)^{-1/2} e^{-s} ds = sqrt(pi)/e; head by Jacobi rule,
        // tail by the semi-infinite driver
        let head =
            crate::numerics::gauss::jacobi_window(32, -0.5, 1.0, 1.0, |s| (-s).exp()).unwrap();
        let tail = integrate_semi_infinite(|s| (s - 1.0).powf(-0.5) * (-s).exp(), 2.0, 4.0, 1e-12)
            .unwrap();
        let exact = 0.652_049_332_173_292_2; // sqrt(pi)/e
        assert_relative_eq!(head + tail.value, exact, max_relative = 1e-11);
    }

    #[test]
    fn semi_infinite_rejects_slow_tail() {
        assert!(matches!(
            integrate_semi_infinite(|s| 1.0 / s, 1.0, 1.0, 1e-8),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn log_singular_examples() {
        // int_0^1 log u du = -1
        let got = integrate_log_singular(|u| u.ln(), 0.0, 1.0, 0.0, 0.1, 1e-12).unwrap();
        assert_relative_eq!(got.value, -1.0, epsilon = 1e-10);
        // int_0^1 u log u du = -1/4
        let got = integrate_log_singular(|u| u * u.ln(), 0.0, 1.0, 0.0, 0.1, 1e-12).unwrap();
        assert_relative_eq!(got.value, -0.25, epsilon = 1e-10);
        // int_0^2 log|u-1| du = -2
        let got =
            integrate_log_singular(|u| (u - 1.0).abs().ln(), 0.0, 2.0, 1.0, 0.2, 1e-12).unwrap();
        assert_relative_eq!(got.value, -2.0, epsilon = 1e-10);
    }

    #[test]
    fn error_estimates_cover_actual_error() {
        let cases: [(fn(f64) -> f64, f64, f64, f64); 2] = [
            (|x: f64| x.exp(), 0.0, 1.0, std::f64::consts::E - 1.0),
            (|x: f64| 1.0 / (1.0 + x * x), 0.0, 1.0, std::f64::consts::PI / 4.0),
        ];
        for (f, a, b, exact) in cases {
            let got = integrate_adaptive(f, a, b, 1e-10).unwrap();
            let actual = (got.value - exact).abs();
            assert!(
                got.error_estimate + 1e-14 >= actual,
                "estimate {} < actual {}",
                got.error_estimate,
                actual
            );
        }
    }
}
