//! Upper-limit Riemann-Liouville fractional integrals `I^alpha_-` on
//! half-lines and their left-inverse fractional derivatives `D^alpha_-`,
//! including the half-integer variants used by the mean-value inversion
//! scheme.
//!
//! `D^alpha_-` acts on sampled Chebyshev curves; the inner fractional
//! integral reads past the right end of the grid through the curve's
//! declared tail model, whose absence is an error rather than a silent
//! truncation.

use crate::error::{Error, Result};
use crate::fields::RadialProfile;
use crate::numerics::adaptive::{integrate_adaptive, integrate_semi_infinite};
use crate::numerics::curve::{SampledCurve, Tail};
use crate::numerics::gauss::jacobi_window;
use crate::numerics::special::gamma;

/// A fractional order split as `alpha = m + alpha0` with integer part
/// `m` and fractional part `alpha0` in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    pub alpha: f64,
    pub integer_part: usize,
    pub frac_part: f64,
}

impl FracOrder {
    pub fn new(alpha: f64) -> Result<FracOrder> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Precondition(format!(
                "fractional order must be positive, got {alpha}"
            )));
        }
        let rounded = alpha.round();
        if (alpha - rounded).abs() < 1e-12 {
            return Ok(FracOrder {
                alpha,
                integer_part: rounded as usize,
                frac_part: 0.0,
            });
        }
        let m = alpha.floor();
        Ok(FracOrder {
            alpha,
            integer_part: m as usize,
            frac_part: alpha - m,
        })
    }

    pub fn is_integer(&self) -> bool {
        self.frac_part == 0.0
    }
}

/// Which printed form of the fractional derivative to use for
/// non-integer orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeForm {
    /// Power-shifted form with parameter `j` in `0..=m`; `j = 0`
    /// differentiates the data least before the smoothing fractional
    /// integral and is the default.
    #[default]
    DefaultShift,
    /// Power-shifted form with an explicit `j`.
    Shifted(usize),
    /// `(-1)^{m+1} [I^{1-alpha+m} h]^{(m+1)}`, valid under the stronger
    /// integrability condition.
    Strong,
}

/// Quadrature knobs for the fractional integral.
#[derive(Debug, Clone, Copy)]
pub struct RlConfig {
    pub rel_tol: f64,
    pub window: f64,
    pub jacobi_points: usize,
}

impl Default for RlConfig {
    fn default() -> Self {
        RlConfig {
            rel_tol: 1e-10,
            window: 0.5,
            jacobi_points: 48,
        }
    }
}

/// `(I^alpha_- g)(r) = (1/Gamma(alpha)) int_r^inf g(s) (s-r)^{alpha-1} ds`.
///
/// The endpoint singularity (`alpha < 1`) is handled by a left-weighted
/// Jacobi rule on a window, the rest adaptively with the profile's tail
/// model. Requires `tail_mu > alpha` unless the profile is compactly
/// supported, mirroring the half-line integrability condition.
pub fn rl_integral(g: &RadialProfile, alpha: f64, r: f64) -> Result<f64> {
    rl_integral_with(g, alpha, r, &RlConfig::default())
}

pub fn rl_integral_with(g: &RadialProfile, alpha: f64, r: f64, cfg: &RlConfig) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Precondition(format!(
            "fractional order must be positive, got {alpha}"
        )));
    }
    let support_end = g.support_end();
    if let Some(hi) = support_end {
        if r >= hi {
            return Ok(0.0);
        }
    } else {
        let mu = g
            .tail_mu()
            .ok_or_else(|| Error::Precondition("tail model missing on the half-line".into()))?;
        if !(mu > alpha) {
            return Err(Error::Precondition(format!(
                "int |g| s^(alpha-1) diverges: tail mu = {mu} <= alpha = {alpha}"
            )));
        }
    }
    let inv_gamma = 1.0 / gamma(alpha);
    // window with the (s-r)^{alpha-1} weight folded into a Jacobi rule
    let mut window = cfg.window.max(1e-8);
    if let Some(hi) = support_end {
        window = window.min(hi - r);
    }
    let head = jacobi_window(cfg.jacobi_points, alpha - 1.0, 0.0, window, |u| g.eval(r + u))?;
    let integrand = |s: f64| g.eval(s) * (s - r).powf(alpha - 1.0);
    let body = match support_end {
        Some(hi) => {
            if hi <= r + window {
                0.0
            } else {
                integrate_adaptive(&integrand, r + window, hi, cfg.rel_tol)?.value
            }
        }
        None => {
            let mu = g.tail_mu().unwrap();
            let mu_eff = if mu.is_infinite() { 1e6 } else { mu + 1.0 - alpha };
            integrate_semi_infinite(&integrand, r + window, mu_eff, cfg.rel_tol)?.value
        }
    };
    Ok(inv_gamma * (head + body))
}

fn tail_mu_of(curve: &SampledCurve) -> Result<f64> {
    curve
        .tail_mu()
        .ok_or_else(|| Error::Precondition("sampled curve has no tail model".into()))
}

/// Wrap a sampled curve (interpolant + tail) as a half-line profile with
/// an extra power weight `s^{power}` and declared decay `mu`.
fn weighted_profile(curve: SampledCurve, power: f64, mu: f64) -> RadialProfile {
    let start = curve.start();
    let compact = curve.tail() == Tail::Zero;
    let end = curve.end();
    let profile = RadialProfile::closed(start, move |s| curve.eval(s) * s.powf(power), mu);
    if compact {
        profile.with_support_end(end)
    } else {
        profile
    }
}

/// Fractional derivative `D^alpha_- h` of a sampled Chebyshev curve,
/// the left inverse of `I^alpha_-`.
///
/// Integer orders differentiate directly: `(-1)^m h^{(m)}`. Non-integer
/// orders use the power-shifted form (default `j = 0`) or the strong
/// form. The result lives on the same grid.
pub fn rl_derivative(h: &SampledCurve, alpha: f64, form: DerivativeForm) -> Result<SampledCurve> {
    let order = FracOrder::new(alpha)?;
    if !h.is_chebyshev() {
        return Err(Error::Precondition(
            "fractional derivatives need a Chebyshev grid".into(),
        ));
    }
    let mu_h = tail_mu_of(h)?;
    if !(mu_h > alpha) {
        return Err(Error::Precondition(format!(
            "fractional derivative needs tail decay mu > alpha (mu = {mu_h}, alpha = {alpha})"
        )));
    }
    if order.is_integer() {
        let m = order.integer_part;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let d = h.derivative(m)?;
        return Ok(d.map(|_, v| sign * v));
    }
    let m = order.integer_part;
    let alpha0 = order.frac_part;
    let beta = 1.0 - alpha0;
    let sign = if (m + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let grid = h.grid().to_vec();

    enum Resolved {
        Shifted(usize),
        Strong,
    }
    let resolved = match form {
        DerivativeForm::DefaultShift => Resolved::Shifted(0),
        DerivativeForm::Shifted(j) => Resolved::Shifted(j),
        DerivativeForm::Strong => Resolved::Strong,
    };

    let values: Vec<f64> = match resolved {
        Resolved::Shifted(j) => {
            if j > m {
                return Err(Error::Precondition(format!(
                    "shift parameter j = {j} exceeds the integer part m = {m}"
                )));
            }
            // u = s^{j-m-1} h^{(j)}
            let hj = if j == 0 { h.clone() } else { h.derivative(j)? };
            let mu_u = tail_mu_of(&hj)? + (m + 1 - j) as f64;
            let u = weighted_profile(hj, j as f64 - m as f64 - 1.0, mu_u);
            let w: Result<Vec<f64>> = grid.iter().map(|&s| rl_integral(&u, beta, s)).collect();
            let w = w?;
            // z = s^{m-j+alpha0} I^beta u, differentiated m-j+1 times
            let z_vals: Vec<f64> = grid
                .iter()
                .zip(&w)
                .map(|(&s, &wv)| s.powf(m as f64 - j as f64 + alpha0) * wv)
                .collect();
            let z = SampledCurve::from_chebyshev_samples(grid.clone(), z_vals, h.tail());
            let dz = z.derivative(m - j + 1)?;
            grid.iter()
                .zip(dz.values())
                .map(|(&s, &v)| sign * s.powf(1.0 - alpha0) * v)
                .collect()
        }
        Resolved::Strong => {
            let u = weighted_profile(h.clone(), 0.0, mu_h);
            let w: Result<Vec<f64>> = grid.iter().map(|&s| rl_integral(&u, beta, s)).collect();
            let z = SampledCurve::from_chebyshev_samples(grid.clone(), w?, h.tail());
            let dz = z.derivative(m + 1)?;
            dz.values().iter().map(|&v| sign * v).collect()
        }
    };
    let tail = match h.tail() {
        Tail::PowerLaw { mu } => Tail::PowerLaw { mu: mu + alpha },
        other => other,
    };
    Ok(SampledCurve::from_chebyshev_samples(grid, values, tail))
}

/// Half-integer derivative `D^{k/2}_- h` for odd `k`, in the `j = 0`
/// power-shifted form; the `j = m` form is available through
/// [`rl_derivative`] as a cross-check.
pub fn rl_halfinteger_derivative(h: &SampledCurve, k_odd: usize) -> Result<SampledCurve> {
    if k_odd % 2 == 0 || k_odd == 0 {
        return Err(Error::Precondition(format!(
            "half-integer derivative needs odd k, got {k_odd}"
        )));
    }
    rl_derivative(h, k_odd as f64 / 2.0, DerivativeForm::Shifted(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn exp_profile() -> RadialProfile {
        RadialProfile::closed(1.0, |s: f64| (-s).exp(), f64::INFINITY)
    }

    #[test]
    fn frac_order_decomposition() {
        let o = FracOrder::new(1.5).unwrap();
        assert_eq!(o.integer_part, 1);
        assert_eq!(o.frac_part, 0.5);
        assert_eq!(o.alpha, o.integer_part as f64 + o.frac_part);
        let o = FracOrder::new(2.0).unwrap();
        assert!(o.is_integer());
        assert_eq!(o.integer_part, 2);
        assert!(FracOrder::new(0.0).is_err());
        assert!(FracOrder::new(-1.0).is_err());
    }

    #[test]
    fn integral_fixes_exponential() {
        // I^alpha e^{-s} = e^{-s} for every alpha
        let g = exp_profile();
        for alpha in [0.5, 1.0, 1.7, 2.5] {
            for r in [1.0, 1.8, 3.0] {
                assert_relative_eq!(
                    rl_integral(&g, alpha, r).unwrap(),
                    (-r).exp(),
                    max_relative = 1e-9
                );
            }
        }
    }

    #[test]
    fn integral_power_law_beta_identity() {
        // I^alpha s^{-mu} = Gamma(mu-alpha)/Gamma(mu) r^{alpha-mu}
        let mu = 4.0;
        let g = RadialProfile::closed(1.0, move |s: f64| s.powf(-mu), mu);
        for alpha in [0.5, 1.0, 1.5] {
            for r in [1.2f64, 2.0, 5.0] {
                let exact = gamma(mu - alpha) / gamma(mu) * r.powf(alpha - mu);
                assert_relative_eq!(
                    rl_integral(&g, alpha, r).unwrap(),
                    exact,
                    max_relative = 1e-9
                );
            }
        }
    }

    #[test]
    fn integral_truncated_constant() {
        // alpha = 1, g = 1 on [r, R]: integral R - r
        let g = RadialProfile::closed(1.0, |_| 1.0, 0.0).with_support_end(6.0);
        assert_relative_eq!(rl_integral(&g, 1.0, 2.5).unwrap(), 3.5, max_relative = 1e-11);
        assert_eq!(rl_integral(&g, 1.0, 7.0).unwrap(), 0.0);
    }

    #[test]
    fn integral_rejects_divergent_tail() {
        let g = RadialProfile::closed(1.0, |s: f64| s.powf(-0.5), 0.5);
        assert!(matches!(
            rl_integral(&g, 0.5, 2.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn semigroup_property() {
        // I^{1/2} I^{1/2} g = I^1 g for g = e^{-s} (both equal e^{-r})
        let g = exp_profile();
        let half = SampledCurve::chebyshev(
            1.0,
            18.0,
            72,
            |s| rl_integral(&g, 0.5, s).unwrap(),
            Tail::PowerLaw { mu: 30.0 },
        );
        let half_profile = RadialProfile::from_curve(half);
        for r in [1.5, 3.0] {
            assert_relative_eq!(
                rl_integral(&half_profile, 0.5, r).unwrap(),
                (-r).exp(),
                max_relative = 1e-6
            );
        }
    }

    #[test]
    fn power_weighted_composition() {
        // I^{mu+nu} s^{-nu} g = s^mu I^nu s^{-mu-nu} I^mu g at
        // (mu, nu) = (1/2, 1/2), g = e^{-s}; I^{1/2} g = e^{-s} exactly
        let lhs_profile =
            RadialProfile::closed(1.0, |s: f64| s.powf(-0.5) * (-s).exp(), f64::INFINITY);
        let inner = RadialProfile::closed(1.0, |s: f64| s.powf(-1.0) * (-s).exp(), f64::INFINITY);
        for r in [1.3, 2.0, 4.0] {
            let lhs = rl_integral(&lhs_profile, 1.0, r).unwrap();
            let rhs = r.powf(0.5) * rl_integral(&inner, 0.5, r).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-6);
        }
    }

    #[test]
    fn derivative_integer_order() {
        // alpha = 1, h = e^{-s}: D h = -h' = e^{-s}
        let h = SampledCurve::chebyshev(1.0, 6.0, 40, |s| (-s).exp(), Tail::PowerLaw { mu: 30.0 });
        let d = rl_derivative(&h, 1.0, DerivativeForm::default()).unwrap();
        for (&s, &v) in d.grid().iter().zip(d.values()).skip(2).take(35) {
            assert_relative_eq!(v, (-s).exp(), max_relative = 1e-8);
        }
    }

    #[test]
    fn derivative_half_order_fixed_point() {
        // e^{-s} is a fixed point of I^{1/2}, so D^{1/2} e^{-s} = e^{-s}
        let h = SampledCurve::chebyshev(1.0, 16.0, 72, |s| (-s).exp(), Tail::PowerLaw { mu: 30.0 });
        let d = rl_derivative(&h, 0.5, DerivativeForm::default()).unwrap();
        for &s in &[1.2, 2.0, 3.5, 5.0] {
            assert_relative_eq!(d.eval(s), (-s).exp(), max_relative = 1e-6);
        }
    }

    #[test]
    fn roundtrip_derivative_of_integral() {
        // D^alpha I^alpha g = g on [1.1, 5] for exponential and power data
        for alpha in [0.5, 1.0, 1.5] {
            // exponential
            let g = exp_profile();
            let h = SampledCurve::chebyshev(
                1.05,
                16.0,
                80,
                |s| rl_integral(&g, alpha, s).unwrap(),
                Tail::PowerLaw { mu: 30.0 },
            );
            let d = rl_derivative(&h, alpha, DerivativeForm::default()).unwrap();
            let mut worst: f64 = 0.0;
            for k in 0..=40 {
                let s = 1.1 + 3.9 * k as f64 / 40.0;
                worst = worst.max(((d.eval(s) - (-s).exp()) / (-s).exp()).abs());
            }
            assert!(worst <= 1e-4, "exp alpha={alpha}: max rel err {worst}");

            // power law s^{-4}; the power tail of I^alpha g is exact
            let g = RadialProfile::closed(1.0, |s: f64| s.powi(-4), 4.0);
            let h = SampledCurve::chebyshev(
                1.05,
                16.0,
                80,
                |s| rl_integral(&g, alpha, s).unwrap(),
                Tail::PowerLaw { mu: 4.0 - alpha },
            );
            let d = rl_derivative(&h, alpha, DerivativeForm::default()).unwrap();
            let mut worst: f64 = 0.0;
            for k in 0..=40 {
                let s: f64 = 1.1 + 3.9 * k as f64 / 40.0;
                worst = worst.max(((d.eval(s) - s.powi(-4)) / s.powi(-4)).abs());
            }
            assert!(worst <= 1e-4, "power alpha={alpha}: max rel err {worst}");
        }
    }

    #[test]
    fn roundtrip_compact_bump() {
        let g = RadialProfile::closed(
            1.0,
            |s: f64| {
                let u = s - 1.0;
                if u < 1.0 {
                    (1.0 - u).powi(4) * u * u
                } else {
                    0.0
                }
            },
            f64::INFINITY,
        )
        .with_support_end(2.0);
        for alpha in [0.5, 1.5] {
            let h = SampledCurve::chebyshev(
                1.02,
                6.0,
                80,
                |s| rl_integral(&g, alpha, s).unwrap(),
                Tail::Zero,
            );
            let d = rl_derivative(&h, alpha, DerivativeForm::default()).unwrap();
            let mut worst: f64 = 0.0;
            for k in 0..=30 {
                let s = 1.1 + (1.9 - 1.1) * k as f64 / 30.0;
                worst = worst.max((d.eval(s) - g.eval(s)).abs());
            }
            // absolute scale: sup of the bump is ~0.1
            assert!(worst <= 2e-5, "alpha={alpha}: max abs err {worst}");
        }
    }

    #[test]
    fn halfinteger_forms_agree() {
        // j = 0 and j = m printed forms coincide on smooth data
        let h = SampledCurve::chebyshev(1.0, 16.0, 72, |s| (-s).exp(), Tail::PowerLaw { mu: 30.0 });
        for k in [1usize, 3] {
            let alpha = k as f64 / 2.0;
            let m = (k - 1) / 2;
            let a = rl_halfinteger_derivative(&h, k).unwrap();
            let b = rl_derivative(&h, alpha, DerivativeForm::Shifted(m)).unwrap();
            for &s in &[1.5, 2.5, 4.0] {
                assert_relative_eq!(a.eval(s), b.eval(s), max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn halfinteger_roundtrip() {
        // k=1: D^{1/2} I^{1/2} g = g for g = e^{-s}
        let g = exp_profile();
        let h = SampledCurve::chebyshev(
            1.0,
            16.0,
            72,
            |s| rl_integral(&g, 0.5, s).unwrap(),
            Tail::PowerLaw { mu: 30.0 },
        );
        let d = rl_halfinteger_derivative(&h, 1).unwrap();
        for &s in &[1.3, 2.0, 4.0] {
            assert_relative_eq!(d.eval(s), (-s).exp(), max_relative = 1e-5);
        }
    }

    #[test]
    fn derivative_rejects_slow_decay() {
        // h = s^{-1/2} has mu = 1/2 <= alpha = 1/2: the half-line
        // integral behind the definition diverges
        let h =
            SampledCurve::chebyshev(1.0, 10.0, 32, |s| s.powf(-0.5), Tail::PowerLaw { mu: 0.5 });
        assert!(matches!(
            rl_derivative(&h, 0.5, DerivativeForm::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn derivative_requires_tail_model() {
        let h = SampledCurve::chebyshev(1.0, 10.0, 32, |s| (-s).exp(), Tail::None);
        assert!(matches!(
            rl_derivative(&h, 0.5, DerivativeForm::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn strong_form_matches_shifted() {
        let h = SampledCurve::chebyshev(1.0, 16.0, 72, |s| (-s).exp(), Tail::PowerLaw { mu: 30.0 });
        let a = rl_derivative(&h, 0.5, DerivativeForm::Shifted(0)).unwrap();
        let b = rl_derivative(&h, 0.5, DerivativeForm::Strong).unwrap();
        for &s in &[1.5, 2.5, 4.0] {
            assert_relative_eq!(a.eval(s), b.eval(s), max_relative = 1e-6);
        }
    }
}
