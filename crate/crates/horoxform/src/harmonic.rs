//! Spherical functions, the Fourier transform on H^n, the spherical
//! transform of zonal functions, and the closed-form spectral symbol of
//! the potential kernel.

use crate::constants::{delta, potential_zeta, sigma};
use crate::error::{Error, Result};
use crate::fields::{integrate_horo_coords, RadialProfile, ScalarField};
use crate::lorentz::{bracket_point_direction, HPoint};
use crate::numerics::adaptive::integrate_semi_infinite;
use crate::numerics::gauss::{gauss_gegenbauer, jacobi_window};
use crate::numerics::special::gamma_abs2;
use num_complex::Complex64;

/// Spectral parameter of the Fourier transform: frequency `lambda`,
/// optional direction (absent for zonal transforms), and the
/// half-dimension shift `delta = (n-1)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralParam {
    pub lambda: f64,
    pub omega: Option<Vec<f64>>,
    pub delta: f64,
}

impl SpectralParam {
    pub fn zonal(lambda: f64, n: usize) -> Self {
        SpectralParam {
            lambda,
            omega: None,
            delta: delta(n),
        }
    }

    pub fn directed(lambda: f64, omega: Vec<f64>, n: usize) -> Result<Self> {
        if omega.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: omega.len(),
            });
        }
        Ok(SpectralParam {
            lambda,
            omega: Some(omega),
            delta: delta(n),
        })
    }
}

/// Node count for the spherical-function rule, grown with the total
/// oscillation `lambda * r`.
fn phi_rule_points(lambda: f64, r: f64, d: f64) -> usize {
    let raw = 64.0 + (1.5 * d.max(1.0) + 1.6 * lambda.abs()) * r;
    // quantize so the rule cache is actually hit across nearby radii
    let m = 32 * (raw / 32.0).ceil() as usize;
    m.min(512)
}

/// The zonal eigenfunction of the Beltrami-Laplace operator with
/// eigenvalue `-(lambda^2 + delta^2)`, evaluated at geodesic radius `r`:
///
/// `(sigma_{n-2}/sigma_{n-1}) int_0^pi (cosh r - sinh r cos psi)^{i lambda - delta} (sin psi)^{n-2} dpsi`.
///
/// Computed by a Gegenbauer rule in `cos psi`; the imaginary part
/// vanishes by the `lambda -> -lambda` symmetry and is discarded.
pub fn spherical_function(lambda: f64, r: f64, n: usize) -> Result<f64> {
    Ok(spherical_function_parts(lambda, r, n)?.0)
}

/// Real and imaginary parts of the spherical-function quadrature. The
/// imaginary part is an accuracy meter: it is exactly zero analytically,
/// so its size reflects the quadrature error at this `(lambda, r)`.
///
/// Substituting `y = log(cosh r - u sinh r)` turns the integral into
///
/// `(sigma_{n-2}/sigma_{n-1}) (r/sinh r)^{2 delta - 1} *
///  int_{-r}^{r} [(e^y - e^{-r})(e^r - e^y) / ((y+r)(r-y))]^{delta-1}
///  e^{(1-delta) y} e^{i lambda y} d_jacobi(y)`
///
/// against the two-sided weight `((y+r)(r-y))^{delta-1}`, which a
/// Gegenbauer rule integrates with the leftover factor smooth for every
/// radius (no boundary spike, unlike the raw angular form).
pub fn spherical_function_parts(lambda: f64, r: f64, n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::UnsupportedDimension(n, "spherical function"));
    }
    if r < 0.0 {
        return Err(Error::Precondition("radius must be >= 0".into()));
    }
    if r < 1e-14 {
        return Ok((1.0, 0.0));
    }
    let d = delta(n);
    // expm1(z)/z, smooth and positive for z >= 0
    let expm1_over = |z: f64| if z < 1e-12 { 1.0 } else { z.exp_m1() / z };
    // log of the endpoint-free part of the integrand at y in (-r, r):
    // (delta-1) [log(e^y - e^{-r}) + log(e^r - e^y)] + (1 - delta) y
    let ln_full = |y: f64| {
        let ln_e1 = y + (-(-(y + r)).exp()).ln_1p(); // log(e^y - e^{-r})
        let ln_e2 = r + (-(y - r).exp()).ln_1p(); // log(e^r - e^y)
        (d - 1.0) * (ln_e1 + ln_e2) + (1.0 - d) * y
    };
    let (sum_re, sum_im) = if r <= 3.0 {
        // one two-sided rule absorbing ((y+r)(r-y))^{delta-1} exactly
        let rule = gauss_gegenbauer(phi_rule_points(lambda, r, d), d - 1.0)?;
        let mut re = 0.0;
        let mut im = 0.0;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let y = r * x;
            let ln_a = -r + expm1_over(y + r).ln();
            let ln_b = y + expm1_over(r - y).ln();
            let amp = ((d - 1.0) * (ln_a + ln_b) + (1.0 - d) * y).exp();
            re += w * amp * (lambda * y).cos();
            im += w * amp * (lambda * y).sin();
        }
        // y = r x rescaling
        let s = r.powf(2.0 * d - 1.0);
        (s * re, s * im)
    } else {
        // endpoint windows with one-sided Jacobi weights, adaptive middle
        let w = 1.0f64.min(0.25 * r);
        let tol = 1e-12;
        let mut re = 0.0;
        let mut im = 0.0;
        // left window: weight (y+r)^{delta-1}
        let smooth_left = |y: f64, cosine: bool| {
            let ln_a = -r + expm1_over(y + r).ln();
            let ln_e2 = r + (-(y - r).exp()).ln_1p();
            let amp = ((d - 1.0) * (ln_a + ln_e2) + (1.0 - d) * y).exp();
            if cosine {
                amp * (lambda * y).cos()
            } else {
                amp * (lambda * y).sin()
            }
        };
        re += jacobi_window(64, d - 1.0, -r, w, |y| smooth_left(y, true))?;
        im += jacobi_window(64, d - 1.0, -r, w, |y| smooth_left(y, false))?;
        // right window: weight (r-y)^{delta-1}, z = r - y
        let smooth_right = |z: f64, cosine: bool| {
            let y = r - z;
            let ln_e1 = y + (-(-(y + r)).exp()).ln_1p();
            let ln_b = y + expm1_over(z).ln();
            let amp = ((d - 1.0) * (ln_e1 + ln_b) + (1.0 - d) * y).exp();
            if cosine {
                amp * (lambda * y).cos()
            } else {
                amp * (lambda * y).sin()
            }
        };
        re += jacobi_window(64, d - 1.0, 0.0, w, |z| smooth_right(z, true))?;
        im += jacobi_window(64, d - 1.0, 0.0, w, |z| smooth_right(z, false))?;
        // middle
        let mid_re = crate::numerics::adaptive::integrate_adaptive(
            |y| ln_full(y).exp() * (lambda * y).cos(),
            -r + w,
            r - w,
            tol,
        )?;
        let mid_im = crate::numerics::adaptive::integrate_adaptive(
            |y| ln_full(y).exp() * (lambda * y).sin(),
            -r + w,
            r - w,
            tol,
        )?;
        (re + mid_re.value, im + mid_im.value)
    };
    // overall prefactor (sigma_{n-2}/sigma_{n-1}) sinh^{1-2 delta}(r)
    let k = sigma(n - 1) / sigma(n) * r.sinh().powf(1.0 - 2.0 * d);
    Ok((k * sum_re, k * sum_im))
}

/// Closed-form spectral symbol of the potential kernel of order `alpha`:
/// a ratio of gamma factors, real by conjugate symmetry. Valid for
/// `0 < alpha < n - 1`.
pub fn q_alpha_hat(lambda: f64, alpha: f64, n: usize) -> Result<f64> {
    let d = delta(n);
    if !(alpha > 0.0 && alpha < n as f64 - 1.0) {
        return Err(Error::Precondition(format!(
            "spectral symbol needs 0 < alpha < n-1, got alpha = {alpha}, n = {n}"
        )));
    }
    Ok(gamma_abs2(d - alpha / 2.0, lambda) / gamma_abs2(d, lambda))
}

/// Spherical transform of a zonal profile:
/// `sigma_{n-1} int_0^inf f_0(cosh r) Phi_lambda(r) sinh^{n-1} r dr`.
///
/// The profile's declared left exponent at `s = 1` is folded into a
/// Jacobi window at `r = 0`; the tail is truncated through the declared
/// decay, which must satisfy `mu > delta`.
pub fn spherical_transform(f0: &RadialProfile, lambda: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    let d = delta(n);
    if f0.support_end().is_none() {
        let mu = f0
            .tail_mu()
            .ok_or_else(|| Error::Precondition("profile has no tail model".into()))?;
        if !(mu > d) {
            return Err(Error::Precondition(format!(
                "spherical transform diverges: tail mu = {mu} <= delta = {d}"
            )));
        }
    }
    // r-space exponent at 0: (cosh r - 1)^gamma_s sinh^{n-1} r ~ r^{2 gamma_s + n - 1}
    let gamma_r = 2.0 * f0.left_exponent() + nf - 1.0;
    if !(gamma_r > -1.0) {
        return Err(Error::Precondition(format!(
            "profile too singular at s = 1 (r-exponent {gamma_r})"
        )));
    }
    let window = 0.5;
    let head = jacobi_window(64, gamma_r, 0.0, window, |r| {
        if r == 0.0 {
            return 0.0;
        }
        let ch = r.cosh();
        // split off the exact power of r: f0 contributes (cosh r - 1)^g,
        // sinh^{n-1} contributes r^{n-1}
        let smooth_profile = f0.eval_smooth(ch) * ((ch - 1.0) / (r * r)).powf(f0.left_exponent());
        let smooth_sinh = (r.sinh() / r).powf(nf - 1.0);
        smooth_profile * smooth_sinh * spherical_function(lambda, r, n).unwrap_or(0.0)
    })?;
    let integrand = |r: f64| {
        f0.eval(r.cosh()) * spherical_function(lambda, r, n).unwrap_or(0.0) * r.sinh().powf(nf - 1.0)
    };
    let body = match f0.support_end() {
        Some(hi) => {
            let r_max = hi.acosh();
            if r_max <= window {
                0.0
            } else {
                crate::numerics::adaptive::integrate_adaptive(&integrand, window, r_max, 1e-10)?
                    .value
            }
        }
        None => {
            // exponential decay in r at rate mu + delta - (n-1) > 0; the
            // generic power bound with a small exponent is conservative
            integrate_semi_infinite(&integrand, window, 2.0, 1e-10)?.value
        }
    };
    Ok(sigma(n) * (head + body))
}

/// The potential kernel `q_alpha` as a radial profile (normalized by its
/// gamma-factor constant), with the singular structure declared for the
/// quadrature drivers.
pub fn q_alpha_profile(alpha: f64, n: usize) -> RadialProfile {
    let nf = n as f64;
    let zeta = potential_zeta(n, alpha);
    let expo = (alpha - nf) / 2.0;
    RadialProfile::closed(
        1.0,
        move |s: f64| zeta * (s - 1.0).powf(expo) * (s + 1.0).powf(1.0 - nf / 2.0),
        nf - 1.0 - alpha / 2.0,
    )
    .with_left_exponent(expo)
}

/// Fourier transform of a field on H^n at frequency `lambda` in
/// direction `omega`.
///
/// Zonal fields reduce to the spherical transform (direction
/// independent); general fields integrate `f(x) [x, b(omega)]^{i lambda - delta}`
/// in horospherical coordinates (n <= 3).
pub fn fourier_transform(f: &ScalarField, lambda: f64, omega: &[f64]) -> Result<Complex64> {
    let n = f.dim();
    if omega.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: omega.len(),
        });
    }
    if let Some(profile) = f.profile() {
        return Ok(Complex64::new(spherical_transform(profile, lambda, n)?, 0.0));
    }
    if n > 3 {
        return Err(Error::UnsupportedDimension(n, "general Fourier transform"));
    }
    let d = delta(n);
    if f.support_end().is_none() && !(f.decay_mu() > n as f64) {
        return Err(Error::Precondition(
            "Fourier transform needs compact support or integrable decay".into(),
        ));
    }
    let s_max = f
        .support_end()
        .map(|s| s * (1.0 + 1e-12))
        .unwrap_or_else(|| (2e10_f64).min((1e9f64).powf(1.0 / (f.decay_mu() - n as f64 + 1.0))));
    let omega = omega.to_vec();
    let part = |re: bool| {
        let omega = omega.clone();
        integrate_horo_coords(
            &move |x: &HPoint| {
                let b = bracket_point_direction(x, &omega);
                let log_b = b.ln();
                let amp = f.eval(x) * (-d * log_b).exp();
                let phase = lambda * log_b;
                if re {
                    amp * phase.cos()
                } else {
                    amp * phase.sin()
                }
            },
            n,
            s_max,
            1e-9,
        )
    };
    Ok(Complex64::new(part(true)?, part(false)?))
}

/// Multiplicativity check of the spherical transform under hyperbolic
/// convolution: returns `(transform of k * f, product of transforms)`.
pub fn convolution_transform_check(
    k: &RadialProfile,
    f0: &RadialProfile,
    lambda: f64,
    n: usize,
) -> Result<(f64, f64)> {
    let rhs = spherical_transform(k, lambda, n)? * spherical_transform(f0, lambda, n)?;
    // Sample the zonal convolution in t = log s with the leading decay
    // factored out: the compensated samples w(t) = conv(e^t) e^{mu t}
    // vary algebraically, so interpolation stays *relatively* accurate
    // far out, where the transform multiplies by sinh^{n-1} r.
    let f = ScalarField::zonal(n, f0.clone());
    let mu_conv = conv_tail_mu(k, f0, n);
    let compact_end = match (k.support_end(), f0.support_end()) {
        (Some(a), Some(b)) => Some((a.acosh() + b.acosh()).cosh() * (1.0 + 1e-9)),
        _ => None,
    };
    let t_hi = match compact_end {
        Some(s) => s.ln() * 1.02,
        // decay rate of the transform integrand in r is
        // mu_conv + delta - (n - 1); push the grid to where its tail
        // share is ~1e-8
        None => (20.0 / (mu_conv + delta(n) - (n as f64 - 1.0)).max(0.4)).min(60.0),
    };
    let compensated = crate::numerics::curve::SampledCurve::chebyshev(
        0.0,
        t_hi,
        160,
        |t| {
            let x = HPoint::from_polar(t.exp().acosh(), &unit_last(n)).unwrap();
            crate::fields::hyperbolic_convolution(k, &f, &x).unwrap_or(0.0)
                * (mu_conv * t).exp()
        },
        crate::numerics::curve::Tail::PowerLaw { mu: 0.0 },
    );
    let mut conv_profile = RadialProfile::closed(
        1.0,
        move |s: f64| {
            let t = s.max(1.0).ln();
            compensated.eval(t) * (-mu_conv * t).exp()
        },
        mu_conv,
    );
    if let Some(s) = compact_end {
        conv_profile = conv_profile.with_support_end(s);
    }
    let lhs = spherical_transform(&conv_profile, lambda, n)?;
    Ok((lhs, rhs))
}

fn conv_tail_mu(k: &RadialProfile, f0: &RadialProfile, _n: usize) -> f64 {
    let mk = k.tail_mu().unwrap_or(f64::INFINITY);
    let mf = f0.tail_mu().unwrap_or(f64::INFINITY);
    let m = mk.min(mf);
    if m.is_infinite() {
        40.0
    } else {
        m
    }
}

fn unit_last(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[n - 1] = 1.0;
    v
}
