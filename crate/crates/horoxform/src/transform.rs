//! The horospherical transform, its dual and shifted dual, the
//! fractional kernel family interpolating between them, and the
//! log-kernel dual operator.
//!
//! Conventions: a horosphere is the level set `[x, xi] = 1` of a cone
//! point `xi = e^t b(omega)`; the forward transform integrates a field
//! over that set, the dual averages a cone function over the horospheres
//! through a point with the normalized sphere measure.

use crate::constants::{delta, dual_zonal_prefactor, forward_zonal_prefactor, kernel_gamma_alpha, kernel_gamma_log, sigma};
use crate::error::{Error, Result};
use crate::fields::{HoroField, RadialProfile, ScalarField};
use crate::fractional::rl_integral;
use crate::lorentz::{bracket_point_direction, HoroPoint, HPoint, PlaneRotation};
use crate::numerics::adaptive::{integrate_adaptive, integrate_log_singular, integrate_semi_infinite};
use crate::numerics::curve::{SampledCurve, Tail};
use crate::numerics::gauss::{cached_jacobi_pair, jacobi_window};
use crate::numerics::sphere::sphere_quadrature;
use num_complex::Complex64;

/// Forward transform of `f` over the horosphere `xi`.
///
/// Zonal fields reduce to a fractional integral of the radial profile;
/// general fields (n <= 3) integrate over the horosphere in its flat
/// coordinates, truncated through the declared decay or support.
pub fn forward(f: &ScalarField, xi: &HoroPoint, rel_tol: f64) -> Result<f64> {
    let n = f.dim();
    if xi.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: xi.dim(),
        });
    }
    if let Some(profile) = f.profile() {
        return forward_zonal(profile, xi.t(), n);
    }
    if n > 3 {
        return Err(Error::UnsupportedDimension(n, "general forward transform"));
    }
    let d = delta(n);
    if f.support_end().is_none() && !(f.decay_mu() > d) {
        return Err(Error::Precondition(format!(
            "forward transform needs decay mu > (n-1)/2 or compact support (mu = {})",
            f.decay_mu()
        )));
    }
    let t = xi.t();
    let rot = {
        let mut e_n = vec![0.0; n];
        e_n[n - 1] = 1.0;
        PlaneRotation::between(&e_n, xi.omega())
    };
    // the horosphere point at flat coordinate v:
    // k (v, sinh t + |v|^2 e^t / 2, cosh t + |v|^2 e^t / 2)
    let eval_at = |v: &[f64]| -> f64 {
        let half_v2 = 0.5 * v.iter().map(|c| c * c).sum::<f64>() * t.exp();
        let mut c = Vec::with_capacity(n + 1);
        c.extend_from_slice(v);
        c.push(t.sinh() + half_v2);
        c.push(t.cosh() + half_v2);
        rot.apply_spatial(&mut c);
        f.eval(&HPoint::from_components_unchecked(c))
    };
    // height along the horosphere: cosh t + |v|^2 e^t / 2
    let v_cut = f.support_end().map(|s_max| {
        let room = s_max - t.cosh();
        if room <= 0.0 {
            0.0
        } else {
            (2.0 * room * (-t).exp()).sqrt()
        }
    });
    match n {
        2 => {
            let g = |v: f64| eval_at(&[v]);
            match v_cut {
                Some(cut) => {
                    if cut == 0.0 {
                        return Ok(0.0);
                    }
                    Ok(integrate_adaptive(&g, -cut, cut, rel_tol)?.value)
                }
                None => {
                    // |f| = O(height^-mu), height ~ v^2 e^t / 2
                    let mu_v = 2.0 * f.decay_mu();
                    let up = integrate_semi_infinite(&g, 0.0, mu_v, rel_tol)?.value;
                    let down = integrate_semi_infinite(&|v: f64| g(-v), 0.0, mu_v, rel_tol)?.value;
                    Ok(up + down)
                }
            }
        }
        3 => {
            let angles = 32;
            let mut sum = 0.0;
            for j in 0..angles {
                let phi = 2.0 * std::f64::consts::PI * j as f64 / angles as f64;
                let (sp, cp) = phi.sin_cos();
                let g = |r: f64| r * eval_at(&[r * cp, r * sp]);
                let radial = match v_cut {
                    Some(cut) => {
                        if cut == 0.0 {
                            0.0
                        } else {
                            integrate_adaptive(&g, 0.0, cut, rel_tol)?.value
                        }
                    }
                    None => {
                        let mu_v = 2.0 * f.decay_mu() - 1.0;
                        integrate_semi_infinite(&g, 0.0, mu_v, rel_tol)?.value
                    }
                };
                sum += radial;
            }
            Ok(sum * 2.0 * std::f64::consts::PI / angles as f64)
        }
        _ => unreachable!(),
    }
}

/// Zonal forward transform at signed distance `t`:
/// `(2 pi)^{(n-1)/2} e^{-t (n-1)/2} (I^{(n-1)/2}_- f_0)(cosh t)`.
pub fn forward_zonal(f0: &RadialProfile, t: f64, n: usize) -> Result<f64> {
    let d = delta(n);
    let value = rl_integral(f0, d, t.cosh())?;
    Ok(forward_zonal_prefactor(n) * (-d * t).exp() * value)
}

/// Sample the zonal forward transform on a Chebyshev grid in `t` and
/// package it as a zonal cone field (the working representation for the
/// inversion pipelines and composition tests).
pub fn forward_zonal_field(f: &ScalarField, t_max: f64, points: usize) -> Result<HoroField> {
    let n = f.dim();
    let profile = f
        .profile()
        .ok_or_else(|| Error::Unsupported("zonal forward sampling needs a zonal field".into()))?
        .clone();
    let (t_hi, compact) = match f.support_end() {
        Some(s) => (s.acosh() * (1.0 + 1e-9), true),
        None => (t_max, false),
    };
    let curve = SampledCurve::chebyshev(
        -t_hi,
        t_hi,
        points,
        |t| forward_zonal(&profile, t, n).unwrap_or(0.0),
        Tail::Zero,
    );
    // height decay of the transform matches the field's decay exponent
    let mu_phi = f.decay_mu();
    let cone_profile = RadialProfile::log_sampled(curve, Some(mu_phi));
    let cone_profile = if compact {
        cone_profile.with_support((-t_hi).exp(), t_hi.exp())
    } else {
        cone_profile
    };
    Ok(HoroField::zonal(n, cone_profile, mu_phi))
}

/// Dual transform: the average of `phi` over all horospheres through
/// `x`, `int e^{(n-1)<x,w>} phi(e^{<x,w>} b(w)) d_*w`.
pub fn dual(phi: &HoroField, x: &HPoint) -> Result<f64> {
    let n = phi.dim();
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    if let Some(profile) = phi.profile() {
        return dual_zonal(profile, x.height().acosh(), n);
    }
    if n > 3 {
        return Err(Error::UnsupportedDimension(n, "general dual transform"));
    }
    let rule = sphere_quadrature(n, 24)?;
    let nf = n as f64;
    let mut sum = 0.0;
    for (omega, &w) in rule.points.iter().zip(&rule.weights) {
        let log_bracket = -bracket_point_direction(x, omega).ln();
        sum += w * ((nf - 1.0) * log_bracket).exp() * phi.eval_at(log_bracket, omega);
    }
    Ok(sum)
}

/// Zonal dual transform at geodesic radius `r`:
///
/// `c_2 (sinh r)^{2-n} int_{-r}^{r} phi_0(e^s) (cosh r - cosh s)^{(n-3)/2} e^{s(n-1)/2} ds`.
///
/// Both endpoint factors and the kernel kink that cone profiles may
/// declare at `s = 0` are folded into two-sided Jacobi rules on the
/// halves `[-r, 0]` and `[0, r]`.
pub fn dual_zonal(phi0: &RadialProfile, r: f64, n: usize) -> Result<f64> {
    if r < 0.0 {
        return Err(Error::Precondition("radius must be >= 0".into()));
    }
    if r < 1e-12 {
        return Ok(phi0.eval(1.0));
    }
    let nf = n as f64;
    let edge = (nf - 3.0) / 2.0;
    let kink = phi0.one_exponent();
    let m = 16 * ((64.0 + 8.0 * r) / 16.0).ceil() as usize;
    let rule = cached_jacobi_pair(m.min(512), edge, kink);
    let ch = r.cosh();
    // each half [0, r] (s = sign * z) carries the exact weight
    // (r-z)^edge z^kink; the leftover factor below is smooth
    let mut total = 0.0;
    let scale = (r / 2.0).powf(edge + kink + 1.0);
    for sign in [1.0f64, -1.0] {
        let mut half_sum = 0.0;
        for (&xnode, &w) in rule.nodes.iter().zip(&rule.weights) {
            let z = r * (1.0 + xnode) / 2.0;
            let s = sign * z;
            // (cosh r - cosh z)/(r - z), regular as z -> r
            let ratio_edge = if r - z < 1e-13 * r {
                r.sinh()
            } else {
                (ch - z.cosh()) / (r - z)
            };
            // phi0(e^s) / |s|^kink: the declared |u-1|^kink factor turns
            // into |e^s - 1|^kink ~ |s|^kink at s = 0
            let deflated = if kink == 0.0 {
                phi0.eval(s.exp())
            } else {
                phi0.eval(s.exp()) * z.max(1e-300).powf(-kink)
            };
            half_sum += w * deflated * ratio_edge.powf(edge) * (s * (nf - 1.0) / 2.0).exp();
        }
        total += scale * half_sum;
    }
    Ok(dual_zonal_prefactor(n) * r.sinh().powf(2.0 - nf) * total)
}

/// Shifted dual transform: the average of `phi` over the horospheres at
/// distance `|t|` from `x`.
pub fn shifted_dual(phi: &HoroField, x: &HPoint, t: f64) -> Result<f64> {
    let n = phi.dim();
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    let nf = n as f64;
    if let Some(profile) = phi.profile() {
        return shifted_dual_zonal(profile, phi.support(), x.height().acosh(), t, n);
    }
    if n > 3 {
        return Err(Error::UnsupportedDimension(n, "general shifted dual"));
    }
    let rule = sphere_quadrature(n, 24)?;
    let mut sum = 0.0;
    for (omega, &w) in rule.points.iter().zip(&rule.weights) {
        let log_bracket = -bracket_point_direction(x, omega).ln();
        sum += w * ((nf - 1.0) * log_bracket).exp() * phi.eval_at(t + log_bracket, omega);
    }
    Ok(sum)
}

/// Zonal shifted dual in the log-height variable `y` of the horosphere
/// through `x`:
///
/// `(sigma_{n-2}/sigma_{n-1}) sinh^{2-n}(rho) int_{-rho}^{rho}
///  [(e^y - e^{-rho})(e^rho - e^y)]^{(n-3)/2} e^{(2-n)y} phi_0(e^{t-y}) dy`.
///
/// The endpoint factors vanish like `(y ± rho)^{(n-3)/2}`, absorbed by
/// Jacobi windows; compact support of `phi_0` clips the integration to
/// the band of horosphere heights actually hit -- which can be a tiny
/// sliver when `x` is far out, where a fixed angular rule would miss it.
fn shifted_dual_zonal(
    profile: &RadialProfile,
    support: Option<(f64, f64)>,
    rho: f64,
    t: f64,
    n: usize,
) -> Result<f64> {
    let nf = n as f64;
    if rho < 1e-12 {
        return Ok(profile.eval(t.exp()));
    }
    let edge = (nf - 3.0) / 2.0;
    // stable logs of the endpoint factors
    let ln_e1 = |y: f64| y + (-(-(y + rho)).exp()).ln_1p(); // log(e^y - e^{-rho})
    let ln_e2 = |y: f64| rho + (-(y - rho).exp()).ln_1p(); // log(e^rho - e^y)
    let integrand = |y: f64| -> f64 {
        let v = profile.eval((t - y).exp());
        if v == 0.0 {
            return 0.0;
        }
        v * (edge * (ln_e1(y) + ln_e2(y)) + (2.0 - nf) * y).exp()
    };
    // band of y with e^{t-y} inside the support
    let (band_lo, band_hi) = match support {
        Some((lo, hi)) => (
            (t - hi.ln()).max(-rho),
            (t - lo.max(1e-300).ln()).min(rho),
        ),
        None => (-rho, rho),
    };
    if band_hi <= band_lo {
        return Ok(0.0);
    }
    let w = 1.0f64.min(0.25 * rho);
    let mut total = 0.0;
    // left endpoint window, weight (y + rho)^edge
    if band_lo < -rho + w {
        let expm1_over = |z: f64| if z < 1e-12 { 1.0 } else { z.exp_m1() / z };
        total += jacobi_window(64, edge, -rho, w, |y| {
            let v = profile.eval((t - y).exp());
            if v == 0.0 || y > band_hi {
                0.0
            } else {
                let ln_a = -rho + expm1_over(y + rho).ln(); // (e^y - e^{-rho})/(y+rho)
                v * (edge * (ln_a + ln_e2(y)) + (2.0 - nf) * y).exp()
            }
        })?;
    }
    // right endpoint window, weight (rho - y)^edge
    if band_hi > rho - w {
        let expm1_over = |z: f64| if z < 1e-12 { 1.0 } else { z.exp_m1() / z };
        total += jacobi_window(64, edge, 0.0, w, |z| {
            let y = rho - z;
            let v = profile.eval((t - y).exp());
            if v == 0.0 || y < band_lo {
                0.0
            } else {
                let ln_b = y + expm1_over(z).ln(); // (e^rho - e^y)/(rho - y)
                v * (edge * (ln_e1(y) + ln_b) + (2.0 - nf) * y).exp()
            }
        })?;
    }
    // middle
    let mid_lo = band_lo.max(-rho + w);
    let mid_hi = band_hi.min(rho - w);
    if mid_hi > mid_lo {
        total += integrate_adaptive(&integrand, mid_lo, mid_hi, 1e-10)?.value;
    }
    Ok(sigma(n - 1) / sigma(n) * rho.sinh().powf(2.0 - nf) * total)
}

/// Which of the two power normalizations of the fractional kernel family
/// to use (they compose identically with the forward transform).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelVariant {
    First,
    Second,
}

/// Power kernel of the fractional transform family:
/// `h(z) = gamma_alpha |z-1|^{alpha-1} z^{-(n+alpha-1)/2}` (variant 1) or
/// exponent `-(n+alpha-3)/2` (variant 2). Odd integer `alpha` is
/// excluded (poles of the normalizer).
#[derive(Debug, Clone, Copy)]
pub struct SemyanistyiKernel {
    pub alpha: f64,
    pub variant: KernelVariant,
    pub n: usize,
    pub gamma_alpha: f64,
}

impl SemyanistyiKernel {
    pub fn new(alpha: f64, variant: KernelVariant, n: usize) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Precondition(format!(
                "kernel order must be positive, got {alpha}"
            )));
        }
        let near_odd = (alpha - 1.0) / 2.0;
        if (near_odd - near_odd.round()).abs() < 1e-9 && near_odd >= -1e-9 {
            return Err(Error::Precondition(format!(
                "kernel order alpha = {alpha} hits a pole (odd integers excluded)"
            )));
        }
        let gamma_alpha = kernel_gamma_alpha(alpha, n);
        if !gamma_alpha.is_finite() {
            return Err(Error::Precondition(format!(
                "kernel normalizer is not finite at alpha = {alpha}"
            )));
        }
        Ok(SemyanistyiKernel {
            alpha,
            variant,
            n,
            gamma_alpha,
        })
    }

    /// Kernel value `h_{alpha,i}(z)`, `z > 0`.
    pub fn eval(&self, z: f64) -> f64 {
        self.gamma_alpha * (z - 1.0).abs().powf(self.alpha - 1.0) * z.powf(-self.power_exponent())
    }

    /// Exponent of the `z` power in the kernel.
    pub fn power_exponent(&self) -> f64 {
        let nf = self.n as f64;
        match self.variant {
            KernelVariant::First => (nf + self.alpha - 1.0) / 2.0,
            KernelVariant::Second => (nf + self.alpha - 3.0) / 2.0,
        }
    }
}

/// `int_R g(tau) dtau` where `g` carries a `|tau - at|^{gamma}` power
/// factor (or a log factor) at one interior point: the window around the
/// singular point is handled by one-sided Jacobi rules / the log
/// substitution; outside, either hard truncation or outward panel
/// extension driven by the sampled magnitude of `g`.
pub(crate) enum LineSingularity {
    None,
    Power { at: f64, exponent: f64 },
    Log { at: f64 },
}

/// How far the line integral runs.
pub(crate) enum LineBounds {
    /// The integrand vanishes outside `[lo, hi]`.
    Hard(f64, f64),
    /// Decaying integrand centered near the given coordinate; extend
    /// outward until sampled magnitudes fade.
    Decay(f64),
}

pub(crate) fn integrate_line<F: Fn(f64) -> f64 + Copy>(
    g: F,
    sing: LineSingularity,
    bounds: LineBounds,
    rel_tol: f64,
) -> Result<f64> {
    // resolve the singular window first; what remains is smooth
    let mut total = 0.0;
    let (core_lo, core_hi, center) = match bounds {
        LineBounds::Hard(lo, hi) => {
            if !(hi > lo) {
                return Ok(0.0);
            }
            (lo, hi, 0.5 * (lo + hi))
        }
        LineBounds::Decay(c) => (c, c, c),
    };
    let hard = matches!(bounds, LineBounds::Hard(..));

    // window half-width and the windowed contribution around the
    // singular point (when it is inside the integration range)
    let mut left_edge = core_lo;
    #[allow(unused_assignments)]
    let mut right_edge = core_lo;
    match sing {
        LineSingularity::None => {
            right_edge = left_edge;
        }
        LineSingularity::Log { at } => {
            if !hard || (at > core_lo && at < core_hi) {
                let w = if hard {
                    0.5f64.min((core_hi - core_lo) * 0.2)
                } else {
                    0.5
                };
                let lo_w = if hard { (at - w).max(core_lo) } else { at - w };
                let hi_w = if hard { (at + w).min(core_hi) } else { at + w };
                total += integrate_log_singular(g, lo_w, hi_w, at, w, rel_tol)?.value;
                left_edge = lo_w;
                right_edge = hi_w;
            } else {
                right_edge = left_edge;
            }
        }
        LineSingularity::Power { at, exponent } => {
            if exponent != 0.0 && (!hard || (at > core_lo && at < core_hi)) {
                let w = if hard {
                    0.5f64
                        .min((core_hi - core_lo) * 0.2)
                        .min(at - core_lo)
                        .min(core_hi - at)
                } else {
                    0.5
                };
                // |tau - at|^exponent absorbed by one-sided rules
                let smooth = |u: f64, side: f64| {
                    if u == 0.0 {
                        0.0
                    } else {
                        g(at + side * u) * u.powf(-exponent)
                    }
                };
                total += jacobi_window(48, exponent, 0.0, w, |u| smooth(u, 1.0))?;
                total += jacobi_window(48, exponent, 0.0, w, |u| smooth(u, -1.0))?;
                left_edge = at - w;
                right_edge = at + w;
            } else {
                right_edge = left_edge;
            }
        }
    }
    if hard {
        if left_edge == right_edge {
            // no window taken: plain adaptive over the whole range
            total += integrate_adaptive(g, core_lo, core_hi, rel_tol)?.value;
        } else {
            if core_lo < left_edge {
                total += integrate_adaptive(g, core_lo, left_edge, rel_tol)?.value;
            }
            if right_edge < core_hi {
                total += integrate_adaptive(g, right_edge, core_hi, rel_tol)?.value;
            }
        }
        return Ok(total);
    }
    // decaying case: outward panel extension on both sides; the
    // magnitude-driven stop rule inherits from the semi-infinite driver
    let (a, b) = if left_edge == right_edge {
        (center, center)
    } else {
        (left_edge, right_edge)
    };
    total += integrate_semi_infinite(|u| g(b + u), 0.0, 2.0, rel_tol)?.value;
    total += integrate_semi_infinite(|u| g(a - u), 0.0, 2.0, rel_tol)?.value;
    Ok(total)
}

/// Truncation for integrals against a cone field: hard bounds for
/// compact support (with a safety margin), magnitude-driven extension
/// otherwise.
fn line_bounds(phi: &HoroField, center: f64, margin: f64) -> LineBounds {
    match phi.support() {
        Some((lo, hi)) => {
            let t_lo = lo.max(1e-300).ln();
            let t_hi = hi.ln();
            LineBounds::Hard(t_lo - margin, t_hi + margin)
        }
        None => LineBounds::Decay(center),
    }
}

/// Kernel-weighted forward transform,
/// `int_R (H_w f)(t) h(e^{s-t}) e^{(1-n)t} dt` at `xi = e^s b(w)`.
pub fn semyanistyi_forward(
    f: &ScalarField,
    xi: &HoroPoint,
    kernel: &SemyanistyiKernel,
) -> Result<f64> {
    let n = f.dim();
    let nf = n as f64;
    let s = xi.t();
    let omega = xi.omega().to_vec();
    let line = |t: f64| -> f64 {
        let value = if let Some(profile) = f.profile() {
            forward_zonal(profile, t, n).unwrap_or(0.0)
        } else {
            let xi_t = HoroPoint::new(t, &omega).expect("unit direction");
            forward(f, &xi_t, 1e-9).unwrap_or(0.0)
        };
        value * kernel.eval((s - t).exp()) * ((1.0 - nf) * t).exp()
    };
    let bounds = match f.support_end() {
        Some(b) => {
            let t_max = b.acosh();
            LineBounds::Hard(-t_max - 1e-9, t_max + 1e-9)
        }
        None => LineBounds::Decay(s),
    };
    integrate_line(
        line,
        LineSingularity::Power {
            at: s,
            exponent: kernel.alpha - 1.0,
        },
        bounds,
        1e-9,
    )
}

/// Kernel-weighted dual transform,
/// `int_R (H*_s phi)(x) h(e^s) e^{(n-1)s} ds`.
pub fn semyanistyi_dual(phi: &HoroField, x: &HPoint, kernel: &SemyanistyiKernel) -> Result<f64> {
    let n = phi.dim();
    let nf = n as f64;
    let line = |s: f64| -> f64 {
        shifted_dual(phi, x, s).unwrap_or(0.0) * kernel.eval(s.exp()) * ((nf - 1.0) * s).exp()
    };
    let rho = x.height().acosh();
    let bounds = line_bounds(phi, 0.0, rho + 0.5);
    integrate_line(
        line,
        LineSingularity::Power {
            at: 0.0,
            exponent: kernel.alpha - 1.0,
        },
        bounds,
        1e-9,
    )
}

/// Log-kernel dual operator:
/// `gamma'_n int (H*_s phi)(x) [log|e^s - 1| - s/2] e^{s(n-2)/2} ds`.
pub fn dual_log(phi: &HoroField, x: &HPoint) -> Result<f64> {
    let n = phi.dim();
    let nf = n as f64;
    let gamma_log = kernel_gamma_log(n);
    let line = |s: f64| -> f64 {
        let log_factor = (s.exp() - 1.0).abs().max(1e-300).ln() - 0.5 * s;
        shifted_dual(phi, x, s).unwrap_or(0.0) * log_factor * (s * (nf - 2.0) / 2.0).exp()
    };
    let rho = x.height().acosh();
    let bounds = line_bounds(phi, 0.0, rho + 0.5);
    let value = integrate_line(line, LineSingularity::Log { at: 0.0 }, bounds, 1e-9)?;
    Ok(gamma_log * value)
}

/// Both sides of the slice identity: the Fourier transform of `f` at
/// `(lambda, omega)` against `int_R e^{-t(i lambda - delta)} (H_w f)(t) dt`.
pub fn fourier_slice_check(
    f: &ScalarField,
    lambda: f64,
    omega: &[f64],
) -> Result<(Complex64, Complex64)> {
    let n = f.dim();
    let d = delta(n);
    let lhs = crate::harmonic::fourier_transform(f, lambda, omega)?;
    let omega_v = omega.to_vec();
    let transform_at = |t: f64| -> f64 {
        if let Some(profile) = f.profile() {
            forward_zonal(profile, t, n).unwrap_or(0.0)
        } else {
            let xi_t = HoroPoint::new(t, &omega_v).expect("unit direction");
            forward(f, &xi_t, 1e-9).unwrap_or(0.0)
        }
    };
    let bounds = match f.support_end() {
        Some(b) => {
            let t_max = b.acosh();
            LineBounds::Hard(-t_max - 1e-9, t_max + 1e-9)
        }
        None => LineBounds::Decay(0.0),
    };
    let rebound = || match f.support_end() {
        Some(b) => {
            let t_max = b.acosh();
            LineBounds::Hard(-t_max - 1e-9, t_max + 1e-9)
        }
        None => LineBounds::Decay(0.0),
    };
    let re = integrate_line(
        |t| (d * t).exp() * (lambda * t).cos() * transform_at(t),
        LineSingularity::None,
        bounds,
        1e-10,
    )?;
    let im = integrate_line(
        |t| -(d * t).exp() * (lambda * t).sin() * transform_at(t),
        LineSingularity::None,
        rebound(),
        1e-10,
    )?;
    Ok((lhs, Complex64::new(re, im)))
}
