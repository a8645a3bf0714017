//! Function representations on H^n and on the upper light cone, invariant
//! integration, spherical means, and hyperbolic convolution.

use crate::constants::sigma;
use crate::error::{Error, Result};
use crate::lorentz::{boost_last_plane, HoroCoords, HoroPoint, HPoint, PlaneRotation};
use crate::numerics::adaptive::{integrate_adaptive, integrate_semi_infinite};
use crate::numerics::curve::{SampledCurve, Tail};
use crate::numerics::gauss::{gauss_gegenbauer, jacobi_window};
use crate::numerics::sphere::sphere_quadrature;
use std::path::Path;
use std::sync::Arc;

/// Default node count for the fixed one-dimensional rules used by zonal
/// fast paths.
const ZONAL_RULE_POINTS: usize = 48;

type Evaluator1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum ProfileForm {
    Closed(Evaluator1),
    /// Samples in the profile variable itself.
    Sampled(SampledCurve),
    /// Samples in t = log(s); natural for cone profiles.
    LogSampled(SampledCurve),
}

/// A one-variable radial representative: `f_0(s)` on `[start, inf)` with
/// declared singular structure and decay.
///
/// Carries everything quadrature drivers need: the power of
/// `(s - start)` at the left end, the power of `|s - 1|` at the interior
/// point `s = 1` (cone profiles start at 0 and may have a kernel kink
/// there), a decay exponent at infinity, and optional support bounds.
#[derive(Clone)]
pub struct RadialProfile {
    form: ProfileForm,
    domain_start: f64,
    left_exponent: f64,
    one_exponent: f64,
    tail_mu: Option<f64>,
    support_start: Option<f64>,
    support_end: Option<f64>,
}

impl std::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialProfile")
            .field("domain_start", &self.domain_start)
            .field("left_exponent", &self.left_exponent)
            .field("tail_mu", &self.tail_mu)
            .field("support", &(self.support_start, self.support_end))
            .finish()
    }
}

impl RadialProfile {
    /// Closed-form profile on `[domain_start, inf)` with decay exponent
    /// `tail_mu` (`f64::INFINITY` for faster-than-any-power decay).
    pub fn closed<F: Fn(f64) -> f64 + Send + Sync + 'static>(
        domain_start: f64,
        f: F,
        tail_mu: f64,
    ) -> Self {
        RadialProfile {
            form: ProfileForm::Closed(Arc::new(f)),
            domain_start,
            left_exponent: 0.0,
            one_exponent: 0.0,
            tail_mu: Some(tail_mu),
            support_start: None,
            support_end: None,
        }
    }

    /// Sampled profile; domain start, interpolation, and tail model come
    /// from the curve.
    pub fn from_curve(curve: SampledCurve) -> Self {
        let tail_mu = curve.tail_mu();
        RadialProfile {
            domain_start: curve.start(),
            form: ProfileForm::Sampled(curve),
            left_exponent: 0.0,
            one_exponent: 0.0,
            tail_mu,
            support_start: None,
            support_end: None,
        }
    }

    /// Cone profile sampled in `t = log s` (domain `(0, inf)` in `s`).
    pub fn log_sampled(curve: SampledCurve, tail_mu: Option<f64>) -> Self {
        RadialProfile {
            form: ProfileForm::LogSampled(curve),
            domain_start: 0.0,
            left_exponent: 0.0,
            one_exponent: 0.0,
            tail_mu,
            support_start: None,
            support_end: None,
        }
    }

    /// Hyperboloid profile sampled in `t = log s` on `[0, T]` (domain
    /// `[1, inf)` in `s`); the log grid keeps slowly decaying profiles
    /// resolvable far out.
    pub fn log_sampled_hn(curve: SampledCurve, tail_mu: Option<f64>) -> Self {
        RadialProfile {
            form: ProfileForm::LogSampled(curve),
            domain_start: 1.0,
            left_exponent: 0.0,
            one_exponent: 0.0,
            tail_mu,
            support_start: None,
            support_end: None,
        }
    }

    pub fn with_left_exponent(mut self, gamma: f64) -> Self {
        self.left_exponent = gamma;
        self
    }

    pub fn with_one_exponent(mut self, gamma: f64) -> Self {
        self.one_exponent = gamma;
        self
    }

    pub fn with_support_end(mut self, s: f64) -> Self {
        self.support_end = Some(s);
        self
    }

    pub fn with_support(mut self, lo: f64, hi: f64) -> Self {
        self.support_start = Some(lo);
        self.support_end = Some(hi);
        self
    }

    pub fn domain_start(&self) -> f64 {
        self.domain_start
    }

    /// Power of `(s - domain_start)` at the left end of the domain.
    pub fn left_exponent(&self) -> f64 {
        self.left_exponent
    }

    /// Power of `|s - 1|` at the interior point `s = 1` (cone profiles).
    pub fn one_exponent(&self) -> f64 {
        self.one_exponent
    }

    /// Declared decay exponent at infinity, if any. Compact support
    /// counts as infinitely fast decay.
    pub fn tail_mu(&self) -> Option<f64> {
        if self.support_end.is_some() {
            Some(f64::INFINITY)
        } else {
            self.tail_mu
        }
    }

    pub fn support_end(&self) -> Option<f64> {
        self.support_end
    }

    pub fn support_start(&self) -> Option<f64> {
        self.support_start
    }

    pub fn eval(&self, s: f64) -> f64 {
        if let Some(hi) = self.support_end {
            if s > hi {
                return 0.0;
            }
        }
        if let Some(lo) = self.support_start {
            if s < lo {
                return 0.0;
            }
        }
        match &self.form {
            ProfileForm::Closed(f) => f(s),
            ProfileForm::Sampled(c) => c.eval(s),
            ProfileForm::LogSampled(c) => {
                if s <= 0.0 {
                    return 0.0;
                }
                let t = s.ln();
                if t > c.end() {
                    match self.tail_mu {
                        Some(mu) if mu.is_finite() => {
                            let u_end = c.end().exp();
                            c.eval(c.end()) * (s / u_end).powf(-mu)
                        }
                        _ => 0.0,
                    }
                } else {
                    c.eval(t)
                }
            }
        }
    }

    /// `eval(s) / (s - domain_start)^left_exponent`: the smooth factor
    /// used by endpoint-weighted quadrature.
    pub fn eval_smooth(&self, s: f64) -> f64 {
        if self.left_exponent == 0.0 {
            return self.eval(s);
        }
        self.eval(s) * (s - self.domain_start).powf(-self.left_exponent)
    }

    /// The sampled curve behind this profile, when there is one.
    pub fn curve(&self) -> Option<&SampledCurve> {
        match &self.form {
            ProfileForm::Sampled(c) | ProfileForm::LogSampled(c) => Some(c),
            ProfileForm::Closed(_) => None,
        }
    }

    /// Load a sampled profile from a `s,value` CSV plus its JSON sidecar
    /// (`{"tail_mu": <real>, "support_bound": <real|null>}`).
    pub fn load_csv(csv_path: &Path, sidecar_path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(csv_path)?;
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim() == "s,value" => {}
            other => {
                return Err(Error::InvalidInput(format!(
                    "profile CSV must start with header 's,value', got {other:?}"
                )))
            }
        }
        let mut grid = Vec::new();
        let mut values = Vec::new();
        for (k, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let (s, v) = match (parts.next(), parts.next(), parts.next()) {
                (Some(s), Some(v), None) => (s, v),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "profile CSV line {} is not 's,value'",
                        k + 2
                    )))
                }
            };
            let s: f64 = s
                .trim()
                .parse()
                .map_err(|e| Error::InvalidInput(format!("bad s on CSV line {}: {e}", k + 2)))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|e| Error::InvalidInput(format!("bad value on CSV line {}: {e}", k + 2)))?;
            grid.push(s);
            values.push(v);
        }
        if grid.is_empty() || (grid[0] - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(
                "profile grid must start at s = 1.0".into(),
            ));
        }
        let sidecar: ProfileSidecar =
            serde_json::from_str(&std::fs::read_to_string(sidecar_path)?)?;
        let tail = if sidecar.support_bound.is_some() {
            Tail::Zero
        } else {
            Tail::PowerLaw {
                mu: sidecar.tail_mu,
            }
        };
        let curve = SampledCurve::from_points(grid, values, tail)?;
        let mut profile = RadialProfile::from_curve(curve);
        profile.tail_mu = Some(sidecar.tail_mu);
        if let Some(b) = sidecar.support_bound {
            profile.support_end = Some(b);
        }
        Ok(profile)
    }

    /// Write a sampled profile as CSV + sidecar. Closed forms must be
    /// sampled first.
    pub fn save_csv(&self, csv_path: &Path, sidecar_path: &Path) -> Result<()> {
        if matches!(self.form, ProfileForm::LogSampled(_)) {
            return Err(Error::Unsupported(
                "log-sampled cone profiles have no CSV representation".into(),
            ));
        }
        let curve = self.curve().ok_or_else(|| {
            Error::Unsupported("only sampled profiles can be written to CSV".into())
        })?;
        let mut out = String::from("s,value\n");
        for (s, v) in curve.grid().iter().zip(curve.values()) {
            out.push_str(&format!("{s:.17e},{v:.17e}\n"));
        }
        std::fs::write(csv_path, out)?;
        let sidecar = ProfileSidecar {
            tail_mu: self.tail_mu.unwrap_or(f64::INFINITY),
            support_bound: self.support_end,
        };
        std::fs::write(sidecar_path, serde_json::to_string_pretty(&sidecar)?)?;
        Ok(())
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct ProfileSidecar {
    tail_mu: f64,
    support_bound: Option<f64>,
}

type PointEvaluator = Arc<dyn Fn(&HPoint) -> f64 + Send + Sync>;
type ConeEvaluator = Arc<dyn Fn(&HoroPoint) -> f64 + Send + Sync>;

#[derive(Clone)]
enum ScalarKind {
    Zonal(RadialProfile),
    General(PointEvaluator),
}

/// An evaluable function on H^n with the metadata quadrature needs:
/// zonal flag, decay exponent, and support bound in `s = x_{n+1}`.
#[derive(Clone)]
pub struct ScalarField {
    n: usize,
    kind: ScalarKind,
    decay_mu: f64,
    support_end: Option<f64>,
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField")
            .field("n", &self.n)
            .field("zonal", &self.is_zonal())
            .field("decay_mu", &self.decay_mu)
            .field("support_end", &self.support_end)
            .finish()
    }
}

impl ScalarField {
    /// Zonal field `f(x) = f_0(x_{n+1})`; decay and support come from the
    /// profile.
    pub fn zonal(n: usize, profile: RadialProfile) -> Self {
        let decay_mu = profile.tail_mu().unwrap_or(0.0);
        let support_end = profile.support_end();
        ScalarField {
            n,
            kind: ScalarKind::Zonal(profile),
            decay_mu,
            support_end,
        }
    }

    /// General field from a point evaluator with declared decay.
    pub fn general<F: Fn(&HPoint) -> f64 + Send + Sync + 'static>(
        n: usize,
        f: F,
        decay_mu: f64,
        support_end: Option<f64>,
    ) -> Self {
        ScalarField {
            n,
            kind: ScalarKind::General(Arc::new(f)),
            decay_mu,
            support_end,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zonal(&self) -> bool {
        matches!(self.kind, ScalarKind::Zonal(_))
    }

    pub fn profile(&self) -> Option<&RadialProfile> {
        match &self.kind {
            ScalarKind::Zonal(p) => Some(p),
            ScalarKind::General(_) => None,
        }
    }

    /// Declared decay exponent: `f = O(x_{n+1}^{-mu})`.
    pub fn decay_mu(&self) -> f64 {
        self.decay_mu
    }

    pub fn support_end(&self) -> Option<f64> {
        self.support_end
    }

    pub fn eval(&self, x: &HPoint) -> f64 {
        debug_assert_eq!(x.dim(), self.n);
        match &self.kind {
            ScalarKind::Zonal(p) => p.eval(x.height()),
            ScalarKind::General(f) => f(x),
        }
    }
}

#[derive(Clone)]
enum HoroKind {
    Zonal(RadialProfile),
    General(ConeEvaluator),
}

/// An evaluable function on the upper light cone with zonal flag, decay
/// exponent in `u = xi_{n+1}`, and optional support `[u_lo, u_hi]`.
#[derive(Clone)]
pub struct HoroField {
    n: usize,
    kind: HoroKind,
    decay_mu: f64,
    support: Option<(f64, f64)>,
}

impl std::fmt::Debug for HoroField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HoroField")
            .field("n", &self.n)
            .field("zonal", &self.is_zonal())
            .field("decay_mu", &self.decay_mu)
            .field("support", &self.support)
            .finish()
    }
}

impl HoroField {
    /// Zonal cone field `phi(xi) = phi_0(xi_{n+1})` with decay exponent
    /// `decay_mu` in the height coordinate.
    pub fn zonal(n: usize, profile: RadialProfile, decay_mu: f64) -> Self {
        let support = match (profile.support_start(), profile.support_end()) {
            (Some(lo), Some(hi)) => Some((lo, hi)),
            (None, Some(hi)) => Some((0.0, hi)),
            _ => None,
        };
        HoroField {
            n,
            kind: HoroKind::Zonal(profile),
            decay_mu,
            support,
        }
    }

    pub fn general<F: Fn(&HoroPoint) -> f64 + Send + Sync + 'static>(
        n: usize,
        f: F,
        decay_mu: f64,
        support: Option<(f64, f64)>,
    ) -> Self {
        HoroField {
            n,
            kind: HoroKind::General(Arc::new(f)),
            decay_mu,
            support,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zonal(&self) -> bool {
        matches!(self.kind, HoroKind::Zonal(_))
    }

    pub fn profile(&self) -> Option<&RadialProfile> {
        match &self.kind {
            HoroKind::Zonal(p) => Some(p),
            HoroKind::General(_) => None,
        }
    }

    pub fn decay_mu(&self) -> f64 {
        self.decay_mu
    }

    /// Support bounds in `u = xi_{n+1}`, if declared.
    pub fn support(&self) -> Option<(f64, f64)> {
        self.support
    }

    pub fn eval(&self, xi: &HoroPoint) -> f64 {
        debug_assert_eq!(xi.dim(), self.n);
        match &self.kind {
            HoroKind::Zonal(p) => p.eval(xi.height()),
            HoroKind::General(f) => f(xi),
        }
    }

    /// Evaluate at the cone point `e^t b(omega)` without building a
    /// `HoroPoint` on the zonal path (hot loop of the dual transforms).
    pub fn eval_at(&self, t: f64, omega: &[f64]) -> f64 {
        match &self.kind {
            HoroKind::Zonal(p) => p.eval(t.exp()),
            HoroKind::General(f) => {
                let xi = HoroPoint::new(t, omega).expect("direction already validated");
                f(&xi)
            }
        }
    }
}

/// The isometry `omega_x = R a_rho` taking the origin to `x` (boost in
/// the `(e_n, e_{n+1})` plane followed by the rotation aligning `e_n`
/// with the spatial direction of `x`).
pub(crate) struct CanonicalFrame {
    rho: f64,
    rotation: Option<PlaneRotation>,
    n: usize,
}

impl CanonicalFrame {
    pub fn new(x: &HPoint) -> Self {
        let n = x.dim();
        let rho = x.height().acosh();
        let spatial = x.vec().spatial();
        let norm: f64 = spatial.iter().map(|c| c * c).sum::<f64>().sqrt();
        let rotation = if norm > 1e-14 {
            let dir: Vec<f64> = spatial.iter().map(|&c| c / norm).collect();
            let mut e_n = vec![0.0; n];
            e_n[n - 1] = 1.0;
            Some(PlaneRotation::between(&e_n, &dir))
        } else {
            None
        };
        CanonicalFrame { rho, rotation, n }
    }

    /// Apply to ambient components in place.
    pub fn apply(&self, c: &mut [f64]) {
        debug_assert_eq!(c.len(), self.n + 1);
        boost_last_plane(c, self.rho);
        if let Some(rot) = &self.rotation {
            rot.apply_spatial(c);
        }
    }
}

/// Spherical mean `(M_x f)(s)`: the average of `f` over the geodesic
/// sphere `{y : [x, y] = s}` about `x`.
///
/// Zonal fields reduce to a one-dimensional Gegenbauer quadrature in the
/// polar angle; general fields (n <= 3) average over a product sphere
/// rule transported to `x` by the canonical frame.
pub fn spherical_mean(f: &ScalarField, x: &HPoint, s: f64) -> Result<f64> {
    if s < 1.0 {
        return Err(Error::Precondition(format!(
            "spherical mean needs s >= 1, got {s}"
        )));
    }
    let n = f.dim();
    if s == 1.0 {
        return Ok(f.eval(x));
    }
    if let Some(profile) = f.profile() {
        // f_0(cosh(rho) s + sinh(rho) sqrt(s^2-1) cos(theta)) against the
        // normalized (sin theta)^{n-2} weight
        let ch = x.height();
        let sh = (ch * ch - 1.0).max(0.0).sqrt();
        let root = (s * s - 1.0).max(0.0).sqrt();
        let spread = sh * root;
        // the sphere's height range is [cosh(rho - r), cosh(rho + r)]
        let rho = ch.acosh();
        let r_s = s.acosh();
        let arg_min = (rho - r_s).cosh();
        if let Some(b) = f.support_end() {
            if arg_min >= b {
                return Ok(0.0); // the sphere misses the support
            }
            // compactly supported profiles can occupy a sliver of the
            // angle near the pole; integrate just that band, anchored at
            // the cancellation-free minimum height
            if spread > 1e-9 && (rho + r_s).cosh() > b {
                let half = (((b - arg_min) / (2.0 * spread)).sqrt().min(1.0)).asin();
                let eps_hi = 2.0 * half;
                let p = n as i32 - 2;
                // the band integrand is smooth and vanishes at the band
                // edge, so one fixed rule suffices
                let rule = crate::numerics::gauss::gauss_legendre_arc(64);
                let integral = crate::numerics::gauss::apply_on(&rule, 0.0, eps_hi, |eps| {
                    let half_sin = (0.5 * eps).sin();
                    let arg = arg_min + 2.0 * spread * half_sin * half_sin;
                    eps.sin().powi(p) * profile.eval(arg)
                });
                // normalizer: int_0^pi sin^{n-2} = sigma_{n-1}/sigma_{n-2}
                return Ok(integral * sigma(n - 1) / sigma(n));
            }
        }
        let gamma = (n as f64 - 3.0) / 2.0;
        let rule = gauss_gegenbauer(ZONAL_RULE_POINTS, gamma)?;
        let total: f64 = rule.weights.iter().sum();
        let mean = rule.apply(|u| profile.eval(ch * s + sh * root * u)) / total;
        return Ok(mean);
    }
    if n > 3 {
        return Err(Error::UnsupportedDimension(
            n,
            "general (non-zonal) spherical mean",
        ));
    }
    let frame = CanonicalFrame::new(x);
    let rule = sphere_quadrature(n, 24)?;
    let root = (s * s - 1.0).sqrt();
    let mut sum = 0.0;
    for (theta, &w) in rule.points.iter().zip(&rule.weights) {
        let mut c: Vec<f64> = theta.iter().map(|&t| t * root).collect();
        c.push(s);
        frame.apply(&mut c);
        sum += w * f.eval(&HPoint::from_components_unchecked(c));
    }
    Ok(sum)
}

/// Effective integration cutoff in `s` for a field with declared decay.
fn effective_radius(decay_mu: f64, support_end: Option<f64>, n: usize, rel_tol: f64) -> f64 {
    if let Some(s) = support_end {
        return s * (1.0 + 1e-12);
    }
    if decay_mu.is_infinite() {
        return 6f64.cosh();
    }
    let excess = decay_mu - n as f64;
    let from_tol = if excess > 0.2 {
        (2.0 / rel_tol).powf(1.0 / excess)
    } else {
        f64::INFINITY
    };
    from_tol.clamp(5f64.cosh(), 1e8)
}

/// Invariant integral over H^n.
///
/// Zonal path: `sigma_{n-1} int_1^inf f_0(s) (s^2-1)^{n/2-1} ds`; general
/// path (n <= 3): horospherical coordinates with the invariant density
/// `e^{(1-n)t} dt dv`.
pub fn integrate_hn(f: &ScalarField, rel_tol: f64) -> Result<f64> {
    let n = f.dim();
    let nf = n as f64;
    if f.support_end().is_none() && !(f.decay_mu() > nf) {
        return Err(Error::Precondition(format!(
            "integral over H^n needs decay mu > n or compact support (mu = {}, n = {n})",
            f.decay_mu()
        )));
    }
    if let Some(profile) = f.profile() {
        return integrate_hn_zonal(profile, n, rel_tol);
    }
    if n > 3 {
        return Err(Error::UnsupportedDimension(n, "general H^n integration"));
    }
    let s_max = effective_radius(f.decay_mu(), f.support_end(), n, rel_tol);
    integrate_horo_coords(&|x| f.eval(x), n, s_max, rel_tol)
}

pub(crate) fn integrate_hn_zonal(profile: &RadialProfile, n: usize, rel_tol: f64) -> Result<f64> {
    let nf = n as f64;
    let gamma_total = profile.left_exponent() + nf / 2.0 - 1.0;
    if !(gamma_total > -1.0) {
        return Err(Error::Precondition(format!(
            "radial profile too singular at s = 1 (combined exponent {gamma_total})"
        )));
    }
    let window = 0.25;
    let head = jacobi_window(ZONAL_RULE_POINTS, gamma_total, 1.0, window, |s| {
        profile.eval_smooth(s) * (s + 1.0).powf(nf / 2.0 - 1.0)
    })?;
    let integrand = |s: f64| profile.eval(s) * (s * s - 1.0).powf(nf / 2.0 - 1.0);
    let body = match profile.support_end() {
        Some(hi) if hi.is_finite() => {
            if hi <= 1.0 + window {
                0.0
            } else {
                integrate_adaptive(&integrand, 1.0 + window, hi, rel_tol)?.value
            }
        }
        _ => {
            let mu = profile
                .tail_mu()
                .ok_or_else(|| Error::Precondition("profile has no tail model".into()))?;
            let mu_eff = if mu.is_infinite() { 1e6 } else { mu - (nf - 2.0) };
            integrate_semi_infinite(&integrand, 1.0 + window, mu_eff, rel_tol)?.value
        }
    };
    Ok(sigma(n) * (head + body))
}

/// Integral over H^n in horospherical coordinates (general fields,
/// n <= 3) truncated at height `s_max`.
pub(crate) fn integrate_horo_coords(
    f: &dyn Fn(&HPoint) -> f64,
    n: usize,
    s_max: f64,
    rel_tol: f64,
) -> Result<f64> {
    let t_max = s_max.acosh();
    let inner_tol = rel_tol * 0.25;
    let point = |v: &[f64], t: f64| HPoint::from_horospherical(&HoroCoords::new(v.to_vec(), t));
    let inner = |t: f64| -> f64 {
        let ch = t.cosh();
        if ch >= s_max {
            return 0.0;
        }
        let v_max = (2.0 * t.exp() * (s_max - ch)).sqrt();
        match n {
            2 => integrate_adaptive(|v| f(&point(&[v], t)), -v_max, v_max, inner_tol)
                .map(|i| i.value)
                .unwrap_or(0.0),
            3 => {
                // polar coordinates in the v-plane
                let angles = 24;
                let mut sum = 0.0;
                for j in 0..angles {
                    let phi = 2.0 * std::f64::consts::PI * j as f64 / angles as f64;
                    let (sp, cp) = phi.sin_cos();
                    let radial = integrate_adaptive(
                        |r| r * f(&point(&[r * cp, r * sp], t)),
                        0.0,
                        v_max,
                        inner_tol,
                    )
                    .map(|i| i.value)
                    .unwrap_or(0.0);
                    sum += radial;
                }
                sum * 2.0 * std::f64::consts::PI / angles as f64
            }
            _ => unreachable!("dimension checked by callers"),
        }
    };
    let outer = integrate_adaptive(
        |t| (-((n as f64) - 1.0) * t).exp() * inner(t),
        -t_max,
        t_max,
        rel_tol,
    )?;
    Ok(outer.value)
}

/// Invariant integral over the upper light cone:
/// `int phi = int_0^inf phi_0(u) u^{n-2} du` for zonal fields, sphere
/// rule times a line integral in general.
pub fn integrate_gamma(phi: &HoroField, rel_tol: f64) -> Result<f64> {
    let n = phi.dim();
    let nf = n as f64;
    if let Some(profile) = phi.profile() {
        let integrand = |u: f64| profile.eval(u) * u.powf(nf - 2.0);
        return match phi.support() {
            Some((lo, hi)) => Ok(integrate_adaptive(&integrand, lo.max(0.0), hi, rel_tol)?.value),
            None => {
                let mu = phi.decay_mu();
                if !(mu > nf - 1.0) {
                    return Err(Error::Precondition(format!(
                        "cone integral needs decay mu > n-1 (mu = {mu})"
                    )));
                }
                let head = integrate_adaptive(&integrand, 0.0, 2.0, rel_tol)?;
                let tail = integrate_semi_infinite(&integrand, 2.0, mu - (nf - 2.0), rel_tol)?;
                Ok(head.value + tail.value)
            }
        };
    }
    // general path: for each direction, a line integral in t
    let rule = sphere_quadrature(n, 16)?;
    let mut sum = 0.0;
    for (omega, &w) in rule.points.iter().zip(&rule.weights) {
        let g = |t: f64| phi.eval_at(t, omega) * ((nf - 1.0) * t).exp();
        let val = match phi.support() {
            Some((lo, hi)) => {
                let t_lo = lo.max(1e-300).ln();
                let t_hi = hi.ln();
                integrate_adaptive(&g, t_lo, t_hi, rel_tol)?.value
            }
            None => {
                let mu = phi.decay_mu();
                if !(mu > nf - 1.0) {
                    return Err(Error::Precondition(format!(
                        "cone integral needs decay mu > n-1 (mu = {mu})"
                    )));
                }
                let up = integrate_semi_infinite(&g, 0.0, 2.0, rel_tol)?.value;
                let down = integrate_semi_infinite(&|t: f64| g(-t), 0.0, 2.0, rel_tol)?.value;
                up + down
            }
        };
        sum += w * val;
    }
    Ok(sum)
}

/// Hyperbolic convolution `(K f)(x) = int k([x, y]) f(y) dy`, computed
/// through the spherical-mean reduction
/// `sigma_{n-1} int_1^inf k(s) (M_x f)(s) (s^2-1)^{n/2-1} ds`.
pub fn hyperbolic_convolution(k: &RadialProfile, f: &ScalarField, x: &HPoint) -> Result<f64> {
    let n = f.dim();
    let nf = n as f64;
    let gamma_total = k.left_exponent() + nf / 2.0 - 1.0;
    if !(gamma_total > -1.0) {
        return Err(Error::Precondition(format!(
            "kernel too singular at s = 1 (combined exponent {gamma_total})"
        )));
    }
    // Integrability: either the kernel alone is absolutely integrable
    // against the volume density, or the field has compact support (the
    // spherical mean then truncates the s-integral at a finite radius).
    if k.support_end().is_none() && f.support_end().is_none() {
        let mu_k = k
            .tail_mu()
            .ok_or_else(|| Error::Precondition("kernel has no tail model".into()))?;
        let combined = mu_k + f.decay_mu();
        if !(mu_k > nf - 1.0) && !(combined > nf - 1.0) {
            return Err(Error::Precondition(format!(
                "kernel decay mu = {mu_k} is not integrable against (s^2-1)^(n/2-1)"
            )));
        }
    }
    let rel_tol = 1e-9;
    let mean = |s: f64| spherical_mean(f, x, s).unwrap_or(0.0);
    let window = 0.25;
    // compact f confines the mean to the sphere radii reaching the
    // support: s in [cosh(rho - r_f), cosh(rho + r_f)]
    let rho = x.height().acosh();
    let mean_range = f.support_end().map(|b| {
        let rf = b.acosh();
        (((rho - rf).max(0.0)).cosh(), (rho + rf).cosh() * (1.0 + 1e-9))
    });
    let lower = mean_range.map(|(lo, _)| lo).unwrap_or(1.0);
    let head = if lower <= 1.0 + window {
        jacobi_window(ZONAL_RULE_POINTS, gamma_total, 1.0, window, |s| {
            k.eval_smooth(s) * mean(s) * (s + 1.0).powf(nf / 2.0 - 1.0)
        })?
    } else {
        0.0
    };
    let body_start = (1.0 + window).max(lower * (1.0 - 1e-12));
    let integrand = |s: f64| k.eval(s) * mean(s) * (s * s - 1.0).powf(nf / 2.0 - 1.0);
    let cutoff = match (k.support_end(), mean_range) {
        (Some(a), Some((_, hi))) => Some(a.min(hi)),
        (Some(a), None) => Some(a),
        (None, Some((_, hi))) => Some(hi),
        (None, None) => None,
    };
    let body = match cutoff {
        Some(hi) if hi.is_finite() => {
            if hi <= body_start {
                0.0
            } else {
                integrate_adaptive(&integrand, body_start, hi, rel_tol)?.value
            }
        }
        _ => {
            let mu_k = k.tail_mu().unwrap_or(f64::INFINITY);
            let mu_eff = if mu_k.is_infinite() || f.decay_mu().is_infinite() {
                1e6
            } else {
                // combined decay of k * M_x f against the density growth
                mu_k + f.decay_mu() - (nf - 2.0)
            };
            if !(mu_eff > 1.0) {
                return Err(Error::Precondition(
                    "kernel/field decay too slow for the convolution".into(),
                ));
            }
            integrate_semi_infinite(&integrand, body_start, mu_eff, rel_tol)?.value
        }
    };
    Ok(sigma(n) * (head + body))
}
