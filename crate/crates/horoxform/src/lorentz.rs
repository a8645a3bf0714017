//! Geometry of the hyperboloid model: the Minkowski form, points on the
//! upper sheet, horospheres parametrized by the light cone, coordinate
//! systems, and distances.
//!
//! Throughout, `n` is the dimension of the hyperbolic space and vectors
//! live in the ambient (n+1)-dimensional Minkowski space with form
//! `[x, y] = -x_1 y_1 - ... - x_n y_n + x_{n+1} y_{n+1}`.

use crate::error::{Error, Result};

/// Relative tolerance for manifold membership checks.
const MEMBERSHIP_TOL: f64 = 1e-12;

/// A vector in the ambient Minkowski space E^{n,1}.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzVector {
    components: Vec<f64>,
}

impl LorentzVector {
    /// Wrap components; length must be n+1 with n >= 2.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.len() < 3 {
            return Err(Error::UnsupportedDimension(
                components.len().saturating_sub(1),
                "Lorentz vector (need n >= 2)",
            ));
        }
        Ok(LorentzVector { components })
    }

    /// Hyperbolic dimension n (one less than the component count).
    pub fn dim(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    /// Spatial part (first n components).
    pub fn spatial(&self) -> &[f64] {
        &self.components[..self.components.len() - 1]
    }

    /// Time-like component x_{n+1}.
    pub fn last(&self) -> f64 {
        *self.components.last().unwrap()
    }

    /// Minkowski form against another vector of equal dimension.
    pub fn minkowski(&self, other: &LorentzVector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(minkowski_raw(&self.components, &other.components))
    }
}

fn minkowski_raw(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() - 1;
    let spatial: f64 = x[..n].iter().zip(&y[..n]).map(|(a, b)| a * b).sum();
    x[n] * y[n] - spatial
}

/// The Minkowski form `[x, y]` (symmetric bilinear, signature (1, n)).
pub fn minkowski_form(x: &LorentzVector, y: &LorentzVector) -> Result<f64> {
    x.minkowski(y)
}

fn check_unit(v: &[f64]) -> Result<()> {
    let norm: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > MEMBERSHIP_TOL {
        return Err(Error::NotUnit { norm });
    }
    Ok(())
}

/// A point on the upper sheet of the unit hyperboloid (`[x, x] = 1`,
/// `x_{n+1} >= 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct HPoint {
    vec: LorentzVector,
}

impl HPoint {
    /// Validate membership and wrap.
    pub fn new(vec: LorentzVector) -> Result<Self> {
        let norm2 = minkowski_raw(&vec.components, &vec.components);
        let h = vec.last();
        if (norm2 - 1.0).abs() > MEMBERSHIP_TOL * h.mul_add(h, 0.0).max(1.0) {
            return Err(Error::InvariantBreach(format!(
                "point is off the hyperboloid: [x,x] = {norm2}"
            )));
        }
        if h < 1.0 - MEMBERSHIP_TOL {
            return Err(Error::InvariantBreach(format!(
                "point is on the lower sheet: x_(n+1) = {h}"
            )));
        }
        Ok(HPoint { vec })
    }

    /// The base point e_{n+1} of H^n.
    pub fn origin(n: usize) -> HPoint {
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        HPoint {
            vec: LorentzVector { components: c },
        }
    }

    /// Point at geodesic distance `r` from the origin in unit direction
    /// `theta` (a vector in R^n): `x = theta sinh r + e_{n+1} cosh r`.
    pub fn from_polar(r: f64, theta: &[f64]) -> Result<HPoint> {
        if theta.len() < 2 {
            return Err(Error::UnsupportedDimension(theta.len(), "polar direction"));
        }
        if r < 0.0 {
            return Err(Error::Precondition("polar radius must be >= 0".into()));
        }
        check_unit(theta)?;
        let (sh, ch) = (r.sinh(), r.cosh());
        let mut c: Vec<f64> = theta.iter().map(|&t| t * sh).collect();
        c.push(ch);
        Ok(HPoint {
            vec: LorentzVector { components: c },
        })
    }

    /// Point with horospherical coordinates `(v, t)`:
    /// `x = (e^{-t} v, sinh t + (|v|^2/2) e^{-t}, cosh t + (|v|^2/2) e^{-t})`.
    pub fn from_horospherical(coords: &HoroCoords) -> HPoint {
        let v = &coords.v;
        let t = coords.t;
        let emt = (-t).exp();
        let half_v2 = 0.5 * v.iter().map(|c| c * c).sum::<f64>();
        let mut c: Vec<f64> = v.iter().map(|&vi| emt * vi).collect();
        c.push(t.sinh() + half_v2 * emt);
        c.push(t.cosh() + half_v2 * emt);
        HPoint {
            vec: LorentzVector { components: c },
        }
    }

    /// Recover horospherical coordinates: `t = -log(x_{n+1} - x_n)`,
    /// `v = e^t (x_1, ..., x_{n-1})`.
    pub fn horospherical_coords(&self) -> Result<HoroCoords> {
        let n = self.dim();
        let gap = self.vec.components[n] - self.vec.components[n - 1];
        if gap <= 0.0 {
            return Err(Error::InvariantBreach(
                "x_(n+1) - x_n <= 0 on a hyperboloid point".into(),
            ));
        }
        let t = -gap.ln();
        let et = t.exp();
        let v = self.vec.components[..n - 1].iter().map(|&c| et * c).collect();
        Ok(HoroCoords { v, t })
    }

    pub fn dim(&self) -> usize {
        self.vec.dim()
    }

    pub fn vec(&self) -> &LorentzVector {
        &self.vec
    }

    /// Height coordinate x_{n+1} = cosh d(x, origin).
    pub fn height(&self) -> f64 {
        self.vec.last()
    }

    /// Construct from raw components without validation (internal use by
    /// isometry application, which preserves the invariants up to
    /// rounding).
    pub(crate) fn from_components_unchecked(components: Vec<f64>) -> HPoint {
        HPoint {
            vec: LorentzVector { components },
        }
    }

    /// Geodesic distance `d(x, y) = arccosh [x, y]`.
    ///
    /// Bracket values within 1e-12 below 1 are clamped to 1; larger
    /// deficits are reported as invariant breaches, not silently fixed.
    pub fn geodesic_distance(&self, other: &HPoint) -> Result<f64> {
        let b = self.vec.minkowski(&other.vec)?;
        if b < 1.0 - 1e-9 {
            return Err(Error::InvariantBreach(format!(
                "[x, y] = {b} < 1 between hyperboloid points"
            )));
        }
        Ok(b.max(1.0).acosh())
    }
}

/// Horospherical coordinates `(v, t)` with `v` in R^{n-1}.
#[derive(Debug, Clone, PartialEq)]
pub struct HoroCoords {
    pub v: Vec<f64>,
    pub t: f64,
}

impl HoroCoords {
    pub fn new(v: Vec<f64>, t: f64) -> Self {
        HoroCoords { v, t }
    }
}

/// A point on the upper light cone parametrizing a horosphere, stored in
/// the factorized form `xi = e^t b(omega)`, `b(omega) = (omega, 1)`.
///
/// The raw vector is reconstructed from `(t, omega)`, which keeps
/// `[xi, xi] = 0` exact by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HoroPoint {
    t: f64,
    omega: Vec<f64>,
    vec: LorentzVector,
}

impl HoroPoint {
    /// Build from the signed log-radius `t` and the unit direction
    /// `omega` in R^n.
    pub fn new(t: f64, omega: &[f64]) -> Result<HoroPoint> {
        if omega.len() < 2 {
            return Err(Error::UnsupportedDimension(omega.len(), "horosphere direction"));
        }
        check_unit(omega)?;
        let et = t.exp();
        let mut c: Vec<f64> = omega.iter().map(|&o| et * o).collect();
        c.push(et);
        Ok(HoroPoint {
            t,
            omega: omega.to_vec(),
            vec: LorentzVector { components: c },
        })
    }

    /// Accept a raw cone vector, converting it to the canonical `(t,
    /// omega)` factorization (rejects vectors off the upper cone).
    pub fn from_vec(vec: LorentzVector) -> Result<HoroPoint> {
        let last = vec.last();
        if last <= 0.0 {
            return Err(Error::InvariantBreach(
                "cone vector must have positive last component".into(),
            ));
        }
        let norm2 = minkowski_raw(&vec.components, &vec.components);
        if norm2.abs() > MEMBERSHIP_TOL * last * last {
            return Err(Error::InvariantBreach(format!(
                "vector is off the light cone: [xi, xi] = {norm2}"
            )));
        }
        let omega: Vec<f64> = vec.spatial().iter().map(|&c| c / last).collect();
        // renormalize the direction before rebuilding
        let norm: f64 = omega.iter().map(|c| c * c).sum::<f64>().sqrt();
        let omega: Vec<f64> = omega.iter().map(|&c| c / norm).collect();
        HoroPoint::new(last.ln(), &omega)
    }

    /// The base horosphere point `xi_0 = (0, ..., 0, 1, 1)`.
    pub fn base(n: usize) -> HoroPoint {
        let mut omega = vec![0.0; n];
        omega[n - 1] = 1.0;
        HoroPoint::new(0.0, &omega).unwrap()
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn vec(&self) -> &LorentzVector {
        &self.vec
    }

    pub fn dim(&self) -> usize {
        self.vec.dim()
    }

    /// Height coordinate `xi_{n+1} = e^t`.
    pub fn height(&self) -> f64 {
        self.t.exp()
    }
}

/// Signed horospherical "inner product" `<x, omega> = -log [x, b(omega)]`;
/// the unique horosphere through `x` with direction `omega` is
/// `e^{<x, omega>} b(omega)`.
pub fn log_bracket(x: &HPoint, omega: &[f64]) -> Result<f64> {
    if omega.len() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: omega.len(),
        });
    }
    check_unit(omega)?;
    Ok(-bracket_point_direction(x, omega).ln())
}

/// `[x, b(omega)]` without the log (always positive for x on the
/// hyperboloid).
pub(crate) fn bracket_point_direction(x: &HPoint, omega: &[f64]) -> f64 {
    let c = x.vec().components();
    let n = x.dim();
    let spatial: f64 = c[..n].iter().zip(omega).map(|(a, b)| a * b).sum();
    c[n] - spatial
}

/// Distance from a point to the horosphere parametrized by `xi`:
/// `d(x, \hat xi) = |log [x, xi]|`.
pub fn dist_point_horosphere(x: &HPoint, xi: &HoroPoint) -> Result<f64> {
    let b = x.vec().minkowski(xi.vec())?;
    if b <= 0.0 {
        return Err(Error::InvariantBreach(format!(
            "[x, xi] = {b} <= 0 for a point and an upper-cone vector"
        )));
    }
    Ok(b.ln().abs())
}

/// Apply the standard boost in the `(e_n, e_{n+1})` plane with rapidity
/// `rho` to raw components (in place).
pub(crate) fn boost_last_plane(c: &mut [f64], rho: f64) {
    let n = c.len() - 1;
    let (sh, ch) = (rho.sinh(), rho.cosh());
    let (a, b) = (c[n - 1], c[n]);
    c[n - 1] = ch * a + sh * b;
    c[n] = sh * a + ch * b;
}

/// A rotation of R^n taking unit vector `from` to unit vector `to`,
/// applied on demand (identity outside the plane spanned by the two).
#[derive(Debug, Clone)]
pub(crate) struct PlaneRotation {
    u: Vec<f64>,
    v: Vec<f64>,
    cos: f64,
    sin: f64,
    identity: bool,
}

impl PlaneRotation {
    pub fn between(from: &[f64], to: &[f64]) -> PlaneRotation {
        let c: f64 = from.iter().zip(to).map(|(a, b)| a * b).sum();
        if c >= 1.0 - 1e-15 {
            return PlaneRotation {
                u: vec![],
                v: vec![],
                cos: 1.0,
                sin: 0.0,
                identity: true,
            };
        }
        if c <= -1.0 + 1e-15 {
            // rotation by pi in a plane containing `from`
            let mut v = vec![0.0; from.len()];
            // any direction orthogonal to `from`
            let k = from
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                .unwrap()
                .0;
            v[k] = 1.0;
            let proj: f64 = from.iter().zip(&v).map(|(a, b)| a * b).sum();
            for (vi, &fi) in v.iter_mut().zip(from) {
                *vi -= proj * fi;
            }
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            for vi in &mut v {
                *vi /= norm;
            }
            return PlaneRotation {
                u: from.to_vec(),
                v,
                cos: -1.0,
                sin: 0.0,
                identity: false,
            };
        }
        let mut v: Vec<f64> = to.iter().zip(from).map(|(t, f)| t - c * f).collect();
        // |to - c from| = sqrt(1 - c^2) = sin of the rotation angle
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for vi in &mut v {
            *vi /= norm;
        }
        PlaneRotation {
            u: from.to_vec(),
            v,
            cos: c,
            sin: norm,
            identity: false,
        }
    }

    /// Rotate the spatial block of an ambient vector in place (the last
    /// component is untouched).
    pub fn apply_spatial(&self, c: &mut [f64]) {
        if self.identity {
            return;
        }
        let n = c.len() - 1;
        let s = &mut c[..n];
        let pu: f64 = self.u.iter().zip(s.iter()).map(|(a, b)| a * b).sum();
        let pv: f64 = self.v.iter().zip(s.iter()).map(|(a, b)| a * b).sum();
        let new_pu = self.cos * pu - self.sin * pv;
        let new_pv = self.sin * pu + self.cos * pv;
        for i in 0..s.len() {
            s[i] += (new_pu - pu) * self.u[i] + (new_pv - pv) * self.v[i];
        }
    }
}
