//! The standard field corpus and closed-form references used by the
//! verification suites and the CLI.

use crate::constants::{delta, dual_pair_constant, dual_pair_constant_b, power_forward_constant};
use crate::error::{Error, Result};
use crate::fields::{HoroField, RadialProfile, ScalarField};
use serde::{Deserialize, Serialize};

/// Test fields covering the decay regimes the transform theory uses:
/// power-law tails, rapid decay, compact support, and the borderline
/// divergence witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldKind {
    /// `f(x) = x_{n+1}^{-beta}` with the closed-form transform.
    Power { beta: f64 },
    /// `f_0(s) = e^{-rate (s-1)}`.
    ExpBump { rate: f64 },
    /// `f_0(s) = (1 - (s-1)/width)^4` on `[1, 1+width]`.
    CompactBump { width: f64 },
    /// The borderline function whose transform diverges everywhere
    /// (decay exponent exactly (n-1)/p improved by a log).
    DivergenceWitness { p: f64 },
    /// Sampled profile from a CSV file plus its JSON sidecar.
    Sampled { csv: String, sidecar: String },
}

/// Materialize a corpus field in dimension `n`.
pub fn standard_field(kind: &FieldKind, n: usize) -> Result<ScalarField> {
    match kind {
        FieldKind::Power { beta } => {
            let beta = *beta;
            if !(beta > delta(n)) {
                return Err(Error::Precondition(format!(
                    "power field needs beta > (n-1)/2, got {beta}"
                )));
            }
            Ok(ScalarField::zonal(
                n,
                RadialProfile::closed(1.0, move |s: f64| s.powf(-beta), beta),
            ))
        }
        FieldKind::ExpBump { rate } => {
            let rate = *rate;
            if !(rate > 0.0) {
                return Err(Error::Precondition("bump rate must be positive".into()));
            }
            Ok(ScalarField::zonal(
                n,
                RadialProfile::closed(1.0, move |s: f64| (-rate * (s - 1.0)).exp(), 25.0),
            ))
        }
        FieldKind::CompactBump { width } => {
            let width = *width;
            if !(width > 0.0) {
                return Err(Error::Precondition("bump width must be positive".into()));
            }
            Ok(ScalarField::zonal(
                n,
                RadialProfile::closed(
                    1.0,
                    move |s: f64| {
                        let u = (s - 1.0) / width;
                        if u < 1.0 {
                            (1.0 - u).powi(4)
                        } else {
                            0.0
                        }
                    },
                    f64::INFINITY,
                )
                .with_support_end(1.0 + width),
            ))
        }
        FieldKind::DivergenceWitness { p } => {
            let p = *p;
            let nf = n as f64;
            if !(p >= 2.0) {
                return Err(Error::Precondition(
                    "the divergence witness needs p >= 2".into(),
                ));
            }
            Ok(ScalarField::zonal(
                n,
                RadialProfile::closed(
                    1.0,
                    move |s: f64| {
                        (s * s - 1.0).powf((1.0 - nf / 2.0) / p) * (s + 1.0).powf(-1.0 / p)
                            / (s + 1.0).ln()
                    },
                    (nf - 1.0) / p,
                ),
            ))
        }
        FieldKind::Sampled { csv, sidecar } => {
            let profile =
                RadialProfile::load_csv(std::path::Path::new(csv), std::path::Path::new(sidecar))?;
            Ok(ScalarField::zonal(n, profile))
        }
    }
}

/// Closed-form forward transform of the power field at height `e^t`:
/// `c_beta u^{beta - 2 delta} (u^2 + 1)^{delta - beta}`, `u = e^t`.
pub fn oracle_hf_power(beta: f64, t: f64, n: usize) -> Result<f64> {
    let d = delta(n);
    if !(beta > d) {
        return Err(Error::Precondition(format!(
            "closed-form transform needs beta > (n-1)/2, got {beta}"
        )));
    }
    let u = t.exp();
    Ok(power_forward_constant(beta, n) * u.powf(beta - 2.0 * d) * (u * u + 1.0).powf(d - beta))
}

/// Which of the two closed-form dual-transform pairs to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualPairVariant {
    /// Dual of `|u-1|^{alpha-1} u^{-(delta + alpha/2)}` (and its
    /// power-shifted twin, which has the same dual).
    A,
    /// Dual of `(u-1)^{alpha-1} (u+1)^{1-alpha-2 delta}`.
    B,
}

/// Closed-form dual transform of the kernel pairs at height `x_{n+1}`.
pub fn oracle_dual_pairs(alpha: f64, x_height: f64, variant: DualPairVariant, n: usize) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Precondition(format!(
            "kernel order must be positive, got {alpha}"
        )));
    }
    let d = delta(n);
    let value = match variant {
        DualPairVariant::A => {
            dual_pair_constant(alpha, n)
                * (x_height - 1.0).powf((alpha - 1.0) / 2.0)
                * (x_height + 1.0).powf(0.5 - d)
        }
        DualPairVariant::B => {
            dual_pair_constant_b(alpha, n)
                * (x_height - 1.0).powf((alpha - 1.0) / 2.0)
                * (x_height + 1.0).powf((1.0 - alpha) / 2.0 - d)
        }
    };
    Ok(value)
}

/// The two zonal kernels of the first dual pair (same dual transform).
pub fn dual_pair_kernels(alpha: f64, n: usize) -> (HoroField, HoroField) {
    let d = delta(n);
    let phi = HoroField::zonal(
        n,
        RadialProfile::closed(
            0.0,
            move |u: f64| (u - 1.0).abs().powf(alpha - 1.0) * u.powf(-(d + alpha / 2.0)),
            d + alpha / 2.0 - (alpha - 1.0),
        )
        .with_one_exponent(alpha - 1.0),
        d - alpha / 2.0 + 1.0,
    );
    let psi = HoroField::zonal(
        n,
        RadialProfile::closed(
            0.0,
            move |u: f64| (u - 1.0).abs().powf(alpha - 1.0) * u.powf(-(d + alpha / 2.0 - 1.0)),
            d + alpha / 2.0 - alpha,
        )
        .with_one_exponent(alpha - 1.0),
        d - alpha / 2.0,
    );
    (phi, psi)
}

/// The zonal kernel of the second dual pair.
pub fn dual_pair_kernel_b(alpha: f64, n: usize) -> HoroField {
    let d = delta(n);
    HoroField::zonal(
        n,
        RadialProfile::closed(
            0.0,
            move |u: f64| (u - 1.0).max(0.0).powf(alpha - 1.0) * (u + 1.0).powf(1.0 - alpha - 2.0 * d),
            2.0 * d,
        )
        .with_one_exponent(alpha - 1.0),
        2.0 * d,
    )
}
