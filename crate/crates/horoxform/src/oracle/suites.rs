//! The curated verification cases behind each named suite.
//!
//! Conventions: each case returns `(computed, reference)`; property-like
//! cases return the worst observed deviation against a reference of 0
//! (the relative error then degrades to the absolute one). Ratio tests
//! for first-order limits compare `log10(drift ratio)` against 1.

use super::{OracleCase, RunOptions};
use crate::constants::{delta, dual_pair_constant, lambda_n, sigma};
use crate::fields::{integrate_gamma, integrate_hn, spherical_mean, HoroField, RadialProfile, ScalarField};
use crate::fractional::{rl_derivative, rl_halfinteger_derivative, rl_integral, DerivativeForm};
use crate::harmonic::{q_alpha_hat, q_alpha_profile, spherical_function, spherical_function_parts, spherical_transform};
use crate::inversion::{
    b_operator, fuglede_check, invert_bl, invert_mean_value, q_potential, q_potential_direct_2d,
    BlConfig, DAlphaOp, MeanValueConfig, ZonalGrid,
};
use crate::lorentz::{dist_point_horosphere, log_bracket, HoroCoords, HoroPoint, HPoint, LorentzVector};
use crate::numerics::adaptive::{integrate_adaptive, integrate_log_singular, integrate_semi_infinite};
use crate::numerics::curve::{SampledCurve, Tail};
use crate::numerics::gauss::{gauss_jacobi_left, gauss_legendre};
use crate::numerics::richardson::richardson_limit;
use crate::numerics::sphere::sphere_quadrature;
use crate::oracle::corpus::{
    dual_pair_kernel_b, dual_pair_kernels, oracle_dual_pairs, oracle_hf_power, standard_field,
    DualPairVariant, FieldKind,
};
use crate::transform::{
    dual, dual_zonal, forward, forward_zonal, forward_zonal_field, fourier_slice_check,
    semyanistyi_dual, semyanistyi_forward, shifted_dual, KernelVariant, SemyanistyiKernel,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn unit_last(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[n - 1] = 1.0;
    v
}

fn random_unit(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.iter().map(|&c| c / norm).collect();
        }
    }
}

fn exp_bump(n: usize) -> ScalarField {
    standard_field(&FieldKind::ExpBump { rate: 3.0 }, n).unwrap()
}

fn compact_bump(n: usize) -> ScalarField {
    standard_field(&FieldKind::CompactBump { width: 1.0 }, n).unwrap()
}

fn compact_cone_bump(n: usize) -> HoroField {
    HoroField::zonal(
        n,
        RadialProfile::closed(
            0.0,
            |u: f64| {
                let t = u.ln();
                if t.abs() < 1.0 {
                    (1.0 - t * t).powi(3)
                } else {
                    0.0
                }
            },
            f64::INFINITY,
        )
        .with_support((-1f64).exp(), 1f64.exp()),
        f64::INFINITY,
    )
}

pub(super) fn geometry_cases() -> Vec<OracleCase> {
    let mut cases = Vec::new();
    cases.push(OracleCase::new(
        "geometry/minkowski-arithmetic",
        "bilinear form value on a fixed triple",
        1e-14,
        |_| {
            let x = LorentzVector::new(vec![3f64.sqrt(), 0.0, 2.0])?;
            let y = LorentzVector::new(vec![0.0, 0.0, 1.0])?;
            Ok((x.minkowski(&y)?, 2.0))
        },
    ));
    cases.push(OracleCase::new(
        "geometry/polar-distance-roundtrip",
        "worst |d(origin, polar(r, theta)) - r| over random samples",
        1e-10,
        |opts: &RunOptions| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut worst: f64 = 0.0;
            for _ in 0..200 {
                let n = rng.gen_range(2..=5);
                let r = rng.gen_range(0.0..4.0);
                let p = HPoint::from_polar(r, &random_unit(n, &mut rng))?;
                worst = worst.max((HPoint::origin(n).geodesic_distance(&p)? - r).abs());
            }
            Ok((worst, 0.0))
        },
    ));
    cases.push(OracleCase::new(
        "geometry/horospherical-roundtrip",
        "worst coordinate roundtrip error over random points",
        1e-10,
        |opts: &RunOptions| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37);
            let mut worst: f64 = 0.0;
            for _ in 0..200 {
                let n = rng.gen_range(2..=5);
                let p = HPoint::from_polar(rng.gen_range(0.0..3.0), &random_unit(n, &mut rng))?;
                let q = HPoint::from_horospherical(&p.horospherical_coords()?);
                for (a, b) in p.vec().components().iter().zip(q.vec().components()) {
                    worst = worst.max((a - b).abs() / p.height().max(1.0));
                }
            }
            Ok((worst, 0.0))
        },
    ));
    cases.push(OracleCase::new(
        "geometry/triangle-inequality",
        "worst violation of the triangle inequality on random triples",
        1e-10,
        |opts: &RunOptions| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x51f1);
            let mut worst: f64 = 0.0;
            for _ in 0..200 {
                let n = rng.gen_range(2..=4);
                let mut pt =
                    || HPoint::from_polar(rng.gen_range(0.0..3.0), &random_unit(n, &mut rng));
                let (a, b, c) = (pt()?, pt()?, pt()?);
                let gap = a.geodesic_distance(&c)?
                    - a.geodesic_distance(&b)?
                    - b.geodesic_distance(&c)?;
                worst = worst.max(gap.max(0.0));
            }
            Ok((worst, 0.0))
        },
    ));
    cases.push(OracleCase::new(
        "geometry/horosphere-distance-origin",
        "d(origin, horosphere(t, w)) = |t| at a fixed sample",
        1e-12,
        |_| {
            let xi = HoroPoint::new(-1.37, &[0.6, 0.0, 0.8])?;
            Ok((dist_point_horosphere(&HPoint::origin(3), &xi)?, 1.37))
        },
    ));
    cases.push(OracleCase::new(
        "geometry/matched-frame-distance",
        "d(x(v,t'), horosphere(s, e_n)) = |s - t'| off-axis",
        1e-11,
        |_| {
            let x = HPoint::from_horospherical(&HoroCoords::new(vec![1.4], 0.9));
            let xi = HoroPoint::new(-0.4, &[0.0, 1.0])?;
            Ok((dist_point_horosphere(&x, &xi)?, 1.3))
        },
    ));
    cases.push(OracleCase::new(
        "geometry/log-bracket-value",
        "-log[x, b(w)] on a fixed point and direction",
        1e-12,
        |_| {
            let x = HPoint::new(LorentzVector::new(vec![3f64.sqrt(), 0.0, 2.0])?)?;
            Ok((log_bracket(&x, &[1.0, 0.0])?, 1.3169578969248166))
        },
    ));
    cases.push(OracleCase::new(
        "geometry/cone-bracket-positive",
        "worst -[x, xi] over random pairs (must stay negative)",
        1e-12,
        |opts: &RunOptions| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xc0de);
            let mut worst = f64::NEG_INFINITY;
            for _ in 0..200 {
                let n = rng.gen_range(2..=5);
                let x = HPoint::from_polar(rng.gen_range(0.0..3.0), &random_unit(n, &mut rng))?;
                let xi = HoroPoint::new(rng.gen_range(-3.0..3.0), &random_unit(n, &mut rng))?;
                worst = worst.max(-x.vec().minkowski(xi.vec())?);
            }
            Ok((worst.max(0.0), 0.0))
        },
    ));
    cases
}

pub(super) fn fractional_cases() -> Vec<OracleCase> {
    let mut cases = Vec::new();
    cases.push(OracleCase::new(
        "quadrature/legendre-exp",
        "20-point rule on e^x over (-1,1) vs e - 1/e",
        1e-14,
        |_| {
            let rule = gauss_legendre(20)?;
            Ok((rule.apply(f64::exp), std::f64::consts::E - 1.0 / std::f64::consts::E))
        },
    ));
    cases.push(OracleCase::new(
        "quadrature/jacobi-moment",
        "endpoint-weighted moment u^{-1/2} * u over (0,1)",
        1e-13,
        |_| {
            let rule = gauss_jacobi_left(8, -0.5)?;
            Ok((rule.apply(|u| u), 2.0 / 3.0))
        },
    ));
    cases.push(OracleCase::new(
        "quadrature/semi-infinite-singular",
        "int_1^inf (s-1)^{-1/2} e^{-s} ds vs sqrt(pi)/e",
        1e-10,
        |_| {
            let g = RadialProfile::closed(1.0, |s: f64| (-s).exp(), f64::INFINITY);
            // alpha = 1/2 fractional integral at r = 1 times Gamma(1/2)
            let value = rl_integral(&g, 0.5, 1.0)? * PI.sqrt();
            Ok((value, 0.6520493321732922))
        },
    ));
    cases.push(OracleCase::new(
        "quadrature/log-singular",
        "int_0^2 log|u-1| du = -2",
        1e-10,
        |_| {
            let v = integrate_log_singular(|u: f64| (u - 1.0).abs().ln(), 0.0, 2.0, 1.0, 0.2, 1e-12)?;
            Ok((v.value, -2.0))
        },
    ));
    cases.push(OracleCase::new(
        "quadrature/richardson-exp",
        "extrapolated limit of e^h at h -> 0",
        1e-6,
        |_| {
            let steps: Vec<f64> = (0..4).map(|k| 0.1 * 4f64.powi(-k)).collect();
            let vals: Vec<f64> = steps.iter().map(|&h| h.exp()).collect();
            Ok((richardson_limit(&vals, &steps, 1.0)?.value, 1.0))
        },
    ));
    cases.push(OracleCase::new(
        "quadrature/sphere-moment",
        "int of theta_n^2 over S^4 (normalized) = 1/5",
        1e-12,
        |_| {
            let rule = sphere_quadrature(5, 6)?;
            Ok((rule.apply(|p| p[4] * p[4]), 0.2))
        },
    ));
    cases.push(OracleCase::new(
        "fractional/exponential-fixed-point",
        "I^alpha e^{-s} = e^{-s} at alpha = 1/2, r = 2",
        1e-9,
        |_| {
            let g = RadialProfile::closed(1.0, |s: f64| (-s).exp(), f64::INFINITY);
            Ok((rl_integral(&g, 0.5, 2.0)?, (-2f64).exp()))
        },
    ));
    cases.push(OracleCase::new(
        "fractional/power-law-beta",
        "I^{3/2} s^{-4} against the beta-function closed form",
        1e-9,
        |_| {
            let g = RadialProfile::closed(1.0, |s: f64| s.powi(-4), 4.0);
            let r: f64 = 2.0;
            let exact = crate::numerics::special::gamma(2.5) / crate::numerics::special::gamma(4.0)
                * r.powf(1.5 - 4.0);
            Ok((rl_integral(&g, 1.5, r)?, exact))
        },
    ));
    cases.push(OracleCase::new(
        "fractional/roundtrip-worst",
        "worst relative error of D^a I^a g = g over the corpus",
        1e-4,
        |_| {
            let mut worst: f64 = 0.0;
            for alpha in [0.5, 1.0, 1.5] {
                let g = RadialProfile::closed(1.0, |s: f64| (-s).exp(), f64::INFINITY);
                let h = SampledCurve::chebyshev(
                    1.05,
                    16.0,
                    80,
                    |s| rl_integral(&g, alpha, s).unwrap(),
                    Tail::PowerLaw { mu: 30.0 },
                );
                let d = rl_derivative(&h, alpha, DerivativeForm::default())?;
                for k in 0..=40 {
                    let s = 1.1 + 3.9 * k as f64 / 40.0;
                    worst = worst.max(((d.eval(s) - (-s).exp()) / (-s).exp()).abs());
                }
                let g = RadialProfile::closed(1.0, |s: f64| s.powi(-4), 4.0);
                let h = SampledCurve::chebyshev(
                    1.05,
                    16.0,
                    80,
                    |s| rl_integral(&g, alpha, s).unwrap(),
                    Tail::PowerLaw { mu: 4.0 - alpha },
                );
                let d = rl_derivative(&h, alpha, DerivativeForm::default())?;
                for k in 0..=40 {
                    let s: f64 = 1.1 + 3.9 * k as f64 / 40.0;
                    worst = worst.max(((d.eval(s) - s.powi(-4)) / s.powi(-4)).abs());
                }
            }
            Ok((worst, 0.0))
        },
    ));
    cases.push(OracleCase::new(
        "fractional/halfinteger-forms-agree",
        "the two printed half-integer derivative forms coincide",
        1e-6,
        |_| {
            let h = SampledCurve::chebyshev(
                1.0,
                16.0,
                72,
                |s| (-s).exp(),
                Tail::PowerLaw { mu: 30.0 },
            );
            let mut worst: f64 = 0.0;
            for k in [1usize, 3] {
                let a = rl_halfinteger_derivative(&h, k)?;
                let b = rl_derivative(&h, k as f64 / 2.0, DerivativeForm::Shifted((k - 1) / 2))?;
                for &s in &[1.5, 2.5, 4.0] {
                    worst = worst.max(((a.eval(s) - b.eval(s)) / b.eval(s)).abs());
                }
            }
            Ok((worst, 0.0))
        },
    ));
    cases.push(OracleCase::new(
        "fractional/semigroup",
        "I^{1/2} I^{1/2} e^{-s} = I^1 e^{-s} at r = 1.5",
        1e-6,
        |_| {
            let g = RadialProfile::closed(1.0, |s: f64| (-s).exp(), f64::INFINITY);
            let half = SampledCurve::chebyshev(
                1.0,
                18.0,
                72,
                |s| rl_integral(&g, 0.5, s).unwrap(),
                Tail::PowerLaw { mu: 30.0 },
            );
            let twice = rl_integral(&RadialProfile::from_curve(half), 0.5, 1.5)?;
            Ok((twice, (-1.5f64).exp()))
        },
    ));
    cases.push(OracleCase::new(
        "fractional/power-weighted-composition",
        "the power-weighted splitting identity at (1/2, 1/2)",
        1e-6,
        |_| {
            let lhs_profile =
                RadialProfile::closed(1.0, |s: f64| s.powf(-0.5) * (-s).exp(), f64::INFINITY);
            let inner =
                RadialProfile::closed(1.0, |s: f64| s.powf(-1.0) * (-s).exp(), f64::INFINITY);
            let r: f64 = 2.0;
            let lhs = rl_integral(&lhs_profile, 1.0, r)?;
            let rhs = r.powf(0.5) * rl_integral(&inner, 0.5, r)?;
            Ok((lhs, rhs))
        },
    ));
    cases
}

pub(super) fn harmonic_cases() -> Vec<OracleCase> {
    let mut cases = Vec::new();
    cases.push(OracleCase::new(
        "harmonic/phi-n3-closed-form",
        "worst gap to sin(lr)/(l sinh r) over a (lambda, r) grid",
        1e-8,
        |_| {
            let mut worst: f64 = 0.0;
            for &lambda in &[0.5f64, 1.0, 2.0] {
                for &r in &[0.5f64, 1.0, 2.0] {
                    let want = (lambda * r).sin() / (lambda * r.sinh());
                    let (re, im) = spherical_function_parts(lambda, r, 3)?;
                    worst = worst.max(((re - want) / want).abs()).max(im.abs());
                }
            }
            Ok((worst, 0.0))
        },
    ));
    cases.push(OracleCase::new(
        "harmonic/phi-lambda-zero-limit",
        "n=3 value at lambda -> 0 equals r/sinh r",
        1e-9,
        |_| Ok((spherical_function(0.0, 1.0, 3)?, 1.0 / 1f64.sinh())),
    ));
    cases.push(OracleCase::new(
        "harmonic/phi-n2-reference",
        "n=2 value against a 30-digit Legendre-function reference",
        1e-9,
        |_| Ok((spherical_function(1.0, 1.0, 2)?, 0.7220752282793746)),
    ));
    cases.push(OracleCase::new(
        "harmonic/symbol-at-zero",
        "kernel symbol at (n=3, alpha=1, lambda=0) equals pi",
        1e-12,
        |_| Ok((q_alpha_hat(0.0, 1.0, 3)?, PI)),
    ));
    cases.push(OracleCase::new(
        "harmonic/symbol-tanh",
        "kernel symbol at lambda=1 equals tanh(pi)",
        1e-11,
        |_| Ok((q_alpha_hat(1.0, 1.0, 3)?, PI.tanh())),
    ));
    // the module's central oracle: quadrature transform of the kernel
    // matches the gamma-factor symbol across the (alpha, lambda) grid
    for alpha in [0.5, 1.0, 1.5] {
        for lambda in [0.0, 1.0, 2.0] {
            cases.push(OracleCase::new(
                &format!("harmonic/kernel-transform-a{alpha}-l{lambda}"),
                "quadrature spherical transform of the potential kernel vs its symbol",
                1e-5,
                move |_| {
                    Ok((
                        spherical_transform(&q_alpha_profile(alpha, 3), lambda, 3)?,
                        q_alpha_hat(lambda, alpha, 3)?,
                    ))
                },
            ));
        }
    }
    cases.push(OracleCase::new(
        "harmonic/eigenfunction-radial",
        "radial Laplace of the spherical function vs its eigenvalue",
        1e-4,
        |_| {
            let n = 3;
            let lambda = 1.0;
            let d = delta(n);
            let h = 1e-3;
            let r = 1.0;
            let g = |rr: f64| spherical_function(lambda, rr, n).unwrap();
            let lap = (g(r + h) - 2.0 * g(r) + g(r - h)) / (h * h)
                + (n as f64 - 1.0) / r.tanh() * (g(r + h) - g(r - h)) / (2.0 * h);
            Ok((lap, -(lambda * lambda + d * d) * g(r)))
        },
    ));
    cases.push(OracleCase::new(
        "harmonic/convolution-theorem",
        "transform of a convolution vs the product of transforms",
        1e-4,
        |_| {
            let k = q_alpha_profile(1.0, 3);
            let f0 = compact_bump(3).profile().unwrap().clone();
            let (lhs, rhs) = crate::harmonic::convolution_transform_check(&k, &f0, 1.0, 3)?;
            Ok((lhs, rhs))
        },
    ));
    cases.push(OracleCase::new(
        "harmonic/fourier-direction-independence",
        "general-path transform of a zonal field at two directions",
        1e-8,
        |_| {
            let f = ScalarField::general(
                2,
                |x: &HPoint| {
                    let u = x.height() - 1.0;
                    if u < 1.0 {
                        (1.0 - u).powi(4)
                    } else {
                        0.0
                    }
                },
                f64::INFINITY,
                Some(2.0),
            );
            let a = crate::harmonic::fourier_transform(&f, 1.0, &[1.0, 0.0])?;
            let b = crate::harmonic::fourier_transform(&f, 1.0, &[0.6, 0.8])?;
            Ok((a.re, b.re))
        },
    ));
    cases
}

pub(super) fn transform_cases() -> Vec<OracleCase> {
    let mut cases = Vec::new();
    // closed-form forward transform of the power field (n = 3)
    for t in [-1.0, 0.0, 1.0] {
        cases.push(OracleCase::new(
            &format!("transform/forward-power-t{t}"),
            "quadrature forward transform of the power field vs closed form",
            1e-6,
            move |_| {
                let f = standard_field(&FieldKind::Power { beta: 3.0 }, 3)?;
                let xi = HoroPoint::new(t, &unit_last(3))?;
                Ok((forward(&f, &xi, 1e-9)?, oracle_hf_power(3.0, t, 3)?))
            },
        ));
    }
    cases.push(OracleCase::new(
        "transform/forward-zonal-vs-general",
        "flat-coordinate forward transform vs the zonal reduction, n=2",
        1e-6,
        |_| {
            let zonal = compact_bump(2);
            let general = ScalarField::general(
                2,
                |x: &HPoint| {
                    let u = x.height() - 1.0;
                    if u < 1.0 {
                        (1.0 - u).powi(4)
                    } else {
                        0.0
                    }
                },
                f64::INFINITY,
                Some(2.0),
            );
            let xi = HoroPoint::new(0.4, &[0.6, 0.8])?;
            Ok((forward(&general, &xi, 1e-9)?, forward(&zonal, &xi, 1e-9)?))
        },
    ));
    cases.push(OracleCase::new(
        "transform/dual-of-constant",
        "the dual transform of 1 is 1 (measure normalization)",
        1e-10,
        |_| {
            let one = HoroField::zonal(3, RadialProfile::closed(0.0, |_| 1.0, 0.0), 0.0);
            let x = HPoint::from_polar(1.2, &unit_last(3))?;
            Ok((dual(&one, &x)?, 1.0))
        },
    ));
    // closed-form dual pair at the criterion heights
    for height in [1.2, 2.0, 4.0] {
        cases.push(OracleCase::new(
            &format!("transform/dual-pair-coincide-x{height}"),
            "the two kernels of the dual pair transform identically",
            1e-6,
            move |_| {
                let (phi, psi) = dual_pair_kernels(1.0, 3);
                let r = (height as f64).acosh();
                Ok((
                    dual_zonal(phi.profile().unwrap(), r, 3)?,
                    dual_zonal(psi.profile().unwrap(), r, 3)?,
                ))
            },
        ));
        cases.push(OracleCase::new(
            &format!("transform/dual-pair-closed-form-x{height}"),
            "quadrature dual of the kernel pair vs the closed form",
            1e-6,
            move |_| {
                let (phi, _) = dual_pair_kernels(1.0, 3);
                let r = (height as f64).acosh();
                Ok((
                    dual_zonal(phi.profile().unwrap(), r, 3)?,
                    oracle_dual_pairs(1.0, height, DualPairVariant::A, 3)?,
                ))
            },
        ));
    }
    cases.push(OracleCase::new(
        "transform/dual-pair-alpha3",
        "smooth-kernel dual pair (alpha=3) against the closed form",
        1e-7,
        |_| {
            let (phi, _) = dual_pair_kernels(3.0, 3);
            let height: f64 = 2.0;
            Ok((
                dual_zonal(phi.profile().unwrap(), height.acosh(), 3)?,
                oracle_dual_pairs(3.0, height, DualPairVariant::A, 3)?,
            ))
        },
    ));
    cases.push(OracleCase::new(
        "transform/dual-pair-b-kernel",
        "second closed-form dual (alpha=1) at x height 2",
        1e-6,
        |_| {
            let phi = dual_pair_kernel_b(1.0, 3);
            let height: f64 = 2.0;
            Ok((
                dual_zonal(phi.profile().unwrap(), height.acosh(), 3)?,
                oracle_dual_pairs(1.0, height, DualPairVariant::B, 3)?,
            ))
        },
    ));
    cases.push(OracleCase::new(
        "transform/dual-non-injectivity",
        "the annihilated kernel dualizes to zero",
        1e-8,
        |_| {
            let n = 3;
            let nf = n as f64;
            let phi = RadialProfile::closed(
                0.0,
                move |u: f64| u.powf(1.0 - nf / 2.0) - u.powf(-nf / 2.0),
                nf / 2.0 - 1.0,
            );
            Ok((dual_zonal(&phi, 1.1, n)?.abs(), 0.0))
        },
    ));
    cases.push(OracleCase::new(
        "transform/shifted-dual-at-origin",
        "shifted dual at the origin picks the profile at e^t",
        1e-10,
        |_| {
            let phi = HoroField::zonal(
                3,
                RadialProfile::closed(0.0, |u: f64| u / (1.0 + u.powi(4)), 3.0),
                3.0,
            );
            let t: f64 = 0.8;
            let want = t.exp() / (1.0 + t.exp().powi(4));
            Ok((shifted_dual(&phi, &HPoint::origin(3), t)?, want))
        },
    ));
    cases.push(OracleCase::new(
        "transform/shifted-dual-mean-identity",
        "shifted dual of a forward transform vs the fractional mean form",
        1e-5,
        |_| {
            let n = 3;
            let d = delta(n);
            let f = exp_bump(n);
            let phi = forward_zonal_field(&f, 9.0, 96)?;
            let x = HPoint::from_polar(0.9, &unit_last(n))?;
            let t: f64 = 1.0;
            let lhs = shifted_dual(&phi, &x, t)?;
            let fx = f.clone();
            let xc = x.clone();
            let mean_profile = RadialProfile::closed(
                1.0,
                move |s: f64| spherical_mean(&fx, &xc, s).unwrap_or(0.0),
                25.0,
            );
            let rhs =
                (2.0 * PI * (-t).exp()).powf(d) * rl_integral(&mean_profile, d, t.cosh())?;
            Ok((lhs, rhs))
        },
    ));
    // slice identity (n = 3, zonal bump, lambda in {0, 1})
    for lambda in [0.0, 1.0] {
        cases.push(OracleCase::new(
            &format!("transform/slice-identity-l{lambda}"),
            "spectral transform vs the line integral of the forward data",
            1e-5,
            move |_| {
                let f = exp_bump(3);
                let (lhs, rhs) = fourier_slice_check(&f, lambda, &unit_last(3))?;
                // complex agreement folded into one number
                let denom = lhs.norm().max(1e-12);
                Ok((1.0 + (lhs - rhs).norm() / denom, 1.0))
            },
        ));
    }
    cases.push(OracleCase::new(
        "transform/kernel-family-forward-limit",
        "log10 drift ratio of the kernel family toward the plain forward",
        0.32,
        |_| {
            let n = 3;
            let nf = n as f64;
            let f = compact_bump(n);
            let s = 0.4;
            let xi = HoroPoint::new(s, &unit_last(n))?;
            let plain = lambda_n(n) * ((1.0 - nf) * s).exp() * forward(&f, &xi, 1e-10)?;
            let drift = |alpha: f64| -> crate::error::Result<f64> {
                let kernel = SemyanistyiKernel::new(alpha, KernelVariant::First, n)?;
                Ok((semyanistyi_forward(&f, &xi, &kernel)? - plain).abs())
            };
            let ratio = drift(0.1)? / drift(0.01)?;
            Ok((ratio.log10(), 1.0))
        },
    ));
    cases.push(OracleCase::new(
        "transform/kernel-family-dual-limit",
        "log10 drift ratio of the dual kernel family toward the plain dual",
        0.32,
        |_| {
            let n = 3;
            let f = compact_bump(n);
            let phi = forward_zonal_field(&f, 4.0, 80)?;
            let x = HPoint::from_polar(0.6, &unit_last(n))?;
            let plain = lambda_n(n) * dual(&phi, &x)?;
            let drift = |alpha: f64| -> crate::error::Result<f64> {
                let kernel = SemyanistyiKernel::new(alpha, KernelVariant::First, n)?;
                Ok((semyanistyi_dual(&phi, &x, &kernel)? - plain).abs())
            };
            let ratio = drift(0.1)? / drift(0.01)?;
            Ok((ratio.log10(), 1.0))
        },
    ));
    cases
}

pub(super) fn duality_cases() -> Vec<OracleCase> {
    let mut cases = Vec::new();
    for n in [2usize, 3] {
        cases.push(OracleCase::new(
            &format!("duality/pairing-n{n}"),
            "cone-side pairing of the transform equals the point-side pairing",
            1e-6,
            move |_| {
                let nf = n as f64;
                let f0 = exp_bump(n).profile().unwrap().clone();
                let phi = compact_cone_bump(n);
                let phi0 = phi.profile().unwrap().clone();
                let lhs = integrate_adaptive(
                    |t: f64| {
                        phi0.eval(t.exp())
                            * forward_zonal(&f0, t, n).unwrap()
                            * ((nf - 1.0) * t).exp()
                    },
                    -1.0,
                    1.0,
                    1e-11,
                )?
                .value;
                let rhs = sigma(n)
                    * integrate_semi_infinite(
                        |s: f64| {
                            dual_zonal(&phi0, s.acosh(), n).unwrap()
                                * f0.eval(s)
                                * (s * s - 1.0).powf(nf / 2.0 - 1.0)
                        },
                        1.0,
                        20.0,
                        1e-10,
                    )?
                    .value;
                Ok((lhs, rhs))
            },
        ));
        cases.push(OracleCase::new(
            &format!("duality/special-weight-n{n}"),
            "weighted mass of the transform vs the weighted mass of the field",
            1e-6,
            move |_| {
                let nf = n as f64;
                let d = delta(n);
                let f0 = exp_bump(n).profile().unwrap().clone();
                let lhs = integrate_adaptive(
                    |t: f64| {
                        forward_zonal(&f0, t, n).unwrap()
                            * (t.exp() + 1.0).powf(-2.0 * d)
                            * ((nf - 1.0) * t).exp()
                    },
                    -16.0,
                    16.0,
                    1e-11,
                )?
                .value;
                let rhs = 2f64.powf(-d)
                    * sigma(n)
                    * integrate_semi_infinite(
                        |s: f64| {
                            f0.eval(s) * (s + 1.0).powf(-d) * (s * s - 1.0).powf(nf / 2.0 - 1.0)
                        },
                        1.0,
                        20.0,
                        1e-11,
                    )?
                    .value;
                Ok((lhs, rhs))
            },
        ));
    }
    cases.push(OracleCase::new(
        "duality/kernel-pair-weights",
        "the two kernel-weighted masses of the transform coincide",
        1e-5,
        |_| {
            // int (Hf) phi_0 dxi = int (Hf) psi_0 dxi for the dual pair
            let n = 3;
            let nf = n as f64;
            let alpha = 1.0;
            let f0 = exp_bump(n).profile().unwrap().clone();
            let (phi, psi) = dual_pair_kernels(alpha, n);
            let phi0 = phi.profile().unwrap().clone();
            let psi0 = psi.profile().unwrap().clone();
            let weighted = |k: &RadialProfile| {
                integrate_adaptive(
                    |t: f64| {
                        k.eval(t.exp())
                            * forward_zonal(&f0, t, n).unwrap()
                            * ((nf - 1.0) * t).exp()
                    },
                    -14.0,
                    14.0,
                    1e-10,
                )
                .map(|i| i.value)
            };
            Ok((weighted(&phi0)?, weighted(&psi0)?))
        },
    ));
    cases.push(OracleCase::new(
        "duality/kernel-pair-point-side",
        "kernel-weighted mass equals the closed-form point-side weight",
        1e-5,
        |_| {
            let n = 3;
            let nf = n as f64;
            let alpha = 1.0;
            let d = delta(n);
            let f0 = exp_bump(n).profile().unwrap().clone();
            let (phi, _) = dual_pair_kernels(alpha, n);
            let phi0 = phi.profile().unwrap().clone();
            let lhs = integrate_adaptive(
                |t: f64| {
                    phi0.eval(t.exp())
                        * forward_zonal(&f0, t, n).unwrap()
                        * ((nf - 1.0) * t).exp()
                },
                -14.0,
                14.0,
                1e-10,
            )?
            .value;
            let c = dual_pair_constant(alpha, n);
            let rhs = c * sigma(n)
                * integrate_semi_infinite(
                    |s: f64| {
                        f0.eval(s)
                            * (s - 1.0).powf((alpha - 1.0) / 2.0)
                            * (s + 1.0).powf(0.5 - d)
                            * (s * s - 1.0).powf(nf / 2.0 - 1.0)
                    },
                    1.0,
                    20.0,
                    1e-10,
                )?
                .value;
            Ok((lhs, rhs))
        },
    ));
    cases
}

pub(super) fn inversion_cases() -> Vec<OracleCase> {
    let mut cases = Vec::new();
    for (i, height) in [1.0f64, 1.5, 2.0].into_iter().enumerate() {
        cases.push(OracleCase::new(
            &format!("inversion/fuglede-x{i}"),
            "dual of the forward transform vs the scaled potential",
            1e-4,
            move |_| {
                let f = exp_bump(3);
                let x = HPoint::from_polar(height.acosh(), &unit_last(3))?;
                fuglede_check(&f, &x)
            },
        ));
    }
    cases.push(OracleCase::new(
        "inversion/potential-reduction-oracle",
        "collapsed 1-D potential vs direct 2-D polar quadrature",
        1e-6,
        |_| {
            let f = compact_bump(3);
            let x = HPoint::from_polar(0.8, &unit_last(3))?;
            Ok((
                q_potential(&f, 1.0, &x)?,
                q_potential_direct_2d(&f, 1.0, &x)?,
            ))
        },
    ));
    for alpha in [0.5, 1.5] {
        cases.push(OracleCase::new(
            &format!("inversion/kernel-composition-a{alpha}"),
            "dual kernel family composed with the forward transform vs the potential",
            1e-4,
            move |_| {
                let n = 3;
                let f = compact_bump(n);
                let phi = forward_zonal_field(&f, 4.0, 96)?;
                let kernel = SemyanistyiKernel::new(alpha, KernelVariant::First, n)?;
                let x = HPoint::from_polar(0.7, &unit_last(n))?;
                Ok((
                    semyanistyi_dual(&phi, &x, &kernel)?,
                    q_potential(&f, alpha + 2.0, &x)?,
                ))
            },
        ));
    }
    cases.push(OracleCase::new(
        "inversion/potential-order-reduction",
        "D_4 applied to the order-4 potential vs the order-2 potential",
        1e-3,
        |_| {
            let n = 3;
            let f = compact_bump(n);
            let q4 = ZonalGrid::sample(n, 3.0f64.cosh(), 72, |s| {
                let x = HPoint::from_polar(s.acosh(), &unit_last(n)).unwrap();
                q_potential(&f, 4.0, &x).unwrap()
            });
            let d4 = q4.apply_d(&DAlphaOp::new(4.0, n))?;
            let x = HPoint::from_polar(0.9, &unit_last(n))?;
            Ok((d4.eval(0.9f64.cosh()), q_potential(&f, 2.0, &x)?))
        },
    ));
    cases.push(OracleCase::new(
        "inversion/b-operator-eigenfunction",
        "the order-reduction companion is a Laplace eigenfunction (n=4)",
        1e-3,
        |_| {
            let n = 4;
            let f = compact_bump(n);
            let grid = ZonalGrid::sample(n, 3.2f64.cosh(), 72, |s| {
                let x = HPoint::from_polar(s.acosh(), &unit_last(n)).unwrap();
                b_operator(&f, &x).unwrap()
            });
            let lap = grid.laplace()?;
            let factor = n as f64 * (n as f64 - 2.0) / 4.0;
            Ok((-lap.eval(1.8), factor * grid.eval(1.8)))
        },
    ));
    cases.push(OracleCase::new(
        "inversion/darboux-relation",
        "base-point Laplacian of the mean equals the radial one",
        1e-4,
        |_| {
            let n = 3;
            let f = exp_bump(n);
            let nf = n as f64;
            let mean_at = |rho: f64, r: f64| {
                let x = HPoint::from_polar(rho, &unit_last(n)).unwrap();
                spherical_mean(&f, &x, r.cosh()).unwrap()
            };
            let h = 0.02;
            let lap = |g: &dyn Fn(f64) -> f64, at: f64| {
                let (f2p, f1p, f0, f1m, f2m) =
                    (g(at + 2.0 * h), g(at + h), g(at), g(at - h), g(at - 2.0 * h));
                let d1 = (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h);
                let d2 = (-f2p + 16.0 * f1p - 30.0 * f0 + 16.0 * f1m - f2m) / (12.0 * h * h);
                d2 + (nf - 1.0) / at.tanh() * d1
            };
            let (rho, r) = (0.8, 1.0);
            Ok((
                lap(&|v| mean_at(v, r), rho),
                lap(&|v| mean_at(rho, v), r),
            ))
        },
    ));
    cases.push(OracleCase::new(
        "inversion/log-dual-decomposition",
        "log-kernel dual of the transform vs the log potential plus mass term",
        1e-3,
        |_| {
            let n = 2;
            let f = compact_bump(n);
            let phi = forward_zonal_field(&f, 4.0, 96)?;
            let x = HPoint::from_polar(0.6, &unit_last(n))?;
            let lhs = crate::transform::dual_log(&phi, &x)?;
            let q = crate::inversion::q_potential_log(&f, &x)?;
            let mass = integrate_hn(&f, 1e-9)?;
            Ok((lhs, q + crate::constants::log_dual_correction(n) * mass))
        },
    ));
    cases.push(OracleCase::new(
        "inversion/mass-identity",
        "cone-side mass of the transform equals the field mass",
        1e-6,
        |_| {
            let n = 2;
            let f = compact_bump(n);
            let phi = forward_zonal_field(&f, 4.0, 96)?;
            Ok((integrate_gamma(&phi, 1e-9)?, integrate_hn(&f, 1e-9)?))
        },
    ));
    // full mean-value inversion roundtrips at the criterion points
    for n in [3usize, 2] {
        let tol = if n == 3 { 1e-2 } else { 2e-2 };
        for height in [1.0f64, 1.5, 2.0] {
            cases.push(OracleCase::new(
                &format!("inversion/mean-value-n{n}-x{height}"),
                "reconstruction through mean values and fractional derivatives",
                tol,
                move |_| {
                    let f = exp_bump(n);
                    let phi = forward_zonal_field(&f, 10.0, 128)?;
                    let x = HPoint::from_polar(height.acosh(), &unit_last(n))?;
                    let got = invert_mean_value(&phi, &x, &MeanValueConfig::default())?;
                    Ok((got, (-3.0 * (height - 1.0)).exp()))
                },
            ));
        }
    }
    // Laplace-polynomial inversion roundtrips
    for height in [1.0f64, 1.5, 2.0] {
        cases.push(OracleCase::new(
            &format!("inversion/laplace-poly-n3-x{height}"),
            "reconstruction by the degree-1 Laplace polynomial",
            1e-2,
            move |_| {
                let f = exp_bump(3);
                let phi = forward_zonal_field(&f, 10.0, 128)?;
                let x = HPoint::from_polar(height.acosh(), &unit_last(3))?;
                let got = invert_bl(&phi, &x, &BlConfig::default())?;
                Ok((got, (-3.0 * (height - 1.0)).exp()))
            },
        ));
    }
    cases.push(OracleCase::new(
        "inversion/laplace-poly-n2",
        "reconstruction through the log-kernel dual with the mass correction",
        5e-2,
        |_| {
            let f = compact_bump(2);
            let phi = forward_zonal_field(&f, 4.0, 128)?;
            let height: f64 = 1.3;
            let x = HPoint::from_polar(height.acosh(), &unit_last(2))?;
            let got = invert_bl(&phi, &x, &BlConfig::default())?;
            Ok((got, (2.0 - height).powi(4)))
        },
    ));
    cases.push(OracleCase::new(
        "inversion/laplace-poly-n5",
        "reconstruction by the degree-2 Laplace polynomial (4th order)",
        5e-2,
        |_| {
            let f = exp_bump(5);
            let phi = forward_zonal_field(&f, 10.0, 160)?;
            let height: f64 = 1.5;
            let x = HPoint::from_polar(height.acosh(), &unit_last(5))?;
            let got = invert_bl(&phi, &x, &BlConfig::default())?;
            Ok((got, (-3.0 * (height - 1.0)).exp()))
        },
    ));
    cases.push(OracleCase::new(
        "inversion/methods-agree",
        "both inversion pipelines agree on shared data",
        2e-2,
        |_| {
            let f = exp_bump(3);
            let phi = forward_zonal_field(&f, 10.0, 128)?;
            let x = HPoint::from_polar(1.5f64.acosh(), &unit_last(3))?;
            Ok((
                invert_mean_value(&phi, &x, &MeanValueConfig::default())?,
                invert_bl(&phi, &x, &BlConfig::default())?,
            ))
        },
    ));
    cases.push(OracleCase::new(
        "inversion/eta-stability",
        "mean-value reconstruction is stable under halving the grid offset",
        1e-3,
        |_| {
            let f = exp_bump(3);
            let phi = forward_zonal_field(&f, 10.0, 128)?;
            let x = HPoint::from_polar(1.2f64.acosh(), &unit_last(3))?;
            let base = invert_mean_value(&phi, &x, &MeanValueConfig::default())?;
            let halved = invert_mean_value(
                &phi,
                &x,
                &MeanValueConfig {
                    eta: 5e-4,
                    ..Default::default()
                },
            )?;
            Ok((base, halved))
        },
    ));
    cases
}
