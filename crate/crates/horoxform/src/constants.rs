//! Normalizing constants of the transform family, computed from their
//! gamma-function formulas at runtime (never hard-coded decimals).

use crate::numerics::special::{digamma, gamma};
use std::f64::consts::PI;

/// Half-dimension parameter `delta = (n-1)/2`.
pub fn delta(n: usize) -> f64 {
    (n as f64 - 1.0) / 2.0
}

/// Surface area of the unit sphere S^{n-1}.
pub fn sigma(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0)
}

/// Prefactor of the zonal forward transform: `(2 pi)^delta`.
pub fn forward_zonal_prefactor(n: usize) -> f64 {
    (2.0 * PI).powf(delta(n))
}

/// Prefactor of the zonal dual transform.
pub fn dual_zonal_prefactor(n: usize) -> f64 {
    let nf = n as f64;
    2f64.powf((nf - 3.0) / 2.0) * gamma(nf / 2.0) / (PI.sqrt() * gamma((nf - 1.0) / 2.0))
}

/// Closed-form constant for the forward transform of the power field
/// `x_{n+1}^{-beta}`.
pub fn power_forward_constant(beta: f64, n: usize) -> f64 {
    let d = delta(n);
    2f64.powf(beta) * PI.powf(d) * gamma(beta - d) / gamma(beta)
}

/// Closed-form constant for the dual transform of the kernels
/// `|u-1|^{alpha-1} u^{-(delta+alpha/2)}` and its power-shifted twin.
pub fn dual_pair_constant(alpha: f64, n: usize) -> f64 {
    let d = delta(n);
    2f64.powf(d + alpha / 2.0 - 1.0) * gamma(d + 0.5) * gamma(alpha / 2.0)
        / (PI.sqrt() * gamma(d + alpha / 2.0))
}

/// Closed-form constant for the dual transform of
/// `(u-1)^{alpha-1} (u+1)^{1-alpha-2 delta}`.
pub fn dual_pair_constant_b(alpha: f64, n: usize) -> f64 {
    let d = delta(n);
    2f64.powf(-d) * gamma(d + 0.5) * gamma(alpha / 2.0) / (PI.sqrt() * gamma(d + alpha / 2.0))
}

/// Limit constant tying the kernel family to the plain transforms:
/// `lambda_n = 2^{1-n} pi^{1-n/2} / Gamma(n/2)`.
pub fn lambda_n(n: usize) -> f64 {
    let nf = n as f64;
    2f64.powf(1.0 - nf) * PI.powf(1.0 - nf / 2.0) / gamma(nf / 2.0)
}

/// Normalizer of the fractional kernel family (excluded at odd integers).
pub fn kernel_gamma_alpha(alpha: f64, n: usize) -> f64 {
    let nf = n as f64;
    PI.powf((1.0 - nf) / 2.0) * gamma((1.0 - alpha) / 2.0)
        / (2f64.powf(alpha + nf - 1.0) * gamma(nf / 2.0) * gamma(alpha / 2.0))
}

/// Normalizer of the log-kernel dual operator:
/// `gamma'_n = -pi^{-n/2} / (2^{n-1} Gamma(n/2))`.
pub fn kernel_gamma_log(n: usize) -> f64 {
    let nf = n as f64;
    -PI.powf(-nf / 2.0) / (2f64.powf(nf - 1.0) * gamma(nf / 2.0))
}

/// Normalizer of the potential kernel of order `alpha`.
pub fn potential_zeta(n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    gamma((nf - alpha) / 2.0) / (2f64.powf(alpha / 2.0 + 1.0) * PI.powf(nf / 2.0) * gamma(alpha / 2.0))
}

/// Normalizer of the logarithmic potential of order `n`.
pub fn potential_zeta_log(n: usize) -> f64 {
    let nf = n as f64;
    -2f64.powf(-1.0 - nf / 2.0) / (PI.powf(nf / 2.0) * gamma(nf / 2.0))
}

/// Constant in the decomposition of the log-kernel dual operator.
pub fn log_dual_correction(n: usize) -> f64 {
    let nf = n as f64;
    (digamma(nf / 2.0) - digamma(0.5) - 2f64.ln())
        / (PI.powf(nf / 2.0) * 2f64.powf(nf / 2.0 + 1.0) * gamma(nf / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Independent decimals from a 30-digit mpmath evaluation of the same
    // formulas, plus elementary closed forms where one exists.

    #[test]
    fn sigma_values() {
        assert_relative_eq!(sigma(2), 2.0 * PI, max_relative = 1e-13);
        assert_relative_eq!(sigma(3), 4.0 * PI, max_relative = 1e-13);
        assert_relative_eq!(sigma(4), 2.0 * PI * PI, max_relative = 1e-13);
        assert_relative_eq!(sigma(5), 26.31894506957162, max_relative = 1e-13);
        assert_relative_eq!(sigma(7), 33.07336179231981, max_relative = 1e-13);
    }

    #[test]
    fn power_forward_constants() {
        // n=3, beta=3: 4 pi
        assert_relative_eq!(power_forward_constant(3.0, 3), 4.0 * PI, max_relative = 1e-13);
        // n=2, beta=2 and beta=1: both 2 pi
        assert_relative_eq!(power_forward_constant(2.0, 2), 2.0 * PI, max_relative = 1e-13);
        assert_relative_eq!(power_forward_constant(1.0, 2), 2.0 * PI, max_relative = 1e-13);
    }

    #[test]
    fn dual_pair_constants() {
        assert_relative_eq!(dual_pair_constant(1.0, 3), 2f64.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(dual_pair_constant(2.0, 3), 1.0, max_relative = 1e-13);
        assert_relative_eq!(
            dual_pair_constant(0.5, 3),
            2.378414230005442,
            max_relative = 1e-13
        );
        assert_relative_eq!(dual_pair_constant(1.0, 2), 1.0, max_relative = 1e-13);
        assert_relative_eq!(dual_pair_constant_b(1.0, 3), 0.5, max_relative = 1e-13);
        assert_relative_eq!(
            dual_pair_constant_b(3.0, 3),
            1.0 / 6.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            dual_pair_constant_b(1.0, 2),
            2f64.sqrt() / 2.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn lambda_values() {
        assert_relative_eq!(lambda_n(2), 0.5, max_relative = 1e-13);
        assert_relative_eq!(lambda_n(3), 1.0 / (2.0 * PI), max_relative = 1e-13);
        assert_relative_eq!(lambda_n(4), 0.039788735772973836, max_relative = 1e-13);
        assert_relative_eq!(lambda_n(5), 0.008443431970194814, max_relative = 1e-13);
    }

    #[test]
    fn kernel_gamma_values() {
        assert_relative_eq!(
            kernel_gamma_alpha(0.5, 3),
            0.06349363593424097,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            kernel_gamma_alpha(1.5, 3),
            -0.12698727186848194,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            kernel_gamma_alpha(0.5, 2),
            0.19947114020071634,
            max_relative = 1e-12
        );
        // residue: (alpha - 1) gamma_alpha -> gamma'_n as alpha -> 1
        for n in [2usize, 3, 4] {
            let eps = 1e-6;
            let approx_res = eps * kernel_gamma_alpha(1.0 + eps, n);
            assert_relative_eq!(approx_res, kernel_gamma_log(n), max_relative = 1e-4);
            assert_relative_eq!(
                kernel_gamma_log(n),
                [-0.15915494309189535, -0.05066059182116889, -0.012665147955292222]
                    [n - 2],
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn potential_zeta_values() {
        assert_relative_eq!(potential_zeta(3, 1.0), 0.035822448015672266, max_relative = 1e-12);
        assert_relative_eq!(potential_zeta(3, 2.0), 0.07957747154594767, max_relative = 1e-12);
        assert_relative_eq!(potential_zeta(3, 2.5), 0.15101416722078361, max_relative = 1e-12);
        // sign change past alpha = n
        assert_relative_eq!(potential_zeta(3, 3.5), -0.14237752226274044, max_relative = 1e-12);
        assert_relative_eq!(potential_zeta(2, 1.0), 0.11253953951963826, max_relative = 1e-12);
        // log-potential normalizer and its limit derivation
        assert_relative_eq!(potential_zeta_log(2), -1.0 / (4.0 * PI), max_relative = 1e-13);
        assert_relative_eq!(potential_zeta_log(3), -0.035822448015672266, max_relative = 1e-12);
        for n in [2usize, 3, 4] {
            let eps = 1e-6;
            // zeta_{n, n-eps} * (-eps/2) -> zeta'_n
            let lim = potential_zeta(n, n as f64 - eps) * (-eps / 2.0);
            assert_relative_eq!(lim, potential_zeta_log(n), max_relative = 1e-4);
        }
    }

    #[test]
    fn log_dual_correction_values() {
        // n=2 reduces to log(2)/(4 pi)
        assert_relative_eq!(
            log_dual_correction(2),
            2f64.ln() / (4.0 * PI),
            max_relative = 1e-12
        );
        assert_relative_eq!(log_dual_correction(3), 0.04681466718852609, max_relative = 1e-11);
        assert_relative_eq!(log_dual_correction(4), 0.02144395955187758, max_relative = 1e-11);
    }

    #[test]
    fn zonal_prefactors() {
        assert_relative_eq!(forward_zonal_prefactor(3), 2.0 * PI, max_relative = 1e-13);
        assert_relative_eq!(dual_zonal_prefactor(3), 0.5, max_relative = 1e-13);
        assert_relative_eq!(dual_zonal_prefactor(2), 0.22507907903927652, max_relative = 1e-12);
        assert_relative_eq!(dual_zonal_prefactor(5), 1.5, max_relative = 1e-13);
    }
}
