//! Shared numerical engines: Gauss rules, adaptive and singular
//! integration, Chebyshev spectral differentiation, sampled curves,
//! Richardson extrapolation, sphere quadrature, and gamma-family
//! special functions.

pub mod adaptive;
pub mod chebyshev;
pub mod curve;
pub mod gauss;
pub mod richardson;
pub mod special;
pub mod spline;
pub mod sphere;

pub use adaptive::{integrate_adaptive, integrate_log_singular, integrate_semi_infinite, Integral};
pub use curve::{spectral_derivative, SampledCurve, Tail};
pub use gauss::{gauss_jacobi_left, gauss_legendre, QuadratureRule};
pub use richardson::{richardson_limit, RichardsonResult};
pub use sphere::{sphere_quadrature, SphereRule};
