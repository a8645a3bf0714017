//! Numerical horospherical Radon transform on real hyperbolic space H^n.
//!
//! The library works in the hyperboloid model of H^n and provides:
//!
//! - exact geometry of the model: the Minkowski form, points,
//!   horospheres, coordinate systems, and distances ([`lorentz`]);
//! - the shared numerical engines behind everything else: Gauss-Legendre
//!   and endpoint-weighted Gauss-Jacobi rules, adaptive and log-singular
//!   integration, semi-infinite integration with declared tail decay,
//!   Chebyshev spectral differentiation, Richardson extrapolation, and
//!   product sphere quadrature ([`numerics`]);
//! - function representations on H^n and on the light cone, invariant
//!   integration, spherical means, and hyperbolic convolution
//!   ([`fields`]);
//! - upper-limit Riemann-Liouville fractional integrals and derivatives
//!   on half-lines ([`fractional`]);
//! - spherical functions, the Fourier and spherical transforms, and the
//!   closed-form spectral symbol of the potential kernel ([`harmonic`]);
//! - the horospherical transform, its dual and shifted dual, the
//!   fractional kernel family interpolating between them, and the
//!   log-kernel dual operator ([`transform`]);
//! - potentials, the radial Beltrami-Laplace calculus, and two full
//!   inversion pipelines: mean-value/fractional-derivative inversion and
//!   inversion by polynomials of the Beltrami-Laplace operator
//!   ([`inversion`]);
//! - a closed-form oracle corpus with a suite runner producing CSV/JSON
//!   reports ([`oracle`]), driven by the `horoxform` CLI.
//!
//! The guide in `book/` walks through the concepts chapter by chapter;
//! its code snippets compile and run as doc-tests of this crate.

pub mod constants;
pub mod error;
pub mod fields;
pub mod fractional;
pub mod harmonic;
pub mod inversion;
pub mod lorentz;
pub mod numerics;
pub mod oracle;
pub mod transform;

pub use error::{Error, Result};
pub use fields::{HoroField, RadialProfile, ScalarField};
pub use lorentz::{HoroCoords, HoroPoint, HPoint, LorentzVector};

#[cfg(doctest)]
mod book {
    //! Each chapter of the guide is attached here so that its code
    //! blocks run under `cargo test --doc`.
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hyperboloid.md")]
    mod hyperboloid {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/fractional.md")]
    mod fractional {}
    #[doc = include_str!("../../../book/src/harmonic.md")]
    mod harmonic {}
    #[doc = include_str!("../../../book/src/transform.md")]
    mod transform {}
    #[doc = include_str!("../../../book/src/inversion.md")]
    mod inversion {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
}
