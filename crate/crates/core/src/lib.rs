//! Prime-side computations for the 1-level density of low-lying zeros in
//! families of L-functions.
//!
//! The crate is organised bottom-up:
//!
//! * [`numth`]: exact modular arithmetic, prime tables, quadratic symbols,
//!   square-free moduli and small polynomials over `Z`.
//! * [`dirichlet`]: primitive characters to odd square-free moduli, Gauss
//!   sums and exact family character sums.
//! * [`testfn`]: even test functions paired with compactly supported Fourier
//!   transforms.
//! * [`rmt`]: the five classical 1-level density kernels.
//! * [`density`]: the explicit-formula prime side for Dirichlet families.
//! * [`elliptic`]: one-parameter elliptic surfaces: Frobenius traces, exact
//!   moments, closed forms and bias statistics.
//! * [`satake`]: abstract Satake families, symmetry constants, convolutions
//!   and rank-bound arithmetic.
//!
//! Integer quantities are computed exactly. Floating-point reductions run in
//! a fixed order so results do not depend on the rayon thread count.

pub mod density;
pub mod dirichlet;
pub mod elliptic;
mod error;
pub mod numth;
pub mod quad;
pub mod rmt;
pub mod satake;
pub mod testfn;

pub use error::{Error, Result};

pub use density::{DensityReport, Normalization};
pub use dirichlet::{DirichletCharacter, PrimitiveFamily};
pub use elliptic::{BiasReport, EllipticSurface, FamilyKind, MomentSeries};
pub use numth::{FactoredModulus, IntPolynomial, PrimeTable};
pub use rmt::SymmetryType;
pub use satake::{convolve, symmetry_constant, SatakeFamily, SymmetryEstimate};
pub use testfn::{Side, TestFunctionPair};
