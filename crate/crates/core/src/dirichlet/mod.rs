//! Primitive Dirichlet characters to odd square-free moduli.
//!
//! A character is stored as one exponent per prime factor against a fixed
//! primitive root of that factor, so `chi(k)` is an exact fraction of a turn
//! and complex numbers only appear at the very end. Family sums over all
//! primitive characters have integer closed forms; the brute-force paths in
//! [`oracle`] enumerate characters one by one and are kept for testing.

mod character;
mod moment;
pub mod oracle;
mod sums;

pub use character::{
    char_value, primitive_root, CharacterTables, DirichletCharacter, PrimitiveFamily, RootChoice,
};
pub use moment::{dirichlet_second_moment, SecondMoment};
pub use sums::{family_sum_chi, gauss_sum, primitive_sum_divisor_identity, FamilySum};

use num_complex::Complex64;
use num_rational::Ratio;
use std::f64::consts::TAU;

/// `exp(2 pi i t)` for an exact turn `t`.
pub fn turn_to_complex(t: Ratio<u64>) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (*t.numer() as f64) / (*t.denom() as f64))
}
