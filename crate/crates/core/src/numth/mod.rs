//! Integer substrate: modular arithmetic, primes, quadratic symbols,
//! square-free moduli and small integer polynomials.
//!
//! Everything here is exact. Nothing in this module touches floating point
//! except the Brun–Titchmarsh bound, which is a real-valued inequality.

mod legendre;
mod modular;
mod poly;
mod primality;
mod sieve;
mod squarefree;

pub use legendre::{jacobi_symbol, legendre_euler, legendre_symbol, LegendreTable};
pub use modular::{euler_phi, gcd, inv_mod, mobius, mul_mod, pow_mod, reduce};
pub use poly::{cubic_root_count, IntPolynomial};
pub use primality::{is_odd_prime, is_prime, require_odd_prime};
pub use sieve::{
    brun_titchmarsh_bound, for_each_prime_below, for_each_prime_in, prime_count, primes_below, primes_in_class_count, primes_in_range,
    PrimeTable,
};
pub use squarefree::{squarefree_enumerate, FactoredModulus};
