//! One-parameter families of elliptic curves `y^2 = f(x, T)` over `Q(T)`.
//!
//! Traces are complete Legendre sums, including at singular fibers; the
//! singular flag only gates the Hasse check. Primes 2 and 3 are excluded
//! from every scan.

mod bias;
mod closed_form;
mod expansion;
mod moments;
mod surface;
mod traces;

pub use bias::{
    bias_statistics, first_moment, michel_ratio, rosen_silverman, table1_row, BiasReport, PrimeRange,
    Table1Row,
};
pub use closed_form::{c0_c1, c0_c1_brute, closed_form_a2};
pub use expansion::{expansion_terms, ExpansionTerms};
pub use moments::{moment, moment_series, Moment, MomentRecord, MomentSeries};
pub use surface::{cubic_discriminant_mod, EllipticSurface, FamilyKind};
pub use traces::{frobenius_trace, traces, traces_brute, Trace};
