//! The five Katz–Sarnak 1-level density kernels.
//!
//! With `K(y) = sin(pi y)/(pi y)` and `K_e(x, x) = K(0) + e K(2x)`:
//!
//! | group | `W(x)`                      | `W_hat(u)`              |
//! |-------|-----------------------------|-------------------------|
//! | U     | `K_0`                       | `delta`                 |
//! | USp   | `K_{-1}`                    | `delta - I/2`           |
//! | SO(even) | `K_1`                    | `delta + I/2`           |
//! | SO(odd)  | `K_{-1} + delta(x)`      | `delta - I/2 + 1`       |
//! | O     | average of the two SO rows  | `delta + 1/2`           |
//!
//! where `I` is the indicator of `[-1, 1]`. Point masses are carried as
//! explicit coefficients and never sampled.

use crate::quad::panelled;
use crate::testfn::TestFunctionPair;
use crate::{Error, Result};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryType {
    Unitary,
    Symplectic,
    Orthogonal,
    SOEven,
    SOOdd,
}

impl SymmetryType {
    pub const ALL: [SymmetryType; 5] = [
        SymmetryType::Unitary,
        SymmetryType::Symplectic,
        SymmetryType::Orthogonal,
        SymmetryType::SOEven,
        SymmetryType::SOOdd,
    ];
}

impl fmt::Display for SymmetryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryType::Unitary => "unitary",
            SymmetryType::Symplectic => "symplectic",
            SymmetryType::Orthogonal => "orthogonal",
            SymmetryType::SOEven => "so-even",
            SymmetryType::SOOdd => "so-odd",
        })
    }
}

impl FromStr for SymmetryType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "unitary" | "u" => Ok(SymmetryType::Unitary),
            "symplectic" | "usp" => Ok(SymmetryType::Symplectic),
            "orthogonal" | "o" => Ok(SymmetryType::Orthogonal),
            "so-even" | "soeven" => Ok(SymmetryType::SOEven),
            "so-odd" | "soodd" => Ok(SymmetryType::SOOdd),
            _ => Err(Error::InvalidArgument(format!("unknown symmetry type '{s}'"))),
        }
    }
}

/// `W(x)` split into its smooth value and the mass of `delta(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityValue {
    pub smooth: f64,
    pub delta_mass: f64,
}

fn sinc_2x(x: f64) -> f64 {
    // K(2x) = sin(2 pi x)/(2 pi x)
    let t = 2.0 * PI * x;
    if t.abs() < 1e-4 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

pub fn w1_density(group: SymmetryType, x: f64) -> DensityValue {
    let k = sinc_2x(x);
    let (smooth, delta_mass) = match group {
        SymmetryType::Unitary => (1.0, 0.0),
        SymmetryType::Symplectic => (1.0 - k, 0.0),
        SymmetryType::SOEven => (1.0 + k, 0.0),
        SymmetryType::SOOdd => (1.0 - k, 1.0),
        SymmetryType::Orthogonal => (1.0, 0.5),
    };
    DensityValue { smooth, delta_mass }
}

/// `W_hat(u) = delta_mass delta(u) + constant + indicator I(u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HatDensity {
    pub delta_mass: f64,
    pub constant: f64,
    pub indicator: f64,
}

impl HatDensity {
    /// The piecewise-constant part at `u`.
    pub fn smooth(&self, u: f64) -> f64 {
        let i = if u.abs() <= 1.0 { 1.0 } else { 0.0 };
        self.constant + self.indicator * i
    }
}

pub fn w1_hat(group: SymmetryType) -> HatDensity {
    let (constant, indicator) = match group {
        SymmetryType::Unitary => (0.0, 0.0),
        SymmetryType::Symplectic => (0.0, -0.5),
        SymmetryType::SOEven => (0.0, 0.5),
        SymmetryType::SOOdd => (1.0, -0.5),
        SymmetryType::Orthogonal => (0.5, 0.0),
    };
    HatDensity {
        delta_mass: 1.0,
        constant,
        indicator,
    }
}

/// `int phi(x) W(x) dx`, evaluated on the transform side:
/// `delta_mass phi_hat(0) + constant phi(0) + indicator int_{-1}^{1} phi_hat`.
pub fn predicted_average(group: SymmetryType, pair: &TestFunctionPair) -> f64 {
    let h = w1_hat(group);
    h.delta_mass * pair.phi_hat(0.0) + h.constant * pair.phi(0.0) + h.indicator * pair.hat_mass(1.0)
}

/// Half-width used by [`predicted_average_quadrature`]: about 2000, adjusted
/// so that `sigma T` is an integer, which makes the Fejér tail exactly
/// `1/(4 pi^2 T)` up to `O(T^-3)`.
pub fn quadrature_cutoff(pair: &TestFunctionPair) -> f64 {
    let s = pair.sigma();
    (2000.0 * s).ceil() / s
}

/// `int phi(x) W(x) dx` by direct adaptive quadrature over `[-T, T]`, plus
/// the point mass and, for the Fejér pair, the analytic tail beyond `T`.
pub fn predicted_average_quadrature(group: SymmetryType, pair: &TestFunctionPair) -> f64 {
    let t = quadrature_cutoff(pair);
    let f = |x: f64| pair.phi(x) * w1_density(group, x).smooth;
    let panels = (t * (pair.sigma() + 1.0)).ceil() as usize;
    let body = 2.0 * panelled(&f, 0.0, t, panels, 1e-10);
    let tail = match pair {
        // the smooth part is 1 + O(1/x) far out, so the tail is that of phi
        TestFunctionPair::Fejer { .. } => 1.0 / (4.0 * PI * PI * t),
        _ => 0.0,
    };
    body + tail + w1_density(group, 0.0).delta_mass * pair.phi(0.0)
}

/// Result of matching a symmetry constant to the nearest of `0, 1, -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub group: SymmetryType,
    /// Distance from the estimate to the chosen anchor.
    pub margin: f64,
    /// Always false for the orthogonal anchor: SO(even), SO(odd) and O share
    /// the same constant and are not separated here.
    pub flavor_determined: bool,
}

pub fn classify_symmetry(c: f64) -> Result<Classification> {
    if !c.is_finite() || c.abs() > 1.5 {
        return Err(Error::OutOfModel(c));
    }
    let anchors = [
        (0.0, SymmetryType::Unitary),
        (1.0, SymmetryType::Symplectic),
        (-1.0, SymmetryType::Orthogonal),
    ];
    let (a, group) = anchors
        .iter()
        .copied()
        .min_by(|x, y| (c - x.0).abs().total_cmp(&(c - y.0).abs()))
        .expect("anchors nonempty");
    Ok(Classification {
        group,
        margin: (c - a).abs(),
        flavor_determined: group != SymmetryType::Orthogonal,
    })
}
