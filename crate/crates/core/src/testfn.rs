//! Even test functions `phi` paired with compactly supported transforms
//! `phi_hat(u) = int phi(x) e^{-2 pi i x u} dx`.

use crate::quad::simpson;
use crate::{Error, Result};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Which side of a pair to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Phi,
    PhiHat,
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A user-supplied pair with declared support.
#[derive(Clone)]
pub struct CustomPair {
    name: String,
    phi: RealFn,
    phi_hat: RealFn,
    sigma: f64,
}

impl fmt::Debug for CustomPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomPair")
            .field("name", &self.name)
            .field("sigma", &self.sigma)
            .finish_non_exhaustive()
    }
}

/// An even test function and its Fourier transform, supported in `[-sigma, sigma]`.
#[derive(Debug, Clone)]
pub enum TestFunctionPair {
    /// `phi(x) = sin^2(pi sigma x) / (2 pi x)^2`, `phi_hat(u) = (sigma - |u|)/4` on `|u| <= sigma`.
    Fejer { sigma: f64 },
    /// The zero function, with a nominal support radius.
    Zero { sigma: f64 },
    Custom(CustomPair),
}

impl TestFunctionPair {
    pub fn fejer(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
        }
        Ok(TestFunctionPair::Fejer { sigma })
    }

    pub fn zero(sigma: f64) -> Self {
        TestFunctionPair::Zero { sigma: sigma.abs() }
    }

    /// Wraps a user pair. The transform must vanish at `|u| >= sigma`; both
    /// sides must be even. Both are spot-checked here; use
    /// [`TestFunctionPair::self_test`] for the Fourier consistency check.
    pub fn custom<F, G>(name: &str, phi: F, phi_hat: G, sigma: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
        }
        for k in 1..=16 {
            let x = k as f64 * 0.37;
            if (phi(x) - phi(-x)).abs() > 1e-12 || (phi_hat(x) - phi_hat(-x)).abs() > 1e-12 {
                return Err(Error::InvalidArgument(format!("{name}: pair is not even")));
            }
            let u = sigma * (1.0 + k as f64 * 0.25);
            if phi_hat(u) != 0.0 || phi_hat(sigma) != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "{name}: transform does not vanish outside [-{sigma}, {sigma}]"
                )));
            }
        }
        Ok(TestFunctionPair::Custom(CustomPair {
            name: name.to_string(),
            phi: Arc::new(phi),
            phi_hat: Arc::new(phi_hat),
            sigma,
        }))
    }

    pub fn sigma(&self) -> f64 {
        match self {
            TestFunctionPair::Fejer { sigma } | TestFunctionPair::Zero { sigma } => *sigma,
            TestFunctionPair::Custom(c) => c.sigma,
        }
    }

    pub fn name(&self) -> String {
        match self {
            TestFunctionPair::Fejer { .. } => "fejer".into(),
            TestFunctionPair::Zero { .. } => "zero".into(),
            TestFunctionPair::Custom(c) => c.name.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TestFunctionPair::Zero { .. })
    }

    pub fn phi(&self, x: f64) -> f64 {
        match self {
            TestFunctionPair::Fejer { sigma } => {
                // sin^2(pi s x)/(2 pi x)^2 = (s^2/4) (sin t / t)^2 with t = pi s x
                let t = PI * sigma * x;
                let sinc = if t.abs() < 1e-4 {
                    let t2 = t * t;
                    1.0 - t2 / 6.0 + t2 * t2 / 120.0
                } else {
                    t.sin() / t
                };
                0.25 * sigma * sigma * sinc * sinc
            }
            TestFunctionPair::Zero { .. } => 0.0,
            TestFunctionPair::Custom(c) => (c.phi)(x),
        }
    }

    pub fn phi_hat(&self, u: f64) -> f64 {
        match self {
            TestFunctionPair::Fejer { sigma } => {
                let a = u.abs();
                if a < *sigma {
                    0.25 * (sigma - a)
                } else {
                    0.0
                }
            }
            TestFunctionPair::Zero { .. } => 0.0,
            TestFunctionPair::Custom(c) => {
                if u.abs() >= c.sigma {
                    0.0
                } else {
                    (c.phi_hat)(u)
                }
            }
        }
    }

    pub fn eval(&self, side: Side, x: f64) -> f64 {
        match side {
            Side::Phi => self.phi(x),
            Side::PhiHat => self.phi_hat(x),
        }
    }

    /// `int phi = phi_hat(0)`.
    pub fn integral_phi(&self) -> f64 {
        self.phi_hat(0.0)
    }

    /// `int_{-a}^{a} phi_hat(u) du`, exact for the built-in pairs.
    pub fn hat_mass(&self, a: f64) -> f64 {
        let a = a.abs().min(self.sigma());
        match self {
            TestFunctionPair::Fejer { sigma } => 0.5 * (sigma * a - 0.5 * a * a),
            TestFunctionPair::Zero { .. } => 0.0,
            TestFunctionPair::Custom(_) => {
                let f = |u: f64| self.phi_hat(u);
                2.0 * simpson(f, 0.0, a, 4096)
            }
        }
    }

    /// `int_{-T}^{T} phi(x) cos(2 pi x u) dx` by composite Simpson with a
    /// step resolving both oscillations.
    pub fn fourier_quadrature(&self, u: f64, t: f64) -> f64 {
        let freq = self.sigma() + u.abs() + 1.0;
        let n = (t * freq * 64.0).ceil() as usize;
        // even integrand: twice the half-line integral
        2.0 * simpson(|x| self.phi(x) * (2.0 * PI * x * u).cos(), 0.0, t, n)
    }

    /// Largest deviation between `phi_hat(u)` and the quadrature transform of
    /// `phi` over `|x| <= t`, checked at `u = 0, sigma/4, sigma/2, 3 sigma/4`.
    pub fn self_test(&self, t: f64) -> f64 {
        let s = self.sigma();
        [0.0, 0.25 * s, 0.5 * s, 0.75 * s]
            .iter()
            .map(|&u| (self.fourier_quadrature(u, t) - self.phi_hat(u)).abs())
            .fold(0.0, f64::max)
    }
}

/// Free-function form of [`TestFunctionPair::eval`].
pub fn pair_eval(pair: &TestFunctionPair, side: Side, x: f64) -> f64 {
    pair.eval(side, x)
}
