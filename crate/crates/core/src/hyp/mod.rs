//! Engines for the Gauss hypergeometric values behind the blocks.
//!
//! * [`taylor`]: the defining power series, machine or extended precision.
//! * [`euler`]: Euler's integral, for t ≤ 1 in either channel.
//! * [`barnes`]: Mellin–Barnes integral for the u-channel at t ≥ 1.
//! * [`connection`]: 1/w connection plus a quadratic transformation for the
//!   t-channel at t ≥ 1.
//! * [`ode`]: analytic continuation of the hypergeometric ODE, used only to
//!   cross-check the others.
//!
//! For t > 1 the engines return values scaled by e^{−πt} (see [`ScaledValue`]).

pub mod barnes;
pub mod connection;
pub mod euler;
pub mod ode;
pub mod taylor;

pub use barnes::{hyp2f1_barnes, BarnesKernel};
pub use connection::{hyp2f1_connection_t, ConnectionKernel};
pub use euler::hyp2f1_euler;
pub use ode::hyp2f1_ode_continuation;
pub use taylor::hyp2f1_taylor;

use crate::error::{Error, Result};
use crate::scalar::PrecisionSpec;
use crate::spectral::SpectralPoint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Which engine produced (or should produce) a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Auto,
    Taylor,
    Euler,
    Barnes,
    Connection,
    OdeContinuation,
    /// Closed form (for example H ≡ 1 at s = 1).
    Exact,
    /// Asymptotic main term.
    Asymptotic,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Taylor => "taylor",
            Method::Euler => "euler",
            Method::Barnes => "barnes",
            Method::Connection => "connection",
            Method::OdeContinuation => "ode_continuation",
            Method::Exact => "exact",
            Method::Asymptotic => "asymptotic",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Method::Auto,
            "taylor" => Method::Taylor,
            "euler" => Method::Euler,
            "barnes" => Method::Barnes,
            "connection" => Method::Connection,
            "ode" | "ode_continuation" => Method::OdeContinuation,
            _ => return Err(Error::Invalid(format!("unknown method '{s}'"))),
        })
    }
}

/// A computed value with an error estimate and the engine that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockValue {
    pub value: Complex64,
    pub abs_err: f64,
    pub method: Method,
}

impl BlockValue {
    pub fn exact(value: Complex64) -> Self {
        BlockValue {
            value,
            abs_err: 0.0,
            method: Method::Exact,
        }
    }

    pub(crate) fn scaled_by(self, k: Complex64) -> Self {
        BlockValue {
            value: self.value * k,
            abs_err: self.abs_err * k.norm(),
            method: self.method,
        }
    }
}

/// The true value is `e^{exp_scale} · block.value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledValue {
    pub block: BlockValue,
    pub exp_scale: f64,
}

impl ScaledValue {
    pub fn unscaled(block: BlockValue) -> Self {
        ScaledValue {
            block,
            exp_scale: 0.0,
        }
    }

    /// The value with the scale applied; may overflow for large scales.
    pub fn value(&self) -> Complex64 {
        self.block.value * self.exp_scale.exp()
    }

    /// Re-express with a different exponential scale.
    pub fn rescaled(&self, exp_scale: f64) -> BlockValue {
        self.block
            .scaled_by(Complex64::new((self.exp_scale - exp_scale).exp(), 0.0))
    }
}

/// A request for ₂F₁(a, b; c; z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypRequest {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub z: Complex64,
    pub method: Method,
    pub prec: PrecisionSpec,
}

impl HypRequest {
    /// The block family ₂F₁(s, 1 − s; 1; w).
    pub fn block(s: SpectralPoint, w: Complex64, method: Method, prec: PrecisionSpec) -> Self {
        HypRequest {
            a: s.s(),
            b: 1.0 - s.s(),
            c: Complex64::new(1.0, 0.0),
            z: w,
            method,
            prec,
        }
    }

    pub(crate) fn check_c(&self) -> Result<()> {
        if self.c.im == 0.0 && self.c.re <= 0.0 && self.c.re == self.c.re.round() {
            return Err(Error::domain(format!(
                "c = {} is a nonpositive integer",
                self.c.re
            )));
        }
        Ok(())
    }

    /// Recover s when the request belongs to the block family.
    pub fn spectral_point(&self) -> Option<SpectralPoint> {
        if self.c != Complex64::new(1.0, 0.0) || (self.a + self.b - 1.0).norm() > 0.0 {
            return None;
        }
        let s = if self.a.re >= self.b.re { self.a } else { self.b };
        // s and 1 − s give the same function; prefer Im s ≥ 0.
        let s = if s.im < 0.0 { 1.0 - s } else { s };
        SpectralPoint::new(s.re, s.im).ok()
    }
}

/// Evaluate a request with the engine it names.
///
/// Only the Taylor engine accepts arbitrary (a, b, c); the others need the
/// block family c = 1, a + b = 1 with s on the spectrum locus.
pub fn hyp2f1(req: &HypRequest) -> Result<ScaledValue> {
    req.check_c()?;
    if req.method == Method::Taylor {
        return hyp2f1_taylor(req).map(ScaledValue::unscaled);
    }
    let s = req.spectral_point().ok_or_else(|| {
        Error::domain(format!(
            "method {} needs the block family c = 1, a + b = 1",
            req.method
        ))
    })?;
    crate::blocks::block_h_with(s, req.z, req.method, req.prec)
}
