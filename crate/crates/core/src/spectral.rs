//! Spectral points and weight parameters.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// s = σ + it on the locus (1/2, 1] ∪ (1/2 + i[0, ∞)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    sigma: f64,
    t: f64,
}

impl SpectralPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(Error::domain("spectral point must be finite"));
        }
        if t < 0.0 {
            return Err(Error::domain(format!("t = {t} is negative")));
        }
        let on_line = sigma == 0.5;
        let complementary = sigma > 0.5 && sigma <= 1.0 && t == 0.0;
        if !(on_line || complementary) {
            return Err(Error::domain(format!(
                "(sigma, t) = ({sigma}, {t}) is off the spectrum locus"
            )));
        }
        Ok(SpectralPoint { sigma, t })
    }

    /// s = 1/2 + it.
    pub fn tempered(t: f64) -> Result<Self> {
        Self::new(0.5, t)
    }

    /// The trivial point s = 1 (constant eigenfunction).
    pub fn one() -> Self {
        SpectralPoint { sigma: 1.0, t: 0.0 }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    pub fn is_one(&self) -> bool {
        self.sigma == 1.0
    }

    /// Laplace eigenvalue λ = s(1 − s); real and nonnegative on the locus.
    pub fn eigenvalue(&self) -> f64 {
        if self.sigma == 0.5 {
            0.25 + self.t * self.t
        } else {
            self.sigma * (1.0 - self.sigma)
        }
    }
}

/// (k, T, ε) with the derived window H = T^{1/3 + 2ε}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    k: u32,
    big_t: f64,
    eps: f64,
}

impl WeightParams {
    pub fn new(k: u32, big_t: f64, eps: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("k must be a positive integer"));
        }
        if !(big_t.is_finite() && big_t >= 4.0) {
            return Err(Error::domain(format!("T = {big_t} must be at least 4")));
        }
        if !(eps > 0.0 && eps <= 1.0 / 6.0) {
            return Err(Error::domain(format!("eps = {eps} must lie in (0, 1/6]")));
        }
        Ok(WeightParams { k, big_t, eps })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn big_t(&self) -> f64 {
        self.big_t
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Window H = T^{1/3 + 2ε}.
    pub fn window(&self) -> f64 {
        self.big_t.powf(1.0 / 3.0 + 2.0 * self.eps)
    }

    /// Half-width of the y-integration range, T^ε / H.
    pub fn y_max(&self) -> f64 {
        self.big_t.powf(self.eps) / self.window()
    }

    /// Power 4k − 2 used to normalize blocks with t > 1.
    pub fn block_power(&self) -> i32 {
        4 * self.k as i32 - 2
    }
}

/// Which side of the crossing equation a block belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    /// H̃_s(1 − z²)
    U,
    /// H̃_s(1 − z^{−2})
    T,
}

impl std::fmt::Display for Channel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Channel::U => "u",
            Channel::T => "t",
        })
    }
}

impl std::str::FromStr for Channel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" | "U" => Ok(Channel::U),
            "t" | "T" => Ok(Channel::T),
            _ => Err(Error::Invalid(format!("unknown channel '{s}'"))),
        }
    }
}
