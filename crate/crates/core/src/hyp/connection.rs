//! t-channel values e^{−πt}·H_s(1 − z^{−2}) for t ≥ 1.
//!
//! The 1/w connection formula splits H_s(w) into two pieces of the form
//! (−w)^{−a} ₂F₁(a, a; 2a; 1/w), and the quadratic transformation in
//! ρ = (1 − √(1−u))/(1 + √(1−u)), u = 1/w, turns each into
//!
//!   A± (−4ρ)^{1/2 ± it} ₂F₁(1/2, 1/2 ± it; 1 ± it; ρ²),
//!
//! A± = Γ(∓2it)/Γ(1/2 ∓ it)². For small z, ρ ≈ −z²/4, so the series
//! converge geometrically with t-independent coefficients.

use super::{BlockValue, Method};
use crate::error::{Error, Result};
use crate::scalar::{log_gamma, PrecisionSpec};
use crate::spectral::SpectralPoint;
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

const SERIES_TOL: f64 = 1e-18;
const MAX_RHO_SQ: f64 = 0.5;

/// ρ(u) = (1 − √(1−u))/(1 + √(1−u)) with the principal root.
pub fn rho_of(u: Complex64) -> Complex64 {
    let r = (1.0 - u).sqrt();
    (1.0 - r) / (1.0 + r)
}

/// Per-t data for evaluating many z at one spectral point.
#[derive(Debug, Clone)]
pub struct ConnectionKernel {
    t: f64,
    /// log A± − πt, for the + and − terms.
    log_pref: [Complex64; 2],
}

impl ConnectionKernel {
    pub fn new(s: SpectralPoint, prec: PrecisionSpec) -> Result<Self> {
        if let PrecisionSpec::Extended { .. } = prec {
            return Err(Error::Invalid(
                "extended precision is available only through the series engine".into(),
            ));
        }
        let t = s.t();
        if s.sigma() != 0.5 || t < 1.0 {
            return Err(Error::domain(format!(
                "connection engine needs s = 1/2 + it with t ≥ 1, got t = {t}"
            )));
        }
        let m = PrecisionSpec::Machine;
        let mut log_pref = [Complex64::new(0.0, 0.0); 2];
        for (slot, sign) in log_pref.iter_mut().zip([1.0, -1.0]) {
            let it = Complex64::new(0.0, sign * t);
            *slot = log_gamma(-2.0 * it, m)? - 2.0 * log_gamma(0.5 - it, m)? - PI * t;
        }
        Ok(ConnectionKernel { t, log_pref })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// e^{−πt}·H_s(1 − z^{−2}).
    pub fn eval(&self, z: Complex64) -> Result<BlockValue> {
        if !(z.re > 0.0) || !z.im.is_finite() || !z.re.is_finite() {
            return Err(Error::domain(format!(
                "connection engine needs Re z > 0, got z = {z}"
            )));
        }
        let r = (1.0 - z * z).sqrt();
        let rho = -z * z / ((1.0 + r) * (1.0 + r));
        let rho2 = rho * rho;
        if rho2.norm() >= MAX_RHO_SQ {
            return Err(Error::domain(format!(
                "|ρ²| = {} ≥ {MAX_RHO_SQ}; z = {z} is too far from 0",
                rho2.norm()
            )));
        }
        // log(−4ρ), continuous in z on Re z > 0.
        let log_m4rho = 2.0 * (LN_2 + z.ln() - (1.0 + r).ln());
        let mut value = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        for (k, sign) in [1.0, -1.0].into_iter().enumerate() {
            let it = Complex64::new(0.0, sign * self.t);
            let expo = self.log_pref[k] + (0.5 + it) * log_m4rho;
            let (f, f_err) = quadratic_series(it, rho2)?;
            let term = expo.exp() * f;
            value += term;
            // Rounding in the exponent is amplified by its magnitude.
            let cond = expo.norm() + self.log_pref[k].norm() + PI * self.t;
            err += term.norm() * 4.0 * f64::EPSILON * cond + expo.exp().norm() * f_err;
        }
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::no_conv("connection formula produced a non-finite value"));
        }
        Ok(BlockValue {
            value,
            abs_err: err,
            method: Method::Connection,
        })
    }
}

/// e^{−πt}·H_s(1 − z^{−2}) via the connection formula.
pub fn hyp2f1_connection_t(s: SpectralPoint, z: Complex64, prec: PrecisionSpec) -> Result<BlockValue> {
    ConnectionKernel::new(s, prec)?.eval(z)
}

/// ₂F₁(1/2, 1/2 + it; 1 + it; x) for |x| < 1/2, with an error bound.
fn quadratic_series(it: Complex64, x: Complex64) -> Result<(Complex64, f64)> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut abs_sum = 1.0;
    for n in 0..10_000 {
        let nf = n as f64;
        term *= (0.5 + nf) * (0.5 + it + nf) / ((1.0 + it + nf) * (nf + 1.0)) * x;
        sum += term;
        abs_sum += term.norm();
        if term.norm() < SERIES_TOL {
            // Coefficients are bounded by 1, so the tail is geometric in |x|.
            let tail = term.norm() * x.norm() / (1.0 - x.norm());
            return Ok((sum, tail + 2.0 * f64::EPSILON * abs_sum));
        }
    }
    Err(Error::no_conv("quadratic-transformation series did not converge"))
}
