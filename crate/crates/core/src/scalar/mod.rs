//! Complex scalar kernel: principal-branch powers, log-gamma, modified Bessel K
//! and the Gaussian transform.
//!
//! Everything here works on the plane cut along (−∞, 0]. Arguments on the cut
//! are rejected rather than nudged off it.

mod bessel;
pub mod bigfloat;
mod gamma;
mod gaussian;

pub use bessel::bessel_k;
pub use gamma::{log_gamma, log_gamma_ext};
pub use gaussian::{gaussian_transform, gaussian_transform_deriv};

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The scalar type used throughout the crate.
pub type ComplexScalar = Complex64;

/// Working precision for routines that have an extended-precision mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
#[derive(Default)]
pub enum PrecisionSpec {
    #[default]
    Machine,
    Extended { digits: u32 },
}

impl PrecisionSpec {
    pub const MIN_DIGITS: u32 = 30;

    pub fn extended(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::domain(format!(
                "extended precision needs at least {} digits, got {digits}",
                Self::MIN_DIGITS
            )));
        }
        Ok(PrecisionSpec::Extended { digits })
    }

    /// Digits needed to sum a quantity of size e^{πt} without losing the
    /// normalized value.
    pub fn oracle_for(t: f64) -> Self {
        let digits = (1.4 * t).ceil().max(0.0) as u32 + 30;
        PrecisionSpec::Extended {
            digits: digits.max(50),
        }
    }
}


/// True when `z` lies on the branch cut (−∞, 0].
pub fn on_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

pub(crate) fn check_finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::domain(format!("{what} is not finite: {z}")))
    }
}

/// Principal logarithm, rejecting the cut.
pub fn principal_log(z: Complex64) -> Result<Complex64> {
    check_finite(z, "argument")?;
    if on_cut(z) {
        return Err(Error::domain(format!("log argument {z} lies on the cut")));
    }
    Ok(z.ln())
}

/// exp(s · Log z) with the principal logarithm.
///
/// `z = 0` is accepted when `Re s > 0` and returns 0.
pub fn principal_pow(z: Complex64, s: Complex64) -> Result<Complex64> {
    check_finite(s, "exponent")?;
    if z == Complex64::new(0.0, 0.0) {
        return if s.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::domain("0 raised to an exponent with Re s <= 0"))
        };
    }
    let l = principal_log(z)?;
    check_finite((s * l).exp(), "power")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_basics() {
        let one = Complex64::new(1.0, 0.0);
        let s = Complex64::new(0.3, -7.0);
        assert_eq!(principal_pow(one, s).unwrap(), one);
        let i = Complex64::new(0.0, 1.0);
        let r = principal_pow(i, Complex64::new(2.0, 0.0)).unwrap();
        assert!((r + one).norm() < 1e-15);
        assert!(principal_pow(Complex64::new(-1.0, 0.0), s).is_err());
        assert!(principal_pow(Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)).is_err());
        assert_eq!(
            principal_pow(Complex64::new(0.0, 0.0), Complex64::new(0.5, 3.0)).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn pow_continuous_across_positive_axis() {
        let s = Complex64::new(0.5, 4.0);
        let a = principal_pow(Complex64::new(2.0, 1e-12), s).unwrap();
        let b = principal_pow(Complex64::new(2.0, -1e-12), s).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn pow_reflection() {
        let z = Complex64::new(-0.7, 0.4);
        let s = Complex64::new(0.5, 12.0);
        let a = principal_pow(z.conj(), s.conj()).unwrap();
        let b = principal_pow(z, s).unwrap().conj();
        assert!((a - b).norm() <= 1e-12 * b.norm());
    }

    #[test]
    fn precision_spec() {
        assert!(PrecisionSpec::extended(29).is_err());
        assert_eq!(
            PrecisionSpec::oracle_for(10.0),
            PrecisionSpec::Extended { digits: 50 }
        );
        assert_eq!(
            PrecisionSpec::oracle_for(50.0),
            PrecisionSpec::Extended { digits: 100 }
        );
    }
}
