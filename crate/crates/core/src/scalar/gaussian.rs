//! g(ξ) = √π e^{−ξ²/4}, the Fourier transform of the Gaussian e^{−y²}, and its
//! derivatives.

use crate::error::{Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;

pub fn gaussian_transform(xi: f64) -> f64 {
    SQRT_PI * (-0.25 * xi * xi).exp()
}

/// g^{(ℓ)}(ξ) = √π (−1/2)^ℓ H_ℓ(ξ/2) e^{−ξ²/4} for ℓ ≤ 6, with H_ℓ the
/// physicists' Hermite polynomial.
pub fn gaussian_transform_deriv(order: u32, xi: f64) -> Result<f64> {
    if order > 6 {
        return Err(Error::domain(format!("derivative order {order} exceeds 6")));
    }
    let x = 0.5 * xi;
    let (mut h_prev, mut h) = (1.0, 2.0 * x);
    if order == 0 {
        h = 1.0;
    }
    for n in 1..order {
        let next = 2.0 * x * h - 2.0 * n as f64 * h_prev;
        h_prev = h;
        h = next;
    }
    Ok(gaussian_transform(xi) * (-0.5f64).powi(order as i32) * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert!((gaussian_transform(0.0) - 1.772_453_850_9).abs() < 1e-10);
        assert!((gaussian_transform(2.0) - 0.652_049_332_2).abs() < 1e-10);
        assert_eq!(gaussian_transform_deriv(1, 0.0).unwrap(), 0.0);
        assert!(gaussian_transform_deriv(7, 0.0).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-3;
        for order in 1..=6 {
            for xi in [-3.0, -0.7, 0.0, 0.4, 1.9, 5.0] {
                let fd = (gaussian_transform_deriv(order - 1, xi + h).unwrap()
                    - gaussian_transform_deriv(order - 1, xi - h).unwrap())
                    / (2.0 * h);
                let exact = gaussian_transform_deriv(order, xi).unwrap();
                assert!((fd - exact).abs() < 1e-5, "order={order} xi={xi}");
            }
        }
    }

    #[test]
    fn even_function() {
        for xi in [0.3, 1.0, 4.0] {
            assert_eq!(gaussian_transform(xi), gaussian_transform(-xi));
            let d = gaussian_transform_deriv(3, xi).unwrap() + gaussian_transform_deriv(3, -xi).unwrap();
            assert!(d.abs() < 1e-15);
        }
    }
}
