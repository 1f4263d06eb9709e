//! Closed-form main terms: the large-t u- and t-channel block expansions,
//! the smooth/oscillatory split of the t-channel block, and the leading
//! behaviour of the averaged weights.

use crate::error::{Error, Result};
use crate::hyp::{BlockValue, Method};
use crate::spectral::{SpectralPoint, WeightParams};
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

/// Highest order accepted by [`UExpansionOrder`].
pub const MAX_U_ORDER: u32 = 6;

/// Truncation order J of the u-channel expansion in powers of t·z³.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UExpansionOrder(u32);

impl UExpansionOrder {
    pub fn new(order: u32) -> Result<Self> {
        if order > MAX_U_ORDER {
            return Err(Error::Invalid(format!(
                "expansion order {order} exceeds {MAX_U_ORDER}"
            )));
        }
        Ok(Self(order))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for UExpansionOrder {
    fn default() -> Self {
        Self(2)
    }
}

/// c_j = (−1)^j / (3^j j!).
pub fn u_coefficient(j: u32) -> f64 {
    let mut c = 1.0;
    for i in 1..=j {
        c *= -1.0 / (3.0 * i as f64);
    }
    c
}

/// φ(z) = −log(1 + √(1−z²)).
pub fn phi(z: Complex64) -> Complex64 {
    -(1.0 + (1.0 - z * z).sqrt()).ln()
}

/// ψ(z) = π^{−1/2} e^{−iπ/4} / (1 + √(1−z²)).
pub fn psi(z: Complex64) -> Complex64 {
    Complex64::from_polar(PI.sqrt().recip(), -PI / 4.0) / (1.0 + (1.0 - z * z).sqrt())
}

/// Phase quantities of the t-channel expansion at one z, plus α(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseData {
    pub phi: Complex64,
    pub psi: Complex64,
    pub alpha: f64,
}

impl PhaseData {
    pub fn new(z: Complex64, t: f64, params: &WeightParams) -> Self {
        Self {
            phi: phi(z),
            psi: psi(z),
            alpha: alpha(t, params),
        }
    }
}

fn need_large_t(s: SpectralPoint) -> Result<f64> {
    let t = s.t();
    if s.sigma() != 0.5 || t <= 1.0 {
        return Err(Error::domain(format!(
            "asymptotics need s = 1/2 + it with t > 1, got σ = {}, t = {t}",
            s.sigma()
        )));
    }
    Ok(t)
}

/// Main term of H̃_s(1 − z²) for large t, truncated after `order`.
///
/// Accepted region: t|z| ≥ 1/4, |z| ≤ 1/2 and Re z ≥ t^{−2/3}|z|.
pub fn u_block_asym(
    s: SpectralPoint,
    z: Complex64,
    params: &WeightParams,
    order: UExpansionOrder,
) -> Result<BlockValue> {
    let t = need_large_t(s)?;
    let r = z.norm();
    if t * r < 0.25 || r > 0.5 || z.re < t.powf(-2.0 / 3.0) * r {
        return Err(Error::domain(format!(
            "z = {z} is outside the u-channel asymptotic region at t = {t}"
        )));
    }
    let pref = t.powf(params.block_power() as f64 - 0.5) / (2.0 * (PI * z).sqrt());
    let x = t * z * z * z;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut xp = Complex64::new(1.0, 0.0);
    for j in 0..=order.get() {
        sum += u_coefficient(j) * xp;
        xp *= x;
    }
    Ok(BlockValue {
        value: pref * (-2.0 * t * z).exp() * sum,
        abs_err: pref.norm() * (-2.0 * t * z.re).exp() / (t * r),
        method: Method::Asymptotic,
    })
}

/// 2it·[log(−iz) + φ(z)], the exponent of the t-channel main term (up to sign).
pub fn t_phase(t: f64, z: Complex64) -> Complex64 {
    Complex64::new(0.0, 2.0 * t) * ((Complex64::new(0.0, -1.0) * z).ln() + phi(z))
}

/// Main term of H̃_s(1 − z^{−2}) for large t.
///
/// The error estimate is relative, |main|·(1/t + |z|⁴), plus the additive
/// t^{4k−5/2}|z|e^{−πt}.
pub fn t_block_asym(s: SpectralPoint, z: Complex64, params: &WeightParams) -> Result<BlockValue> {
    let t = need_large_t(s)?;
    if !(z.re > 0.0) || z.im < 0.0 || z.norm() > 0.3 {
        return Err(Error::domain(format!(
            "t-channel asymptotics need Re z > 0, Im z ≥ 0, |z| ≤ 0.3, got {z}"
        )));
    }
    let amp = t.powf(params.block_power() as f64 - 0.5);
    let value = amp * z * psi(z) * (-t_phase(t, z)).exp();
    let r = z.norm();
    Ok(BlockValue {
        value,
        abs_err: value.norm() * (1.0 / t + r.powi(4)) + amp * r * (-PI * t).exp(),
        method: Method::Asymptotic,
    })
}

fn check_rho_domain(y: f64, t: f64, params: &WeightParams) -> Result<()> {
    let big_t = params.big_t();
    let (lo, hi) = (2.0 / big_t, big_t.powf(-1.0 / 3.0));
    if !(y >= lo && y <= hi) {
        return Err(Error::domain(format!("y = {y} outside [{lo}, {hi}]")));
    }
    if !(t > 1.0 && t <= big_t.powf(2.0 / 3.0)) {
        return Err(Error::domain(format!("t = {t} outside (1, T^(2/3)]")));
    }
    Ok(())
}

/// The slowly varying factor ρ(y) in
/// z^p H̃(1 − z^{−2}) ≈ t^{4k−5/2} y^{p+1} ρ(y) e^{−2it log y}, z = 1/T + iy.
pub fn rho_smooth(y: f64, t: f64, params: &WeightParams, p: f64) -> Result<Complex64> {
    check_rho_domain(y, t, params)?;
    let big_t = params.big_t();
    let z = Complex64::new(1.0 / big_t, y);
    let a = Complex64::new(1.0 / (big_t * y), 1.0);
    let inner = Complex64::new(1.0, -1.0 / (big_t * y)).ln() + phi(z);
    Ok(a.powf(p + 1.0) * psi(z) * (Complex64::new(0.0, -2.0 * t) * inner).exp())
}

/// t^{4k−5/2} y^{p+1} ρ(y) e^{−2it log y}, the separated form of z^p H̃_t.
pub fn rho_reconstruction(y: f64, t: f64, params: &WeightParams, p: f64) -> Result<Complex64> {
    let rho = rho_smooth(y, t, params, p)?;
    let amp = t.powf(params.block_power() as f64 - 0.5) * y.powf(p + 1.0);
    Ok(amp * rho * Complex64::from_polar(1.0, -2.0 * t * y.ln()))
}

/// Main term of W(1/2 + it):
/// ½ (t/T)^{4k−5/2} e^{−2t/T} exp(−((t−T)/H)²).
pub fn weight_w_asym(t: f64, params: &WeightParams) -> f64 {
    let (big_t, h) = (params.big_t(), params.window());
    let x = t / big_t;
    0.5 * x.powf(params.block_power() as f64 - 0.5) * (-2.0 * x).exp() * (-((t - big_t) / h).powi(2)).exp()
}

/// Main term of W̌(1/2 + it): e^{−2} H t^{−1/2} exp(−(tH/T)²) cos α(t).
pub fn weight_wcheck_asym(t: f64, params: &WeightParams) -> f64 {
    weight_wcheck_amplitude(t, params) * alpha(t, params).cos()
}

/// The envelope e^{−2} H t^{−1/2} exp(−(tH/T)²) of the W̌ main term.
pub fn weight_wcheck_amplitude(t: f64, params: &WeightParams) -> f64 {
    let (big_t, h) = (params.big_t(), params.window());
    (-2.0f64).exp() * h / t.sqrt() * (-(t * h / big_t).powi(2)).exp()
}

/// α(t) = 3π/4 + 2t(1 + log 2 − log(t/T) + (t/T)²/4), not reduced mod 2π.
pub fn alpha(t: f64, params: &WeightParams) -> f64 {
    let x = t / params.big_t();
    0.75 * PI + 2.0 * t * (1.0 + LN_2 - x.ln() + 0.25 * x * x)
}

/// α'(t) = 2 log 2 − 2 log(t/T) + (3/2)(t/T)².
pub fn alpha_prime(t: f64, params: &WeightParams) -> f64 {
    let x = t / params.big_t();
    2.0 * LN_2 - 2.0 * x.ln() + 1.5 * x * x
}

/// Zeros of cos α on [lo, hi], located by bisection on the monotone α.
pub fn alpha_zero_crossings(lo: f64, hi: f64, params: &WeightParams) -> Vec<f64> {
    let (a_lo, a_hi) = (alpha(lo, params), alpha(hi, params));
    // cos α = 0 at α = π/2 + mπ.
    let first = ((a_lo - 0.5 * PI) / PI).ceil() as i64;
    let last = ((a_hi - 0.5 * PI) / PI).floor() as i64;
    (first..=last)
        .map(|m| {
            let target = 0.5 * PI + m as f64 * PI;
            let (mut a, mut b) = (lo, hi);
            for _ in 0..80 {
                let mid = 0.5 * (a + b);
                if alpha(mid, params) < target {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}
