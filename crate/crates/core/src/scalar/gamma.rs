//! Principal-branch log-gamma via the Stirling series.
//!
//! The argument is first shifted so that Re w clears a threshold, using
//! log Γ(w) = log Γ(w + n) − Σ_{j<n} Log(w + j). That identity holds for the
//! principal branch everywhere off the cut, so no 2πi bookkeeping is needed in
//! machine mode.

use super::bigfloat::{to_f64, BigComplex, Ext};
use super::{check_finite, PrecisionSpec};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::Mutex;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const MACHINE_SHIFT: f64 = 12.0;

/// B_{2n} / (2n (2n − 1)) for n = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Principal branch of log Γ(w).
///
/// Machine mode is accurate to about 1e−14 relative to max(1, |log Γ|).
/// Extended mode is computed at the requested digits and rounded to f64; use
/// [`log_gamma_ext`] to keep the extra digits.
pub fn log_gamma(w: Complex64, prec: PrecisionSpec) -> Result<Complex64> {
    check_finite(w, "log-gamma argument")?;
    if w.im == 0.0 && w.re <= 0.0 && w.re == w.re.round() {
        return Err(Error::Pole(format!("log-gamma at {}", w.re)));
    }
    match prec {
        PrecisionSpec::Machine => Ok(machine(w)),
        PrecisionSpec::Extended { digits } => {
            let ext = Ext::with_digits(digits);
            let z = ext.cplx(w);
            Ok(log_gamma_ext(&ext, &z, w)?.to_c64())
        }
    }
}

fn machine(w: Complex64) -> Complex64 {
    let mut z = w;
    let mut shift = Neumaier::default();
    if z.re < MACHINE_SHIFT {
        let n = (MACHINE_SHIFT - z.re).ceil() as usize;
        for _ in 0..n {
            shift.add(z.ln());
            z += 1.0;
        }
    }
    stirling(z) - shift.sum()
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(STIRLING[STIRLING.len() - 1], 0.0);
    for c in STIRLING.iter().rev().skip(1) {
        series = series * inv2 + c;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series * inv
}

/// Compensated complex summation.
#[derive(Default)]
struct Neumaier {
    re: (f64, f64),
    im: (f64, f64),
}

impl Neumaier {
    fn add(&mut self, x: Complex64) {
        fn step(acc: &mut (f64, f64), x: f64) {
            let t = acc.0 + x;
            if acc.0.abs() >= x.abs() {
                acc.1 += (acc.0 - t) + x;
            } else {
                acc.1 += (x - t) + acc.0;
            }
            acc.0 = t;
        }
        step(&mut self.re, x.re);
        step(&mut self.im, x.im);
    }

    fn sum(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// Extended-precision log Γ.
///
/// `approx` is the same argument in f64; it is only used to pick the branch
/// of the logarithm of the shift product.
pub fn log_gamma_ext(ext: &Ext, w: &BigComplex, approx: Complex64) -> Result<BigComplex> {
    if approx.im == 0.0 && approx.re <= 0.0 && approx.re == approx.re.round() {
        return Err(Error::Pole(format!("log-gamma at {}", approx.re)));
    }
    let digits = (ext.bits() as f64 / std::f64::consts::LOG2_10) as usize;
    let threshold = 0.5 * digits as f64 + 10.0;
    let mut z = w.clone();
    let mut shift: Option<BigComplex> = None;
    let mut arg_sum = 0.0;
    if approx.re < threshold {
        let n = (threshold - approx.re).ceil() as usize;
        let one = ext.one();
        let mut prod = ext.one();
        for j in 0..n {
            arg_sum += (approx + j as f64).arg();
            prod = ext.mul(&prod, &z);
            z = ext.add(&z, &one);
        }
        let mut l = ext.ln(&prod);
        let k = ((arg_sum - to_f64(&l.im)) / std::f64::consts::TAU).round();
        if k != 0.0 {
            let tau = ext.rmul(&ext.pi(), &ext.int(2));
            l.im = ext.radd(&l.im, &ext.rmul(&tau, &ext.real(k)));
        }
        shift = Some(l);
    }

    // (z − 1/2) Log z − z + ln(2π)/2
    let half = ext.cplx(Complex64::new(0.5, 0.0));
    let ln_z = ext.ln(&z);
    let two_pi = ext.rmul(&ext.pi(), &ext.int(2));
    let half_ln_2pi = ext.rmul(&ext.rln(&two_pi), &ext.real(0.5));
    let mut acc = ext.mul(&ext.sub(&z, &half), &ln_z);
    acc = ext.sub(&acc, &z);
    acc.re = ext.radd(&acc.re, &half_ln_2pi);

    let inv = ext.div(&ext.one(), &z);
    let inv2 = ext.mul(&inv, &inv);
    let mut zpow = inv;
    let tol = 10f64.powi(-(digits as i32) - 5);
    let mut n = 1usize;
    loop {
        let b = bernoulli_even(n);
        let denom = BigInt::from((2 * n) * (2 * n - 1));
        let c = rational_to_big(ext, &(b / BigRational::from_integer(denom)));
        let term = ext.scale(&zpow, &c);
        acc = ext.add(&acc, &term);
        let size = to_f64(&ext.abs(&term));
        if size < tol * to_f64(&ext.abs(&acc)).max(1.0) {
            break;
        }
        if n > 4 * digits + 50 {
            return Err(Error::no_conv("extended Stirling series"));
        }
        zpow = ext.mul(&zpow, &inv2);
        n += 1;
    }
    Ok(match shift {
        Some(s) => ext.sub(&acc, &s),
        None => acc,
    })
}

fn rational_to_big(ext: &Ext, r: &BigRational) -> astro_float_num::BigFloat {
    let num = ext.parse(&r.numer().to_string());
    let den = ext.parse(&r.denom().to_string());
    ext.rdiv(&num, &den)
}

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// B_{2n} as an exact rational (n ≥ 1).
fn bernoulli_even(n: usize) -> BigRational {
    let mut table = BERNOULLI.lock().expect("bernoulli table poisoned");
    // table[m] = B_m for all m computed so far.
    if table.is_empty() {
        table.push(BigRational::one());
        table.push(BigRational::new(BigInt::from(-1), BigInt::from(2)));
    }
    while table.len() <= 2 * n {
        let m = table.len();
        if m % 2 == 1 {
            table.push(BigRational::zero());
            continue;
        }
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0
        let mut sum = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                sum += BigRational::from_integer(binom.clone()) * b;
            }
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let bm = -sum / BigRational::from_integer(BigInt::from(m + 1));
        table.push(bm);
    }
    table[2 * n].clone()
}
