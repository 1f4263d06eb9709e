//! Modified Bessel function K_n for integer order.
//!
//! Machine mode uses the power/log series for |w| ≤ 2 and the Hankel
//! asymptotic expansion for |w| ≥ 18. In between neither reaches 1e−10 in
//! double precision, so the series is re-run in extended precision with
//! enough guard digits to absorb its cancellation.

use super::bigfloat::{BigComplex, Ext};
use super::{check_finite, on_cut, PrecisionSpec};
use crate::error::{Error, Result};
use num_complex::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_MAX: f64 = 2.0;
const ASYMPTOTIC_MIN: f64 = 18.0;

/// K_ν(w) for integer ν ≥ 0 and w off (−∞, 0].
pub fn bessel_k(nu: u32, w: Complex64, prec: PrecisionSpec) -> Result<Complex64> {
    check_finite(w, "Bessel argument")?;
    if on_cut(w) {
        return Err(Error::domain(format!("K_{nu} argument {w} lies on the cut")));
    }
    let r = w.norm();
    match prec {
        PrecisionSpec::Machine => {
            if r <= SERIES_MAX {
                Ok(series_f64(nu, w))
            } else if r >= ASYMPTOTIC_MIN.max(nu as f64 * nu as f64 / 2.0) {
                Ok(asymptotic_f64(nu, w))
            } else {
                let digits = 30 + (0.9 * r).ceil() as u32;
                Ok(series_ext(nu, w, digits))
            }
        }
        PrecisionSpec::Extended { digits } => {
            let digits = digits + 5 + (0.9 * r).ceil() as u32;
            Ok(series_ext(nu, w, digits))
        }
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

// DLMF 10.31.1
fn series_f64(n: u32, z: Complex64) -> Complex64 {
    let h = z / 2.0;
    let q = h * h;
    let mut finite = Complex64::new(0.0, 0.0);
    let mut qk = Complex64::new(1.0, 0.0);
    for k in 0..n {
        finite += qk * (factorial(n - k - 1) / factorial(k));
        qk *= -q;
    }
    finite *= 0.5 * h.powi(-(n as i32));

    let mut term = Complex64::new(1.0 / factorial(n), 0.0);
    let mut i_sum = Complex64::new(0.0, 0.0);
    let mut psi_sum = Complex64::new(0.0, 0.0);
    // ψ(k+1) and ψ(n+k+1)
    let mut psi_a = -EULER_GAMMA;
    let mut psi_b = -EULER_GAMMA + (1..=n).map(|j| 1.0 / j as f64).sum::<f64>();
    let mut k = 0u32;
    loop {
        i_sum += term;
        psi_sum += term * (psi_a + psi_b);
        k += 1;
        term *= q / (k as f64 * (n + k) as f64);
        psi_a += 1.0 / k as f64;
        psi_b += 1.0 / (n + k) as f64;
        if term.norm() * (psi_a.abs() + psi_b.abs() + 1.0) < 1e-18 * psi_sum.norm().max(i_sum.norm()) {
            break;
        }
    }
    let hn = h.powi(n as i32);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    finite - sign * h.ln() * hn * i_sum + sign * 0.5 * hn * psi_sum
}

fn asymptotic_f64(n: u32, z: Complex64) -> Complex64 {
    let mu = 4.0 * (n as f64) * (n as f64);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = f64::INFINITY;
    for k in 1..200u32 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0) / z;
        let size = term.norm();
        if size > prev {
            break;
        }
        sum += term;
        prev = size;
        if size < 1e-17 * sum.norm() {
            break;
        }
    }
    (std::f64::consts::PI / (2.0 * z)).sqrt() * (-z).exp() * sum
}

/// Euler–Mascheroni constant by the Brent–McMillan algorithm.
pub(crate) fn euler_gamma_ext(ext: &Ext) -> astro_float_num::BigFloat {
    let digits = ext.bits() as f64 / std::f64::consts::LOG2_10;
    let n = (digits * std::f64::consts::LN_10 / 4.0).ceil() as i64 + 2;
    let n2 = ext.int(n * n);
    let mut a = ext.rln(&ext.int(n)).neg();
    let mut b = ext.int(1);
    let mut u = a.clone();
    let mut v = b.clone();
    let kmax = (3.6 * n as f64).ceil() as i64 + 10;
    for k in 1..=kmax {
        let kk = ext.int(k);
        b = ext.rdiv(&ext.rmul(&b, &n2), &ext.rmul(&kk, &kk));
        a = ext.rdiv(&ext.radd(&ext.rdiv(&ext.rmul(&a, &n2), &kk), &b), &kk);
        u = ext.radd(&u, &a);
        v = ext.radd(&v, &b);
    }
    ext.rdiv(&u, &v)
}

fn series_ext(n: u32, w: Complex64, digits: u32) -> Complex64 {
    let ext = Ext::with_digits(digits);
    let z = ext.cplx(w);
    let h = ext.scale(&z, &ext.real(0.5));
    let q = ext.mul(&h, &h);
    let neg_q = ext.neg(&q);
    let gamma = euler_gamma_ext(&ext);

    let mut finite = ext.zero();
    let mut qk = ext.one();
    for k in 0..n {
        let c = ext.real(factorial(n - k - 1) / factorial(k));
        finite = ext.add(&finite, &ext.scale(&qk, &c));
        qk = ext.mul(&qk, &neg_q);
    }
    let mut hn = ext.one();
    for _ in 0..n {
        hn = ext.mul(&hn, &h);
    }
    if n > 0 {
        finite = ext.div(&finite, &hn);
        finite = ext.scale(&finite, &ext.real(0.5));
    }

    let mut term = ext.from_real(ext.rdiv(&ext.int(1), &ext.real(factorial(n))));
    let mut i_sum = ext.zero();
    let mut psi_sum = ext.zero();
    let mut psi_a = gamma.neg();
    let mut psi_b = gamma.neg();
    for j in 1..=n {
        psi_b = ext.radd(&psi_b, &ext.rdiv(&ext.int(1), &ext.int(j as i64)));
    }
    let tol = 10f64.powi(-(digits as i32));
    let mut k: i64 = 0;
    loop {
        i_sum = ext.add(&i_sum, &term);
        let ps = ext.radd(&psi_a, &psi_b);
        psi_sum = ext.add(&psi_sum, &ext.scale(&term, &ps));
        k += 1;
        let d = ext.int(k * (n as i64 + k));
        term = ext.mul(&term, &q);
        term = BigComplex {
            re: ext.rdiv(&term.re, &d),
            im: ext.rdiv(&term.im, &d),
        };
        psi_a = ext.radd(&psi_a, &ext.rdiv(&ext.int(1), &ext.int(k)));
        psi_b = ext.radd(&psi_b, &ext.rdiv(&ext.int(1), &ext.int(n as i64 + k)));
        let t = term.to_c64().norm() * (k as f64).ln().max(1.0) * 2.0;
        if t < tol * psi_sum.to_c64().norm().max(i_sum.to_c64().norm()) {
            break;
        }
    }
    let ln_h = ext.ln(&h);
    let log_part = ext.mul(&ext.mul(&ln_h, &hn), &i_sum);
    let psi_part = ext.scale(&ext.mul(&hn, &psi_sum), &ext.real(0.5));
    let result = if n % 2 == 0 {
        ext.add(&ext.sub(&finite, &log_part), &psi_part)
    } else {
        ext.sub(&ext.add(&finite, &log_part), &psi_part)
    };
    result.to_c64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(nu: u32, x: f64) -> f64 {
        bessel_k(nu, Complex64::new(x, 0.0), PrecisionSpec::Machine)
            .unwrap()
            .re
    }

    #[test]
    fn euler_gamma_digits() {
        let ext = Ext::with_digits(60);
        let g = euler_gamma_ext(&ext);
        let want = ext.parse("0.577215664901532860606512090082402431042159335939923598805767");
        let d = ext.rsub(&g, &want);
        assert!(super::super::bigfloat::to_f64(&d).abs() < 1e-58);
    }

    #[test]
    fn reference_values() {
        // Tabulated values.
        let oracle = |nu: u32, x: f64| {
            bessel_k(nu, Complex64::new(x, 0.0), PrecisionSpec::Extended { digits: 60 })
                .unwrap()
                .re
        };
        assert!((oracle(0, 1.0) - 0.421_024_438_240_708_3).abs() < 1e-15);
        assert!((k(0, 1.0) - 0.421_024_438_240_708_3).abs() < 1e-15);
        assert!((k(1, 1.0) - 0.601_907_230_197_234_6).abs() < 1e-15);
        assert!((k(0, 2.0) - 0.113_893_872_749_533_4).abs() < 1e-15);
        for x in [0.3, 1.7, 2.5, 8.0, 15.0, 19.0, 40.0] {
            for nu in 0..4 {
                let (m, o) = (k(nu, x), oracle(nu, x));
                assert!((m - o).abs() <= 1e-12 * o.abs(), "nu={nu} x={x} {m} {o}");
            }
        }
    }

    #[test]
    fn branches_agree_across_crossovers() {
        for w in [
            Complex64::new(1.9, 0.6),
            Complex64::new(12.0, 13.0),
            Complex64::new(-5.0, 17.5),
        ] {
            let m = bessel_k(0, w, PrecisionSpec::Machine).unwrap();
            let e = bessel_k(0, w, PrecisionSpec::Extended { digits: 40 }).unwrap();
            assert!((m - e).norm() <= 1e-12 * e.norm(), "w={w}");
        }
    }

    #[test]
    fn schwarz_reflection() {
        for w in [
            Complex64::new(0.5, 1.0),
            Complex64::new(7.0, -3.0),
            Complex64::new(25.0, 9.0),
        ] {
            for nu in [0, 1, 2] {
                let a = bessel_k(nu, w.conj(), PrecisionSpec::Machine).unwrap();
                let b = bessel_k(nu, w, PrecisionSpec::Machine).unwrap().conj();
                assert!((a - b).norm() <= 1e-12 * b.norm());
            }
        }
    }

    #[test]
    fn leading_asymptotic_within_two_percent() {
        let w = Complex64::new(18.0, 24.0);
        let lead = (std::f64::consts::PI / (2.0 * w)).sqrt() * (-w).exp();
        let v = bessel_k(0, w, PrecisionSpec::Machine).unwrap();
        assert!(((v - lead) / v).norm() < 0.02);
    }

    #[test]
    fn derivative_relation() {
        // K_0'(x) = −K_1(x)
        let h = 1e-3;
        let mut x = 0.5;
        while x <= 20.0 {
            let d =
                (8.0 * (k(0, x + h) - k(0, x - h)) - (k(0, x + 2.0 * h) - k(0, x - 2.0 * h))) / (12.0 * h);
            assert!((d + k(1, x)).abs() <= 1e-9 * k(1, x).max(1e-300) + 1e-9, "x={x}");
            x += 0.25;
        }
    }

    #[test]
    fn cut_rejected() {
        assert!(bessel_k(0, Complex64::new(-2.0, 0.0), PrecisionSpec::Machine).is_err());
        assert!(bessel_k(0, Complex64::new(0.0, 0.0), PrecisionSpec::Machine).is_err());
    }
}
