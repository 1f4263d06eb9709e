//! Euler's integral for H_s(w) when t ≤ 1.
//!
//! With q = 1 − w,
//!
//!   H_s(w) = sin(πs)/π ∫₀¹ x^{−s} (1−x)^{s−1} (x + q(1−x))^{s−1} dx,
//!
//! and for |q| > 1 the mirrored form with p = 1/q and prefactor q^{s−1}.
//! Both are instances of ∫ x^{α−1}(1−x)^{β−1}(x + p(1−x))^{s−1} dx with
//! |p| ≤ 1. Each half of [0, 1] is mapped to a half-line by x = e^{−τ}
//! (resp. 1 − x = e^{−τ}), which turns the endpoint powers into plain
//! exponentials and spreads the near-singularity at x ≈ |p| over O(1) in τ.

use super::{BlockValue, Method};
use crate::error::{Error, Result};
use crate::quad::{adaptive_scalar, AdaptiveOpts};
use crate::scalar::PrecisionSpec;
use crate::spectral::{Channel, SpectralPoint};
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

/// Length in τ beyond the last feature where the integrand is replaced by its
/// exponential asymptote.
const TAIL_START: f64 = 40.0;

/// H_s(1 − z²) (u-channel) or H_s(1 − z^{−2}) (t-channel) by Euler's integral.
///
/// Needs t ≤ 1 and Re z > 0. Machine precision only.
pub fn hyp2f1_euler(
    s: SpectralPoint,
    z: Complex64,
    channel: Channel,
    prec: PrecisionSpec,
) -> Result<BlockValue> {
    machine_only(prec)?;
    check_box(s)?;
    if !(z.re > 0.0) || !z.im.is_finite() || !z.re.is_finite() {
        return Err(Error::domain(format!("Euler engine needs Re z > 0, got z = {z}")));
    }
    if s.is_one() {
        return Ok(BlockValue::exact(Complex64::new(1.0, 0.0)));
    }
    let z2 = z * z;
    match channel {
        Channel::U => euler_h_q(s, z2),
        Channel::T if z.norm() <= 1.0 => {
            // (z^{−2})^{s−1} = z^{2(1−s)} because |arg z| < π/2.
            let log_pref = 2.0 * (1.0 - s.s()) * z.ln();
            mirrored(s, z2, log_pref)
        }
        Channel::T => euler_h_q(s, 1.0 / z2),
    }
}

/// H_s(w) for general w off [1, ∞), t ≤ 1.
pub(crate) fn euler_h(s: SpectralPoint, w: Complex64, prec: PrecisionSpec) -> Result<BlockValue> {
    machine_only(prec)?;
    check_box(s)?;
    if s.is_one() {
        return Ok(BlockValue::exact(Complex64::new(1.0, 0.0)));
    }
    euler_h_q(s, 1.0 - w)
}

fn machine_only(prec: PrecisionSpec) -> Result<()> {
    match prec {
        PrecisionSpec::Machine => Ok(()),
        PrecisionSpec::Extended { .. } => Err(Error::Invalid(
            "extended precision is available only through the series engine".into(),
        )),
    }
}

fn check_box(s: SpectralPoint) -> Result<()> {
    if s.t() > 1.0 {
        return Err(Error::domain(format!(
            "Euler engine needs t ≤ 1, got t = {}",
            s.t()
        )));
    }
    Ok(())
}

fn euler_h_q(s: SpectralPoint, q: Complex64) -> Result<BlockValue> {
    if q.im == 0.0 && q.re <= 0.0 {
        return Err(Error::domain(format!("w = {} lies on the cut [1, ∞)", 1.0 - q)));
    }
    if q.norm() <= 1.0 {
        let sv = s.s();
        let (v, err) = integral(sv, q, 1.0 - sv, sv)?;
        finish(sv, v, err, Complex64::new(0.0, 0.0))
    } else {
        let log_pref = (s.s() - 1.0) * q.ln();
        mirrored(s, 1.0 / q, log_pref)
    }
}

fn mirrored(s: SpectralPoint, p: Complex64, log_pref: Complex64) -> Result<BlockValue> {
    let sv = s.s();
    let (v, err) = integral(sv, p, sv, 1.0 - sv)?;
    finish(sv, v, err, log_pref)
}

fn finish(s: Complex64, v: Complex64, err: f64, log_pref: Complex64) -> Result<BlockValue> {
    let k = (PI * s).sin() / PI * log_pref.exp();
    let value = v * k;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::no_conv("Euler integral produced a non-finite value"));
    }
    Ok(BlockValue {
        value,
        abs_err: err * k.norm(),
        method: Method::Euler,
    })
}

/// ∫₀¹ x^{α−1}(1−x)^{β−1}(x + p(1−x))^{s−1} dx for |p| ≤ 1, p off (−∞, 0].
fn integral(s: Complex64, p: Complex64, alpha: Complex64, beta: Complex64) -> Result<(Complex64, f64)> {
    if p == Complex64::new(0.0, 0.0) || (p.im == 0.0 && p.re < 0.0) {
        return Err(Error::domain(format!("Euler integrand degenerate at p = {p}")));
    }
    let sm1 = s - 1.0;
    let log_p = p.ln();
    let opts = AdaptiveOpts {
        rel: 1e-14,
        abs: 0.0,
        max_depth: 50,
        order: 16,
    };
    // The zero of x + p(1 − x) sits at x* = p/(p − 1); it is never on [0, 1]
    // but can come close, so its real projection becomes a breakpoint.
    let x_star = p / (p - 1.0);

    // Left half, x = e^{−τ}.
    let tau_b = -p.norm().ln();
    let tau_c = tau_b.max(LN_2) + TAIL_START;
    let mut breaks = vec![LN_2, tau_c];
    push_inside(&mut breaks, tau_b);
    push_inside(&mut breaks, -x_star.norm().ln());
    let mut x = LN_2 + 5.0;
    while x < tau_c {
        push_inside(&mut breaks, x);
        x += 5.0;
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let left = |tau: f64| {
        let e = (-tau).exp();
        let m = e + p * (1.0 - e);
        (-alpha * tau + (beta - 1.0) * (-e).ln_1p() + sm1 * m.ln()).exp()
    };
    let (lv, le, la, lx) = adaptive_scalar(left, &breaks, opts);
    let left_tail = (sm1 * log_p - alpha * tau_c).exp() / alpha;

    // Right half, 1 − x = e^{−τ}.
    let mut breaks = vec![LN_2, TAIL_START];
    push_inside(&mut breaks, (1.0 - p).norm().ln());
    push_inside(&mut breaks, (1.0 - x_star).norm().recip().ln());
    let mut x = LN_2 + 5.0;
    while x < TAIL_START {
        push_inside(&mut breaks, x);
        x += 5.0;
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let right = |tau: f64| {
        let e = (-tau).exp();
        let xx = 1.0 - e;
        let m = xx + p * e;
        ((alpha - 1.0) * (-e).ln_1p() - beta * tau + sm1 * m.ln()).exp()
    };
    let (rv, re, ra, rx) = adaptive_scalar(right, &breaks, opts);
    let right_tail = (-beta * TAIL_START).exp() / beta;

    if lx || rx {
        return Err(Error::no_conv("Euler quadrature hit its refinement limit"));
    }
    let value = lv + left_tail + rv + right_tail;
    // Asymptote error in the tails is e^{−40} relative.
    let tail_err = 1e-17 * (left_tail.norm() + right_tail.norm()) * (1.0 + sm1.norm());
    // Rounding in the exponent grows with τ.
    let exp_size = 1.0 + (s.norm() + 1.0) * tau_c;
    let err = le + re + tail_err + 4.0 * f64::EPSILON * exp_size * (la + ra);
    Ok((value, err))
}

fn push_inside(breaks: &mut Vec<f64>, x: f64) {
    let (lo, hi) = (breaks[0], breaks[breaks.len() - 1]);
    if x.is_finite() && x > lo + 1e-3 && x < hi - 1e-3 {
        breaks.push(x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::taylor::taylor_ext;
    use crate::hyp::{hyp2f1_taylor, HypRequest};
    use crate::scalar::bigfloat::Ext;

    fn taylor_h(s: SpectralPoint, w: Complex64) -> Complex64 {
        let ext = Ext::with_digits(40);
        let (v, _) = taylor_ext(
            &ext,
            s.s(),
            1.0 - s.s(),
            Complex64::new(1.0, 0.0),
            &ext.cplx(w),
            0.0,
        )
        .unwrap();
        v.to_c64()
    }

    #[test]
    fn s_one_is_exact() {
        let z = Complex64::new(0.1, 0.02);
        for ch in [Channel::U, Channel::T] {
            let v = hyp2f1_euler(SpectralPoint::one(), z, ch, PrecisionSpec::Machine).unwrap();
            assert_eq!(v.value, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn matches_taylor_at_099() {
        let s = SpectralPoint::new(0.75, 0.0).unwrap();
        let v = hyp2f1_euler(s, Complex64::new(0.1, 0.0), Channel::U, PrecisionSpec::Machine).unwrap();
        let r = HypRequest::block(
            s,
            Complex64::new(0.99, 0.0),
            Method::Taylor,
            PrecisionSpec::Machine,
        );
        let t = hyp2f1_taylor(&r).unwrap().value;
        assert!((v.value - t).norm() < 1e-9 * t.norm(), "{} vs {}", v.value, t);
    }

    #[test]
    fn matches_extended_taylor_on_a_grid() {
        let pts = [(0.5, 0.0), (0.5, 0.3), (0.5, 1.0), (0.6, 0.0), (0.95, 0.0)];
        let zs = [
            Complex64::new(0.2, 0.0),
            Complex64::new(0.3, 0.1),
            Complex64::new(0.3, -0.2),
            Complex64::new(0.06, 0.03),
        ];
        for (sig, t) in pts {
            let s = SpectralPoint::new(sig, t).unwrap();
            for z in zs {
                let v = hyp2f1_euler(s, z, Channel::U, PrecisionSpec::Machine).unwrap();
                let want = taylor_h(s, 1.0 - z * z);
                let dev = (v.value - want).norm();
                assert!(dev < 1e-12 * want.norm().max(1.0), "s={sig}+{t}i z={z}: {dev}");
                assert!(
                    v.abs_err >= dev || dev < 1e-15,
                    "s={sig}+{t}i z={z}: error estimate {:e} < {dev:e}",
                    v.abs_err
                );
            }
        }
    }

    #[test]
    fn t_channel_where_series_also_converges() {
        // |1 − z^{−2}| < 1 needs |z| > 1/√2 roughly.
        let s = SpectralPoint::new(0.5, 0.8).unwrap();
        for z in [
            Complex64::new(1.2, 0.0),
            Complex64::new(0.9, 0.3),
            Complex64::new(0.95, -0.2),
        ] {
            let v = hyp2f1_euler(s, z, Channel::T, PrecisionSpec::Machine).unwrap();
            let want = taylor_h(s, 1.0 - 1.0 / (z * z));
            assert!((v.value - want).norm() < 1e-12 * want.norm(), "z={z}");
        }
    }

    #[test]
    fn pfaff_for_negative_w() {
        // H_s(w) = (1 − w)^{−s} ₂F₁(s, s; 1; w/(w − 1))
        let s = SpectralPoint::new(0.5, 0.6).unwrap();
        for w in [
            Complex64::new(-3.0, 0.0),
            Complex64::new(-1.0, 2.0),
            Complex64::new(-50.0, -5.0),
        ] {
            let v = euler_h(s, w, PrecisionSpec::Machine).unwrap();
            let ext = Ext::with_digits(40);
            let x = w / (w - 1.0);
            let (f, _) = taylor_ext(&ext, s.s(), s.s(), Complex64::new(1.0, 0.0), &ext.cplx(x), 0.0).unwrap();
            let want = (1.0 - w).powc(-s.s()) * f.to_c64();
            assert!((v.value - want).norm() < 1e-12 * want.norm(), "w={w}");
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let s = SpectralPoint::new(0.5, 0.4).unwrap();
        let z = Complex64::new(0.03, 0.2);
        for ch in [Channel::U, Channel::T] {
            let a = hyp2f1_euler(s, z, ch, PrecisionSpec::Machine).unwrap().value;
            let b = hyp2f1_euler(s, z.conj(), ch, PrecisionSpec::Machine)
                .unwrap()
                .value;
            assert!((a - b.conj()).norm() < 1e-13 * a.norm());
        }
    }

    #[test]
    fn rejects_outside_box() {
        let s = SpectralPoint::tempered(1.5).unwrap();
        assert!(hyp2f1_euler(s, Complex64::new(0.1, 0.0), Channel::U, PrecisionSpec::Machine).is_err());
        let s = SpectralPoint::tempered(0.5).unwrap();
        assert!(hyp2f1_euler(s, Complex64::new(-0.1, 0.0), Channel::U, PrecisionSpec::Machine).is_err());
        assert!(euler_h(s, Complex64::new(2.0, 0.0), PrecisionSpec::Machine).is_err());
    }
}
