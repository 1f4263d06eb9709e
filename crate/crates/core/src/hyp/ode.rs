//! Continuation of H_s along a path by the hypergeometric ODE
//!
//!   w(1−w)H'' + (1−2w)H' − s(1−s)H = 0.
//!
//! Each step re-expands H as a power series about the current point (exact
//! recurrence from the ODE) and sums it at the step length. Meant as an
//! independent cross-check, not for production evaluation.

use super::taylor::taylor_scaled;
use super::{BlockValue, Method};
use crate::error::{Error, Result};
use crate::scalar::PrecisionSpec;
use crate::spectral::SpectralPoint;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Required distance of the path from the singular points 0 and 1.
pub const CLEARANCE: f64 = 0.05;
const MAX_TERMS: usize = 4000;

/// H_s(target), normalized by e^{−πt} when t > 1, continued from a Taylor
/// anchor on the real axis.
///
/// The path is the straight segment when that keeps its clearance from 0 and
/// 1, and otherwise detours through anchor ± i·max(|Im target|, 1/2). Near
/// 1 the clearance is relaxed to |target − 1| so that targets close to 1 stay
/// reachable.
pub fn hyp2f1_ode_continuation(
    s: SpectralPoint,
    target_w: Complex64,
    anchor_w: f64,
    prec: PrecisionSpec,
) -> Result<BlockValue> {
    ode_continuation_steps(s, target_w, anchor_w, prec).map(|(v, _)| v)
}

/// As [`hyp2f1_ode_continuation`], also returning the number of steps taken.
pub fn ode_continuation_steps(
    s: SpectralPoint,
    target_w: Complex64,
    anchor_w: f64,
    prec: PrecisionSpec,
) -> Result<(BlockValue, usize)> {
    if let PrecisionSpec::Extended { .. } = prec {
        return Err(Error::Invalid(
            "extended precision is available only through the series engine".into(),
        ));
    }
    if !(anchor_w > -0.5 && anchor_w < 0.5) {
        return Err(Error::Path(format!("anchor {anchor_w} is outside (−1/2, 1/2)")));
    }
    if !(target_w.re.is_finite() && target_w.im.is_finite()) {
        return Err(Error::Path(format!("target {target_w} is not finite")));
    }
    let sv = s.s();
    let log_norm = if s.t() > 1.0 { PI * s.t() } else { 0.0 };
    let anchor = Complex64::new(anchor_w, 0.0);
    let start = taylor_scaled(sv, 1.0 - sv, Complex64::new(1.0, 0.0), anchor, log_norm)?;
    if target_w == anchor {
        let v = BlockValue {
            value: start.value,
            abs_err: start.abs_err,
            method: Method::OdeContinuation,
        };
        return Ok((v, 0));
    }
    if target_w.im == 0.0 && target_w.re >= 1.0 {
        return Err(Error::Path(format!("target {target_w} lies on the cut [1, ∞)")));
    }
    let near_one = CLEARANCE.min((target_w - 1.0).norm()) * (1.0 - 1e-12);
    let clear = |a: Complex64, b: Complex64| {
        seg_dist(a, b, Complex64::new(0.0, 0.0)) >= CLEARANCE
            && seg_dist(a, b, Complex64::new(1.0, 0.0)) >= near_one
    };
    // Straight; via a point above (below) the anchor; or across at that
    // height and then straight down (up) onto targets hugging the cut.
    let sign = if target_w.im < 0.0 { -1.0 } else { 1.0 };
    let lift = Complex64::new(0.0, sign * target_w.im.abs().max(0.5));
    let candidates = [
        vec![anchor, target_w],
        vec![anchor, anchor + lift, target_w],
        vec![anchor, anchor + lift, target_w.re + lift, target_w],
    ];
    let path = candidates
        .into_iter()
        .find(|p| p.windows(2).all(|w| clear(w[0], w[1])))
        .ok_or_else(|| {
            Error::Path(format!(
                "no admissible path from {anchor_w} to {target_w} keeps {CLEARANCE} from 0 and 1"
            ))
        })?;
    let lambda = sv * (1.0 - sv);
    let t = s.t().max(1.0);
    let (coarse, steps) = walk(&path, lambda, t, 1.0, start.value, start.deriv)?;
    let (fine, _) = walk(&path, lambda, t, 0.5, start.value, start.deriv)?;
    // Relative anchor error propagates linearly.
    let anchor_rel = start.abs_err / start.value.norm().max(f64::MIN_POSITIVE);
    let err = (fine - coarse).norm() + (anchor_rel + 1e3 * f64::EPSILON) * fine.norm();
    let v = BlockValue {
        value: fine,
        abs_err: err,
        method: Method::OdeContinuation,
    };
    Ok((v, steps))
}

fn seg_dist(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let u = ((p - a) * d.conj()).re / len2;
    (a + d * u.clamp(0.0, 1.0) - p).norm()
}

fn walk(
    path: &[Complex64],
    lambda: Complex64,
    t: f64,
    shrink: f64,
    mut h0: Complex64,
    mut h1: Complex64,
) -> Result<(Complex64, usize)> {
    let mut steps = 0;
    for seg in path.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let len = (b - a).norm();
        let dir = (b - a) / len;
        let mut done = 0.0;
        let mut pos = a;
        while done < len {
            let dist = pos.norm().min((pos - 1.0).norm());
            let p0 = pos * (1.0 - pos);
            let h_max = (0.5 * dist).min(2.0 * p0.norm().sqrt() / t) * shrink;
            let h = h_max.min(len - done);
            let (v, d) = step(pos, lambda, dir * h, h0, h1)?;
            h0 = v;
            h1 = d;
            done += h;
            pos = if done >= len { b } else { a + dir * done };
            steps += 1;
        }
    }
    Ok((h0, steps))
}

/// Advance (H, H') from w0 by dh using the local power series.
fn step(
    w0: Complex64,
    lambda: Complex64,
    dh: Complex64,
    h0: Complex64,
    h1: Complex64,
) -> Result<(Complex64, Complex64)> {
    let p0 = w0 * (1.0 - w0);
    let p1 = 1.0 - 2.0 * w0;
    // Coefficients times dh^n, so that sums need no further powers.
    let mut prev = h0;
    let mut cur = h1 * dh;
    let mut value = prev + cur;
    let mut deriv = cur;
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let next = (-p1 * (nf + 1.0) * (nf + 1.0) * cur * dh + (nf * (nf + 1.0) + lambda) * prev * dh * dh)
            / (p0 * (nf + 2.0) * (nf + 1.0));
        value += next;
        deriv += next * (nf + 2.0);
        let scale = value.norm().max(deriv.norm());
        if next.norm() * (nf + 2.0) <= 1e-18 * scale {
            small += 1;
            if small >= 3 {
                return Ok((value, deriv / dh));
            }
        } else {
            small = 0;
        }
        prev = cur;
        cur = next;
    }
    Err(Error::no_conv(
        "local ODE series did not converge within the term cap",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::connection::hyp2f1_connection_t;
    use crate::hyp::euler::euler_h;
    use crate::hyp::{hyp2f1_taylor, HypRequest};

    const M: PrecisionSpec = PrecisionSpec::Machine;

    #[test]
    fn degenerate_path() {
        let s = SpectralPoint::tempered(3.0).unwrap();
        let (v, steps) = ode_continuation_steps(s, Complex64::new(0.3, 0.0), 0.3, M).unwrap();
        assert_eq!(steps, 0);
        let t = taylor_scaled(
            s.s(),
            1.0 - s.s(),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.3, 0.0),
            PI * 3.0,
        )
        .unwrap();
        assert_eq!(v.value, t.value);
    }

    #[test]
    fn reaches_taylor_value_on_real_axis() {
        let s = SpectralPoint::tempered(5.0).unwrap();
        let v = hyp2f1_ode_continuation(s, Complex64::new(0.96, 0.0), 0.4, M).unwrap();
        let r = HypRequest::block(s, Complex64::new(0.96, 0.0), Method::Taylor, M);
        let want = hyp2f1_taylor(&r).unwrap().value * (-PI * 5.0).exp();
        assert!(
            (v.value - want).norm() < 1e-9 * want.norm(),
            "{} vs {want}",
            v.value
        );
        assert!(v.abs_err < 1e-9 * want.norm());
    }

    #[test]
    fn agrees_with_connection_formula() {
        let s = SpectralPoint::tempered(8.0).unwrap();
        let z = Complex64::new(0.25, 0.1);
        let w = 1.0 - 1.0 / (z * z);
        let v = hyp2f1_ode_continuation(s, w, 0.4, M).unwrap();
        let c = hyp2f1_connection_t(s, z, M).unwrap();
        assert!(
            (v.value - c.value).norm() < 1e-7 * c.value.norm(),
            "{} vs {}",
            v.value,
            c.value
        );
    }

    #[test]
    fn detours_around_zero() {
        let s = SpectralPoint::new(0.5, 0.7).unwrap();
        for w in [Complex64::new(-3.0, 0.0), Complex64::new(-2.0, -0.01)] {
            let v = hyp2f1_ode_continuation(s, w, 0.3, M).unwrap();
            let e = euler_h(s, w, M).unwrap();
            assert!((v.value - e.value).norm() < 1e-10 * e.value.norm(), "w={w}");
        }
    }

    #[test]
    fn target_hugging_the_cut() {
        let s = SpectralPoint::tempered(58.0).unwrap();
        let z = Complex64::new(1.0 / 75.0, 0.07);
        let ode = hyp2f1_ode_continuation(s, 1.0 - z * z, 0.4, M).unwrap();
        let barnes = crate::hyp::hyp2f1_barnes(s, z, M).unwrap();
        assert!((ode.value - barnes.value).norm() < 1e-9 * barnes.value.norm());
    }

    #[test]
    fn path_errors() {
        let s = SpectralPoint::tempered(2.0).unwrap();
        let e = hyp2f1_ode_continuation(s, Complex64::new(2.0, 0.0), 0.3, M).unwrap_err();
        assert!(matches!(e, Error::Path(_)));
        let e = hyp2f1_ode_continuation(s, Complex64::new(-1.0, 0.0), 0.01, M).unwrap_err();
        assert!(matches!(e, Error::Path(_)));
        let e = hyp2f1_ode_continuation(s, Complex64::new(0.2, 0.0), 0.7, M).unwrap_err();
        assert!(matches!(e, Error::Path(_)));
    }
}
