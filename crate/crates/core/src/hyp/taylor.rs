//! The defining series Σ (a)_n (b)_n / (c)_n · z^n / n!.

use super::{BlockValue, HypRequest, Method};
use crate::error::{Error, Result};
use crate::scalar::bigfloat::{to_f64, BigComplex, Ext};
use crate::scalar::PrecisionSpec;
use crate::spectral::SpectralPoint;
use num_complex::Complex64;

const TERM_CAP: usize = 100_000_000;
const MACHINE_TOL: f64 = 1e-17;
const RESCALE_AT: f64 = 1e150;

/// Partial-sum output of the machine series, scaled by e^{−log_norm}.
#[derive(Debug, Clone, Copy)]
pub struct TaylorSum {
    pub value: Complex64,
    pub abs_err: f64,
    /// d/dz of the scaled sum.
    pub deriv: Complex64,
    pub deriv_err: f64,
    pub terms: usize,
}

/// ₂F₁ by its power series.
///
/// Machine mode needs |z| < 1 − 1e−6. Extended mode accepts |z| < 1 and is
/// limited only by the term cap.
pub fn hyp2f1_taylor(req: &HypRequest) -> Result<BlockValue> {
    req.check_c()?;
    let (value, abs_err) = match req.prec {
        PrecisionSpec::Machine => {
            let r = taylor_scaled(req.a, req.b, req.c, req.z, 0.0)?;
            (r.value, r.abs_err)
        }
        PrecisionSpec::Extended { digits } => {
            let ext = Ext::with_digits(digits);
            let w = ext.cplx(req.z);
            let (v, err) = taylor_ext(&ext, req.a, req.b, req.c, &w, 0.0)?;
            (v.to_c64(), err)
        }
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::domain(
            "series value overflows double precision; use a scaled evaluation",
        ));
    }
    Ok(BlockValue {
        value,
        abs_err,
        method: Method::Taylor,
    })
}

/// e^{−log_norm} · ₂F₁(a, b; c; z) and its z-derivative in double precision.
///
/// The running sum carries its own exponent, so the unscaled value may lie
/// far outside the f64 range as long as the scaled one does not.
pub fn taylor_scaled(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    log_norm: f64,
) -> Result<TaylorSum> {
    if z.norm() >= 1.0 - 1e-6 {
        return Err(Error::domain(format!(
            "machine Taylor series needs |z| < 1 − 1e−6, got |z| = {}",
            z.norm()
        )));
    }
    let mut exp_shift = -log_norm;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut weighted_abs = 1.0;
    let mut small_run = 0;
    let mut n = 0usize;
    let mut last;
    let mut ratio;
    loop {
        let nf = n as f64;
        let r = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        ratio = (r * z).norm();
        term *= r * z;
        n += 1;
        if term == Complex64::new(0.0, 0.0) {
            last = 0.0;
            break;
        }
        sum += term;
        dsum += term * n as f64;
        let size = term.norm();
        weighted_abs += size * (n + 1) as f64;
        last = size;
        if size < MACHINE_TOL * sum.norm() && ratio < 1.0 {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
        if size > RESCALE_AT {
            term /= RESCALE_AT;
            sum /= RESCALE_AT;
            dsum /= RESCALE_AT;
            weighted_abs /= RESCALE_AT;
            exp_shift += RESCALE_AT.ln();
        }
        if n >= TERM_CAP {
            return Err(Error::no_conv(format!(
                "Taylor series hit the {TERM_CAP}-term cap"
            )));
        }
    }
    let tail = if ratio < 1.0 {
        last * ratio / (1.0 - ratio)
    } else {
        last
    };
    let err = 10.0 * last + tail + 4.0 * f64::EPSILON * weighted_abs;
    let scale = exp_shift.exp();
    let deriv = if z == Complex64::new(0.0, 0.0) {
        a * b / c * scale
    } else {
        dsum / z * scale
    };
    let deriv_err = if z.norm() > 0.0 {
        err * n as f64 / z.norm() * scale
    } else {
        0.0
    };
    Ok(TaylorSum {
        value: sum * scale,
        abs_err: err * scale,
        deriv,
        deriv_err,
        terms: n,
    })
}

/// Extended-precision series, scaled by e^{−log_norm}. Returns the scaled sum
/// and an f64 error bound.
pub fn taylor_ext(
    ext: &Ext,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: &BigComplex,
    log_norm: f64,
) -> Result<(BigComplex, f64)> {
    let zf = z.to_c64();
    if zf.norm() >= 1.0 {
        return Err(Error::domain(format!(
            "Taylor series needs |z| < 1, got {}",
            zf.norm()
        )));
    }
    let digits = (ext.bits() as f64 / std::f64::consts::LOG2_10) as i32;
    let tol = 10f64.powi(-(digits - 8).max(20));
    let (ba, bb, bc) = (ext.cplx(a), ext.cplx(b), ext.cplx(c));
    let one = ext.one();
    let mut term = ext.one();
    let mut sum = ext.one();
    let mut nb = ext.zero();
    let mut small_run = 0;
    let mut last;
    let mut n = 0usize;
    loop {
        let num = ext.mul(&ext.add(&ba, &nb), &ext.add(&bb, &nb));
        let nb1 = ext.add(&nb, &one);
        let den = ext.mul(&ext.add(&bc, &nb), &nb1);
        term = ext.mul(&term, &ext.div(&ext.mul(&num, z), &den));
        sum = ext.add(&sum, &term);
        nb = nb1;
        n += 1;
        let size = term.to_c64().norm();
        last = size;
        if size == 0.0 {
            break;
        }
        let ratio =
            (((a + (n - 1) as f64) * (b + (n - 1) as f64)) / ((c + (n - 1) as f64) * n as f64) * zf).norm();
        if size < tol * sum.to_c64().norm() && ratio < 1.0 {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
        if n >= TERM_CAP {
            return Err(Error::no_conv(format!(
                "Taylor series hit the {TERM_CAP}-term cap"
            )));
        }
    }
    let ratio = zf.norm();
    let tail = last * ratio / (1.0 - ratio);
    let mut err = 10.0 * last + tail;
    if log_norm != 0.0 {
        let k = ext.rexp(&ext.real(-log_norm));
        sum = ext.scale(&sum, &k);
        err *= to_f64(&k);
    }
    Ok((sum, err))
}

/// e^{−πt}·H_s(1 − z²) for t > 1 (plain H_s for t ≤ 1), summed in extended
/// precision with 1 − z² formed exactly.
///
/// Positive-term series for real z, so this is a reliable reference wherever
/// |1 − z²| < 1.
pub fn u_block_reference(s: SpectralPoint, z: Complex64, digits: u32) -> Result<BlockValue> {
    let ext = Ext::with_digits(digits);
    let bz = ext.cplx(z);
    let w = ext.sub(&ext.one(), &ext.mul(&bz, &bz));
    let log_norm = if s.t() > 1.0 {
        std::f64::consts::PI * s.t()
    } else {
        0.0
    };
    let (v, err) = taylor_ext(&ext, s.s(), 1.0 - s.s(), Complex64::new(1.0, 0.0), &w, log_norm)?;
    let value = v.to_c64();
    Ok(BlockValue {
        value,
        abs_err: err + f64::EPSILON * value.norm(),
        method: Method::Taylor,
    })
}
