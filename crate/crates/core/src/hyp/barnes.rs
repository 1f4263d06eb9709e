//! u-channel values e^{−πt}·H_s(1 − z²) for t ≥ 1 by a Mellin–Barnes integral.
//!
//! With x = z², s = 1/2 + it,
//!
//!   e^{−πt} H_s(1 − x) = (1 + e^{−2πt})²/(4π²) · (1/2πi) ∫ f(s') ds',
//!   f(s') = Γ(s')² Γ(1/2 + it − s') Γ(1/2 − it − s') x^{−s'} e^{πt},
//!
//! along any upward contour separating the poles of Γ(s')² from those of
//! Γ(1/2 ± it − s'). The base contour is Re s' = 1/4. When the saddle point
//! s* = tz/√(1 − z²) lies to the right, the middle of the contour is moved to
//! Re s' = Re s* (joined back to Re s' = 1/4 by horizontal pieces below the
//! poles at Im s' = ±t). Without that shift the integral suffers cancellation
//! of order e^{2t·Re z} when the block is exponentially small.
//!
//! The t-dependent gamma factors do not depend on z, so a [`BarnesKernel`]
//! tabulates them once on quadrature nodes and then evaluates each z as a
//! plain exponential sum.

use super::{BlockValue, Method};
use crate::error::{Error, Result};
use crate::quad::{adaptive, AdaptiveOpts, GaussLegendre};
use crate::scalar::{log_gamma, PrecisionSpec};
use crate::spectral::SpectralPoint;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Real part of the unshifted contour.
pub const BASE_LINE: f64 = 0.25;
/// Smallest admissible Re z/|z|.
pub const MIN_DELTA: f64 = 1e-6;
const ORDER: usize = 32;
const REL_TOL: f64 = 1e-13;
const MAX_REPS: usize = 8;

#[derive(Debug, Clone, Copy)]
struct Node {
    s: Complex64,
    /// log of weight × dz/du /(2πi) × prefactor × Γ-factors × e^{πt}
    log_w: Complex64,
    log_w_abs: f64,
    s_abs: f64,
}

/// One accepted panel: 2×32 nodes on its halves, 32 on the whole for the
/// error estimate.
///
/// Relative to a reference point s₀ on the panel, each term is
/// e^{log w₀ − 2 s₀ log z} · w'_j · e^{q Δ_j} with q = −2·dir·log z, so the
/// sums are Σ_k q^k/k! · M_k with moments M_k = Σ_j w'_j Δ_j^k that do not
/// depend on z. That costs a few dozen multiplications per panel instead of
/// one complex exponential per node.
#[derive(Debug, Clone)]
struct Panel {
    v_lo: f64,
    v_hi: f64,
    s_ref: Complex64,
    log_ref: Complex64,
    dir: Complex64,
    reach: f64,
    fine_moments: Vec<Complex64>,
    coarse_moments: Vec<Complex64>,
    /// Σ_j |w'_j| over the fine nodes.
    fine_abs: f64,
    /// Largest |log w_j| and |s_j| on the panel, for rounding estimates.
    log_w_max: f64,
    s_max: f64,
    fine: Vec<Node>,
    coarse: Vec<Node>,
}

const MOMENTS: usize = 48;
/// Beyond this |q|·reach the moment series is abandoned for direct sums.
const MOMENT_REACH: f64 = 6.0;

impl Panel {
    fn new(fine: Vec<Node>, coarse: Vec<Node>, s_ref: Complex64, dir: Complex64) -> Panel {
        let log_ref = fine[fine.len() / 2].log_w;
        let moments = |nodes: &[Node]| {
            let mut m = vec![Complex64::new(0.0, 0.0); MOMENTS];
            for n in nodes {
                let w = (n.log_w - log_ref).exp();
                let d = ((n.s - s_ref) / dir).re;
                let mut p = w;
                for slot in m.iter_mut() {
                    *slot += p;
                    p *= d;
                }
            }
            m
        };
        let reach = fine.iter().map(|n| (n.s - s_ref).norm()).fold(0.0, f64::max);
        let v = fine.iter().map(|n| n.s.im);
        let (v_lo, v_hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| {
            (a.min(x), b.max(x))
        });
        Panel {
            v_lo,
            v_hi,
            s_ref,
            log_ref,
            dir,
            reach,
            fine_moments: moments(&fine),
            coarse_moments: moments(&coarse),
            fine_abs: fine.iter().map(|n| (n.log_w - log_ref).re.exp()).sum(),
            log_w_max: fine.iter().map(|n| n.log_w_abs).fold(0.0, f64::max),
            s_max: fine.iter().map(|n| n.s_abs).fold(0.0, f64::max),
            fine,
            coarse,
        }
    }

    /// (fine sum, coarse sum, Σ|terms| bound, rounding-weighted bound).
    fn sums(&self, l: Complex64) -> (Complex64, Complex64, f64, f64) {
        let q = -2.0 * self.dir * l;
        let x = q.norm() * self.reach;
        let cond_w = self.log_w_max + 2.0 * self.s_max * l.norm();
        if x > MOMENT_REACH {
            let direct = |nodes: &[Node]| {
                let mut acc = Complex64::new(0.0, 0.0);
                let mut abs = 0.0;
                for n in nodes {
                    let e = n.log_w - 2.0 * n.s * l;
                    let m = e.re.exp();
                    let (sin, cos) = e.im.sin_cos();
                    acc += Complex64::new(m * cos, m * sin);
                    abs += m;
                }
                (acc, abs)
            };
            let (f, abs) = direct(&self.fine);
            let (c, _) = direct(&self.coarse);
            return (f, c, abs, abs * cond_w);
        }
        let base = (self.log_ref - 2.0 * self.s_ref * l).exp();
        let mut f = Complex64::new(0.0, 0.0);
        let mut c = Complex64::new(0.0, 0.0);
        let mut qk = Complex64::new(1.0, 0.0);
        let mut bound = 1.0;
        for k in 0..MOMENTS {
            f += qk * self.fine_moments[k];
            c += qk * self.coarse_moments[k];
            let k1 = (k + 1) as f64;
            qk *= q / k1;
            bound *= x / k1;
            if bound < 1e-18 {
                break;
            }
        }
        let abs = base.norm() * self.fine_abs * x.exp();
        (f * base, c * base, abs, abs * (cond_w + MOMENTS as f64))
    }
}

/// Tabulated contour for one spectral point and a batch of z values.
#[derive(Debug, Clone)]
pub struct BarnesKernel {
    t: f64,
    shift: f64,
    turn: f64,
    v_end: f64,
    panels: Vec<Panel>,
    log_pref: f64,
}

fn delta_of(z: Complex64) -> f64 {
    z.re / z.norm()
}

fn saddle(t: f64, z: Complex64) -> Complex64 {
    t * z / (1.0 - z * z).sqrt()
}

/// Validate a z for the Barnes engine.
fn check_z(z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) || !(z.re > 0.0) {
        return Err(Error::domain(format!(
            "Barnes engine needs Re z > 0, got z = {z}"
        )));
    }
    if delta_of(z) < MIN_DELTA {
        return Err(Error::Conditioning(format!(
            "Re z/|z| = {:e} < {MIN_DELTA:e}; the Barnes integrand barely decays",
            delta_of(z)
        )));
    }
    Ok(())
}

impl BarnesKernel {
    /// Kernel for a single z.
    pub fn for_point(s: SpectralPoint, z: Complex64, prec: PrecisionSpec) -> Result<Self> {
        Self::new(s, &[z], prec)
    }

    /// Kernel covering every z in `zs`. Quadrature is refined until a handful
    /// of representative z (the extremes of |z|, arg z and the saddle) all
    /// converge; each later evaluation still reports its own error estimate.
    pub fn new(s: SpectralPoint, zs: &[Complex64], prec: PrecisionSpec) -> Result<Self> {
        if let PrecisionSpec::Extended { .. } = prec {
            return Err(Error::Invalid(
                "extended precision is available only through the series engine".into(),
            ));
        }
        let t = s.t();
        if s.sigma() != 0.5 || t < 1.0 {
            return Err(Error::domain(format!(
                "Barnes engine needs s = 1/2 + it with t ≥ 1, got σ = {}, t = {t}",
                s.sigma()
            )));
        }
        if zs.is_empty() {
            return Err(Error::Invalid("Barnes kernel needs at least one z".into()));
        }
        for &z in zs {
            check_z(z)?;
        }
        let reps = representatives(t, zs);
        let logs: Vec<Complex64> = reps.iter().map(|z| z.ln()).collect();
        let g = |sp: Complex64| gamma_part(t, sp);

        // Contour shape. Shift only when the horizontal pieces stay well below
        // the peak of the unshifted integrand, which sets its cancellation.
        let log_mag = |sp: Complex64| -> Result<f64> {
            let gv = g(sp)?;
            Ok(logs
                .iter()
                .map(|l| (gv - 2.0 * sp * l).re)
                .fold(f64::NEG_INFINITY, f64::max))
        };
        let c_min = zs.iter().map(|&z| saddle(t, z).re).fold(f64::INFINITY, f64::min);
        let im_max = zs.iter().map(|&z| saddle(t, z).im.abs()).fold(0.0, f64::max);
        let mut shift = BASE_LINE;
        let mut turn = 0.0;
        if c_min > BASE_LINE + 0.05 {
            let reach = (t - 1.0).max(im_max + 1.0);
            let mut flat_peak = f64::NEG_INFINITY;
            for j in 0..=32 {
                let v = reach * (j as f64 / 16.0 - 1.0);
                flat_peak = flat_peak.max(log_mag(Complex64::new(BASE_LINE, v))?);
            }
            let mut best: Option<(f64, f64)> = None;
            for frac in [0.5, 0.6, 0.75, 0.9, 1.0] {
                let v = (frac * t).min(t - 1.0);
                if v < im_max + 1.0 {
                    continue;
                }
                let worst = connector_peak(&log_mag, c_min, v)?;
                if best.map_or(true, |(_, w)| worst < w) {
                    best = Some((v, worst));
                }
            }
            if let Some((v, worst)) = best {
                if worst < flat_peak - 1.0 {
                    shift = c_min;
                    turn = v;
                }
            }
        }
        let shifted = shift > BASE_LINE;
        let at_height = |v: f64| {
            if shifted && v.abs() <= turn {
                Complex64::new(shift, v)
            } else {
                Complex64::new(BASE_LINE, v)
            }
        };
        // Reference size: the integrand at the saddle heights.
        let mut peak = f64::NEG_INFINITY;
        for &z in &reps {
            let h = saddle(t, z).im;
            peak = peak.max(log_mag(at_height(h))?);
        }
        let mut v_end: f64 = 0.0;
        for &z in zs {
            let d = delta_of(z);
            let cap = t
                .powf(2.0 / 3.0)
                .max((40.0 + 2.0 * BASE_LINE * (1.0 / z.norm()).ln().max(0.0)) / (2.0 * d));
            v_end = v_end.max(cap);
        }
        let v_max = t + 15.0;
        v_end = v_end.min(v_max).max(im_max + 10.0);
        // Push the truncation out until the neglected tail is negligible.
        while v_end < v_max {
            let mut tail = f64::NEG_INFINITY;
            for sign in [-1.0, 1.0] {
                let a = log_mag(at_height(sign * v_end))?;
                let b = log_mag(at_height(sign * (v_end - 1.0)))?;
                tail = tail.max(a - (b - a).max(0.01).ln());
            }
            if tail < peak + (1e-18f64).ln() {
                break;
            }
            v_end = (v_end * 1.25).min(v_max);
        }
        let pieces: Vec<(Complex64, Complex64)> = if shifted && v_end > turn {
            let c = |x: f64, v: f64| Complex64::new(x, v);
            vec![
                (c(BASE_LINE, -v_end), c(BASE_LINE, -turn)),
                (c(BASE_LINE, -turn), c(shift, -turn)),
                (c(shift, -turn), c(shift, turn)),
                (c(shift, turn), c(BASE_LINE, turn)),
                (c(BASE_LINE, turn), c(BASE_LINE, v_end)),
            ]
        } else {
            vec![(Complex64::new(shift, -v_end), Complex64::new(shift, v_end))]
        };
        let turn = if shifted { turn.min(v_end) } else { v_end };

        // Breakpoints in arclength, panels no wider than one period of the
        // x^{−s'} oscillation; a 32-point rule resolves that easily.
        let min_abs = reps.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        let width = (PI / min_abs.ln().abs().max(1e-3)).min(4.0);
        let mut starts = Vec::with_capacity(pieces.len() + 1);
        let mut acc = 0.0;
        let mut breaks = vec![0.0];
        for &(a, b) in &pieces {
            starts.push(acc);
            let len = (b - a).norm();
            let n = (len / width).ceil().max(1.0) as usize;
            for j in 1..=n {
                breaks.push(acc + len * j as f64 / n as f64);
            }
            acc += len;
        }
        starts.push(acc);
        let locate = |u: f64| -> (Complex64, Complex64) {
            let i = match starts.iter().rposition(|&s0| s0 <= u) {
                Some(i) if i < pieces.len() => i,
                _ => pieces.len() - 1,
            };
            let (a, b) = pieces[i];
            let dir = (b - a) / (b - a).norm();
            (a + dir * (u - starts[i]), dir)
        };

        // Each representative is scaled to unit peak so that one absolute
        // tolerance serves all of them and negligible stretches of the
        // contour are not refined for nothing.
        let mut peaks = vec![f64::NEG_INFINITY; logs.len()];
        for &u in &breaks {
            let (sp, _) = locate(u);
            let gv = g(sp)?;
            for (p, l) in peaks.iter_mut().zip(&logs) {
                *p = p.max((gv - 2.0 * sp * l).re);
            }
        }
        let i2pi = Complex64::new(0.0, 2.0 * PI);
        let mut failure = None;
        let mut f = |u: f64, out: &mut [Complex64]| {
            let (sp, dir) = locate(u);
            match g(sp) {
                Ok(gv) => {
                    let base = gv + (dir / i2pi).ln();
                    for ((o, l), p) in out.iter_mut().zip(&logs).zip(&peaks) {
                        *o = (base - 2.0 * sp * l - p).exp();
                    }
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
                }
            }
        };
        // The log-gamma sums carry absolute errors of a few ulps of πt, which
        // no amount of refinement removes.
        let noise = 4.0 * f64::EPSILON * (PI * t + 2.0 * shift * min_abs.ln().abs() + 10.0);
        let rel = REL_TOL.max(noise);
        let opts = AdaptiveOpts {
            rel,
            abs: 1e-2 * rel,
            max_depth: 30,
            order: ORDER,
        };
        let res = adaptive(&mut f, reps.len(), &breaks, opts);
        if let Some(e) = failure {
            return Err(e);
        }
        if res.exhausted {
            return Err(Error::no_conv("Barnes quadrature hit its refinement limit"));
        }

        let rule = GaussLegendre::cached(ORDER);
        let nodes_on = |a: f64, b: f64| -> Result<Vec<Node>> {
            rule.on(a, b)
                .map(|(u, w)| {
                    let (sp, dir) = locate(u);
                    let log_w = g(sp)? + (w * dir / i2pi).ln();
                    Ok(Node {
                        s: sp,
                        log_w,
                        log_w_abs: log_w.norm(),
                        s_abs: sp.norm(),
                    })
                })
                .collect()
        };
        let mut panels = Vec::with_capacity(res.panels.len());
        for &(a, b) in &res.panels {
            let m = 0.5 * (a + b);
            let mut fine = nodes_on(a, m)?;
            fine.extend(nodes_on(m, b)?);
            let (s_ref, dir) = locate(m);
            panels.push(Panel::new(fine, nodes_on(a, b)?, s_ref, dir));
        }

        let log_pref = 2.0 * (-2.0 * PI * t).exp().ln_1p() - (4.0 * PI * PI).ln();
        Ok(BarnesKernel {
            t,
            shift,
            turn,
            v_end,
            panels,
            log_pref,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Real part of the shifted middle of the contour (1/4 when unshifted).
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// Height of the horizontal pieces and of the truncation.
    pub fn heights(&self) -> (f64, f64) {
        (self.turn, self.v_end)
    }

    pub fn nodes(&self) -> usize {
        self.panels.iter().map(|p| p.fine.len()).sum()
    }

    fn at_height(&self, v: f64) -> Complex64 {
        if self.shift > BASE_LINE && v.abs() <= self.turn {
            Complex64::new(self.shift, v)
        } else {
            Complex64::new(BASE_LINE, v)
        }
    }

    fn log_mag(&self, sp: Complex64, l: Complex64) -> Result<f64> {
        Ok((gamma_part(self.t, sp)? - 2.0 * sp * l).re)
    }

    /// Bound on the integral beyond height ±v, from the decay rate there.
    fn tail_bound(&self, v: f64, l: Complex64) -> Result<f64> {
        let mut tail = 0.0;
        for sign in [-1.0, 1.0] {
            let a = self.log_mag(self.at_height(sign * v), l)?;
            let b = self.log_mag(self.at_height(sign * (v - 1.0)), l)?;
            let rate = b - a;
            let edge = (a - (2.0 * PI).ln()).exp();
            tail += if rate > 0.01 { edge / rate } else { edge * 1e3 };
        }
        Ok(tail)
    }

    /// e^{−πt}·H_s(1 − z²).
    pub fn eval(&self, z: Complex64) -> Result<BlockValue> {
        check_z(z)?;
        let l = z.ln();
        // Per-z truncation: the batch contour reaches as far as its worst z
        // needs, but most z decay much sooner.
        let t = self.t;
        let d = delta_of(z);
        let sad = saddle(t, z).im;
        let cap = t
            .powf(2.0 / 3.0)
            .max((40.0 + 2.0 * BASE_LINE * (1.0 / z.norm()).ln().max(0.0)) / (2.0 * d));
        let mut cut = cap.max(sad.abs() + 10.0).min(self.v_end);
        let peak = self.log_mag(self.at_height(sad.clamp(-self.v_end, self.v_end)), l)?;
        let mut tail = self.tail_bound(cut, l)?;
        while cut < self.v_end && tail > 1e-18 * (peak - (2.0 * PI).ln()).exp() {
            cut = (cut * 1.25).min(self.v_end);
            tail = self.tail_bound(cut, l)?;
        }
        let lo = self.panels.partition_point(|p| p.v_hi <= -cut);
        let hi = self.panels.partition_point(|p| p.v_lo < cut);
        let (mut fine, mut coarse) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let (mut abs, mut cond) = (0.0, 0.0);
        for p in &self.panels[lo..hi.max(lo)] {
            let (f, c, a, r) = p.sums(l);
            fine += f;
            coarse += c;
            abs += a;
            cond += r;
        }
        if cut >= self.v_end {
            tail = self.tail_bound(self.v_end, l)?;
        }
        let pref = self.log_pref.exp();
        let value = fine * pref;
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::no_conv("Barnes sum is not finite"));
        }
        let err = (fine - coarse).norm() + tail + 4.0 * f64::EPSILON * (cond + 4.0 * abs);
        Ok(BlockValue {
            value,
            abs_err: err * pref,
            method: Method::Barnes,
        })
    }
}

/// e^{−πt}·H_s(1 − z²) by the Barnes integral.
pub fn hyp2f1_barnes(s: SpectralPoint, z: Complex64, prec: PrecisionSpec) -> Result<BlockValue> {
    BarnesKernel::for_point(s, z, prec)?.eval(z)
}

/// log of Γ(s')² Γ(1/2 + it − s') Γ(1/2 − it − s') e^{πt}.
fn gamma_part(t: f64, sp: Complex64) -> Result<Complex64> {
    let m = PrecisionSpec::Machine;
    let it = Complex64::new(0.0, t);
    Ok(2.0 * log_gamma(sp, m)? + log_gamma(0.5 + it - sp, m)? + log_gamma(0.5 - it - sp, m)? + PI * t)
}

/// Largest log-magnitude of the integrand along the horizontal pieces at ±v.
fn connector_peak(log_mag: &dyn Fn(Complex64) -> Result<f64>, c: f64, v: f64) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for j in 0..=8 {
        let x = BASE_LINE + (c - BASE_LINE) * j as f64 / 8.0;
        for sign in [-1.0, 1.0] {
            worst = worst.max(log_mag(Complex64::new(x, sign * v))?);
        }
    }
    Ok(worst)
}

/// A few z that bracket the batch: extremes of |z|, Re z/|z| and the saddle.
fn representatives(t: f64, zs: &[Complex64]) -> Vec<Complex64> {
    let mut idx: Vec<usize> = Vec::new();
    let mut arg_ext = |key: &dyn Fn(Complex64) -> f64| {
        let mut lo = 0;
        let mut hi = 0;
        for (i, &z) in zs.iter().enumerate() {
            if key(z) < key(zs[lo]) {
                lo = i;
            }
            if key(z) > key(zs[hi]) {
                hi = i;
            }
        }
        idx.push(lo);
        idx.push(hi);
    };
    arg_ext(&|z| z.norm());
    arg_ext(&|z| delta_of(z));
    arg_ext(&|z| saddle(t, z).im);
    let n = zs.len();
    for j in 0..3 {
        idx.push((n - 1) * (2 * j + 1) / 6);
    }
    idx.sort_unstable();
    idx.dedup();
    idx.truncate(MAX_REPS);
    idx.into_iter().map(|i| zs[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::taylor::u_block_reference;
    use crate::scalar::bessel_k;

    const M: PrecisionSpec = PrecisionSpec::Machine;

    #[test]
    fn bessel_confluence_point() {
        let t = 200.0;
        let s = SpectralPoint::tempered(t).unwrap();
        let v = hyp2f1_barnes(s, Complex64::new(1.0 / t, 0.0), M).unwrap();
        let k0 = bessel_k(0, Complex64::new(2.0, 0.0), M).unwrap().re;
        assert!((PI * v.value.re - k0).abs() < 1e-4, "{} vs {k0}", PI * v.value.re);
        assert!((PI * v.value.re - 0.1138938727).abs() < 1e-4);
    }

    #[test]
    fn matches_extended_series() {
        for (t, z) in [
            (10.0, 0.3),
            (2.0, 0.05),
            (2.0, 0.5),
            (10.0, 0.1),
            (50.0, 0.5),
            (50.0, 0.2),
        ] {
            let s = SpectralPoint::tempered(t).unwrap();
            let zc = Complex64::new(z, 0.0);
            let v = hyp2f1_barnes(s, zc, M).unwrap();
            let want = u_block_reference(s, zc, 60.max((1.4 * t) as u32 + 30))
                .unwrap()
                .value;
            let rel = (v.value - want).norm() / want.norm();
            assert!(rel < 1e-9, "t={t} z={z}: {} vs {want} (rel {rel:e})", v.value);
            assert!(
                v.abs_err >= (v.value - want).norm() * 0.1,
                "t={t} z={z} err {:e}",
                v.abs_err
            );
        }
    }

    #[test]
    fn complex_z_against_series() {
        // |1 − z²| < 1 needs Re(z²) > 0 roughly; keep |arg z| < π/4.
        let s = SpectralPoint::tempered(12.0).unwrap();
        for z in [
            Complex64::new(0.3, 0.1),
            Complex64::new(0.2, -0.15),
            Complex64::new(0.5, 0.3),
        ] {
            let v = hyp2f1_barnes(s, z, M).unwrap();
            let want = u_block_reference(s, z, 60).unwrap().value;
            assert!(
                (v.value - want).norm() < 1e-10 * want.norm(),
                "z={z}: {} vs {want}",
                v.value
            );
        }
    }

    #[test]
    fn conjugate_reflection() {
        let s = SpectralPoint::tempered(25.0).unwrap();
        let z = Complex64::new(0.02, 0.1);
        let a = hyp2f1_barnes(s, z, M).unwrap().value;
        let b = hyp2f1_barnes(s, z.conj(), M).unwrap().value;
        assert!((a - b.conj()).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn batch_kernel_matches_single_points() {
        let t = 40.0;
        let s = SpectralPoint::tempered(t).unwrap();
        let big_t = 75.0;
        let zs: Vec<Complex64> = (0..20)
            .map(|j| Complex64::new(1.0 / big_t, 0.008 * j as f64))
            .collect();
        let k = BarnesKernel::new(s, &zs, M).unwrap();
        for &z in zs.iter().step_by(3) {
            let a = k.eval(z).unwrap();
            let b = hyp2f1_barnes(s, z, M).unwrap();
            let scale = a.value.norm().max(1e-300);
            assert!(
                (a.value - b.value).norm() < 1e-10 * scale + a.abs_err + b.abs_err,
                "z={z}"
            );
        }
    }

    #[test]
    fn conditioning_and_domain() {
        let s = SpectralPoint::tempered(5.0).unwrap();
        let e = hyp2f1_barnes(s, Complex64::new(1e-9, 0.3), M).unwrap_err();
        assert!(matches!(e, Error::Conditioning(_)));
        assert!(hyp2f1_barnes(s, Complex64::new(-0.1, 0.0), M).is_err());
        let low = SpectralPoint::tempered(0.5).unwrap();
        assert!(hyp2f1_barnes(low, Complex64::new(0.1, 0.0), M).is_err());
    }
}
