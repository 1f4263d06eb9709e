//! The averaged weights W(s) and W̌(s): the u- and t-channel blocks
//! integrated against e^{−(Hy)²} e^{2iTy} dy on the segment z = 1/T + iy,
//! |y| ≤ T^ε/H, with the Gaussian cut off sharply at the ends.

use crate::blocks::{block_htilde_t, block_htilde_u, ChannelBlock};
use crate::error::{Error, Result};
use crate::hyp::BlockValue;
use crate::quad::GaussLegendre;
use crate::scalar::PrecisionSpec;
use crate::spectral::{Channel, SpectralPoint, WeightParams};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Panel layout and stopping rule for the weight integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Gauss–Legendre points per panel.
    pub panel_order: usize,
    /// Largest phase advance of the integrand across one initial panel.
    pub phase_per_panel: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            panel_order: 32,
            phase_per_panel: PI / 2.0,
            rel_tol: 1e-9,
            max_panels: 1 << 20,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.panel_order < 2 || self.panel_order > 128 {
            return Err(Error::Invalid(format!(
                "panel order {} not in [2, 128]",
                self.panel_order
            )));
        }
        if !(self.phase_per_panel > 0.0 && self.phase_per_panel <= PI) {
            return Err(Error::Invalid(format!(
                "phase per panel {} not in (0, π]",
                self.phase_per_panel
            )));
        }
        if !(self.rel_tol >= 1e-13 && self.rel_tol < 1.0) {
            return Err(Error::Invalid(format!(
                "rel_tol {} not in [1e-13, 1)",
                self.rel_tol
            )));
        }
        if self.max_panels == 0 {
            return Err(Error::Invalid("max_panels must be positive".into()));
        }
        Ok(())
    }
}

/// A weight value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightResult {
    pub value: f64,
    pub abs_err: f64,
    pub panels_used: usize,
}

/// The full complex integral over [−Y, Y], without using the reflection
/// symmetry. Its imaginary part should vanish up to `abs_err`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawWeight {
    pub value: Complex64,
    pub abs_err: f64,
    pub panels_used: usize,
}

/// W(s).
pub fn weight_w_exact(s: SpectralPoint, params: &WeightParams, q: &QuadratureSpec) -> Result<WeightResult> {
    weight_exact(Channel::U, s, params, q)
}

/// W̌(s).
pub fn weight_wcheck_exact(
    s: SpectralPoint,
    params: &WeightParams,
    q: &QuadratureSpec,
) -> Result<WeightResult> {
    weight_exact(Channel::T, s, params, q)
}

/// W(s) for `Channel::U`, W̌(s) for `Channel::T`.
pub fn weight_exact(
    channel: Channel,
    s: SpectralPoint,
    params: &WeightParams,
    q: &QuadratureSpec,
) -> Result<WeightResult> {
    let r = integrate(channel, s, params, q, false)?;
    Ok(WeightResult {
        value: r.value.re,
        abs_err: r.abs_err,
        panels_used: r.panels_used,
    })
}

/// The weight integral over the whole segment, each half computed on its own.
pub fn weight_raw(
    channel: Channel,
    s: SpectralPoint,
    params: &WeightParams,
    q: &QuadratureSpec,
) -> Result<RawWeight> {
    integrate(channel, s, params, q, true)
}

/// Both channel terms of the crossing equation at the real point z = 1/T:
/// (T^{−2k} H̃_s(1 − T^{−2}), T^{2k} H̃_s(1 − T²)).
pub fn convexity_point(
    s: SpectralPoint,
    params: &WeightParams,
    prec: PrecisionSpec,
) -> Result<(BlockValue, BlockValue)> {
    let big_t = params.big_t();
    let z = Complex64::new(1.0 / big_t, 0.0);
    let k2 = 2 * params.k() as i32;
    let u = block_htilde_u(s, z, params, prec)?.scaled_by(Complex64::new(big_t.powi(-k2), 0.0));
    let t = block_htilde_t(s, z, params, prec)?.scaled_by(Complex64::new(big_t.powi(k2), 0.0));
    Ok((u, t))
}

/// Oscillation rate of the integrand in y, used to size the first panels.
fn phase_rate(channel: Channel, s: SpectralPoint, params: &WeightParams, y: f64) -> f64 {
    let big_t = params.big_t();
    let r = (big_t.powi(-2) + y * y).sqrt();
    let t = s.t();
    match channel {
        Channel::U => 2.0 * big_t + 2.0 * t + 1.0 / r,
        Channel::T => 2.0 * big_t + (2.0 * t + 4.0 * params.k() as f64) / r,
    }
}

fn initial_panels(
    channel: Channel,
    s: SpectralPoint,
    params: &WeightParams,
    q: &QuadratureSpec,
) -> Result<Vec<(f64, f64)>> {
    let y_max = params.y_max();
    let mut panels = Vec::new();
    let mut a = 0.0;
    while a < y_max {
        let h = q.phase_per_panel / phase_rate(channel, s, params, a);
        let b = if a + 1.5 * h >= y_max { y_max } else { a + h };
        panels.push((a, b));
        if panels.len() > q.max_panels {
            return Err(Error::no_conv(format!(
                "more than {} panels needed to resolve the phase",
                q.max_panels
            )));
        }
        a = b;
    }
    Ok(panels)
}

struct Level {
    sum: Complex64,
    /// Propagated block errors.
    block_err: f64,
    /// ∫|integrand|, for rounding.
    abs: f64,
}

/// e^{−(Hy)²} e^{2iTy} z^{power} at y.
fn measure(params: &WeightParams, power: f64, y: f64) -> Complex64 {
    let big_t = params.big_t();
    let z = Complex64::new(1.0 / big_t, y);
    let g = (-(params.window() * y).powi(2)).exp();
    Complex64::from_polar(g, 2.0 * big_t * y) * z.powf(power)
}

fn level_sum(
    block: &ChannelBlock,
    params: &WeightParams,
    power: f64,
    sign: f64,
    panels: &[(f64, f64)],
    rule: &GaussLegendre,
) -> Result<Level> {
    let big_t = params.big_t();
    let nodes: Vec<(f64, f64)> = panels.iter().flat_map(|&(a, b)| rule.on(a, b)).collect();
    let vals: Vec<(Complex64, f64)> = nodes
        .par_iter()
        .map(|&(y, w)| {
            let y = sign * y;
            let b = block.eval(Complex64::new(1.0 / big_t, y))?;
            let m = measure(params, power, y) * w;
            Ok((m * b.value, m.norm() * b.abs_err))
        })
        .collect::<Result<_>>()?;
    let mut out = Level {
        sum: Complex64::new(0.0, 0.0),
        block_err: 0.0,
        abs: 0.0,
    };
    for (v, e) in vals {
        out.sum += v;
        out.block_err += e;
        out.abs += v.norm();
    }
    Ok(out)
}

fn integrate(
    channel: Channel,
    s: SpectralPoint,
    params: &WeightParams,
    q: &QuadratureSpec,
    both_halves: bool,
) -> Result<RawWeight> {
    q.validate()?;
    let power = match channel {
        Channel::U => 0.5,
        Channel::T => 0.5 - 4.0 * params.k() as f64,
    };
    let big_t = params.big_t();
    let rule = GaussLegendre::cached(q.panel_order);
    let mut panels = initial_panels(channel, s, params, q)?;

    let signs: &[f64] = if both_halves { &[1.0, -1.0] } else { &[1.0] };
    let mut hint = Vec::new();
    for &sg in signs {
        for &(a, _) in &panels {
            hint.push(Complex64::new(1.0 / big_t, sg * a));
        }
        hint.push(Complex64::new(1.0 / big_t, sg * params.y_max()));
    }
    let block = ChannelBlock::new(channel, s, params, &hint, PrecisionSpec::Machine)?;

    let eval = |panels: &[(f64, f64)]| -> Result<Level> {
        let mut total = Level {
            sum: Complex64::new(0.0, 0.0),
            block_err: 0.0,
            abs: 0.0,
        };
        for &sg in signs {
            let l = level_sum(&block, params, power, sg, panels, rule)?;
            // ∫_{−Y}^{0} f(y) dy = ∫_0^Y f(−y) dy; with one half only, the
            // other is its conjugate.
            total.sum += if both_halves {
                l.sum
            } else {
                Complex64::new(2.0 * l.sum.re, 0.0)
            };
            let f = if both_halves { 1.0 } else { 2.0 };
            total.block_err += f * l.block_err;
            total.abs += f * l.abs;
        }
        Ok(total)
    };

    let pref = big_t.powf(2.5 - 4.0 * params.k() as f64) * params.window();
    let mut coarse = eval(&panels)?;
    loop {
        if 2 * panels.len() > q.max_panels {
            return Err(Error::no_conv(format!(
                "weight integral not converged within {} panels",
                q.max_panels
            )));
        }
        panels = panels
            .iter()
            .flat_map(|&(a, b)| {
                let m = 0.5 * (a + b);
                [(a, m), (m, b)]
            })
            .collect();
        let fine = eval(&panels)?;
        let diff = (fine.sum - coarse.sum).norm();
        let noise = fine.block_err + coarse.block_err + 8.0 * f64::EPSILON * fine.abs;
        if diff <= q.rel_tol * fine.sum.norm() + noise + 1e-300 {
            let abs_err = diff + fine.block_err + 4.0 * f64::EPSILON * fine.abs;
            return Ok(RawWeight {
                value: pref * fine.sum,
                abs_err: pref * abs_err,
                panels_used: panels.len() * signs.len(),
            });
        }
        coarse = fine;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::weight_w_asym;

    fn fig_u() -> WeightParams {
        WeightParams::new(1, 75.0, 0.1).unwrap()
    }

    /// Composite Simpson on a uniform grid, the independent oracle for s = 1.
    fn simpson_w1(channel: Channel, params: &WeightParams, n: usize) -> f64 {
        let power = match channel {
            Channel::U => 0.5,
            Channel::T => 0.5 - 4.0 * params.k() as f64,
        };
        let (a, b) = (-params.y_max(), params.y_max());
        let h = (b - a) / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=n {
            let y = a + i as f64 * h;
            let c = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += c * measure(params, power, y);
        }
        let pref = params.big_t().powf(2.5 - 4.0 * params.k() as f64) * params.window();
        (pref * acc * h / 3.0).re
    }

    #[test]
    fn spec_validation() {
        let q = QuadratureSpec::default();
        assert!(q.validate().is_ok());
        assert!(QuadratureSpec {
            phase_per_panel: 4.0,
            ..q
        }
        .validate()
        .is_err());
        assert!(QuadratureSpec { rel_tol: 1e-15, ..q }.validate().is_err());
    }

    #[test]
    fn trivial_block_matches_simpson() {
        let p = fig_u();
        let q = QuadratureSpec::default();
        let w = weight_w_exact(SpectralPoint::one(), &p, &q).unwrap();
        let oracle = simpson_w1(Channel::U, &p, 400_000);
        assert!(
            (w.value - oracle).abs() <= 1e-10 * oracle.abs().max(1e-3),
            "{w:?} {oracle}"
        );
        let p = WeightParams::new(1, 200.0, 0.1).unwrap();
        let w = weight_wcheck_exact(SpectralPoint::one(), &p, &q).unwrap();
        let oracle = simpson_w1(Channel::T, &p, 4_000_000);
        assert!((w.value - oracle).abs() <= 1e-10 * oracle.abs(), "{w:?} {oracle}");
    }

    #[test]
    fn w_near_main_term_at_peak() {
        let p = fig_u();
        let w = weight_w_exact(
            SpectralPoint::tempered(75.0).unwrap(),
            &p,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((w.value - weight_w_asym(75.0, &p)).abs() <= 0.02, "{w:?}");
        let far = weight_w_exact(
            SpectralPoint::tempered(150.0).unwrap(),
            &p,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(far.value.abs() <= 0.05, "{far:?}");
    }

    #[test]
    fn halves_are_conjugate() {
        let p = fig_u();
        let q = QuadratureSpec::default();
        for (ch, s) in [
            (Channel::U, SpectralPoint::tempered(20.0).unwrap()),
            (Channel::T, SpectralPoint::tempered(7.5).unwrap()),
            (Channel::T, SpectralPoint::new(0.8, 0.0).unwrap()),
        ] {
            let raw = weight_raw(ch, s, &p, &q).unwrap();
            let half = weight_exact(ch, s, &p, &q).unwrap();
            assert!(raw.value.im.abs() <= 10.0 * raw.abs_err, "{ch} {raw:?}");
            assert!((raw.value.re - half.value).abs() <= raw.abs_err + half.abs_err);
        }
    }

    #[test]
    fn halving_phase_budget_is_stable() {
        let p = fig_u();
        let q = QuadratureSpec::default();
        let fine = QuadratureSpec {
            phase_per_panel: q.phase_per_panel / 2.0,
            ..q
        };
        for (ch, t) in [(Channel::U, 60.0), (Channel::T, 4.0)] {
            let s = SpectralPoint::tempered(t).unwrap();
            let a = weight_exact(ch, s, &p, &q).unwrap();
            let b = weight_exact(ch, s, &p, &fine).unwrap();
            assert!((a.value - b.value).abs() <= 3.0 * q.rel_tol * a.value.abs() + a.abs_err + b.abs_err);
        }
    }

    #[test]
    fn convexity_point_at_trivial_s() {
        let p = fig_u();
        let (u, t) = convexity_point(SpectralPoint::one(), &p, PrecisionSpec::Machine).unwrap();
        assert!((u.value.re - 75f64.powi(-2)).abs() < 1e-18);
        assert!((t.value.re - 75f64.powi(2)).abs() < 1e-10);
    }
}
