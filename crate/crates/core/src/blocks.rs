//! The block functions H_s, H̃_s and their channel evaluations.
//!
//! For t > 1 every value is carried with the factor e^{−πt} folded in, so
//! nothing of size e^{πt} is ever formed. H̃_s = t^{4k−2} e^{−πt} H_s for
//! t > 1 and H̃_s = H_s for t ≤ 1; the cutoff at t = 1 is exact.

use crate::constants;
use crate::error::{Error, Result};
use crate::hyp::barnes::BarnesKernel;
use crate::hyp::connection::ConnectionKernel;
use crate::hyp::euler::euler_h;
use crate::hyp::taylor::{taylor_ext, taylor_scaled, u_block_reference};
use crate::hyp::{
    hyp2f1_barnes, hyp2f1_connection_t, hyp2f1_euler, hyp2f1_ode_continuation, BlockValue, Method,
    ScaledValue,
};
use crate::scalar::bigfloat::Ext;
use crate::scalar::PrecisionSpec;
use crate::spectral::{Channel, SpectralPoint, WeightParams};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest |z| accepted by the u-channel block.
pub const U_Z_CAP: f64 = 0.5;
/// Largest |z| accepted by the t-channel block.
pub const T_Z_CAP: f64 = 0.3;
/// Below this |w| the defining series is used directly.
const SERIES_RADIUS: f64 = 0.5;
/// |1 − w| beyond which the t-channel connection formula takes over.
const CONNECTION_FROM: f64 = 1.0 / (T_Z_CAP * T_Z_CAP);

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn exp_scale(s: SpectralPoint) -> f64 {
    if s.t() > 1.0 {
        PI * s.t()
    } else {
        0.0
    }
}

/// H_s(w) with automatic engine choice.
pub fn block_h(s: SpectralPoint, w: Complex64, prec: PrecisionSpec) -> Result<ScaledValue> {
    block_h_with(s, w, Method::Auto, prec)
}

/// H_s(w) with a named engine. For t > 1 the result carries exp_scale = πt.
pub fn block_h_with(
    s: SpectralPoint,
    w: Complex64,
    method: Method,
    prec: PrecisionSpec,
) -> Result<ScaledValue> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::domain(format!("w = {w} is not finite")));
    }
    if w.im == 0.0 && w.re >= 1.0 {
        return Err(Error::domain(format!("w = {} lies on the cut [1, ∞)", w.re)));
    }
    let scale = exp_scale(s);
    let scaled = |b: BlockValue| ScaledValue {
        block: b,
        exp_scale: scale,
    };
    if s.is_one() || w == Complex64::new(0.0, 0.0) {
        if matches!(method, Method::Asymptotic) {
            return Err(Error::Invalid("no asymptotic engine for H_s itself".into()));
        }
        // Exact in every engine; kept at scale 0 so the value is literally 1.
        return Ok(ScaledValue::unscaled(BlockValue::exact(one())));
    }
    match method {
        Method::Auto => {
            if let PrecisionSpec::Extended { .. } = prec {
                return series(s, w, prec, scale).map(scaled);
            }
            if w.norm() <= SERIES_RADIUS {
                return series(s, w, prec, scale).map(scaled);
            }
            if s.t() <= 1.0 {
                return euler_h(s, w, prec).map(ScaledValue::unscaled);
            }
            let q = 1.0 - w;
            if q.norm() >= CONNECTION_FROM {
                hyp2f1_connection_t(s, 1.0 / q.sqrt(), prec).map(scaled)
            } else {
                hyp2f1_barnes(s, q.sqrt(), prec).map(scaled)
            }
        }
        Method::Taylor => series(s, w, prec, scale).map(scaled),
        Method::Euler => euler_h(s, w, prec).map(ScaledValue::unscaled),
        Method::Barnes => hyp2f1_barnes(s, (1.0 - w).sqrt(), prec).map(scaled),
        Method::Connection => hyp2f1_connection_t(s, 1.0 / (1.0 - w).sqrt(), prec).map(scaled),
        Method::OdeContinuation => {
            let anchor = if w.re < 0.0 { -0.4 } else { 0.4 };
            hyp2f1_ode_continuation(s, w, anchor, prec).map(scaled)
        }
        Method::Exact => Err(Error::Invalid(
            "no closed form for H_s except at s = 1 or w = 0".into(),
        )),
        Method::Asymptotic => Err(Error::Invalid("no asymptotic engine for H_s itself".into())),
    }
}

/// The defining series, scaled by e^{−scale}.
fn series(s: SpectralPoint, w: Complex64, prec: PrecisionSpec, scale: f64) -> Result<BlockValue> {
    let sv = s.s();
    let (value, abs_err) = match prec {
        PrecisionSpec::Machine => {
            let r = taylor_scaled(sv, 1.0 - sv, one(), w, scale)?;
            (r.value, r.abs_err)
        }
        PrecisionSpec::Extended { digits } => {
            let ext = Ext::with_digits(digits);
            let (v, e) = taylor_ext(&ext, sv, 1.0 - sv, one(), &ext.cplx(w), scale)?;
            (v.to_c64(), e)
        }
    };
    Ok(BlockValue {
        value,
        abs_err,
        method: Method::Taylor,
    })
}

fn check_z(z: Complex64, cap: f64) -> Result<()> {
    if !(z.re > 0.0) || !z.im.is_finite() || !z.re.is_finite() {
        return Err(Error::domain(format!("blocks need Re z > 0, got z = {z}")));
    }
    if z.norm() > cap {
        return Err(Error::domain(format!("|z| = {} exceeds the cap {cap}", z.norm())));
    }
    Ok(())
}

fn power_factor(s: SpectralPoint, params: &WeightParams) -> Complex64 {
    Complex64::new(s.t().powi(params.block_power()), 0.0)
}

/// H̃_s(1 − z²) for Re z > 0, |z| ≤ 1/2.
pub fn block_htilde_u(
    s: SpectralPoint,
    z: Complex64,
    params: &WeightParams,
    prec: PrecisionSpec,
) -> Result<BlockValue> {
    check_z(z, U_Z_CAP)?;
    if s.is_one() {
        return Ok(BlockValue::exact(one()));
    }
    let w = 1.0 - z * z;
    if let PrecisionSpec::Extended { digits } = prec {
        if s.t() > 1.0 {
            return Ok(u_block_reference(s, z, digits)?.scaled_by(power_factor(s, params)));
        }
        return series(s, w, prec, 0.0);
    }
    if s.t() <= 1.0 {
        if w.norm() <= SERIES_RADIUS {
            return series(s, w, prec, 0.0);
        }
        return hyp2f1_euler(s, z, Channel::U, prec);
    }
    Ok(hyp2f1_barnes(s, z, prec)?.scaled_by(power_factor(s, params)))
}

/// H̃_s(1 − z^{−2}) for Re z > 0, |z| ≤ 0.3. Machine precision only.
pub fn block_htilde_t(
    s: SpectralPoint,
    z: Complex64,
    params: &WeightParams,
    prec: PrecisionSpec,
) -> Result<BlockValue> {
    check_z(z, T_Z_CAP)?;
    if s.is_one() {
        return Ok(BlockValue::exact(one()));
    }
    if let PrecisionSpec::Extended { .. } = prec {
        return Err(Error::Invalid(
            "the t-channel block has no extended-precision engine (|1 − z^{−2}| > 1)".into(),
        ));
    }
    if s.t() <= 1.0 {
        return hyp2f1_euler(s, z, Channel::T, prec);
    }
    Ok(hyp2f1_connection_t(s, z, prec)?.scaled_by(power_factor(s, params)))
}

/// H̃_s in one channel, set up once per s and then evaluated at many z.
pub struct ChannelBlock {
    channel: Channel,
    s: SpectralPoint,
    params: WeightParams,
    prec: PrecisionSpec,
    engine: Engine,
}

enum Engine {
    Pointwise,
    Barnes(BarnesKernel, Complex64),
    Connection(ConnectionKernel, Complex64),
}

impl ChannelBlock {
    /// `hint` should span the z that will be evaluated; the Barnes contour is
    /// sized from it.
    pub fn new(
        channel: Channel,
        s: SpectralPoint,
        params: &WeightParams,
        hint: &[Complex64],
        prec: PrecisionSpec,
    ) -> Result<Self> {
        let cap = match channel {
            Channel::U => U_Z_CAP,
            Channel::T => T_Z_CAP,
        };
        for &z in hint {
            check_z(z, cap)?;
        }
        let fast = matches!(prec, PrecisionSpec::Machine) && s.t() > 1.0 && !s.is_one();
        let engine = match channel {
            _ if !fast => Engine::Pointwise,
            Channel::U if hint.is_empty() => Engine::Pointwise,
            Channel::U => Engine::Barnes(BarnesKernel::new(s, hint, prec)?, power_factor(s, params)),
            Channel::T => Engine::Connection(ConnectionKernel::new(s, prec)?, power_factor(s, params)),
        };
        Ok(Self {
            channel,
            s,
            params: *params,
            prec,
            engine,
        })
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    pub fn eval(&self, z: Complex64) -> Result<BlockValue> {
        match &self.engine {
            Engine::Pointwise => match self.channel {
                Channel::U => block_htilde_u(self.s, z, &self.params, self.prec),
                Channel::T => block_htilde_t(self.s, z, &self.params, self.prec),
            },
            Engine::Barnes(kernel, k) => {
                check_z(z, U_Z_CAP)?;
                Ok(kernel.eval(z)?.scaled_by(*k))
            }
            Engine::Connection(kernel, k) => {
                check_z(z, T_Z_CAP)?;
                Ok(kernel.eval(z)?.scaled_by(*k))
            }
        }
    }
}

/// H̃_s along a batch of z in one channel, sharing the per-s setup.
pub fn block_htilde_batch(
    channel: Channel,
    s: SpectralPoint,
    zs: &[Complex64],
    params: &WeightParams,
    prec: PrecisionSpec,
) -> Result<Vec<BlockValue>> {
    let block = ChannelBlock::new(channel, s, params, zs, prec)?;
    zs.iter().map(|&z| block.eval(z)).collect()
}

/// Envelope for |H̃_s| in the given channel, with calibrated constants.
///
/// * u, t ≤ 1: K·log(1/|z|)
/// * t, t ≤ 1: K·|z|^{2(1−σ)}·log(1/|z|)
/// * u, 1 < t < T log²T: K·t^{4k−2}·(1 + log⁺(1/(t|z|)))
/// * u, t ≥ T log²T: K·t^{4k−5/2}·|z|^{−1/2}·e^{−2t·Re z}
/// * t, t > 1: C·t^{4k−5/2}·|z|·exp(−c·t/(T·|Im z| + 1))
///
/// log(1/|z|) is floored at log 2, the value at the largest admissible |z|.
pub fn envelope_bounds(channel: Channel, s: SpectralPoint, z: Complex64, params: &WeightParams) -> f64 {
    let t = s.t();
    let r = z.norm();
    let log_inv = (1.0 / r).ln().max(std::f64::consts::LN_2);
    let a = params.block_power() as f64;
    let big_t = params.big_t();
    match channel {
        Channel::U if t <= 1.0 => constants::ENV_U_SMALL_T * log_inv,
        Channel::T if t <= 1.0 => constants::ENV_T_SMALL_T * r.powf(2.0 * (1.0 - s.sigma())) * log_inv,
        Channel::U if t < big_t * big_t.ln().powi(2) => {
            constants::ENV_U_TRIVIAL * t.powf(a) * (1.0 + (1.0 / (t * r)).ln().max(0.0))
        }
        Channel::U => constants::ENV_U_DECAY * t.powf(a - 0.5) * r.powf(-0.5) * (-2.0 * t * z.re).exp(),
        Channel::T => {
            let (c_amp, c_rate) = constants::ENV_T_LARGE_T;
            c_amp * t.powf(a - 0.5) * r * (-c_rate * t / (big_t * z.im.abs() + 1.0)).exp()
        }
    }
}
