//! Measures the constants frozen in `constants.rs`. Run once with
//! `cargo run --release --example calibrate`; the printed suggestions are
//! the measured values rounded outward.

use crossing_core::asymptotics::{rho_reconstruction, weight_w_asym};
use crossing_core::averaging::{convexity_point, weight_w_exact, weight_wcheck_exact, QuadratureSpec};
use crossing_core::blocks::{block_htilde_batch, block_htilde_t, block_htilde_u};
use crossing_core::hyp::taylor::u_block_reference;
use crossing_core::hyp::{hyp2f1_ode_continuation, BlockValue};
use crossing_core::scalar::PrecisionSpec;
use crossing_core::spectral::{Channel, SpectralPoint, WeightParams};
use num_complex::Complex64;
use std::time::Instant;

const M: PrecisionSpec = PrecisionSpec::Machine;

/// Round up to two significant digits.
fn up2(x: f64) -> f64 {
    let e = 10f64.powi(x.abs().log10().floor() as i32 - 1);
    tidy((x / e).ceil() * e)
}

/// Round down to two significant digits.
fn down2(x: f64) -> f64 {
    let e = 10f64.powi(x.abs().log10().floor() as i32 - 1);
    tidy((x / e).floor() * e)
}

fn tidy(x: f64) -> f64 {
    format!("{x:.1e}").parse().unwrap()
}

/// |value| with the engine's error estimate taken off, so that noise below
/// the error floor does not inflate a constant.
fn size(b: &BlockValue) -> f64 {
    (b.value.norm() - b.abs_err).max(0.0)
}

fn geom(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
}

fn figure_iu() {
    let p = WeightParams::new(1, 75.0, 0.1).unwrap();
    let q = QuadratureSpec::default();
    let clock = Instant::now();
    let mut worst = (0.0, 0.0);
    for t in 2..=115 {
        let t = t as f64;
        let w = weight_w_exact(SpectralPoint::tempered(t).unwrap(), &p, &q).unwrap();
        let d = (w.value - weight_w_asym(t, &p)).abs();
        if d > worst.0 {
            worst = (d, t);
        }
    }
    println!(
        "figure iu: max |W - W_asym| = {:.3e} at t = {} ({:.1?})",
        worst.0,
        worst.1,
        clock.elapsed()
    );

    // Check the integrand against independent engines at the worst t and at
    // the peak: extended-precision series on the real axis, ODE continuation
    // off it.
    let mut dev: f64 = 0.0;
    for t in [worst.1, 75.0, 115.0] {
        let s = SpectralPoint::tempered(t).unwrap();
        let z = Complex64::new(1.0 / 75.0, 0.0);
        let digits = 50.max((1.4 * t).ceil() as u32 + 30);
        let reference = u_block_reference(s, z, digits).unwrap().value * t * t;
        let got = block_htilde_u(s, z, &p, M).unwrap().value;
        dev = dev.max((got - reference).norm() / reference.norm());
        for y in [0.02, 0.07, p.y_max()] {
            let z = Complex64::new(1.0 / 75.0, y);
            let ode = hyp2f1_ode_continuation(s, 1.0 - z * z, 0.4, M).unwrap().value * t * t;
            let got = block_htilde_u(s, z, &p, M).unwrap().value;
            dev = dev.max((got - ode).norm() / ode.norm());
        }
    }
    println!("  integrand vs oracles: max relative deviation {dev:.2e}");
    println!("  TOL_IU = {}", up2(1.5 * worst.0));
}

fn wcheck_one() {
    let q = QuadratureSpec::default();
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for big_t in [200.0, 500.0, 1000.0] {
        let p = WeightParams::new(1, big_t, 0.1).unwrap();
        let w = weight_wcheck_exact(SpectralPoint::one(), &p, &q).unwrap();
        let r = w.value / (big_t * p.window());
        println!("W̌(1)/(TH) at T = {big_t}: {r:.6}");
        lo = lo.min(r);
        hi = hi.max(r);
    }
    println!("  WCHECK_ONE_BRACKET = ({}, {})", down2(0.9 * lo), up2(1.1 * hi));
}

fn trivial_range() {
    let q = QuadratureSpec::default();
    let (mut kw, mut kc): (f64, f64) = (0.0, 0.0);
    for big_t in [75.0, 200.0, 1000.0] {
        let p = WeightParams::new(1, big_t, 0.1).unwrap();
        let h = p.window();
        let mut points: Vec<SpectralPoint> = [0.2, 0.5, 1.0]
            .iter()
            .map(|&t| SpectralPoint::tempered(t).unwrap())
            .collect();
        points.extend([0.6, 0.9].iter().map(|&sg| SpectralPoint::new(sg, 0.0).unwrap()));
        for s in points {
            let w = weight_w_exact(s, &p, &q).unwrap().value;
            let wc = weight_wcheck_exact(s, &p, &q).unwrap().value;
            let bw = big_t.powf(2.5 - 4.0) / h.sqrt();
            let bc = big_t * h;
            println!(
                "T={big_t} σ={} t={}: |W|/bound = {:.3e}, |W̌|/(TH) = {:.3e}",
                s.sigma(),
                s.t(),
                w.abs() / bw,
                wc.abs() / bc
            );
            kw = kw.max(w.abs() / bw);
            kc = kc.max(wc.abs() / bc);
        }
    }
    println!(
        "  TRIVIAL_W = {}, TRIVIAL_WCHECK = {}",
        up2(1.2 * kw),
        up2(1.2 * kc)
    );
}

fn envelopes() {
    let p = WeightParams::new(1, 75.0, 0.1).unwrap();
    let big_t = p.big_t();
    let zs: Vec<Complex64> = geom(1e-3, 0.5, 12)
        .flat_map(|r| [0.0, 0.7, 1.3].map(|a: f64| Complex64::from_polar(r, a)))
        .collect();
    let tz: Vec<Complex64> = zs.iter().copied().filter(|z| z.norm() <= 0.3).collect();

    let (mut ku, mut kt): (f64, f64) = (0.0, 0.0);
    let mut small: Vec<SpectralPoint> = [0.0, 0.3, 0.6, 1.0]
        .iter()
        .map(|&t| SpectralPoint::tempered(t).unwrap())
        .collect();
    small.extend(
        [0.55, 0.75, 0.95]
            .iter()
            .map(|&sg| SpectralPoint::new(sg, 0.0).unwrap()),
    );
    for s in small {
        for &z in &zs {
            let l = (1.0 / z.norm()).ln().max(std::f64::consts::LN_2);
            ku = ku.max(size(&block_htilde_u(s, z, &p, M).unwrap()) / l);
        }
        for &z in &tz {
            let l = (1.0 / z.norm()).ln().max(std::f64::consts::LN_2);
            let b = z.norm().powf(2.0 * (1.0 - s.sigma())) * l;
            kt = kt.max(size(&block_htilde_t(s, z, &p, M).unwrap()) / b);
        }
    }
    println!(
        "ENV_U_SMALL_T = {}, ENV_T_SMALL_T = {}",
        up2(1.1 * ku),
        up2(1.1 * kt)
    );

    let limit = big_t * big_t.ln().powi(2);
    let mut k_mid: f64 = 0.0;
    for t in geom(1.5, 0.9 * limit, 14) {
        let s = SpectralPoint::tempered(t).unwrap();
        let vals = block_htilde_batch(Channel::U, s, &zs, &p, M).unwrap();
        for (v, z) in vals.iter().zip(&zs) {
            let b = t.powi(2) * (1.0 + (1.0 / (t * z.norm())).ln().max(0.0));
            k_mid = k_mid.max(size(v) / b);
        }
    }
    println!("ENV_U_TRIVIAL = {}", up2(1.1 * k_mid));

    let mut k_far: f64 = 0.0;
    let far: Vec<Complex64> = [1.0 / big_t, 0.01, 0.03]
        .iter()
        .flat_map(|&r| [0.0, 0.5].map(|a: f64| Complex64::from_polar(r, a)))
        .collect();
    for t in [limit, 1.5 * limit] {
        let s = SpectralPoint::tempered(t).unwrap();
        let vals = block_htilde_batch(Channel::U, s, &far, &p, M).unwrap();
        for (v, z) in vals.iter().zip(&far) {
            let b = t.powf(1.5) * z.norm().powf(-0.5) * (-2.0 * t * z.re).exp();
            k_far = k_far.max(size(v) / b);
        }
    }
    println!("ENV_U_DECAY = {}", up2(1.1 * k_far));

    // t-channel, t > 1: fix the rate from the slowest observed decay, then
    // the amplitude.
    let mut pts = Vec::new();
    for big_t in [75.0, 200.0, 1000.0] {
        let p = WeightParams::new(1, big_t, 0.1).unwrap();
        for t in geom(1.5, 160.0, 12) {
            let s = SpectralPoint::tempered(t).unwrap();
            for y in (0..12).map(|i| big_t.powf(-1.0 / 3.0) * i as f64 / 11.0) {
                let z = Complex64::new(1.0 / big_t, y);
                let v = size(&block_htilde_t(s, z, &p, M).unwrap());
                if v == 0.0 {
                    continue;
                }
                let x = t / (big_t * y + 1.0);
                pts.push((x, (v / (t.powf(1.5) * z.norm())).ln()));
            }
        }
    }
    let rate = pts
        .iter()
        .filter(|p| p.0 >= 2.0)
        .map(|p| -p.1 / p.0)
        .fold(f64::INFINITY, f64::min);
    let c = down2(0.9 * rate.min(1.0 / 0.9));
    let amp = pts.iter().map(|p| (p.1 + c * p.0).exp()).fold(0.0, f64::max);
    println!("  slowest t-channel rate {rate:.3}");
    println!("ENV_T_LARGE_T = ({}, {c})", up2(1.1 * amp));
}

fn t_decay_rate() {
    let p = WeightParams::new(1, 200.0, 0.1).unwrap();
    let z = Complex64::new(1.0 / 200.0, 0.0);
    let env: Vec<(f64, f64)> = (0..17)
        .map(|j| {
            let lo = 5.0 + 2.0 * j as f64;
            let peak = (0..=40)
                .map(|i| {
                    let s = SpectralPoint::tempered(lo + 0.05 * i as f64).unwrap();
                    block_htilde_t(s, z, &p, M).unwrap().value.norm().ln()
                })
                .fold(f64::NEG_INFINITY, f64::max);
            (lo + 1.0, peak)
        })
        .collect();
    let n = env.len() as f64;
    let mx = env.iter().map(|p| p.0).sum::<f64>() / n;
    let my = env.iter().map(|p| p.1).sum::<f64>() / n;
    let slope = env.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / env.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    println!("t-channel envelope slope at T = 200: {slope:.4}");
    println!("  T_DECAY_RATE = {}", down2(-0.9 * slope));
}

fn rho() {
    let mut k: f64 = 0.0;
    for big_t in [1e3, 1e4] {
        let p = WeightParams::new(1, big_t, 0.1).unwrap();
        for t in geom(1.5, big_t.powf(2.0 / 3.0), 8) {
            let s = SpectralPoint::tempered(t).unwrap();
            for y in geom(2.0 / big_t, big_t.powf(-1.0 / 3.0), 10) {
                let z = Complex64::new(1.0 / big_t, y);
                let b = block_htilde_t(s, z, &p, M).unwrap().value;
                for pp in [-3.5, 0.0, 0.5] {
                    let lhs = z.powf(pp) * b;
                    let rhs = rho_reconstruction(y, t, &p, pp).unwrap();
                    let scale = t.powf(0.5) * y.powf(pp + 1.0);
                    k = k.max((lhs - rhs).norm() / scale);
                }
            }
        }
    }
    println!("RHO_RECONSTRUCTION = {}", up2(1.1 * k));
}

fn convexity() {
    // |H̃_t(1 − T²)| ≤ K T^{−2(1−σ)} log T e^{−c t} with c fixed to 1.
    let mut k: f64 = 0.0;
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for big_t in [75.0, 200.0, 1000.0] {
        let p = WeightParams::new(1, big_t, 0.1).unwrap();
        let mut pts: Vec<SpectralPoint> = geom(0.1, 3.0 * big_t, 25)
            .map(|t| SpectralPoint::tempered(t).unwrap())
            .collect();
        pts.extend(
            [0.5, 0.55, 0.75, 0.95]
                .iter()
                .map(|&sg| SpectralPoint::new(sg, 0.0).unwrap()),
        );
        for s in pts {
            let (u, tv) = convexity_point(s, &p, M).unwrap();
            let raw_t = size(&tv) * big_t.powi(-2);
            let b = big_t.powf(-2.0 * (1.0 - s.sigma())) * big_t.ln() * (-s.t()).exp();
            k = k.max(raw_t / b);
            let t = s.t();
            if t >= 0.5 * big_t && t <= 2.0 * big_t {
                let r = u.value.re * big_t.powi(2) / t.powi(2);
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
    }
    println!("CONVEXITY_T = ({}, 1.0)", up2(1.1 * k));
    println!("  u-value / t^(4k-2) for t in [T/2, 2T]: [{lo:.4}, {hi:.4}]");
}

fn main() {
    let which: Vec<String> = std::env::args().skip(1).collect();
    let run = |name: &str| which.is_empty() || which.iter().any(|w| w == name);
    if run("iu") {
        figure_iu();
    }
    if run("wcheck") {
        wcheck_one();
    }
    if run("trivial") {
        trivial_range();
    }
    if run("envelopes") {
        envelopes();
    }
    if run("decay") {
        t_decay_rate();
    }
    if run("rho") {
        rho();
    }
    if run("convexity") {
        convexity();
    }
}
