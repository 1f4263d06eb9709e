use crossing_core::hyp::taylor::u_block_reference;
use crossing_core::hyp::{hyp2f1_barnes, hyp2f1_ode_continuation, hyp2f1_taylor, HypRequest, Method};
use crossing_core::scalar::PrecisionSpec;
use crossing_core::spectral::SpectralPoint;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const M: PrecisionSpec = PrecisionSpec::Machine;

fn digits_for(t: f64) -> u32 {
    50.max((1.4 * t).ceil() as u32 + 30)
}

#[test]
fn three_engines_agree_on_the_overlap() {
    for t in [1.5, 7.0, 23.0, 40.0] {
        let s = SpectralPoint::tempered(t).unwrap();
        for i in 0..7 {
            let z = Complex64::new(0.05 + 0.075 * i as f64, 0.0);
            let series = u_block_reference(s, z, digits_for(t)).unwrap().value;
            let barnes = hyp2f1_barnes(s, z, M).unwrap().value;
            let ode = hyp2f1_ode_continuation(s, 1.0 - z * z, 0.4, M).unwrap().value;
            for (a, b) in [(series, barnes), (series, ode), (barnes, ode)] {
                let rel = (a - b).norm() / a.norm();
                assert!(rel <= 1e-8, "t={t} z={}: {rel:e}", z.re);
            }
        }
    }
}

#[test]
fn barnes_error_estimates_are_honest() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (mut honest, mut total) = (0, 0);
    for _ in 0..500 {
        let t: f64 = rng.gen_range(1.5..40.0);
        let s = SpectralPoint::tempered(t).unwrap();
        let z = Complex64::from_polar(rng.gen_range(0.05..0.5), rng.gen_range(-0.5..0.5));
        // The reference series needs |1 − z²| < 1.
        if (1.0 - z * z).norm() >= 0.999 {
            continue;
        }
        let reference = u_block_reference(s, z, digits_for(t)).unwrap().value;
        let got = hyp2f1_barnes(s, z, M).unwrap();
        total += 1;
        if (got.value - reference).norm() <= got.abs_err {
            honest += 1;
        }
    }
    assert!(total >= 450);
    assert!(honest as f64 >= 0.99 * total as f64, "{honest} of {total}");
}

#[test]
fn series_is_increasing_on_the_unit_interval() {
    // Nonnegative coefficients make H_s(w) increasing for w ∈ (0, 1).
    for s in [
        SpectralPoint::tempered(0.0).unwrap(),
        SpectralPoint::tempered(3.0).unwrap(),
        SpectralPoint::new(0.8, 0.0).unwrap(),
    ] {
        let mut prev = 1.0;
        for i in 1..=40 {
            let w = Complex64::new(0.024 * i as f64, 0.0);
            let v = hyp2f1_taylor(&HypRequest::block(s, w, Method::Taylor, M))
                .unwrap()
                .value;
            assert!(v.re > prev, "{s:?} w={}", w.re);
            assert!(v.im.abs() <= 1e-14 * v.re);
            prev = v.re;
        }
    }
}
