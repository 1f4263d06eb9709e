//! Gauss–Legendre panels and a bisection-adaptive driver.

use num_complex::Complex64;
use std::sync::OnceLock;

/// Nodes and weights of an n-point Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi's initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Shared 16- and 32-point rules.
    pub fn cached(n: usize) -> &'static GaussLegendre {
        static G16: OnceLock<GaussLegendre> = OnceLock::new();
        static G32: OnceLock<GaussLegendre> = OnceLock::new();
        match n {
            16 => G16.get_or_init(|| GaussLegendre::new(16)),
            32 => G32.get_or_init(|| GaussLegendre::new(32)),
            _ => panic!("no cached rule of order {n}"),
        }
    }

    /// Map the rule onto [a, b]: yields (x, w) pairs.
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Tuning for [`adaptive`].
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOpts {
    /// Accept a panel when |coarse − fine| ≤ rel · ∫|f| over it + abs.
    pub rel: f64,
    pub abs: f64,
    pub max_depth: u32,
    pub order: usize,
}

impl Default for AdaptiveOpts {
    fn default() -> Self {
        AdaptiveOpts {
            rel: 1e-14,
            abs: 0.0,
            max_depth: 40,
            order: 16,
        }
    }
}

/// Result of [`adaptive`] for an m-component integrand.
#[derive(Debug, Clone)]
pub struct Adaptive {
    pub value: Vec<Complex64>,
    pub abs_err: Vec<f64>,
    /// ∫|f| per component, for rounding-error estimates.
    pub abs_integral: Vec<f64>,
    /// Accepted panels, in order.
    pub panels: Vec<(f64, f64)>,
    /// True if some panel hit `max_depth` without meeting the tolerance.
    pub exhausted: bool,
}

struct PanelEval {
    value: Vec<Complex64>,
    abs: Vec<f64>,
}

fn eval_panel(
    f: &mut dyn FnMut(f64, &mut [Complex64]),
    rule: &GaussLegendre,
    m: usize,
    a: f64,
    b: f64,
    buf: &mut [Complex64],
) -> PanelEval {
    let mut value = vec![Complex64::new(0.0, 0.0); m];
    let mut abs = vec![0.0; m];
    for (x, w) in rule.on(a, b) {
        f(x, buf);
        for k in 0..m {
            value[k] += buf[k] * w;
            abs[k] += buf[k].norm() * w.abs();
        }
    }
    PanelEval { value, abs }
}

/// Integrate an m-component function over each of the given initial panels,
/// bisecting until every component meets the tolerance.
pub fn adaptive(
    f: &mut dyn FnMut(f64, &mut [Complex64]),
    m: usize,
    breaks: &[f64],
    opts: AdaptiveOpts,
) -> Adaptive {
    let rule = GaussLegendre::cached(opts.order);
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    let mut out = Adaptive {
        value: vec![Complex64::new(0.0, 0.0); m],
        abs_err: vec![0.0; m],
        abs_integral: vec![0.0; m],
        panels: Vec::new(),
        exhausted: false,
    };
    for pair in breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b <= a {
            continue;
        }
        let whole = eval_panel(f, rule, m, a, b, &mut buf);
        // Depth-first stack of (a, b, depth, coarse estimate).
        let mut stack = vec![(a, b, 0u32, whole)];
        while let Some((a, b, depth, coarse)) = stack.pop() {
            let mid = 0.5 * (a + b);
            let left = eval_panel(f, rule, m, a, mid, &mut buf);
            let right = eval_panel(f, rule, m, mid, b, &mut buf);
            let mut ok = true;
            let mut diffs = vec![0.0; m];
            for k in 0..m {
                let fine = left.value[k] + right.value[k];
                diffs[k] = (fine - coarse.value[k]).norm();
                let scale = left.abs[k] + right.abs[k];
                if diffs[k] > opts.rel * scale + opts.abs {
                    ok = false;
                }
            }
            if ok || depth >= opts.max_depth {
                if !ok {
                    out.exhausted = true;
                }
                for k in 0..m {
                    out.value[k] += left.value[k] + right.value[k];
                    // The fine estimate is far better than the coarse one; the
                    // difference is still reported as the bound.
                    out.abs_err[k] += diffs[k];
                    out.abs_integral[k] += left.abs[k] + right.abs[k];
                }
                out.panels.push((a, b));
            } else {
                // Push right first so panels come out left to right.
                stack.push((mid, b, depth + 1, right));
                stack.push((a, mid, depth + 1, left));
            }
        }
    }
    out
}

/// Scalar convenience wrapper around [`adaptive`].
pub fn adaptive_scalar(
    mut f: impl FnMut(f64) -> Complex64,
    breaks: &[f64],
    opts: AdaptiveOpts,
) -> (Complex64, f64, f64, bool) {
    let mut g = |x: f64, out: &mut [Complex64]| out[0] = f(x);
    let r = adaptive(&mut g, 1, breaks, opts);
    (r.value[0], r.abs_err[0], r.abs_integral[0], r.exhausted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        for n in [1, 2, 5, 16, 32] {
            let g = GaussLegendre::new(n);
            let wsum: f64 = g.weights.iter().sum();
            assert!((wsum - 2.0).abs() < 1e-14);
            // ∫_{-1}^{1} x^{2n-2} = 2/(2n-1)
            let deg = 2 * n - 2;
            let v: f64 = g
                .nodes
                .iter()
                .zip(&g.weights)
                .map(|(x, w)| w * x.powi(deg as i32))
                .sum();
            assert!((v - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let (v, err, _, exhausted) = adaptive_scalar(
            |x| Complex64::new(x.powf(-0.5), 0.0),
            &[0.0, 1.0],
            AdaptiveOpts {
                rel: 1e-12,
                abs: 1e-11,
                max_depth: 80,
                ..Default::default()
            },
        );
        assert!(!exhausted);
        assert!((v.re - 2.0).abs() < 1e-10, "{v} {err}");
    }

    #[test]
    fn adaptive_oscillatory() {
        // ∫_0^{50} e^{i x} dx = (e^{50i} − 1)/i
        let (v, _, _, _) =
            adaptive_scalar(|x| Complex64::new(0.0, x).exp(), &[0.0, 50.0], Default::default());
        let exact = (Complex64::new(0.0, 50.0).exp() - 1.0) / Complex64::new(0.0, 1.0);
        assert!((v - exact).norm() < 1e-13);
    }
}
