//! Crossing-equation bookkeeping on finite spectra: channel sums, the
//! averaged defect ΣW C̃² − ΣW̌ C̃², window counts and synthetic spectra.

use crate::averaging::{weight_w_exact, weight_wcheck_exact, QuadratureSpec};
use crate::blocks::ChannelBlock;
use crate::error::{Error, Result};
use crate::hyp::{BlockValue, Method};
use crate::scalar::PrecisionSpec;
use crate::spectral::{Channel, SpectralPoint, WeightParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One spectral row: s_r and the normalized squared coefficient C̃_r².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub s: SpectralPoint,
    pub ctilde_sq: f64,
}

/// A finite spectrum, sorted by eigenvalue, starting with (s = 1, C̃² = 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    rows: Vec<SpectrumRow>,
    source: String,
}

impl SpectrumTable {
    pub fn new(rows: Vec<SpectrumRow>, source: impl Into<String>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::Invalid("spectrum table is empty".into()))?;
        if !first.s.is_one() || first.ctilde_sq != 1.0 {
            return Err(Error::Invalid(
                "the first row must be the constant eigenfunction (s = 1, C̃² = 1)".into(),
            ));
        }
        for (i, r) in rows.iter().enumerate() {
            if !(r.ctilde_sq >= 0.0 && r.ctilde_sq.is_finite()) {
                return Err(Error::Invalid(format!(
                    "row {}: C̃² = {} must be finite and nonnegative",
                    i + 1,
                    r.ctilde_sq
                )));
            }
            if i > 0 && r.s.eigenvalue() < rows[i - 1].s.eigenvalue() {
                return Err(Error::Invalid(format!(
                    "row {}: eigenvalues must be nondecreasing",
                    i + 1
                )));
            }
        }
        Ok(Self {
            rows,
            source: source.into(),
        })
    }

    /// The one-row table {(1, 1)}.
    pub fn trivial() -> Self {
        Self {
            rows: vec![SpectrumRow {
                s: SpectralPoint::one(),
                ctilde_sq: 1.0,
            }],
            source: "trivial".into(),
        }
    }

    pub fn rows(&self) -> &[SpectrumRow] {
        &self.rows
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Merge in further rows (r ≥ 1), keeping eigenvalue order.
    pub fn with_rows(&self, extra: &[SpectrumRow]) -> Result<Self> {
        let mut rows = self.rows.clone();
        rows.extend_from_slice(extra);
        rows[1..].sort_by(|a, b| a.s.eigenvalue().total_cmp(&b.s.eigenvalue()));
        Self::new(rows, self.source.clone())
    }

    /// Multiply every C̃² with r ≥ 1 by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let mut rows = self.rows.clone();
        for r in &mut rows[1..] {
            r.ctilde_sq *= factor;
        }
        Self::new(rows, self.source.clone())
    }

    /// Parse `sigma,t,ctilde_sq` lines; `#` starts a comment.
    pub fn parse(text: &str, source: impl Into<String>) -> Result<Self> {
        let mut rows = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Invalid(format!("line {}: {msg}", n + 1));
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(bad(format!("expected 3 fields, found {}", fields.len())));
            }
            let mut nums = [0.0; 3];
            for (v, f) in nums.iter_mut().zip(&fields) {
                *v = f.parse().map_err(|_| bad(format!("'{f}' is not a number")))?;
            }
            let s = SpectralPoint::new(nums[0], nums[1]).map_err(|e| bad(e.to_string()))?;
            rows.push(SpectrumRow {
                s,
                ctilde_sq: nums[2],
            });
            if rows.len() == 1 && (!s.is_one() || nums[2] != 1.0) {
                return Err(bad("the first data row must be 1,0,1".into()));
            }
        }
        Self::new(rows, source).map_err(|e| match e {
            Error::Invalid(m) if m.starts_with("row ") => Error::Invalid(format!("data {m}")),
            e => e,
        })
    }

    /// The file form read by [`SpectrumTable::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("# source: {}\n# sigma,t,ctilde_sq\n", self.source);
        for r in &self.rows {
            out.push_str(&format!("{:?},{:?},{:?}\n", r.s.sigma(), r.s.t(), r.ctilde_sq));
        }
        out
    }
}

/// Distribution of synthetic C̃² values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CoeffModel {
    Unit,
    Exponential { mean: f64 },
}

/// Largest t accepted by [`synth_spectrum`].
pub const SYNTH_T_MAX: f64 = 5000.0;

/// A deterministic spectrum with counting function ≈ density·t² and the
/// given coefficient model. The n-th point is t = √((n − 1 + u)/density)
/// with u uniform in [0, 1).
pub fn synth_spectrum(t_max: f64, density: f64, model: CoeffModel, seed: u64) -> Result<SpectrumTable> {
    if !(t_max > 0.0 && t_max <= SYNTH_T_MAX) {
        return Err(Error::Invalid(format!(
            "t_max = {t_max} not in (0, {SYNTH_T_MAX}]"
        )));
    }
    if !(density > 0.0 && density.is_finite()) {
        return Err(Error::Invalid(format!("density {density} must be positive")));
    }
    if let CoeffModel::Exponential { mean } = model {
        if !(mean > 0.0 && mean.is_finite()) {
            return Err(Error::Invalid(format!("mean {mean} must be positive")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = (density * t_max * t_max).floor() as u64;
    let mut rows = vec![SpectrumRow {
        s: SpectralPoint::one(),
        ctilde_sq: 1.0,
    }];
    for n in 0..count {
        let u: f64 = rng.gen();
        let t = ((n as f64 + u) / density).sqrt();
        let ctilde_sq = match model {
            CoeffModel::Unit => 1.0,
            CoeffModel::Exponential { mean } => -mean * (1.0 - rng.gen::<f64>()).ln(),
        };
        rows.push(SpectrumRow {
            s: SpectralPoint::tempered(t)?,
            ctilde_sq,
        });
    }
    let label = format!("synthetic(t_max={t_max}, density={density}, model={model:?}, seed={seed})");
    SpectrumTable::new(rows, label)
}

/// z^{2k} Σ C̃² H̃(1 − z²) for the u-channel, z^{−2k} Σ C̃² H̃(1 − z^{−2}) for t.
pub fn channel_sum(
    tab: &SpectrumTable,
    z: Complex64,
    channel: Channel,
    params: &WeightParams,
    prec: PrecisionSpec,
) -> Result<BlockValue> {
    let terms: Vec<BlockValue> = tab
        .rows
        .par_iter()
        .map(|r| {
            let b = ChannelBlock::new(channel, r.s, params, &[z], prec)?.eval(z)?;
            Ok(b.scaled_by(Complex64::new(r.ctilde_sq, 0.0)))
        })
        .collect::<Result<_>>()?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut abs_err = 0.0;
    let mut abs = 0.0;
    for b in &terms {
        value += b.value;
        abs_err += b.abs_err;
        abs += b.value.norm();
    }
    let power = 2.0
        * params.k() as f64
        * match channel {
            Channel::U => 1.0,
            Channel::T => -1.0,
        };
    let zp = z.powf(power);
    Ok(BlockValue {
        value: zp * value,
        abs_err: zp.norm() * (abs_err + 2.0 * f64::EPSILON * abs * tab.len() as f64),
        method: Method::Auto,
    })
}

/// One row's share of a side of the averaged crossing equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub row: usize,
    pub t: f64,
    pub sigma: f64,
    pub value: f64,
}

/// Weights of one row, for plotting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSample {
    pub t: f64,
    pub w: f64,
    pub wcheck: f64,
}

/// Both sides of Σ W(s_r) C̃_r² = Σ W̌(s_r) C̃_r² for a finite table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectReport {
    pub lhs: f64,
    pub lhs_err: f64,
    pub rhs: f64,
    pub rhs_err: f64,
    /// lhs − rhs.
    pub defect: f64,
    /// Largest |W C̃²| rows, largest first.
    pub top_lhs: Vec<Contribution>,
    /// Largest |W̌ C̃²| rows, largest first.
    pub top_rhs: Vec<Contribution>,
    /// W, W̌ at the requested plotting grid (σ = 1/2).
    pub curve: Vec<WeightSample>,
}

/// Rows reported in each top-contributor list.
pub const TOP_ROWS: usize = 10;

pub fn averaged_defect(
    tab: &SpectrumTable,
    params: &WeightParams,
    q: &QuadratureSpec,
    t_grid: &[f64],
) -> Result<DefectReport> {
    let per_row: Vec<(f64, f64, f64, f64)> = tab
        .rows
        .par_iter()
        .map(|r| {
            let w = weight_w_exact(r.s, params, q)?;
            let wc = weight_wcheck_exact(r.s, params, q)?;
            Ok((w.value, w.abs_err, wc.value, wc.abs_err))
        })
        .collect::<Result<_>>()?;
    let (mut lhs, mut lhs_err, mut rhs, mut rhs_err) = (0.0, 0.0, 0.0, 0.0);
    let mut left = Vec::with_capacity(tab.len());
    let mut right = Vec::with_capacity(tab.len());
    for (i, (r, &(w, we, wc, wce))) in tab.rows.iter().zip(&per_row).enumerate() {
        lhs += r.ctilde_sq * w;
        lhs_err += r.ctilde_sq * we;
        rhs += r.ctilde_sq * wc;
        rhs_err += r.ctilde_sq * wce;
        let c = |value| Contribution {
            row: i,
            t: r.s.t(),
            sigma: r.s.sigma(),
            value,
        };
        left.push(c(r.ctilde_sq * w));
        right.push(c(r.ctilde_sq * wc));
    }
    let top = |mut v: Vec<Contribution>| {
        v.sort_by(|a, b| b.value.abs().total_cmp(&a.value.abs()).then(a.row.cmp(&b.row)));
        v.truncate(TOP_ROWS);
        v
    };
    let curve = t_grid
        .par_iter()
        .map(|&t| {
            let s = SpectralPoint::tempered(t)?;
            Ok(WeightSample {
                t,
                w: weight_w_exact(s, params, q)?.value,
                wcheck: weight_wcheck_exact(s, params, q)?.value,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DefectReport {
        lhs,
        lhs_err,
        rhs,
        rhs_err,
        defect: lhs - rhs,
        top_lhs: top(left),
        top_rhs: top(right),
        curve,
    })
}

/// Σ C̃² over rows with |t_r − T| ≤ H.
pub fn window_sum(tab: &SpectrumTable, big_t: f64, h: f64) -> f64 {
    tab.rows
        .iter()
        .filter(|r| (r.s.t() - big_t).abs() <= h)
        .map(|r| r.ctilde_sq)
        .sum()
}
