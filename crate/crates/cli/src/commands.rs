use crate::error::{CliError, CliResult};
use crate::output::{emit, write_text, Cell, OutputArgs, Table};
use clap::{Args, ValueEnum};
use crossing_core::asymptotics::{weight_w_asym, weight_wcheck_asym};
use crossing_core::averaging::{weight_w_exact, weight_wcheck_exact, QuadratureSpec};
use crossing_core::blocks::{block_h_with, block_htilde_t, block_htilde_u, T_Z_CAP, U_Z_CAP};
use crossing_core::harness::{averaged_defect, synth_spectrum, CoeffModel, SpectrumTable};
use crossing_core::hyp::{BlockValue, Method};
use crossing_core::scalar::PrecisionSpec;
use crossing_core::spectral::{Channel, SpectralPoint, WeightParams};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::path::PathBuf;

#[derive(Debug, Clone, Args, Serialize)]
pub struct WeightArgs {
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long = "T", default_value_t = 75.0)]
    pub big_t: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
}

impl WeightArgs {
    fn params(&self) -> CliResult<WeightParams> {
        Ok(WeightParams::new(self.k, self.big_t, self.eps)?)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QuadArgs {
    #[arg(long, default_value_t = 32)]
    pub panel_order: usize,
    #[arg(long, default_value_t = PI / 2.0)]
    pub phase_per_panel: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1 << 20)]
    pub max_panels: usize,
}

impl QuadArgs {
    fn spec(&self) -> CliResult<QuadratureSpec> {
        let q = QuadratureSpec {
            panel_order: self.panel_order,
            phase_per_panel: self.phase_per_panel,
            rel_tol: self.rel_tol,
            max_panels: self.max_panels,
        };
        q.validate()?;
        Ok(q)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BlockEvalArgs {
    #[arg(long, value_parser = parse_channel)]
    pub channel: Channel,
    #[arg(long)]
    pub t: f64,
    /// Defaults to 1/2, the tempered line.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Real z; shorthand for --z-re with --z-im 0.
    #[arg(long, conflicts_with_all = ["z_re", "z_im"])]
    pub z: Option<f64>,
    #[arg(long)]
    pub z_re: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub z_im: f64,
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    pub method: Method,
    /// Evaluate with this many decimal digits instead of f64.
    #[arg(long)]
    pub digits: Option<u32>,
    #[command(flatten)]
    pub weight: WeightArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

fn parse_channel(s: &str) -> Result<Channel, String> {
    s.parse().map_err(|e: crossing_core::Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: crossing_core::Error| e.to_string())
}

pub fn block_eval(a: &BlockEvalArgs) -> CliResult<()> {
    let s = SpectralPoint::new(a.sigma.unwrap_or(0.5), a.t)?;
    let z = match (a.z, a.z_re) {
        (Some(x), _) => Complex64::new(x, 0.0),
        (None, Some(x)) => Complex64::new(x, a.z_im),
        (None, None) => return Err(CliError::Input("one of --z or --z-re is required".into())),
    };
    let params = a.weight.params()?;
    let prec = match a.digits {
        Some(d) => PrecisionSpec::extended(d)?,
        None => PrecisionSpec::Machine,
    };
    let v = htilde(a.channel, s, z, a.method, &params, prec)?;
    let mut table = Table::new(&[
        "channel", "sigma", "t", "z_re", "z_im", "value_re", "value_im", "abs_err", "method",
    ]);
    table.push(vec![
        Cell::Text(a.channel.to_string()),
        Cell::Num(s.sigma()),
        Cell::Num(s.t()),
        Cell::Num(z.re),
        Cell::Num(z.im),
        Cell::Num(v.value.re),
        Cell::Num(v.value.im),
        Cell::Num(v.abs_err),
        Cell::Text(v.method.tag().into()),
    ]);
    emit(&table, &a.out, a)
}

/// H̃ for one channel; an explicit method bypasses the automatic dispatch.
fn htilde(
    channel: Channel,
    s: SpectralPoint,
    z: Complex64,
    method: Method,
    params: &WeightParams,
    prec: PrecisionSpec,
) -> CliResult<BlockValue> {
    if method == Method::Auto {
        return Ok(match channel {
            Channel::U => block_htilde_u(s, z, params, prec)?,
            Channel::T => block_htilde_t(s, z, params, prec)?,
        });
    }
    let (w, cap) = match channel {
        Channel::U => (1.0 - z * z, U_Z_CAP),
        Channel::T => (1.0 - 1.0 / (z * z), T_Z_CAP),
    };
    if !(z.re > 0.0) || z.norm() > cap {
        return Err(CliError::Input(format!(
            "{channel}-channel needs Re z > 0 and |z| ≤ {cap}, got {z}"
        )));
    }
    let sv = block_h_with(s, w, method, prec)?;
    if s.t() <= 1.0 {
        return Ok(sv.rescaled(0.0));
    }
    let b = sv.rescaled(PI * s.t());
    let pow = s.t().powi(params.block_power());
    Ok(BlockValue {
        value: b.value * pow,
        abs_err: b.abs_err * pow,
        method: b.method,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// W against its main term, k = 1, T = 75, ε = 1/10, t = 2..115.
    Iu,
    /// W̌ against its main term, k = 1, T = 1000, ε = 1/40, t = 10 + 3n/4.
    It,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FiguresArgs {
    #[arg(long, value_enum)]
    pub preset: Preset,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long = "T")]
    pub big_t: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

pub fn figures(a: &FiguresArgs) -> CliResult<()> {
    let (k, big_t, eps, grid): (u32, f64, f64, Vec<f64>) = match a.preset {
        Preset::Iu => (1, 75.0, 0.1, (2..=115).map(f64::from).collect()),
        Preset::It => (
            1,
            1000.0,
            1.0 / 40.0,
            (0..=120).map(|n| 10.0 + 0.75 * n as f64).collect(),
        ),
    };
    let params = WeightParams::new(a.k.unwrap_or(k), a.big_t.unwrap_or(big_t), a.eps.unwrap_or(eps))?;
    let q = a.quad.spec()?;
    let channel = match a.preset {
        Preset::Iu => Channel::U,
        Preset::It => Channel::T,
    };
    let rows: Vec<[f64; 3]> = grid
        .par_iter()
        .map(|&t| {
            let s = SpectralPoint::tempered(t)?;
            Ok(match channel {
                Channel::U => [
                    t,
                    weight_w_exact(s, &params, &q)?.value,
                    weight_w_asym(t, &params),
                ],
                Channel::T => [
                    t,
                    weight_wcheck_exact(s, &params, &q)?.value,
                    weight_wcheck_asym(t, &params),
                ],
            })
        })
        .collect::<crossing_core::Result<_>>()?;
    let mut table = Table::new(&["t", "exact", "asym", "abs_diff"]);
    for [t, exact, asym] in rows {
        table.push(vec![
            Cell::Num(t),
            Cell::Num(exact),
            Cell::Num(asym),
            Cell::Num((exact - asym).abs()),
        ]);
    }
    emit(&table, &a.out, a)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScanArgs {
    /// Explicit t values; overrides the range flags.
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub t_from: f64,
    #[arg(long, default_value_t = 115.0)]
    pub t_to: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t_step: f64,
    /// Off the tempered line only t = 0 is allowed.
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    #[command(flatten)]
    pub weight: WeightArgs,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

impl ScanArgs {
    fn grid(&self) -> CliResult<Vec<f64>> {
        if !self.t.is_empty() {
            return Ok(self.t.clone());
        }
        if !(self.t_step > 0.0) || !self.t_from.is_finite() || !self.t_to.is_finite() {
            return Err(CliError::Input(
                "t range needs finite ends and a positive step".into(),
            ));
        }
        if self.t_to < self.t_from {
            return Ok(Vec::new());
        }
        let n = ((self.t_to - self.t_from) / self.t_step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| self.t_from + i as f64 * self.t_step).collect())
    }
}

pub fn weights_scan(a: &ScanArgs) -> CliResult<()> {
    let params = a.weight.params()?;
    let q = a.quad.spec()?;
    let grid = a.grid()?;
    let rows: Vec<Vec<Cell>> = grid
        .par_iter()
        .map(|&t| {
            let s = SpectralPoint::new(a.sigma, t)?;
            let w = weight_w_exact(s, &params, &q)?;
            let wc = weight_wcheck_exact(s, &params, &q)?;
            Ok(vec![
                Cell::Num(s.sigma()),
                Cell::Num(t),
                Cell::Num(w.value),
                Cell::Num(w.abs_err),
                Cell::Num(wc.value),
                Cell::Num(wc.abs_err),
                Cell::Num(weight_w_asym(t, &params)),
                Cell::Num(weight_wcheck_asym(t, &params)),
            ])
        })
        .collect::<crossing_core::Result<_>>()?;
    let mut table = Table::new(&[
        "sigma",
        "t",
        "w",
        "w_err",
        "wcheck",
        "wcheck_err",
        "w_asym",
        "wcheck_asym",
    ]);
    rows.into_iter().for_each(|r| table.push(r));
    emit(&table, &a.out, a)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CrossingArgs {
    /// `sigma,t,ctilde_sq` per line; the first data row must be 1,0,1.
    #[arg(long)]
    pub spectrum: PathBuf,
    #[command(flatten)]
    pub weight: WeightArgs,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

pub fn read_spectrum(path: &PathBuf) -> CliResult<SpectrumTable> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(SpectrumTable::parse(&text, path.display().to_string())?)
}

pub fn crossing(a: &CrossingArgs) -> CliResult<()> {
    let params = a.weight.params()?;
    let q = a.quad.spec()?;
    let tab = read_spectrum(&a.spectrum)?;
    let rep = averaged_defect(&tab, &params, &q, &[])?;
    let mut table = Table::new(&["quantity", "row", "t", "sigma", "value"]);
    let blank = || Cell::Text(String::new());
    for (name, v) in [
        ("lhs", rep.lhs),
        ("lhs_err", rep.lhs_err),
        ("rhs", rep.rhs),
        ("rhs_err", rep.rhs_err),
        ("defect", rep.defect),
    ] {
        table.push(vec![
            Cell::Text(name.into()),
            blank(),
            blank(),
            blank(),
            Cell::Num(v),
        ]);
    }
    for (name, list) in [("top_lhs", &rep.top_lhs), ("top_rhs", &rep.top_rhs)] {
        for c in list {
            table.push(vec![
                Cell::Text(name.into()),
                Cell::Int(c.row as i64),
                Cell::Num(c.t),
                Cell::Num(c.sigma),
                Cell::Num(c.value),
            ]);
        }
    }
    emit(&table, &a.out, a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Unit,
    Exponential,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 100.0)]
    pub t_max: f64,
    /// Rows up to t number about density·t².
    #[arg(long, default_value_t = 0.05)]
    pub density: f64,
    #[arg(long, value_enum, default_value = "unit")]
    pub model: Model,
    /// Mean of C̃² for the exponential model.
    #[arg(long, default_value_t = 1.0)]
    pub mean: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

pub fn spectrum_synth(a: &SynthArgs) -> CliResult<()> {
    let model = match a.model {
        Model::Unit => CoeffModel::Unit,
        Model::Exponential => CoeffModel::Exponential { mean: a.mean },
    };
    let tab = synth_spectrum(a.t_max, a.density, model, a.seed)?;
    write_text(&tab.to_text(), a.output.as_ref())
}
