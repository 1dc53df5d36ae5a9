//! Model-versus-Monte-Carlo comparison on the discrete line grid.

use rayon::prelude::*;
use serde::Serialize;

use super::{empirical_psd, EmpiricalPsd, OracleConfig};
use crate::error::Result;
use crate::formats::{coefficients, moment_set, CoefficientSet, Constellation4D};
use crate::link::{LinkSpec, PulseSpectrum};
use crate::model::{psd_sweep, psd_x, DEFAULT_N_FREQ};
use crate::quadrature::{ChiEvaluator, GridSpec};

/// Bins whose |z| may exceed this count as failures.
pub const Z_LIMIT: f64 = 3.0;
/// Fraction of bins that must lie within [`Z_LIMIT`].
pub const MIN_FRACTION_WITHIN: f64 = 0.99;
/// Largest accepted relative error of the matched-filter NLI power.
pub const POWER_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, Serialize)]
pub struct BinReport {
    pub i: i64,
    pub freq: f64,
    /// S(iΔf) from the analytic model.
    pub model: f64,
    /// E{|c_i|²}/Δf from the Monte-Carlo run.
    pub oracle: f64,
    pub stderr: f64,
    pub z: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolarisationSummary {
    pub max_abs_z: f64,
    pub worst_freq: f64,
    pub n_bins: usize,
    pub n_outside: usize,
    pub fraction_within: f64,
    pub power_model: f64,
    pub power_oracle: f64,
    pub power_stderr: f64,
    pub power_rel_diff: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub max_abs_z: f64,
    pub trials: usize,
    pub w: usize,
    pub x: PolarisationSummary,
    pub y: PolarisationSummary,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub x: Vec<BinReport>,
    pub y: Vec<BinReport>,
    pub summary: Summary,
}

fn z_score(model: f64, oracle: f64, se: f64) -> f64 {
    let d = model - oracle;
    if se > 0.0 {
        d / se
    } else if d.abs() <= 1e-12 * model.abs().max(oracle.abs()) {
        0.0
    } else {
        d.signum() * f64::INFINITY
    }
}

#[allow(clippy::too_many_arguments)]
fn polarisation(
    emp: &EmpiricalPsd,
    mean: &[f64],
    se: &[f64],
    model: &[f64],
    power_model: f64,
    power_oracle: f64,
    power_se: f64,
    delta_f: f64,
) -> (Vec<BinReport>, PolarisationSummary) {
    let bins: Vec<BinReport> = emp
        .bins
        .iter()
        .enumerate()
        .map(|(j, &i)| {
            let oracle = mean[j] / delta_f;
            let stderr = se[j] / delta_f;
            BinReport {
                i,
                freq: emp.freqs[j],
                model: model[j],
                oracle,
                stderr,
                z: z_score(model[j], oracle, stderr),
            }
        })
        .collect();
    let n_outside = bins.iter().filter(|b| !(b.z.abs() <= Z_LIMIT)).count();
    let worst = bins
        .iter()
        .max_by(|a, b| a.z.abs().total_cmp(&b.z.abs()))
        .expect("at least one bin");
    let fraction_within = 1.0 - n_outside as f64 / bins.len() as f64;
    let power_rel_diff = if power_oracle != 0.0 {
        (power_model - power_oracle).abs() / power_oracle.abs()
    } else if power_model == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let summary = PolarisationSummary {
        max_abs_z: worst.z.abs(),
        worst_freq: worst.freq,
        n_bins: bins.len(),
        n_outside,
        fraction_within,
        power_model,
        power_oracle,
        power_stderr: power_se,
        power_rel_diff,
        pass: fraction_within >= MIN_FRACTION_WITHIN && power_rel_diff <= POWER_TOLERANCE,
    };
    (bins, summary)
}

/// Compares a finished Monte-Carlo run with the model evaluated with the
/// given coefficient sets.
pub fn build_report(
    emp: &EmpiricalPsd,
    coeffs_x: &CoefficientSet,
    coeffs_y: &CoefficientSet,
    ev: &ChiEvaluator,
    cfg: &OracleConfig,
    n_freq: usize,
) -> Result<ValidationReport> {
    let model: Vec<(f64, f64)> = emp
        .freqs
        .par_iter()
        .map(|&f| Ok((psd_x(f, coeffs_x, ev)?, psd_x(f, coeffs_y, ev)?)))
        .collect::<Result<_>>()?;
    let (mx, my): (Vec<f64>, Vec<f64>) = model.into_iter().unzip();
    let sweep = psd_sweep(coeffs_x, coeffs_y, ev, n_freq)?;
    let (x, sx) = polarisation(
        emp,
        &emp.mean_x,
        &emp.se_x,
        &mx,
        sweep.power_x,
        emp.power_x,
        emp.power_se_x,
        cfg.delta_f,
    );
    let (y, sy) = polarisation(
        emp,
        &emp.mean_y,
        &emp.se_y,
        &my,
        sweep.power_y,
        emp.power_y,
        emp.power_se_y,
        cfg.delta_f,
    );
    let summary = Summary {
        max_abs_z: sx.max_abs_z.max(sy.max_abs_z),
        trials: emp.trials,
        w: cfg.w,
        pass: sx.pass && sy.pass,
        x: sx,
        y: sy,
    };
    Ok(ValidationReport { x, y, summary })
}

/// Runs the Monte-Carlo oracle and compares it with the model.
pub fn compare_model_oracle(
    format: &Constellation4D,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    cfg: &OracleConfig,
    grid: &GridSpec,
) -> Result<ValidationReport> {
    let cx = coefficients(&moment_set(format));
    let cy = coefficients(&moment_set(&format.swap_polarizations()));
    compare_with_coefficients(format, link, pulse, cfg, grid, &cx, &cy)
}

/// As [`compare_model_oracle`], with the model evaluated on the given
/// coefficient sets instead of those of the format.
pub fn compare_with_coefficients(
    format: &Constellation4D,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    cfg: &OracleConfig,
    grid: &GridSpec,
    coeffs_x: &CoefficientSet,
    coeffs_y: &CoefficientSet,
) -> Result<ValidationReport> {
    let emp = empirical_psd(format, link, pulse, cfg)?;
    let ev = ChiEvaluator::new(*link, pulse.clone(), *grid);
    build_report(&emp, coeffs_x, coeffs_y, &ev, cfg, DEFAULT_N_FREQ)
}

/// Rectangular spectrum whose edges sit half a line beyond the outermost
/// oracle lines, so that the continuum band and the line band coincide.
pub fn matched_pulse(cfg: &OracleConfig) -> Result<PulseSpectrum> {
    let cutoff = (cfg.w as f64 / 2.0 - 0.5) * cfg.delta_f;
    PulseSpectrum::rectangular_cutoff(cfg.symbol_rate(), cutoff)
}
