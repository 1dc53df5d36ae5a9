//! Command-line front end: TOML run configuration, unit conversion and
//! CSV/JSON output.
//!
//! Exit codes: 0 success or validation pass, 1 validation failure, 2 usage,
//! configuration, I/O or numerical error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::{
    coefficients, load_constellation, moment_set, CoefficientSet, Constellation4D, MomentSet,
};
use crate::link::{LinkSpec, PulseSpectrum};
use crate::model::{psd_sweep, NliResult, DEFAULT_N_FREQ};
use crate::oracle::qsum::scaled_q;
use crate::oracle::{compare_with_coefficients, matched_pulse, DeltaMode, OracleConfig};
use crate::quadrature::{convergence_report, ChiEvaluator, GridSpec, Rule};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "egn4d",
    version,
    about = "NLI PSD model for 4D modulation formats"
)]
pub struct Cli {
    /// Run configuration (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for output files; results go to stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Monte-Carlo seed, overriding the configuration.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Quadrature points per dimension, overriding the configuration.
    #[arg(long, global = true)]
    pub grid_n: Option<usize>,
    /// Number of PSD samples across the band, overriding the configuration.
    #[arg(long, global = true)]
    pub freqs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments of the format and its fourteen coefficients.
    Moments,
    /// Coefficients for both polarisations.
    Coeffs,
    /// PSD sweep (CSV) and NLI power report (JSON).
    Psd,
    /// NLI power report only.
    Power,
    /// Model against the Monte-Carlo oracle.
    Validate {
        /// Doubles Ξ₁ in the model, to check that validation can fail.
        #[arg(long)]
        corrupt_xi1: bool,
    },
    /// χ_l(f) under grid refinement and the scaled lattice sums Δf^d·Q_l.
    ChiConvergence {
        /// Frequency in Hz; the lattice uses the nearest line.
        #[arg(long, default_value_t = 0.0)]
        f_hz: f64,
        /// Restrict to one l in 1..=11.
        #[arg(long)]
        l: Option<usize>,
    },
}

/// Link parameters as written in the configuration file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkConfig {
    pub alpha_db_per_km: f64,
    pub beta2_ps2_per_km: f64,
    pub gamma_per_w_km: f64,
    pub span_km: f64,
    pub n_spans: u32,
    pub symbol_rate_gbd: f64,
}

impl LinkConfig {
    pub fn to_si(&self) -> Result<LinkSpec> {
        for (name, v) in [
            ("alpha_db_per_km", self.alpha_db_per_km),
            ("span_km", self.span_km),
            ("symbol_rate_gbd", self.symbol_rate_gbd),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        // γ = 0 is accepted so that a linear link can be run as a null check.
        if !(self.gamma_per_w_km >= 0.0) || !self.gamma_per_w_km.is_finite() {
            return Err(Error::Config(format!(
                "gamma_per_w_km must be nonnegative, got {}",
                self.gamma_per_w_km
            )));
        }
        if self.n_spans == 0 {
            return Err(Error::Config("n_spans must be at least 1".into()));
        }
        if !self.beta2_ps2_per_km.is_finite() {
            return Err(Error::Config("beta2_ps2_per_km must be finite".into()));
        }
        LinkSpec::from_engineering(
            self.alpha_db_per_km,
            self.beta2_ps2_per_km,
            self.gamma_per_w_km,
            self.n_spans,
            self.span_km,
            self.symbol_rate_gbd,
        )
    }

    pub fn from_si(link: &LinkSpec) -> Self {
        Self {
            alpha_db_per_km: crate::link::neper_per_m_to_db_per_km(link.alpha),
            beta2_ps2_per_km: link.beta2 * 1e27,
            gamma_per_w_km: link.gamma * 1e3,
            span_km: link.span_length * 1e-3,
            n_spans: link.n_spans,
            symbol_rate_gbd: link.symbol_rate * 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PulseShape {
    /// Flat spectrum; cut at `cutoff_ghz`, or at R_s/2 when absent.
    Rectangular,
    Triangle,
    /// Samples from a CSV file with header `f_hz,value`.
    Tabulated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseConfig {
    pub shape: PulseShape,
    pub cutoff_ghz: Option<f64>,
    pub path: Option<PathBuf>,
}

impl Default for PulseConfig {
    fn default() -> Self {
        Self {
            shape: PulseShape::Rectangular,
            cutoff_ghz: None,
            path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormatConfig {
    /// `pm-qpsk`, `pm-16qam` or `qpsk-x-bpsk`.
    pub builtin: Option<String>,
    /// Constellation CSV (`ax_re,ax_im,ay_re,ay_im[,prob]`).
    pub path: Option<PathBuf>,
    /// Launch power per channel; enables the relative NLI figures.
    pub launch_power_dbm: Option<f64>,
}

impl Default for FormatConfig {
    fn default() -> Self {
        Self {
            builtin: Some("pm-qpsk".into()),
            path: None,
            launch_power_dbm: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub points_per_dim: usize,
    pub rule: Rule,
    pub n_freq: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            points_per_dim: GridSpec::DEFAULT_N,
            rule: Rule::Midpoint,
            n_freq: DEFAULT_N_FREQ,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleSettings {
    pub w: usize,
    pub trials: usize,
    pub seed: u64,
    pub include_bias: bool,
    pub include_dc: bool,
    /// Line counts used by `chi-convergence` for the lattice sums.
    pub lattice_w: Vec<usize>,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self {
            w: 128,
            trials: 10_000,
            seed: 1,
            include_bias: false,
            include_dc: false,
            lattice_w: vec![16, 32, 64],
        }
    }
}

/// The whole run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub link: LinkConfig,
    #[serde(default)]
    pub pulse: PulseConfig,
    #[serde(default)]
    pub format: FormatConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub oracle: OracleSettings,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Resolves relative paths in the configuration against `dir`.
    fn resolve(&mut self, dir: &Path) {
        for p in [&mut self.pulse.path, &mut self.format.path]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
    }

    fn pulse(&self, link: &LinkSpec) -> Result<PulseSpectrum> {
        let rs = link.symbol_rate;
        match self.pulse.shape {
            PulseShape::Rectangular => match self.pulse.cutoff_ghz {
                Some(c) => PulseSpectrum::rectangular_cutoff(rs, c * 1e9),
                None => Ok(PulseSpectrum::rectangular(rs)),
            },
            PulseShape::Triangle => Ok(PulseSpectrum::triangle(rs)),
            PulseShape::Tabulated => {
                let path = self
                    .pulse
                    .path
                    .as_ref()
                    .ok_or_else(|| Error::Config("tabulated pulse needs a path".into()))?;
                PulseSpectrum::tabulated(rs, &read_pulse_csv(path)?)
            }
        }
    }

    fn constellation(&self) -> Result<Constellation4D> {
        let c = match (&self.format.path, self.format.builtin.as_deref()) {
            (Some(p), _) => load_constellation(p)?,
            (None, Some("pm-qpsk")) => Constellation4D::pm_qpsk(),
            (None, Some("pm-16qam")) => Constellation4D::pm_16qam(),
            (None, Some("qpsk-x-bpsk")) => Constellation4D::qpsk_x_bpsk(),
            (None, Some(other)) => {
                return Err(Error::Config(format!("unknown builtin format '{other}'")))
            }
            (None, None) => {
                return Err(Error::Config(
                    "format needs a builtin name or a path".into(),
                ))
            }
        };
        Ok(c)
    }

    fn grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.grid.points_per_dim, self.grid.rule)
    }

    fn oracle_config(&self, link: &LinkSpec) -> Result<OracleConfig> {
        let mut cfg = OracleConfig::new(self.oracle.w, link.symbol_rate)?;
        cfg.trials = self.oracle.trials;
        cfg.seed = self.oracle.seed;
        cfg.include_bias = self.oracle.include_bias;
        cfg.include_dc = self.oracle.include_dc;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn read_pulse_csv(path: &Path) -> Result<Vec<(f64, f64)>> {
    let bad = |line: usize, reason: String| Error::MalformedRow {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file);
    let headers = rdr.headers().map_err(|e| bad(1, e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != ["f_hz", "value"] {
        return Err(bad(1, "expected header f_hz,value".into()));
    }
    let mut out = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let line = row + 2;
        let rec = rec.map_err(|e| bad(line, e.to_string()))?;
        let num = |k: usize| -> Result<f64> {
            rec[k]
                .parse::<f64>()
                .map_err(|_| bad(line, format!("cannot parse '{}' as a number", &rec[k])))
        };
        out.push((num(0)?, num(1)?));
    }
    Ok(out)
}

/// Configuration after command-line overrides, with everything resolved.
struct Setup {
    cfg: RunConfig,
    link: LinkSpec,
    pulse: PulseSpectrum,
    format: Constellation4D,
    grid: GridSpec,
}

impl Setup {
    fn new(cli: &Cli) -> Result<Self> {
        let path = cli
            .config
            .as_ref()
            .ok_or_else(|| Error::Config("--config <path> is required".into()))?;
        let mut cfg = RunConfig::load(path)?;
        cfg.resolve(path.parent().unwrap_or(Path::new(".")));
        if let Some(s) = cli.seed {
            cfg.oracle.seed = s;
        }
        if let Some(n) = cli.grid_n {
            cfg.grid.points_per_dim = n;
        }
        if let Some(n) = cli.freqs {
            cfg.grid.n_freq = n;
        }
        let link = cfg.link.to_si()?;
        let pulse = cfg.pulse(&link)?;
        let mut format = cfg.constellation()?;
        if let Some(dbm) = cfg.format.launch_power_dbm {
            // Symbol energy of a unit-energy pulse at the given launch power.
            let watts = 1e-3 * 10f64.powf(dbm / 10.0);
            format = format.with_total_power(watts / link.symbol_rate)?;
        }
        let grid = cfg.grid()?;
        Ok(Self {
            cfg,
            link,
            pulse,
            format,
            grid,
        })
    }

    fn evaluator(&self, pulse: &PulseSpectrum) -> ChiEvaluator {
        ChiEvaluator::new(self.link, pulse.clone(), self.grid)
    }

    fn coefficient_pair(&self) -> (CoefficientSet, CoefficientSet) {
        (
            coefficients(&moment_set(&self.format)),
            coefficients(&moment_set(&self.format.swap_polarizations())),
        )
    }
}

/// Writes `text` to `out/name`, or to stdout when no directory is given.
fn emit(out: Option<&Path>, name: &str, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|source| Error::Io {
                path: dir.to_path_buf(),
                source,
            })?;
            let path = dir.join(name);
            std::fs::write(&path, text).map_err(|source| Error::Io { path, source })
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::Output(e.to_string())),
    }
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Output(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Output(e.to_string()))
}

fn json_text<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Output(e.to_string()))
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

fn moment_name(s: crate::formats::MomentSpec) -> String {
    format!("m{}{}{}{}", s.p, s.q, s.r, s.s)
}

fn moment_rows(m: &MomentSet) -> Vec<Vec<String>> {
    m.iter()
        .map(|(s, v)| vec!["moment".into(), moment_name(s), num(v.re), num(v.im)])
        .collect()
}

fn coefficient_rows(kind: &str, c: &CoefficientSet) -> Vec<Vec<String>> {
    CoefficientSet::NAMES
        .iter()
        .zip(c.values())
        .map(|(n, v)| vec![kind.to_string(), n.to_string(), num(v.re), num(v.im)])
        .collect()
}

#[derive(Debug, Serialize)]
struct PowerReport<'a> {
    power_x: f64,
    power_y: f64,
    /// Matched-filter NLI variance over symbol energy per polarisation, in dB,
    /// when a launch power is set.
    nli_to_signal_db_x: Option<f64>,
    nli_to_signal_db_y: Option<f64>,
    n_freq: usize,
    grid: GridSpec,
    link: LinkConfig,
    pulse: &'a PulseConfig,
    format: &'a FormatConfig,
}

fn power_report<'a>(s: &'a Setup, r: &NliResult) -> PowerReport<'a> {
    // Both sides are per-symbol energies at the matched-filter output.
    let rel = |p: f64, e: f64| 10.0 * (p / e).log10();
    let (ex, ey) = (
        s.format
            .moment(crate::formats::MomentSpec::raw(1, 1, 0, 0))
            .re,
        s.format
            .moment(crate::formats::MomentSpec::raw(0, 0, 1, 1))
            .re,
    );
    let launch = s.cfg.format.launch_power_dbm.is_some();
    PowerReport {
        power_x: r.power_x,
        power_y: r.power_y,
        nli_to_signal_db_x: (launch && ex > 0.0).then(|| rel(r.power_x, ex)),
        nli_to_signal_db_y: (launch && ey > 0.0).then(|| rel(r.power_y, ey)),
        n_freq: r.freqs.len(),
        grid: s.grid,
        link: LinkConfig::from_si(&s.link),
        pulse: &s.cfg.pulse,
        format: &s.cfg.format,
    }
}

fn sweep(s: &Setup) -> Result<NliResult> {
    let (cx, cy) = s.coefficient_pair();
    psd_sweep(&cx, &cy, &s.evaluator(&s.pulse), s.cfg.grid.n_freq)
}

/// Runs one command; returns the exit code.
fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<i32> {
    let s = Setup::new(cli)?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Moments => {
            let m = moment_set(&s.format);
            let mut rows = moment_rows(&m);
            rows.extend(coefficient_rows("coefficient", &coefficients(&m)));
            emit(
                out,
                "moments.csv",
                &csv_text(&["kind", "name", "re", "im"], rows)?,
                stdout,
            )?;
        }
        Command::Coeffs => {
            let (cx, cy) = s.coefficient_pair();
            let mut rows = coefficient_rows("x", &cx);
            rows.extend(coefficient_rows("y", &cy));
            emit(
                out,
                "coefficients.csv",
                &csv_text(&["polarisation", "name", "re", "im"], rows)?,
                stdout,
            )?;
        }
        Command::Psd => {
            let r = sweep(&s)?;
            let rows =
                (0..r.freqs.len()).map(|j| vec![num(r.freqs[j]), num(r.s_x[j]), num(r.s_y[j])]);
            emit(
                out,
                "psd.csv",
                &csv_text(&["f_hz", "s_x", "s_y"], rows)?,
                stdout,
            )?;
            emit(
                out,
                "power.json",
                &json_text(&power_report(&s, &r))?,
                stdout,
            )?;
        }
        Command::Power => {
            let r = sweep(&s)?;
            emit(
                out,
                "power.json",
                &json_text(&power_report(&s, &r))?,
                stdout,
            )?;
        }
        Command::Validate { corrupt_xi1 } => {
            let ocfg = s.cfg.oracle_config(&s.link)?;
            // The oracle lines end half a line inside the band edge.
            let pulse = match (&s.cfg.pulse.shape, s.cfg.pulse.cutoff_ghz) {
                (PulseShape::Rectangular, None) => matched_pulse(&ocfg)?,
                _ => s.pulse.clone(),
            };
            let (mut cx, mut cy) = s.coefficient_pair();
            if *corrupt_xi1 {
                cx.xi1 *= 2.0;
                cy.xi1 *= 2.0;
            }
            let r =
                compare_with_coefficients(&s.format, &s.link, &pulse, &ocfg, &s.grid, &cx, &cy)?;
            emit(out, "validation.json", &json_text(&r)?, stdout)?;
            let sm = &r.summary;
            eprintln!(
                "validate: {} (max |z| = {:.2}, within 3σ: x {:.3} y {:.3}, power error: x {:.4} y {:.4})",
                if sm.pass { "pass" } else { "FAIL" },
                sm.max_abs_z,
                sm.x.fraction_within,
                sm.y.fraction_within,
                sm.x.power_rel_diff,
                sm.y.power_rel_diff
            );
            return Ok(if sm.pass { EXIT_OK } else { EXIT_FAIL });
        }
        Command::ChiConvergence { f_hz, l } => {
            let ls: Vec<usize> = match l {
                Some(l) if (1..=11).contains(l) => vec![*l],
                Some(l) => return Err(Error::ChiIndex(*l)),
                None => (1..=11).collect(),
            };
            let n_max = s.grid.points_per_dim;
            let grids: Vec<GridSpec> = [n_max / 4, n_max / 2, n_max]
                .into_iter()
                .filter(|&n| n >= 4)
                .map(|n| GridSpec::new(n, s.grid.rule))
                .collect::<Result<_>>()?;
            let mut rows = Vec::new();
            for &l in &ls {
                for (n, v) in convergence_report(l, *f_hz, &s.link, &s.pulse, &grids)? {
                    rows.push(vec![
                        l.to_string(),
                        "quadrature".into(),
                        n.to_string(),
                        num(*f_hz),
                        num(v.re),
                        num(v.im),
                    ]);
                }
                for &w in &s.cfg.oracle.lattice_w {
                    let mut ocfg = OracleConfig::new(w, s.link.symbol_rate)?;
                    ocfg.delta_mode = DeltaMode::Exact;
                    let i = (f_hz / ocfg.delta_f).round() as i64;
                    let v = scaled_q(l, i, &s.link, &s.pulse, &ocfg)?;
                    rows.push(vec![
                        l.to_string(),
                        "lattice".into(),
                        w.to_string(),
                        num(i as f64 * ocfg.delta_f),
                        num(v.re),
                        num(v.im),
                    ]);
                }
            }
            emit(
                out,
                "chi_convergence.csv",
                &csv_text(&["l", "method", "n", "f_hz", "re", "im"], rows)?,
                stdout,
            )?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_round_trip() {
        let c = LinkConfig {
            alpha_db_per_km: 0.2,
            beta2_ps2_per_km: -21.7,
            gamma_per_w_km: 1.3,
            span_km: 80.0,
            n_spans: 3,
            symbol_rate_gbd: 32.0,
        };
        let back = LinkConfig::from_si(&c.to_si().unwrap());
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
        assert!(rel(back.alpha_db_per_km, c.alpha_db_per_km) < 1e-12);
        assert!(rel(back.beta2_ps2_per_km, c.beta2_ps2_per_km) < 1e-12);
        assert!(rel(back.gamma_per_w_km, c.gamma_per_w_km) < 1e-12);
        assert!(rel(back.span_km, c.span_km) < 1e-12);
        assert!(rel(back.symbol_rate_gbd, c.symbol_rate_gbd) < 1e-12);
        assert_eq!(back.n_spans, c.n_spans);
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        let mut c = LinkConfig {
            alpha_db_per_km: 0.2,
            beta2_ps2_per_km: 0.0,
            gamma_per_w_km: 1.3,
            span_km: 80.0,
            n_spans: 1,
            symbol_rate_gbd: 32.0,
        };
        assert!(c.to_si().is_ok());
        c.gamma_per_w_km = 0.0;
        assert!(c.to_si().is_ok());
        c.gamma_per_w_km = -1.0;
        assert!(matches!(c.to_si(), Err(Error::Config(_))));
        c.gamma_per_w_km = 1.3;
        c.span_km = 0.0;
        assert!(matches!(c.to_si(), Err(Error::Config(_))));
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg: RunConfig = toml::from_str(
            "[link]\nalpha_db_per_km = 0.2\nbeta2_ps2_per_km = -21.7\ngamma_per_w_km = 1.3\n\
             span_km = 80\nn_spans = 1\nsymbol_rate_gbd = 32\n",
        )
        .unwrap();
        assert_eq!(cfg.format.builtin.as_deref(), Some("pm-qpsk"));
        assert_eq!(cfg.grid.n_freq, DEFAULT_N_FREQ);
        assert_eq!(cfg.oracle.w, 128);
        assert!(!cfg.oracle.include_bias);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let r: std::result::Result<RunConfig, _> = toml::from_str(
            "[link]\nalpha = 0.2\nbeta2_ps2_per_km = -21.7\ngamma_per_w_km = 1.3\n\
             span_km = 80\nn_spans = 1\nsymbol_rate_gbd = 32\n",
        );
        assert!(r.is_err());
    }
}
