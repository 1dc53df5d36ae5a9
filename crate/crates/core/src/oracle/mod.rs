//! Exact and Monte-Carlo evaluation of the discrete, periodic-signal model.
//!
//! A period of W symbols has a line spectrum on the lattice kΔf with
//! Δf = R_s/W. The pulse restricts the lines that carry power to the band
//! |k| ≤ W/2 − 1, which is the lattice used throughout this module.

pub mod dft;
pub mod field;
pub mod linalg;
pub mod montecarlo;
pub mod qsum;
pub mod report;
pub mod sixth;
pub mod symbolic;
pub mod tables;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::{Constellation4D, Point4D};
use crate::link::{LinkSpec, PulseSpectrum};

pub use dft::{dft_symbols, SpectralSequence};
pub use field::first_order_coeffs;
pub use montecarlo::{empirical_psd, EmpiricalPsd};
pub use qsum::discrete_q;
pub use report::{
    compare_model_oracle, compare_with_coefficients, matched_pulse, ValidationReport,
};
pub use sixth::{brute_force_sixth_order, partitioned_psd, CorrelationType, SixthOrderSums};
pub use tables::ContributionTables;

/// How a Kronecker delta over a linear form of lattice indices is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaMode {
    /// δ = 1 when the form is a multiple of W; this is what the time-domain
    /// sums produce and matches the brute-force expectation exactly.
    #[default]
    Modular,
    /// δ = 1 only when the form is zero, dropping the aliased lattice points.
    Exact,
}

impl DeltaMode {
    pub fn holds(self, value: i64, w: i64) -> bool {
        match self {
            Self::Modular => value.rem_euclid(w) == 0,
            Self::Exact => value == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Symbols per period, even.
    pub w: usize,
    /// Line spacing R_s/W in Hz.
    pub delta_f: f64,
    pub trials: usize,
    pub seed: u64,
    /// Keep the terms fully correlated with the transmitted symbol.
    pub include_bias: bool,
    /// Keep the term that only contributes at f = 0.
    pub include_dc: bool,
    pub delta_mode: DeltaMode,
}

impl OracleConfig {
    pub fn new(w: usize, symbol_rate: f64) -> Result<Self> {
        let c = Self {
            w,
            delta_f: symbol_rate / w as f64,
            trials: 1000,
            seed: 1,
            include_bias: true,
            include_dc: true,
            delta_mode: DeltaMode::Modular,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.w < 4 || !self.w.is_multiple_of(2) {
            return Err(Error::InvalidOracle(format!(
                "W must be even and at least 4, got {}",
                self.w
            )));
        }
        if self.trials < 1 {
            return Err(Error::InvalidOracle("trials must be at least 1".into()));
        }
        if !(self.delta_f > 0.0) || !self.delta_f.is_finite() {
            return Err(Error::InvalidOracle("delta_f must be positive".into()));
        }
        Ok(())
    }

    /// Symbol rate implied by W and Δf.
    pub fn symbol_rate(&self) -> f64 {
        self.w as f64 * self.delta_f
    }

    pub fn check_link(&self, link: &LinkSpec) -> Result<()> {
        self.validate()?;
        let rs = self.symbol_rate();
        if (rs - link.symbol_rate).abs() > 1e-9 * link.symbol_rate {
            return Err(Error::InvalidOracle(format!(
                "W·Δf = {rs} Hz differs from the link symbol rate {} Hz",
                link.symbol_rate
            )));
        }
        Ok(())
    }
}

/// The occupied lattice |k| ≤ h = W/2 − 1 and the pulse sampled on it.
#[derive(Debug, Clone)]
pub struct Band {
    pub w: usize,
    pub h: i64,
    pub delta_f: f64,
    pulse: Vec<f64>,
}

impl Band {
    pub fn new(cfg: &OracleConfig, pulse: &PulseSpectrum) -> Self {
        let h = cfg.w as i64 / 2 - 1;
        let pulse = (-h..=h)
            .map(|k| pulse.value(k as f64 * cfg.delta_f))
            .collect();
        Self {
            w: cfg.w,
            h,
            delta_f: cfg.delta_f,
            pulse,
        }
    }

    pub fn len(&self) -> usize {
        self.pulse.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulse.is_empty()
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        -self.h..=self.h
    }

    pub fn contains(&self, k: i64) -> bool {
        k.abs() <= self.h
    }

    /// P(kΔf) for k in the band.
    pub fn p(&self, k: i64) -> f64 {
        self.pulse[(k + self.h) as usize]
    }

    /// Position of line k in a DFT output of length W.
    pub fn dft_slot(&self, k: i64) -> usize {
        k.rem_euclid(self.w as i64) as usize
    }
}

/// η_{k,m,n} tabulated on the integer product (n − m)(m − k).
#[derive(Debug, Clone)]
pub struct EtaTable {
    offset: i64,
    values: Vec<Complex64>,
}

impl EtaTable {
    pub fn new(link: &LinkSpec, band: &Band) -> Self {
        let span = 2 * band.h;
        let offset = span * span;
        let c = 4.0 * std::f64::consts::PI.powi(2) * link.beta2 * band.delta_f * band.delta_f;
        let values = (-offset..=offset)
            .map(|p| link.eta_theta(c * p as f64))
            .collect();
        Self { offset, values }
    }

    /// η for lattice indices (k, m, n).
    #[inline]
    pub fn get(&self, k: i64, m: i64, n: i64) -> Complex64 {
        self.values[((n - m) * (m - k) + self.offset) as usize]
    }

    #[inline]
    pub fn by_product(&self, p: i64) -> Complex64 {
        self.values[(p + self.offset) as usize]
    }
}

/// A zero-mean 4D format with `n` random points and random probabilities,
/// for exercising identities that must hold for any format.
pub fn random_format(n: usize, seed: u64) -> Result<Constellation4D> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let raw: Vec<(Complex64, Complex64)> = (0..n).map(|_| (c(), c())).collect();
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
    let total: f64 = w.iter().sum();
    let probs: Vec<f64> = w.iter().map(|v| v / total).collect();
    let mx: Complex64 = raw.iter().zip(&probs).map(|(p, q)| p.0 * q).sum();
    let my: Complex64 = raw.iter().zip(&probs).map(|(p, q)| p.1 * q).sum();
    let points = raw
        .iter()
        .map(|(x, y)| Point4D::new(x - mx, y - my))
        .collect();
    Constellation4D::new(points, Some(probs))
}

/// (8/9)²γ²Δf³, the factor between E{|c_i|²} and the six-index sums.
pub fn psd_prefactor(link: &LinkSpec, cfg: &OracleConfig) -> f64 {
    crate::model::MANAKOV_FACTOR * link.gamma * link.gamma * cfg.delta_f.powi(3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(OracleConfig::new(7, 32e9).is_err());
        assert!(OracleConfig::new(2, 32e9).is_err());
        let c = OracleConfig::new(16, 32e9).unwrap();
        assert_eq!(c.delta_f, 2e9);
        let link = LinkSpec::from_engineering(0.2, -21.7, 1.3, 1, 80.0, 32.0).unwrap();
        assert!(c.check_link(&link).is_ok());
        let other = LinkSpec::from_engineering(0.2, -21.7, 1.3, 1, 80.0, 64.0).unwrap();
        assert!(c.check_link(&other).is_err());
    }

    #[test]
    fn eta_table_matches_kernel() {
        let link = LinkSpec::from_engineering(0.2, -21.7, 1.3, 3, 80.0, 32.0).unwrap();
        let cfg = OracleConfig::new(16, 32e9).unwrap();
        let band = Band::new(&cfg, &PulseSpectrum::rectangular(32e9));
        let t = EtaTable::new(&link, &band);
        let df = cfg.delta_f;
        for (k, m, n) in [(-7, 7, -7), (3, -2, 5), (0, 0, 0), (7, -7, 7)] {
            let direct =
                crate::link::eta(k as f64 * df, m as f64 * df, (k - m + n) as f64 * df, &link);
            assert!((t.get(k, m, n) - direct).norm() < 1e-12 * direct.norm());
        }
    }

    #[test]
    fn delta_modes() {
        assert!(DeltaMode::Modular.holds(8, 8));
        assert!(DeltaMode::Modular.holds(-16, 8));
        assert!(!DeltaMode::Exact.holds(8, 8));
        assert!(DeltaMode::Exact.holds(0, 8));
    }
}
