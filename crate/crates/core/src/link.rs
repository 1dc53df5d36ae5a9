//! Fibre link parameters, pulse spectra and the four-wave-mixing kernel.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Link parameters in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkSpec {
    /// Power attenuation, 1/m.
    pub alpha: f64,
    /// Group-velocity dispersion, s²/m.
    pub beta2: f64,
    /// Nonlinearity, 1/(W·m).
    pub gamma: f64,
    pub n_spans: u32,
    /// Span length, m.
    pub span_length: f64,
    /// Symbol rate, Hz.
    pub symbol_rate: f64,
}

impl LinkSpec {
    pub fn new(
        alpha: f64,
        beta2: f64,
        gamma: f64,
        n_spans: u32,
        span_length: f64,
        symbol_rate: f64,
    ) -> Result<Self> {
        let l = Self {
            alpha,
            beta2,
            gamma,
            n_spans,
            span_length,
            symbol_rate,
        };
        l.validate()?;
        Ok(l)
    }

    /// Builds a link from engineering units (dB/km, ps²/km, 1/(W·km), km, GBd).
    pub fn from_engineering(
        alpha_db_per_km: f64,
        beta2_ps2_per_km: f64,
        gamma_per_w_km: f64,
        n_spans: u32,
        span_km: f64,
        symbol_rate_gbd: f64,
    ) -> Result<Self> {
        Self::new(
            db_per_km_to_neper_per_m(alpha_db_per_km),
            beta2_ps2_per_km * 1e-27,
            gamma_per_w_km * 1e-3,
            n_spans,
            span_km * 1e3,
            symbol_rate_gbd * 1e9,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidLink(m.to_string()));
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return bad("alpha must be positive");
        }
        if !self.beta2.is_finite() {
            return bad("beta2 must be finite");
        }
        if !(self.gamma >= 0.0) || !self.gamma.is_finite() {
            return bad("gamma must be nonnegative");
        }
        if self.n_spans < 1 {
            return bad("n_spans must be at least 1");
        }
        if !(self.span_length > 0.0) || !self.span_length.is_finite() {
            return bad("span length must be positive");
        }
        if !(self.symbol_rate > 0.0) || !self.symbol_rate.is_finite() {
            return bad("symbol rate must be positive");
        }
        Ok(())
    }

    /// N_s(1 − e^{−αL_s})/α, the kernel value at zero phase mismatch.
    pub fn eta_max(&self) -> f64 {
        self.n_spans as f64 * (-(-self.alpha * self.span_length).exp_m1()) / self.alpha
    }

    /// θ = 4π²β₂(f − f1)(f2 − f1), in rad/m.
    pub fn theta(&self, f1: f64, f2: f64, f: f64) -> f64 {
        4.0 * PI * PI * self.beta2 * (f - f1) * (f2 - f1)
    }

    /// The kernel as a function of θ alone.
    pub fn eta_theta(&self, theta: f64) -> Complex64 {
        let a = self.alpha;
        let l = self.span_length;
        if theta == 0.0 {
            return Complex64::new(self.eta_max(), 0.0);
        }
        let num = Complex64::new(1.0, 0.0) - (Complex64::new(-a, theta) * l).exp();
        let single = num / Complex64::new(a, -theta);
        // Power is restored at each amplifier while the dispersive phase keeps
        // accumulating, so span l carries an extra e^{+j(l-1)θL}.
        single * coherence_factor(-theta * l, self.n_spans)
    }
}

pub fn db_per_km_to_neper_per_m(db: f64) -> f64 {
    db * 10f64.ln() / 10.0 * 1e-3
}

pub fn neper_per_m_to_db_per_km(a: f64) -> f64 {
    a * 1e3 * 10.0 / 10f64.ln()
}

/// Four-wave-mixing efficiency η(f1, f2, f) in metres.
pub fn eta(f1: f64, f2: f64, f: f64, link: &LinkSpec) -> Complex64 {
    link.eta_theta(link.theta(f1, f2, f))
}

/// Phased-array sum Σ_{l=1}^{N} e^{−j(l−1)θL}.
pub fn coherence_factor(theta_l: f64, n_spans: u32) -> Complex64 {
    let n = n_spans as f64;
    let one = Complex64::new(1.0, 0.0);
    let den = one - Complex64::new(0.0, -theta_l).exp();
    if den.norm() < 1e-12 {
        return Complex64::new(n, 0.0);
    }
    (one - Complex64::new(0.0, -theta_l * n).exp()) / den
}

/// Real, even, band-limited pulse spectrum P(f).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PulseSpectrum {
    /// 1/√R_s for |f| ≤ cutoff; cutoff is R_s/2 for the unit-energy pulse.
    Rectangular { symbol_rate: f64, cutoff: f64 },
    /// Linear interpolation between samples sorted by frequency, mirrored to
    /// negative frequencies.
    Tabulated {
        symbol_rate: f64,
        freqs: Vec<f64>,
        values: Vec<f64>,
    },
}

impl PulseSpectrum {
    pub fn rectangular(symbol_rate: f64) -> Self {
        Self::Rectangular {
            symbol_rate,
            cutoff: symbol_rate / 2.0,
        }
    }

    /// Rectangular spectrum of height 1/√R_s truncated to |f| ≤ cutoff ≤ R_s/2.
    pub fn rectangular_cutoff(symbol_rate: f64, cutoff: f64) -> Result<Self> {
        if !(cutoff > 0.0) || cutoff > symbol_rate / 2.0 {
            return Err(Error::InvalidPulse(format!(
                "cutoff {cutoff} must lie in (0, R_s/2]"
            )));
        }
        Ok(Self::Rectangular {
            symbol_rate,
            cutoff,
        })
    }

    /// Tabulated spectrum from (f, value) samples given on [0, R_s/2] or on
    /// the whole band [−R_s/2, R_s/2].
    pub fn tabulated(symbol_rate: f64, samples: &[(f64, f64)]) -> Result<Self> {
        let half = symbol_rate / 2.0;
        let mut s: Vec<(f64, f64)> = samples.to_vec();
        if s.iter().any(|(f, v)| !f.is_finite() || !v.is_finite()) {
            return Err(Error::InvalidPulse("non-finite sample".into()));
        }
        s.sort_by(|a, b| a.0.total_cmp(&b.0));
        if s.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidPulse("duplicate frequency".into()));
        }
        let tol = 1e-9 * half;
        if s.first().is_none_or(|p| p.0 < -tol) {
            // full band given: check symmetry and keep the nonnegative half
            let lo = s.first().map(|p| p.0).unwrap_or(0.0);
            let hi = s.last().map(|p| p.0).unwrap_or(0.0);
            if lo > -half + tol || hi < half - tol {
                return Err(Error::InvalidPulse(
                    "samples must cover the band [-R_s/2, R_s/2]".into(),
                ));
            }
            let full = Self::Tabulated {
                symbol_rate,
                freqs: s.iter().map(|p| p.0).collect(),
                values: s.iter().map(|p| p.1).collect(),
            };
            for &(f, v) in &s {
                let m = interp_full(&full, -f);
                if (m - v).abs() > 1e-12 * v.abs().max(1e-300) {
                    return Err(Error::InvalidPulse("spectrum must be even in f".into()));
                }
            }
            s.retain(|p| p.0 >= 0.0);
            if s.first().is_none_or(|p| p.0 > 0.0) {
                let v0 = interp_full(&full, 0.0);
                s.insert(0, (0.0, v0));
            }
        }
        if s.len() < 2 || s[0].0 > tol || s.last().unwrap().0 < half - tol {
            return Err(Error::InvalidPulse(
                "samples must cover the band [0, R_s/2]".into(),
            ));
        }
        Ok(Self::Tabulated {
            symbol_rate,
            freqs: s.iter().map(|p| p.0).collect(),
            values: s.iter().map(|p| p.1).collect(),
        })
    }

    /// Triangular spectrum with unit energy.
    pub fn triangle(symbol_rate: f64) -> Self {
        let half = symbol_rate / 2.0;
        // ∫ (A(1 − |f|/half))² df = 2A²half/3 = 1
        let a = (3.0 / (2.0 * half)).sqrt();
        Self::tabulated(symbol_rate, &[(0.0, a), (half, 0.0)]).expect("valid triangle")
    }

    pub fn symbol_rate(&self) -> f64 {
        match self {
            Self::Rectangular { symbol_rate, .. } | Self::Tabulated { symbol_rate, .. } => {
                *symbol_rate
            }
        }
    }

    /// Half-width of the support.
    pub fn support(&self) -> f64 {
        match self {
            Self::Rectangular { cutoff, .. } => *cutoff,
            Self::Tabulated { symbol_rate, .. } => symbol_rate / 2.0,
        }
    }

    pub fn value(&self, f: f64) -> f64 {
        match self {
            Self::Rectangular {
                symbol_rate,
                cutoff,
            } => {
                if f.abs() <= *cutoff {
                    1.0 / symbol_rate.sqrt()
                } else {
                    0.0
                }
            }
            Self::Tabulated {
                symbol_rate,
                freqs,
                values,
            } => {
                let a = f.abs();
                if a > symbol_rate / 2.0 {
                    return 0.0;
                }
                let j = freqs.partition_point(|&x| x <= a);
                if j == 0 {
                    return values[0];
                }
                if j >= freqs.len() {
                    return *values.last().unwrap();
                }
                let (f0, f1) = (freqs[j - 1], freqs[j]);
                let t = (a - f0) / (f1 - f0);
                values[j - 1] + t * (values[j] - values[j - 1])
            }
        }
    }

    /// ∫|P(f)|² df.
    pub fn energy(&self) -> f64 {
        match self {
            Self::Rectangular {
                symbol_rate,
                cutoff,
            } => 2.0 * cutoff / symbol_rate,
            Self::Tabulated { freqs, values, .. } => {
                // exact for piecewise-linear P
                let mut e = 0.0;
                for j in 1..freqs.len() {
                    let h = freqs[j] - freqs[j - 1];
                    let (a, b) = (values[j - 1], values[j]);
                    e += h * (a * a + a * b + b * b) / 3.0;
                }
                2.0 * e
            }
        }
    }

    /// Points in (0, support) where P or its derivative is discontinuous.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Self::Rectangular { .. } => Vec::new(),
            Self::Tabulated { freqs, .. } => {
                let s = self.support();
                freqs
                    .iter()
                    .copied()
                    .filter(|&f| f > 0.0 && f < s)
                    .collect()
            }
        }
    }
}

fn interp_full(p: &PulseSpectrum, f: f64) -> f64 {
    match p {
        PulseSpectrum::Tabulated { freqs, values, .. } => {
            let j = freqs.partition_point(|&x| x <= f);
            if j == 0 {
                return values[0];
            }
            if j >= freqs.len() {
                return *values.last().unwrap();
            }
            let t = (f - freqs[j - 1]) / (freqs[j] - freqs[j - 1]);
            values[j - 1] + t * (values[j] - values[j - 1])
        }
        PulseSpectrum::Rectangular { .. } => p.value(f),
    }
}

pub fn pulse_value(p: &PulseSpectrum, f: f64) -> f64 {
    p.value(f)
}
