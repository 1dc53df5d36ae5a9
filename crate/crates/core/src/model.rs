//! NLI power spectral density and matched-filter NLI power.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formats::CoefficientSet;
use crate::link::PulseSpectrum;
use crate::quadrature::ChiEvaluator;

/// Largest tolerated |Im|/scale of the PSD before projection to the reals.
pub const IMAG_TOL: f64 = 1e-6;

/// Default number of frequency samples across the band.
pub const DEFAULT_N_FREQ: usize = 65;

/// (8/9)².
pub const MANAKOV_FACTOR: f64 = 64.0 / 81.0;

/// Sampled PSDs and the matched-filter NLI power.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NliResult {
    pub freqs: Vec<f64>,
    pub s_x: Vec<f64>,
    pub s_y: Vec<f64>,
    pub power_x: f64,
    pub power_y: f64,
}

/// The bracketed sum of the PSD before the (8/9)²γ² prefactor, together with
/// the scale used to judge its imaginary residual.
fn bracket(c: &CoefficientSet, ev: &ChiEvaluator, f: f64) -> Result<(Complex64, f64)> {
    let rs = ev.link().symbol_rate;
    let x = ev.chi_set(f)?;
    let re2 = |z: Complex64| Complex64::new(2.0 * z.re, 0.0);
    let r = |v: f64| Complex64::new(v, 0.0);
    let terms3 = [c.phi1 * x.get(1), c.phi2 * x.get(2), c.phi3 * x.get(3)];
    let terms2 = [
        c.psi1 * x.get(4),
        re2(c.psi2 * x.get(5) + c.psi3 * x.get(5).conj()),
        c.psi4 * x.get(6),
        re2(c.lambda1 * x.get(7) + c.lambda2 * x.get(7).conj()),
        c.lambda3 * x.get(8),
        re2(c.lambda4 * x.get(9) + c.lambda5 * x.get(9).conj()),
        c.lambda6 * x.get(10),
    ];
    let term1 = c.xi1 * x.get(11);
    let mut total = r(0.0);
    let mut scale = 0.0;
    for t in terms3 {
        total += t * rs.powi(3);
        scale += t.norm() * rs.powi(3);
    }
    for t in terms2 {
        total += t * rs * rs;
        scale += t.norm() * rs * rs;
    }
    total += term1 * rs;
    scale += term1.norm() * rs;
    Ok((total, scale))
}

/// S_x(f) for a format with coefficient set `coeffs`.
pub fn psd_x(f: f64, coeffs: &CoefficientSet, ev: &ChiEvaluator) -> Result<f64> {
    if f.abs() > ev.link().symbol_rate * (1.0 + 1e-12) {
        return Err(Error::FrequencyRange {
            f,
            limit: ev.link().symbol_rate,
        });
    }
    let (b, scale) = bracket(coeffs, ev, f)?;
    if b.im.abs() > IMAG_TOL * scale {
        return Err(Error::IntegrationAccuracy {
            f,
            imag: b.im,
            scale,
        });
    }
    let g = ev.link().gamma;
    Ok(MANAKOV_FACTOR * g * g * b.re)
}

/// S_y(f): the same expression evaluated with the coefficients of the
/// polarisation-swapped format.
pub fn psd_y(f: f64, swapped_coeffs: &CoefficientSet, ev: &ChiEvaluator) -> Result<f64> {
    psd_x(f, swapped_coeffs, ev)
}

/// Trapezoidal ∫S(f)|P(f)|²df for both polarisations.
pub fn nli_power(
    freqs: &[f64],
    s_x: &[f64],
    s_y: &[f64],
    pulse: &PulseSpectrum,
) -> Result<(f64, f64)> {
    if freqs.len() < 8 {
        return Err(Error::TooFewSamples {
            needed: 8,
            got: freqs.len(),
        });
    }
    if s_x.len() != freqs.len() || s_y.len() != freqs.len() {
        return Err(Error::InvalidGrid(
            "PSD and frequency lengths differ".into(),
        ));
    }
    if freqs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid("frequencies must increase".into()));
    }
    let b = pulse.support();
    let tol = 1e-9 * b;
    if freqs[0] > -b + tol || freqs[freqs.len() - 1] < b - tol {
        return Err(Error::InvalidGrid(format!(
            "frequency samples must cover [-{b}, {b}]"
        )));
    }
    let w: Vec<f64> = freqs.iter().map(|&f| pulse.value(f).powi(2)).collect();
    let trap = |s: &[f64]| {
        let mut acc = 0.0;
        for j in 1..freqs.len() {
            acc += 0.5 * (freqs[j] - freqs[j - 1]) * (s[j] * w[j] + s[j - 1] * w[j - 1]);
        }
        acc
    };
    Ok((trap(s_x), trap(s_y)))
}

/// `n_freq` uniformly spaced frequencies on the pulse support.
pub fn sweep_freqs(pulse: &PulseSpectrum, n_freq: usize) -> Vec<f64> {
    let b = pulse.support();
    (0..n_freq)
        .map(|j| -b + 2.0 * b * j as f64 / (n_freq - 1) as f64)
        .collect()
}

/// Evaluates both PSDs on a uniform sweep of the band and integrates them.
pub fn psd_sweep(
    coeffs_x: &CoefficientSet,
    coeffs_y: &CoefficientSet,
    ev: &ChiEvaluator,
    n_freq: usize,
) -> Result<NliResult> {
    if n_freq < 8 {
        return Err(Error::TooFewSamples {
            needed: 8,
            got: n_freq,
        });
    }
    let freqs = sweep_freqs(ev.pulse(), n_freq);
    let pairs: Vec<(f64, f64)> = freqs
        .par_iter()
        .map(|&f| Ok((psd_x(f, coeffs_x, ev)?, psd_y(f, coeffs_y, ev)?)))
        .collect::<Result<_>>()?;
    let (s_x, s_y): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let (power_x, power_y) = nli_power(&freqs, &s_x, &s_y, ev.pulse())?;
    Ok(NliResult {
        freqs,
        s_x,
        s_y,
        power_x,
        power_y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{coefficients, moment_set, Constellation4D};
    use crate::link::LinkSpec;
    use crate::quadrature::GridSpec;

    const RS: f64 = 32e9;

    fn ev(gamma: f64, n: usize) -> ChiEvaluator {
        let mut link = LinkSpec::from_engineering(0.2, -21.7, 1.3, 2, 80.0, 32.0).unwrap();
        link.gamma = gamma;
        ChiEvaluator::new(
            link,
            PulseSpectrum::rectangular(RS),
            GridSpec::midpoint(n).unwrap(),
        )
    }

    fn coeffs(c: &Constellation4D) -> (CoefficientSet, CoefficientSet) {
        (
            coefficients(&moment_set(c)),
            coefficients(&moment_set(&c.swap_polarizations())),
        )
    }

    #[test]
    fn zero_gamma_gives_zero() {
        let e = ev(0.0, 8);
        let (cx, cy) = coeffs(&Constellation4D::pm_16qam());
        let r = psd_sweep(&cx, &cy, &e, 9).unwrap();
        assert!(r.s_x.iter().chain(&r.s_y).all(|&v| v == 0.0));
        assert_eq!((r.power_x, r.power_y), (0.0, 0.0));
    }

    #[test]
    fn unit_psd_gives_unit_power() {
        let pulse = PulseSpectrum::rectangular(RS);
        let f = sweep_freqs(&pulse, 33);
        let ones = vec![1.0; f.len()];
        let (px, py) = nli_power(&f, &ones, &ones, &pulse).unwrap();
        assert!((px - 1.0).abs() < 1e-12 && (py - 1.0).abs() < 1e-12);
        let zeros = vec![0.0; f.len()];
        assert_eq!(nli_power(&f, &zeros, &zeros, &pulse).unwrap(), (0.0, 0.0));
        assert!(matches!(
            nli_power(&f[..7], &ones[..7], &ones[..7], &pulse),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn sixth_order_scaling() {
        let e = ev(1.3e-3, 8);
        let c = Constellation4D::qpsk_x_bpsk();
        let s = 1.7;
        let (cx, cy) = coeffs(&c);
        let (sx, sy) = coeffs(&c.scaled(Complex64::new(s, 0.0)));
        let a = psd_sweep(&cx, &cy, &e, 9).unwrap();
        let b = psd_sweep(&sx, &sy, &e, 9).unwrap();
        let k = s.powi(6);
        assert!((b.power_x - k * a.power_x).abs() < 1e-10 * b.power_x);
        assert!((b.power_y - k * a.power_y).abs() < 1e-10 * b.power_y);
    }

    #[test]
    fn even_and_symmetric_for_pm_format() {
        let e = ev(1.3e-3, 12);
        let (cx, cy) = coeffs(&Constellation4D::pm_qpsk());
        let r = psd_sweep(&cx, &cy, &e, 9).unwrap();
        let n = r.freqs.len();
        for j in 0..n {
            assert!((r.s_x[j] - r.s_x[n - 1 - j]).abs() <= 1e-9 * r.s_x[j].abs());
            assert_eq!(r.s_x[j], r.s_y[j]);
        }
        assert_eq!(r.power_x, r.power_y);
    }
}
