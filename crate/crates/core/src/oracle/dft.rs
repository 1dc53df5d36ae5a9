//! Line spectrum of one period of symbols.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::formats::Point4D;

/// ν_{x,k} and ν_{y,k} for k = 0..W−1; negative lines live at k + W.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSequence {
    pub nu_x: Vec<Complex64>,
    pub nu_y: Vec<Complex64>,
}

impl SpectralSequence {
    pub fn len(&self) -> usize {
        self.nu_x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nu_x.is_empty()
    }

    /// Line k for any integer k, using the W-periodicity of the DFT.
    pub fn at(&self, k: i64) -> (Complex64, Complex64) {
        let j = k.rem_euclid(self.len() as i64) as usize;
        (self.nu_x[j], self.nu_y[j])
    }
}

/// ν_k = √Δf Σ_n a_n e^{−j2πkn/W} for both polarisations.
pub fn dft_symbols(symbols: &[Point4D], delta_f: f64) -> SpectralSequence {
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(symbols.len().max(1));
    let s = delta_f.sqrt();
    let run = |pick: fn(&Point4D) -> Complex64| {
        let mut buf: Vec<Complex64> = symbols.iter().map(pick).collect();
        if !buf.is_empty() {
            fft.process(&mut buf);
        }
        buf.iter_mut().for_each(|v| *v *= s);
        buf
    };
    let nu_x = run(|p| p.ax);
    let nu_y = run(|p| p.ay);
    SpectralSequence { nu_x, nu_y }
}
