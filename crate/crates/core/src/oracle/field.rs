//! First-order perturbation coefficients c_i of one periodic realisation.

use num_complex::Complex64;

use super::{Band, EtaTable, OracleConfig, SpectralSequence};
use crate::link::{LinkSpec, PulseSpectrum};

/// c_i for i = −i_max..=i_max in both polarisations.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderCoeffs {
    pub i_max: i64,
    pub c_x: Vec<Complex64>,
    pub c_y: Vec<Complex64>,
}

impl FirstOrderCoeffs {
    pub fn get(&self, i: i64) -> (Complex64, Complex64) {
        if i.abs() > self.i_max {
            return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        }
        let j = (i + self.i_max) as usize;
        (self.c_x[j], self.c_y[j])
    }
}

/// Pulse-weighted lines X_k = P(kΔf)ν_{x,k}, Y_k = P(kΔf)ν_{y,k} over the band.
pub(crate) fn weighted_lines(
    spec: &SpectralSequence,
    band: &Band,
) -> (Vec<Complex64>, Vec<Complex64>) {
    band.indices()
        .map(|k| {
            let (x, y) = spec.at(k);
            let p = band.p(k);
            (x * p, y * p)
        })
        .unzip()
}

/// Adds Σ_{S_i} η X_k X*_m X_n + η Y_k Y*_m X_n (and the y mirror) into
/// `out_x`, `out_y` for i in i_lo..=i_hi; out[0] holds i_lo.
#[allow(clippy::too_many_arguments)]
pub(crate) fn accumulate(
    xs: &[Complex64],
    ys: &[Complex64],
    eta: &EtaTable,
    h: i64,
    i_lo: i64,
    i_hi: i64,
    out_x: &mut [Complex64],
    out_y: &mut [Complex64],
) {
    for k in -h..=h {
        let (xk, yk) = (xs[(k + h) as usize], ys[(k + h) as usize]);
        for m in -h..=h {
            let (xm, ym) = (xs[(m + h) as usize], ys[(m + h) as usize]);
            let s = xk * xm.conj() + yk * ym.conj();
            if s == Complex64::new(0.0, 0.0) {
                continue;
            }
            let a = m - k;
            // n = i − k + m must lie in the band and i in [i_lo, i_hi].
            let n_lo = (-h).max(i_lo - k + m);
            let n_hi = h.min(i_hi - k + m);
            for n in n_lo..=n_hi {
                let t = s * eta.by_product((n - m) * a);
                let j = (k - m + n - i_lo) as usize;
                let idx = (n + h) as usize;
                out_x[j] += t * xs[idx];
                out_y[j] += t * ys[idx];
            }
        }
    }
}

/// −j(8/9)γΔf^{3/2}.
pub(crate) fn field_prefactor(link: &LinkSpec, cfg: &OracleConfig) -> Complex64 {
    Complex64::new(0.0, -8.0 / 9.0 * link.gamma * cfg.delta_f.powf(1.5))
}

/// The c_i of one realisation, over every i the band can reach (|i| ≤ 3h).
pub fn first_order_coeffs(
    spec: &SpectralSequence,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    cfg: &OracleConfig,
) -> FirstOrderCoeffs {
    let band = Band::new(cfg, pulse);
    let eta = EtaTable::new(link, &band);
    let (xs, ys) = weighted_lines(spec, &band);
    let i_max = 3 * band.h;
    let n = (2 * i_max + 1) as usize;
    let mut c_x = vec![Complex64::new(0.0, 0.0); n];
    let mut c_y = vec![Complex64::new(0.0, 0.0); n];
    accumulate(&xs, &ys, &eta, band.h, -i_max, i_max, &mut c_x, &mut c_y);
    let pre = field_prefactor(link, cfg);
    c_x.iter_mut().chain(c_y.iter_mut()).for_each(|v| *v *= pre);
    FirstOrderCoeffs { i_max, c_x, c_y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::Point4D;
    use crate::link::eta;
    use crate::oracle::dft_symbols;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(w: usize) -> (LinkSpec, PulseSpectrum, OracleConfig) {
        let link = LinkSpec::from_engineering(0.2, -21.7, 1.3, 2, 80.0, 32.0).unwrap();
        let cfg = OracleConfig::new(w, link.symbol_rate).unwrap();
        (link, PulseSpectrum::triangle(link.symbol_rate), cfg)
    }

    /// Straight transcription: six nested loops over k, m, n and the
    /// polarisation pair, η from the kernel itself, no table and no pruning.
    fn reference(
        spec: &SpectralSequence,
        link: &LinkSpec,
        pulse: &PulseSpectrum,
        cfg: &OracleConfig,
        i: i64,
    ) -> (Complex64, Complex64) {
        let h = cfg.w as i64 / 2 - 1;
        let df = cfg.delta_f;
        let p = |k: i64| pulse.value(k as f64 * df);
        let nu = |k: i64, pol: usize| {
            let (x, y) = spec.at(k);
            [x, y][pol]
        };
        let mut out = [Complex64::new(0.0, 0.0); 2];
        for (target, o) in out.iter_mut().enumerate() {
            for k in -h..=h {
                for m in -h..=h {
                    for n in -h..=h {
                        if k - m + n != i {
                            continue;
                        }
                        let e = eta(k as f64 * df, m as f64 * df, i as f64 * df, link);
                        for pol in 0..2 {
                            *o += p(k)
                                * p(m)
                                * p(n)
                                * nu(k, pol)
                                * nu(m, pol).conj()
                                * nu(n, target)
                                * e;
                        }
                    }
                }
            }
            *o *= Complex64::new(0.0, -8.0 / 9.0 * link.gamma * df.powf(1.5));
        }
        (out[0], out[1])
    }

    #[test]
    fn zero_gamma_gives_zero() {
        let (mut link, pulse, cfg) = setup(8);
        link.gamma = 0.0;
        let sym = vec![Point4D::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)); 8];
        let c = first_order_coeffs(&dft_symbols(&sym, cfg.delta_f), &link, &pulse, &cfg);
        assert!(c.c_x.iter().chain(&c.c_y).all(|v| v.norm() == 0.0));
    }

    #[test]
    fn single_tone_at_dc() {
        let (link, pulse, cfg) = setup(8);
        let mut spec = SpectralSequence {
            nu_x: vec![Complex64::new(0.0, 0.0); 8],
            nu_y: vec![Complex64::new(0.0, 0.0); 8],
        };
        let v = Complex64::new(0.6, -0.8);
        spec.nu_x[0] = v;
        let c = first_order_coeffs(&spec, &link, &pulse, &cfg);
        let p0 = pulse.value(0.0);
        let expect = Complex64::new(0.0, -8.0 / 9.0 * link.gamma * cfg.delta_f.powf(1.5))
            * p0.powi(3)
            * v
            * v.conj()
            * v
            * link.eta_theta(0.0);
        for i in -c.i_max..=c.i_max {
            let (x, y) = c.get(i);
            if i == 0 {
                assert!((x - expect).norm() < 1e-12 * expect.norm());
            } else {
                assert_eq!(x.norm(), 0.0);
            }
            assert_eq!(y.norm(), 0.0);
        }
    }

    #[test]
    fn matches_six_loop_reference() {
        let (link, pulse, cfg) = setup(8);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sym: Vec<Point4D> = (0..8)
            .map(|_| {
                Point4D::new(
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        let spec = dft_symbols(&sym, cfg.delta_f);
        let c = first_order_coeffs(&spec, &link, &pulse, &cfg);
        let scale = c.c_x.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for i in -c.i_max..=c.i_max {
            let (rx, ry) = reference(&spec, &link, &pulse, &cfg, i);
            let (x, y) = c.get(i);
            assert!((x - rx).norm() < 1e-12 * scale, "i={i}");
            assert!((y - ry).norm() < 1e-12 * scale, "i={i}");
        }
    }
}
