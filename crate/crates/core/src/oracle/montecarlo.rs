//! Monte-Carlo estimate of E{|c_i|²} over random symbol periods.
//!
//! Each trial draws W iid 4D symbols from its own ChaCha stream, so results
//! depend only on the seed and the trial count. Trials are grouped into
//! contiguous batches that run in parallel and are reduced in order.
//!
//! Bias terms are the k = m and n = m parts of c_i. Their mean over the
//! symbols is a fixed multiple of the transmitted line (X_i, Y_i); with bias
//! excluded that multiple is subtracted from every realisation. Because η
//! depends on (n − m)(m − k) only, all bias terms share η at product zero.
//! With the f = 0 term excluded the deterministic mean E{c_0} is subtracted
//! as well.

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::field::{accumulate, field_prefactor, weighted_lines};
use super::{dft_symbols, Band, EtaTable, OracleConfig};
use crate::error::{Error, Result};
use crate::formats::{Constellation4D, MomentSpec, Point4D};
use crate::link::{LinkSpec, PulseSpectrum};

/// Upper bound on the number of batches used for the power error.
pub const MAX_BATCHES: usize = 50;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Estimates of E{|c_i|²} on the band lines and of the matched-filter power.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalPsd {
    pub bins: Vec<i64>,
    pub freqs: Vec<f64>,
    pub mean_x: Vec<f64>,
    pub se_x: Vec<f64>,
    pub mean_y: Vec<f64>,
    pub se_y: Vec<f64>,
    /// Σ_i E{|c_i|²} P(iΔf)², the NLI variance after the matched filter.
    pub power_x: f64,
    pub power_se_x: f64,
    pub power_y: f64,
    pub power_se_y: f64,
    pub trials: usize,
    pub include_bias: bool,
    pub include_dc: bool,
}

/// What is subtracted from the raw c_i of every realisation.
struct Removal {
    /// c_x −= ux X_i + vx Y_i and c_y −= uy Y_i + vy X_i.
    bias: Option<[Complex64; 4]>,
    /// Mean of (c_x, c_y) at i = 0.
    dc: Option<(Complex64, Complex64)>,
}

impl Removal {
    fn new(format: &Constellation4D, band: &Band, eta: &EtaTable, cfg: &OracleConfig) -> Self {
        let m = |p, q, r, s| format.moment(MomentSpec::raw(p, q, r, s));
        let h = band.h;
        let wdf = cfg.w as f64 * cfg.delta_f;
        let bias = (!cfg.include_bias).then(|| {
            // E{|X_k|²} = ΔfW P_k² E{|a_x|²}, summed over the band.
            let s: f64 = band.indices().map(|k| band.p(k).powi(2)).sum::<f64>() * wdf;
            let e0 = eta.by_product(0) * s;
            let (sx, sy) = (m(1, 1, 0, 0), m(0, 0, 1, 1));
            [
                e0 * (sx * 2.0 + sy),
                e0 * m(1, 0, 0, 1),
                e0 * (sy * 2.0 + sx),
                e0 * m(0, 1, 1, 0),
            ]
        });
        let dc = (!cfg.include_dc).then(|| {
            let mut g = ZERO;
            for k in -h..=h {
                for mm in -h..=h {
                    let n = mm - k;
                    if n.abs() <= h {
                        g += eta.get(k, mm, n) * (band.p(k) * band.p(mm) * band.p(n));
                    }
                }
            }
            let g = g * cfg.delta_f.powf(1.5) * cfg.w as f64;
            (
                g * (m(2, 1, 0, 0) + m(1, 0, 1, 1)),
                g * (m(0, 0, 2, 1) + m(1, 1, 0, 1)),
            )
        });
        Self { bias, dc }
    }

    fn apply(&self, i: i64, x: Complex64, y: Complex64, cx: &mut Complex64, cy: &mut Complex64) {
        if let Some([ux, vx, uy, vy]) = self.bias {
            *cx -= ux * x + vx * y;
            *cy -= uy * y + vy * x;
        }
        if let (Some((mx, my)), 0) = (self.dc, i) {
            *cx -= mx;
            *cy -= my;
        }
    }
}

/// Sums of |c|² and |c|⁴ per bin and polarisation.
struct Batch {
    trials: usize,
    s2: Vec<[f64; 2]>,
    s4: Vec<[f64; 2]>,
}

fn draw_period(
    rng: &mut ChaCha8Rng,
    pts: &[Point4D],
    dist: &WeightedIndex<f64>,
    w: usize,
) -> Vec<Point4D> {
    (0..w).map(|_| pts[dist.sample(rng)]).collect()
}

/// Runs the trials in `range` and returns their sums.
#[allow(clippy::too_many_arguments)]
fn run_batch(
    range: std::ops::Range<usize>,
    format: &Constellation4D,
    dist: &WeightedIndex<f64>,
    band: &Band,
    eta: &EtaTable,
    removal: &Removal,
    pre: Complex64,
    cfg: &OracleConfig,
) -> Batch {
    let h = band.h;
    let nb = band.len();
    let mut s2 = vec![[0.0; 2]; nb];
    let mut s4 = vec![[0.0; 2]; nb];
    let mut cx = vec![ZERO; nb];
    let mut cy = vec![ZERO; nb];
    let trials = range.len();
    for t in range {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(t as u64);
        let sym = draw_period(&mut rng, format.points(), dist, cfg.w);
        let spec = dft_symbols(&sym, cfg.delta_f);
        let (xs, ys) = weighted_lines(&spec, band);
        cx.iter_mut().chain(cy.iter_mut()).for_each(|v| *v = ZERO);
        accumulate(&xs, &ys, eta, h, -h, h, &mut cx, &mut cy);
        for j in 0..nb {
            removal.apply(j as i64 - h, xs[j], ys[j], &mut cx[j], &mut cy[j]);
            for (p, c) in [cx[j], cy[j]].into_iter().enumerate() {
                let a = (c * pre).norm_sqr();
                s2[j][p] += a;
                s4[j][p] += a * a;
            }
        }
    }
    Batch { trials, s2, s4 }
}

/// Monte-Carlo E{|c_i|²} for |i| ≤ W/2 − 1 with standard errors.
pub fn empirical_psd(
    format: &Constellation4D,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    cfg: &OracleConfig,
) -> Result<EmpiricalPsd> {
    cfg.check_link(link)?;
    let band = Band::new(cfg, pulse);
    let eta = EtaTable::new(link, &band);
    let pre = field_prefactor(link, cfg);
    let removal = Removal::new(format, &band, &eta, cfg);
    let dist =
        WeightedIndex::new(format.probs()).map_err(|e| Error::InvalidOracle(e.to_string()))?;
    let n = cfg.trials;
    let n_batches = n.min(MAX_BATCHES);
    let batches: Vec<Batch> = (0..n_batches)
        .into_par_iter()
        .map(|b| {
            let range = b * n / n_batches..(b + 1) * n / n_batches;
            run_batch(range, format, &dist, &band, &eta, &removal, pre, cfg)
        })
        .collect();

    let nb = band.len();
    let nf = n as f64;
    let mut mean = [vec![0.0; nb], vec![0.0; nb]];
    let mut se = [vec![0.0; nb], vec![0.0; nb]];
    for j in 0..nb {
        for p in 0..2 {
            let e2 = batches.iter().map(|b| b.s2[j][p]).sum::<f64>() / nf;
            let e4 = batches.iter().map(|b| b.s4[j][p]).sum::<f64>() / nf;
            mean[p][j] = e2;
            se[p][j] = if n > 1 {
                ((e4 - e2 * e2).max(0.0) / (nf - 1.0)).sqrt()
            } else {
                0.0
            };
        }
    }

    let bins: Vec<i64> = band.indices().collect();
    let p2: Vec<f64> = bins.iter().map(|&k| band.p(k).powi(2)).collect();
    let mut power = [0.0; 2];
    let mut power_se = [0.0; 2];
    for p in 0..2 {
        power[p] = (0..nb).map(|j| mean[p][j] * p2[j]).sum();
        if n_batches > 1 {
            // Batches can differ in size by one trial; weight by their size.
            let est: Vec<f64> = batches
                .iter()
                .map(|b| (0..nb).map(|j| b.s2[j][p] * p2[j]).sum::<f64>() / b.trials as f64)
                .collect();
            let var: f64 = est
                .iter()
                .zip(&batches)
                .map(|(e, b)| b.trials as f64 * (e - power[p]).powi(2))
                .sum::<f64>()
                / nf;
            power_se[p] = (var / (n_batches as f64 - 1.0)).sqrt();
        }
    }
    let [mean_x, mean_y] = mean;
    let [se_x, se_y] = se;
    Ok(EmpiricalPsd {
        freqs: bins.iter().map(|&i| i as f64 * cfg.delta_f).collect(),
        bins,
        mean_x,
        se_x,
        mean_y,
        se_y,
        power_x: power[0],
        power_se_x: power_se[0],
        power_y: power[1],
        power_se_y: power_se[1],
        trials: n,
        include_bias: cfg.include_bias,
        include_dc: cfg.include_dc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{moment_set, MomentSet};
    use crate::oracle::random_format;
    use crate::oracle::sixth::{brute_force_all, partitioned_all};
    use crate::oracle::ContributionTables;

    fn setup(w: usize, trials: usize) -> (LinkSpec, PulseSpectrum, OracleConfig) {
        let link = LinkSpec::from_engineering(0.2, -21.7, 1.3, 1, 80.0, 32.0).unwrap();
        let mut cfg = OracleConfig::new(w, link.symbol_rate).unwrap();
        cfg.trials = trials;
        (link, PulseSpectrum::rectangular(link.symbol_rate), cfg)
    }

    #[test]
    fn zero_gamma_gives_zero() {
        let (mut link, pulse, mut cfg) = setup(8, 20);
        link.gamma = 0.0;
        for bias in [true, false] {
            cfg.include_bias = bias;
            let e = empirical_psd(&Constellation4D::pm_qpsk(), &link, &pulse, &cfg).unwrap();
            assert!(e
                .mean_x
                .iter()
                .chain(&e.se_x)
                .chain(&e.mean_y)
                .all(|&v| v == 0.0));
            assert_eq!((e.power_x, e.power_se_x), (0.0, 0.0));
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let (link, pulse, cfg) = setup(8, 60);
        let c = Constellation4D::pm_16qam();
        let a = empirical_psd(&c, &link, &pulse, &cfg).unwrap();
        let b = empirical_psd(&c, &link, &pulse, &cfg).unwrap();
        assert_eq!(a, b);
    }

    fn max_z(e: &EmpiricalPsd, ex: &[f64], ey: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..ex.len() {
            worst = worst.max(((e.mean_x[j] - ex[j]) / e.se_x[j]).abs());
            worst = worst.max(((e.mean_y[j] - ey[j]) / e.se_y[j]).abs());
        }
        worst
    }

    fn exact(
        m: &MomentSet,
        link: &LinkSpec,
        pulse: &PulseSpectrum,
        cfg: &OracleConfig,
        bins: &[i64],
    ) -> Vec<f64> {
        let t = ContributionTables::new();
        let sums = if cfg.include_bias && cfg.include_dc {
            brute_force_all(m, link, pulse, cfg, bins).unwrap()
        } else {
            partitioned_all(m, link, pulse, cfg, &t, bins).unwrap()
        };
        sums.iter().map(|s| s.power(link, cfg)).collect()
    }

    #[test]
    fn converges_to_exact_value() {
        let (link, pulse, mut cfg) = setup(8, 4000);
        let c = Constellation4D::qpsk_x_bpsk();
        let bins: Vec<i64> = (-3..=3).collect();
        let m = moment_set(&c);
        let ex = exact(&m, &link, &pulse, &cfg, &bins);
        let ey = exact(&m.swapped(), &link, &pulse, &cfg, &bins);
        for seed in [1, 2] {
            cfg.seed = seed;
            let e = empirical_psd(&c, &link, &pulse, &cfg).unwrap();
            let z = max_z(&e, &ex, &ey);
            assert!(z < 4.5, "seed {seed}: max |z| = {z}");
        }
    }

    /// Subtracting the mean field reproduces the analytic removal of the
    /// bias and f = 0 terms from the exact expansion.
    #[test]
    fn removal_matches_analytic_subspace_removal() {
        for (w, c) in [
            (6, random_format(8, 3).unwrap()),
            (8, Constellation4D::pm_16qam()),
        ] {
            let (link, pulse, mut cfg) = setup(w, 20000);
            cfg.include_bias = false;
            cfg.include_dc = false;
            let e = empirical_psd(&c, &link, &pulse, &cfg).unwrap();
            let m = moment_set(&c);
            let ex = exact(&m, &link, &pulse, &cfg, &e.bins);
            let ey = exact(&m.swapped(), &link, &pulse, &cfg, &e.bins);
            let z = max_z(&e, &ex, &ey);
            assert!(z < 4.5, "W={w}: max |z| = {z}");
        }
    }

    #[test]
    fn bias_removal_lowers_the_estimate() {
        let (link, pulse, mut cfg) = setup(8, 500);
        let c = Constellation4D::pm_qpsk();
        let with = empirical_psd(&c, &link, &pulse, &cfg).unwrap();
        cfg.include_bias = false;
        let without = empirical_psd(&c, &link, &pulse, &cfg).unwrap();
        assert!(without.power_x < 0.5 * with.power_x);
    }
}
