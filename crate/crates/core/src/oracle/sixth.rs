//! Exact sixth-order expectations of the line spectrum, E{ν…ν}, summed over
//! S_i × S_i with the pulse and efficiency weights.
//!
//! Two independent routes are provided. The brute-force route factorises the
//! time-domain correlation over every index pattern in {0..W−1}⁶ and takes a
//! six-dimensional DFT. The partitioned route expands each equality pattern
//! without singletons into Kronecker deltas by inclusion–exclusion.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use super::linalg::{in_span, parse_form, span_key, Form};
use super::tables::{set_partitions, Block, ContributionTables};
use super::{psd_prefactor, Band, DeltaMode, EtaTable, OracleConfig};
use crate::error::{Error, Result};
use crate::formats::{MomentSet, MomentSpec};
use crate::link::{LinkSpec, PulseSpectrum};

/// Largest W accepted by the exact routes.
pub const MAX_EXACT_W: usize = 10;

/// Sign of each index in the exponent of the time-domain sum:
/// ν_k ν*_m ν_n ν*_k′ ν_m′ ν*_n′.
pub const SIGNS: [i64; 6] = [1, -1, 1, -1, 1, -1];

/// Which polarisation each of the six factors belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CorrelationType {
    /// x x* x x* x x*
    S1,
    /// y y* x y* y x*
    S2,
    /// x x* x y* y x*
    T,
    /// y y* x x* x x*
    U,
}

impl CorrelationType {
    pub const ALL: [Self; 4] = [Self::S1, Self::S2, Self::T, Self::U];

    /// true for the y polarisation, per position.
    fn is_y(self) -> [bool; 6] {
        match self {
            Self::S1 => [false; 6],
            Self::S2 => [true, true, false, true, true, false],
            Self::T => [false, false, false, true, true, false],
            Self::U => [true, true, false, false, false, false],
        }
    }

    /// Exponents of E{Π_{p∈block} a_p} for the positions in `block`
    /// (bitmask of 0..6).
    pub fn block_spec(self, block: u32) -> MomentSpec {
        let y = self.is_y();
        let mut e = [0u8; 4];
        for p in 0..6 {
            if block >> p & 1 == 1 {
                let conj = p % 2 == 1;
                e[2 * y[p] as usize + conj as usize] += 1;
            }
        }
        MomentSpec::new(e[0], e[1], e[2], e[3]).expect("at most six factors")
    }

    pub fn block_moment(self, m: &MomentSet, block: u32) -> Complex64 {
        m.get(self.block_spec(block))
    }
}

/// The weighted sums Σ 𝒫 η η′* E{…} for one i, split by correlation type.
/// `s` collects S1 + S2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SixthOrderSums {
    pub s: Complex64,
    pub t: Complex64,
    pub u: Complex64,
}

impl SixthOrderSums {
    pub fn total(&self) -> Complex64 {
        self.s + self.t + self.u
    }

    /// E{|c_i|²}.
    pub fn power(&self, link: &LinkSpec, cfg: &OracleConfig) -> f64 {
        psd_prefactor(link, cfg) * self.total().re
    }

    fn from_types(v: [Complex64; 4]) -> Self {
        Self {
            s: v[0] + v[1],
            t: v[2],
            u: v[3],
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.s - other.s)
            .norm()
            .max((self.t - other.t).norm())
            .max((self.u - other.u).norm())
    }

    pub fn scale(&self) -> f64 {
        self.s.norm().max(self.t.norm()).max(self.u.norm())
    }
}

/// Shared lattice data: band, pulse samples and η.
struct Lattice {
    band: Band,
    eta: EtaTable,
    delta_f: f64,
}

impl Lattice {
    fn new(link: &LinkSpec, pulse: &PulseSpectrum, cfg: &OracleConfig) -> Result<Self> {
        cfg.check_link(link)?;
        let band = Band::new(cfg, pulse);
        let eta = EtaTable::new(link, &band);
        Ok(Self {
            band,
            eta,
            delta_f: cfg.delta_f,
        })
    }

    /// Calls `f(tuple, weight)` for every (k,m,n),(k′,m′,n′) ∈ S_i × S_i in
    /// the band, with weight 𝒫 η_{k,m,n} η*_{k′,m′,n′}.
    fn for_each(&self, i: i64, mut f: impl FnMut([i64; 6], Complex64)) {
        let h = self.band.h;
        let mut triples = Vec::new();
        for k in -h..=h {
            for m in -h..=h {
                let n = i - k + m;
                if n.abs() <= h {
                    let p = self.band.p(k) * self.band.p(m) * self.band.p(n);
                    if p != 0.0 {
                        triples.push(([k, m, n], self.eta.get(k, m, n) * p));
                    }
                }
            }
        }
        for (a, wa) in &triples {
            for (b, wb) in &triples {
                f([a[0], a[1], a[2], b[0], b[1], b[2]], wa * wb.conj());
            }
        }
    }
}

fn check_w(cfg: &OracleConfig) -> Result<()> {
    if cfg.w > MAX_EXACT_W {
        return Err(Error::TooLarge {
            w: cfg.w,
            limit: MAX_EXACT_W,
        });
    }
    Ok(())
}

/// The time-domain correlations of all four types, transformed to the
/// frequency lattice: G(ω) = Σ_𝒊 E{a…a} e^{−j2π ω·𝒊/W}.
pub struct BruteForce {
    w: usize,
    spectra: [Vec<Complex64>; 4],
}

impl BruteForce {
    pub fn new(moments: &MomentSet, cfg: &OracleConfig) -> Result<Self> {
        cfg.validate()?;
        check_w(cfg)?;
        let w = cfg.w;
        // Moment product for every equality pattern, keyed by its restricted
        // growth string read as a base-6 number.
        let mut by_pattern: [Vec<Complex64>; 4] =
            std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); 6usize.pow(6)]);
        for part in set_partitions(6) {
            let mut labels = [0usize; 6];
            for (l, b) in part.iter().enumerate() {
                for (p, label) in labels.iter_mut().enumerate() {
                    if b >> p & 1 == 1 {
                        *label = l;
                    }
                }
            }
            let code = labels.iter().fold(0, |c, &l| c * 6 + l);
            for (t, ty) in CorrelationType::ALL.iter().enumerate() {
                by_pattern[t][code] = part.iter().map(|&b| ty.block_moment(moments, b)).product();
            }
        }
        let total = w.pow(6);
        let mut spectra: [Vec<Complex64>; 4] =
            std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); total]);
        let mut idx = [0usize; 6];
        for flat in 0..total {
            let mut rem = flat;
            for p in (0..6).rev() {
                idx[p] = rem % w;
                rem /= w;
            }
            let mut labels = [0usize; 6];
            let mut next = 0;
            for p in 0..6 {
                labels[p] = match (0..p).find(|&q| idx[q] == idx[p]) {
                    Some(q) => labels[q],
                    None => {
                        next += 1;
                        next - 1
                    }
                };
            }
            let code = labels.iter().fold(0, |c, &l| c * 6 + l);
            for (s, pattern) in spectra.iter_mut().zip(&by_pattern) {
                s[flat] = pattern[code];
            }
        }
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(w);
        let mut line = vec![Complex64::new(0.0, 0.0); w];
        for s in spectra.iter_mut() {
            for axis in 0..6 {
                let stride = w.pow(5 - axis as u32);
                for start in 0..total {
                    if !(start / stride).is_multiple_of(w) {
                        continue;
                    }
                    for (j, v) in line.iter_mut().enumerate() {
                        *v = s[start + j * stride];
                    }
                    fft.process(&mut line);
                    for (j, v) in line.iter().enumerate() {
                        s[start + j * stride] = *v;
                    }
                }
            }
        }
        Ok(Self { w, spectra })
    }

    /// Σ_𝒊 E{a…a} e^{−j2π ω·𝒊/W} for the frequencies of `tuple`.
    fn spectrum(&self, t: usize, tuple: &[i64; 6]) -> Complex64 {
        let w = self.w as i64;
        let flat = tuple
            .iter()
            .zip(SIGNS)
            .fold(0i64, |acc, (&v, s)| acc * w + (s * v).rem_euclid(w));
        self.spectra[t][flat as usize]
    }

    fn sums(&self, lat: &Lattice, i: i64) -> SixthOrderSums {
        let d3 = lat.delta_f.powi(3);
        let mut acc = [Complex64::new(0.0, 0.0); 4];
        lat.for_each(i, |tuple, wgt| {
            for (t, a) in acc.iter_mut().enumerate() {
                *a += wgt * self.spectrum(t, &tuple);
            }
        });
        SixthOrderSums::from_types(acc.map(|a| a * d3))
    }
}

/// Classification of a delta product by the receiver-side meaning of the
/// lattice it selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TermClass {
    /// Forces k = m, n = m or their primed counterparts.
    Bias,
    /// Forces i = 0 on both index triples.
    Dc,
    Regular,
}

pub fn classify_term(forms: &[Form]) -> TermClass {
    let key = span_key(forms);
    let bias = ["k-m", "n-m", "k'-m'", "n'-m'"]
        .iter()
        .any(|s| in_span(&key, &parse_form(s).unwrap()));
    if bias {
        TermClass::Bias
    } else if in_span(&key, &parse_form("k-m+n").unwrap()) {
        TermClass::Dc
    } else {
        TermClass::Regular
    }
}

/// One term of the inclusion–exclusion expansion of an equality pattern.
#[derive(Debug, Clone)]
pub struct ExpansionTerm {
    /// Blocks of the equality pattern (bitmasks over positions).
    pub pattern: Vec<Block>,
    /// Möbius weight of the grouping of those blocks.
    pub mu: i64,
    /// One delta per group; each contributes a factor W.
    pub forms: Vec<Form>,
}

impl ExpansionTerm {
    pub fn moment(&self, ty: CorrelationType, m: &MomentSet) -> Complex64 {
        self.pattern
            .iter()
            .map(|&b| ty.block_moment(m, b as u32))
            .product()
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Expands Σ over distinct block values into products of full sums:
/// Σ_{v_b distinct} Π_b e^{−jφ_b v_b} = Σ_ρ μ(ρ) Π_{G∈ρ} W δ(Σ_{b∈G} φ_b).
pub fn expansion_terms(tables: &ContributionTables) -> Vec<ExpansionTerm> {
    let mut out = Vec::new();
    for pattern in tables.partitions() {
        for grouping in set_partitions(pattern.len()) {
            let mut mu = 1;
            let mut forms = Vec::new();
            for g in &grouping {
                let size = g.count_ones() as usize;
                mu *= if size % 2 == 1 { 1 } else { -1 } * factorial(size - 1);
                let mut positions = 0u8;
                for (j, &b) in pattern.iter().enumerate() {
                    if g >> j & 1 == 1 {
                        positions |= b;
                    }
                }
                let form: Form =
                    std::array::from_fn(|p| if positions >> p & 1 == 1 { SIGNS[p] } else { 0 });
                forms.push(form);
            }
            out.push(ExpansionTerm {
                pattern: pattern.clone(),
                mu,
                forms,
            });
        }
    }
    out
}

/// The expansion collected per correlation type: a coefficient for each
/// distinct list of delta forms.
pub struct Partitioned {
    w: i64,
    mode: DeltaMode,
    by_type: [Vec<(Vec<Form>, Complex64)>; 4],
}

impl Partitioned {
    pub fn new(
        moments: &MomentSet,
        cfg: &OracleConfig,
        tables: &ContributionTables,
        include_bias: bool,
        include_dc: bool,
    ) -> Result<Self> {
        cfg.validate()?;
        let terms = expansion_terms(tables);
        let w = cfg.w as i64;
        let by_type = CorrelationType::ALL.map(|ty| {
            let mut acc: BTreeMap<Vec<Form>, Complex64> = BTreeMap::new();
            for term in &terms {
                let class = classify_term(&term.forms);
                if (class == TermClass::Bias && !include_bias)
                    || (class == TermClass::Dc && !include_dc)
                {
                    continue;
                }
                let m = term.moment(ty, moments);
                if m == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let weight = term.mu as f64 * (w as f64).powi(term.forms.len() as i32);
                let mut key = term.forms.clone();
                key.sort();
                *acc.entry(key).or_default() += m * weight;
            }
            acc.into_iter().filter(|(_, c)| c.norm() != 0.0).collect()
        });
        Ok(Self {
            w,
            mode: cfg.delta_mode,
            by_type,
        })
    }

    fn value(&self, t: usize, tuple: &[i64; 6]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (forms, c) in &self.by_type[t] {
            let hit = forms.iter().all(|f| {
                let v: i64 = f.iter().zip(tuple).map(|(a, b)| a * b).sum();
                self.mode.holds(v, self.w)
            });
            if hit {
                acc += c;
            }
        }
        acc
    }

    fn sums(&self, lat: &Lattice, i: i64) -> SixthOrderSums {
        let d3 = lat.delta_f.powi(3);
        let mut acc = [Complex64::new(0.0, 0.0); 4];
        lat.for_each(i, |tuple, wgt| {
            for (t, a) in acc.iter_mut().enumerate() {
                *a += wgt * self.value(t, &tuple);
            }
        });
        SixthOrderSums::from_types(acc.map(|a| a * d3))
    }
}

/// Exact sums for every i in `bins` by the brute-force route.
pub fn brute_force_all(
    moments: &MomentSet,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    cfg: &OracleConfig,
    bins: &[i64],
) -> Result<Vec<SixthOrderSums>> {
    let lat = Lattice::new(link, pulse, cfg)?;
    let bf = BruteForce::new(moments, cfg)?;
    Ok(bins.iter().map(|&i| bf.sums(&lat, i)).collect())
}

/// Exact sums for every i in `bins` by the partitioned route.
pub fn partitioned_all(
    moments: &MomentSet,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    cfg: &OracleConfig,
    tables: &ContributionTables,
    bins: &[i64],
) -> Result<Vec<SixthOrderSums>> {
    check_w(cfg)?;
    let lat = Lattice::new(link, pulse, cfg)?;
    let p = Partitioned::new(moments, cfg, tables, cfg.include_bias, cfg.include_dc)?;
    Ok(bins.iter().map(|&i| p.sums(&lat, i)).collect())
}

/// The exact S, T and U sums at line i, from the time-domain correlation.
pub fn brute_force_sixth_order(
    moments: &MomentSet,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    cfg: &OracleConfig,
    i: i64,
) -> Result<SixthOrderSums> {
    Ok(brute_force_all(moments, link, pulse, cfg, &[i])?[0])
}

/// The same sums from the subset tables and their delta expansions.
pub fn partitioned_psd(
    moments: &MomentSet,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    cfg: &OracleConfig,
    i: i64,
    tables: &ContributionTables,
    include_bias: bool,
) -> Result<SixthOrderSums> {
    let cfg = OracleConfig {
        include_bias,
        ..cfg.clone()
    };
    Ok(partitioned_all(moments, link, pulse, &cfg, tables, &[i])?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{moment_set, Constellation4D};

    fn setup(w: usize) -> (LinkSpec, PulseSpectrum, OracleConfig) {
        let link = LinkSpec::from_engineering(0.2, -21.7, 1.3, 2, 80.0, 32.0).unwrap();
        let cfg = OracleConfig::new(w, link.symbol_rate).unwrap();
        (link, PulseSpectrum::triangle(link.symbol_rate), cfg)
    }

    #[test]
    fn expansion_has_expected_size() {
        let t = ContributionTables::new();
        let terms = expansion_terms(&t);
        // 15 three-block patterns with 5 groupings, 25 two-block with 2, one with 1.
        assert_eq!(terms.len(), 15 * 5 + 25 * 2 + 1);
        // Möbius weights of the full merge: 2 for three blocks, −1 for two.
        let full: Vec<i64> = terms
            .iter()
            .filter(|t| t.forms.len() == 1)
            .map(|t| t.mu)
            .collect();
        assert_eq!(full.iter().filter(|&&m| m == 2).count(), 15);
        assert_eq!(full.iter().filter(|&&m| m == -1).count(), 25);
    }

    #[test]
    fn refuses_large_w() {
        let (link, pulse, _) = setup(12);
        let cfg = OracleConfig::new(12, link.symbol_rate).unwrap();
        let m = moment_set(&Constellation4D::pm_qpsk());
        assert!(matches!(
            brute_force_sixth_order(&m, &link, &pulse, &cfg, 0),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn singleton_patterns_vanish_for_zero_mean() {
        let m = moment_set(&Constellation4D::pm_16qam());
        for ty in CorrelationType::ALL {
            for p in 0..6 {
                assert!(ty.block_moment(&m, 1 << p).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn exhaustive_sequences_match_brute_force() {
        // W = 4 PM-QPSK: average |c_i|² over all 16⁴ symbol sequences.
        let (link, pulse, cfg) = setup(4);
        let c = Constellation4D::pm_qpsk();
        let pts = c.points().to_vec();
        let mut acc = [0.0; 7];
        let n = pts.len();
        for code in 0..n.pow(4) {
            let seq: Vec<_> = (0..4).map(|j| pts[code / n.pow(j) % n]).collect();
            let spec = crate::oracle::dft_symbols(&seq, cfg.delta_f);
            let co = crate::oracle::first_order_coeffs(&spec, &link, &pulse, &cfg);
            for (j, i) in (-3..=3).enumerate() {
                acc[j] += co.get(i).0.norm_sqr();
            }
        }
        let bins: Vec<i64> = (-3..=3).collect();
        let exact = brute_force_all(&moment_set(&c), &link, &pulse, &cfg, &bins).unwrap();
        let scale = acc.iter().fold(0.0f64, |a, &b| a.max(b)) / n.pow(4) as f64;
        for (j, e) in exact.iter().enumerate() {
            let mc = acc[j] / n.pow(4) as f64;
            assert!(
                (e.power(&link, &cfg) - mc).abs() < 1e-10 * scale,
                "i={}",
                bins[j]
            );
        }
    }

    #[test]
    fn routes_agree_small() {
        let (link, pulse, cfg) = setup(4);
        let m = moment_set(&Constellation4D::qpsk_x_bpsk());
        let t = ContributionTables::new();
        let bins: Vec<i64> = (-3..=3).collect();
        let a = brute_force_all(&m, &link, &pulse, &cfg, &bins).unwrap();
        let b = partitioned_all(&m, &link, &pulse, &cfg, &t, &bins).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.max_abs_diff(y) <= 1e-12 * x.scale().max(1e-300));
        }
    }
}
