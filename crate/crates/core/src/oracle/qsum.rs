//! Lattice sums Q = Σ_{S_i×S_i} 𝒫 η_{k,m,n} η*_{k′,m′,n′} D for a delta product D.

use num_complex::Complex64;

use super::linalg::{rref, Form};
use super::tables::{ContributionTables, DeltaProduct};
use super::{Band, DeltaMode, EtaTable, OracleConfig};
use crate::error::{Error, Result};
use crate::link::{LinkSpec, PulseSpectrum};

const S_UNPRIMED: Form = [1, -1, 1, 0, 0, 0];
const S_PRIMED: Form = [0, 0, 0, 1, -1, 1];

/// Band, pulse and η shared by repeated Q evaluations.
pub struct QLattice {
    band: Band,
    eta: EtaTable,
    w: i64,
    mode: DeltaMode,
}

impl QLattice {
    pub fn new(link: &LinkSpec, pulse: &PulseSpectrum, cfg: &OracleConfig) -> Result<Self> {
        cfg.check_link(link)?;
        let band = Band::new(cfg, pulse);
        let eta = EtaTable::new(link, &band);
        Ok(Self {
            band,
            eta,
            w: cfg.w as i64,
            mode: cfg.delta_mode,
        })
    }

    pub fn band(&self) -> &Band {
        &self.band
    }

    fn weight(&self, k: i64, m: i64, n: i64) -> Complex64 {
        self.eta.get(k, m, n) * (self.band.p(k) * self.band.p(m) * self.band.p(n))
    }

    /// Σ over the lattice points selected by `delta` within S_i × S_i.
    pub fn q(&self, delta: &DeltaProduct, i: i64) -> Complex64 {
        match self.mode {
            DeltaMode::Exact => self.q_exact(&delta.forms, &vec![0; delta.forms.len()], i),
            DeltaMode::Modular => {
                // A modular delta is a sum of exact ones over the multiples of W
                // its form can reach inside the band.
                let reach: Vec<i64> = delta
                    .forms
                    .iter()
                    .map(|f| f.iter().map(|c| c.abs()).sum::<i64>() * self.band.h / self.w)
                    .collect();
                let mut total = Complex64::new(0.0, 0.0);
                let mut p: Vec<i64> = reach.iter().map(|r| -r).collect();
                loop {
                    let rhs: Vec<i64> = p.iter().map(|v| v * self.w).collect();
                    total += self.q_exact(&delta.forms, &rhs, i);
                    let mut j = 0;
                    loop {
                        if j == p.len() {
                            return total;
                        }
                        if p[j] < reach[j] {
                            p[j] += 1;
                            break;
                        }
                        p[j] = -reach[j];
                        j += 1;
                    }
                }
            }
        }
    }

    /// Σ over {forms·x = rhs} ∩ S_i × S_i.
    fn q_exact(&self, forms: &[Form], rhs: &[i64], i: i64) -> Complex64 {
        let mut rows: Vec<Vec<i64>> = forms
            .iter()
            .zip(rhs)
            .map(|(f, &b)| f.iter().copied().chain([b]).collect())
            .collect();
        rows.push(S_UNPRIMED.iter().copied().chain([i]).collect());
        rows.push(S_PRIMED.iter().copied().chain([i]).collect());
        let (red, pivots) = rref(&rows);
        if pivots.contains(&6) {
            return Complex64::new(0.0, 0.0);
        }
        let mixes = red
            .iter()
            .any(|r| r[..3].iter().any(|&c| c != 0) && r[3..6].iter().any(|&c| c != 0));
        if mixes {
            let mut acc = Complex64::new(0.0, 0.0);
            self.solve(&red, &pivots, &[0, 1, 2, 3, 4, 5], |x| {
                acc += self.weight(x[0], x[1], x[2]) * self.weight(x[3], x[4], x[5]).conj();
            });
            acc
        } else {
            let (mut a, mut b) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            self.solve(&red, &pivots, &[0, 1, 2], |x| {
                a += self.weight(x[0], x[1], x[2])
            });
            self.solve(&red, &pivots, &[3, 4, 5], |x| {
                b += self.weight(x[3], x[4], x[5])
            });
            a * b.conj()
        }
    }

    /// Enumerates the band points of `vars` satisfying the reduced rows that
    /// involve only those variables.
    fn solve(
        &self,
        red: &[Vec<i64>],
        pivots: &[usize],
        vars: &[usize],
        mut f: impl FnMut(&[i64; 6]),
    ) {
        let h = self.band.h;
        let rows: Vec<(usize, &Vec<i64>)> = red
            .iter()
            .zip(pivots)
            .filter(|(_, p)| vars.contains(p))
            .map(|(r, &p)| (p, r))
            .collect();
        let free: Vec<usize> = vars
            .iter()
            .copied()
            .filter(|v| !rows.iter().any(|(p, _)| p == v))
            .collect();
        let mut x = [0i64; 6];
        for &v in &free {
            x[v] = -h;
        }
        'outer: loop {
            let mut ok = true;
            for (p, r) in &rows {
                let mut b = r[6];
                for &v in &free {
                    b -= r[v] * x[v];
                }
                if b % r[*p] != 0 {
                    ok = false;
                    break;
                }
                let val = b / r[*p];
                if val.abs() > h {
                    ok = false;
                    break;
                }
                x[*p] = val;
            }
            if ok {
                f(&x);
            }
            for &v in &free {
                if x[v] < h {
                    x[v] += 1;
                    continue 'outer;
                }
                x[v] = -h;
            }
            break;
        }
    }
}

/// Number of free lattice dimensions of the sum for a delta product.
pub fn dimension(delta: &DeltaProduct) -> usize {
    let mut rows: Vec<Vec<i64>> = delta.forms.iter().map(|f| f.to_vec()).collect();
    rows.push(S_UNPRIMED.to_vec());
    rows.push(S_PRIMED.to_vec());
    6 - rref(&rows).0.len()
}

/// Q_l at line i for l = 1..11, using the leader of the corresponding set.
pub fn discrete_q(
    l: usize,
    i: i64,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    cfg: &OracleConfig,
) -> Result<Complex64> {
    if !(1..=11).contains(&l) {
        return Err(Error::ChiIndex(l));
    }
    let tables = ContributionTables::new();
    Ok(QLattice::new(link, pulse, cfg)?.q(tables.q_leader(l), i))
}

/// Δf^d·Q_l, the lattice sum scaled to approximate the continuum integral.
pub fn scaled_q(
    l: usize,
    i: i64,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    cfg: &OracleConfig,
) -> Result<Complex64> {
    let tables = ContributionTables::new();
    let q = discrete_q(l, i, link, pulse, cfg)?;
    let d = dimension(tables.q_leader(l));
    Ok(q * cfg.delta_f.powi(d as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(w: usize, mode: DeltaMode) -> (LinkSpec, PulseSpectrum, OracleConfig) {
        let link = LinkSpec::from_engineering(0.2, -21.7, 1.3, 3, 80.0, 32.0).unwrap();
        let mut cfg = OracleConfig::new(w, link.symbol_rate).unwrap();
        cfg.delta_mode = mode;
        (link, PulseSpectrum::triangle(link.symbol_rate), cfg)
    }

    /// Direct sum over S_i × S_i with every delta tested explicitly.
    fn naive(
        delta: &DeltaProduct,
        i: i64,
        link: &LinkSpec,
        pulse: &PulseSpectrum,
        cfg: &OracleConfig,
    ) -> Complex64 {
        let h = cfg.w as i64 / 2 - 1;
        let df = cfg.delta_f;
        let w = |k: i64, m: i64, n: i64| {
            crate::link::eta(k as f64 * df, m as f64 * df, (k - m + n) as f64 * df, link)
                * (pulse.value(k as f64 * df)
                    * pulse.value(m as f64 * df)
                    * pulse.value(n as f64 * df))
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for k in -h..=h {
            for m in -h..=h {
                let n = i - k + m;
                if n.abs() > h {
                    continue;
                }
                for kp in -h..=h {
                    for mp in -h..=h {
                        let np = i - kp + mp;
                        if np.abs() > h {
                            continue;
                        }
                        let x = [k, m, n, kp, mp, np];
                        let hit = delta.forms.iter().all(|f| {
                            let v: i64 = f.iter().zip(&x).map(|(a, b)| a * b).sum();
                            cfg.delta_mode.holds(v, cfg.w as i64)
                        });
                        if hit {
                            acc += w(k, m, n) * w(kp, mp, np).conj();
                        }
                    }
                }
            }
        }
        acc
    }

    #[test]
    fn matches_naive_sum_for_every_delta_element() {
        let t = ContributionTables::new();
        for mode in [DeltaMode::Exact, DeltaMode::Modular] {
            let (link, pulse, cfg) = setup(8, mode);
            let lat = QLattice::new(&link, &pulse, &cfg).unwrap();
            for d in &t.d_sets {
                for e in &d.elements {
                    for i in [-4, 0, 3] {
                        let a = lat.q(e, i);
                        let b = naive(e, i, &link, &pulse, &cfg);
                        assert!(
                            (a - b).norm() <= 1e-12 * b.norm().max(1e-30),
                            "{mode:?} D{} i={i}",
                            d.label
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn zero_pulse_gives_zero() {
        let (link, _, cfg) = setup(16, DeltaMode::Exact);
        let pulse = PulseSpectrum::tabulated(link.symbol_rate, &[(0.0, 0.0), (16e9, 0.0)]).unwrap();
        for l in 1..=11 {
            assert_eq!(discrete_q(l, 0, &link, &pulse, &cfg).unwrap().norm(), 0.0);
        }
    }

    #[test]
    fn dimensions_of_leaders() {
        let t = ContributionTables::new();
        let d: Vec<usize> = (1..=11).map(|l| dimension(t.q_leader(l))).collect();
        assert_eq!(d, vec![2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn index_checks() {
        let (link, pulse, cfg) = setup(8, DeltaMode::Exact);
        assert!(matches!(
            discrete_q(0, 0, &link, &pulse, &cfg),
            Err(Error::ChiIndex(0))
        ));
        assert!(matches!(
            discrete_q(12, 0, &link, &pulse, &cfg),
            Err(Error::ChiIndex(12))
        ));
    }
}
