//! Correlation coefficients read off the delta expansion.
//!
//! Every term of the inclusion–exclusion expansion is a moment product times
//! a delta product. Dropping the bias and f = 0 terms, each remaining delta
//! product selects the same lattice as one element of a set D_l, so the
//! coefficient of Q_l is the sum of the moment products landing in D_l.
//! S-type terms (S1, S2) give the A_l, the cross-polarisation T terms give
//! the B_l; the U terms are the conjugates of the T terms and need no
//! separate bookkeeping.

use num_complex::Complex64;
use serde::Serialize;

use super::linalg::span_key;
use super::sixth::{classify_term, expansion_terms, CorrelationType, TermClass};
use super::tables::{Block, ContributionTables};
use crate::formats::{MomentSet, RawCoefficients};

/// A term whose delta product matches none of the D sets.
#[derive(Debug, Clone, Serialize)]
pub struct Unclassified {
    pub correlation: CorrelationType,
    pub pattern: Vec<Block>,
    pub mu: i64,
    pub value: Complex64,
}

/// Per-set sums of the expansion; index 0 holds D1.
#[derive(Debug, Clone, Serialize)]
pub struct Extraction {
    pub a: [Complex64; 14],
    pub b: [Complex64; 14],
    /// Moment products of the U terms, for the conjugacy check.
    pub u: [Complex64; 14],
    /// Number of W factors carried by the terms of each set.
    pub groups: [Option<usize>; 14],
    pub unclassified: Vec<Unclassified>,
    /// Sets whose terms disagree on the number of W factors.
    pub mixed_groups: Vec<usize>,
}

pub fn extract(m: &MomentSet, tables: &ContributionTables) -> Extraction {
    let zero = Complex64::new(0.0, 0.0);
    let mut ex = Extraction {
        a: [zero; 14],
        b: [zero; 14],
        u: [zero; 14],
        groups: [None; 14],
        unclassified: Vec::new(),
        mixed_groups: Vec::new(),
    };
    for term in expansion_terms(tables) {
        if classify_term(&term.forms) != TermClass::Regular {
            continue;
        }
        let label = tables.classify(&span_key(&term.forms));
        for ty in CorrelationType::ALL {
            let v = term.moment(ty, m) * term.mu as f64;
            let Some(l) = label else {
                if v.norm() != 0.0 {
                    ex.unclassified.push(Unclassified {
                        correlation: ty,
                        pattern: term.pattern.clone(),
                        mu: term.mu,
                        value: v,
                    });
                }
                continue;
            };
            let j = l - 1;
            match ty {
                CorrelationType::S1 | CorrelationType::S2 => ex.a[j] += v,
                CorrelationType::T => ex.b[j] += v,
                CorrelationType::U => ex.u[j] += v,
            }
        }
        if let Some(l) = label {
            let g = term.forms.len();
            match ex.groups[l - 1] {
                None => ex.groups[l - 1] = Some(g),
                Some(h) if h != g && !ex.mixed_groups.contains(&l) => {
                    ex.mixed_groups.push(l);
                }
                _ => {}
            }
        }
    }
    ex
}

fn re2(z: Complex64) -> Complex64 {
    Complex64::new(2.0 * z.re, 0.0)
}

impl Extraction {
    fn a(&self, l: usize) -> Complex64 {
        self.a[l - 1]
    }

    fn b(&self, l: usize) -> Complex64 {
        self.b[l - 1]
    }

    /// The fourteen coefficients in [`crate::formats::CoefficientSet::NAMES`] order.
    pub fn coefficients(&self) -> RawCoefficients {
        let sym = |l: usize| self.a(l) + re2(self.b(l));
        [
            sym(1),
            sym(2),
            sym(3),
            sym(4),
            self.a(5) + self.b(5),
            self.b(6),
            sym(7),
            self.a(8) + self.b(8),
            self.b(13),
            sym(9),
            self.a(10) + self.b(10),
            self.b(12),
            sym(11),
            sym(14),
        ]
    }

    /// Largest violation of the structure the coefficient mapping relies on:
    /// A of a conjugate-paired set equals the conjugate of its partner's,
    /// self-conjugate sets have real A, and U sums to the conjugate of T
    /// across each conjugate pair.
    pub fn structure_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (p, q) in [(5, 6), (8, 13), (10, 12)] {
            worst = worst.max((self.a(p) - self.a(q).conj()).norm());
            worst = worst.max((self.u[p - 1] - self.b(q).conj()).norm());
            worst = worst.max((self.u[q - 1] - self.b(p).conj()).norm());
        }
        for l in [1, 2, 3, 4, 7, 9, 11, 14] {
            worst = worst.max(self.a(l).im.abs());
            worst = worst.max((self.u[l - 1] - self.b(l).conj()).norm());
        }
        worst
    }
}

/// The bracket of the PSD on the line grid: the model's sum with Q_l in place
/// of χ_l and W in place of R_s. E{|c_i|²} is (8/9)²γ²Δf⁶ times this value.
pub fn lattice_bracket(c: &RawCoefficients, q: &[Complex64; 11], w: f64) -> Complex64 {
    let pair = |a: Complex64, b: Complex64, x: Complex64| re2(a * x + b * x.conj());
    (c[0] * q[0] + c[1] * q[1] + c[2] * q[2]) * w.powi(3)
        + (c[3] * q[3]
            + pair(c[4], c[5], q[4])
            + c[6] * q[5]
            + pair(c[7], c[8], q[6])
            + c[9] * q[7]
            + pair(c[10], c[11], q[8])
            + c[12] * q[9])
            * w
            * w
        + c[13] * q[10] * w
}

/// Coefficients for a moment set, derived from the expansion.
pub fn derived_coefficients(m: &MomentSet) -> RawCoefficients {
    extract(m, &ContributionTables::new()).coefficients()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{moment_set, Constellation4D};

    #[test]
    fn every_regular_term_is_classified() {
        let t = ContributionTables::new();
        for c in [
            Constellation4D::pm_qpsk(),
            Constellation4D::pm_16qam(),
            Constellation4D::qpsk_x_bpsk(),
        ] {
            let ex = extract(&moment_set(&c), &t);
            assert!(ex.unclassified.is_empty(), "{:?}", ex.unclassified);
            assert!(ex.mixed_groups.is_empty());
            assert!(ex.structure_defect() < 1e-12);
        }
    }

    #[test]
    fn groups_per_set() {
        let ex = extract(
            &moment_set(&Constellation4D::pm_16qam()),
            &ContributionTables::new(),
        );
        let g: Vec<usize> = ex.groups.iter().map(|g| g.unwrap()).collect();
        assert_eq!(g, vec![3, 3, 3, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1]);
    }

    /// With bias and f = 0 terms removed, the exact partitioned sums equal the
    /// coefficient expression evaluated with lattice Q sums.
    #[test]
    fn coefficients_reproduce_the_exact_lattice_sum() {
        use crate::link::{LinkSpec, PulseSpectrum};
        use crate::oracle::qsum::QLattice;
        use crate::oracle::sixth::partitioned_all;
        use crate::oracle::{random_format, DeltaMode, OracleConfig};

        let t = ContributionTables::new();
        let link = LinkSpec::from_engineering(0.2, -21.7, 1.3, 2, 80.0, 32.0).unwrap();
        let pulse = PulseSpectrum::triangle(link.symbol_rate);
        for (w, seed) in [(6, 1), (8, 2)] {
            let mut cfg = OracleConfig::new(w, link.symbol_rate).unwrap();
            cfg.include_bias = false;
            cfg.include_dc = false;
            cfg.delta_mode = DeltaMode::Exact;
            let c = random_format(8, seed).unwrap();
            let m = moment_set(&c);
            let coeffs = extract(&m, &t).coefficients();
            let lat = QLattice::new(&link, &pulse, &cfg).unwrap();
            let h = w as i64 / 2 - 1;
            let bins: Vec<i64> = (-3 * h..=3 * h).collect();
            let exact = partitioned_all(&m, &link, &pulse, &cfg, &t, &bins).unwrap();
            for (j, &i) in bins.iter().enumerate() {
                let q: [Complex64; 11] = std::array::from_fn(|l| lat.q(t.q_leader(l + 1), i));
                let b = lattice_bracket(&coeffs, &q, w as f64) * cfg.delta_f.powi(3);
                let e = exact[j].total();
                assert!(
                    (b - e).norm() <= 1e-10 * e.norm().max(1e-300),
                    "W={w} i={i}: {b} vs {e}"
                );
            }
        }
    }

    #[test]
    fn pm_qpsk_values() {
        let c = derived_coefficients(&moment_set(&Constellation4D::pm_qpsk()));
        let expect = [
            3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -5.0, 0.0, 0.0, -1.0, 4.0,
        ];
        for (v, e) in c.iter().zip(expect) {
            assert!((v - Complex64::new(e, 0.0)).norm() < 1e-12, "{c:?}");
        }
    }
}
