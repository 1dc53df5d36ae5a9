//! Dual-polarisation 4D constellations, their moments and the model's
//! correlation coefficients.

use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

const PROB_TOL: f64 = 1e-12;
const MEAN_TOL: f64 = 1e-12;

/// One 4D symbol: the x and y polarisation components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point4D {
    pub ax: Complex64,
    pub ay: Complex64,
}

impl Point4D {
    pub fn new(ax: Complex64, ay: Complex64) -> Self {
        Self { ax, ay }
    }
}

/// A finite 4D format with point probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation4D {
    points: Vec<Point4D>,
    probs: Vec<f64>,
}

impl Constellation4D {
    /// Validates and builds a constellation. `probs = None` means uniform.
    pub fn new(points: Vec<Point4D>, probs: Option<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyConstellation);
        }
        let probs = match probs {
            Some(p) => {
                if p.len() != points.len() {
                    return Err(Error::InvalidOracle(format!(
                        "{} probabilities for {} points",
                        p.len(),
                        points.len()
                    )));
                }
                p
            }
            None => vec![1.0 / points.len() as f64; points.len()],
        };
        for (index, &value) in probs.iter().enumerate() {
            if !(value >= 0.0) {
                return Err(Error::NegativeProbability { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_TOL {
            return Err(Error::ProbabilitySum { sum });
        }
        let c = Self { points, probs };
        let mx = c.moment(MomentSpec::raw(1, 0, 0, 0));
        let my = c.moment(MomentSpec::raw(0, 0, 1, 0));
        if mx.norm() > MEAN_TOL || my.norm() > MEAN_TOL {
            return Err(Error::NonZeroMean {
                mean_x: format!("{mx}"),
                mean_y: format!("{my}"),
            });
        }
        Ok(c)
    }

    pub fn points(&self) -> &[Point4D] {
        &self.points
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Direct weighted enumeration of E{ax^p ax*^q ay^r ay*^s}.
    pub fn moment(&self, spec: MomentSpec) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (pt, &w) in self.points.iter().zip(&self.probs) {
            acc += w * monomial(pt.ax, pt.ay, spec);
        }
        acc
    }

    /// Multiplies every component of every point by `s`.
    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|p| Point4D::new(p.ax * s, p.ay * s))
                .collect(),
            probs: self.probs.clone(),
        }
    }

    /// Real rescaling so that E{|ax|²} + E{|ay|²} equals `target`.
    pub fn with_total_power(&self, target: f64) -> Result<Self> {
        let p = self.total_power();
        if !(p > 0.0) || !(target >= 0.0) {
            return Err(Error::InvalidOracle(format!(
                "cannot rescale power {p} to {target}"
            )));
        }
        Ok(self.scaled(Complex64::new((target / p).sqrt(), 0.0)))
    }

    pub fn total_power(&self) -> f64 {
        self.moment(MomentSpec::raw(1, 1, 0, 0)).re + self.moment(MomentSpec::raw(0, 0, 1, 1)).re
    }

    pub fn swap_polarizations(&self) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|p| Point4D::new(p.ay, p.ax))
                .collect(),
            probs: self.probs.clone(),
        }
    }

    /// Independent QPSK per polarisation, points (±1±j)/√2.
    pub fn pm_qpsk() -> Self {
        let q = qpsk();
        Self::product(&q, &q)
    }

    /// Independent square 16QAM per polarisation scaled to unit power.
    pub fn pm_16qam() -> Self {
        let levels = [-3.0, -1.0, 1.0, 3.0];
        let s = 1.0 / 10f64.sqrt();
        let mut q = Vec::new();
        for &re in &levels {
            for &im in &levels {
                q.push(Complex64::new(re * s, im * s));
            }
        }
        Self::product(&q, &q)
    }

    /// QPSK on x, BPSK (±1) on y.
    pub fn qpsk_x_bpsk() -> Self {
        let b = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
        Self::product(&qpsk(), &b)
    }

    /// Outer product of two equiprobable 2D constellations.
    pub fn product(x: &[Complex64], y: &[Complex64]) -> Self {
        let mut points = Vec::with_capacity(x.len() * y.len());
        for &ax in x {
            for &ay in y {
                points.push(Point4D::new(ax, ay));
            }
        }
        Self::new(points, None).expect("product of zero-mean constellations")
    }
}

fn qpsk() -> Vec<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        Complex64::new(h, h),
        Complex64::new(-h, h),
        Complex64::new(-h, -h),
        Complex64::new(h, -h),
    ]
}

fn monomial(ax: Complex64, ay: Complex64, spec: MomentSpec) -> Complex64 {
    ax.powu(spec.p as u32)
        * ax.conj().powu(spec.q as u32)
        * ay.powu(spec.r as u32)
        * ay.conj().powu(spec.s as u32)
}

/// Reads the constellation CSV (`ax_re,ax_im,ay_re,ay_im[,prob]`).
pub fn load_constellation(path: &Path) -> Result<Constellation4D> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::open(path).map_err(io)?;
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(file);
    let bad = |line: usize, reason: String| Error::MalformedRow {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let headers = rdr.headers().map_err(|e| bad(1, e.to_string()))?.clone();
    let names: Vec<&str> = headers.iter().collect();
    let with_prob = match names.as_slice() {
        ["ax_re", "ax_im", "ay_re", "ay_im"] => false,
        ["ax_re", "ax_im", "ay_re", "ay_im", "prob"] => true,
        _ => {
            return Err(bad(
                1,
                format!(
                    "expected header ax_re,ax_im,ay_re,ay_im[,prob], got {}",
                    names.join(",")
                ),
            ))
        }
    };
    let width = if with_prob { 5 } else { 4 };
    let mut points = Vec::new();
    let mut probs = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let line = row + 2;
        let rec = rec.map_err(|e| bad(line, e.to_string()))?;
        if rec.len() != width {
            return Err(bad(
                line,
                format!("expected {width} fields, got {}", rec.len()),
            ));
        }
        let mut v = [0.0; 5];
        for (k, field) in rec.iter().enumerate() {
            v[k] = field
                .parse::<f64>()
                .map_err(|_| bad(line, format!("cannot parse '{field}' as a number")))?;
            if !v[k].is_finite() {
                return Err(bad(line, format!("non-finite value '{field}'")));
            }
        }
        points.push(Point4D::new(
            Complex64::new(v[0], v[1]),
            Complex64::new(v[2], v[3]),
        ));
        probs.push(v[4]);
    }
    Constellation4D::new(points, with_prob.then_some(probs))
}

/// Exponents of E{ax^p ax*^q ay^r ay*^s}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MomentSpec {
    pub p: u8,
    pub q: u8,
    pub r: u8,
    pub s: u8,
}

impl MomentSpec {
    pub const MAX_ORDER: u32 = 6;

    pub fn new(p: u8, q: u8, r: u8, s: u8) -> Result<Self> {
        let order = p as u32 + q as u32 + r as u32 + s as u32;
        if order > Self::MAX_ORDER {
            return Err(Error::MomentOrder { order });
        }
        Ok(Self::raw(p, q, r, s))
    }

    pub(crate) const fn raw(p: u8, q: u8, r: u8, s: u8) -> Self {
        Self { p, q, r, s }
    }

    pub fn order(&self) -> u32 {
        self.p as u32 + self.q as u32 + self.r as u32 + self.s as u32
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.q, self.p, self.s, self.r)
    }

    /// Exponents after exchanging the polarisations.
    pub fn swapped(&self) -> Self {
        Self::raw(self.r, self.s, self.p, self.q)
    }

    fn index(&self) -> usize {
        ((self.p as usize * 7 + self.q as usize) * 7 + self.r as usize) * 7 + self.s as usize
    }
}

pub fn moment(c: &Constellation4D, spec: MomentSpec) -> Complex64 {
    c.moment(spec)
}

/// Every moment of total order ≤ 6.
#[derive(Debug, Clone)]
pub struct MomentSet {
    values: Vec<Complex64>,
}

impl MomentSet {
    /// Builds a set from a closure, e.g. analytic Gaussian moments.
    pub fn from_fn(mut f: impl FnMut(MomentSpec) -> Complex64) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); 7 * 7 * 7 * 7];
        for spec in Self::specs() {
            values[spec.index()] = f(spec);
        }
        Self { values }
    }

    pub fn get(&self, spec: MomentSpec) -> Complex64 {
        self.values[spec.index()]
    }

    /// Shorthand for `get` with raw exponents.
    pub fn m(&self, p: u8, q: u8, r: u8, s: u8) -> Complex64 {
        self.values[MomentSpec::raw(p, q, r, s).index()]
    }

    /// All specs with p+q+r+s ≤ 6, in lexicographic order.
    pub fn specs() -> impl Iterator<Item = MomentSpec> {
        (0..=6u8).flat_map(|p| {
            (0..=6 - p).flat_map(move |q| {
                (0..=6 - p - q).flat_map(move |r| {
                    (0..=6 - p - q - r).map(move |s| MomentSpec::raw(p, q, r, s))
                })
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (MomentSpec, Complex64)> + '_ {
        Self::specs().map(move |s| (s, self.get(s)))
    }

    /// Moment set of the polarisation-swapped format.
    pub fn swapped(&self) -> Self {
        Self::from_fn(|s| self.get(s.swapped()))
    }

    /// Moments of independent circular complex Gaussians with powers `px`, `py`.
    pub fn circular_gaussian(px: f64, py: f64) -> Self {
        let fact = |n: u8| (1..=n as u32).product::<u32>() as f64;
        Self::from_fn(|s| {
            if s.p == s.q && s.r == s.s {
                Complex64::new(
                    fact(s.p) * px.powi(s.p as i32) * fact(s.r) * py.powi(s.r as i32),
                    0.0,
                )
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }
}

pub fn moment_set(c: &Constellation4D) -> MomentSet {
    MomentSet::from_fn(|s| c.moment(s))
}

pub fn swap_polarizations(c: &Constellation4D) -> Constellation4D {
    c.swap_polarizations()
}

/// The fourteen correlation coefficients of the PSD.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientSet {
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub psi1: f64,
    pub psi2: Complex64,
    pub psi3: Complex64,
    pub psi4: f64,
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub lambda3: f64,
    pub lambda4: Complex64,
    pub lambda5: Complex64,
    pub lambda6: f64,
    pub xi1: f64,
}

impl CoefficientSet {
    pub const NAMES: [&'static str; 14] = [
        "phi1", "phi2", "phi3", "psi1", "psi2", "psi3", "psi4", "lambda1", "lambda2", "lambda3",
        "lambda4", "lambda5", "lambda6", "xi1",
    ];

    pub fn zero() -> Self {
        Self::from_values([Complex64::new(0.0, 0.0); 14])
    }

    /// Values in the order of [`Self::NAMES`].
    pub fn values(&self) -> [Complex64; 14] {
        let r = |x: f64| Complex64::new(x, 0.0);
        [
            r(self.phi1),
            r(self.phi2),
            r(self.phi3),
            r(self.psi1),
            self.psi2,
            self.psi3,
            r(self.psi4),
            self.lambda1,
            self.lambda2,
            r(self.lambda3),
            self.lambda4,
            self.lambda5,
            r(self.lambda6),
            r(self.xi1),
        ]
    }

    /// Builds from values in [`Self::NAMES`] order, keeping the real part of
    /// the coefficients that are real by construction.
    pub fn from_values(v: [Complex64; 14]) -> Self {
        Self {
            phi1: v[0].re,
            phi2: v[1].re,
            phi3: v[2].re,
            psi1: v[3].re,
            psi2: v[4],
            psi3: v[5],
            psi4: v[6].re,
            lambda1: v[7],
            lambda2: v[8],
            lambda3: v[9].re,
            lambda4: v[10],
            lambda5: v[11],
            lambda6: v[12].re,
            xi1: v[13].re,
        }
    }

    /// Multiplies every coefficient by a real factor.
    pub fn scaled(&self, k: f64) -> Self {
        Self::from_values(self.values().map(|v| v * k))
    }
}

/// The fourteen coefficients as complex values, before the real ones are
/// projected. Index order follows [`CoefficientSet::NAMES`].
pub type RawCoefficients = [Complex64; 14];

const REAL_SLOTS: [usize; 8] = [0, 1, 2, 3, 6, 9, 12, 13];

/// Largest |Im|/|value| over the coefficients that must be real.
pub fn realness_defect(raw: &RawCoefficients) -> f64 {
    REAL_SLOTS
        .iter()
        .map(|&i| {
            let v = raw[i];
            if v.norm() == 0.0 {
                0.0
            } else {
                v.im.abs() / v.norm()
            }
        })
        .fold(0.0, f64::max)
}

/// Named moments shared by the coefficient tables.
struct Mo<'a> {
    m: &'a MomentSet,
}

impl<'a> Mo<'a> {
    fn g(&self, p: u8, q: u8, r: u8, s: u8) -> Complex64 {
        self.m.m(p, q, r, s)
    }
    fn c(&self, p: u8, q: u8, r: u8, s: u8) -> Complex64 {
        self.m.m(p, q, r, s).conj()
    }
    fn sq(&self, p: u8, q: u8, r: u8, s: u8) -> Complex64 {
        Complex64::new(self.m.m(p, q, r, s).norm_sqr(), 0.0)
    }
}

fn re2(z: Complex64) -> Complex64 {
    Complex64::new(2.0 * z.re, 0.0)
}

/// The fourteen correlation coefficients of a format.
pub fn coefficients(m: &MomentSet) -> CoefficientSet {
    CoefficientSet::from_values(coefficients_raw(m))
}

/// Unprojected version of [`coefficients`].
///
/// Each `a_l` collects the same-polarisation moment products whose frequency
/// constraints fall in the set D_l, and each `b_l` the cross-polarisation
/// ones. Differences from [`coefficients_printed`] are listed in the README.
pub fn coefficients_raw(m: &MomentSet) -> RawCoefficients {
    let g = |p: u8, q: u8, r: u8, s: u8| m.m(p, q, r, s);
    let sum = |terms: &[(f64, Complex64)]| terms.iter().map(|&(k, v)| v * k).sum::<Complex64>();
    let a1 = sum(&[
        (1.0, g(0, 0, 1, 1) * g(0, 0, 1, 1) * g(1, 1, 0, 0)),
        (1.0, g(0, 0, 1, 1) * g(0, 1, 1, 0) * g(1, 0, 0, 1)),
        (2.0, g(1, 1, 0, 0) * g(1, 1, 0, 0) * g(1, 1, 0, 0)),
    ]);
    let b1 = sum(&[(2.0, g(0, 1, 1, 0) * g(1, 0, 0, 1) * g(1, 1, 0, 0))]);
    let a2 = sum(&[
        (1.0, g(0, 0, 0, 2) * g(0, 0, 2, 0) * g(1, 1, 0, 0)),
        (1.0, g(0, 0, 0, 2) * g(0, 1, 1, 0) * g(1, 0, 1, 0)),
        (1.0, g(0, 0, 1, 1) * g(0, 1, 0, 1) * g(1, 0, 1, 0)),
        (1.0, g(0, 0, 2, 0) * g(0, 1, 0, 1) * g(1, 0, 0, 1)),
        (4.0, g(0, 2, 0, 0) * g(1, 1, 0, 0) * g(2, 0, 0, 0)),
    ]);
    let b2 = sum(&[
        (2.0, g(0, 1, 0, 1) * g(1, 0, 1, 0) * g(1, 1, 0, 0)),
        (2.0, g(0, 2, 0, 0) * g(1, 0, 0, 1) * g(1, 0, 1, 0)),
    ]);
    let a3 = sum(&[
        (1.0, g(0, 0, 1, 1) * g(0, 1, 0, 1) * g(1, 0, 1, 0)),
        (1.0, g(0, 2, 0, 0) * g(1, 1, 0, 0) * g(2, 0, 0, 0)),
    ]);
    let b3 = sum(&[(1.0, g(0, 1, 0, 1) * g(0, 1, 1, 0) * g(2, 0, 0, 0))]);
    let a4 = sum(&[
        (1.0, g(0, 0, 1, 2) * g(1, 1, 1, 0)),
        (1.0, g(0, 0, 2, 1) * g(1, 1, 0, 1)),
        (1.0, g(0, 1, 1, 1) * g(1, 0, 1, 1)),
        (1.0, g(0, 1, 2, 0) * g(1, 0, 0, 2)),
        (4.0, g(1, 2, 0, 0) * g(2, 1, 0, 0)),
    ]);
    let b4 = sum(&[
        (2.0, g(1, 0, 1, 1) * g(1, 2, 0, 0)),
        (2.0, g(1, 1, 0, 1) * g(1, 1, 1, 0)),
    ]);
    let a5 = sum(&[
        (1.0, g(0, 0, 2, 1) * g(1, 1, 0, 1)),
        (1.0, g(0, 1, 1, 1) * g(1, 0, 1, 1)),
        (2.0, g(1, 2, 0, 0) * g(2, 1, 0, 0)),
    ]);
    let b5 = sum(&[(2.0, g(1, 1, 0, 1) * g(1, 1, 1, 0))]);
    let b6 = sum(&[
        (1.0, g(0, 1, 1, 1) * g(2, 1, 0, 0)),
        (1.0, g(0, 2, 1, 0) * g(2, 0, 0, 1)),
    ]);
    let a7 = sum(&[
        (1.0, g(0, 1, 0, 2) * g(1, 0, 2, 0)),
        (1.0, g(0, 3, 0, 0) * g(3, 0, 0, 0)),
    ]);
    let b7 = sum(&[(1.0, g(0, 2, 0, 1) * g(2, 0, 1, 0))]);
    let a8 = sum(&[
        (-1.0, g(0, 0, 0, 2) * g(0, 1, 1, 0) * g(1, 0, 1, 0)),
        (-2.0, g(0, 0, 1, 1) * g(0, 1, 0, 1) * g(1, 0, 1, 0)),
        (1.0, g(0, 1, 1, 2) * g(1, 0, 1, 0)),
        (-3.0, g(0, 2, 0, 0) * g(1, 1, 0, 0) * g(2, 0, 0, 0)),
        (1.0, g(1, 3, 0, 0) * g(2, 0, 0, 0)),
    ]);
    let b8 = sum(&[
        (-1.0, g(0, 0, 1, 1) * g(0, 2, 0, 0) * g(2, 0, 0, 0)),
        (-2.0, g(0, 1, 0, 1) * g(0, 1, 1, 0) * g(2, 0, 0, 0)),
        (1.0, g(0, 2, 1, 1) * g(2, 0, 0, 0)),
    ]);
    let a9 = sum(&[
        (-1.0, g(0, 0, 0, 2) * g(0, 0, 2, 0) * g(1, 1, 0, 0)),
        (-1.0, g(0, 0, 0, 2) * g(0, 1, 1, 0) * g(1, 0, 1, 0)),
        (-3.0, g(0, 0, 1, 1) * g(0, 0, 1, 1) * g(1, 1, 0, 0)),
        (-1.0, g(0, 0, 1, 1) * g(0, 1, 0, 1) * g(1, 0, 1, 0)),
        (-5.0, g(0, 0, 1, 1) * g(0, 1, 1, 0) * g(1, 0, 0, 1)),
        (1.0, g(0, 0, 1, 1) * g(1, 1, 1, 1)),
        (-1.0, g(0, 0, 2, 0) * g(0, 1, 0, 1) * g(1, 0, 0, 1)),
        (1.0, g(0, 0, 2, 2) * g(1, 1, 0, 0)),
        (1.0, g(0, 1, 1, 0) * g(1, 0, 1, 2)),
        (1.0, g(0, 1, 2, 1) * g(1, 0, 0, 1)),
        (-4.0, g(0, 2, 0, 0) * g(1, 1, 0, 0) * g(2, 0, 0, 0)),
        (-8.0, g(1, 1, 0, 0) * g(1, 1, 0, 0) * g(1, 1, 0, 0)),
        (4.0, g(1, 1, 0, 0) * g(2, 2, 0, 0)),
    ]);
    let b9 = sum(&[
        (-2.0, g(0, 0, 1, 1) * g(1, 1, 0, 0) * g(1, 1, 0, 0)),
        (-2.0, g(0, 1, 0, 1) * g(1, 0, 1, 0) * g(1, 1, 0, 0)),
        (-6.0, g(0, 1, 1, 0) * g(1, 0, 0, 1) * g(1, 1, 0, 0)),
        (-2.0, g(0, 2, 0, 0) * g(1, 0, 0, 1) * g(1, 0, 1, 0)),
        (2.0, g(1, 0, 0, 1) * g(1, 2, 1, 0)),
        (2.0, g(1, 1, 0, 0) * g(1, 1, 1, 1)),
    ]);
    let a10 = sum(&[
        (-1.0, g(0, 0, 0, 2) * g(0, 0, 2, 0) * g(1, 1, 0, 0)),
        (-1.0, g(0, 0, 0, 2) * g(0, 1, 1, 0) * g(1, 0, 1, 0)),
        (-2.0, g(0, 0, 1, 1) * g(0, 1, 0, 1) * g(1, 0, 1, 0)),
        (-2.0, g(0, 0, 2, 0) * g(0, 1, 0, 1) * g(1, 0, 0, 1)),
        (1.0, g(0, 0, 2, 0) * g(1, 1, 0, 2)),
        (1.0, g(0, 1, 1, 2) * g(1, 0, 1, 0)),
        (-6.0, g(0, 2, 0, 0) * g(1, 1, 0, 0) * g(2, 0, 0, 0)),
        (2.0, g(1, 3, 0, 0) * g(2, 0, 0, 0)),
    ]);
    let b10 = sum(&[
        (-4.0, g(0, 1, 0, 1) * g(1, 0, 1, 0) * g(1, 1, 0, 0)),
        (-2.0, g(0, 2, 0, 0) * g(1, 0, 0, 1) * g(1, 0, 1, 0)),
        (2.0, g(1, 0, 1, 0) * g(1, 2, 0, 1)),
    ]);
    let a11 = sum(&[
        (-1.0, g(0, 0, 1, 1) * g(0, 0, 1, 1) * g(1, 1, 0, 0)),
        (-1.0, g(0, 0, 1, 1) * g(0, 1, 0, 1) * g(1, 0, 1, 0)),
        (-1.0, g(0, 0, 1, 1) * g(0, 1, 1, 0) * g(1, 0, 0, 1)),
        (1.0, g(0, 0, 1, 1) * g(1, 1, 1, 1)),
        (-1.0, g(0, 2, 0, 0) * g(1, 1, 0, 0) * g(2, 0, 0, 0)),
        (-2.0, g(1, 1, 0, 0) * g(1, 1, 0, 0) * g(1, 1, 0, 0)),
        (1.0, g(1, 1, 0, 0) * g(2, 2, 0, 0)),
    ]);
    let b11 = sum(&[
        (-1.0, g(0, 1, 0, 1) * g(0, 1, 1, 0) * g(2, 0, 0, 0)),
        (-2.0, g(0, 1, 1, 0) * g(1, 0, 0, 1) * g(1, 1, 0, 0)),
        (1.0, g(0, 1, 1, 0) * g(2, 1, 0, 1)),
    ]);
    let b12 = sum(&[
        (-1.0, g(0, 0, 1, 1) * g(0, 2, 0, 0) * g(2, 0, 0, 0)),
        (-1.0, g(0, 1, 0, 1) * g(0, 1, 1, 0) * g(2, 0, 0, 0)),
        (-2.0, g(0, 1, 0, 1) * g(1, 0, 1, 0) * g(1, 1, 0, 0)),
        (1.0, g(0, 1, 0, 1) * g(2, 1, 1, 0)),
        (-2.0, g(0, 2, 0, 0) * g(1, 0, 0, 1) * g(1, 0, 1, 0)),
        (1.0, g(0, 2, 0, 0) * g(2, 0, 1, 1)),
    ]);
    let b13 = sum(&[
        (-1.0, g(0, 1, 0, 1) * g(0, 1, 1, 0) * g(2, 0, 0, 0)),
        (-2.0, g(0, 1, 0, 1) * g(1, 0, 1, 0) * g(1, 1, 0, 0)),
        (1.0, g(0, 1, 0, 1) * g(2, 1, 1, 0)),
    ]);
    let a14 = sum(&[
        (2.0, g(0, 0, 0, 2) * g(0, 0, 2, 0) * g(1, 1, 0, 0)),
        (4.0, g(0, 0, 0, 2) * g(0, 1, 1, 0) * g(1, 0, 1, 0)),
        (-1.0, g(0, 0, 0, 2) * g(1, 1, 2, 0)),
        (4.0, g(0, 0, 1, 1) * g(0, 0, 1, 1) * g(1, 1, 0, 0)),
        (8.0, g(0, 0, 1, 1) * g(0, 1, 0, 1) * g(1, 0, 1, 0)),
        (8.0, g(0, 0, 1, 1) * g(0, 1, 1, 0) * g(1, 0, 0, 1)),
        (-4.0, g(0, 0, 1, 1) * g(1, 1, 1, 1)),
        (-2.0, g(0, 0, 1, 2) * g(1, 1, 1, 0)),
        (4.0, g(0, 0, 2, 0) * g(0, 1, 0, 1) * g(1, 0, 0, 1)),
        (-1.0, g(0, 0, 2, 0) * g(1, 1, 0, 2)),
        (-2.0, g(0, 0, 2, 1) * g(1, 1, 0, 1)),
        (-1.0, g(0, 0, 2, 2) * g(1, 1, 0, 0)),
        (-2.0, g(0, 1, 0, 1) * g(1, 0, 2, 1)),
        (-1.0, g(0, 1, 0, 2) * g(1, 0, 2, 0)),
        (-2.0, g(0, 1, 1, 0) * g(1, 0, 1, 2)),
        (-4.0, g(0, 1, 1, 1) * g(1, 0, 1, 1)),
        (-2.0, g(0, 1, 1, 2) * g(1, 0, 1, 0)),
        (-1.0, g(0, 1, 2, 0) * g(1, 0, 0, 2)),
        (-2.0, g(0, 1, 2, 1) * g(1, 0, 0, 1)),
        (18.0, g(0, 2, 0, 0) * g(1, 1, 0, 0) * g(2, 0, 0, 0)),
        (-3.0, g(0, 2, 0, 0) * g(3, 1, 0, 0)),
        (-1.0, g(0, 3, 0, 0) * g(3, 0, 0, 0)),
        (12.0, g(1, 1, 0, 0) * g(1, 1, 0, 0) * g(1, 1, 0, 0)),
        (-9.0, g(1, 1, 0, 0) * g(2, 2, 0, 0)),
        (1.0, g(1, 1, 2, 2)),
        (-9.0, g(1, 2, 0, 0) * g(2, 1, 0, 0)),
        (-3.0, g(1, 3, 0, 0) * g(2, 0, 0, 0)),
        (1.0, g(3, 3, 0, 0)),
    ]);
    let b14 = sum(&[
        (2.0, g(0, 0, 1, 1) * g(0, 2, 0, 0) * g(2, 0, 0, 0)),
        (4.0, g(0, 0, 1, 1) * g(1, 1, 0, 0) * g(1, 1, 0, 0)),
        (-1.0, g(0, 0, 1, 1) * g(2, 2, 0, 0)),
        (4.0, g(0, 1, 0, 1) * g(0, 1, 1, 0) * g(2, 0, 0, 0)),
        (8.0, g(0, 1, 0, 1) * g(1, 0, 1, 0) * g(1, 1, 0, 0)),
        (-2.0, g(0, 1, 0, 1) * g(2, 1, 1, 0)),
        (8.0, g(0, 1, 1, 0) * g(1, 0, 0, 1) * g(1, 1, 0, 0)),
        (-2.0, g(0, 1, 1, 0) * g(2, 1, 0, 1)),
        (-2.0, g(0, 1, 1, 1) * g(2, 1, 0, 0)),
        (4.0, g(0, 2, 0, 0) * g(1, 0, 0, 1) * g(1, 0, 1, 0)),
        (-1.0, g(0, 2, 0, 0) * g(2, 0, 1, 1)),
        (-1.0, g(0, 2, 0, 1) * g(2, 0, 1, 0)),
        (-1.0, g(0, 2, 1, 0) * g(2, 0, 0, 1)),
        (-1.0, g(0, 2, 1, 1) * g(2, 0, 0, 0)),
        (-2.0, g(1, 0, 0, 1) * g(1, 2, 1, 0)),
        (-2.0, g(1, 0, 1, 0) * g(1, 2, 0, 1)),
        (-2.0, g(1, 0, 1, 1) * g(1, 2, 0, 0)),
        (-4.0, g(1, 1, 0, 0) * g(1, 1, 1, 1)),
        (-4.0, g(1, 1, 0, 1) * g(1, 1, 1, 0)),
        (1.0, g(2, 2, 1, 1)),
    ]);
    let sym = |a: Complex64, b: Complex64| a + re2(b);
    [
        sym(a1, b1),
        sym(a2, b2),
        sym(a3, b3),
        sym(a4, b4),
        a5 + b5,
        b6,
        sym(a7, b7),
        a8 + b8,
        b13,
        sym(a9, b9),
        a10 + b10,
        b12,
        sym(a11, b11),
        sym(a14, b14),
    ]
}

/// The a/b/c/d intermediate coefficients.
#[derive(Debug, Clone, Copy)]
pub struct Intermediate {
    pub a1: Complex64,
    pub a1p: Complex64,
    pub a2: Complex64,
    pub a2p: Complex64,
    pub a3: Complex64,
    pub a3p: Complex64,
    pub b1: Complex64,
    pub b1p: Complex64,
    pub b2: Complex64,
    pub b2p: Complex64,
    pub b3p: Complex64,
    pub b4: Complex64,
    pub b4p: Complex64,
    pub c1: Complex64,
    pub c1p: Complex64,
    pub c2: Complex64,
    pub c2p: Complex64,
    pub c3: Complex64,
    pub c3p: Complex64,
    pub c4: Complex64,
    pub c4p: Complex64,
    pub c5p: Complex64,
    pub c6p: Complex64,
    pub d1: Complex64,
    pub d1p: Complex64,
}

/// The intermediate coefficients transcribed term by term.
pub fn intermediate_printed(m: &MomentSet) -> Intermediate {
    let o = Mo { m };
    let ex2 = o.g(1, 1, 0, 0);
    let ey2 = o.g(0, 0, 1, 1);
    let k = |x: f64| Complex64::new(x, 0.0);
    // recurring products
    let t_xy_xcy_cyy = o.g(1, 0, 1, 0) * o.g(0, 1, 1, 0) * o.c(0, 0, 2, 0);
    let t_cxx_xy_xcy = o.c(2, 0, 0, 0) * o.g(1, 0, 1, 0) * o.g(1, 0, 0, 1);
    let t_xx_cxy_cxy = o.g(2, 0, 0, 0) * o.c(1, 0, 1, 0) * o.g(0, 1, 1, 0);
    Intermediate {
        a1: k(2.0) * ex2 * ex2 * ex2 + ex2 * ey2 * ey2 + o.sq(1, 0, 0, 1) * ey2,
        a1p: k(2.0) * ex2 * o.sq(1, 0, 0, 1),
        a2: k(4.0) * ex2 * o.sq(2, 0, 0, 0)
            + ex2 * o.sq(0, 0, 2, 0)
            + re2(t_xy_xcy_cyy)
            + o.sq(1, 0, 1, 0) * ey2,
        a2p: k(2.0) * ex2 * o.sq(1, 0, 1, 0) + k(2.0) * t_cxx_xy_xcy,
        a3: ex2 * o.sq(2, 0, 0, 0) + o.sq(1, 0, 1, 0) * ey2,
        a3p: t_xx_cxy_cxy,
        b1: k(4.0) * o.sq(2, 1, 0, 0)
            + o.g(1, 1, 1, 0) * o.g(0, 0, 1, 2)
            + o.g(1, 1, 0, 1) * o.g(0, 0, 2, 1)
            + o.sq(1, 0, 1, 1)
            + o.sq(0, 1, 2, 0),
        b1p: o.g(1, 2, 0, 0) * o.g(1, 0, 1, 1) + k(2.0) * o.sq(1, 1, 1, 0),
        b2: k(2.0) * o.sq(2, 1, 0, 0) + o.g(1, 1, 0, 1) * o.g(0, 0, 2, 1) + o.sq(1, 0, 1, 1),
        b2p: k(2.0) * o.sq(1, 1, 1, 0),
        b3p: o.g(1, 2, 0, 0) * o.g(1, 0, 1, 1) + o.sq(2, 0, 0, 1),
        b4: o.sq(3, 0, 0, 0) + o.sq(1, 0, 2, 0),
        b4p: o.sq(2, 0, 1, 0),
        c1: k(-3.0) * ex2 * o.sq(2, 0, 0, 0) + o.c(3, 1, 0, 0) * o.g(2, 0, 0, 0)
            - t_xy_xcy_cyy
            - k(2.0) * o.sq(1, 0, 1, 0) * ey2
            + o.g(1, 0, 1, 0) * o.c(1, 0, 2, 1),
        c1p: k(-2.0) * t_xx_cxy_cxy - o.sq(2, 0, 0, 0) * ey2 + o.g(2, 0, 0, 0) * o.c(2, 0, 1, 1),
        c2: k(-8.0) * ex2 * ex2 * ex2 - k(4.0) * ex2 * o.sq(2, 0, 0, 0)
            + k(4.0) * o.g(2, 2, 0, 0) * ex2
            - k(3.0) * ex2 * ey2 * ey2
            - ex2 * o.sq(0, 0, 2, 0)
            + ex2 * o.g(0, 0, 2, 2)
            + o.g(1, 1, 1, 1) * ey2
            - k(5.0) * o.sq(1, 0, 0, 1) * ey2
            - o.sq(1, 0, 1, 0) * ey2
            - re2(t_xy_xcy_cyy)
            + re2(o.g(0, 1, 1, 0) * o.g(1, 0, 1, 2)),
        c2p: k(-6.0) * ex2 * o.sq(1, 0, 0, 1)
            - k(2.0) * ex2 * o.sq(1, 0, 1, 0)
            - k(2.0) * ex2 * ex2 * ey2
            + k(2.0) * ex2 * o.g(1, 1, 1, 1)
            + k(2.0) * o.g(1, 0, 0, 1) * o.g(1, 2, 1, 0)
            - k(2.0) * t_cxx_xy_xcy,
        c3: k(-6.0) * ex2 * o.sq(2, 0, 0, 0) + k(2.0) * o.c(3, 1, 0, 0) * o.g(2, 0, 0, 0)
            - ex2 * o.sq(0, 0, 2, 0)
            + o.c(1, 1, 2, 0) * o.g(0, 0, 2, 0)
            - re2(o.c(1, 0, 1, 0) * o.g(1, 0, 0, 1) * o.g(0, 0, 2, 0))
            - o.c(1, 0, 1, 0) * o.g(1, 0, 0, 1) * o.g(0, 0, 2, 0)
            - k(2.0) * o.sq(1, 0, 1, 0) * ey2
            + o.g(1, 0, 1, 0) * o.c(1, 0, 2, 1),
        c3p: k(4.0) * ex2 * o.sq(1, 0, 1, 0) + k(2.0) * o.g(1, 0, 1, 0) * o.c(2, 1, 1, 0)
            - k(2.0) * t_cxx_xy_xcy,
        c4: k(2.0) * ex2 * ex2 * ex2 - ex2 * o.sq(2, 0, 0, 0) - ex2 * ey2 * ey2
            + o.g(1, 1, 1, 1) * ey2
            - o.sq(1, 0, 0, 1) * ey2
            - o.sq(1, 0, 1, 0) * ey2
            + o.g(2, 2, 0, 0) * ex2,
        c4p: k(-2.0) * ex2 * o.sq(1, 0, 0, 1) + o.g(1, 0, 0, 1) * o.g(1, 2, 1, 0) - t_xx_cxy_cxy,
        c5p: k(2.0) * ex2 * o.sq(1, 0, 1, 0) + o.g(1, 0, 1, 0) * o.c(2, 1, 1, 0)
            - re2(t_xx_cxy_cxy)
            - t_cxx_xy_xcy
            - o.sq(2, 0, 0, 0) * ey2,
        c6p: k(-2.0) * ex2 * o.sq(1, 0, 1, 0) + o.g(1, 0, 1, 0) * o.c(2, 1, 1, 0) - t_xx_cxy_cxy,
        d1: k(12.0) * ex2 * ex2 * ex2 + k(18.0) * ex2 * o.sq(2, 0, 0, 0)
            - o.sq(3, 0, 0, 0)
            - k(9.0) * o.sq(2, 1, 0, 0)
            - k(9.0) * o.g(2, 2, 0, 0) * ex2
            - k(3.0) * re2(o.g(3, 1, 0, 0) * o.c(2, 0, 0, 0))
            + o.g(3, 3, 0, 0)
            + k(4.0) * ex2 * ey2 * ey2
            + k(2.0) * ex2 * o.sq(0, 0, 2, 0)
            - ex2 * o.g(0, 0, 2, 2)
            - k(4.0) * o.g(1, 1, 1, 1) * ey2
            - k(2.0) * re2(o.g(1, 1, 1, 0) * o.g(0, 0, 1, 2))
            - re2(o.g(1, 1, 2, 0) * o.c(0, 0, 2, 0))
            - k(4.0) * o.sq(1, 0, 1, 1)
            + k(8.0) * o.sq(1, 0, 0, 1) * ey2
            + k(8.0) * o.sq(1, 0, 1, 0) * ey2
            + k(4.0) * re2(t_xy_xcy_cyy)
            - o.sq(1, 0, 2, 0)
            - o.sq(0, 1, 2, 0)
            + o.g(1, 1, 2, 2)
            - k(2.0) * re2(o.g(1, 0, 1, 0) * o.c(1, 0, 2, 1))
            - re2(o.g(1, 0, 0, 1) * o.g(0, 1, 2, 1)),
        d1p: k(8.0) * ex2 * o.sq(1, 0, 0, 1) - o.sq(2, 0, 0, 1)
            + k(8.0) * ex2 * o.sq(1, 0, 1, 0)
            + k(4.0) * ex2 * ex2 * ey2
            - k(4.0) * ex2 * o.g(1, 1, 1, 1)
            - o.g(2, 2, 0, 0) * ey2
            - k(2.0) * o.g(1, 2, 0, 0) * o.g(1, 0, 1, 1)
            - k(2.0) * o.g(2, 0, 0, 0) * o.c(2, 0, 1, 1)
            - o.g(2, 1, 0, 0) * o.g(1, 0, 1, 1)
            - k(4.0) * o.sq(1, 1, 1, 0)
            + o.g(2, 2, 1, 1)
            - k(4.0) * o.g(1, 0, 0, 1) * o.g(1, 2, 1, 0)
            - k(4.0) * o.g(1, 0, 1, 0) * o.c(2, 1, 1, 0)
            + k(4.0) * re2(t_xx_cxy_cxy)
            + k(2.0) * o.sq(2, 0, 0, 0) * ey2
            - o.sq(2, 0, 1, 0),
    }
}

/// Composition of the intermediate coefficients into the fourteen.
pub fn compose(i: &Intermediate) -> RawCoefficients {
    [
        i.a1 + re2(i.a1p),
        i.a2 + re2(i.a2p),
        i.a3 + re2(i.a3p),
        i.b1 + re2(i.b1p),
        i.b2 + i.b2p,
        i.b3p,
        i.b4 + re2(i.b4p),
        i.c1 + i.c1p,
        i.c6p,
        i.c2 + re2(i.c2p),
        i.c3 + i.c3p,
        i.c5p,
        i.c4 + re2(i.c4p),
        i.d1 + re2(i.d1p),
    ]
}

pub fn coefficients_composed(m: &MomentSet) -> RawCoefficients {
    compose(&intermediate_printed(m))
}

/// The fully expanded coefficient table, transcribed term by term.
pub fn coefficients_printed(m: &MomentSet) -> RawCoefficients {
    let o = Mo { m };
    let ex2 = o.g(1, 1, 0, 0);
    let ey2 = o.g(0, 0, 1, 1);
    let k = |x: f64| Complex64::new(x, 0.0);
    let t_xy_xcy_cyy = o.g(1, 0, 1, 0) * o.g(0, 1, 1, 0) * o.c(0, 0, 2, 0);
    let t_cxx_xy_xcy = o.c(2, 0, 0, 0) * o.g(1, 0, 1, 0) * o.g(1, 0, 0, 1);
    let t_xx_cxy_cxy = o.g(2, 0, 0, 0) * o.c(1, 0, 1, 0) * o.g(0, 1, 1, 0);
    let t_cxy_xcy_yy = o.c(1, 0, 1, 0) * o.g(1, 0, 0, 1) * o.g(0, 0, 2, 0);

    let phi1 = k(2.0) * ex2 * ex2 * ex2
        + k(4.0) * ex2 * o.sq(1, 0, 0, 1)
        + ex2 * ey2 * ey2
        + o.sq(1, 0, 0, 1) * ey2;
    let phi2 = k(4.0) * ex2 * o.sq(2, 0, 0, 0)
        + ex2 * o.sq(0, 0, 2, 0)
        + k(4.0) * ex2 * o.sq(1, 0, 1, 0)
        + o.sq(1, 0, 1, 0) * ey2
        + re2(t_xy_xcy_cyy + k(2.0) * t_cxx_xy_xcy);
    let phi3 = ex2 * o.sq(2, 0, 0, 0) + o.sq(1, 0, 1, 0) * ey2 + re2(t_xx_cxy_cxy);
    let psi1 = k(4.0) * o.sq(2, 1, 0, 0)
        + k(4.0) * o.sq(1, 1, 1, 0)
        + o.g(1, 1, 1, 0) * o.g(0, 0, 1, 2)
        + o.g(1, 1, 0, 1) * o.g(0, 0, 2, 1)
        + o.sq(1, 0, 1, 1)
        + o.sq(0, 1, 2, 0)
        + re2(o.g(1, 2, 0, 0) * o.g(1, 0, 1, 1));
    let psi2 = k(2.0) * o.sq(2, 1, 0, 0)
        + k(2.0) * o.sq(1, 1, 1, 0)
        + o.g(1, 1, 0, 1) * o.g(0, 0, 2, 1)
        + o.sq(1, 0, 1, 1);
    let psi3 = o.g(1, 2, 0, 0) * o.g(1, 0, 1, 1) + o.sq(2, 0, 0, 1);
    let psi4 = o.sq(3, 0, 0, 0) + k(2.0) * o.sq(2, 0, 1, 0) + o.sq(1, 0, 2, 0);
    let lambda1 = k(-3.0) * ex2 * o.sq(2, 0, 0, 0) + o.c(3, 1, 0, 0) * o.g(2, 0, 0, 0)
        - o.sq(2, 0, 0, 0) * ey2
        - k(2.0) * o.sq(1, 0, 1, 0) * ey2
        + o.g(2, 0, 0, 0) * o.c(2, 0, 1, 1)
        - k(2.0) * t_xx_cxy_cxy
        + o.g(1, 0, 1, 0) * o.c(1, 0, 2, 1)
        - t_xy_xcy_cyy;
    let lambda2 =
        k(-2.0) * ex2 * o.sq(1, 0, 1, 0) + o.g(1, 0, 1, 0) * o.c(2, 1, 1, 0) - t_xx_cxy_cxy;
    let lambda3 =
        k(4.0) * o.g(2, 2, 0, 0) * ex2 - k(4.0) * ex2 * o.sq(2, 0, 0, 0) - k(8.0) * ex2 * ex2 * ex2
            + k(4.0) * ex2 * o.g(1, 1, 1, 1)
            - k(12.0) * ex2 * o.sq(1, 0, 0, 1)
            - k(4.0) * ex2 * o.sq(1, 0, 1, 0)
            - k(4.0) * ex2 * ex2 * ey2
            - k(3.0) * ex2 * ey2 * ey2
            - ex2 * o.sq(0, 0, 2, 0)
            + o.g(1, 1, 1, 1) * ey2
            + ex2 * o.g(0, 0, 2, 2)
            - k(5.0) * o.sq(1, 0, 0, 1) * ey2
            - o.sq(1, 0, 1, 0) * ey2
            - t_cxx_xy_xcy
            + re2(k(2.0) * o.g(1, 0, 0, 1) * o.g(1, 2, 1, 0) - t_xy_xcy_cyy
                + o.g(0, 1, 1, 0) * o.g(1, 0, 1, 2));
    let lambda4 = k(-6.0) * ex2 * o.sq(2, 0, 0, 0)
        + k(2.0) * o.c(3, 1, 0, 0) * o.g(2, 0, 0, 0)
        + k(4.0) * ex2 * o.sq(1, 0, 1, 0)
        - ex2 * o.sq(0, 0, 2, 0)
        + o.c(1, 1, 2, 0) * o.g(0, 0, 2, 0)
        + k(2.0) * o.g(1, 0, 1, 0) * o.c(2, 1, 1, 0)
        - k(2.0) * o.sq(1, 0, 1, 0) * ey2
        - k(2.0) * t_cxx_xy_xcy
        + o.g(1, 0, 1, 0) * o.c(1, 0, 2, 1)
        - t_cxy_xcy_yy
        - re2(t_cxy_xcy_yy);
    let lambda5 = k(2.0) * ex2 * o.sq(1, 0, 1, 0) + o.g(1, 0, 1, 0) * o.c(2, 1, 1, 0)
        - o.sq(2, 0, 0, 0) * ey2
        - t_cxx_xy_xcy
        - re2(t_xx_cxy_cxy);
    let lambda6 = k(2.0) * ex2 * ex2 * ex2 + o.g(2, 2, 0, 0) * ex2
        - ex2 * o.sq(2, 0, 0, 0)
        - k(4.0) * ex2 * o.sq(1, 0, 0, 1)
        - ex2 * ey2 * ey2
        + o.g(1, 1, 1, 1) * ey2
        - o.sq(1, 0, 0, 1) * ey2
        - o.sq(1, 0, 1, 0) * ey2
        - t_xx_cxy_cxy
        + re2(o.g(1, 0, 0, 1) * o.g(1, 2, 1, 0));
    let xi1 = o.g(3, 3, 0, 0) - k(9.0) * o.g(2, 2, 0, 0) * ex2 + k(12.0) * ex2 * ex2 * ex2
        - k(2.0) * o.g(2, 2, 0, 0) * ey2
        + o.g(1, 1, 2, 2)
        - k(8.0) * ex2 * o.g(1, 1, 1, 1)
        - k(4.0) * o.g(1, 1, 1, 1) * ey2
        + k(2.0) * o.g(2, 2, 1, 1)
        - ex2 * o.g(0, 0, 2, 2)
        + k(4.0) * ex2 * ey2 * ey2
        + k(8.0) * ex2 * ex2 * ey2
        + k(18.0) * ex2 * o.sq(2, 0, 0, 0)
        - o.sq(3, 0, 0, 0)
        - k(9.0) * o.sq(2, 1, 0, 0)
        + k(2.0) * ex2 * o.sq(0, 0, 2, 0)
        - k(4.0) * o.sq(1, 0, 1, 1)
        + k(8.0) * o.sq(1, 0, 0, 1) * ey2
        + k(8.0) * o.sq(1, 0, 1, 0) * ey2
        - o.sq(1, 0, 2, 0)
        - o.sq(0, 1, 2, 0)
        + k(16.0) * ex2 * o.sq(1, 0, 0, 1)
        - k(2.0) * o.sq(2, 0, 0, 1)
        + k(16.0) * ex2 * o.sq(1, 0, 1, 0)
        - o.g(1, 0, 1, 0) * o.c(2, 1, 1, 0)
        + k(4.0) * o.sq(2, 0, 0, 0) * ey2
        - k(2.0) * o.sq(2, 0, 1, 0)
        - re2(k(3.0) * o.g(3, 1, 0, 0) * o.c(2, 0, 0, 0)
            + k(2.0) * o.g(1, 1, 1, 0) * o.g(0, 0, 1, 2)
            + o.g(1, 1, 2, 0) * o.c(0, 0, 2, 0)
            - k(4.0) * t_xy_xcy_cyy
            + k(2.0) * o.g(1, 0, 1, 0) * o.c(1, 0, 2, 1)
            + o.g(1, 0, 0, 1) * o.g(0, 1, 2, 1)
            + k(2.0) * o.g(1, 2, 0, 0) * o.g(1, 0, 1, 1)
            + k(2.0) * o.g(2, 0, 0, 0) * o.c(2, 0, 1, 1)
            + o.g(2, 1, 0, 0) * o.g(1, 0, 1, 1)
            + k(4.0) * o.g(1, 0, 0, 1) * o.g(1, 2, 1, 0)
            - k(8.0) * t_xx_cxy_cxy);
    [
        phi1, phi2, phi3, psi1, psi2, psi3, psi4, lambda1, lambda2, lambda3, lambda4, lambda5,
        lambda6, xi1,
    ]
}
