//! The eleven frequency integrals χ₁(f)…χ₁₁(f).
//!
//! Every integration variable is confined by the pulse factors to an
//! interval obtained by intersecting constraints of the form |a ± x| ≤ B,
//! where B is the pulse support. The rule is applied on that clipped
//! interval, which is the same as a tensor rule with the zero nodes pruned
//! but without the staircase error at the polygon edges.
//!
//! Each χ is written as nested one-dimensional integrals so that the
//! innermost integrals can be shared between outer nodes. The results are
//! identical to evaluating the full tensor rule on the same nodes.

use dashmap::DashMap;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::link::{LinkSpec, PulseSpectrum};

/// One-dimensional rule applied on each clipped interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Midpoint,
    GaussLegendre,
}

impl std::str::FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "midpoint" => Ok(Self::Midpoint),
            "gauss-legendre" | "gauss" => Ok(Self::GaussLegendre),
            _ => Err(Error::InvalidGrid(format!("unknown rule '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GridSpec {
    pub points_per_dim: usize,
    pub rule: Rule,
}

impl GridSpec {
    pub const DEFAULT_N: usize = 64;

    pub fn new(points_per_dim: usize, rule: Rule) -> Result<Self> {
        if points_per_dim < 4 {
            return Err(Error::InvalidGrid(format!(
                "need at least 4 points per dimension, got {points_per_dim}"
            )));
        }
        Ok(Self {
            points_per_dim,
            rule,
        })
    }

    pub fn midpoint(n: usize) -> Result<Self> {
        Self::new(n, Rule::Midpoint)
    }

    /// Reference nodes and weights on [−1, 1], exactly mirror-symmetric.
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        let n = self.points_per_dim;
        let mut v: Vec<(f64, f64)> = match self.rule {
            Rule::Midpoint => (0..n)
                .map(|i| (-1.0 + (2 * i + 1) as f64 / n as f64, 2.0 / n as f64))
                .collect(),
            Rule::GaussLegendre => {
                let g = gauss_quad::GaussLegendre::new(
                    std::num::NonZeroUsize::new(n).expect("points_per_dim is at least 4"),
                );
                let mut v: Vec<(f64, f64)> = g.iter().map(|(x, w)| (*x, *w)).collect();
                v.sort_by(|a, b| a.0.total_cmp(&b.0));
                v
            }
        };
        for i in 0..n / 2 {
            let j = n - 1 - i;
            let x = 0.5 * (v[j].0 - v[i].0);
            let w = 0.5 * (v[j].1 + v[i].1);
            v[i] = (-x, w);
            v[j] = (x, w);
        }
        if n % 2 == 1 {
            v[n / 2].0 = 0.0;
        }
        v
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            points_per_dim: Self::DEFAULT_N,
            rule: Rule::Midpoint,
        }
    }
}

/// How the second argument of the kernel is read in χ₃, χ₆ and χ₇.
///
/// `Derived` follows the delta products of the discrete sum; `Printed`
/// follows the integrand as typeset in the published table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChiConvention {
    #[default]
    Derived,
    Printed,
}

/// The eleven values at one frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSet {
    pub f: f64,
    pub values: [Complex64; 11],
}

impl ChiSet {
    /// χ_l for l in 1..=11.
    pub fn get(&self, l: usize) -> Complex64 {
        self.values[l - 1]
    }
}

struct Ctx<'a> {
    link: &'a LinkSpec,
    pulse: &'a PulseSpectrum,
    nodes: &'a [(f64, f64)],
    b: f64,
}

impl Ctx<'_> {
    fn p(&self, f: f64) -> f64 {
        self.pulse.value(f)
    }

    fn eta(&self, f1: f64, f2: f64, f: f64) -> Complex64 {
        crate::link::eta(f1, f2, f, self.link)
    }

    /// Interval of x with |x| ≤ B and |x − c| ≤ B for each centre c.
    fn clip(&self, shifts: &[f64]) -> (f64, f64) {
        let mut lo = -self.b;
        let mut hi = self.b;
        for &c in shifts {
            lo = lo.max(c - self.b);
            hi = hi.min(c + self.b);
        }
        (lo, hi)
    }

    fn integrate(&self, (lo, hi): (f64, f64), mut g: impl FnMut(f64) -> Complex64) -> Complex64 {
        if !(hi > lo) {
            return Complex64::new(0.0, 0.0);
        }
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(x, w) in self.nodes {
            acc += w * g(mid + half * x);
        }
        acc * half
    }

    /// ∫∫ P(f1)P(f2)P(f − f1 + f2) η(f1, f2, f) df1 df2.
    fn g_total(&self, f: f64) -> Complex64 {
        self.integrate(self.clip(&[]), |f1| self.p(f1) * self.g_inner_f2(f1, f))
    }

    /// ∫ P(f2)P(f − f1 + f2) η(f1, f2, f) df2.
    fn g_inner_f2(&self, f1: f64, f: f64) -> Complex64 {
        self.integrate(self.clip(&[f1 - f]), |f2| {
            self.p(f2) * self.p(f - f1 + f2) * self.eta(f1, f2, f)
        })
    }

    /// ∫ P(f1)P(f − f1 + f2) η(f1, f2, f) df1.
    fn g_inner_f1(&self, f2: f64, f: f64) -> Complex64 {
        self.integrate(self.clip(&[f + f2]), |f1| {
            self.p(f1) * self.p(f - f1 + f2) * self.eta(f1, f2, f)
        })
    }

    /// ∫ P(f1)² η(f1, s, f) df1.
    fn line(&self, s: f64, f: f64) -> Complex64 {
        self.integrate(self.clip(&[]), |f1| {
            let p = self.p(f1);
            p * p * self.eta(f1, s, f)
        })
    }

    fn chi(&self, l: usize, f: f64, conv: ChiConvention) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let printed = conv == ChiConvention::Printed;
        match l {
            1 | 2 => self.integrate(self.clip(&[]), |f1| {
                let p1 = self.p(f1);
                self.integrate(self.clip(&[f1 - f]), |f2| {
                    let p2 = self.p(f2);
                    let p3 = self.p(f - f1 + f2);
                    let w = p1 * p1 * p2 * p2 * p3 * p3;
                    if w == 0.0 {
                        return zero;
                    }
                    let e = self.eta(f1, f2, f);
                    if l == 1 {
                        Complex64::new(w * e.norm_sqr(), 0.0)
                    } else {
                        w * e * self.eta(f1, -(f - f1 + f2), f).conj()
                    }
                })
            }),
            3 => {
                let pf = self.p(f);
                if pf == 0.0 {
                    return zero;
                }
                if printed {
                    let s = self.line(f, f);
                    pf * pf * s * s
                } else {
                    Complex64::new(pf * pf * self.line(-f, f).norm_sqr(), 0.0)
                }
            }
            4 => self.integrate(self.clip(&[f]), |u| {
                let w = self.p(u) * self.p(f - u);
                if w == 0.0 {
                    return zero;
                }
                let a = self.integrate(self.clip(&[u]), |f1| {
                    self.p(f1) * self.p(f1 - u) * self.eta(f1, f1 - u, f)
                });
                let b = self.integrate(self.clip(&[u - f]), |f3| {
                    self.p(f3) * self.p(f - u + f3) * self.eta(u, f3, f)
                });
                w * a * b.conj()
            }),
            5 => self.integrate(self.clip(&[-f]), |u| {
                let w = self.p(u) * self.p(f + u);
                if w == 0.0 {
                    return zero;
                }
                let a = self.integrate(self.clip(&[-u]), |f1| {
                    self.p(f1) * self.p(f1 + u) * self.eta(f1, f1 + u, f)
                });
                let b = self.integrate(self.clip(&[f + u]), |f3| {
                    self.p(f3) * self.p(f + u - f3) * self.eta(f3, u, f).conj()
                });
                w * a * b
            }),
            6 => self.integrate(self.clip(&[-f]), |f2| {
                let w = self.p(f2) * self.p(f + f2);
                if w == 0.0 {
                    return zero;
                }
                let h = self.g_inner_f1(f2, f);
                let s = if printed { f + f2 } else { -(f + f2) };
                let k = self.integrate(self.clip(&[-f2]), |f3| {
                    self.p(f3) * self.p(f2 + f3) * self.eta(f3, s, f).conj()
                });
                w * h * k
            }),
            7 => {
                let pf = self.p(f);
                if pf == 0.0 {
                    return zero;
                }
                let s = if printed { f } else { -f };
                pf * self.line(s, f) * self.g_total(f).conj()
            }
            8 => self.integrate(self.clip(&[]), |f1| {
                let p1 = self.p(f1);
                Complex64::new(p1 * p1 * self.g_inner_f2(f1, f).norm_sqr(), 0.0)
            }),
            9 => self.integrate(self.clip(&[]), |f1| {
                let p1 = self.p(f1);
                if p1 == 0.0 {
                    return zero;
                }
                let g = self.g_inner_f2(f1, f);
                let j = self.integrate(self.clip(&[f - f1]), |f3| {
                    self.p(f3) * self.p(f - f1 - f3) * self.eta(f3, -f1, f).conj()
                });
                p1 * p1 * g * j
            }),
            10 => self.integrate(self.clip(&[]), |f2| {
                let p2 = self.p(f2);
                Complex64::new(p2 * p2 * self.g_inner_f1(f2, f).norm_sqr(), 0.0)
            }),
            11 => Complex64::new(self.g_total(f).norm_sqr(), 0.0),
            _ => unreachable!("l checked by caller"),
        }
    }
}

fn check_args(l: usize, f: f64, pulse: &PulseSpectrum) -> Result<()> {
    if !(1..=11).contains(&l) {
        return Err(Error::ChiIndex(l));
    }
    let limit = 3.0 * pulse.support();
    if !f.is_finite() || f.abs() > limit * (1.0 + 1e-12) {
        return Err(Error::FrequencyRange { f, limit });
    }
    Ok(())
}

/// χ_l(f) on the given grid, without caching.
pub fn chi(
    l: usize,
    f: f64,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    grid: &GridSpec,
) -> Result<Complex64> {
    chi_with(l, f, link, pulse, grid, ChiConvention::Derived)
}

pub fn chi_with(
    l: usize,
    f: f64,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    grid: &GridSpec,
    convention: ChiConvention,
) -> Result<Complex64> {
    check_args(l, f, pulse)?;
    let nodes = grid.nodes();
    let ctx = Ctx {
        link,
        pulse,
        nodes: &nodes,
        b: pulse.support(),
    };
    Ok(ctx.chi(l, f, convention))
}

/// χ values on a fixed link, pulse and grid, memoised per (l, f).
#[derive(Debug)]
pub struct ChiEvaluator {
    link: LinkSpec,
    pulse: PulseSpectrum,
    grid: GridSpec,
    convention: ChiConvention,
    nodes: Vec<(f64, f64)>,
    cache: DashMap<(u8, u64), Complex64>,
}

impl ChiEvaluator {
    pub fn new(link: LinkSpec, pulse: PulseSpectrum, grid: GridSpec) -> Self {
        Self::with_convention(link, pulse, grid, ChiConvention::Derived)
    }

    pub fn with_convention(
        link: LinkSpec,
        pulse: PulseSpectrum,
        grid: GridSpec,
        convention: ChiConvention,
    ) -> Self {
        let nodes = grid.nodes();
        Self {
            link,
            pulse,
            grid,
            convention,
            nodes,
            cache: DashMap::new(),
        }
    }

    pub fn link(&self) -> &LinkSpec {
        &self.link
    }

    pub fn pulse(&self) -> &PulseSpectrum {
        &self.pulse
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn chi(&self, l: usize, f: f64) -> Result<Complex64> {
        check_args(l, f, &self.pulse)?;
        let key = (l as u8, f.to_bits());
        if let Some(v) = self.cache.get(&key) {
            return Ok(*v);
        }
        let ctx = Ctx {
            link: &self.link,
            pulse: &self.pulse,
            nodes: &self.nodes,
            b: self.pulse.support(),
        };
        let v = ctx.chi(l, f, self.convention);
        self.cache.insert(key, v);
        Ok(v)
    }

    pub fn chi_set(&self, f: f64) -> Result<ChiSet> {
        let mut values = [Complex64::new(0.0, 0.0); 11];
        for (l, v) in values.iter_mut().enumerate() {
            *v = self.chi(l + 1, f)?;
        }
        Ok(ChiSet { f, values })
    }

    pub fn cached_len(&self) -> usize {
        self.cache.len()
    }
}

/// χ_l(f) for each grid, in the order given.
pub fn convergence_report(
    l: usize,
    f: f64,
    link: &LinkSpec,
    pulse: &PulseSpectrum,
    grids: &[GridSpec],
) -> Result<Vec<(usize, Complex64)>> {
    if grids.len() < 2 {
        return Err(Error::InvalidGrid("need at least two grids".into()));
    }
    grids
        .iter()
        .map(|g| chi(l, f, link, pulse, g).map(|v| (g.points_per_dim, v)))
        .collect()
}
