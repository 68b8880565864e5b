//! Zero circle means through radial Fourier profiles.
//!
//! A continuous `f` on the annulus has zero mean on every circle in the
//! annulus that surrounds the origin iff `c_0(r) ≡ 0` and, for `n ≠ 0`,
//!
//! ```text
//! c_n(r) = r^{-|n|} (a_{n,0} + a_{n,1} r² + … + a_{n,|n|-1} r^{2(|n|-1)}).
//! ```
//!
//! The harmonic `n` then contributes `Σ_j a_{n,j} z^j / z̄^{n-j}` for `n > 0`
//! and `Σ_j a_{n,j} z̄^j / z^{|n|-j}` for `n < 0`. This module fits those
//! coefficients from sampled data, reports how well the profiles match, and
//! synthesizes functions from coefficient sets.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::annulus::{Annulus, AnnulusFunction, SampledAnnulusFunction, SCHEMA_VERSION};
use crate::circle_transform::{radial_fourier_full, RadialFourierTable};
use crate::error::{Error, Result};
use crate::Side;

/// Default verdict tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Residual denominators never drop below this fraction of the largest
/// possible profile norm, `sup|f| · sqrt(n_r)`.
pub const RESIDUAL_FLOOR_REL: f64 = 1e-6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The arrays `a_n = [a_{n,0}, …, a_{n,|n|-1}]` for `1 <= |n| <= n_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CoeffWire", into = "CoeffWire")]
pub struct ZeroMeanCoefficients {
    n_max: usize,
    /// `plus[n-1] = a_n`
    plus: Vec<Vec<Complex64>>,
    /// `minus[n-1] = a_{-n}`
    minus: Vec<Vec<Complex64>>,
}

#[derive(Serialize, Deserialize)]
struct CoeffWire {
    #[serde(default)]
    schema_version: Option<u32>,
    n_max: usize,
    plus: Vec<Vec<Complex64>>,
    minus: Vec<Vec<Complex64>>,
}

impl TryFrom<CoeffWire> for ZeroMeanCoefficients {
    type Error = Error;

    fn try_from(w: CoeffWire) -> Result<Self> {
        ZeroMeanCoefficients::new(w.n_max, w.plus, w.minus)
    }
}

impl From<ZeroMeanCoefficients> for CoeffWire {
    fn from(c: ZeroMeanCoefficients) -> Self {
        CoeffWire {
            schema_version: Some(SCHEMA_VERSION),
            n_max: c.n_max,
            plus: c.plus,
            minus: c.minus,
        }
    }
}

impl ZeroMeanCoefficients {
    pub fn new(n_max: usize, plus: Vec<Vec<Complex64>>, minus: Vec<Vec<Complex64>>) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Parameter("n_max must be >= 1".into()));
        }
        for (name, side) in [("plus", &plus), ("minus", &minus)] {
            if side.len() != n_max {
                return Err(Error::Shape(format!(
                    "'{name}' must hold {n_max} harmonics, got {}",
                    side.len()
                )));
            }
            for (idx, arr) in side.iter().enumerate() {
                if arr.len() != idx + 1 {
                    return Err(Error::Shape(format!(
                        "'{name}' harmonic {} needs {} entries, got {}",
                        idx + 1,
                        idx + 1,
                        arr.len()
                    )));
                }
                if arr.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
                    return Err(Error::Parameter(format!("non-finite entry in '{name}'")));
                }
            }
        }
        Ok(Self { n_max, plus, minus })
    }

    pub fn zeros(n_max: usize) -> Result<Self> {
        let side = || (1..=n_max).map(|n| vec![ZERO; n]).collect::<Vec<_>>();
        Self::new(n_max, side(), side())
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `a_n` for `n ≠ 0`, `|n| <= n_max`.
    pub fn harmonic(&self, n: i64) -> Option<&[Complex64]> {
        let m = n.unsigned_abs() as usize;
        if n == 0 || m > self.n_max {
            None
        } else if n > 0 {
            Some(&self.plus[m - 1])
        } else {
            Some(&self.minus[m - 1])
        }
    }

    pub fn get(&self, n: i64, j: usize) -> Complex64 {
        self.harmonic(n).and_then(|a| a.get(j).copied()).unwrap_or(ZERO)
    }

    /// Set `a_{n,j}`.
    pub fn set(&mut self, n: i64, j: usize, value: Complex64) -> Result<()> {
        let m = n.unsigned_abs() as usize;
        if n == 0 || m > self.n_max || j >= m {
            return Err(Error::Parameter(format!(
                "no coefficient a_({n},{j}) for n_max = {}",
                self.n_max
            )));
        }
        let side = if n > 0 { &mut self.plus } else { &mut self.minus };
        side[m - 1][j] = value;
        Ok(())
    }

    /// Builder form of [`set`](Self::set) for small literal sets.
    pub fn with(mut self, n: i64, j: usize, value: Complex64) -> Result<Self> {
        self.set(n, j, value)?;
        Ok(self)
    }

    /// Copy keeping only one side (the other side zeroed).
    pub fn side_only(&self, side: Side) -> Self {
        let zero = |v: &Vec<Vec<Complex64>>| v.iter().map(|a| vec![ZERO; a.len()]).collect();
        match side {
            Side::Plus => Self {
                n_max: self.n_max,
                plus: self.plus.clone(),
                minus: zero(&self.minus),
            },
            Side::Minus => Self {
                n_max: self.n_max,
                plus: zero(&self.plus),
                minus: self.minus.clone(),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.plus.iter().chain(&self.minus).flatten().all(|a| *a == ZERO)
    }

    /// Entrywise `max |a - b|`, treating missing harmonics as zero.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.n_max.max(other.n_max) as i64;
        let mut worst: f64 = 0.0;
        for h in (-n..=n).filter(|h| *h != 0) {
            for j in 0..h.unsigned_abs() as usize {
                worst = worst.max((self.get(h, j) - other.get(h, j)).norm());
            }
        }
        worst
    }

    /// `(n, j, a_{n,j})` over all entries, positive harmonics first.
    pub fn entries(&self) -> impl Iterator<Item = (i64, usize, Complex64)> + '_ {
        let plus = self.plus.iter().enumerate().flat_map(|(idx, a)| {
            a.iter().enumerate().map(move |(j, v)| (idx as i64 + 1, j, *v))
        });
        let minus = self.minus.iter().enumerate().flat_map(|(idx, a)| {
            a.iter().enumerate().map(move |(j, v)| (-(idx as i64) - 1, j, *v))
        });
        plus.chain(minus)
    }

    /// `Σ_{n>=1} t^n Σ_j a_{n,j} z^j v^{n-1-j}`.
    ///
    /// With `v = 1/w` this is the holomorphic kernel `G⁺(z, w)` (`t = 1`) or
    /// `w F_t⁺(z, w)`.
    pub fn plus_kernel(&self, z: Complex64, v: Complex64, t: f64) -> Complex64 {
        Self::kernel(&self.plus, z, v, t)
    }

    /// `Σ_{n>=1} t^n Σ_j a_{-n,j} w^j u^{n-1-j}`; with `u = 1/z` this is
    /// `G⁻(z, w)` (`t = 1`) or `z F_t⁻(z, w)`.
    pub fn minus_kernel(&self, w: Complex64, u: Complex64, t: f64) -> Complex64 {
        Self::kernel(&self.minus, w, u, t)
    }

    fn kernel(side: &[Vec<Complex64>], x: Complex64, y: Complex64, t: f64) -> Complex64 {
        let mut ypow = Vec::with_capacity(side.len());
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..side.len() {
            ypow.push(p);
            p *= y;
        }
        let mut total = ZERO;
        let mut damp = 1.0;
        for (idx, a) in side.iter().enumerate() {
            damp *= t;
            let m = idx;
            // homogeneous degree m: nested in x, powers of y carried alongside
            let mut acc = ZERO;
            for j in (0..=m).rev() {
                acc = acc * x + a[j] * ypow[m - j];
            }
            total += acc * damp;
        }
        total
    }

    /// `f⁺(z) = (1/z̄) G⁺(z, z̄)`.
    pub fn eval_plus(&self, z: Complex64) -> Complex64 {
        let v = 1.0 / z.conj();
        self.plus_kernel(z, v, 1.0) * v
    }

    /// `f⁻(z) = (1/z) G⁻(z, z̄)`.
    pub fn eval_minus(&self, z: Complex64) -> Complex64 {
        let u = 1.0 / z;
        self.minus_kernel(z.conj(), u, 1.0) * u
    }
}

/// Outcome of the zero-mean test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroMeanReport {
    /// `max_r |c_0(r)|`.
    pub c0_norm: f64,
    /// Relative misfit per harmonic `n`, `-n_max..=n_max`. The entry for
    /// `n = 0` measures `c_0` against the empty basis (it must vanish).
    pub residuals: BTreeMap<i64, f64>,
    /// `Σ_{n_max < |n|} max_r |c_n(r)|` over the stored band.
    pub tail_mass: f64,
    pub verdict: bool,
    pub tol: f64,
}

impl ZeroMeanReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Monomial coefficients in `s` of `Σ_j b_j T_j(α s + β)`.
fn chebyshev_to_monomial(b: &[Complex64], alpha: f64, beta: f64) -> Vec<Complex64> {
    let deg = b.len();
    let mut out = vec![ZERO; deg];
    let mut prev = vec![0.0; deg + 1];
    let mut cur = vec![0.0; deg + 1];
    cur[0] = 1.0;
    for (j, bj) in b.iter().enumerate() {
        for (o, t) in out.iter_mut().zip(&cur) {
            *o += bj * t;
        }
        // T_1 = (αs + β) T_0, T_{j+1} = 2(αs + β) T_j - T_{j-1}
        let factor = if j == 0 { 1.0 } else { 2.0 };
        let mut next = vec![0.0; deg + 1];
        for k in 0..deg {
            next[k] += factor * beta * cur[k] - prev[k];
            next[k + 1] += factor * alpha * cur[k];
        }
        prev = std::mem::replace(&mut cur, next);
    }
    out
}

/// `[T_0(u), …, T_{m-1}(u)]`.
fn chebyshev_values(u: f64, m: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m);
    let (mut prev, mut cur) = (1.0, u);
    for j in 0..m {
        match j {
            0 => out.push(1.0),
            1 => out.push(u),
            _ => {
                let next = 2.0 * u * cur - prev;
                prev = cur;
                cur = next;
                out.push(cur);
            }
        }
    }
    out
}

/// Least-squares fit of every harmonic profile `c_n(r)` to the form
/// `r^{-|n|} p_n(r²)` with `deg p_n = |n| - 1`.
///
/// The basis is Chebyshev in `u = (2r² - (r1² + r2²)) / (r2² - r1²)`,
/// weighted by `r^{-|n|}`, solved by QR and converted back to monomials in
/// `r²`.
pub fn fit_radial_profiles(
    table: &RadialFourierTable,
    annulus: &Annulus,
    n_max: usize,
    tol: f64,
) -> Result<(ZeroMeanCoefficients, ZeroMeanReport)> {
    let grid = table.grid();
    let n_r = grid.n_r();
    let band = table.k_max().min(-table.k_min());
    if n_max < 1 || n_max as i64 > band {
        return Err(Error::Parameter(format!(
            "n_max must lie in 1..={band} for this table, got {n_max}"
        )));
    }
    if n_r < n_max + 1 {
        return Err(Error::Parameter(format!(
            "{n_r} radii cannot determine harmonics up to {n_max} (need {})",
            n_max + 1
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }

    let (s1, s2) = (annulus.r1().powi(2), annulus.r2().powi(2));
    let alpha = 2.0 / (s2 - s1);
    let beta = -(s1 + s2) / (s2 - s1);
    let radii = grid.radii();
    let u: Vec<f64> = radii.iter().map(|r| alpha * r * r + beta).collect();
    let floor = RESIDUAL_FLOOR_REL * table.sup_norm() * (n_r as f64).sqrt();

    let mut coeffs = ZeroMeanCoefficients::zeros(n_max)?;
    let mut residuals = BTreeMap::new();

    let c0 = table.harmonic(0).expect("band contains 0");
    let c0_norm = c0.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let c0_l2 = norm2(c0);
    residuals.insert(0, if c0_l2 == 0.0 { 0.0 } else { c0_l2 / c0_l2.max(floor) });

    for n in (-(n_max as i64)..=n_max as i64).filter(|n| *n != 0) {
        let m = n.unsigned_abs() as usize;
        let profile = table.harmonic(n).expect("n within band");
        let basis: Vec<Vec<f64>> = u.iter().map(|&ui| chebyshev_values(ui, m)).collect();
        let design = DMatrix::from_fn(n_r, m, |i, j| basis[i][j] * radii[i].powi(-(m as i32)));
        let rhs = DMatrix::from_fn(n_r, 2, |i, k| if k == 0 { profile[i].re } else { profile[i].im });

        let qr = design.clone().qr();
        let r = qr.r();
        let diag_max = (0..m).map(|k| r[(k, k)].abs()).fold(0.0, f64::max);
        let diag_min = (0..m).map(|k| r[(k, k)].abs()).fold(f64::INFINITY, f64::min);
        if !(diag_min > 1e-12 * diag_max) {
            return Err(Error::Conditioning(format!(
                "design matrix for harmonic {n} is rank deficient (|R| diag ratio {:e})",
                diag_min / diag_max
            )));
        }
        let qtb = qr.q().transpose() * &rhs;
        let sol = r
            .solve_upper_triangular(&qtb)
            .ok_or_else(|| Error::Conditioning(format!("triangular solve failed for harmonic {n}")))?;
        let fitted = &design * &sol;
        let misfit: f64 = (0..n_r)
            .map(|i| {
                let d = Complex64::new(fitted[(i, 0)], fitted[(i, 1)]) - profile[i];
                d.norm_sqr()
            })
            .sum::<f64>()
            .sqrt();
        let scale = norm2(profile).max(floor);
        residuals.insert(n, if misfit == 0.0 { 0.0 } else { misfit / scale });

        let cheb: Vec<Complex64> = (0..m).map(|j| Complex64::new(sol[(j, 0)], sol[(j, 1)])).collect();
        for (j, a) in chebyshev_to_monomial(&cheb, alpha, beta).into_iter().enumerate() {
            coeffs.set(n, j, a)?;
        }
    }

    let tail_mass = (n_max as i64 + 1..=band)
        .flat_map(|k| [k, -k])
        .chain((band + 1..=table.k_max()).chain(table.k_min()..-band))
        .filter_map(|k| table.harmonic(k))
        .map(|h| h.iter().map(|c| c.norm()).fold(0.0, f64::max))
        .sum();

    let verdict = c0_norm <= tol && residuals.values().all(|r| *r <= tol);
    Ok((
        coeffs,
        ZeroMeanReport {
            c0_norm,
            residuals,
            tail_mass,
            verdict,
            tol,
        },
    ))
}

/// Zero-mean test of sampled data: full-band radial transform followed by
/// [`fit_radial_profiles`].
pub fn check_zero_means(f: &SampledAnnulusFunction, n_max: usize, tol: f64) -> Result<ZeroMeanReport> {
    let table = radial_fourier_full(f)?;
    let annulus = f.grid().annulus();
    fit_radial_profiles(&table, &annulus, n_max, tol).map(|(_, report)| report)
}

/// Which part of a coefficient series a [`SeriesFunction`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Both,
    Plus,
    Minus,
}

/// Closed-form function built from [`ZeroMeanCoefficients`].
#[derive(Clone, Debug)]
pub struct SeriesFunction {
    coeffs: ZeroMeanCoefficients,
    part: Part,
    tag: String,
}

impl SeriesFunction {
    pub fn new(coeffs: ZeroMeanCoefficients, part: Part) -> Self {
        let base = match part {
            Part::Both => "zero-mean series",
            Part::Plus => "f+ series",
            Part::Minus => "f- series",
        };
        let tag = format!("{base} (n_max = {})", coeffs.n_max());
        Self { coeffs, part, tag }
    }

    pub fn coeffs(&self) -> &ZeroMeanCoefficients {
        &self.coeffs
    }

    pub fn part(&self) -> Part {
        self.part
    }
}

impl AnnulusFunction for SeriesFunction {
    fn eval(&self, z: Complex64) -> Complex64 {
        match self.part {
            Part::Both => self.coeffs.eval_plus(z) + self.coeffs.eval_minus(z),
            Part::Plus => self.coeffs.eval_plus(z),
            Part::Minus => self.coeffs.eval_minus(z),
        }
    }

    fn describe(&self) -> Option<&str> {
        Some(&self.tag)
    }
}

/// `f(z) = Σ_{n,j} a_{n,j} z^j / z̄^{n-j} + Σ_{n,j} a_{-n,j} z̄^j / z^{n-j}`.
pub fn synthesize(coeffs: &ZeroMeanCoefficients) -> SeriesFunction {
    SeriesFunction::new(coeffs.clone(), Part::Both)
}

/// Seeded random coefficients, scaled so that each monomial
/// `a_{n,j} z^j / z̄^{n-j}` has modulus at most `e^{-decay·n}` on `annulus`.
pub fn random_zero_mean(
    seed: u64,
    n_max: usize,
    decay: f64,
    annulus: &Annulus,
) -> Result<ZeroMeanCoefficients> {
    if n_max < 1 {
        return Err(Error::Parameter("random_zero_mean needs n_max >= 1".into()));
    }
    if !(decay > 0.0 && decay.is_finite()) {
        return Err(Error::Parameter(format!("decay must be positive, got {decay}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = ZeroMeanCoefficients::zeros(n_max)?;
    for m in 1..=n_max {
        let envelope = (-decay * m as f64).exp();
        for sign in [1i64, -1] {
            for j in 0..m {
                // |z^j / z̄^{m-j}| = r^{2j-m}
                let e = 2 * j as i32 - m as i32;
                let peak = annulus.r1().powi(e).max(annulus.r2().powi(e));
                let (x, y): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let unit = Complex64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2;
                coeffs.set(sign * m as i64, j, unit * (envelope / peak))?;
            }
        }
    }
    Ok(coeffs)
}
