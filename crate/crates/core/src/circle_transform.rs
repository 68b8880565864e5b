//! Quadrature and spectral transforms on circles.
//!
//! All circle integrals use the equal-weight trapezoidal rule, which is
//! spectrally accurate for smooth periodic integrands. Fourier coefficients
//! use a forward FFT scaled by `1/n`, so that bin `k mod n` holds `c_k`;
//! only `|k| <= n/2 - 1` is ever read back (the Nyquist bin is ambiguous).

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::annulus::{
    checked_eval, Annulus, AnnulusFunction, CircleSpec, PolarGrid, SampledAnnulusFunction,
    SCHEMA_VERSION,
};
use crate::error::{Error, Result};

/// Default node count for circle quadratures.
pub const DEFAULT_NODES: usize = 256;

/// Evaluation points closer than this to the integration circle are refused.
pub const SINGULAR_PROXIMITY: f64 = 1e-9;

/// Abel summation parameter `t`, `0 < t < 1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct AbelParameter(f64);

impl AbelParameter {
    pub fn new(t: f64) -> Result<Self> {
        if t > 0.0 && t < 1.0 {
            Ok(Self(t))
        } else {
            Err(Error::Parameter(format!("Abel parameter must lie in (0,1), got {t}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for AbelParameter {
    type Error = Error;

    fn try_from(t: f64) -> Result<Self> {
        Self::new(t)
    }
}

impl From<AbelParameter> for f64 {
    fn from(t: AbelParameter) -> f64 {
        t.0
    }
}

/// Per-radius Fourier coefficients `c_k(r_i)` for `k_min <= k <= k_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableWire", into = "TableWire")]
pub struct RadialFourierTable {
    grid: PolarGrid,
    k_min: i64,
    k_max: i64,
    /// `coeffs[k - k_min][i]`.
    coeffs: Vec<Vec<Complex64>>,
    /// `max |f|` over the source grid, used to scale relative tolerances.
    sup_norm: f64,
}

#[derive(Serialize, Deserialize)]
struct TableWire {
    #[serde(default)]
    schema_version: Option<u32>,
    k_min: i64,
    k_max: i64,
    r1: f64,
    r2: f64,
    n_theta: usize,
    radii: Vec<f64>,
    coeffs: Vec<Vec<Complex64>>,
    #[serde(default)]
    sup_norm: Option<f64>,
}

impl TryFrom<TableWire> for RadialFourierTable {
    type Error = Error;

    fn try_from(w: TableWire) -> Result<Self> {
        let grid = PolarGrid::new(Annulus::new(w.r1, w.r2)?, w.radii, w.n_theta)?;
        RadialFourierTable::new(grid, w.k_min, w.k_max, w.coeffs, w.sup_norm)
    }
}

impl From<RadialFourierTable> for TableWire {
    fn from(t: RadialFourierTable) -> Self {
        TableWire {
            schema_version: Some(SCHEMA_VERSION),
            k_min: t.k_min,
            k_max: t.k_max,
            r1: t.grid.annulus().r1(),
            r2: t.grid.annulus().r2(),
            n_theta: t.grid.n_theta(),
            radii: t.grid.radii().to_vec(),
            coeffs: t.coeffs,
            sup_norm: Some(t.sup_norm),
        }
    }
}

fn check_band(k_min: i64, k_max: i64, n: usize) -> Result<()> {
    let cutoff = n as i64 / 2 - 1;
    if k_min > 0 || k_max < 0 || -k_min > cutoff || k_max > cutoff {
        return Err(Error::Parameter(format!(
            "harmonic range [{k_min}, {k_max}] must contain 0 and stay within ±{cutoff} for {n} samples"
        )));
    }
    Ok(())
}

impl RadialFourierTable {
    /// Build a table from raw coefficients. When `sup_norm` is unknown the
    /// bound `max_i Σ_k |c_k(r_i)|` is used instead.
    pub fn new(
        grid: PolarGrid,
        k_min: i64,
        k_max: i64,
        coeffs: Vec<Vec<Complex64>>,
        sup_norm: Option<f64>,
    ) -> Result<Self> {
        check_band(k_min, k_max, grid.n_theta())?;
        let rows = (k_max - k_min + 1) as usize;
        if coeffs.len() != rows || coeffs.iter().any(|r| r.len() != grid.n_r()) {
            return Err(Error::Shape(format!(
                "coefficient table must be {rows} x {}",
                grid.n_r()
            )));
        }
        if coeffs.iter().flatten().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Parameter("non-finite Fourier coefficient".into()));
        }
        let sup_norm = sup_norm.unwrap_or_else(|| {
            (0..grid.n_r())
                .map(|i| coeffs.iter().map(|row| row[i].norm()).sum::<f64>())
                .fold(0.0, f64::max)
        });
        Ok(Self {
            grid,
            k_min,
            k_max,
            coeffs,
            sup_norm,
        })
    }

    pub fn grid(&self) -> &PolarGrid {
        &self.grid
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }

    pub fn k_max(&self) -> i64 {
        self.k_max
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    /// Profile `r_i ↦ c_k(r_i)`; zero outside the stored band.
    pub fn harmonic(&self, k: i64) -> Option<&[Complex64]> {
        if k < self.k_min || k > self.k_max {
            None
        } else {
            Some(&self.coeffs[(k - self.k_min) as usize])
        }
    }

    pub fn coeff(&self, k: i64, i: usize) -> Complex64 {
        self.harmonic(k).map_or(Complex64::new(0.0, 0.0), |h| h[i])
    }
}

/// Discrete Fourier coefficients `(1/n) Σ_j v_j e^{-ikθ_j}` for
/// `k_min..=k_max` of equally spaced samples starting at `θ_0 = 0`.
///
/// Entry `k - k_min` of the result holds `c_k`.
pub fn dft_coefficients(values: &[Complex64], k_min: i64, k_max: i64) -> Result<Vec<Complex64>> {
    let n = values.len();
    if n == 0 {
        return Err(Error::Parameter("no samples".into()));
    }
    if k_min > k_max || (k_max - k_min) as usize >= n {
        return Err(Error::Parameter(format!(
            "{n} samples cannot resolve harmonics [{k_min}, {k_max}]"
        )));
    }
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    Ok((k_min..=k_max)
        .map(|k| buf[k.rem_euclid(n as i64) as usize] * scale)
        .collect())
}

/// Trapezoidal mean `(1/n) Σ_j f(a + ρ e^{iθ_j})`.
pub fn circle_mean<F: AnnulusFunction + ?Sized>(
    f: &F,
    c: &CircleSpec,
    n_nodes: usize,
) -> Result<Complex64> {
    if n_nodes < 8 {
        return Err(Error::Parameter(format!("circle_mean needs >= 8 nodes, got {n_nodes}")));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n_nodes {
        acc += checked_eval(f, c.point(2.0 * PI * j as f64 / n_nodes as f64))?;
    }
    Ok(acc / n_nodes as f64)
}

/// Samples of `f` at `n` equally spaced nodes of `c`, starting at `θ = 0`.
pub fn sample_circle<F: AnnulusFunction + ?Sized>(
    f: &F,
    c: &CircleSpec,
    n: usize,
) -> Result<Vec<Complex64>> {
    (0..n)
        .map(|j| checked_eval(f, c.point(2.0 * PI * j as f64 / n as f64)))
        .collect()
}

/// Fourier table of a sampled function, one FFT per radius.
pub fn radial_fourier(
    f: &SampledAnnulusFunction,
    k_min: i64,
    k_max: i64,
) -> Result<RadialFourierTable> {
    let grid = f.grid();
    check_band(k_min, k_max, grid.n_theta())?;
    let n = grid.n_theta();
    let rows = (k_max - k_min + 1) as usize;
    let mut coeffs = vec![Vec::with_capacity(grid.n_r()); rows];
    let fft = FftPlanner::new().plan_fft_forward(n);
    let scale = 1.0 / n as f64;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for row in f.values() {
        buf.copy_from_slice(row);
        fft.process(&mut buf);
        for (slot, k) in coeffs.iter_mut().zip(k_min..=k_max) {
            slot.push(buf[k.rem_euclid(n as i64) as usize] * scale);
        }
    }
    RadialFourierTable::new(grid.clone(), k_min, k_max, coeffs, Some(f.sup_norm()))
}

/// Full-band table `|k| <= n_theta/2 - 1`.
pub fn radial_fourier_full(f: &SampledAnnulusFunction) -> Result<RadialFourierTable> {
    let cutoff = f.grid().n_theta() as i64 / 2 - 1;
    radial_fourier(f, -cutoff, cutoff)
}

/// Trapezoidal Cauchy integral `(1/2πi) ∮_c g(ζ) dζ / (ζ - z)` from `n`
/// equally spaced samples of `g` on `c` (starting at `θ = 0`).
pub fn cauchy_on_circle(samples: &[Complex64], c: &CircleSpec, z: Complex64) -> Result<Complex64> {
    let n = samples.len();
    let distance = ((z - c.center()).norm() - c.radius()).abs();
    if distance < SINGULAR_PROXIMITY {
        return Err(Error::SingularProximity {
            z,
            radius: c.radius(),
            distance,
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, g) in samples.iter().enumerate() {
        let e = Complex64::from_polar(c.radius(), 2.0 * PI * j as f64 / n as f64);
        acc += g * e / (c.center() + e - z);
    }
    Ok(acc / n as f64)
}

/// Cauchy integral `Φ_r(z)` of `f` over the circle `|ζ| = r`.
///
/// Inside the circle this is `f⁺(z)`, outside it is `-f⁻(z)`.
pub fn cauchy_integral<F: AnnulusFunction + ?Sized>(
    f: &F,
    r: f64,
    z: Complex64,
    n_nodes: usize,
) -> Result<Complex64> {
    let c = CircleSpec::new(Complex64::new(0.0, 0.0), r)?;
    if n_nodes < 8 {
        return Err(Error::Parameter(format!("cauchy_integral needs >= 8 nodes, got {n_nodes}")));
    }
    let distance = (z.norm() - r).abs();
    if distance < SINGULAR_PROXIMITY {
        return Err(Error::SingularProximity { z, radius: r, distance });
    }
    let samples = sample_circle(f, &c, n_nodes)?;
    cauchy_on_circle(&samples, &c, z)
}

/// `e^{2πi m/n}` for `m = 0..n`, so that `e^{ikθ_j}` is looked up exactly.
fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64))
        .collect()
}

fn abel_sum(table: &RadialFourierTable, t: AbelParameter, ks: impl Iterator<Item = i64> + Clone) -> SampledAnnulusFunction {
    let grid = table.grid().clone();
    let n = grid.n_theta();
    let roots = roots_of_unity(n);
    let mut out = SampledAnnulusFunction::zeros(grid);
    for (i, row) in out.values_mut().iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in ks.clone() {
                let damp = t.get().powi(k.unsigned_abs() as i32);
                let phase = roots[(k * j as i64).rem_euclid(n as i64) as usize];
                acc += table.coeff(k, i) * damp * phase;
            }
            *slot = acc;
        }
    }
    out
}

/// `f_t⁺(r e^{iθ}) = Σ_{k>=1} t^k c_k(r) e^{ikθ}` on the table's grid.
pub fn abel_plus(table: &RadialFourierTable, t: AbelParameter) -> SampledAnnulusFunction {
    abel_sum(table, t, 1..=table.k_max())
}

/// `f_t⁻(r e^{iθ}) = Σ_{k<=-1} t^{|k|} c_k(r) e^{ikθ}` on the table's grid.
pub fn abel_minus(table: &RadialFourierTable, t: AbelParameter) -> SampledAnnulusFunction {
    abel_sum(table, t, table.k_min()..=-1)
}

/// Poisson kernel of the unit disc, `(1 - t²) / (1 - 2t cos φ + t²)`.
pub fn poisson_kernel(t: f64, phi: f64) -> f64 {
    (1.0 - t * t) / (1.0 - 2.0 * t * phi.cos() + t * t)
}

/// Discrete Poisson integral of equally spaced circle samples, evaluated at
/// the disc point `t e^{iθ}`.
pub fn poisson_circle(f_on_circle: &[Complex64], t: AbelParameter, theta: f64) -> Complex64 {
    let n = f_on_circle.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, v) in f_on_circle.iter().enumerate() {
        acc += v * poisson_kernel(t.get(), theta - 2.0 * PI * j as f64 / n as f64);
    }
    acc / n as f64
}
