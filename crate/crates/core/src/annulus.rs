//! Domain types shared by every other module: the annulus, circles, polar
//! grids, sampled and point-evaluable functions, and points of C².

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Version tag written into every JSON document produced by this crate.
pub const SCHEMA_VERSION: u32 = 1;

/// The closed ring `r1 <= |z| <= r2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AnnulusWire")]
pub struct Annulus {
    r1: f64,
    r2: f64,
}

#[derive(Deserialize)]
struct AnnulusWire {
    r1: f64,
    r2: f64,
}

impl TryFrom<AnnulusWire> for Annulus {
    type Error = Error;

    fn try_from(w: AnnulusWire) -> Result<Self> {
        Annulus::new(w.r1, w.r2)
    }
}

impl Annulus {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        if !(r1.is_finite() && r2.is_finite() && r1 > 0.0 && r1 < r2) {
            return Err(Error::Parameter(format!(
                "annulus needs 0 < r1 < r2 < inf, got r1 = {r1}, r2 = {r2}"
            )));
        }
        Ok(Self { r1, r2 })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    /// Radius `(r1 + r2) / 2` of the circles whose leaves tile `Ω±(A)`.
    pub fn mid_radius(&self) -> f64 {
        0.5 * (self.r1 + self.r2)
    }

    /// Half width `(r2 - r1) / 2`, the bound on centers of mid-radius
    /// circles lying in the interior.
    pub fn half_width(&self) -> f64 {
        0.5 * (self.r2 - self.r1)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        self.r1 <= r && r <= self.r2
    }
}

/// The circle `|ζ - a| = ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircleWire")]
pub struct CircleSpec {
    center: Complex64,
    radius: f64,
}

#[derive(Deserialize)]
struct CircleWire {
    center: Complex64,
    radius: f64,
}

impl TryFrom<CircleWire> for CircleSpec {
    type Error = Error;

    fn try_from(w: CircleWire) -> Result<Self> {
        CircleSpec::new(w.center, w.radius)
    }
}

impl CircleSpec {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0 && center.re.is_finite() && center.im.is_finite())
        {
            return Err(Error::Parameter(format!(
                "circle needs a finite center and radius > 0, got a = {center}, rho = {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `a + ρ e^{iθ}`.
    pub fn point(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }

    /// True iff the origin lies inside the open disc.
    pub fn surrounds_origin(&self) -> bool {
        self.center.norm() < self.radius
    }
}

/// Placement of the grid radii between `r1` and `r2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadialLayout {
    Uniform,
    /// `r_i²` are Chebyshev–Lobatto points on `[r1², r2²]`.
    #[default]
    #[serde(alias = "chebyshev")]
    Cheb,
}

impl std::str::FromStr for RadialLayout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "cheb" | "chebyshev" => Ok(Self::Cheb),
            other => Err(Error::Parameter(format!("unknown radial layout '{other}'"))),
        }
    }
}

/// Tensor grid of `radii × n_theta` equally spaced angles `θ_j = 2πj / n_theta`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarGrid {
    annulus: Annulus,
    radii: Vec<f64>,
    n_theta: usize,
}

impl PolarGrid {
    pub fn new(annulus: Annulus, radii: Vec<f64>, n_theta: usize) -> Result<Self> {
        if radii.len() < 2 {
            return Err(Error::Parameter(format!(
                "grid needs at least 2 radii, got {}",
                radii.len()
            )));
        }
        if n_theta < 8 || !n_theta.is_power_of_two() {
            return Err(Error::Parameter(format!(
                "n_theta must be a power of two >= 8, got {n_theta}"
            )));
        }
        if radii.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Parameter("radii must be strictly increasing".into()));
        }
        if radii[0] != annulus.r1() || radii[radii.len() - 1] != annulus.r2() {
            return Err(Error::Parameter(format!(
                "radii must start at r1 = {} and end at r2 = {}",
                annulus.r1(),
                annulus.r2()
            )));
        }
        Ok(Self {
            annulus,
            radii,
            n_theta,
        })
    }

    pub fn annulus(&self) -> Annulus {
        self.annulus
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn n_r(&self) -> usize {
        self.radii.len()
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn theta(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_theta as f64
    }

    /// Grid node `radii[i] · e^{iθ_j}`.
    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        Complex64::from_polar(self.radii[i], self.theta(j))
    }
}

/// Build a polar grid on `annulus`.
pub fn make_grid(
    annulus: Annulus,
    n_r: usize,
    n_theta: usize,
    layout: RadialLayout,
) -> Result<PolarGrid> {
    if n_r < 2 {
        return Err(Error::Parameter(format!("n_r must be >= 2, got {n_r}")));
    }
    let (r1, r2) = (annulus.r1(), annulus.r2());
    let last = (n_r - 1) as f64;
    let mut radii: Vec<f64> = match layout {
        RadialLayout::Uniform => (0..n_r)
            .map(|i| r1 + (r2 - r1) * i as f64 / last)
            .collect(),
        RadialLayout::Cheb => {
            let (s1, s2) = (r1 * r1, r2 * r2);
            let (mid, half) = (0.5 * (s1 + s2), 0.5 * (s2 - s1));
            (0..n_r)
                .map(|i| (mid - half * (PI * i as f64 / last).cos()).sqrt())
                .collect()
        }
    };
    radii[0] = r1;
    radii[n_r - 1] = r2;
    PolarGrid::new(annulus, radii, n_theta)
}

/// A complex-valued function that can be evaluated pointwise on the annulus.
///
/// Implementations must be deterministic.
pub trait AnnulusFunction {
    fn eval(&self, z: Complex64) -> Complex64;

    fn describe(&self) -> Option<&str> {
        None
    }
}

impl<T: AnnulusFunction + ?Sized> AnnulusFunction for &T {
    fn eval(&self, z: Complex64) -> Complex64 {
        (**self).eval(z)
    }

    fn describe(&self) -> Option<&str> {
        (**self).describe()
    }
}

impl<T: AnnulusFunction + ?Sized> AnnulusFunction for Box<T> {
    fn eval(&self, z: Complex64) -> Complex64 {
        (**self).eval(z)
    }

    fn describe(&self) -> Option<&str> {
        (**self).describe()
    }
}

/// Closure-backed [`AnnulusFunction`] with an optional tag.
pub struct FnFunction<F> {
    f: F,
    tag: Option<String>,
}

impl<F: Fn(Complex64) -> Complex64> FnFunction<F> {
    pub fn new(f: F) -> Self {
        Self { f, tag: None }
    }

    pub fn tagged(tag: impl Into<String>, f: F) -> Self {
        Self {
            f,
            tag: Some(tag.into()),
        }
    }
}

impl<F: Fn(Complex64) -> Complex64> AnnulusFunction for FnFunction<F> {
    fn eval(&self, z: Complex64) -> Complex64 {
        (self.f)(z)
    }

    fn describe(&self) -> Option<&str> {
        self.tag.as_deref()
    }
}

impl<F> fmt::Debug for FnFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnFunction").field("tag", &self.tag).finish()
    }
}

pub(crate) fn checked_eval<F: AnnulusFunction + ?Sized>(f: &F, z: Complex64) -> Result<Complex64> {
    let value = f.eval(z);
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Evaluation { z, value })
    }
}

/// Values of a function on a [`PolarGrid`]; `values[i][j] = f(radii[i] e^{iθ_j})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SampledWire", into = "SampledWire")]
pub struct SampledAnnulusFunction {
    grid: PolarGrid,
    values: Vec<Vec<Complex64>>,
}

#[derive(Serialize, Deserialize)]
struct SampledWire {
    #[serde(default = "default_schema")]
    schema_version: u32,
    r1: f64,
    r2: f64,
    radii: Vec<f64>,
    n_theta: usize,
    values: Vec<Vec<Complex64>>,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

impl TryFrom<SampledWire> for SampledAnnulusFunction {
    type Error = Error;

    fn try_from(w: SampledWire) -> Result<Self> {
        let grid = PolarGrid::new(Annulus::new(w.r1, w.r2)?, w.radii, w.n_theta)?;
        SampledAnnulusFunction::new(grid, w.values)
    }
}

impl From<SampledAnnulusFunction> for SampledWire {
    fn from(s: SampledAnnulusFunction) -> Self {
        SampledWire {
            schema_version: SCHEMA_VERSION,
            r1: s.grid.annulus.r1(),
            r2: s.grid.annulus.r2(),
            radii: s.grid.radii,
            n_theta: s.grid.n_theta,
            values: s.values,
        }
    }
}

impl SampledAnnulusFunction {
    pub fn new(grid: PolarGrid, values: Vec<Vec<Complex64>>) -> Result<Self> {
        if values.len() != grid.n_r() || values.iter().any(|row| row.len() != grid.n_theta()) {
            return Err(Error::Shape(format!(
                "values must be {} x {}, got {} rows with lengths {:?}",
                grid.n_r(),
                grid.n_theta(),
                values.len(),
                values.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        for (i, row) in values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::Evaluation {
                        z: grid.point(i, j),
                        value: *v,
                    });
                }
            }
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: PolarGrid) -> Self {
        let values = vec![vec![Complex64::new(0.0, 0.0); grid.n_theta()]; grid.n_r()];
        Self { grid, values }
    }

    pub fn grid(&self) -> &PolarGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Vec<Complex64>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.values[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i][j]
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Vec<Complex64>] {
        &mut self.values
    }

    /// `max |f|` over the grid.
    pub fn sup_norm(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// `max |self - other|` over the grid; grids must match.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Shape("grids differ".into()));
        }
        Ok(self
            .values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Pointwise `alpha · self + beta · other`.
    pub fn linear_combination(
        &self,
        alpha: Complex64,
        other: &Self,
        beta: Complex64,
    ) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::Shape("grids differ".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| alpha * x + beta * y).collect())
            .collect();
        Ok(Self {
            grid: self.grid.clone(),
            values,
        })
    }
}

/// Sample `f` at every grid node.
pub fn sample<F: AnnulusFunction + ?Sized>(f: &F, grid: &PolarGrid) -> Result<SampledAnnulusFunction> {
    let mut values = Vec::with_capacity(grid.n_r());
    for i in 0..grid.n_r() {
        let row = (0..grid.n_theta())
            .map(|j| checked_eval(f, grid.point(i, j)))
            .collect::<Result<Vec<_>>>()?;
        values.push(row);
    }
    Ok(SampledAnnulusFunction {
        grid: grid.clone(),
        values,
    })
}

/// Whether `c` lies in the annulus and surrounds the origin.
///
/// Uses `min |ζ| = ρ - |a|` and `max |ζ| = ρ + |a|` over the circle; with
/// `strict` the circle must lie in the interior of the annulus.
pub fn circle_in_annulus_surrounding_origin(c: &CircleSpec, annulus: &Annulus, strict: bool) -> bool {
    let d = c.center().norm();
    let rho = c.radius();
    if d >= rho {
        return false;
    }
    let (lo, hi) = (rho - d, rho + d);
    if strict {
        lo > annulus.r1() && hi < annulus.r2()
    } else {
        lo >= annulus.r1() && hi <= annulus.r2()
    }
}

/// Random circle strictly inside the annulus and surrounding the origin.
///
/// The center is uniform in the disc of radius `0.9·(r2 - r1)/2`; the
/// radius is then uniform over the middle 96% of the admissible range
/// `(r1 + |a|, r2 - |a|)`.
pub fn random_admissible_circle(rng: &mut impl Rng, annulus: &Annulus) -> CircleSpec {
    let d = 0.9 * annulus.half_width() * rng.gen::<f64>().sqrt();
    let a = Complex64::from_polar(d, 2.0 * PI * rng.gen::<f64>());
    let span = annulus.r2() - annulus.r1() - 2.0 * d;
    let rho = annulus.r1() + d + span * rng.gen_range(0.02..0.98);
    CircleSpec { center: a, radius: rho }
}

/// A point `(z, w)` of C². The totally real plane `Σ` is `w = z̄`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct C2Point {
    pub z: Complex64,
    pub w: Complex64,
}

impl C2Point {
    pub fn new(z: Complex64, w: Complex64) -> Self {
        Self { z, w }
    }

    /// The point `(ζ, ζ̄)` of `Σ`.
    pub fn on_sigma(zeta: Complex64) -> Self {
        Self {
            z: zeta,
            w: zeta.conj(),
        }
    }

    /// The reflection `(z, w) ↦ (w̄, z̄)` exchanging `Ω⁺(A)` and `Ω⁻(A)`.
    pub fn reflected(&self) -> Self {
        Self {
            z: self.w.conj(),
            w: self.z.conj(),
        }
    }

    pub fn dist(&self, other: &Self) -> f64 {
        ((self.z - other.z).norm_sqr() + (self.w - other.w).norm_sqr()).sqrt()
    }
}
