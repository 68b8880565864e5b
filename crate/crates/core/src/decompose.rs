//! Splitting `f = f⁺ + f⁻` for functions with zero circle means.
//!
//! `f⁺` restricted to any admissible circle extends holomorphically into the
//! disc; `f⁻` extends holomorphically to the outside and vanishes at
//! infinity. Both parts are carried in closed form by the coefficients
//! `a_{n,j}`, so they can be evaluated anywhere on the annulus.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::annulus::{
    circle_in_annulus_surrounding_origin, sample, Annulus, AnnulusFunction, CircleSpec,
    SampledAnnulusFunction,
};
use crate::circle_transform::{
    abel_minus, abel_plus, dft_coefficients, radial_fourier_full, sample_circle, AbelParameter,
    RadialFourierTable,
};
use crate::error::{Error, Result};
use crate::zero_mean::{fit_radial_profiles, Part, SeriesFunction, ZeroMeanCoefficients, ZeroMeanReport};
use crate::Side;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub c0_residual: f64,
    pub tail_mass: f64,
    pub max_fit_residual: f64,
    /// `max |f⁺ + f⁻ - f|` over the source grid.
    pub reconstruction_error: f64,
}

/// `f = f⁺ + f⁻` in closed form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub coeffs: ZeroMeanCoefficients,
    pub diagnostics: Diagnostics,
}

impl Decomposition {
    pub fn plus(&self) -> SeriesFunction {
        SeriesFunction::new(self.coeffs.clone(), Part::Plus)
    }

    pub fn minus(&self) -> SeriesFunction {
        SeriesFunction::new(self.coeffs.clone(), Part::Minus)
    }
}

fn require_zero_mean(table: &RadialFourierTable, annulus: &Annulus, n_max: usize, tol: f64) -> Result<(ZeroMeanCoefficients, ZeroMeanReport)> {
    let (coeffs, report) = fit_radial_profiles(table, annulus, n_max, tol)?;
    if !report.verdict {
        return Err(Error::Rejected(Box::new(report)));
    }
    Ok((coeffs, report))
}

fn assemble(f: &SampledAnnulusFunction, coeffs: ZeroMeanCoefficients, report: &ZeroMeanReport) -> Result<Decomposition> {
    let both = SeriesFunction::new(coeffs.clone(), Part::Both);
    let reconstruction_error = sample(&both, f.grid())?.max_abs_diff(f)?;
    Ok(Decomposition {
        coeffs,
        diagnostics: Diagnostics {
            c0_residual: report.c0_norm,
            tail_mass: report.tail_mass,
            max_fit_residual: report.max_residual(),
            reconstruction_error,
        },
    })
}

/// Spectral splitting of sampled data. Inputs that fail the zero-mean test
/// are rejected with the report attached.
pub fn split(f: &SampledAnnulusFunction, n_max: usize, tol: f64) -> Result<Decomposition> {
    let table = radial_fourier_full(f)?;
    let (coeffs, report) = require_zero_mean(&table, &f.grid().annulus(), n_max, tol)?;
    assemble(f, coeffs, &report)
}

/// Default Abel schedule `t_k = 1 - 2^{-k}`, `k = 1..=12`.
pub fn default_schedule() -> Vec<AbelParameter> {
    (1..=12)
        .map(|k| AbelParameter::new(1.0 - 0.5f64.powi(k)).expect("in (0,1)"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbelStep {
    pub t: f64,
    /// `max |f_t⁺ - f⁺|` over the grid.
    pub plus_distance: f64,
    /// `max |f_t⁻ - f⁻|` over the grid.
    pub minus_distance: f64,
    /// Entrywise distance of the coefficients recovered at this `t` from
    /// the final ones.
    pub coeff_drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbelLog {
    pub steps: Vec<AbelStep>,
}

impl AbelLog {
    /// Whether both distance sequences are non-increasing up to `slack`.
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.steps.windows(2).all(|w| {
            w[1].plus_distance <= w[0].plus_distance + slack
                && w[1].minus_distance <= w[0].minus_distance + slack
        })
    }
}

/// Splitting through the Abel means `f_t^±`, `t ↗ 1`.
///
/// At each `t` the sampled means `f_t⁺ + f_t⁻` are transformed and fitted
/// again; undoing the damping `t^{|n|}` recovers `a_{n,j}`. The
/// decomposition returned is the one at the last `t`, and the log records
/// how far each `f_t^±` is from it.
pub fn abel_path_split(
    f: &SampledAnnulusFunction,
    n_max: usize,
    schedule: &[AbelParameter],
    tol: f64,
) -> Result<(Decomposition, AbelLog)> {
    if schedule.is_empty() {
        return Err(Error::Parameter("empty Abel schedule".into()));
    }
    if schedule.windows(2).any(|w| !(w[0].get() < w[1].get())) {
        return Err(Error::Parameter("Abel schedule must be strictly increasing".into()));
    }
    let annulus = f.grid().annulus();
    let table = radial_fourier_full(f)?;
    let (_, report) = require_zero_mean(&table, &annulus, n_max, tol)?;

    let mut means = Vec::with_capacity(schedule.len());
    let mut fitted = Vec::with_capacity(schedule.len());
    for &t in schedule {
        let plus = abel_plus(&table, t);
        let minus = abel_minus(&table, t);
        let mean = plus.linear_combination(Complex64::new(1.0, 0.0), &minus, Complex64::new(1.0, 0.0))?;
        let damped = radial_fourier_full(&mean)?;
        let coeffs = (damped.k_min()..=damped.k_max())
            .map(|k| {
                let undo = t.get().powi(-(k.unsigned_abs() as i32));
                damped.harmonic(k).expect("in band").iter().map(|c| c * undo).collect()
            })
            .collect();
        let undamped = RadialFourierTable::new(
            damped.grid().clone(),
            damped.k_min(),
            damped.k_max(),
            coeffs,
            Some(table.sup_norm()),
        )?;
        let (c, _) = fit_radial_profiles(&undamped, &annulus, n_max, tol)?;
        fitted.push(c);
        means.push((plus, minus));
    }

    let last = fitted.last().expect("schedule non-empty").clone();
    let plus_limit = sample(&SeriesFunction::new(last.clone(), Part::Plus), f.grid())?;
    let minus_limit = sample(&SeriesFunction::new(last.clone(), Part::Minus), f.grid())?;
    let mut steps = Vec::with_capacity(schedule.len());
    for ((t, (plus, minus)), c) in schedule.iter().zip(&means).zip(&fitted) {
        steps.push(AbelStep {
            t: t.get(),
            plus_distance: plus.max_abs_diff(&plus_limit)?,
            minus_distance: minus.max_abs_diff(&minus_limit)?,
            coeff_drift: c.max_abs_diff(&last),
        });
    }
    Ok((assemble(f, last, &report)?, AbelLog { steps }))
}

/// Largest Fourier coefficient of `g` on `c` in the index range forbidden
/// by the extension property of `side`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionResidual {
    pub circle: CircleSpec,
    pub side: Side,
    pub offending_coefficient_norm: f64,
}

/// Test whether `g` restricted to `c` extends holomorphically inside
/// (`Plus`: no `k < 0` modes) or outside with decay at infinity (`Minus`:
/// no `k >= 0` modes), from an `n_probe`-point FFT. The Nyquist bin counts
/// as offending on both sides.
pub fn check_circle_extension<F: AnnulusFunction + ?Sized>(
    g: &F,
    c: &CircleSpec,
    side: Side,
    n_probe: usize,
    annulus: &Annulus,
) -> Result<ExtensionResidual> {
    if !circle_in_annulus_surrounding_origin(c, annulus, false) {
        return Err(Error::Parameter(format!(
            "circle (a = {}, rho = {}) is not admissible in [{}, {}]",
            c.center(),
            c.radius(),
            annulus.r1(),
            annulus.r2()
        )));
    }
    if n_probe < 8 || n_probe % 2 != 0 {
        return Err(Error::Parameter(format!("n_probe must be even and >= 8, got {n_probe}")));
    }
    let samples = sample_circle(g, c, n_probe)?;
    let half = n_probe as i64 / 2;
    // k = -half is the Nyquist bin
    let coeffs = dft_coefficients(&samples, -half, half - 1)?;
    let offending = coeffs
        .iter()
        .zip(-half..half)
        .filter(|(_, k)| match side {
            Side::Plus => *k < 0,
            Side::Minus => *k >= 0 || *k == -half,
        })
        .map(|(v, _)| v.norm())
        .fold(0.0, f64::max);
    Ok(ExtensionResidual {
        circle: *c,
        side,
        offending_coefficient_norm: offending,
    })
}

/// Empirical Hölder exponent and constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HoelderEstimate {
    pub alpha: f64,
    pub constant: f64,
    /// Number of separation scales in the regression.
    pub scales: usize,
}

/// Log–log regression of the largest increment `|f(p) - f(q)|` against
/// `|p - q|` for chords of dyadic angular step `m = 1, 2, 4, …, n_theta/4`
/// on every grid circle. Each scale uses the distance of its maximizing pair.
///
/// The zero function returns `(1, 0)`. The slope is clamped to `(0, 1]`.
pub fn hoelder_estimate(f: &SampledAnnulusFunction) -> Result<HoelderEstimate> {
    let grid = f.grid();
    let n = grid.n_theta();
    let mut points = Vec::new();
    let mut m = 1;
    while m <= n / 4 {
        let mut best = (0.0, 0.0);
        for i in 0..grid.n_r() {
            for j in 0..n {
                let k = (j + m) % n;
                let inc = (f.get(i, j) - f.get(i, k)).norm();
                if inc > best.1 {
                    best = ((grid.point(i, j) - grid.point(i, k)).norm(), inc);
                }
            }
        }
        points.push(best);
        m *= 2;
    }
    if points.iter().all(|(_, inc)| *inc == 0.0) {
        return Ok(HoelderEstimate {
            alpha: 1.0,
            constant: 0.0,
            scales: points.len(),
        });
    }
    let used: Vec<(f64, f64)> = points
        .into_iter()
        .filter(|(d, inc)| *inc > 0.0 && *d > 0.0)
        .map(|(d, inc)| (d.ln(), inc.ln()))
        .collect();
    if used.len() < 3 {
        return Err(Error::Estimation(format!("only {} usable scales", used.len())));
    }
    let (lo, hi) = used
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (x, _)| (lo.min(*x), hi.max(*x)));
    if hi - lo < std::f64::consts::LN_10 {
        return Err(Error::Estimation(format!(
            "separations span only {:.2} decades",
            (hi - lo) / std::f64::consts::LN_10
        )));
    }
    let k = used.len() as f64;
    let mx = used.iter().map(|p| p.0).sum::<f64>() / k;
    let my = used.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = used.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = used.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    Ok(HoelderEstimate {
        alpha: slope.clamp(f64::MIN_POSITIVE, 1.0),
        constant: intercept.exp(),
        scales: used.len(),
    })
}
