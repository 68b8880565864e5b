//! Brute-force oracles. Each check recomputes a quantity by direct quadrature
//! or root finding and compares it with the spectral machinery; none of them
//! goes through the coefficient fit they are meant to audit.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::annulus::{make_grid, Annulus, AnnulusFunction, C2Point, CircleSpec, RadialLayout, SampledAnnulusFunction};
use crate::circle_transform::{
    abel_minus, abel_plus, cauchy_integral, cauchy_on_circle, poisson_circle, radial_fourier_full,
    AbelParameter, RadialFourierTable,
};
use crate::error::{Error, Result};
use crate::lambda_domains::{approach_path, eval_g_plus, eval_psi, omega_plus_point, LambdaSpec};
use crate::zero_mean::ZeroMeanCoefficients;
use crate::Side;

/// Quadrature against spectral values.
pub const QUADRATURE_TOL: f64 = 1e-8;
pub const POISSON_TOL: f64 = 1e-9;

/// Residual a brute-force intersection witness must reach.
pub const INTERSECTION_RESIDUAL: f64 = 1e-10;

const EXCLUSION_REL: f64 = 1e-3;
/// Relative margin for the side inequalities of an intersection witness;
/// roots of modulus exactly `ρ` lie on `Σ` and belong to neither leaf.
const SIDE_MARGIN: f64 = 1e-8;
const ORACLE_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub identity_name: String,
    pub max_abs_error: f64,
    pub samples_tested: usize,
    /// Samples dropped for sitting too close to a singular configuration.
    pub excluded: usize,
    pub tolerance: f64,
    pub pass: bool,
}

impl OracleReport {
    fn new(name: &str, max_abs_error: f64, samples_tested: usize, excluded: usize, tolerance: f64) -> Self {
        Self {
            identity_name: name.to_string(),
            max_abs_error,
            samples_tested,
            excluded,
            tolerance,
            pass: max_abs_error <= tolerance,
        }
    }
}

/// Trapezoid nodes keeping the aliasing error of a Cauchy integral at
/// modulus ratio `t` with bandwidth `band` below double precision.
pub fn cauchy_nodes(t_max: f64, band: usize) -> usize {
    let need = band as f64 + (1e-17f64).ln() / t_max.ln();
    (need.ceil() as usize).max(256).next_power_of_two()
}

/// `Φ_r(t r e^{iθ}) = f_t⁺(r e^{iθ})` and `Φ_r(r e^{iθ}/t) = -f_t⁻(r e^{iθ})`,
/// with `Φ_r` evaluated by direct quadrature of `f` and `f_t^±` from the
/// table. Samples are drawn over grid radii, grid angles and `t_values`;
/// each sample tests both branches.
pub fn check_identity_24<F: AnnulusFunction + ?Sized>(
    f: &F,
    table: &RadialFourierTable,
    t_values: &[AbelParameter],
    n_samples: usize,
    tol: f64,
) -> Result<OracleReport> {
    if t_values.is_empty() || n_samples == 0 {
        return Err(Error::Parameter("identity check needs t values and samples".into()));
    }
    let grid = table.grid();
    let band = table.k_max().max(-table.k_min()) as usize;
    let t_max = t_values.iter().map(|t| t.get()).fold(0.0, f64::max);
    let nodes = cauchy_nodes(t_max, band);
    let means: Vec<_> = t_values.iter().map(|&t| (t, abel_plus(table, t), abel_minus(table, t))).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut worst = 0.0f64;
    for _ in 0..n_samples {
        let (t, plus, minus) = &means[rng.gen_range(0..means.len())];
        let i = rng.gen_range(0..grid.n_r());
        let j = rng.gen_range(0..grid.n_theta());
        let r = grid.radii()[i];
        let z = grid.point(i, j);
        let inside = cauchy_integral(f, r, z * t.get(), nodes)?;
        let outside = cauchy_integral(f, r, z / t.get(), nodes)?;
        worst = worst.max((inside - plus.get(i, j)).norm());
        worst = worst.max((outside + minus.get(i, j)).norm());
    }
    Ok(OracleReport::new("identity_24", worst, 2 * n_samples, 0, tol))
}

/// `f_t(r e^{iθ})`, assembled from the Abel means plus the mean `c_0(r)`,
/// against the discrete Poisson integral of the row at `t e^{iθ}`.
pub fn check_poisson_identity(f: &SampledAnnulusFunction, t_values: &[AbelParameter], tol: f64) -> Result<OracleReport> {
    if t_values.is_empty() {
        return Err(Error::Parameter("Poisson check needs t values".into()));
    }
    let table = radial_fourier_full(f)?;
    let grid = f.grid();
    let mut worst = 0.0f64;
    let mut count = 0;
    for &t in t_values {
        let (plus, minus) = (abel_plus(&table, t), abel_minus(&table, t));
        for i in 0..grid.n_r() {
            let c0 = table.coeff(0, i);
            for j in 0..grid.n_theta() {
                let spectral = plus.get(i, j) + c0 + minus.get(i, j);
                let direct = poisson_circle(f.row(i), t, grid.theta(j));
                worst = worst.max((spectral - direct).norm());
                count += 1;
            }
        }
    }
    Ok(OracleReport::new("poisson", worst, count, 0, tol))
}

/// Common point of two leaves by damped Newton.
///
/// A point of the first leaf is `(a + u, ā + ρ²/u)`; substituting into the
/// second variety and clearing `u` gives the polynomial
/// `h(u) = (u + d)(d̄ u + ρ²) - δ² u` with `d = a - b`. Roots are accepted
/// when `|h| <= 1e-10·scale` and both side inequalities hold.
pub fn brute_force_lambda_intersection(spec1: &LambdaSpec, spec2: &LambdaSpec, n_starts: usize) -> bool {
    let (a, rho) = (spec1.circle.center(), spec1.circle.radius());
    let (b, delta) = (spec2.circle.center(), spec2.circle.radius());
    let d = a - b;
    let (rho2, delta2) = (rho * rho, delta * delta);
    let h = |u: Complex64| (u + d) * (d.conj() * u + rho2) - delta2 * u;
    let dh = |u: Complex64| (d.conj() * u + rho2) + d.conj() * (u + d) - delta2;
    let scale = rho2.max(delta2).max(d.norm_sqr());
    let reach = 3.0 * (rho + delta + d.norm());

    let side_ok = |dist: f64, radius: f64, side: Side| match side {
        Side::Plus => dist > 0.0 && dist < radius * (1.0 - SIDE_MARGIN),
        Side::Minus => dist > radius * (1.0 + SIDE_MARGIN),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    for _ in 0..n_starts {
        let mut u = Complex64::from_polar(reach * rng.gen::<f64>().sqrt(), 2.0 * PI * rng.gen::<f64>());
        let mut hu = h(u);
        for _ in 0..100 {
            let slope = dh(u);
            if slope.norm() == 0.0 {
                break;
            }
            let step = hu / slope;
            let mut lambda = 1.0;
            let mut improved = false;
            while lambda > 1e-6 {
                let trial = u - step * lambda;
                let ht = h(trial);
                if ht.norm() < hu.norm() {
                    u = trial;
                    hu = ht;
                    improved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !improved || hu.norm() <= 1e-16 * scale {
                break;
            }
        }
        if hu.norm() <= INTERSECTION_RESIDUAL * scale
            && side_ok(u.norm(), rho, spec1.side)
            && side_ok((u + d).norm(), delta, spec2.side)
        {
            return true;
        }
    }
    false
}

/// Reflection-weighted Cauchy sum against the Poisson integral on one
/// circle: `f⁺(z) + f⁻(z*)` with `f⁺ = Φ` inside, `f⁻ = -Φ` outside and
/// `z* = a + ρ²/(z̄ - ā)`, compared with the Poisson integral of the samples
/// at `(z - a)/ρ`.
///
/// Probes follow a sunflower spiral in the disc; those within `1e-3·ρ` of
/// the circle are excluded and counted.
pub fn check_lemma_61(f_on_circle: &[Complex64], c: &CircleSpec, n_probe: usize, tol: f64) -> Result<OracleReport> {
    if f_on_circle.len() < 8 || n_probe == 0 {
        return Err(Error::Parameter("Lemma check needs >= 8 circle samples and probes".into()));
    }
    let golden = PI * (3.0 - 5f64.sqrt());
    let (a, rho) = (c.center(), c.radius());
    let mut worst = 0.0f64;
    let (mut tested, mut excluded) = (0, 0);
    for k in 0..n_probe {
        let s = ((k as f64 + 0.5) / n_probe as f64).sqrt();
        let phi = golden * k as f64;
        if 1.0 - s < EXCLUSION_REL {
            excluded += 1;
            continue;
        }
        let u = Complex64::from_polar(s * rho, phi);
        let z = a + u;
        let z_star = a + rho * rho / u.conj();
        let plus = cauchy_on_circle(f_on_circle, c, z)?;
        let minus = -cauchy_on_circle(f_on_circle, c, z_star)?;
        let poisson = poisson_circle(f_on_circle, AbelParameter::new(s)?, phi);
        worst = worst.max((plus + minus - poisson).norm());
        tested += 1;
    }
    Ok(OracleReport::new("lemma_61", worst, tested, excluded, tol))
}

/// Uniform random point of `Ω⁺(A)`: center uniform in the admissible disc,
/// fiber coordinate `z - a = s γ e^{iφ}` with `s`, `φ` uniform.
pub fn random_omega_plus_point(rng: &mut impl Rng, annulus: &Annulus) -> C2Point {
    let radius = annulus.half_width() * rng.gen::<f64>().sqrt();
    let a = Complex64::from_polar(radius, 2.0 * PI * rng.gen::<f64>());
    let s = rng.gen_range(1e-6..1.0);
    omega_plus_point(annulus, a, s, 2.0 * PI * rng.gen::<f64>()).expect("sampled parameters are admissible")
}

/// Sup of `|G⁺|` over random points of `Ω⁺(A)` against the sup of
/// `|G⁺(z, z̄)|` over a uniform 64×512 grid of the annulus. The reported
/// error is the excess `max(0, interior - boundary·(1 + 1e-6))`.
pub fn check_max_principle(coeffs: &ZeroMeanCoefficients, annulus: &Annulus, n_points: usize, seed: u64, tol: f64) -> Result<OracleReport> {
    let grid = make_grid(*annulus, 64, 512, RadialLayout::Uniform)?;
    let mut boundary = 0.0f64;
    for i in 0..grid.n_r() {
        for j in 0..grid.n_theta() {
            boundary = boundary.max(eval_g_plus(coeffs, &C2Point::on_sigma(grid.point(i, j)))?.norm());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut interior = 0.0f64;
    for _ in 0..n_points {
        interior = interior.max(eval_g_plus(coeffs, &random_omega_plus_point(&mut rng, annulus))?.norm());
    }
    let excess = (interior - boundary * (1.0 + 1e-6)).max(0.0);
    Ok(OracleReport::new("max_principle", excess, n_points, 0, tol))
}

/// One step of a boundary approach: C² distance to `(z0, z̄0)` and
/// `|Ψ - f(z0)|` there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproachSample {
    pub distance: f64,
    pub error: f64,
}

/// `|Ψ(p_k) - f(z0)|` along the fiber of `Ω⁺(A)` through `(z0, z̄0)`.
pub fn boundary_approach(coeffs: &ZeroMeanCoefficients, annulus: &Annulus, z0: Complex64, distances: &[f64]) -> Result<Vec<ApproachSample>> {
    let target = coeffs.eval_plus(z0) + coeffs.eval_minus(z0);
    approach_path(z0, annulus, distances)?
        .iter()
        .zip(distances)
        .map(|(p, &distance)| {
            Ok(ApproachSample {
                distance,
                error: (eval_psi(coeffs, p)? - target).norm(),
            })
        })
        .collect()
}
