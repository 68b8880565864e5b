//! Leaves of the quadric `(z - a)(w - ā) = ρ²` in C², the domains `Ω±(A)`
//! they sweep out, and the extension functions living on them.
//!
//! `Λ⁺_{a,ρ}` is the part of the quadric with `0 < |z - a| < ρ` and `Λ⁻_{a,ρ}`
//! the part with `|z - a| > ρ`; both are attached to the totally real plane
//! `Σ = {w = z̄}` along the lifted circle. `Ω⁺(A)` is the union of `Λ⁺_{a,ρ}`
//! over circles in the interior of the annulus surrounding the origin, and it
//! is already the disjoint union of the leaves with radius `γ = (r1 + r2)/2`
//! and `|a| < (r2 - r1)/2`. `Ω⁻(A)` is its image under `(z, w) ↦ (w̄, z̄)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::annulus::{Annulus, C2Point, CircleSpec};
use crate::circle_transform::AbelParameter;
use crate::error::{Error, Result};
use crate::zero_mean::ZeroMeanCoefficients;
use crate::Side;

/// Default Newton convergence tolerance (relative to `γ²`).
pub const DEFAULT_SOLVER_TOL: f64 = 1e-12;

const MAX_NEWTON_ITERS: usize = 50;
const MULTISTART_GRID: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaSpec {
    pub circle: CircleSpec,
    pub side: Side,
}

impl LambdaSpec {
    pub fn new(circle: CircleSpec, side: Side) -> Self {
        Self { circle, side }
    }

    /// Point of the quadric with `z - a = u`, `u ≠ 0`.
    pub fn point_at(&self, u: Complex64) -> C2Point {
        let a = self.circle.center();
        let rho = self.circle.radius();
        C2Point::new(a + u, a.conj() + rho * rho / u)
    }
}

/// Membership in the leaf: variety equation within `tol·ρ²` and the side
/// inequality (`0 < |z-a| < ρ` for plus, `|z-a| > ρ` for minus).
pub fn lambda_contains(p: &C2Point, spec: &LambdaSpec, tol: f64) -> bool {
    let a = spec.circle.center();
    let rho2 = spec.circle.radius().powi(2);
    let on_variety = ((p.z - a) * (p.w - a.conj()) - rho2).norm() <= tol * rho2;
    let d = (p.z - a).norm();
    let side_ok = match spec.side {
        Side::Plus => d > 0.0 && d < spec.circle.radius(),
        Side::Minus => d > spec.circle.radius(),
    };
    on_variety && side_ok
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Plus,
    Minus,
    BoundarySigma,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaMembership {
    pub region: Region,
    /// Center `a` of the leaf `Λ^±_{a,γ}` through the point.
    pub witness_center: Option<Complex64>,
    /// Relative defect `|(z-a)(w-ā) - γ²| / γ²` at the witness, or the best
    /// defect reached when no witness was found. On `Σ` this is `|w - z̄|`.
    pub residual: f64,
}

/// Outcome of the multistart search for a leaf of `Ω⁺(A)` through a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessSearch {
    pub witness: Option<Complex64>,
    pub residual: f64,
}

fn newton_center(p: &C2Point, gamma2: f64, start: Complex64, tol: f64) -> (Complex64, f64) {
    let defect = |a: Complex64| (p.z - a) * (p.w - a.conj()) - gamma2;
    let mut a = start;
    let mut res = defect(a).norm() / gamma2;
    for _ in 0..MAX_NEWTON_ITERS {
        if res <= tol {
            break;
        }
        let f = defect(a);
        let (u, v) = (p.z - a, p.w - a.conj());
        // ∂/∂x and ∂/∂y for a = x + iy
        let fx = -v - u;
        let fy = Complex64::i() * (u - v);
        let det = fx.re * fy.im - fy.re * fx.im;
        if det.abs() < 1e-300 {
            break;
        }
        let dx = (-f.re * fy.im + fy.re * f.im) / det;
        let dy = (-fx.re * f.im + f.re * fx.im) / det;
        a += Complex64::new(dx, dy);
        let next = defect(a).norm() / gamma2;
        if !next.is_finite() {
            break;
        }
        res = next;
    }
    (a, res)
}

/// Multistart Newton search for `a` with `(z-a)(w-ā) = γ²`, `|a| < (r2-r1)/2`
/// and `0 < |z-a| < γ`, from a 5×5 grid of starts over the admissible
/// center disc. Among accepted roots the lowest defect wins, ties broken by
/// start order.
pub fn solve_plus_witness(p: &C2Point, annulus: &Annulus, solver_tol: f64) -> WitnessSearch {
    let gamma = annulus.mid_radius();
    let gamma2 = gamma * gamma;
    let delta = annulus.half_width();
    let mut best_any = f64::INFINITY;
    let mut accepted: Option<(Complex64, f64)> = None;
    let span = MULTISTART_GRID as f64 - 1.0;
    for ix in 0..MULTISTART_GRID {
        for iy in 0..MULTISTART_GRID {
            let x = delta * 0.8 * (2.0 * ix as f64 / span - 1.0);
            let y = delta * 0.8 * (2.0 * iy as f64 / span - 1.0);
            let (a, res) = newton_center(p, gamma2, Complex64::new(x, y), solver_tol);
            best_any = best_any.min(res);
            let d = (p.z - a).norm();
            let ok = res <= solver_tol && a.norm() < delta && d > 0.0 && d < gamma;
            if ok && accepted.map_or(true, |(_, r)| res < r) {
                accepted = Some((a, res));
            }
        }
    }
    match accepted {
        Some((a, res)) => WitnessSearch {
            witness: Some(a),
            residual: res,
        },
        None => WitnessSearch {
            witness: None,
            residual: best_any,
        },
    }
}

/// Classify a point of C² relative to `Ω⁺(A)`, `Ω⁻(A)` and the lifted
/// annulus `Ã ⊂ Σ`. Solver failure is reported as `Outside`, never as an
/// error.
pub fn omega_membership(p: &C2Point, annulus: &Annulus, solver_tol: f64) -> OmegaMembership {
    let sigma_defect = (p.w - p.z.conj()).norm();
    if sigma_defect <= solver_tol * p.z.norm().max(1.0) && annulus.contains(p.z) {
        return OmegaMembership {
            region: Region::BoundarySigma,
            witness_center: None,
            residual: sigma_defect,
        };
    }
    let plus = solve_plus_witness(p, annulus, solver_tol);
    if let Some(a) = plus.witness {
        return OmegaMembership {
            region: Region::Plus,
            witness_center: Some(a),
            residual: plus.residual,
        };
    }
    let minus = solve_plus_witness(&p.reflected(), annulus, solver_tol);
    if let Some(a) = minus.witness {
        return OmegaMembership {
            region: Region::Minus,
            witness_center: Some(a),
            residual: minus.residual,
        };
    }
    OmegaMembership {
        region: Region::Outside,
        witness_center: None,
        residual: plus.residual.min(minus.residual),
    }
}

/// Whether `Λ⁺_{c1}` and `Λ⁺_{c2}` meet: the centers differ and one circle
/// lies strictly inside the other's disc.
pub fn lambda_intersect_plus_plus(c1: &CircleSpec, c2: &CircleSpec) -> Result<bool> {
    if c1 == c2 {
        return Err(Error::Parameter("identical leaves: intersection predicate undefined".into()));
    }
    let d = (c1.center() - c2.center()).norm();
    Ok(d > 0.0 && (d + c1.radius() < c2.radius() || d + c2.radius() < c1.radius()))
}

/// Whether `Λ⁺_{c1}` and `Λ⁻_{c2}` meet: the closed discs are disjoint.
pub fn lambda_intersect_plus_minus(c1: &CircleSpec, c2: &CircleSpec) -> bool {
    (c1.center() - c2.center()).norm() > c1.radius() + c2.radius()
}

/// `G⁺(z, w) = Σ_{n,j} a_{n,j} z^j w^{-(n-1-j)}`.
pub fn eval_g_plus(coeffs: &ZeroMeanCoefficients, p: &C2Point) -> Result<Complex64> {
    if p.w == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole("G+ is singular at w = 0".into()));
    }
    Ok(coeffs.plus_kernel(p.z, 1.0 / p.w, 1.0))
}

/// `G⁻(z, w) = Σ_{n,j} a_{-n,j} w^j z^{-(n-1-j)}`.
pub fn eval_g_minus(coeffs: &ZeroMeanCoefficients, p: &C2Point) -> Result<Complex64> {
    if p.z == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole("G- is singular at z = 0".into()));
    }
    Ok(coeffs.minus_kernel(p.w, 1.0 / p.z, 1.0))
}

fn eval_f_damped(coeffs: &ZeroMeanCoefficients, side: Side, t: f64, p: &C2Point) -> Result<Complex64> {
    match side {
        Side::Plus => {
            if p.w == Complex64::new(0.0, 0.0) {
                return Err(Error::Pole("F+ is singular at w = 0".into()));
            }
            let v = 1.0 / p.w;
            Ok(coeffs.plus_kernel(p.z, v, t) * v)
        }
        Side::Minus => {
            if p.z == Complex64::new(0.0, 0.0) {
                return Err(Error::Pole("F- is singular at z = 0".into()));
            }
            let u = 1.0 / p.z;
            Ok(coeffs.minus_kernel(p.w, u, t) * u)
        }
    }
}

/// `F_t⁺(z,w) = (1/w) Σ_j t^{j+1} P_j(z, 1/w)`, or the mirrored
/// `F_t⁻(z,w) = (1/z) Σ_j t^{j+1} Q_j(w, 1/z)`.
pub fn eval_f_t(coeffs: &ZeroMeanCoefficients, side: Side, t: AbelParameter, p: &C2Point) -> Result<Complex64> {
    eval_f_damped(coeffs, side, t.get(), p)
}

/// `F⁺ = G⁺/w` or `F⁻ = G⁻/z` (the `t = 1` series, finite here).
pub fn eval_f(coeffs: &ZeroMeanCoefficients, side: Side, p: &C2Point) -> Result<Complex64> {
    eval_f_damped(coeffs, side, 1.0, p)
}

/// The rescaling that turns `F^±` into `F_t^±`: `(tz, w/t)` for plus and
/// `(z/t, tw)` for minus.
pub fn t_map(p: &C2Point, t: AbelParameter, side: Side) -> C2Point {
    let t = t.get();
    match side {
        Side::Plus => C2Point::new(p.z * t, p.w / t),
        Side::Minus => C2Point::new(p.z / t, p.w * t),
    }
}

/// `Ψ(z, w) = F⁺(z, w) + F⁻(w̄, z̄)`; on `(z, z̄)` this is `f⁺(z) + f⁻(z)`.
pub fn eval_psi(coeffs: &ZeroMeanCoefficients, p: &C2Point) -> Result<Complex64> {
    Ok(eval_f(coeffs, Side::Plus, p)? + eval_f(coeffs, Side::Minus, &p.reflected())?)
}

/// Reflection across the circle, `ζ* = a + ρ² / (ζ̄ - ā)`.
pub fn reflect(zeta: Complex64, c: &CircleSpec) -> Result<Complex64> {
    let d = zeta.conj() - c.center().conj();
    if d == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole("reflection of the circle's center".into()));
    }
    Ok(c.center() + c.radius() * c.radius() / d)
}

/// Point of `Ω⁺(A)` on the leaf `Λ⁺_{a,γ}` with `z - a = s γ e^{iφ}`,
/// `0 < s < 1`, `|a| < (r2 - r1)/2`.
pub fn omega_plus_point(annulus: &Annulus, a: Complex64, s: f64, phi: f64) -> Result<C2Point> {
    if !(a.norm() < annulus.half_width()) {
        return Err(Error::Parameter(format!("center {a} is not admissible")));
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Parameter(format!("fiber parameter must lie in (0,1), got {s}")));
    }
    let circle = CircleSpec::new(a, annulus.mid_radius())?;
    Ok(LambdaSpec::new(circle, Side::Plus).point_at(Complex64::from_polar(s * annulus.mid_radius(), phi)))
}

/// The leaf `Λ⁺_{a,γ}` whose boundary circle passes through `z0`, with the
/// center on the ray through `z0`, and the angle of `z0 - a`.
pub fn fiber_through(z0: Complex64, annulus: &Annulus) -> Result<(Complex64, f64)> {
    let r = z0.norm();
    if !(r > annulus.r1() && r < annulus.r2()) {
        return Err(Error::Parameter(format!("{z0} is not in the interior of the annulus")));
    }
    let gamma = annulus.mid_radius();
    let a = z0 * ((r - gamma) / r);
    Ok((a, (z0 - a).arg()))
}

/// C² distance from `(z0, z̄0)` of the fiber point with parameter `s`.
fn fiber_distance(gamma: f64, s: f64) -> f64 {
    gamma * ((1.0 - s).powi(2) + (1.0 / s - 1.0).powi(2)).sqrt()
}

/// Points of `Ω⁺(A)` along the fiber through the boundary point `(z0, z̄0)`,
/// one per requested C² distance (each distance must be positive and
/// reachable on the fiber).
pub fn approach_path(z0: Complex64, annulus: &Annulus, distances: &[f64]) -> Result<Vec<C2Point>> {
    let (a, phi) = fiber_through(z0, annulus)?;
    let gamma = annulus.mid_radius();
    distances
        .iter()
        .map(|&d| {
            if !(d > 0.0 && d.is_finite()) {
                return Err(Error::Parameter(format!("approach distance must be positive, got {d}")));
            }
            // fiber_distance decreases on (0, 1]; bisect for s
            let (mut lo, mut hi) = (1e-12, 1.0);
            if fiber_distance(gamma, lo) < d {
                return Err(Error::Parameter(format!("distance {d} not reached on the fiber")));
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if fiber_distance(gamma, mid) > d {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            omega_plus_point(annulus, a, 0.5 * (lo + hi), phi)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::{make_grid, RadialLayout};
    use crate::circle_transform::{abel_plus, radial_fourier_full};
    use crate::zero_mean::random_zero_mean;
    use crate::{sample, synthesize};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circ(re: f64, rho: f64) -> CircleSpec {
        CircleSpec::new(c(re, 0.0), rho).unwrap()
    }

    #[test]
    fn lambda_contains_examples() {
        let plus = LambdaSpec::new(circ(0.0, 2.0), Side::Plus);
        let minus = LambdaSpec::new(circ(0.0, 2.0), Side::Minus);
        assert!(lambda_contains(&C2Point::new(c(1.0, 0.0), c(4.0, 0.0)), &plus, 1e-12));
        assert!(lambda_contains(&C2Point::new(c(4.0, 0.0), c(1.0, 0.0)), &minus, 1e-12));
        assert!(!lambda_contains(&C2Point::new(c(2.0, 0.0), c(2.0, 0.0)), &plus, 1e-12));
        assert!(!lambda_contains(&C2Point::new(c(1.0, 0.0), c(4.0, 0.0)), &minus, 1e-12));
    }

    #[test]
    fn membership_examples() {
        let a = Annulus::new(1.0, 3.0).unwrap();
        let m = omega_membership(&C2Point::new(c(1.0, 0.0), c(4.0, 0.0)), &a, DEFAULT_SOLVER_TOL);
        assert_eq!(m.region, Region::Plus);
        assert!(m.witness_center.unwrap().norm() < 1e-12);
        let m = omega_membership(&C2Point::new(c(4.0, 0.0), c(1.0, 0.0)), &a, DEFAULT_SOLVER_TOL);
        assert_eq!(m.region, Region::Minus);
        let m = omega_membership(&C2Point::new(c(2.0, 0.0), c(2.0, 0.0)), &a, DEFAULT_SOLVER_TOL);
        assert_eq!(m.region, Region::BoundarySigma);
        // far from every leaf: (z-a)(w-ā) = 4 has no admissible solution
        let m = omega_membership(&C2Point::new(c(5.0, 0.0), c(5.0, 1.0)), &a, DEFAULT_SOLVER_TOL);
        assert_eq!(m.region, Region::Outside);
        assert!(m.witness_center.is_none());
    }

    #[test]
    fn membership_recovers_generating_leaf() {
        let a = Annulus::new(1.0, 2.0).unwrap();
        for (k, s) in [0.1, 0.4, 0.8, 0.97].iter().enumerate() {
            let center = Complex64::from_polar(0.3, 1.0 + k as f64);
            let p = omega_plus_point(&a, center, *s, 0.7 * k as f64).unwrap();
            let m = omega_membership(&p, &a, DEFAULT_SOLVER_TOL);
            assert_eq!(m.region, Region::Plus);
            assert!((m.witness_center.unwrap() - center).norm() < 1e-9);
            let m = omega_membership(&p.reflected(), &a, DEFAULT_SOLVER_TOL);
            assert_eq!(m.region, Region::Minus);
        }
    }

    #[test]
    fn intersection_predicate_examples() {
        let o = circ(0.0, 1.0);
        assert!(lambda_intersect_plus_plus(&o, &circ(0.2, 1.5)).unwrap());
        assert!(!lambda_intersect_plus_plus(&o, &circ(0.1, 1.05)).unwrap());
        assert!(!lambda_intersect_plus_plus(&o, &circ(0.5, 1.0)).unwrap());
        assert!(!lambda_intersect_plus_plus(&o, &circ(0.0, 2.0)).unwrap());
        assert!(lambda_intersect_plus_plus(&o, &o).is_err());

        assert!(lambda_intersect_plus_minus(&o, &circ(3.0, 1.0)));
        assert!(!lambda_intersect_plus_minus(&o, &circ(1.5, 1.0)));
        assert!(!lambda_intersect_plus_minus(&o, &circ(2.0, 1.0)));
    }

    #[test]
    fn g_examples() {
        let z = c(1.1, -0.3);
        let p = C2Point::new(z, c(0.4, 2.0));
        let one = ZeroMeanCoefficients::zeros(2).unwrap().with(1, 0, c(1.0, 0.0)).unwrap();
        assert_eq!(eval_g_plus(&one, &p).unwrap(), c(1.0, 0.0));
        let ratio = ZeroMeanCoefficients::zeros(2).unwrap().with(2, 1, c(1.0, 0.0)).unwrap();
        assert!((eval_g_plus(&ratio, &p).unwrap() - z).norm() < 1e-15);

        let inv = ZeroMeanCoefficients::zeros(2).unwrap().with(-1, 0, c(1.0, 0.0)).unwrap();
        assert_eq!(eval_g_minus(&inv, &p).unwrap(), c(1.0, 0.0));
        let sq = ZeroMeanCoefficients::zeros(2).unwrap().with(-2, 0, c(1.0, 0.0)).unwrap();
        assert!((eval_g_minus(&sq, &p).unwrap() - 1.0 / z).norm() < 1e-15);

        assert!(matches!(eval_g_plus(&one, &C2Point::new(z, c(0.0, 0.0))), Err(Error::Pole(_))));
        assert!(matches!(eval_g_minus(&one, &C2Point::new(c(0.0, 0.0), z)), Err(Error::Pole(_))));
    }

    #[test]
    fn g_boundary_relation() {
        let a = Annulus::new(1.0, 2.0).unwrap();
        let coeffs = random_zero_mean(11, 6, 0.4, &a).unwrap();
        for k in 0..20 {
            let z = Complex64::from_polar(1.0 + k as f64 / 19.0, 0.37 * k as f64);
            let p = C2Point::on_sigma(z);
            let gp = eval_g_plus(&coeffs, &p).unwrap();
            assert!((gp - z.conj() * coeffs.eval_plus(z)).norm() < 1e-13);
            let gm = eval_g_minus(&coeffs, &p).unwrap();
            assert!((gm - z * coeffs.eval_minus(z)).norm() < 1e-13);
        }
    }

    #[test]
    fn f_t_examples() {
        let one = ZeroMeanCoefficients::zeros(1).unwrap().with(1, 0, c(1.0, 0.0)).unwrap();
        let t = AbelParameter::new(0.5).unwrap();
        let p = C2Point::new(c(0.3, 0.2), c(1.5, -2.0));
        assert!((eval_f_t(&one, Side::Plus, t, &p).unwrap() - 0.5 / p.w).norm() < 1e-15);

        let a = Annulus::new(1.0, 2.0).unwrap();
        let coeffs = random_zero_mean(5, 5, 0.5, &a).unwrap();
        let grid = make_grid(a, 9, 64, RadialLayout::Cheb).unwrap();
        let table = radial_fourier_full(&sample(&synthesize(&coeffs), &grid).unwrap()).unwrap();
        let t = AbelParameter::new(0.8).unwrap();
        let fp = abel_plus(&table, t);
        for i in 0..grid.n_r() {
            for j in (0..grid.n_theta()).step_by(7) {
                let z = grid.point(i, j);
                let v = eval_f_t(&coeffs, Side::Plus, t, &C2Point::on_sigma(z)).unwrap();
                assert!((v - fp.get(i, j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn f_t_is_f_after_rescaling() {
        let a = Annulus::new(1.0, 2.0).unwrap();
        let coeffs = random_zero_mean(9, 7, 0.5, &a).unwrap();
        for (k, t) in [0.3, 0.75, 0.95].iter().enumerate() {
            let t = AbelParameter::new(*t).unwrap();
            let p = omega_plus_point(&a, Complex64::from_polar(0.2, k as f64), 0.6, 2.0 * k as f64).unwrap();
            for side in [Side::Plus, Side::Minus] {
                let lhs = eval_f_t(&coeffs, side, t, &p).unwrap();
                let rhs = eval_f(&coeffs, side, &t_map(&p, t, side)).unwrap();
                assert!((lhs - rhs).norm() < 1e-13 * (1.0 + lhs.norm()));
            }
            let image = t_map(&p, t, Side::Plus);
            assert_eq!(omega_membership(&image, &a, DEFAULT_SOLVER_TOL).region, Region::Plus);
        }
    }

    #[test]
    fn psi_examples() {
        let coeffs = ZeroMeanCoefficients::zeros(1)
            .unwrap()
            .with(1, 0, c(1.0, 0.0))
            .unwrap()
            .with(-1, 0, c(1.0, 0.0))
            .unwrap();
        let v = eval_psi(&coeffs, &C2Point::new(c(1.0, 0.0), c(4.0, 0.0))).unwrap();
        assert!((v - c(0.5, 0.0)).norm() < 1e-15);
        let zero = ZeroMeanCoefficients::zeros(3).unwrap();
        assert_eq!(eval_psi(&zero, &C2Point::new(c(1.0, 0.5), c(2.0, 1.0))).unwrap(), c(0.0, 0.0));

        let a = Annulus::new(1.0, 2.0).unwrap();
        let rand = random_zero_mean(2, 6, 0.5, &a).unwrap();
        let f = synthesize(&rand);
        for k in 0..16 {
            let z = Complex64::from_polar(1.0 + k as f64 / 15.0, 0.4 * k as f64);
            let psi = eval_psi(&rand, &C2Point::on_sigma(z)).unwrap();
            use crate::AnnulusFunction;
            assert!((psi - f.eval(z)).norm() < 1e-10);
        }
    }

    #[test]
    fn reflection_examples() {
        let unit = circ(0.0, 1.0);
        assert!((reflect(c(0.5, 0.0), &unit).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
        let cc = CircleSpec::new(c(0.3, -0.2), 1.7).unwrap();
        for k in 0..12 {
            let on = cc.point(0.5 * k as f64);
            assert!((reflect(on, &cc).unwrap() - on).norm() < 1e-14);
            let z = c(0.1 * k as f64 - 0.4, 0.05 * k as f64);
            if z != cc.center() {
                let back = reflect(reflect(z, &cc).unwrap(), &cc).unwrap();
                assert!((back - z).norm() < 1e-13);
            }
        }
        assert!(reflect(cc.center(), &cc).is_err());
    }

    #[test]
    fn approach_path_hits_requested_distances() {
        let a = Annulus::new(1.0, 2.0).unwrap();
        let z0 = Complex64::from_polar(1.3, 0.8);
        let target = C2Point::on_sigma(z0);
        let ds = [1e-1, 1e-2, 1e-3];
        let path = approach_path(z0, &a, &ds).unwrap();
        for (p, d) in path.iter().zip(ds) {
            assert!((p.dist(&target) - d).abs() < 1e-12);
            assert_eq!(omega_membership(p, &a, DEFAULT_SOLVER_TOL).region, Region::Plus);
        }
        assert!(approach_path(c(2.0, 0.0), &a, &ds).is_err());
    }
}
