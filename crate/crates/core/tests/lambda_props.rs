use annulus_hardy::lambda_domains::{eval_f, t_map, DEFAULT_SOLVER_TOL};
use annulus_hardy::validation::{boundary_approach, brute_force_lambda_intersection, check_max_principle, random_omega_plus_point};
use annulus_hardy::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn annulus() -> Annulus {
    Annulus::new(1.0, 2.0).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reflection_swaps_regions(zr in -3.0f64..3.0, zi in -3.0f64..3.0, wr in -3.0f64..3.0, wi in -3.0f64..3.0) {
        let a = annulus();
        let p = C2Point::new(c(zr, zi), c(wr, wi));
        let here = omega_membership(&p, &a, DEFAULT_SOLVER_TOL).region;
        let there = omega_membership(&p.reflected(), &a, DEFAULT_SOLVER_TOL).region;
        prop_assert_eq!(here == Region::Plus, there == Region::Minus);
        prop_assert_eq!(here == Region::Minus, there == Region::Plus);
    }

    #[test]
    fn predicates_match_the_oracle(
        ax in -1.0f64..1.0, ay in -1.0f64..1.0, rho in 0.2f64..2.0,
        bx in -2.0f64..2.0, by in -2.0f64..2.0, delta in 0.2f64..2.0,
    ) {
        let (a, b) = (c(ax, ay), c(bx, by));
        let d = (a - b).norm();
        let gaps = [d, (d + rho - delta).abs(), (d + delta - rho).abs(), (d - rho - delta).abs()];
        prop_assume!(gaps.iter().all(|g| *g >= 1e-3));
        let (c1, c2) = (CircleSpec::new(a, rho).unwrap(), CircleSpec::new(b, delta).unwrap());
        let oracle_pp = brute_force_lambda_intersection(&LambdaSpec::new(c1, Side::Plus), &LambdaSpec::new(c2, Side::Plus), 16);
        let oracle_pm = brute_force_lambda_intersection(&LambdaSpec::new(c1, Side::Plus), &LambdaSpec::new(c2, Side::Minus), 16);
        prop_assert_eq!(lambda_intersect_plus_plus(&c1, &c2).unwrap(), oracle_pp);
        prop_assert_eq!(lambda_intersect_plus_minus(&c1, &c2), oracle_pm);
    }
}

#[test]
fn sampled_omega_plus_points_classify_as_plus() {
    let a = annulus();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let p = random_omega_plus_point(&mut rng, &a);
        let m = omega_membership(&p, &a, DEFAULT_SOLVER_TOL);
        assert_eq!(m.region, Region::Plus, "{p:?}");
        assert!(m.residual <= DEFAULT_SOLVER_TOL);
        assert!(m.witness_center.unwrap().norm() < a.half_width());
    }
}

#[test]
fn max_principle_over_seeds() {
    let a = annulus();
    for seed in 0..4 {
        let coeffs = random_zero_mean(seed, 8, 0.5, &a).unwrap();
        assert!(check_max_principle(&coeffs, &a, 1000, seed, 1e-8).unwrap().pass, "seed {seed}");
    }
}

#[test]
fn psi_restricts_to_f_on_sigma() {
    let a = annulus();
    let coeffs = random_zero_mean(21, 10, 0.4, &a).unwrap();
    let f = synthesize(&coeffs);
    let grid = make_grid(a, 17, 64, RadialLayout::Uniform).unwrap();
    for i in 0..grid.n_r() {
        for j in 0..grid.n_theta() {
            let z = grid.point(i, j);
            assert!((eval_psi(&coeffs, &C2Point::on_sigma(z)).unwrap() - f.eval(z)).norm() <= 1e-10);
        }
    }
}

#[test]
fn rescaled_extension_matches_damped_series() {
    let a = annulus();
    let coeffs = random_zero_mean(4, 8, 0.5, &a).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let p = random_omega_plus_point(&mut rng, &a);
        let t = AbelParameter::new(rng.gen_range(0.05..0.99)).unwrap();
        for side in [Side::Plus, Side::Minus] {
            let lhs = eval_f_t(&coeffs, side, t, &p).unwrap();
            let rhs = eval_f(&coeffs, side, &t_map(&p, t, side)).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
        }
    }
}

#[test]
fn approach_errors_shrink_towards_the_boundary() {
    let a = annulus();
    let coeffs = random_zero_mean(7, 8, 0.5, &a).unwrap();
    let distances = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];
    for k in 0..16 {
        let z0 = Complex64::from_polar(1.5, 0.4 * k as f64);
        let path = boundary_approach(&coeffs, &a, z0, &distances).unwrap();
        assert!(path.windows(2).all(|w| w[1].error <= 1.1 * w[0].error), "{path:?}");
    }
}

#[test]
fn membership_json_shape() {
    let a = Annulus::new(1.0, 3.0).unwrap();
    let m = omega_membership(&C2Point::new(c(1.0, 0.0), c(4.0, 0.0)), &a, DEFAULT_SOLVER_TOL);
    let v: serde_json::Value = serde_json::to_value(m).unwrap();
    assert_eq!(v["region"], "plus");
    assert!(v["witness_center"].is_array());
    let p: C2Point = serde_json::from_str(r#"{"z":[1.0,0.0],"w":[4.0,0.0]}"#).unwrap();
    assert_eq!(p, C2Point::new(c(1.0, 0.0), c(4.0, 0.0)));
}
