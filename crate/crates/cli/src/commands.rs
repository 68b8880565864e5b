use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use annulus_hardy::annulus::SCHEMA_VERSION;
use annulus_hardy::circle_transform::sample_circle;
use annulus_hardy::validation::{
    boundary_approach, brute_force_lambda_intersection, check_identity_24, check_lemma_61, check_max_principle,
    check_poisson_identity, random_omega_plus_point, POISSON_TOL, QUADRATURE_TOL,
};
use annulus_hardy::{
    check_circle_extension, check_zero_means, lambda_intersect_plus_minus, lambda_intersect_plus_plus,
    omega_membership, radial_fourier, random_admissible_circle, random_zero_mean, sample, split,
    AbelParameter, C2Point, CircleSpec, Complex64, LambdaSpec, OracleReport, SampledAnnulusFunction, Side,
    ZeroMeanCoefficients,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::config::{parse_reals, Settings};
use crate::Failure;

const EXTENSION_PROBES: usize = 256;
const INTERSECT_STARTS: usize = 16;

fn versioned<T: Serialize>(value: &T) -> Result<Value, Failure> {
    let mut v = serde_json::to_value(value).map_err(|e| Failure::Internal(e.to_string()))?;
    match &mut v {
        Value::Object(map) => {
            map.insert("schema_version".into(), SCHEMA_VERSION.into());
            Ok(v)
        }
        _ => Ok(serde_json::json!({ "schema_version": SCHEMA_VERSION, "value": v })),
    }
}

fn to_line(v: &Value) -> String {
    serde_json::to_string(v).expect("serde_json::Value always serializes")
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

/// Write to `--out` if given, else stdout.
fn emit(settings: &Settings, text: &str) -> Result<(), Failure> {
    match &settings.output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_sampled(path: &Path) -> Result<SampledAnnulusFunction, Failure> {
    serde_json::from_value(read_json(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Bare coefficients, or the `coeffs` member of a decomposition file.
fn load_coeffs(path: &Path) -> Result<ZeroMeanCoefficients, Failure> {
    let mut v = read_json(path)?;
    if let Some(inner) = v.get_mut("coeffs") {
        v = inner.take();
    }
    serde_json::from_value(v).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn coeffs_from(
    settings: &Settings,
    file: Option<PathBuf>,
    random: Option<u64>,
    decay: f64,
) -> Result<ZeroMeanCoefficients, Failure> {
    match (file, random) {
        (Some(path), _) => load_coeffs(&path),
        (None, Some(seed)) => Ok(random_zero_mean(seed, settings.n_max, decay, &settings.annulus)?),
        (None, None) => Err(Failure::Input("give --coeffs FILE or --random SEED".into())),
    }
}

pub fn synthesize_cmd(settings: &Settings, file: Option<PathBuf>, random: Option<u64>, decay: f64) -> Result<(), Failure> {
    let out = settings
        .output
        .as_ref()
        .ok_or_else(|| Failure::Input("synthesize needs --out".into()))?;
    let coeffs = coeffs_from(settings, file, random, decay)?;
    let sampled = sample(&annulus_hardy::synthesize(&coeffs), &settings.grid()?)?;
    let text = serde_json::to_string(&sampled).map_err(|e| Failure::Internal(e.to_string()))?;
    write_file(out, &text)?;
    println!("{}", serde_json::to_string(&coeffs).map_err(|e| Failure::Internal(e.to_string()))?);
    Ok(())
}

pub fn check(settings: &Settings, input: PathBuf) -> Result<(), Failure> {
    let f = load_sampled(&input)?;
    let report = check_zero_means(&f, settings.n_max, settings.zero_mean_tol)?;
    eprintln!("{:>5}  {:>12}", "n", "residual");
    for (n, r) in &report.residuals {
        let flag = if *r > report.tol { "  *" } else { "" };
        eprintln!("{n:>5}  {r:>12.3e}{flag}");
    }
    eprintln!("c0 {:.3e}  tail {:.3e}  verdict {}", report.c0_norm, report.tail_mass, report.verdict);
    emit(settings, &(to_line(&versioned(&report)?) + "\n"))?;
    if report.verdict {
        Ok(())
    } else {
        Err(Failure::Rejected(format!(
            "not zero-mean: max residual {:.3e} > tol {:e}",
            report.max_residual(),
            report.tol
        )))
    }
}

#[derive(Serialize)]
struct VerifySummary {
    circles: usize,
    max_plus_offending: f64,
    max_minus_offending: f64,
    extension_tol: f64,
    pass: bool,
}

pub fn decompose(settings: &Settings, input: PathBuf, verify: Option<usize>, parts: Option<PathBuf>) -> Result<(), Failure> {
    let f = load_sampled(&input)?;
    let d = split(&f, settings.n_max, settings.zero_mean_tol)?;
    emit(settings, &(to_line(&versioned(&d)?) + "\n"))?;

    if let Some(prefix) = parts {
        for (suffix, g) in [("plus", d.plus()), ("minus", d.minus())] {
            let sampled = sample(&g, f.grid())?;
            let path = PathBuf::from(format!("{}.{suffix}.json", prefix.display()));
            write_file(&path, &serde_json::to_string(&sampled).map_err(|e| Failure::Internal(e.to_string()))?)?;
        }
    }

    if let Some(count) = verify {
        let annulus = f.grid().annulus();
        let (plus, minus) = (d.plus(), d.minus());
        let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
        let (mut worst_plus, mut worst_minus) = (0.0f64, 0.0f64);
        for _ in 0..count {
            let c = random_admissible_circle(&mut rng, &annulus);
            let rp = check_circle_extension(&plus, &c, Side::Plus, EXTENSION_PROBES, &annulus)?;
            let rm = check_circle_extension(&minus, &c, Side::Minus, EXTENSION_PROBES, &annulus)?;
            worst_plus = worst_plus.max(rp.offending_coefficient_norm);
            worst_minus = worst_minus.max(rm.offending_coefficient_norm);
        }
        let summary = VerifySummary {
            circles: count,
            max_plus_offending: worst_plus,
            max_minus_offending: worst_minus,
            extension_tol: settings.extension_tol,
            pass: worst_plus.max(worst_minus) <= settings.extension_tol,
        };
        eprintln!("{}", to_line(&versioned(&summary)?));
        if !summary.pass {
            return Err(Failure::Rejected(format!(
                "extension check failed: offending norms {worst_plus:.3e} / {worst_minus:.3e}"
            )));
        }
    }
    Ok(())
}

pub fn omega_member(settings: &Settings, z: Complex64, w: Complex64) -> Result<(), Failure> {
    let m = omega_membership(&C2Point::new(z, w), &settings.annulus, settings.solver_tol);
    emit(settings, &(to_line(&versioned(&m)?) + "\n"))
}

fn parse_circle(s: &str) -> Result<CircleSpec, Failure> {
    let v = parse_reals(s, 3).map_err(Failure::Input)?;
    Ok(CircleSpec::new(Complex64::new(v[0], v[1]), v[2])?)
}

#[derive(Serialize)]
struct IntersectReport {
    plus_plus: bool,
    plus_minus: bool,
    oracle_plus_plus: bool,
    oracle_plus_minus: bool,
}

pub fn omega_intersect(settings: &Settings, c1: &str, c2: &str) -> Result<(), Failure> {
    let (c1, c2) = (parse_circle(c1)?, parse_circle(c2)?);
    let leaf = |c, side| LambdaSpec::new(c, side);
    let report = IntersectReport {
        plus_plus: lambda_intersect_plus_plus(&c1, &c2)?,
        plus_minus: lambda_intersect_plus_minus(&c1, &c2),
        oracle_plus_plus: brute_force_lambda_intersection(&leaf(c1, Side::Plus), &leaf(c2, Side::Plus), INTERSECT_STARTS),
        oracle_plus_minus: brute_force_lambda_intersection(&leaf(c1, Side::Plus), &leaf(c2, Side::Minus), INTERSECT_STARTS),
    };
    emit(settings, &(to_line(&versioned(&report)?) + "\n"))
}

pub fn omega_psi(settings: &Settings, input: PathBuf, z: Complex64, per_decade: usize) -> Result<(), Failure> {
    if per_decade == 0 {
        return Err(Failure::Input("--per-decade must be at least 1".into()));
    }
    let f = load_sampled(&input)?;
    let d = split(&f, settings.n_max, settings.zero_mean_tol)?;
    let annulus = f.grid().annulus();
    if !annulus.contains(z) {
        return Err(Failure::Input(format!("z = {z} is outside the annulus")));
    }
    let steps = 2 * per_decade;
    let distances: Vec<f64> = (0..=steps).map(|k| 10f64.powf(-1.0 - k as f64 / per_decade as f64)).collect();
    let samples = boundary_approach(&d.coeffs, &annulus, z, &distances)?;
    let scale = f.sup_norm().max(f64::MIN_POSITIVE);
    let mut text = format!("# annulus-hardy psi approach schema_version={SCHEMA_VERSION} z={},{}\n", z.re, z.im);
    text.push_str("distance,abs_error,relative_error\n");
    for s in samples {
        writeln!(text, "{:e},{:e},{:e}", s.distance, s.error, s.error / scale).expect("writing to a String");
    }
    emit(settings, &text)
}

pub fn omega_sample(settings: &Settings, count: usize) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut text = format!("# annulus-hardy omega sample schema_version={SCHEMA_VERSION}\n");
    text.push_str("side,z_re,z_im,w_re,w_im\n");
    for _ in 0..count {
        let p = random_omega_plus_point(&mut rng, &settings.annulus);
        for (side, q) in [("plus", p), ("minus", p.reflected())] {
            writeln!(text, "{side},{:e},{:e},{:e},{:e}", q.z.re, q.z.im, q.w.re, q.w.im).expect("writing to a String");
        }
    }
    emit(settings, &text)
}

fn ts(values: &[f64]) -> Vec<AbelParameter> {
    values.iter().map(|&t| AbelParameter::new(t).expect("fixed t in (0,1)")).collect()
}

pub fn validate(
    settings: &Settings,
    file: Option<PathBuf>,
    random: Option<u64>,
    decay: f64,
    circles: usize,
) -> Result<(), Failure> {
    let coeffs = coeffs_from(settings, file, random, decay)?;
    let grid = settings.grid()?;
    let f = annulus_hardy::synthesize(&coeffs);
    let sampled = sample(&f, &grid)?;
    let band = (grid.n_theta() as i64 / 2 - 1).max(0);
    let table = radial_fourier(&sampled, -band, band)?;

    let mut reports = vec![
        check_identity_24(&f, &table, &ts(&[0.3, 0.7, 0.95]), 200, QUADRATURE_TOL)?,
        check_poisson_identity(&sampled, &ts(&[0.3, 0.7, 0.9]), POISSON_TOL)?,
    ];

    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut lemma = OracleReport {
        identity_name: "lemma_61".into(),
        max_abs_error: 0.0,
        samples_tested: 0,
        excluded: 0,
        tolerance: QUADRATURE_TOL,
        pass: true,
    };
    for _ in 0..circles {
        let c = random_admissible_circle(&mut rng, &settings.annulus);
        let r = check_lemma_61(&sample_circle(&f, &c, 512)?, &c, 200, QUADRATURE_TOL)?;
        lemma.max_abs_error = lemma.max_abs_error.max(r.max_abs_error);
        lemma.samples_tested += r.samples_tested;
        lemma.excluded += r.excluded;
    }
    lemma.pass = lemma.max_abs_error <= lemma.tolerance;
    reports.push(lemma);
    reports.push(check_max_principle(&coeffs, &settings.annulus, 1000, settings.seed, QUADRATURE_TOL)?);

    let mut text = String::new();
    for r in &reports {
        text.push_str(&to_line(&versioned(r)?));
        text.push('\n');
    }
    emit(settings, &text)?;
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).map(|r| r.identity_name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Rejected(format!("oracle checks failed: {}", failed.join(", "))))
    }
}
