use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_annulus-hardy"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn synth_random(dir: &Path, seed: &str, name: &str) -> PathBuf {
    let out = run(dir, &["synthesize", "--random", seed, "--out", name]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    dir.join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn single_coefficient_samples_to_one_at_r1() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "c.json", r#"{"n_max":1,"plus":[[[1,0]]],"minus":[[[0,0]]]}"#);
    let out = run(dir.path(), &["synthesize", "--coeffs", "c.json", "--out", "s.json"]);
    assert_eq!(code(&out), 0);
    let s = json(&dir.path().join("s.json"));
    assert_eq!(s["schema_version"], 1);
    assert_eq!(s["radii"][0], 1.0);
    let v = &s["values"][0][0];
    assert!((v[0].as_f64().unwrap() - 1.0).abs() < 1e-15 && v[1].as_f64().unwrap().abs() < 1e-15);
}

#[test]
fn random_synthesis_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = synth_random(dir.path(), "7", "a.json");
    let b = synth_random(dir.path(), "7", "b.json");
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "empty.json", "{}");
    assert_eq!(code(&run(dir.path(), &["synthesize", "--coeffs", "empty.json", "--out", "x.json"])), 2);
    let out = run(dir.path(), &["synthesize", "--random", "1"]);
    assert_eq!(code(&out), 2);
    write(dir.path(), "bad.toml", "bogus = 1\n");
    assert_eq!(code(&run(dir.path(), &["--config", "bad.toml", "omega", "sample", "--count", "1"])), 2);
    assert_eq!(code(&run(dir.path(), &["check", "missing.json"])), 2);
}

#[test]
fn check_verdicts() {
    let dir = TempDir::new().unwrap();
    let good = synth_random(dir.path(), "7", "f.json");
    let out = run(dir.path(), &["check", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["verdict"], true);
    assert_eq!(report["schema_version"], 1);

    // f(z) = z on the same grid
    let mut z = json(&good);
    let radii: Vec<f64> = z["radii"].as_array().unwrap().iter().map(|r| r.as_f64().unwrap()).collect();
    let n_theta = z["n_theta"].as_u64().unwrap() as usize;
    let values: Vec<Vec<[f64; 2]>> = radii
        .iter()
        .map(|r| {
            (0..n_theta)
                .map(|j| {
                    let th = 2.0 * std::f64::consts::PI * j as f64 / n_theta as f64;
                    [r * th.cos(), r * th.sin()]
                })
                .collect()
        })
        .collect();
    z["values"] = serde_json::to_value(values).unwrap();
    write(dir.path(), "z.json", &z.to_string());
    assert_eq!(code(&run(dir.path(), &["check", "z.json"])), 1);

    let mut short = json(&good);
    short["values"].as_array_mut().unwrap().pop();
    write(dir.path(), "short.json", &short.to_string());
    assert_eq!(code(&run(dir.path(), &["check", "short.json"])), 2);

    assert_eq!(code(&run(dir.path(), &["decompose", "z.json"])), 1);
}

#[test]
fn golden_decomposition_and_verify() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "g.json", r#"{"n_max":1,"plus":[[[1,0]]],"minus":[[[1,0]]]}"#);
    assert_eq!(code(&run(dir.path(), &["synthesize", "--coeffs", "g.json", "--out", "f.json"])), 0);
    let out = run(dir.path(), &["decompose", "f.json", "--verify", "50", "--parts", "parts"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let d = stdout_json(&out);
    assert_eq!(d["schema_version"], 1);
    let c = &d["coeffs"];
    for side in ["plus", "minus"] {
        let v = &c[side][0][0];
        assert!((v[0].as_f64().unwrap() - 1.0).abs() < 1e-9, "{side}");
        assert!(v[1].as_f64().unwrap().abs() < 1e-9);
    }
    let plus = json(&dir.path().join("parts.plus.json"));
    let minus = json(&dir.path().join("parts.minus.json"));
    // f⁺ = z/z̄ and f⁻ = z̄/z at r = 1, θ = 0
    assert!((plus["values"][0][0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((minus["values"][0][0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn synthesize_decompose_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = synth_random(dir.path(), "11", "f.json");
    let out = run(dir.path(), &["decompose", "f.json", "--out", "d.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&run(dir.path(), &["synthesize", "--coeffs", "d.json", "--out", "g.json"])), 0);
    let (a, b) = (json(&f), json(&dir.path().join("g.json")));
    let flat = |v: &Value| -> Vec<f64> {
        v["values"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|row| row.as_array().unwrap().iter())
            .flat_map(|c| [c[0].as_f64().unwrap(), c[1].as_f64().unwrap()])
            .collect()
    };
    let (xa, xb) = (flat(&a), flat(&b));
    let sup = xa.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let diff = xa.iter().zip(&xb).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    assert!(diff <= 1e-9 * sup, "diff {diff:e}");
}

#[test]
fn omega_member_example() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["--annulus", "1,3", "omega", "member", "--z", "1,0", "--w", "4,0"]);
    assert_eq!(code(&out), 0);
    let m = stdout_json(&out);
    assert_eq!(m["region"], "plus");
    let a = &m["witness_center"];
    assert!(a[0].as_f64().unwrap().abs() < 1e-9 && a[1].as_f64().unwrap().abs() < 1e-9);

    let out = run(dir.path(), &["omega", "member", "--z", "1.5,0", "--w", "1.5,0"]);
    assert_eq!(stdout_json(&out)["region"], "boundary_sigma");
}

#[test]
fn omega_intersect_example() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["omega", "intersect", "--c1", "0,0,1", "--c2", "0.2,0,1.5"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    assert_eq!(r["plus_plus"], true);
    assert_eq!(r["oracle_plus_plus"], true);
    assert_eq!(r["plus_minus"], r["oracle_plus_minus"]);

    assert_eq!(code(&run(dir.path(), &["omega", "intersect", "--c1", "0,0,1", "--c2", "0,0,1"])), 2);
}

#[test]
fn psi_approach_reaches_boundary_values() {
    let dir = TempDir::new().unwrap();
    synth_random(dir.path(), "7", "f.json");
    let out = run(dir.path(), &["omega", "psi", "f.json", "--z", "1.5,0"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().contains("schema_version=1"));
    assert_eq!(lines.next().unwrap(), "distance,abs_error,relative_error");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    let last = rows.last().unwrap();
    assert!((last[0] - 1e-3).abs() < 1e-12);
    assert!(last[2] <= 1e-3, "relative error {}", last[2]);
    assert!(rows.windows(2).all(|w| w[1][1] <= w[0][1]));
}

#[test]
fn omega_sample_is_seeded() {
    let dir = TempDir::new().unwrap();
    let a = run(dir.path(), &["--seed", "4", "omega", "sample", "--count", "20"]);
    let b = run(dir.path(), &["--seed", "4", "omega", "sample", "--count", "20"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap().lines().count(), 2 + 40);
}

#[test]
fn validate_reports_one_line_per_identity() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["validate", "--random", "7", "--circles", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let names: Vec<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).unwrap();
            assert_eq!(v["pass"], true, "{l}");
            v["identity_name"].as_str().unwrap().to_string()
        })
        .collect();
    assert_eq!(names, ["identity_24", "poisson", "lemma_61", "max_principle"]);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "run.toml",
        "n_max = 4\nseed = 2\n[annulus]\nr1 = 1.0\nr2 = 3.0\n[grid]\nn_r = 9\nn_theta = 64\nlayout = \"uniform\"\n",
    );
    let out = run(dir.path(), &["--config", "run.toml", "synthesize", "--random", "1", "--out", "f.json"]);
    assert_eq!(code(&out), 0);
    let f = json(&dir.path().join("f.json"));
    assert_eq!((f["r2"].as_f64(), f["n_theta"].as_u64()), (Some(3.0), Some(64)));
    assert_eq!(f["radii"].as_array().unwrap().len(), 9);
    let coeffs: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(coeffs["n_max"], 4);
}
