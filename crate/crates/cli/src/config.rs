//! Run configuration: TOML file overlaid with command-line flags.

use std::path::{Path, PathBuf};

use annulus_hardy::{make_grid, Annulus, PolarGrid, RadialLayout};
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub annulus: Option<AnnulusSection>,
    pub grid: Option<GridSection>,
    pub n_max: Option<usize>,
    pub tolerances: Option<Tolerances>,
    pub seed: Option<u64>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnulusSection {
    pub r1: f64,
    pub r2: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub n_r: Option<usize>,
    pub n_theta: Option<usize>,
    pub layout: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub zero_mean_tol: Option<f64>,
    pub extension_tol: Option<f64>,
    pub solver_tol: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::Input(format!("bad config {}: {e}", path.display())))
    }
}

/// Flags that override the config file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub annulus: Option<(f64, f64)>,
    pub grid: Option<(usize, usize)>,
    pub layout: Option<RadialLayout>,
    pub n_max: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

/// Fully resolved settings.
#[derive(Debug, Clone)]
pub struct Settings {
    pub annulus: Annulus,
    pub n_r: usize,
    pub n_theta: usize,
    pub layout: RadialLayout,
    pub n_max: usize,
    pub zero_mean_tol: f64,
    pub extension_tol: f64,
    pub solver_tol: f64,
    pub seed: u64,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

impl Settings {
    pub fn resolve(config: RunConfig, flags: Overrides) -> Result<Self, Failure> {
        let (r1, r2) = flags
            .annulus
            .or(config.annulus.map(|a| (a.r1, a.r2)))
            .unwrap_or((1.0, 2.0));
        let annulus = Annulus::new(r1, r2).map_err(|e| Failure::Input(e.to_string()))?;
        let grid = config.grid.unwrap_or(GridSection {
            n_r: None,
            n_theta: None,
            layout: None,
        });
        let layout = match (flags.layout, grid.layout) {
            (Some(l), _) => l,
            (None, Some(s)) => s.parse().map_err(|e: annulus_hardy::Error| Failure::Input(e.to_string()))?,
            (None, None) => RadialLayout::default(),
        };
        let (n_r, n_theta) = flags
            .grid
            .unwrap_or((grid.n_r.unwrap_or(33), grid.n_theta.unwrap_or(256)));
        let tols = config.tolerances.unwrap_or_default();
        let settings = Self {
            annulus,
            n_r,
            n_theta,
            layout,
            n_max: flags.n_max.or(config.n_max).unwrap_or(8),
            zero_mean_tol: flags.tol.or(tols.zero_mean_tol).unwrap_or(1e-8),
            extension_tol: tols.extension_tol.unwrap_or(1e-8),
            solver_tol: tols.solver_tol.unwrap_or(1e-12),
            seed: flags.seed.or(config.seed).unwrap_or(0),
            input: config.input,
            output: flags.out.or(config.output),
        };
        for (name, v) in [
            ("zero_mean_tol", settings.zero_mean_tol),
            ("extension_tol", settings.extension_tol),
            ("solver_tol", settings.solver_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Failure::Input(format!("{name} must be positive, got {v}")));
            }
        }
        if settings.n_max < 1 {
            return Err(Failure::Input("n_max must be at least 1".into()));
        }
        Ok(settings)
    }

    pub fn grid(&self) -> Result<PolarGrid, Failure> {
        make_grid(self.annulus, self.n_r, self.n_theta, self.layout).map_err(|e| Failure::Input(e.to_string()))
    }

    pub fn input(&self, positional: Option<PathBuf>) -> Result<PathBuf, Failure> {
        positional
            .or_else(|| self.input.clone())
            .ok_or_else(|| Failure::Input("no input file given".into()))
    }
}

/// `NRxNTHETA`, e.g. `33x256`.
pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NRxNTHETA, got {s:?}"))?;
    let n_r = a.trim().parse().map_err(|_| format!("bad radial count {a:?}"))?;
    let n_theta = b.trim().parse().map_err(|_| format!("bad angular count {b:?}"))?;
    Ok((n_r, n_theta))
}

/// `R1,R2`.
pub fn parse_annulus(s: &str) -> Result<(f64, f64), String> {
    let v = parse_reals(s, 2)?;
    Ok((v[0], v[1]))
}

/// Comma-separated reals, optionally wrapped in parentheses.
pub fn parse_reals(s: &str, count: usize) -> Result<Vec<f64>, String> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    let values = body
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("bad number {p:?} in {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != count || values.iter().any(|v| !v.is_finite()) {
        return Err(format!("expected {count} finite comma-separated numbers, got {s:?}"));
    }
    Ok(values)
}
