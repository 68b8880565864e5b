//! Numerical toolkit for functions on an annulus `r1 <= |z| <= r2` whose means
//! vanish on every circle in the annulus that surrounds the hole.
//!
//! The crate covers four layers:
//!
//! - [`annulus`]: domain types, polar grids, sampling and circle predicates.
//! - [`circle_transform`]: circle means, radial Fourier tables `c_k(r)`, the
//!   Cauchy and Poisson integrals and the Abel means `f_t^±`.
//! - [`zero_mean`] and [`decompose`]: detection and synthesis of zero-mean
//!   functions through the coefficients `a_{n,j}` and the splitting
//!   `f = f⁺ + f⁻` into parts extending holomorphically inside/outside
//!   every admissible circle.
//! - [`lambda_domains`]: the leaves `Λ±_{a,ρ}` of the quadric
//!   `(z-a)(w-ā) = ρ²` in C², membership in the domains `Ω±(A)`, and the
//!   extension functions `G±`, `F±`, `F±_t`, `Ψ`.
//!
//! [`validation`] holds brute-force oracles that check the spectral machinery
//! against direct quadrature and root finding.

pub mod annulus;
pub mod circle_transform;
pub mod decompose;
pub mod error;
pub mod lambda_domains;
pub mod validation;
pub mod zero_mean;

pub use num_complex::Complex64;

pub use annulus::{
    circle_in_annulus_surrounding_origin, make_grid, random_admissible_circle, sample, Annulus, AnnulusFunction, C2Point,
    CircleSpec, FnFunction, PolarGrid, RadialLayout, SampledAnnulusFunction,
};
pub use circle_transform::{
    abel_minus, abel_plus, cauchy_integral, circle_mean, poisson_circle, radial_fourier,
    AbelParameter, RadialFourierTable,
};
pub use decompose::{
    abel_path_split, check_circle_extension, hoelder_estimate, split, Decomposition,
    ExtensionResidual,
};
pub use error::{Error, Result};
pub use lambda_domains::{
    eval_f_t, eval_g_minus, eval_g_plus, eval_psi, lambda_contains, lambda_intersect_plus_minus,
    lambda_intersect_plus_plus, omega_membership, reflect, LambdaSpec, OmegaMembership, Region,
};
pub use validation::OracleReport;
pub use zero_mean::{
    check_zero_means, fit_radial_profiles, random_zero_mean, synthesize, ZeroMeanCoefficients,
    ZeroMeanReport,
};

/// Which of the two half-splittings an object belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}
