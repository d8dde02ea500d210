//! Seeded four-variate Gaussian samples `(Y, X, X', X'')` for validation runs.
//!
//! Uniforms come from ChaCha20 seeded with `seed_from_u64`; each uniform is
//! the top 53 bits of one `u64` draw, shifted half a step off zero. Normals
//! are the inverse normal CDF of those uniforms, four per row, and rows are
//! correlated by the lower Cholesky factor of the covariance matrix.

use crate::error::{Error, Result};
use nalgebra::{Matrix4, Vector4};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use statrs::distribution::{ContinuousCDF, Normal};

/// Covariance of `(Y, X, X', X'')` used throughout the validation suite.
pub const DEFAULT_COVARIANCE: [[f64; 4]; 4] = [
    [1.0, 0.8, 0.5, 0.2],
    [0.8, 1.0, 0.8, 0.5],
    [0.5, 0.8, 1.0, 0.8],
    [0.2, 0.5, 0.8, 1.0],
];

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSpec {
    pub covariance: [[f64; 4]; 4],
    pub sample_size: usize,
    pub seed: u64,
}

impl GaussianSpec {
    pub fn new(sample_size: usize, seed: u64) -> Self {
        Self { covariance: DEFAULT_COVARIANCE, sample_size, seed }
    }

    fn cholesky(&self) -> Result<Matrix4<f64>> {
        let c = &self.covariance;
        let unit_diagonal = (0..4).all(|i| c[i][i] == 1.0);
        let symmetric = (0..4).all(|i| (0..4).all(|j| c[i][j] == c[j][i] && c[i][j].is_finite()));
        if !unit_diagonal || !symmetric {
            return Err(Error::NotPositiveDefinite);
        }
        let m = Matrix4::from_fn(|i, j| c[i][j]);
        m.cholesky().map(|ch| ch.l()).ok_or(Error::NotPositiveDefinite)
    }
}

/// Columns of a simulated sample: the outcome and the three features.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSample {
    pub y: Vec<f64>,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub x3: Vec<f64>,
}

impl GaussianSample {
    pub fn features(&self) -> [(&'static str, &[f64]); 3] {
        [("x1", &self.x1), ("x2", &self.x2), ("x3", &self.x3)]
    }
}

pub fn sample_gaussian(spec: &GaussianSpec) -> Result<GaussianSample> {
    let l = spec.cholesky()?;
    let normal = Normal::standard();
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let n = spec.sample_size;
    let mut out = GaussianSample {
        y: Vec::with_capacity(n),
        x1: Vec::with_capacity(n),
        x2: Vec::with_capacity(n),
        x3: Vec::with_capacity(n),
    };
    for _ in 0..n {
        let z = Vector4::from_fn(|_, _| normal.inverse_cdf(open_uniform(&mut rng)));
        let v = l * z;
        out.y.push(v[0]);
        out.x1.push(v[1]);
        out.x2.push(v[2]);
        out.x3.push(v[3]);
    }
    Ok(out)
}

/// Uniform on the open interval (0, 1).
fn open_uniform(rng: &mut impl RngCore) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) / (1u64 << 53) as f64
}

/// The binary event `1{y >= theta}` for each outcome.
pub fn threshold_event(outcomes: &[f64], theta: f64) -> Vec<bool> {
    outcomes.iter().map(|&y| y >= theta).collect()
}
