//! Deterministic point sets on unit spheres 𝕊ⁿ ⊂ ℝ^{n+1}: a golden-angle
//! lattice for 𝕊² and seeded Gaussian draws in any dimension. Sampling with
//! the same (scheme, seed) and a larger count extends the same stream, so a
//! bigger sample always contains the smaller one as a prefix.

use crate::error::{Error, Result};
use crate::linalg;
use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleScheme {
    FibonacciLattice,
    SeededUniform,
}

#[derive(Debug, Clone)]
pub struct SphereSample {
    /// Sphere dimension n (points live in ℝ^{n+1}).
    pub sphere_dim: usize,
    pub scheme: SampleScheme,
    pub seed: u64,
    pub points: Vec<Vec<f64>>,
}

/// Uniform f64 in [0, 1) from the top 53 bits; fixed for reproducibility
/// independent of library versions.
pub fn uniform01(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal via Box–Muller.
pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u1 = uniform01(rng);
        if u1 <= f64::MIN_POSITIVE {
            continue;
        }
        let u2 = uniform01(rng);
        return (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
    }
}

/// Random unit vector in ℝ^{dim} from normalized Gaussian draws.
pub fn random_unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| standard_normal(rng)).collect();
        if let Some(u) = linalg::normalize(&v) {
            if linalg::norm(&v) > 1e-6 {
                return u;
            }
        }
    }
}

pub fn sample_sphere(
    sphere_dim: usize,
    count: usize,
    scheme: SampleScheme,
    seed: u64,
) -> Result<SphereSample> {
    if count == 0 {
        return Err(Error::Domain("sample count must be at least 1".into()));
    }
    let points = match scheme {
        SampleScheme::FibonacciLattice => {
            if sphere_dim != 2 {
                return Err(Error::Domain(format!(
                    "the fibonacci lattice is implemented for S² only (got n = {sphere_dim}); use seeded-uniform"
                )));
            }
            fibonacci_sphere(count)
        }
        SampleScheme::SeededUniform => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| random_unit_vector(&mut rng, sphere_dim + 1))
                .collect()
        }
    };
    Ok(SphereSample { sphere_dim, scheme, seed, points })
}

/// Golden-angle spiral on 𝕊².
pub fn fibonacci_sphere(count: usize) -> Vec<Vec<f64>> {
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    (0..count)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = 2.0 * std::f64::consts::PI * (i as f64 / golden).fract();
            linalg::normalize(&[r * phi.cos(), r * phi.sin(), z]).unwrap()
        })
        .collect()
}
