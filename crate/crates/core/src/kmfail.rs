//! Ellipticity-failure experiment for the k = 1, m = 4 family: the graph of
//! u = (3/4)(|p|^{4/3} − |q|^{4/3}) on ℝ⁴ has principal curvatures of
//! incomparable size along rays approaching {|q| = 0} (two blow up like
//! |q|^{−2/3}, two stay bounded), so no choice of profiles produces a
//! uniformly elliptic integrand. The quadratic saddle on the same rays is
//! the bounded control, and the candidate integrand built from
//! f(s) = s³, g(s) = −s³ is run through the ellipticity certifier near its
//! singular set as a second line of evidence.

use crate::certify::{certify_uniform_ellipticity, CertifyTolerances, EllipticityReport};
use crate::error::Result;
use crate::field::{SaddleQuadratic, ScalarField};
use crate::hypersurface::graph_principal_curvatures;
use crate::km::{KmCandidateIntegrand, PowerGraph43};
use crate::linalg;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct KmFailureConfig {
    /// |p| values of the test rays.
    pub rays: Vec<f64>,
    /// Sweep |q| from here down to the floor, log-spaced.
    pub y_start: f64,
    pub y_floor: f64,
    pub samples_per_ray: usize,
    /// Curvature-ratio threshold counting as non-ellipticity evidence.
    pub ratio_threshold: f64,
    /// The threshold must be crossed before |q| reaches this value.
    pub crossing_bound: f64,
}

impl Default for KmFailureConfig {
    fn default() -> Self {
        KmFailureConfig {
            rays: vec![1.0, 2.0, 4.0],
            y_start: 0.5,
            y_floor: 1e-4,
            samples_per_ray: 160,
            ratio_threshold: 1e3,
            crossing_bound: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RayRow {
    pub y: f64,
    pub kappa_max_abs: f64,
    pub kappa_min_abs: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RayTrajectory {
    pub ray_x: f64,
    pub rows: Vec<RayRow>,
    /// Largest |q| at which the ratio first reaches the threshold (the sweep
    /// is descending), if it does.
    pub crossing_y: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KmFailureReport {
    pub config: KmFailureConfig,
    pub rays: Vec<RayTrajectory>,
    /// Did any ray cross the threshold before the crossing bound?
    pub crossed_before_bound: bool,
    pub max_ratio_observed: f64,
    /// Max curvature ratio of the quadratic saddle on the same rays; must
    /// stay bounded.
    pub control_max_ratio: f64,
    /// Certifier run on the candidate integrand near its singular set.
    pub candidate_certificate: EllipticityReport,
    pub candidate_pathological: bool,
}

fn ratio_at(u: &dyn ScalarField, x: f64, y: f64) -> Result<RayRow> {
    let point = [x, 0.0, y, 0.0];
    let kappas = graph_principal_curvatures(u, &point)?;
    let max = kappas.iter().fold(0.0_f64, |m, k| m.max(k.abs()));
    let min = kappas.iter().fold(f64::INFINITY, |m, k| m.min(k.abs()));
    Ok(RayRow {
        y,
        kappa_max_abs: max,
        kappa_min_abs: min,
        ratio: max / min,
    })
}

pub fn km_ellipticity_failure(config: &KmFailureConfig) -> Result<KmFailureReport> {
    let u = PowerGraph43 { block_dim: 2 };
    let control = SaddleQuadratic::new(2);

    let mut rays = Vec::with_capacity(config.rays.len());
    let mut max_ratio: f64 = 0.0;
    let mut control_max: f64 = 0.0;
    let mut crossed = false;
    for &x in &config.rays {
        let mut rows = Vec::with_capacity(config.samples_per_ray);
        let mut crossing = None;
        for i in 0..config.samples_per_ray {
            let frac = i as f64 / (config.samples_per_ray - 1) as f64;
            let y = config.y_start * (config.y_floor / config.y_start).powf(frac);
            let row = ratio_at(&u, x, y)?;
            if crossing.is_none() && row.ratio >= config.ratio_threshold {
                crossing = Some(y);
                if y > config.crossing_bound {
                    crossed = true;
                }
            }
            max_ratio = max_ratio.max(row.ratio);
            let ctrl = ratio_at(&control, x, y)?;
            control_max = control_max.max(ctrl.ratio);
            rows.push(row);
        }
        rays.push(RayTrajectory { ray_x: x, rows, crossing_y: crossing });
    }

    // Candidate integrand probe: ring of directions approaching the
    // singular plane {z = 0} at fixed block radii.
    let candidate = KmCandidateIntegrand;
    let mut probe = Vec::new();
    for i in 0..400 {
        let theta = 0.3 + 1.2 * (i % 20) as f64 / 19.0;
        let z = 0.5 * 0.7f64.powi(i / 20);
        let v = [theta.cos(), 0.0, theta.sin(), 0.0, z];
        probe.push(linalg::normalize(&v).unwrap());
    }
    let cert = certify_uniform_ellipticity(&candidate, &probe, CertifyTolerances::default());
    let cand_ratio = cert.max_tangential_eigenvalue / cert.min_tangential_eigenvalue.max(1e-300);
    let candidate_pathological = !cert.passed
        || cert.min_tangential_eigenvalue <= 0.0
        || cand_ratio > config.ratio_threshold
        || cert.skipped > 0;

    Ok(KmFailureReport {
        config: config.clone(),
        rays,
        crossed_before_bound: crossed,
        max_ratio_observed: max_ratio,
        control_max_ratio: control_max,
        candidate_certificate: cert,
        candidate_pathological,
    })
}
