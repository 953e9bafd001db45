//! Run configuration: seeds, sample sizes, tolerances and guard-band
//! parameters. Every field has a default matching the standard verification
//! profile; a JSON config file may override any subset, and CLI flags
//! override the file. The full effective configuration is echoed into each
//! report so that no pass/fail constant is hidden.

use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleSizes {
    /// Residual sweep points for the graph/Legendre/parametric forms.
    pub verify_points: usize,
    /// Wave-identity probe points in the positive quadrant.
    pub wave_points: usize,
    /// Rotation-identity probe points.
    pub rotation_points: usize,
    /// Legendre self-duality probe points.
    pub legendre_points: usize,
    /// Uniform sphere samples for the 7-D ellipticity certificate.
    pub certify_sphere_7d: usize,
    /// Uniform sphere samples for the 6-D restriction certificate.
    pub certify_sphere_6d: usize,
    /// Deterministic refinement points around the cone seam.
    pub certify_ring: usize,
    /// Calibration gap pairs.
    pub calibration_pairs: usize,
    /// Calibration equality-case and divergence points.
    pub calibration_points: usize,
    /// Level-set criticality points per level.
    pub cones_points: usize,
    /// Foliation assignment points.
    pub foliation_points: usize,
}

impl Default for SampleSizes {
    fn default() -> Self {
        SampleSizes {
            verify_points: 100_000,
            wave_points: 10_000,
            rotation_points: 10_000,
            legendre_points: 1_000,
            certify_sphere_7d: 200_000,
            certify_sphere_6d: 100_000,
            certify_ring: 10_000,
            calibration_pairs: 1_000_000,
            calibration_points: 10_000,
            cones_points: 10_000,
            foliation_points: 100_000,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub el_residual: f64,
    pub wave_numeric: f64,
    pub wave_analytic: f64,
    pub rotation_identity_rel: f64,
    pub hessian_origin: f64,
    pub det_identity_rel: f64,
    pub restricted_hessian: f64,
    pub seam_zz: f64,
    pub profile_line: f64,
    pub radial_kernel: f64,
    pub evenness: f64,
    pub calibration_gap_floor: f64,
    pub calibration_equality: f64,
    pub divergence: f64,
    pub legendre_self_dual: f64,
    pub legendre_identities: f64,
    pub legendre_involution: f64,
    pub foliation: f64,
    /// Not scaled by --tolerance-scale: a cap on max/min tangential
    /// eigenvalue ratio (uniformity of the ellipticity bound).
    pub ellipticity_ratio_cap: f64,
    /// Not scaled: minimal acceptable empirical convergence order of the
    /// seam expansion.
    pub seam_order_min: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            el_residual: 1e-8,
            wave_numeric: 1e-7,
            wave_analytic: 1e-8,
            rotation_identity_rel: 1e-12,
            hessian_origin: 1e-10,
            det_identity_rel: 1e-10,
            restricted_hessian: 1e-8,
            seam_zz: 1e-8,
            profile_line: 1e-12,
            radial_kernel: 1e-8,
            evenness: 1e-10,
            calibration_gap_floor: -1e-10,
            calibration_equality: 1e-12,
            divergence: 1e-8,
            legendre_self_dual: 1e-14,
            legendre_identities: 1e-7,
            legendre_involution: 1e-8,
            foliation: 1e-12,
            ellipticity_ratio_cap: 1e3,
            seam_order_min: 5.5,
        }
    }
}

impl Tolerances {
    /// Multiplies every absolute tolerance by the scale; the ratio cap and
    /// the order bound are structural and stay fixed.
    pub fn scaled(&self, scale: f64) -> Tolerances {
        Tolerances {
            el_residual: self.el_residual * scale,
            wave_numeric: self.wave_numeric * scale,
            wave_analytic: self.wave_analytic * scale,
            rotation_identity_rel: self.rotation_identity_rel * scale,
            hessian_origin: self.hessian_origin * scale,
            det_identity_rel: self.det_identity_rel * scale,
            restricted_hessian: self.restricted_hessian * scale,
            seam_zz: self.seam_zz * scale,
            profile_line: self.profile_line * scale,
            radial_kernel: self.radial_kernel * scale,
            evenness: self.evenness * scale,
            calibration_gap_floor: self.calibration_gap_floor * scale,
            calibration_equality: self.calibration_equality * scale,
            divergence: self.divergence * scale,
            legendre_self_dual: self.legendre_self_dual * scale,
            legendre_identities: self.legendre_identities * scale,
            legendre_involution: self.legendre_involution * scale,
            foliation: self.foliation * scale,
            ellipticity_ratio_cap: self.ellipticity_ratio_cap,
            seam_order_min: self.seam_order_min,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct No4dConfig {
    pub t_start: f64,
    pub t_end: f64,
    pub blowup_threshold: f64,
    pub baseline_t: f64,
}

impl Default for No4dConfig {
    fn default() -> Self {
        No4dConfig { t_start: 0.1, t_end: 50.0, blowup_threshold: 1e3, baseline_t: 1.0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KmConfig {
    pub rays: Vec<f64>,
    pub y_start: f64,
    pub y_floor: f64,
    pub samples_per_ray: usize,
    pub ratio_threshold: f64,
    pub crossing_bound: f64,
}

impl Default for KmConfig {
    fn default() -> Self {
        KmConfig {
            rays: vec![1.0, 2.0, 4.0],
            y_start: 0.5,
            y_floor: 1e-4,
            samples_per_ray: 160,
            ratio_threshold: 1e3,
            crossing_bound: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: SampleSizes,
    pub tolerances: Tolerances,
    /// Multiplies every absolute pass/fail tolerance.
    pub tolerance_scale: f64,
    /// Seam-region parameter δ for Ω_δ = {|x|, |y| ≥ δ}.
    pub delta: f64,
    /// Decreasing divided-difference steps across the seam; all < δ/2.
    pub seam_steps: Vec<f64>,
    /// Truncation order of the seam expansion.
    pub expansion_order: usize,
    /// Graph rescaling factors for the cone limit sweep.
    pub r_sweep: Vec<f64>,
    /// Directions within 1e-6 of the cone seam are counted as flagged.
    pub seam_margin: f64,
    pub no4d: No4dConfig,
    pub km: KmConfig,
    /// Report output path (overridden by --out).
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 7,
            samples: SampleSizes::default(),
            tolerances: Tolerances::default(),
            tolerance_scale: 1.0,
            delta: 0.2,
            seam_steps: vec![1e-2, 5e-3, 2.5e-3, 1.25e-3],
            expansion_order: 6,
            r_sweep: vec![1.0, 10.0, 100.0],
            seam_margin: 1e-6,
            no4d: No4dConfig::default(),
            km: KmConfig::default(),
            out: None,
        }
    }
}

impl RunConfig {
    /// Effective tolerances after applying the scale factor.
    pub fn tol(&self) -> Tolerances {
        self.tolerances.scaled(self.tolerance_scale)
    }

    /// The --samples override: sets every primary sample count to n (the
    /// seam ring keeps a proportional share).
    pub fn override_samples(&mut self, n: usize) {
        let s = &mut self.samples;
        s.verify_points = n;
        s.wave_points = n;
        s.rotation_points = n;
        s.legendre_points = n.clamp(10, 1_000);
        s.certify_sphere_7d = n;
        s.certify_sphere_6d = n;
        s.certify_ring = (n / 20).max(100);
        s.calibration_pairs = n;
        s.calibration_points = n;
        s.cones_points = n;
        s.foliation_points = n;
    }
}
