//! The verification suites run by the CLI subcommands. Each suite draws its
//! own deterministic random stream (seed xor a fixed per-suite salt), runs
//! the library checks at the configured sample sizes and tolerances, and
//! reduces to a `SuiteResult` of named metrics.

use crate::config::RunConfig;
use crate::report::SuiteResult;
use anyhow::Result;
use phimin_core::calculus::{restricted_hessian, tangent_frame};
use phimin_core::calib::{
    calibration_gap, cone_foliation_check, divergence_free_check, level_set_critical_check,
};
use phimin_core::certify::{
    axis_neighborhood_check, certify_uniform_ellipticity, seam_regularity_check,
    CertifyTolerances,
};
use phimin_core::field::{SaddleQuadratic, ScalarField, ScaledField};
use phimin_core::hypersurface::{el_parametric_residual, HypersurfacePatch};
use phimin_core::kmfail::{km_ellipticity_failure, KmFailureConfig, KmFailureReport};
use phimin_core::legendre::{
    el_graph_residual, el_legendre_residual, legendre_transform, NewtonParams,
};
use phimin_core::linalg;
use phimin_core::no4d::{run_ode_experiment, OdeExperimentConfig, OdeReport};
use phimin_core::phi::{HomogeneousIntegrand, PhiIntegrand, PhiSlice};
use phimin_core::psi::{Psi2d, PsiProfile};
use phimin_core::psi3d::PsiBig;
use phimin_core::sphere::{
    fibonacci_sphere, random_unit_vector, sample_sphere, uniform01, SampleScheme,
};
use phimin_core::wave::{box_xy_numeric, wave_residual_2d};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use std::time::Instant;

const SALT_VERIFY: u64 = 0x56455249;
const SALT_CERTIFY: u64 = 0x43455254;
const SALT_CONES: u64 = 0x434f4e45;

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo * (hi / lo).powf(uniform01(rng))
}

/// Random base point in ℝ⁶ with both block radii log-uniform in [lo, hi].
fn base_point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Vec<f64> {
    let rp = log_uniform(rng, lo, hi);
    let rq = log_uniform(rng, lo, hi);
    let mut x = linalg::scale(&random_unit_vector(rng, 3), rp);
    x.extend(linalg::scale(&random_unit_vector(rng, 3), rq));
    x
}

struct ProfileField(PsiProfile);
impl ScalarField for ProfileField {
    fn dim(&self) -> usize {
        2
    }
    fn value(&self, p: &[f64]) -> phimin_core::Result<f64> {
        self.0.value(p[0], p[1])
    }
    fn gradient(&self, p: &[f64]) -> phimin_core::Result<Vec<f64>> {
        Ok(self.0.eval(p[0], p[1])?.grad.to_vec())
    }
    fn hessian(&self, p: &[f64]) -> phimin_core::Result<phimin_core::linalg::SymMat> {
        Ok(self.0.eval(p[0], p[1])?.hess_mat())
    }
}

/// Entire-solution suite: the three Euler–Lagrange forms, wave identities,
/// rotation identity, Legendre self-duality, and the printed fixed points.
pub fn run_verify(config: &RunConfig) -> Result<SuiteResult> {
    let start = Instant::now();
    let tol = config.tol();
    let mut suite = SuiteResult::new("verify", false);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ SALT_VERIFY);

    let phi7 = PhiIntegrand::seven_dim();
    let slice = PhiSlice::new();
    let u = SaddleQuadratic::six_dim();
    let patch = HypersurfacePatch::Graph { u: &u };

    // Residual sweep over the guard band |p|, |q| ∈ [1e-2, 1e2].
    let mut max_graph: f64 = 0.0;
    let mut max_leg: f64 = 0.0;
    let mut max_par: f64 = 0.0;
    let mut argmax = vec![0.0; 6];
    for _ in 0..config.samples.verify_points {
        let x = base_point(&mut rng, 1e-2, 1e2);
        let rg = el_graph_residual(&slice, &u, &x)?.abs();
        if rg > max_graph {
            max_graph = rg;
            argmax = x.clone();
        }
        let y = u.gradient(&x)?;
        max_leg = max_leg.max(el_legendre_residual(&u, &slice, &y)?.abs());
        max_par = max_par.max(el_parametric_residual(&phi7, &patch, &x)?.residual.abs());
    }
    suite.check("el_graph_max", max_graph, max_graph <= tol.el_residual);
    suite.check("el_legendre_max", max_leg, max_leg <= tol.el_residual);
    suite.check("el_parametric_max", max_par, max_par <= tol.el_residual);
    for (i, v) in argmax.iter().enumerate() {
        suite.metric(&format!("el_graph_argmax_{i}"), *v);
    }

    // Wave identities in the positive quadrant.
    let profile = ProfileField(PsiProfile::generating());
    let mut max_box_numeric: f64 = 0.0;
    let mut max_box_analytic: f64 = 0.0;
    for _ in 0..config.samples.wave_points {
        let x = 0.5 + 4.5 * uniform01(&mut rng);
        let y = 0.5 + 4.5 * uniform01(&mut rng);
        max_box_analytic = max_box_analytic.max(wave_residual_2d(&profile, x, y)?.box_xy_form.abs());
        max_box_numeric = max_box_numeric.max(box_xy_numeric(&profile, x, y, 5e-3)?.abs());
    }
    suite.check("wave_box_numeric_max", max_box_numeric, max_box_numeric <= tol.wave_numeric);
    suite.check("wave_box_analytic_max", max_box_analytic, max_box_analytic <= tol.wave_analytic);

    // Rotation identity between the profile form and the closed form.
    let psi_profile = PsiProfile::generating();
    let mut max_rot: f64 = 0.0;
    for _ in 0..config.samples.rotation_points {
        let x = log_uniform(&mut rng, 0.05, 8.0) * if uniform01(&mut rng) < 0.5 { -1.0 } else { 1.0 };
        let y = log_uniform(&mut rng, 0.05, 8.0) * if uniform01(&mut rng) < 0.5 { -1.0 } else { 1.0 };
        let lhs = psi_profile.value(x, y)?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rhs = Psi2d::value((x + y) * s, (x - y) * s);
        max_rot = max_rot.max((lhs - rhs).abs() / rhs.abs());
    }
    suite.check("rotation_identity_rel_max", max_rot, max_rot <= tol.rotation_identity_rel);

    // Legendre self-duality of the saddle: linear gradient, one Newton step.
    let mut max_self: f64 = 0.0;
    let mut max_iters: f64 = 0.0;
    for _ in 0..config.samples.legendre_points {
        let y = base_point(&mut rng, 0.1, 10.0);
        let lt = legendre_transform(&u, &y, NewtonParams::default(), None)?;
        max_iters = max_iters.max(lt.iterations as f64);
        let scale = u.value(&y)?.abs().max(1.0);
        max_self = max_self.max((lt.value - u.value(&y)?).abs() / scale);
        // X(p, q) = (p, −q)
        for i in 0..6 {
            let expect = if i < 3 { y[i] } else { -y[i] };
            max_self = max_self.max((lt.preimage[i] - expect).abs() / scale);
        }
    }
    suite.check("legendre_self_dual_max", max_self, max_self <= tol.legendre_self_dual);
    suite.check("legendre_newton_steps_max", max_iters, max_iters <= 1.0);

    // Printed fixed points.
    let origin = Psi2d::eval(0.0, 0.0)?;
    let mut dev_origin: f64 = (origin.value - 1.5).abs();
    for i in 0..2 {
        for j in 0..2 {
            let expect = if i == j { 0.75 } else { 0.0 };
            dev_origin = dev_origin.max((origin.hess[i][j] - expect).abs());
        }
    }
    suite.check("psi_origin_hessian_dev", dev_origin, dev_origin <= tol.hessian_origin);

    let mut det_dev: f64 = 0.0;
    for i in 0..32 {
        for j in 0..32 {
            let x = -8.0 + 16.0 * (i as f64 + 0.5) / 32.0;
            let y = -8.0 + 16.0 * (j as f64 + 0.5) / 32.0;
            let e = Psi2d::eval(x, y)?;
            let det = e.hess[0][0] * e.hess[1][1] - e.hess[0][1] * e.hess[0][1];
            let closed = Psi2d::hess_det_closed(x, y)?;
            det_dev = det_dev.max((det - closed).abs() / closed);
        }
    }
    suite.check("psi_det_identity_rel_max", det_dev, det_dev <= tol.det_identity_rel);

    let axis = PsiBig::eval(1.0, 0.0, 0.0)?;
    let frame = tangent_frame(&[1.0, 0.0, 0.0])?;
    let restricted = restricted_hessian(&axis.hess_mat(), &frame);
    let dev_restricted = (restricted.get(0, 0) - 2.0)
        .abs()
        .max((restricted.get(1, 1) - 3.0).abs())
        .max(restricted.get(0, 1).abs());
    suite.check("psibig_axis_restricted_dev", dev_restricted, dev_restricted <= tol.restricted_hessian);

    let mut zz_dev: f64 = 0.0;
    for i in 0..64 {
        let x = config.delta + (2.0 - config.delta) * (i as f64 + 0.5) / 64.0;
        let y = 2.0 - x * 0.7;
        let e = PsiBig::eval(x, y, 0.0)?;
        zz_dev = zz_dev.max((e.hess[2][2] - PsiBig::zz_on_seam(x, y)).abs());
    }
    suite.check("psibig_seam_zz_dev", zz_dev, zz_dev <= tol.seam_zz);

    let mut line_dev: f64 = 0.0;
    for k in 0..=200 {
        let y = -5.0 + 10.0 * k as f64 / 200.0;
        let expect = y.abs() + 1.0 / (1.0 + y.abs());
        line_dev = line_dev.max((PsiBig::value(1.0, y, 0.0) - expect).abs());
    }
    suite.check("psibig_line_identity_dev", line_dev, line_dev <= tol.profile_line);

    suite.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(suite)
}

/// Deterministic refinement directions around the cone seam
/// {z = 0, |p| = |q|} of the 7-D integrand (and its 6-D restriction when
/// `with_z` is false).
fn seam_ring_points(count: usize, with_z: bool) -> Vec<Vec<f64>> {
    let dirs = fibonacci_sphere(count.max(50) / 25);
    let n_dirs = dirs.len();
    let offsets = [0.0, 1e-3, -1e-3, 1e-5, -1e-5, 1e-7, -1e-7];
    let t = std::f64::consts::FRAC_1_SQRT_2;
    let mut pts = Vec::with_capacity(count);
    for i in 0..count {
        let p = &dirs[i % n_dirs];
        let q = &dirs[(i * 7 + 3) % n_dirs];
        let alpha = offsets[i % offsets.len()];
        let zeta = if with_z { offsets[(i / offsets.len()) % offsets.len()] } else { 0.0 };
        let mut w = linalg::scale(p, t + alpha);
        w.extend(linalg::scale(q, t - alpha));
        if with_z {
            w.push(zeta);
        }
        pts.push(linalg::normalize(&w).unwrap());
    }
    pts
}

/// Ellipticity certificates for Φ and Φ₀, seam regularity, and the axis
/// chart.
pub fn run_certify(config: &RunConfig) -> Result<SuiteResult> {
    run_certify_on(config, &PhiIntegrand::seven_dim(), &PhiIntegrand::six_dim_restriction())
}

/// Inner body, parametric in the integrands so the negative (swapped
/// candidate) case can reuse the identical evaluation path.
pub fn run_certify_on(
    config: &RunConfig,
    phi7: &dyn HomogeneousIntegrand,
    phi0: &dyn HomogeneousIntegrand,
) -> Result<SuiteResult> {
    let start = Instant::now();
    let tol = config.tol();
    let mut suite = SuiteResult::new("certify", false);
    let cert_tol = CertifyTolerances {
        radial_tol: tol.radial_kernel,
        evenness_tol: tol.evenness,
        min_eigenvalue_floor: 0.0,
        near_seam_margin: config.seam_margin,
    };

    // 7-D certificate: uniform samples plus the seam-ring refinement.
    let dim7 = phi7.ambient_dim();
    let mut pts7 = sample_sphere(dim7 - 1, config.samples.certify_sphere_7d, SampleScheme::SeededUniform, config.seed)?.points;
    if dim7 == 7 {
        pts7.extend(seam_ring_points(config.samples.certify_ring, true));
    }
    let rep7 = certify_uniform_ellipticity(phi7, &pts7, cert_tol);
    let ratio7 = rep7.max_tangential_eigenvalue / rep7.min_tangential_eigenvalue.max(1e-300);
    suite.check("phi7_min_tangential_eig", rep7.min_tangential_eigenvalue, rep7.min_tangential_eigenvalue > 0.0);
    suite.metric("phi7_max_tangential_eig", rep7.max_tangential_eigenvalue);
    suite.check("phi7_eig_ratio", ratio7, ratio7 <= tol.ellipticity_ratio_cap);
    suite.check("phi7_radial_kernel_max", rep7.radial_max_abs, rep7.radial_max_abs <= tol.radial_kernel);
    suite.check("phi7_evenness_max", rep7.evenness_max_violation, rep7.evenness_max_violation <= tol.evenness);
    suite.check("phi7_positivity_min", rep7.positivity_min, rep7.positivity_min > 0.0);
    suite.check("phi7_skipped", rep7.skipped as f64, rep7.skipped == 0);
    suite.metric("phi7_seam_flagged", rep7.seam_flagged as f64);
    suite.metric("phi7_near_seam", rep7.near_seam as f64);
    suite.metric("phi7_sample_count", rep7.sample_count as f64);
    suite.samples_skipped += rep7.skipped as u64;
    for (i, v) in rep7.argmin_point.iter().enumerate() {
        suite.metric(&format!("phi7_argmin_{i}"), *v);
    }

    // 6-D restriction certificate.
    let dim0 = phi0.ambient_dim();
    let mut pts0 = sample_sphere(dim0 - 1, config.samples.certify_sphere_6d, SampleScheme::SeededUniform, config.seed ^ SALT_CERTIFY)?.points;
    if dim0 == 6 {
        pts0.extend(seam_ring_points(config.samples.certify_ring, false));
    }
    let rep0 = certify_uniform_ellipticity(phi0, &pts0, cert_tol);
    let ratio0 = rep0.max_tangential_eigenvalue / rep0.min_tangential_eigenvalue.max(1e-300);
    suite.check("phi0_min_tangential_eig", rep0.min_tangential_eigenvalue, rep0.min_tangential_eigenvalue > 0.0);
    suite.metric("phi0_max_tangential_eig", rep0.max_tangential_eigenvalue);
    suite.check("phi0_eig_ratio", ratio0, ratio0 <= tol.ellipticity_ratio_cap);
    suite.check("phi0_radial_kernel_max", rep0.radial_max_abs, rep0.radial_max_abs <= tol.radial_kernel);
    suite.check("phi0_skipped", rep0.skipped as f64, rep0.skipped == 0);
    suite.samples_skipped += rep0.skipped as u64;

    // Seam regularity and the axis chart (fixed objects, not swappable).
    let seam = seam_regularity_check(config.delta, &config.seam_steps, config.expansion_order, 8)?;
    suite.check("seam_lipschitz_estimate", seam.lipschitz_constant_estimate, seam.lipschitz_constant_estimate.is_finite());
    suite.check("seam_ratio_lo", seam.ratio_range.0, seam.ratio_range.0 >= 0.5);
    suite.check("seam_ratio_hi", seam.ratio_range.1, seam.ratio_range.1 <= 2.0);
    suite.check("seam_mixed_ez_max", seam.mixed_ez_max, seam.mixed_ez_max <= tol.seam_zz);
    suite.check("seam_zz_identity_dev", seam.zz_identity_max_dev, seam.zz_identity_max_dev <= tol.seam_zz);
    suite.check("seam_expansion_order", seam.expansion_order_fit, seam.expansion_order_fit >= tol.seam_order_min);
    suite.metric("seam_expansion_mismatch_max", seam.max_expansion_mismatch);
    suite.check("seam_side_symmetry_dev", seam.side_symmetry_max_dev, seam.side_symmetry_max_dev <= 1e-10);
    suite.metric("seam_third_derivative_bound", *seam.third_derivative_by_step.last().unwrap());

    let axis = axis_neighborhood_check(0.3, 25)?;
    suite.check("axis_origin_eig_dev", (axis.origin_eigenvalues.0 - 2.0).abs().max((axis.origin_eigenvalues.1 - 3.0).abs()), axis.passed);
    suite.check("axis_min_eig_on_grid", axis.min_eigenvalue_on_grid, axis.min_eigenvalue_on_grid > 0.0);

    suite.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(suite)
}

/// Cone minimality: level-set criticality, the rescaled-graph sweep, the
/// foliation assignment, and the calibration checks.
pub fn run_cones(config: &RunConfig) -> Result<SuiteResult> {
    let start = Instant::now();
    let tol = config.tol();
    let mut suite = SuiteResult::new("cones", false);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ SALT_CONES);

    let phi7 = PhiIntegrand::seven_dim();
    let phi0 = PhiIntegrand::six_dim_restriction();
    let u = SaddleQuadratic::six_dim();

    // Level-set criticality on {u = ±1}.
    let mut max_level: f64 = 0.0;
    for _ in 0..config.samples.cones_points {
        let t = log_uniform(&mut rng, 0.05, 8.0);
        let a = (2.0 + t * t).sqrt();
        let mut x = linalg::scale(&random_unit_vector(&mut rng, 3), a);
        x.extend(linalg::scale(&random_unit_vector(&mut rng, 3), t));
        max_level = max_level.max(level_set_critical_check(&phi0, &u, 1.0, &x)?.residual.abs());
        // Mirror point on {u = −1}.
        let mut xm = x[3..6].to_vec();
        xm.extend_from_slice(&x[..3]);
        max_level = max_level.max(level_set_critical_check(&phi0, &u, -1.0, &xm)?.residual.abs());
    }
    suite.check("level_set_residual_max", max_level, max_level <= tol.el_residual);

    // Rescaled graphs over {u = 1} base points.
    let mut max_rsweep: f64 = 0.0;
    for &r in &config.r_sweep {
        let scaled = ScaledField { base: &u, factor: r };
        let patch = HypersurfacePatch::Graph { u: &scaled };
        for _ in 0..64 {
            let t = log_uniform(&mut rng, 0.1, 4.0);
            let a = (2.0 + t * t).sqrt();
            let mut x = linalg::scale(&random_unit_vector(&mut rng, 3), a);
            x.extend(linalg::scale(&random_unit_vector(&mut rng, 3), t));
            max_rsweep = max_rsweep.max(el_parametric_residual(&phi7, &patch, &x)?.residual.abs());
        }
    }
    suite.check("rescaled_graph_residual_max", max_rsweep, max_rsweep <= tol.el_residual);

    // Foliation assignment.
    let pts: Vec<Vec<f64>> = (0..config.samples.foliation_points)
        .map(|_| {
            let r = log_uniform(&mut rng, 0.05, 20.0);
            linalg::scale(&random_unit_vector(&mut rng, 6), r)
        })
        .collect();
    let fol = cone_foliation_check(&u, &pts, tol.foliation)?;
    suite.check("foliation_failures", fol.assignment_failures as f64, fol.assignment_failures == 0);
    suite.check("foliation_monotonicity_failures", fol.monotonicity_failures as f64, fol.monotonicity_failures == 0);
    suite.metric("foliation_on_cone", fol.on_cone as f64);
    suite.metric("foliation_max_error", fol.max_assignment_error);

    // Calibration: support-function gap over seeded pairs.
    let mut min_gap = f64::INFINITY;
    for _ in 0..config.samples.calibration_pairs {
        let a = random_unit_vector(&mut rng, 7);
        let b = random_unit_vector(&mut rng, 7);
        min_gap = min_gap.min(calibration_gap(&phi7, &a, &b)?);
    }
    suite.check("calibration_min_gap", min_gap, min_gap >= tol.calibration_gap_floor);

    let mut max_eq: f64 = 0.0;
    let mut max_div: f64 = 0.0;
    for _ in 0..config.samples.calibration_points {
        let a = random_unit_vector(&mut rng, 7);
        max_eq = max_eq.max(calibration_gap(&phi7, &a, &a)?.abs());
        let x = base_point(&mut rng, 1e-2, 1e2);
        max_div = max_div.max(divergence_free_check(&phi7, &u, &x)?.abs());
    }
    suite.check("calibration_equality_max", max_eq, max_eq <= tol.calibration_equality);
    suite.check("divergence_max", max_div, max_div <= tol.divergence);

    suite.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(suite)
}

pub struct No4dOutcome {
    pub suite: SuiteResult,
    pub four_dim: OdeReport,
    pub control: OdeReport,
}

/// Exploratory: the cone ODE in four dimensions with the six-dimensional
/// control. Never gates the overall verdict.
pub fn run_no4d(config: &RunConfig) -> Result<No4dOutcome> {
    let start = Instant::now();
    let mut suite = SuiteResult::new("no4d", true);
    let base = OdeExperimentConfig {
        k: 1,
        h0: 1.0,
        t_start: config.no4d.t_start,
        t_end: config.no4d.t_end,
        blowup_threshold: config.no4d.blowup_threshold,
        baseline_t: config.no4d.baseline_t,
    };
    let four = run_ode_experiment(&base)?;
    let control = run_ode_experiment(&OdeExperimentConfig { k: 2, ..base })?;

    suite.metric("k1_growth_ratio", four.growth_ratio);
    suite.metric("k1_max_eigenvalue", four.max_abs_eigenvalue);
    suite.metric("k1_log_fit_slope", four.log_fit_slope);
    suite.metric("k1_log_fit_correlation", four.log_fit_correlation);
    suite.metric("k1_threshold_met", if four.threshold_met { 1.0 } else { 0.0 });
    suite.metric("k1_truncated", if four.truncated { 1.0 } else { 0.0 });
    suite.metric("k2_growth_ratio", control.growth_ratio);
    suite.metric("k2_max_eigenvalue", control.max_abs_eigenvalue);

    let divergence_observed = four.log_fit_slope > 0.0 && four.log_fit_correlation > 0.99;
    let control_bounded = control.growth_ratio < 10.0 && !control.truncated;
    suite.metric("k1_divergence_observed", if divergence_observed { 1.0 } else { 0.0 });
    suite.metric("k2_control_bounded", if control_bounded { 1.0 } else { 0.0 });
    suite.pass = divergence_observed && control_bounded && four.threshold_met;
    if divergence_observed && !four.threshold_met {
        suite.notes.push(format!(
            "meridian eigenvalue grows like log(1/(1-s)) (slope {:.3}, correlation {:.4}); the growth ratio {:.1} stays below the {} threshold on t <= {} because the divergence is logarithmic",
            four.log_fit_slope, four.log_fit_correlation, four.growth_ratio, config.no4d.blowup_threshold, config.no4d.t_end
        ));
    }
    suite.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(No4dOutcome { suite, four_dim: four, control })
}

pub struct KmOutcome {
    pub suite: SuiteResult,
    pub report: KmFailureReport,
}

/// Exploratory: the k = 1, m = 4 curvature-ratio failure with the quadratic
/// control and the candidate-integrand certifier probe.
pub fn run_km(config: &RunConfig) -> Result<KmOutcome> {
    let start = Instant::now();
    let mut suite = SuiteResult::new("km", true);
    let cfg = KmFailureConfig {
        rays: config.km.rays.clone(),
        y_start: config.km.y_start,
        y_floor: config.km.y_floor,
        samples_per_ray: config.km.samples_per_ray,
        ratio_threshold: config.km.ratio_threshold,
        crossing_bound: config.km.crossing_bound,
    };
    let report = km_ellipticity_failure(&cfg)?;
    suite.metric("max_ratio_observed", report.max_ratio_observed);
    suite.metric("control_max_ratio", report.control_max_ratio);
    suite.metric("crossed_before_bound", if report.crossed_before_bound { 1.0 } else { 0.0 });
    suite.metric("candidate_min_eig", report.candidate_certificate.min_tangential_eigenvalue);
    suite.metric("candidate_skipped", report.candidate_certificate.skipped as f64);
    suite.metric("candidate_pathological", if report.candidate_pathological { 1.0 } else { 0.0 });
    for ray in &report.rays {
        if let Some(y) = ray.crossing_y {
            suite.metric(&format!("crossing_y_ray_{}", ray.ray_x), y);
        }
    }
    suite.pass = report.crossed_before_bound
        && report.control_max_ratio < 100.0
        && report.candidate_pathological;
    suite.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(KmOutcome { suite, report })
}
