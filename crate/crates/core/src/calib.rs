//! Minimality mechanisms: the calibration inequality of the Wulff map, the
//! divergence-free extension of the graph normal field, criticality of the
//! saddle's level sets for the restricted integrand, and the foliation of
//! the cone complement by dilated level sets.

use crate::error::{ensure_finite, Error, Result};
use crate::field::ScalarField;
use crate::hypersurface::{el_parametric_residual, HypersurfacePatch, ParametricResidual};
use crate::linalg;
use crate::phi::HomogeneousIntegrand;
use crate::psi3d::HessBranch;

/// ∇Φ viewed as the map onto the convex hypersurface K = ∇Φ(𝕊ⁿ) whose
/// support function is Φ. Zero-homogeneous: ∇Φ(λw) = ∇Φ(w) for λ > 0.
pub struct WulffMap<'a> {
    pub integrand: &'a dyn HomogeneousIntegrand,
}

impl<'a> WulffMap<'a> {
    pub fn new(integrand: &'a dyn HomogeneousIntegrand) -> Self {
        WulffMap { integrand }
    }

    pub fn apply(&self, w: &[f64]) -> Result<Vec<f64>> {
        self.integrand.gradient(w)
    }
}

/// Support-function gap Φ(ν̃) − ∇Φ(ν) · ν̃ ≥ 0, with equality exactly at
/// ν = ν̃ (Euler's relation).
pub fn calibration_gap(
    integrand: &dyn HomogeneousIntegrand,
    nu: &[f64],
    nu_tilde: &[f64],
) -> Result<f64> {
    ensure_finite(nu)?;
    ensure_finite(nu_tilde)?;
    let grad = integrand.gradient(nu)?;
    Ok(integrand.value(nu_tilde)? - linalg::dot(&grad, nu_tilde))
}

/// Divergence of the constant-in-height extension of ∇Φ(ν) over the graph
/// of u: since ∇Φ is zero-homogeneous the unnormalized normal (−∇u, 1) can
/// be used, and the divergence reduces to −tr₆(D²Φ(ν̃) · D²u).
pub fn divergence_free_check(
    integrand: &dyn HomogeneousIntegrand,
    u: &dyn ScalarField,
    x: &[f64],
) -> Result<f64> {
    ensure_finite(x)?;
    let n = u.dim();
    let grad = u.gradient(x)?;
    let hess_u = u.hessian(x)?;
    let mut nu = linalg::scale(&grad, -1.0);
    nu.push(1.0);
    let hess_phi = integrand.hessian(&nu)?.matrix;
    let mut div = 0.0;
    for i in 0..n {
        for j in 0..n {
            div -= hess_phi.get(i, j) * hess_u.get(j, i);
        }
    }
    Ok(div)
}

/// Parametric residual of the level set {u = c} under a hyperplane
/// integrand, at a point x with u(x) = c.
pub fn level_set_critical_check(
    integrand: &dyn HomogeneousIntegrand,
    u: &dyn ScalarField,
    c: f64,
    x: &[f64],
) -> Result<ParametricResidual> {
    ensure_finite(x)?;
    let val = u.value(x)?;
    if (val - c).abs() > 1e-9 * c.abs().max(1.0) {
        return Err(Error::Domain(format!(
            "point is not on the level set: u(x) = {val}, expected {c}"
        )));
    }
    let grad = u.gradient(x)?;
    if linalg::norm(&grad) < 1e-12 {
        return Err(Error::Domain("critical point of u: no level-set normal".into()));
    }
    let patch = HypersurfacePatch::LevelSet { f: u, level: c };
    el_parametric_residual(integrand, &patch, x)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FoliationReport {
    pub checked: usize,
    pub on_cone: usize,
    pub assignment_failures: usize,
    pub max_assignment_error: f64,
    pub monotone_rays_checked: usize,
    pub monotonicity_failures: usize,
}

/// Every point with u(x) ≠ 0 lies on exactly one dilate λ·{u = ±1} with
/// λ = |u(x)|^{1/2}; points with u = 0 sit on the cone itself. Along rays
/// t ↦ t x the assignment t ↦ λ(t x) is strictly monotone.
pub fn cone_foliation_check(
    u: &dyn ScalarField,
    points: &[Vec<f64>],
    tol: f64,
) -> Result<FoliationReport> {
    let mut on_cone = 0usize;
    let mut failures = 0usize;
    let mut max_err = 0.0_f64;
    for x in points {
        ensure_finite(x)?;
        let val = u.value(x)?;
        let scale2: f64 = x.iter().map(|v| v * v).sum();
        if val.abs() <= 1e-12 * scale2.max(1e-300) {
            on_cone += 1;
            continue;
        }
        let lambda = val.abs().sqrt();
        let rescaled: Vec<f64> = x.iter().map(|v| v / lambda).collect();
        let err = (u.value(&rescaled)? - val.signum()).abs();
        // Near the cone the rescaled blocks are huge and their difference
        // cancels: the identity only holds up to eps · |x|²/|u(x)|.
        let conditioning = 8.0 * f64::EPSILON * scale2 / val.abs();
        max_err = max_err.max(err / (1.0 + conditioning / tol));
        if err > tol + conditioning {
            failures += 1;
        }
    }
    // Ray monotonicity on a deterministic subset.
    let mut rays = 0usize;
    let mut mono_failures = 0usize;
    for x in points.iter().take(64) {
        let val = u.value(x)?;
        let scale2: f64 = x.iter().map(|v| v * v).sum();
        if val.abs() <= 1e-12 * scale2.max(1e-300) {
            continue;
        }
        rays += 1;
        let mut prev = 0.0;
        let mut ok = true;
        for k in 1..=8 {
            let t = k as f64 * 0.5;
            let xt: Vec<f64> = x.iter().map(|v| t * v).collect();
            let lam = u.value(&xt)?.abs().sqrt();
            if lam <= prev {
                ok = false;
            }
            prev = lam;
        }
        if !ok {
            mono_failures += 1;
        }
    }
    Ok(FoliationReport {
        checked: points.len(),
        on_cone,
        assignment_failures: failures,
        max_assignment_error: max_err,
        monotone_rays_checked: rays,
        monotonicity_failures: mono_failures,
    })
}

/// Convenience: does the branch flag indicate a seam-touching evaluation?
pub fn is_seam_branch(branch: HessBranch) -> bool {
    branch != HessBranch::Interior
}
