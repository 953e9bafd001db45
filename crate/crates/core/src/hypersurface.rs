//! Hypersurface patches (graphs and level sets), their unit normals and
//! second fundamental forms, and the parametric Euler–Lagrange residual
//! tr(D²Φ(ν) · II) contracted in a shared deterministic tangent frame.
//!
//! Orientation conventions, fixed once for the whole crate:
//! * graphs carry the upward normal (positive last component) and
//!   II = D²u / (1 + |∇u|²)^{1/2} projected to the tangent frame;
//! * level sets {F = c} carry ν = ∇F/|∇F| and II = D²F/|∇F| projected.
//!
//! Writing a graph as the level set of u(x) − x_{n+1} flips the normal but
//! reproduces the same II matrix, so the two representations agree for even
//! integrands; zero sets never depend on the choice.

use crate::calculus::{tangent_frame, TangentFrame};
use crate::error::{ensure_finite, Error, Result};
use crate::field::ScalarField;
use crate::linalg::{self, SymMat};
use crate::phi::HomogeneousIntegrand;
use crate::psi3d::HessBranch;

pub enum HypersurfacePatch<'a> {
    /// Graph of u over ℝⁿ; points are base coordinates x ∈ ℝⁿ.
    Graph { u: &'a dyn ScalarField },
    /// Level set {f = level}; points are ambient coordinates with
    /// f(x) = level.
    LevelSet { f: &'a dyn ScalarField, level: f64 },
}

pub struct SecondFundamentalForm {
    pub normal: Vec<f64>,
    pub frame: TangentFrame,
    /// II in the frame basis.
    pub form: SymMat,
}

pub fn second_fundamental_form(
    patch: &HypersurfacePatch<'_>,
    x: &[f64],
) -> Result<SecondFundamentalForm> {
    ensure_finite(x)?;
    match patch {
        HypersurfacePatch::Graph { u } => {
            let grad = u.gradient(x)?;
            let hess = u.hessian(x)?;
            let w = (1.0 + linalg::dot(&grad, &grad)).sqrt();
            let n = x.len();
            let mut normal: Vec<f64> = grad.iter().map(|g| -g / w).collect();
            normal.push(1.0 / w);
            let normal = linalg::normalize(&normal).expect("graph normal is never zero");
            let frame = tangent_frame(&normal)?;
            let form = SymMat::from_fn(n, |a, b| {
                hess.quad_form(&frame.basis[a][..n], &frame.basis[b][..n]) / w
            });
            Ok(SecondFundamentalForm { normal, frame, form })
        }
        HypersurfacePatch::LevelSet { f, .. } => {
            let grad = f.gradient(x)?;
            let hess = f.hessian(x)?;
            let gn = linalg::norm(&grad);
            if gn < 1e-14 {
                return Err(Error::Domain(
                    "level-set normal undefined where the gradient vanishes".into(),
                ));
            }
            let normal = linalg::scale(&grad, 1.0 / gn);
            let normal = linalg::normalize(&normal).unwrap();
            let frame = tangent_frame(&normal)?;
            let m = frame.basis.len();
            let form = SymMat::from_fn(m, |a, b| {
                hess.quad_form(&frame.basis[a], &frame.basis[b]) / gn
            });
            Ok(SecondFundamentalForm { normal, frame, form })
        }
    }
}

/// Principal curvatures of the graph of u at base point x (upward normal):
/// the eigenvalues κ of the shape operator, solved as the generalized
/// symmetric problem (D²u/W) v = κ (I + ∇u ∇uᵀ) v.
pub fn graph_principal_curvatures(u: &dyn ScalarField, x: &[f64]) -> Result<Vec<f64>> {
    ensure_finite(x)?;
    let grad = u.gradient(x)?;
    let mut hess = u.hessian(x)?;
    let w = (1.0 + linalg::dot(&grad, &grad)).sqrt();
    hess.scale_assign(1.0 / w);
    let n = x.len();
    let metric = SymMat::from_fn(n, |i, j| {
        let kron = if i == j { 1.0 } else { 0.0 };
        kron + grad[i] * grad[j]
    });
    linalg::generalized_eigenvalues(&hess, &metric)
}

pub struct ParametricResidual {
    pub residual: f64,
    pub branch: HessBranch,
}

/// tr(D²Φ(ν) · II), both tensors expressed in the same tangent frame of ν.
/// The radial direction is excluded: D²Φ(ν) annihilates ν and II is
/// tangential, so nothing is lost.
pub fn el_parametric_residual(
    integrand: &dyn HomogeneousIntegrand,
    patch: &HypersurfacePatch<'_>,
    x: &[f64],
) -> Result<ParametricResidual> {
    let sff = second_fundamental_form(patch, x)?;
    let hess = integrand.hessian(&sff.normal)?;
    let m = sff.frame.basis.len();
    let restricted = SymMat::from_fn(m, |a, b| {
        hess.matrix.quad_form(&sff.frame.basis[a], &sff.frame.basis[b])
    });
    Ok(ParametricResidual {
        residual: restricted.trace_product(&sff.form),
        branch: hess.branch,
    })
}
