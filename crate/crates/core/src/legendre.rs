//! Legendre transform with damped-Newton gradient inversion, and the graph /
//! Legendre-form Euler–Lagrange residual operators.
//!
//! For w with locally invertible gradient, w*(y) = y · X(y) − w(X(y)) with
//! X = (∇w)⁻¹; then ∇w*(y) = X(y) and D²w*(y) = (D²w)⁻¹(X(y)).

use crate::error::{ensure_finite, Error, Result};
use crate::field::ScalarField;
use crate::linalg::{self, SymMat};

#[derive(Debug, Clone, Copy)]
pub struct NewtonParams {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub max_halvings: usize,
}

impl Default for NewtonParams {
    fn default() -> Self {
        NewtonParams { tolerance: 1e-12, max_iterations: 50, max_halvings: 30 }
    }
}

#[derive(Debug, Clone)]
pub struct LegendrePoint {
    /// w*(y)
    pub value: f64,
    /// X(y) = (∇w)⁻¹(y)
    pub preimage: Vec<f64>,
    pub iterations: usize,
}

/// Solves ∇w(X) = y with damped Newton steps (step halving on residual
/// increase) and returns (w*(y), X(y)).
pub fn legendre_transform(
    w: &dyn ScalarField,
    y: &[f64],
    params: NewtonParams,
    initial_guess: Option<&[f64]>,
) -> Result<LegendrePoint> {
    ensure_finite(y)?;
    let mut x = initial_guess.map(|g| g.to_vec()).unwrap_or_else(|| y.to_vec());
    let residual = |x: &[f64]| -> Result<Vec<f64>> {
        Ok(linalg::sub(&w.gradient(x)?, y))
    };
    let mut r = residual(&x)?;
    let mut rn = linalg::norm(&r);
    let mut iterations = 0;
    while rn > params.tolerance {
        if iterations >= params.max_iterations {
            return Err(Error::NoConvergence {
                iterations,
                residual: rn,
                last_iterate: x,
            });
        }
        let h = w.hessian(&x)?;
        let step = h.solve(&r)?;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..=params.max_halvings {
            let cand: Vec<f64> = x
                .iter()
                .zip(&step)
                .map(|(xi, si)| xi - lambda * si)
                .collect();
            if let Ok(rc) = residual(&cand) {
                let rcn = linalg::norm(&rc);
                if rcn < rn || rcn <= params.tolerance {
                    x = cand;
                    r = rc;
                    rn = rcn;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(Error::NoConvergence {
                iterations,
                residual: rn,
                last_iterate: x,
            });
        }
        iterations += 1;
    }
    let value = linalg::dot(y, &x) - w.value(&x)?;
    Ok(LegendrePoint { value, preimage: x, iterations })
}

/// The transform as a scalar field: each query runs an independent Newton
/// solve, so evaluation stays pure. Gradient and Hessian come from the
/// transform identities rather than differencing.
pub struct LegendreDual<'a> {
    pub w: &'a dyn ScalarField,
    pub params: NewtonParams,
}

impl<'a> LegendreDual<'a> {
    pub fn new(w: &'a dyn ScalarField) -> Self {
        LegendreDual { w, params: NewtonParams::default() }
    }
}

impl<'a> ScalarField for LegendreDual<'a> {
    fn dim(&self) -> usize {
        self.w.dim()
    }

    fn value(&self, y: &[f64]) -> Result<f64> {
        Ok(legendre_transform(self.w, y, self.params, None)?.value)
    }

    fn gradient(&self, y: &[f64]) -> Result<Vec<f64>> {
        Ok(legendre_transform(self.w, y, self.params, None)?.preimage)
    }

    fn hessian(&self, y: &[f64]) -> Result<SymMat> {
        let x = legendre_transform(self.w, y, self.params, None)?.preimage;
        self.w.hessian(&x)?.inverse()
    }
}

/// Graph-form residual φ_ij(∇u(x)) u_ij(x).
pub fn el_graph_residual(
    phi: &dyn ScalarField,
    u: &dyn ScalarField,
    x: &[f64],
) -> Result<f64> {
    ensure_finite(x)?;
    let grad_u = u.gradient(x)?;
    let hess_u = u.hessian(x)?;
    let hess_phi = phi.hessian(&grad_u)?;
    Ok(hess_phi.trace_product(&hess_u))
}

/// Legendre-form residual (w*)^{ij}(y) φ_ij(y), where (w*)^{ij} is the
/// inverse matrix of D²w*(y). Errors with the condition estimate when that
/// Hessian is numerically singular.
pub fn el_legendre_residual(
    w_star: &dyn ScalarField,
    phi: &dyn ScalarField,
    y: &[f64],
) -> Result<f64> {
    ensure_finite(y)?;
    let h_star = w_star.hessian(y)?;
    let cond = h_star.cond_estimate();
    if !cond.is_finite() || cond > 1e14 {
        return Err(Error::Singular { cond });
    }
    let inv = h_star.inverse()?;
    let h_phi = phi.hessian(y)?;
    Ok(inv.trace_product(&h_phi))
}
