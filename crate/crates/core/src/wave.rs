//! Wave-operator checks for the planar reduction. A function ψ solves
//!
//!   □ψ + 2 ∇ψ · (1/x, −1/y) = 0   (□ = ∂x² − ∂y²)
//!
//! in the positive quadrant exactly when □(x y ψ) = 0; the two residuals are
//! tied by the product-rule identity □(xyψ) = xy · (□ψ + 2∇ψ·(1/x, −1/y)).

use crate::calculus::fourth_order_second_diff;
use crate::error::{ensure_finite, Error, Result};
use crate::field::ScalarField;

pub struct WaveResiduals {
    /// □ψ + 2 ∇ψ · (1/x, −1/y)
    pub el_form: f64,
    /// xy · el_form, the d'Alembertian of x y ψ by the product rule
    pub box_xy_form: f64,
}

/// Both residuals from analytic derivatives of ψ.
pub fn wave_residual_2d(psi: &dyn ScalarField, x: f64, y: f64) -> Result<WaveResiduals> {
    ensure_finite(&[x, y])?;
    if x <= 0.0 || y <= 0.0 {
        return Err(Error::Domain(
            "wave residuals are defined on the open positive quadrant".into(),
        ));
    }
    let p = [x, y];
    let g = psi.gradient(&p)?;
    let h = psi.hessian(&p)?;
    let el = h.get(0, 0) - h.get(1, 1) + 2.0 * (g[0] / x - g[1] / y);
    Ok(WaveResiduals { el_form: el, box_xy_form: x * y * el })
}

/// □(x y ψ) by fourth-order central stencils on the product function; the
/// numeric cross-check of the analytic residuals.
pub fn box_xy_numeric(psi: &dyn ScalarField, x: f64, y: f64, step: f64) -> Result<f64> {
    ensure_finite(&[x, y])?;
    if x <= 0.0 || y <= 0.0 {
        return Err(Error::Domain(
            "wave residuals are defined on the open positive quadrant".into(),
        ));
    }
    let f = |p: &[f64]| -> f64 {
        p[0] * p[1] * psi.value(p).unwrap_or(f64::NAN)
    };
    let h = step * x.abs().max(y.abs()).max(1.0);
    let fxx = fourth_order_second_diff(&f, &[x, y], 0, h)?;
    let fyy = fourth_order_second_diff(&f, &[x, y], 1, h)?;
    Ok(fxx - fyy)
}
