//! The one-homogeneous extension Ψ(x, y, z) = (D² + DE + E²)/(D + E) with
//! D = (x² + z²)^{1/2}, E = (y² + z²)^{1/2}, together with its seam Taylor
//! expansion in z.
//!
//! Ψ equals |z| ψ(x/z, y/z) for z ≠ 0 (ψ the closed form in `psi`), is even
//! in every variable, symmetric in x ↔ y, positive away from the origin, and
//! C^{2,1} but not C³ across the axis rays {y = z = 0} and {x = z = 0}.
//!
//! Derivative formulas (hand-derived; h(D,E) = (D²+DE+E²)/(D+E)):
//!   Ψ_x  = x (D + 2E)/(D+E)²                Ψ_z = 3z/(D+E)
//!   Ψ_xx = 2E²(x/D)²/(D+E)³ + (z/D)²(D+2E)/(D+E)²
//!   Ψ_xy = −2xy/(D+E)³
//!   Ψ_xz = −3(x/D) z/(D+E)²
//!   Ψ_zz = [2E²(z/D)² − 4z² + 2D²(z/E)²]/(D+E)³
//!        + (x/D)²(D+2E)/(D+E)² + (y/E)²(E+2D)/(D+E)²
//! (and the x ↔ y mirror images). The ratio forms x/D, z/E are all bounded
//! by one, so the formulas are stable arbitrarily close to the axes; exactly
//! on an axis the one-sided limit matrix is returned and flagged.

use crate::error::{ensure_finite, Error, Result};
use crate::linalg::SymMat;

/// Which branch produced a Hessian value near the non-smooth set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum HessBranch {
    /// Everywhere away from {z = 0}.
    Interior,
    /// On the symmetry plane {z = 0, xy ≠ 0}: the |x|, |y| branch formulas.
    SeamPlane,
    /// One-sided limit on an axis ray {y = z = 0} or {x = z = 0}.
    AxisLimit,
}

#[derive(Debug, Clone)]
pub struct Eval3 {
    pub value: f64,
    pub grad: [f64; 3],
    pub hess: [[f64; 3]; 3],
    pub branch: HessBranch,
}

impl Eval3 {
    pub fn hess_mat(&self) -> SymMat {
        SymMat::from_fn(3, |i, j| self.hess[i][j])
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PsiBig;

impl PsiBig {
    pub fn value(x: f64, y: f64, z: f64) -> f64 {
        let d = x.hypot(z);
        let e = y.hypot(z);
        ((d * d + e * e) + d * e) / (d + e)
    }

    pub fn gradient(x: f64, y: f64, z: f64) -> Result<[f64; 3]> {
        ensure_finite(&[x, y, z])?;
        let d = x.hypot(z);
        let e = y.hypot(z);
        let s = d + e;
        if s == 0.0 {
            return Err(Error::Domain("gradient of Ψ is undefined at the origin".into()));
        }
        Ok([
            x * (d + 2.0 * e) / (s * s),
            y * (e + 2.0 * d) / (s * s),
            3.0 * z / s,
        ])
    }

    /// Value, gradient and Hessian. On the axis rays the Hessian is the
    /// one-sided limit, flagged `AxisLimit`; on {z = 0, xy ≠ 0} it is flagged
    /// `SeamPlane`.
    pub fn eval(x: f64, y: f64, z: f64) -> Result<Eval3> {
        ensure_finite(&[x, y, z])?;
        let d = x.hypot(z);
        let e = y.hypot(z);
        let s = d + e;
        if s == 0.0 {
            return Err(Error::Domain("Ψ is not differentiable at the origin".into()));
        }
        let s2 = s * s;
        let s3 = s2 * s;
        let value = ((d * d + e * e) + d * e) / s;
        let grad = [
            x * (d + 2.0 * e) / s2,
            y * (e + 2.0 * d) / s2,
            3.0 * z / s,
        ];
        if d == 0.0 || e == 0.0 {
            // Axis ray: limit Hessian diag(0, 2, 3)/|x| (or mirrored).
            let mut h = [[0.0; 3]; 3];
            if e == 0.0 {
                h[1][1] = 2.0 / d;
                h[2][2] = 3.0 / d;
            } else {
                h[0][0] = 2.0 / e;
                h[2][2] = 3.0 / e;
            }
            return Ok(Eval3 { value, grad, hess: h, branch: HessBranch::AxisLimit });
        }
        let (xd, zd) = (x / d, z / d);
        let (ye, ze) = (y / e, z / e);
        let hxx = 2.0 * e * e * xd * xd / s3 + zd * zd * (d + 2.0 * e) / s2;
        let hyy = 2.0 * d * d * ye * ye / s3 + ze * ze * (e + 2.0 * d) / s2;
        let hzz = (2.0 * e * e * zd * zd - 4.0 * z * z + 2.0 * d * d * ze * ze) / s3
            + xd * xd * (d + 2.0 * e) / s2
            + ye * ye * (e + 2.0 * d) / s2;
        let hxy = -2.0 * x * y / s3;
        let hxz = -3.0 * xd * z / s2;
        let hyz = -3.0 * ye * z / s2;
        let branch = if z == 0.0 { HessBranch::SeamPlane } else { HessBranch::Interior };
        Ok(Eval3 {
            value,
            grad,
            hess: [[hxx, hxy, hxz], [hxy, hyy, hyz], [hxz, hyz, hzz]],
            branch,
        })
    }

    /// Ψ_zz on the seam plane in closed form: 3/(|x| + |y|).
    pub fn zz_on_seam(x: f64, y: f64) -> f64 {
        3.0 / (x.abs() + y.abs())
    }
}

/// Taylor coefficients a_k of (1 + s)^{3/2} at s = 0; a₂ = 3/8, a₃ = −1/16,
/// a_{k+1} = a_k (3/2 − k)/(k + 1).
pub fn binomial_three_halves(max_k: usize) -> Vec<f64> {
    let mut a = Vec::with_capacity(max_k + 1);
    a.push(1.0);
    for k in 0..max_k {
        let prev = a[k];
        a.push(prev * (1.5 - k as f64) / (k as f64 + 1.0));
    }
    a
}

/// Truncated expansion of Ψ around the seam plane {z = 0}:
///
///   Ψ = (x² + |xy| + y²)/(|x|+|y|) + (3/2) z²/(|x|+|y|)
///    − (|x|+|y|)⁻¹ Σ_{k=2}^{K} a_k ( Σ_{i=0}^{2k−4} |x|^{−(i+1)} |y|^{−(2k−3−i)} ) z^{2k}.
///
/// Valid for |z| < min(|x|, |y|); the usual working region is
/// {|x|, |y| ≥ δ, |z| < δ/2}.
#[derive(Debug, Clone)]
pub struct SeamExpansion {
    pub truncation_order: usize,
    coeffs: Vec<f64>,
}

impl SeamExpansion {
    pub fn new(truncation_order: usize) -> Result<Self> {
        if truncation_order < 2 {
            return Err(Error::Domain("truncation order must be at least 2".into()));
        }
        Ok(SeamExpansion {
            truncation_order,
            coeffs: binomial_three_halves(truncation_order),
        })
    }

    pub fn coefficient(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    pub fn eval(&self, x: f64, y: f64, z: f64) -> Result<f64> {
        ensure_finite(&[x, y, z])?;
        let ax = x.abs();
        let ay = y.abs();
        if ax == 0.0 || ay == 0.0 {
            return Err(Error::OutOfRegion("seam expansion needs |x|, |y| > 0".into()));
        }
        if z.abs() >= 0.5 * ax.min(ay) {
            return Err(Error::OutOfRegion(format!(
                "|z| = {} is not below min(|x|,|y|)/2 = {}",
                z.abs(),
                0.5 * ax.min(ay)
            )));
        }
        let s = ax + ay;
        let mut total = (x * x + ax * ay + y * y) / s + 1.5 * z * z / s;
        let z2 = z * z;
        let mut zpow = z2 * z2; // z^{2k} starting at k = 2
        for k in 2..=self.truncation_order {
            let mut inner = 0.0;
            for i in 0..=(2 * k - 4) {
                inner += ax.powi(-(i as i32 + 1)) * ay.powi(-(2 * k as i32 - 3 - i as i32));
            }
            total -= self.coeffs[k] * inner * zpow / s;
            zpow *= z2;
        }
        Ok(total)
    }
}
