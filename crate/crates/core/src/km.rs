//! The generalized hyperbolic family behind the block-radial ansatz: with
//! u*(p, q) = (1/m)(|p|^m − |q|^m), p, q ∈ ℝ^{k+1}, and φ(p, q) = ψ(|p|, |q|),
//! the Legendre-form equation is equivalent to
//!
//!   (m−1)⁻¹ x^{2−m} ψ_xx + k x^{1−m} ψ_x = (m−1)⁻¹ y^{2−m} ψ_yy + k y^{1−m} ψ_y
//!
//! in the positive quadrant. Two cases have elementary general solutions:
//! k = m = 2 (the main six-dimensional construction) and k = 1, m = 4, where
//! ψ = (f(x² + y²) + g(x² − y²))/(x² y²).

use crate::error::{ensure_finite, Error, Result};
use crate::field::ScalarField;
use crate::linalg::{self, SymMat};
use crate::phi::{HessianEval, HomogeneousIntegrand, RadialEval};
use crate::psi::{ProfilePair, PsiProfile};
use crate::psi3d::HessBranch;

#[derive(Debug, Clone)]
pub struct KmFamily {
    pub k: usize,
    pub m: f64,
}

impl KmFamily {
    pub fn new(k: usize, m: f64) -> Result<Self> {
        if k == 0 || !(m > 1.0) {
            return Err(Error::Domain("family requires k ≥ 1 and m > 1".into()));
        }
        Ok(KmFamily { k, m })
    }
}

/// Residual of the family's hyperbolic equation at (x, y) in the open
/// positive quadrant.
pub fn km_hyperbolic_residual(
    family: &KmFamily,
    psi: &dyn ScalarField,
    x: f64,
    y: f64,
) -> Result<f64> {
    ensure_finite(&[x, y])?;
    if x <= 0.0 || y <= 0.0 {
        return Err(Error::Domain(
            "the hyperbolic family is only posed on the open positive quadrant".into(),
        ));
    }
    let p = [x, y];
    let g = psi.gradient(&p)?;
    let h = psi.hessian(&p)?;
    let m = family.m;
    let k = family.k as f64;
    let c = 1.0 / (m - 1.0);
    Ok(c * x.powf(2.0 - m) * h.get(0, 0) + k * x.powf(1.0 - m) * g[0]
        - c * y.powf(2.0 - m) * h.get(1, 1)
        - k * y.powf(1.0 - m) * g[1])
}

/// ψ(x, y) = (f(x² + y²) + g(x² − y²))/(x² y²): the k = 1, m = 4 solution
/// form, as a scalar field with analytic derivatives (chain rule through
/// a = x², b = y² over the plain profile form).
#[derive(Debug, Clone)]
pub struct SquaredProfilePsi {
    inner: PsiProfile,
}

impl SquaredProfilePsi {
    pub fn new(profile: ProfilePair) -> Self {
        SquaredProfilePsi { inner: PsiProfile::new(profile) }
    }
}

impl ScalarField for SquaredProfilePsi {
    fn dim(&self) -> usize {
        2
    }

    fn value(&self, p: &[f64]) -> Result<f64> {
        self.inner.value(p[0] * p[0], p[1] * p[1])
    }

    fn gradient(&self, p: &[f64]) -> Result<Vec<f64>> {
        let (x, y) = (p[0], p[1]);
        let e = self.inner.eval(x * x, y * y)?;
        Ok(vec![2.0 * x * e.grad[0], 2.0 * y * e.grad[1]])
    }

    fn hessian(&self, p: &[f64]) -> Result<SymMat> {
        let (x, y) = (p[0], p[1]);
        let e = self.inner.eval(x * x, y * y)?;
        let hxx = 2.0 * e.grad[0] + 4.0 * x * x * e.hess[0][0];
        let hyy = 2.0 * e.grad[1] + 4.0 * y * y * e.hess[1][1];
        let hxy = 4.0 * x * y * e.hess[0][1];
        Ok(SymMat::from_fn(2, |i, j| match (i, j) {
            (0, 0) => hxx,
            (1, 1) => hyy,
            _ => hxy,
        }))
    }
}

/// The dual graph of the k = 1, m = 4 family:
/// u(p, q) = (3/4)(|p|^{4/3} − |q|^{4/3}) with p, q ∈ ℝ^{block_dim}.
#[derive(Debug, Clone, Copy)]
pub struct PowerGraph43 {
    pub block_dim: usize,
}

impl ScalarField for PowerGraph43 {
    fn dim(&self) -> usize {
        2 * self.block_dim
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        ensure_finite(x)?;
        let k = self.block_dim;
        let a = linalg::norm(&x[..k]);
        let b = linalg::norm(&x[k..]);
        Ok(0.75 * (a.powf(4.0 / 3.0) - b.powf(4.0 / 3.0)))
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        ensure_finite(x)?;
        let k = self.block_dim;
        let a = linalg::norm(&x[..k]);
        let b = linalg::norm(&x[k..]);
        if a == 0.0 || b == 0.0 {
            return Err(Error::Domain("gradient degenerates on the block axes".into()));
        }
        let ca = a.powf(-2.0 / 3.0);
        let cb = b.powf(-2.0 / 3.0);
        Ok(x.iter()
            .enumerate()
            .map(|(i, v)| if i < k { ca * v } else { -cb * v })
            .collect())
    }

    fn hessian(&self, x: &[f64]) -> Result<SymMat> {
        ensure_finite(x)?;
        let k = self.block_dim;
        let a = linalg::norm(&x[..k]);
        let b = linalg::norm(&x[k..]);
        if a == 0.0 || b == 0.0 {
            return Err(Error::Domain("hessian degenerates on the block axes".into()));
        }
        // radial eigenvalue (1/3)|p|^{-2/3}, angular |p|^{-2/3}; mirrored in q.
        let ca = a.powf(-2.0 / 3.0);
        let cb = b.powf(-2.0 / 3.0);
        Ok(SymMat::from_fn(2 * k, |i, j| {
            let (bi, ii) = (i >= k, if i >= k { i - k } else { i });
            let (bj, jj) = (j >= k, if j >= k { j - k } else { j });
            if bi != bj {
                return 0.0;
            }
            let (c, r2, u, v) = if !bi {
                (ca, a, x[ii] / a, x[jj] / a)
            } else {
                (-cb, b, x[k + ii] / b, x[k + jj] / b)
            };
            let _ = r2;
            let kron = if ii == jj { 1.0 } else { 0.0 };
            c * (kron - (2.0 / 3.0) * u * v)
        }))
    }
}

/// Candidate integrand from the k = 1, m = 4 representation with
/// f(s) = s³, g(s) = −s³: the homogeneous extension of the squared-profile
/// ψ, i.e. 2(3x⁴ + y⁴)/(x² |z|) in the block radii. It blows up on {z = 0},
/// so it cannot be a (continuous, let alone uniformly elliptic) integrand;
/// the certifier is expected to reject it.
#[derive(Debug, Clone, Copy)]
pub struct KmCandidateIntegrand;

impl KmCandidateIntegrand {
    fn reduced(&self, x: f64, y: f64, z: f64) -> Result<RadialEval> {
        if x == 0.0 || z == 0.0 {
            return Err(Error::Domain(
                "candidate integrand is singular on {x = 0} and {z = 0}".into(),
            ));
        }
        let az = z.abs();
        let sz = z.signum();
        let base = 6.0 * x * x + 2.0 * y.powi(4) / (x * x);
        let bx = 12.0 * x - 4.0 * y.powi(4) / x.powi(3);
        let by = 8.0 * y.powi(3) / (x * x);
        Ok(RadialEval {
            value: base / az,
            gx: bx / az,
            gy: by / az,
            gz: -base * sz / (z * z),
            gxx: (12.0 + 12.0 * y.powi(4) / x.powi(4)) / az,
            gyy: 24.0 * y * y / (x * x * az),
            gzz: 2.0 * base / (az * az * az),
            gxy: -16.0 * y.powi(3) / (x.powi(3) * az),
            gxz: -bx * sz / (z * z),
            gyz: -by * sz / (z * z),
        })
    }
}

impl HomogeneousIntegrand for KmCandidateIntegrand {
    fn ambient_dim(&self) -> usize {
        5 // p, q ∈ ℝ², plus z
    }

    fn seam_distance(&self, w: &[f64]) -> Option<f64> {
        let n = linalg::norm(w);
        if n == 0.0 {
            None
        } else {
            Some(w[4].abs() / n)
        }
    }

    fn value(&self, w: &[f64]) -> Result<f64> {
        ensure_finite(w)?;
        let x = linalg::norm(&w[..2]);
        let y = linalg::norm(&w[2..4]);
        let z = w[4];
        if x == 0.0 || z == 0.0 {
            return Err(Error::Domain(
                "candidate integrand is singular on {x = 0} and {z = 0}".into(),
            ));
        }
        Ok((6.0 * x * x + 2.0 * y.powi(4) / (x * x)) / z.abs())
    }

    fn gradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        ensure_finite(w)?;
        let x = linalg::norm(&w[..2]);
        let y = linalg::norm(&w[2..4]);
        let r = self.reduced(x, y, w[4])?;
        if y == 0.0 {
            return Err(Error::Domain("gradient lift needs |q| > 0".into()));
        }
        let mut g = vec![0.0; 5];
        for i in 0..2 {
            g[i] = r.gx * w[i] / x;
            g[2 + i] = r.gy * w[2 + i] / y;
        }
        g[4] = r.gz;
        Ok(g)
    }

    fn hessian(&self, w: &[f64]) -> Result<HessianEval> {
        ensure_finite(w)?;
        let x = linalg::norm(&w[..2]);
        let y = linalg::norm(&w[2..4]);
        let r = self.reduced(x, y, w[4])?;
        if y == 0.0 {
            return Err(Error::Domain("hessian lift needs |q| > 0".into()));
        }
        let phat = [w[0] / x, w[1] / x];
        let qhat = [w[2] / y, w[3] / y];
        let (ax, ay) = (r.gx / x, r.gy / y);
        let matrix = SymMat::from_fn(5, |i, j| {
            let zi = i == 4;
            let zj = j == 4;
            match (zi, zj) {
                (true, true) => r.gzz,
                (true, false) | (false, true) => {
                    let c = if zi { j } else { i };
                    if c < 2 {
                        r.gxz * phat[c]
                    } else {
                        r.gyz * qhat[c - 2]
                    }
                }
                (false, false) => {
                    let (bi, ii) = (i >= 2, i % 2);
                    let (bj, jj) = (j >= 2, j % 2);
                    match (bi, bj) {
                        (false, false) => {
                            let kron = if ii == jj { 1.0 } else { 0.0 };
                            r.gxx * phat[ii] * phat[jj] + ax * (kron - phat[ii] * phat[jj])
                        }
                        (true, true) => {
                            let kron = if ii == jj { 1.0 } else { 0.0 };
                            r.gyy * qhat[ii] * qhat[jj] + ay * (kron - qhat[ii] * qhat[jj])
                        }
                        _ => {
                            let (pi, qi) = if bi { (jj, ii) } else { (ii, jj) };
                            r.gxy * phat[pi] * qhat[qi]
                        }
                    }
                }
            }
        });
        Ok(HessianEval { matrix, branch: HessBranch::Interior })
    }
}
