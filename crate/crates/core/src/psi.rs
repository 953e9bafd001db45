//! The planar solution ψ of the degenerate hyperbolic equation, in two
//! equivalent presentations:
//!
//! * `Psi2d` — the closed form (A² + AB + B²)/(A + B) with
//!   A = (1 + x²)^{1/2}, B = (1 + y²)^{1/2}, valid in coordinates rotated by
//!   π/4 relative to the profile form. Analytic on all of ℝ², even in each
//!   variable, symmetric under swapping x and y.
//! * `PsiProfile` — the representation (f(x+y) + g(x−y))/(xy) generated by a
//!   profile pair (f, g); the generating choice here is
//!   f(s) = −g(s) = 2^{−5/2}(2 + s²)^{3/2}.
//!
//! The two are related by `PsiProfile::value(x, y) = Psi2d::value((x+y)/√2,
//! (x−y)/√2)`, which the test suite checks to rounding accuracy.
//!
//! All derivatives are hand-derived from the closed forms; numeric
//! differentiation is only used as a cross-check oracle in tests.

use crate::error::{ensure_finite, Error, Result};
use crate::linalg::SymMat;

/// Value, gradient and Hessian of a two-variable function at a point.
#[derive(Debug, Clone)]
pub struct Eval2 {
    pub value: f64,
    pub grad: [f64; 2],
    pub hess: [[f64; 2]; 2],
}

impl Eval2 {
    pub fn hess_mat(&self) -> SymMat {
        SymMat::from_fn(2, |i, j| self.hess[i][j])
    }
}

/// Closed-form ψ. Stateless; all methods are pure.
#[derive(Debug, Clone, Copy, Default)]
pub struct Psi2d;

impl Psi2d {
    pub fn value(x: f64, y: f64) -> f64 {
        let a = (1.0 + x * x).sqrt();
        let b = (1.0 + y * y).sqrt();
        ((a * a + b * b) + a * b) / (a + b)
    }

    /// Value, analytic gradient and Hessian.
    ///
    /// With A = (1+x²)^{1/2}: A' = x/A and A'' = 1/A³, so for
    /// h(A, B) = (A² + AB + B²)/(A + B):
    ///   ψ_x  = x (A + 2B) / (A + B)²
    ///   ψ_xx = 2B²x²/(A²(A+B)³) + (A + 2B)/(A²(A+B)²)
    ///   ψ_xy = −2xy/(A+B)³
    /// and symmetrically in y.
    pub fn eval(x: f64, y: f64) -> Result<Eval2> {
        ensure_finite(&[x, y])?;
        let a = (1.0 + x * x).sqrt();
        let b = (1.0 + y * y).sqrt();
        let s = a + b;
        let s2 = s * s;
        let s3 = s2 * s;
        let value = ((a * a + b * b) + a * b) / s;
        let gx = x * (a + 2.0 * b) / s2;
        let gy = y * (b + 2.0 * a) / s2;
        let hxx = 2.0 * b * b * x * x / (a * a * s3) + (a + 2.0 * b) / (a * a * s2);
        let hyy = 2.0 * a * a * y * y / (b * b * s3) + (b + 2.0 * a) / (b * b * s2);
        let hxy = -2.0 * x * y / s3;
        Ok(Eval2 {
            value,
            grad: [gx, gy],
            hess: [[hxx, hxy], [hxy, hyy]],
        })
    }

    /// det D²ψ through the closed identity 3 (A+B)⁻⁴ (2 + 1/(AB)).
    pub fn hess_det_closed(x: f64, y: f64) -> Result<f64> {
        ensure_finite(&[x, y])?;
        let a = (1.0 + x * x).sqrt();
        let b = (1.0 + y * y).sqrt();
        Ok(3.0 * (a + b).powi(-4) * (2.0 + 1.0 / (a * b)))
    }
}

/// A pair of twice continuously differentiable profiles (f, g) with their
/// first two derivatives supplied in closed form.
#[derive(Clone)]
pub struct ProfilePair {
    pub f: fn(f64) -> f64,
    pub df: fn(f64) -> f64,
    pub ddf: fn(f64) -> f64,
    pub g: fn(f64) -> f64,
    pub dg: fn(f64) -> f64,
    pub ddg: fn(f64) -> f64,
}

impl std::fmt::Debug for ProfilePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("ProfilePair {..}")
    }
}

const INV_2_5_2: f64 = 0.17677669529663687; // 2^{-5/2}

fn f_three_halves(s: f64) -> f64 {
    INV_2_5_2 * (2.0 + s * s).powf(1.5)
}
fn df_three_halves(s: f64) -> f64 {
    INV_2_5_2 * 3.0 * s * (2.0 + s * s).sqrt()
}
fn ddf_three_halves(s: f64) -> f64 {
    INV_2_5_2 * 6.0 * (1.0 + s * s) / (2.0 + s * s).sqrt()
}

impl ProfilePair {
    /// The generating choice f(s) = −g(s) = 2^{−5/2}(2 + s²)^{3/2}, which
    /// produces the everywhere-analytic ψ above.
    pub fn power_three_halves() -> Self {
        ProfilePair {
            f: f_three_halves,
            df: df_three_halves,
            ddf: ddf_three_halves,
            g: |s| -f_three_halves(s),
            dg: |s| -df_three_halves(s),
            ddg: |s| -ddf_three_halves(s),
        }
    }

    pub fn zero() -> Self {
        ProfilePair {
            f: |_| 0.0,
            df: |_| 0.0,
            ddf: |_| 0.0,
            g: |_| 0.0,
            dg: |_| 0.0,
            ddg: |_| 0.0,
        }
    }

    /// f(s) = s², g(s) = −s²; (f(x+y)+g(x−y))/(xy) ≡ 4.
    pub fn square_pair() -> Self {
        ProfilePair {
            f: |s| s * s,
            df: |s| 2.0 * s,
            ddf: |_| 2.0,
            g: |s| -s * s,
            dg: |s| -2.0 * s,
            ddg: |_| -2.0,
        }
    }
}

/// ψ in the pre-rotation coordinates, built from a profile pair.
#[derive(Debug, Clone)]
pub struct PsiProfile {
    pub profile: ProfilePair,
}

impl PsiProfile {
    pub fn new(profile: ProfilePair) -> Self {
        PsiProfile { profile }
    }

    pub fn generating() -> Self {
        Self::new(ProfilePair::power_three_halves())
    }

    /// (f(x+y) + g(x−y))/(xy). Errors on the axes xy = 0, where the
    /// singularity is only removable for compatible profiles; callers take
    /// limits explicitly when they need axis values.
    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        ensure_finite(&[x, y])?;
        if x * y == 0.0 {
            return Err(Error::Domain(
                "profile form is undefined on the axes xy = 0".into(),
            ));
        }
        let p = &self.profile;
        Ok(((p.f)(x + y) + (p.g)(x - y)) / (x * y))
    }

    /// Analytic derivatives of N(x,y)/(xy) with N = f(x+y) + g(x−y).
    pub fn eval(&self, x: f64, y: f64) -> Result<Eval2> {
        ensure_finite(&[x, y])?;
        if x * y == 0.0 {
            return Err(Error::Domain(
                "profile form is undefined on the axes xy = 0".into(),
            ));
        }
        let p = &self.profile;
        let s = x + y;
        let d = x - y;
        let n = (p.f)(s) + (p.g)(d);
        let nx = (p.df)(s) + (p.dg)(d);
        let ny = (p.df)(s) - (p.dg)(d);
        let nss = (p.ddf)(s) + (p.ddg)(d);
        let nxy = (p.ddf)(s) - (p.ddg)(d);
        let (xi, yi) = (1.0 / x, 1.0 / y);
        let value = n * xi * yi;
        let gx = nx * xi * yi - n * xi * xi * yi;
        let gy = ny * xi * yi - n * xi * yi * yi;
        let hxx = nss * xi * yi - 2.0 * nx * xi * xi * yi + 2.0 * n * xi * xi * xi * yi;
        let hyy = nss * xi * yi - 2.0 * ny * xi * yi * yi + 2.0 * n * xi * yi * yi * yi;
        let hxy = nxy * xi * yi - nx * xi * yi * yi - ny * xi * xi * yi + n * xi * xi * yi * yi;
        Ok(Eval2 {
            value,
            grad: [gx, gy],
            hess: [[hxx, hxy], [hxy, hyy]],
        })
    }

    /// Limit value on the axis y = 0 for the generating profile family
    /// (f even, g = −f): lim_{y→0} ψ(x, y) = 2 f'(x)/x.
    pub fn axis_limit_x(&self, x: f64) -> Result<f64> {
        ensure_finite(&[x])?;
        if x == 0.0 {
            let p = &self.profile;
            // Both variables to zero: limit 2 f''(0).
            return Ok(2.0 * (p.ddf)(0.0));
        }
        Ok(2.0 * (self.profile.df)(x) / x)
    }
}

/// Convenience free function mirroring the library's operation vocabulary.
pub fn psi_from_profile(profile: &ProfilePair, x: f64, y: f64) -> Result<f64> {
    PsiProfile::new(profile.clone()).value(x, y)
}
