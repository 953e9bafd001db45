//! The anisotropic surface-energy integrand on ℝ⁷ and its restriction to
//! {z = 0} ⊂ ℝ⁶.
//!
//! With x = |p|, y = |q| (p, q ∈ ℝ³) the integrand is
//!
//!   Φ(p, q, z) = [((x+y)² + 2z²)^{3/2} − ((x−y)² + 2z²)^{3/2}] / (2^{5/2} x y),
//!
//! the one-homogeneous function whose restriction to height one is the
//! Legendre-side solution ψ(x, y) of the planar hyperbolic equation:
//! Φ(p, q, z) = |z| ψ(x/z, y/z) for z ≠ 0 (ψ in profile coordinates).
//! Equivalently Φ(p, q, z) = Ψ((x+y)/√2, (x−y)/√2, z) in terms of the D, E
//! closed form of `psi3d`.
//!
//! Φ is positive, even, one-homogeneous, analytic away from the cone seam
//! {z = 0, |p| = |q|}, and C^{2,1} across it.
//!
//! Two evaluation paths cover the domain:
//!
//! * **series** — writing S = x² + y² + 2z², τ = x²y², the function equals
//!   W(S, τ) = Σ_m c_m (τ/S²)^m √S with the odd binomial-3/2 coefficients.
//!   S and τ are polynomials in the ambient coordinates, so this path is
//!   smooth across the block axes |p| = 0, |q| = 0 where radial chain rules
//!   degenerate. Used when 4τ/S² < 0.09 (geometric tail ratio ≤ 0.09).
//! * **direct** — the radial lift of the rotated closed form Ψ, used
//!   elsewhere. The two paths agree on an overlap band, which the tests
//!   exploit as an internal cross-check.

use crate::error::{ensure_finite, Error, Result};
use crate::field::ScalarField;
use crate::linalg::{self, SymMat};
use crate::psi3d::{HessBranch, PsiBig};

/// Hessian of a one-homogeneous integrand together with the branch marker
/// used near its non-smooth set.
#[derive(Debug, Clone)]
pub struct HessianEval {
    pub matrix: SymMat,
    pub branch: HessBranch,
}

/// Positive even one-homogeneous integrand on ℝ^{n+1} \ {0}.
pub trait HomogeneousIntegrand: Sync {
    fn ambient_dim(&self) -> usize;
    fn value(&self, w: &[f64]) -> Result<f64>;
    fn gradient(&self, w: &[f64]) -> Result<Vec<f64>>;
    fn hessian(&self, w: &[f64]) -> Result<HessianEval>;

    /// Scale-invariant distance from the direction w to the integrand's
    /// non-smooth set, when it has one.
    fn seam_distance(&self, _w: &[f64]) -> Option<f64> {
        None
    }
}

/// Reduced derivatives of a block-radial function G(x, y[, z]).
#[derive(Debug, Clone, Copy, Default)]
pub struct RadialEval {
    pub value: f64,
    pub gx: f64,
    pub gy: f64,
    pub gz: f64,
    pub gxx: f64,
    pub gyy: f64,
    pub gzz: f64,
    pub gxy: f64,
    pub gxz: f64,
    pub gyz: f64,
}

/// Splits w into block radii; errors at the origin.
fn split_blocks(w: &[f64], block_dim: usize, with_z: bool) -> Result<(f64, f64, f64)> {
    ensure_finite(w)?;
    let expect = 2 * block_dim + usize::from(with_z);
    if w.len() != expect {
        return Err(Error::Domain(format!(
            "expected {} coordinates, got {}",
            expect,
            w.len()
        )));
    }
    let x = linalg::norm(&w[..block_dim]);
    let y = linalg::norm(&w[block_dim..2 * block_dim]);
    let z = if with_z { w[2 * block_dim] } else { 0.0 };
    if x == 0.0 && y == 0.0 && z == 0.0 {
        return Err(Error::Domain("integrand is undefined at the origin".into()));
    }
    Ok((x, y, z))
}

/// Assembles the ambient gradient of G(|p|, |q|, z) from reduced data.
/// Requires x, y > 0 (callers route near-axis points through the series path).
fn lift_gradient(
    w: &[f64],
    block_dim: usize,
    with_z: bool,
    x: f64,
    y: f64,
    r: &RadialEval,
) -> Vec<f64> {
    let k = block_dim;
    let mut g = vec![0.0; w.len()];
    for i in 0..k {
        g[i] = r.gx * w[i] / x;
        g[k + i] = r.gy * w[k + i] / y;
    }
    if with_z {
        g[2 * k] = r.gz;
    }
    g
}

/// Assembles the ambient Hessian of G(|p|, |q|, z) from reduced data:
/// radial/angular split per block plus the mixed rows.
fn lift_hessian(
    w: &[f64],
    block_dim: usize,
    with_z: bool,
    x: f64,
    y: f64,
    r: &RadialEval,
) -> SymMat {
    let k = block_dim;
    let n = w.len();
    let phat: Vec<f64> = w[..k].iter().map(|v| v / x).collect();
    let qhat: Vec<f64> = w[k..2 * k].iter().map(|v| v / y).collect();
    let (ax, ay) = (r.gx / x, r.gy / y);
    SymMat::from_fn(n, |i, j| {
        let zi = with_z && i == 2 * k;
        let zj = with_z && j == 2 * k;
        match (zi, zj) {
            (true, true) => r.gzz,
            (true, false) | (false, true) => {
                let c = if zi { j } else { i };
                if c < k {
                    r.gxz * phat[c]
                } else {
                    r.gyz * qhat[c - k]
                }
            }
            (false, false) => {
                let (bi, ii) = (i >= k, if i >= k { i - k } else { i });
                let (bj, jj) = (j >= k, if j >= k { j - k } else { j });
                match (bi, bj) {
                    (false, false) => {
                        let kron = if ii == jj { 1.0 } else { 0.0 };
                        r.gxx * phat[ii] * phat[jj] + ax * (kron - phat[ii] * phat[jj])
                    }
                    (true, true) => {
                        let kron = if ii == jj { 1.0 } else { 0.0 };
                        r.gyy * qhat[ii] * qhat[jj] + ay * (kron - qhat[ii] * qhat[jj])
                    }
                    (false, true) => r.gxy * phat[ii] * qhat[jj],
                    (true, false) => r.gxy * phat[jj] * qhat[ii],
                }
            }
        }
    })
}

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Odd binomial coefficients of (1+s)^{3/2} scaled for the series form:
/// c_m = binom(3/2, 2m+1) · 2^{2m − 1/2}.
fn series_coefficients(count: usize) -> Vec<f64> {
    let mut binom = Vec::with_capacity(2 * count + 2);
    binom.push(1.0_f64);
    for n in 0..(2 * count + 1) {
        let prev = binom[n];
        binom.push(prev * (1.5 - n as f64) / (n as f64 + 1.0));
    }
    (0..count)
        .map(|m| binom[2 * m + 1] * 2f64.powi(2 * m as i32) * SQRT_HALF)
        .collect()
}

const SERIES_TERMS: usize = 40;
/// Switch to the series path when 4τ/S² is below this bound.
const SERIES_BAND: f64 = 0.09;

#[derive(Debug, Clone, Copy)]
struct WDerivatives {
    w: f64,
    ws: f64,
    wt: f64,
    wss: f64,
    wst: f64,
    wtt: f64,
}

/// W(S, τ) and derivatives via the τ-power series; valid for 4τ/S² small.
/// Powers of ξ = τ/S² are tracked explicitly so the axis value ξ = 0 needs
/// no special case.
fn w_series(s: f64, tau: f64, coeffs: &[f64]) -> WDerivatives {
    let xi = tau / (s * s);
    let mut sum0 = 0.0;
    let mut sum_s = 0.0;
    let mut sum_ss = 0.0;
    let mut sum_t = 0.0;
    let mut sum_st = 0.0;
    let mut sum_tt = 0.0;
    let mut pow_m = 1.0; // xi^m
    let mut pow_m1 = 0.0; // xi^{m-1}
    let mut pow_m2 = 0.0; // xi^{m-2}
    for (m, &c) in coeffs.iter().enumerate() {
        let mf = m as f64;
        let e = 0.5 - 2.0 * mf;
        let term = c * pow_m;
        sum0 += term;
        sum_s += e * term;
        sum_ss += e * (e - 1.0) * term;
        if m >= 1 {
            sum_t += c * mf * pow_m1;
            sum_st += c * mf * e * pow_m1;
        }
        if m >= 2 {
            sum_tt += c * mf * (mf - 1.0) * pow_m2;
        }
        pow_m2 = pow_m1;
        pow_m1 = pow_m;
        pow_m *= xi;
    }
    let sq = s.sqrt();
    WDerivatives {
        w: sq * sum0,
        ws: sum_s / sq,
        wt: sum_t / (sq * s),
        wss: sum_ss / (sq * s),
        wst: sum_st / (sq * s * s),
        wtt: sum_tt / (sq * s * s * s),
    }
}

/// The main integrand. `block_dim` is the dimension of each of the p, q
/// blocks (3 for the six-dimensional problem); `with_z` selects the lifted
/// (graph) version on ℝ^{2k+1} versus the restriction to the hyperplane.
#[derive(Debug, Clone)]
pub struct PhiIntegrand {
    pub block_dim: usize,
    pub with_z: bool,
    coeffs: Vec<f64>,
}

impl PhiIntegrand {
    pub fn new(block_dim: usize, with_z: bool) -> Self {
        PhiIntegrand {
            block_dim,
            with_z,
            coeffs: series_coefficients(SERIES_TERMS),
        }
    }

    /// Φ on ℝ⁷ = ℝ³ × ℝ³ × ℝ.
    pub fn seven_dim() -> Self {
        Self::new(3, true)
    }

    /// Φ₀ on ℝ⁶, the restriction of Φ to {z = 0}.
    pub fn six_dim_restriction() -> Self {
        Self::new(3, false)
    }

    /// Value from the reduced radii.
    pub fn reduced_value(&self, x: f64, y: f64, z: f64) -> f64 {
        let s = x * x + y * y + 2.0 * z * z;
        let tau = x * x * y * y;
        if 4.0 * tau < SERIES_BAND * s * s {
            w_series(s, tau, &self.coeffs).w
        } else {
            let xr = (x + y) * SQRT_HALF;
            let yr = (x - y) * SQRT_HALF;
            PsiBig::value(xr, yr, z)
        }
    }

    /// Reduced derivatives in the radii (x, y, z); used by callers that work
    /// in the quotient, e.g. seam scans. Requires being on the direct path.
    pub fn reduced_eval(&self, x: f64, y: f64, z: f64) -> Result<(RadialEval, HessBranch)> {
        let xr = (x + y) * SQRT_HALF;
        let yr = (x - y) * SQRT_HALF;
        let e = PsiBig::eval(xr, yr, z)?;
        let gx = (e.grad[0] + e.grad[1]) * SQRT_HALF;
        let gy = (e.grad[0] - e.grad[1]) * SQRT_HALF;
        let (hxx, hyy, hxy) = (e.hess[0][0], e.hess[1][1], e.hess[0][1]);
        Ok((
            RadialEval {
                value: e.value,
                gx,
                gy,
                gz: e.grad[2],
                gxx: 0.5 * (hxx + 2.0 * hxy + hyy),
                gyy: 0.5 * (hxx - 2.0 * hxy + hyy),
                gxy: 0.5 * (hxx - hyy),
                gxz: (e.hess[0][2] + e.hess[1][2]) * SQRT_HALF,
                gyz: (e.hess[0][2] - e.hess[1][2]) * SQRT_HALF,
                gzz: e.hess[2][2],
            },
            e.branch,
        ))
    }

    fn s_tau(&self, w: &[f64]) -> Result<(f64, f64, f64, f64, f64)> {
        let (x, y, z) = split_blocks(w, self.block_dim, self.with_z)?;
        let s = x * x + y * y + 2.0 * z * z;
        let tau = x * x * y * y;
        Ok((x, y, z, s, tau))
    }

    fn grad_s_tau(&self, w: &[f64], x: f64, y: f64) -> (Vec<f64>, Vec<f64>) {
        let k = self.block_dim;
        let n = w.len();
        let mut gs = vec![0.0; n];
        let mut gt = vec![0.0; n];
        for i in 0..k {
            gs[i] = 2.0 * w[i];
            gs[k + i] = 2.0 * w[k + i];
            gt[i] = 2.0 * y * y * w[i];
            gt[k + i] = 2.0 * x * x * w[k + i];
        }
        if self.with_z {
            gs[2 * k] = 4.0 * w[2 * k];
        }
        (gs, gt)
    }
}

impl HomogeneousIntegrand for PhiIntegrand {
    fn ambient_dim(&self) -> usize {
        2 * self.block_dim + usize::from(self.with_z)
    }

    fn value(&self, w: &[f64]) -> Result<f64> {
        let (x, y, z) = split_blocks(w, self.block_dim, self.with_z)?;
        Ok(self.reduced_value(x, y, z))
    }

    fn gradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        let (x, y, z, s, tau) = self.s_tau(w)?;
        if 4.0 * tau < SERIES_BAND * s * s {
            let d = w_series(s, tau, &self.coeffs);
            let (gs, gt) = self.grad_s_tau(w, x, y);
            Ok((0..w.len()).map(|i| d.ws * gs[i] + d.wt * gt[i]).collect())
        } else {
            let (r, _) = self.reduced_eval(x, y, z)?;
            Ok(lift_gradient(w, self.block_dim, self.with_z, x, y, &r))
        }
    }

    /// Scale-invariant distance to the cone seam {z = 0, |p| = |q|}:
    /// sqrt(((x−y)² + 2z²)/S).
    fn seam_distance(&self, w: &[f64]) -> Option<f64> {
        let (x, y, z) = split_blocks(w, self.block_dim, self.with_z).ok()?;
        let s = x * x + y * y + 2.0 * z * z;
        Some((((x - y) * (x - y) + 2.0 * z * z) / s).sqrt())
    }

    fn hessian(&self, w: &[f64]) -> Result<HessianEval> {
        let (x, y, z, s, tau) = self.s_tau(w)?;
        let k = self.block_dim;
        if 4.0 * tau < SERIES_BAND * s * s {
            let d = w_series(s, tau, &self.coeffs);
            let (gs, gt) = self.grad_s_tau(w, x, y);
            let n = w.len();
            let mut h = SymMat::zeros(n);
            h.add_outer(d.wss, &gs, &gs);
            h.add_outer(2.0 * d.wst, &gs, &gt);
            h.add_outer(d.wtt, &gt, &gt);
            // + W_S D²S + W_τ D²τ
            for i in 0..k {
                for j in 0..k {
                    let kron = if i == j { 1.0 } else { 0.0 };
                    let pp = h.get(i, j) + d.ws * 2.0 * kron + d.wt * 2.0 * y * y * kron;
                    h.set(i, j, pp);
                    let qq = h.get(k + i, k + j) + d.ws * 2.0 * kron + d.wt * 2.0 * x * x * kron;
                    h.set(k + i, k + j, qq);
                    let pq = h.get(i, k + j) + d.wt * 4.0 * w[i] * w[k + j];
                    h.set(i, k + j, pq);
                }
            }
            if self.with_z {
                let zz = h.get(2 * k, 2 * k) + 4.0 * d.ws;
                h.set(2 * k, 2 * k, zz);
            }
            let branch = if z == 0.0 { HessBranch::SeamPlane } else { HessBranch::Interior };
            Ok(HessianEval { matrix: h, branch })
        } else {
            let (r, branch) = self.reduced_eval(x, y, z)?;
            Ok(HessianEval {
                matrix: lift_hessian(w, k, self.with_z, x, y, &r),
                branch,
            })
        }
    }
}

/// φ(v) = Φ(v, 1): the convex function on ℝ⁶ whose graph Euler–Lagrange
/// equation the quadratic saddle solves. Gradient and Hessian restrict the
/// seven-dimensional ones (Φ is even in each block, so the reflection in
/// the defining relation φ(v) = Φ(−v, 1) drops out).
#[derive(Debug, Clone)]
pub struct PhiSlice {
    phi: PhiIntegrand,
}

impl PhiSlice {
    pub fn new() -> Self {
        PhiSlice { phi: PhiIntegrand::seven_dim() }
    }

    fn lifted(&self, v: &[f64]) -> Vec<f64> {
        let mut w = v.to_vec();
        w.push(1.0);
        w
    }
}

impl Default for PhiSlice {
    fn default() -> Self {
        Self::new()
    }
}

impl ScalarField for PhiSlice {
    fn dim(&self) -> usize {
        6
    }

    fn value(&self, v: &[f64]) -> Result<f64> {
        self.phi.value(&self.lifted(v))
    }

    fn gradient(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut g = self.phi.gradient(&self.lifted(v))?;
        g.truncate(6);
        Ok(g)
    }

    fn hessian(&self, v: &[f64]) -> Result<SymMat> {
        let h = self.phi.hessian(&self.lifted(v))?.matrix;
        Ok(SymMat::from_fn(6, |i, j| h.get(i, j)))
    }
}

/// The Euclidean norm as an integrand: the isotropic (area) case.
#[derive(Debug, Clone, Copy)]
pub struct EuclideanNorm {
    pub dim: usize,
}

impl HomogeneousIntegrand for EuclideanNorm {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn value(&self, w: &[f64]) -> Result<f64> {
        ensure_finite(w)?;
        let r = linalg::norm(w);
        if r == 0.0 {
            return Err(Error::Domain("norm integrand undefined at the origin".into()));
        }
        Ok(r)
    }

    fn gradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        let r = self.value(w)?;
        Ok(linalg::scale(w, 1.0 / r))
    }

    fn hessian(&self, w: &[f64]) -> Result<HessianEval> {
        let r = self.value(w)?;
        let u = linalg::scale(w, 1.0 / r);
        let n = w.len();
        let matrix = SymMat::from_fn(n, |i, j| {
            let kron = if i == j { 1.0 } else { 0.0 };
            (kron - u[i] * u[j]) / r
        });
        Ok(HessianEval { matrix, branch: HessBranch::Interior })
    }
}

/// Near-degenerate test integrand √(w₁² + ε²|w|²): its unit level set has an
/// almost-flat tangential direction at ±e₁ with curvature ~ ε², so a sound
/// certifier with a positive margin must reject it for small ε.
#[derive(Debug, Clone, Copy)]
pub struct SmoothedSlab {
    pub dim: usize,
    pub epsilon: f64,
}

impl HomogeneousIntegrand for SmoothedSlab {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn value(&self, w: &[f64]) -> Result<f64> {
        ensure_finite(w)?;
        let r2: f64 = w.iter().map(|v| v * v).sum();
        if r2 == 0.0 {
            return Err(Error::Domain("undefined at the origin".into()));
        }
        Ok((w[0] * w[0] + self.epsilon * self.epsilon * r2).sqrt())
    }

    fn gradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        let f = self.value(w)?;
        let e2 = self.epsilon * self.epsilon;
        Ok(w.iter()
            .enumerate()
            .map(|(i, v)| {
                let lead = if i == 0 { w[0] } else { 0.0 };
                (lead + e2 * v) / f
            })
            .collect())
    }

    fn hessian(&self, w: &[f64]) -> Result<HessianEval> {
        let f = self.value(w)?;
        let g = self.gradient(w)?;
        let e2 = self.epsilon * self.epsilon;
        let n = w.len();
        let matrix = SymMat::from_fn(n, |i, j| {
            let kron = if i == j { 1.0 } else { 0.0 };
            let lead = if i == 0 && j == 0 { 1.0 } else { 0.0 };
            (lead + e2 * kron - g[i] * g[j]) / f
        });
        Ok(HessianEval { matrix, branch: HessBranch::Interior })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{numeric_gradient, numeric_hessian, DiffScheme};
    use crate::psi::PsiProfile;

    /// Direct transcription of the closed formula, used as an independent
    /// oracle; needs |p| |q| ≠ 0.
    fn phi_formula(x: f64, y: f64, z: f64) -> f64 {
        let plus = ((x + y) * (x + y) + 2.0 * z * z).powf(1.5);
        let minus = ((x - y) * (x - y) + 2.0 * z * z).powf(1.5);
        (plus - minus) / (2f64.powf(2.5) * x * y)
    }

    #[test]
    fn value_matches_closed_formula() {
        let phi = PhiIntegrand::seven_dim();
        let pts = [
            (1.0, 1.0, 0.0),
            (2.0, 1.0, 0.5),
            (0.3, 0.9, 1.4),
            (1.0, 1.0, 1.0),
            (5.0, 0.2, 0.1),
        ];
        for &(x, y, z) in &pts {
            let w = [x, 0.0, 0.0, 0.0, y, 0.0, z];
            let v = phi.value(&w).unwrap();
            let oracle = phi_formula(x, y, z);
            assert!(
                (v - oracle).abs() <= 1e-10 * oracle.abs(),
                "({x},{y},{z}): {v} vs {oracle}"
            );
        }
    }

    #[test]
    fn value_at_block_axis() {
        // Limit of the closed formula as |q| → 0 with |p| = 1, z = 0 is
        // 3 · 2^{-3/2}; the series path must hit it exactly.
        let phi = PhiIntegrand::seven_dim();
        let w = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let v = phi.value(&w).unwrap();
        let expect = 3.0 * 2f64.powf(-1.5);
        assert!((v - expect).abs() < 1e-14, "{v} vs {expect}");
        // Oracle cross-check by approaching the axis; the direct formula
        // loses ~eps/y digits to cancellation, so probe at a moderate y.
        let near = phi_formula(1.0, 1e-5, 0.0);
        assert!((v - near).abs() < 1e-9);
    }

    #[test]
    fn restriction_fixed_point() {
        // |p| = |q| = 1/√2 on the hyperplane gives exactly 1.
        let phi0 = PhiIntegrand::six_dim_restriction();
        let t = std::f64::consts::FRAC_1_SQRT_2;
        let w = [t, 0.0, 0.0, 0.0, t, 0.0];
        assert!((phi0.value(&w).unwrap() - 1.0).abs() < 1e-14);
        // Swap symmetry.
        let a = [0.3, 0.4, 0.0, 0.8, 0.1, 0.2];
        let b = [0.8, 0.1, 0.2, 0.3, 0.4, 0.0];
        assert_eq!(phi0.value(&a).unwrap(), phi0.value(&b).unwrap());
    }

    #[test]
    fn evenness_and_homogeneity() {
        let phi = PhiIntegrand::seven_dim();
        let w = [0.4, -0.2, 0.8, 0.3, 0.9, -0.5, 0.7];
        let wm: Vec<f64> = w
            .iter()
            .enumerate()
            .map(|(i, v)| if i < 3 || i == 6 { -v } else { *v })
            .collect();
        assert_eq!(phi.value(&w).unwrap(), phi.value(&wm).unwrap());
        let w2: Vec<f64> = w.iter().map(|v| 2.0 * v).collect();
        let (v1, v2) = (phi.value(&w).unwrap(), phi.value(&w2).unwrap());
        assert!((v2 - 2.0 * v1).abs() < 1e-13 * v1.abs());
    }

    #[test]
    fn profile_lift_identity() {
        // Φ(p, q, z) = |z| ψ(|p|/z, |q|/z) with ψ in profile coordinates.
        let phi = PhiIntegrand::seven_dim();
        let psi = PsiProfile::generating();
        for &(x, y, z) in &[(1.3, 0.6, 0.9), (0.5, 2.0, -1.2)] {
            let w = [x, 0.0, 0.0, y, 0.0, 0.0, z];
            let lhs = phi.value(&w).unwrap();
            let rhs = z.abs() * psi.value(x / z, y / z).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs());
        }
    }

    #[test]
    fn series_and_direct_paths_agree_on_band() {
        // Points straddling the 4τ/S² switch: force each path by scaling the
        // q block, compare values/gradients/Hessians on the overlap.
        let phi = PhiIntegrand::seven_dim();
        let mk = |t: f64| {
            // ratio control: x = 1, y = t, z = 0.8
            vec![0.6, 0.8, 0.0, 0.0, t * 0.6, t * 0.8, 0.8]
        };
        for &t in &[0.28, 0.32, 0.36] {
            let w = mk(t);
            let (x, y, z, s, tau) = phi.s_tau(&w).unwrap();
            let d = w_series(s, tau, &phi.coeffs);
            let (r, _) = phi.reduced_eval(x, y, z).unwrap();
            assert!((d.w - r.value).abs() < 1e-12 * r.value.abs());
            // Gradient along both paths.
            let gs_path = {
                let (gs, gt) = phi.grad_s_tau(&w, x, y);
                let g: Vec<f64> =
                    (0..w.len()).map(|i| d.ws * gs[i] + d.wt * gt[i]).collect();
                g
            };
            let direct = lift_gradient(&w, 3, true, x, y, &r);
            for i in 0..7 {
                assert!(
                    (gs_path[i] - direct[i]).abs() < 1e-11,
                    "gradient component {i}: {} vs {}",
                    gs_path[i],
                    direct[i]
                );
            }
        }
    }

    #[test]
    fn gradient_and_hessian_match_numeric() {
        let phi = PhiIntegrand::seven_dim();
        let pts: Vec<Vec<f64>> = vec![
            vec![1.0, 0.2, -0.3, 0.5, 0.8, 0.1, 0.6],    // generic
            vec![0.05, 0.0, 0.02, 1.0, -0.4, 0.3, 0.9],  // near p-axis (series)
            vec![1.1, 0.4, 0.2, 1.0, 0.5, 0.3, 0.0],     // on the hyperplane
        ];
        for w in &pts {
            let g = phi.gradient(w).unwrap();
            let gn = numeric_gradient(
                &|v: &[f64]| phi.value(v).unwrap(),
                w,
                DiffScheme::gradient_default(),
            )
            .unwrap();
            for i in 0..7 {
                assert!((g[i] - gn[i]).abs() < 1e-7, "grad[{i}] {} vs {}", g[i], gn[i]);
            }
            let h = phi.hessian(w).unwrap().matrix;
            let hn = numeric_hessian(
                &|v: &[f64]| phi.value(v).unwrap(),
                w,
                DiffScheme::hessian_default(),
            )
            .unwrap();
            for i in 0..7 {
                for j in 0..7 {
                    assert!(
                        (h.get(i, j) - hn.get(i, j)).abs() < 1e-5,
                        "hess[{i}][{j}] {} vs {}",
                        h.get(i, j),
                        hn.get(i, j)
                    );
                }
            }
        }
    }

    #[test]
    fn euler_radial_kernel() {
        // D²Φ(w) · w = 0 for one-homogeneous Φ.
        let phi = PhiIntegrand::seven_dim();
        let w = [0.9, -0.1, 0.4, 0.7, 0.2, -0.6, 0.5];
        let h = phi.hessian(&w).unwrap().matrix;
        let hv = h.mat_vec(&w);
        for c in hv {
            assert!(c.abs() < 1e-13);
        }
        // And ∇Φ(w) · w = Φ(w).
        let g = phi.gradient(&w).unwrap();
        let v = phi.value(&w).unwrap();
        assert!((linalg::dot(&g, &w) - v).abs() < 1e-13 * v.abs());
    }

    #[test]
    fn seam_hessian_is_flagged_and_finite() {
        let phi = PhiIntegrand::seven_dim();
        // Exactly on the cone seam: |p| = |q|, z = 0.
        let t = std::f64::consts::FRAC_1_SQRT_2;
        let w = [t, 0.0, 0.0, 0.0, t, 0.0, 0.0];
        let h = phi.hessian(&w).unwrap();
        assert_eq!(h.branch, HessBranch::AxisLimit);
        assert!(h.matrix.is_finite());
        // Tangential eigenvalues at the seam point: {1, 1, 1, 1, 2, 3} plus
        // the radial zero.
        let ev = h.matrix.eigenvalues();
        assert!(ev[0].abs() < 1e-12);
        assert!((ev[1] - 1.0).abs() < 1e-10);
        assert!((ev[5] - 2.0).abs() < 1e-10);
        assert!((ev[6] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn slice_matches_profile_psi() {
        // φ(p, q) = ψ(|p|, |q|) in profile coordinates.
        let slice = PhiSlice::new();
        let psi = PsiProfile::generating();
        for &(x, y) in &[(0.8, 1.4), (2.0, 0.3), (0.9, 0.9)] {
            let v = [x, 0.0, 0.0, 0.0, 0.0, y];
            let lhs = slice.value(&v).unwrap();
            let rhs = psi.value(x, y).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs());
        }
    }

    #[test]
    fn euclidean_norm_hessian_is_projector() {
        let e = EuclideanNorm { dim: 4 };
        let w = linalg::normalize(&[1.0, -2.0, 0.5, 3.0]).unwrap();
        let h = e.hessian(&w).unwrap().matrix;
        let hv = h.mat_vec(&w);
        for c in hv {
            assert!(c.abs() < 1e-14);
        }
        let ev = h.eigenvalues();
        assert!(ev[0].abs() < 1e-14);
        for lam in &ev[1..] {
            assert!((lam - 1.0).abs() < 1e-13);
        }
    }
}
